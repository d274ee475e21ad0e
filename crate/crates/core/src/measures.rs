//! Symplectic spectra, separability and entanglement measures.
//!
//! All entanglement values are in ebits (base-2 logarithms). Squeezing
//! parameters are on the natural-log scale.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::{self, StandardForm, PHYSICALITY_TOL};

/// Values of `kappa^2 - lambda_+ lambda_-` in `[-BOUNDARY_DISC_TOL, 0)` are treated
/// as boundary states and clamped to zero.
pub const BOUNDARY_DISC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub nu_minus: f64,
    pub nu_plus: f64,
}

/// Symplectic eigenvalues of the state, or of its partial transpose
/// (`c2 -> -c2`) when `partial_transpose` is set.
pub fn symplectic_spectrum(sf: &StandardForm, partial_transpose: bool) -> SymplecticSpectrum {
    let c2 = if partial_transpose { -sf.c2() } else { sf.c2() };
    let (minus_sq, plus_sq) = gstate::spectrum_squared(sf.a(), sf.b(), sf.c1(), c2)
        .expect("StandardForm discriminants are checked at construction");
    SymplecticSpectrum { nu_minus: minus_sq.sqrt(), nu_plus: plus_sq.sqrt() }
}

/// Smallest symplectic eigenvalue of the partially transposed state.
pub fn nu_tilde_minus(sf: &StandardForm) -> f64 {
    symplectic_spectrum(sf, true).nu_minus
}

pub fn is_separable(sf: &StandardForm) -> bool {
    nu_tilde_minus(sf) >= 1.0 - PHYSICALITY_TOL
}

/// `max(0, -log2 nu~_-)`.
pub fn log_negativity(sf: &StandardForm) -> f64 {
    (-nu_tilde_minus(sf).log2()).max(0.0)
}

/// Entropy of entanglement of a two-mode squeezed vacuum with squeezing
/// `r_o`: `cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r`.
pub fn eof_from_squeezing(r_o: f64) -> Result<f64> {
    if !(r_o >= 0.0) {
        return Err(Error::InvalidArgument(format!("squeezing must be >= 0, got {r_o}")));
    }
    if r_o == 0.0 {
        return Ok(0.0);
    }
    if r_o.is_infinite() {
        return Ok(f64::INFINITY);
    }
    // with x = sinh^2 r: (1+x) ln(1+x) - x ln x = ln(1+x) + x ln(1 + 1/x)
    let x = r_o.sinh().powi(2);
    Ok((x.ln_1p() + x * (1.0 / x).ln_1p()) / std::f64::consts::LN_2)
}

/// Range of two-mode anti-squeezing `r~` for which
/// `nu~_-[S2(-r~) sigma S2(-r~)^T] >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RTildeInterval {
    pub r_minus: f64,
    pub r_plus: f64,
}

/// Coefficients of the boundary equation `lambda_- X^2 - 2 kappa X + lambda_+ = 0`
/// in `X = e^{4 r~}`, together with its roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BoundaryQuadratic {
    pub kappa: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub x_minus: f64,
    pub x_plus: f64,
}

impl BoundaryQuadratic {
    pub fn new(sf: &StandardForm) -> Result<Self> {
        let [a, b, c1, c2] = sf.params();
        let u = a * b - c1 * c1;
        let w = a * b - c2 * c2;
        let kappa = 2.0 * (u * w + 1.0) - (a - b).powi(2);
        // lambda_+- = det A + det B - 2 det C + 2[(ab - c1 c2) +- (c1 - c2)(a + b)], factored
        let lambda_plus = (a + b + 2.0 * c1) * (a + b - 2.0 * c2);
        let lambda_minus = (a + b - 2.0 * c1) * (a + b + 2.0 * c2);
        // kappa^2 - lambda_+ lambda_- = 4[(uw - 1)^2 - (a - b)^2 (u + 1)(w + 1)]
        let p = (u * w - 1.0).powi(2);
        let q = (a - b).powi(2) * (u + 1.0) * (w + 1.0);
        let mut disc = 4.0 * (p - q);
        // Phase-insensitive channel outputs sit exactly on disc = 0, where the
        // roots move like sqrt(disc). Values within the spread caused by
        // rounding the inputs are indistinguishable from zero.
        let eps = f64::EPSILON;
        let du = eps * 2.0 * (a * b + c1 * c1);
        let dw = eps * 2.0 * (a * b + c2 * c2);
        let dp = 2.0 * (u * w - 1.0).abs() * (w.abs() * du + u.abs() * dw);
        let dq = 2.0 * (a - b).abs() * eps * (a + b) * (u + 1.0) * (w + 1.0)
            + (a - b).powi(2) * (du * (w + 1.0) + dw * (u + 1.0));
        let noise = 16.0 * (dp + dq) + 4.0 * eps * (p + q);
        if disc.abs() <= noise {
            disc = 0.0;
        } else if disc < 0.0 {
            if disc < -BOUNDARY_DISC_TOL {
                return Err(Error::Malformed(format!(
                    "kappa^2 - lambda+ lambda- = {disc:e} < 0 for {sf}"
                )));
            }
            disc = 0.0;
        }
        if !(lambda_minus > 0.0) {
            return Err(Error::Malformed(format!("lambda- = {lambda_minus:e} <= 0 for {sf}")));
        }
        let root = disc.sqrt();
        let x_plus = (kappa + root) / lambda_minus;
        let x_minus = if kappa + root > 0.0 {
            lambda_plus / (kappa + root)
        } else {
            (kappa - root) / lambda_minus
        };
        if !(x_minus > 0.0) {
            return Err(Error::Malformed(format!("no positive disentangling root for {sf}")));
        }
        Ok(Self { kappa, lambda_plus, lambda_minus, x_minus, x_plus })
    }

    pub fn interval(&self) -> RTildeInterval {
        RTildeInterval { r_minus: 0.25 * self.x_minus.ln(), r_plus: 0.25 * self.x_plus.ln() }
    }
}

/// `r~_+- = (1/2) ln sqrt((kappa +- sqrt(kappa^2 - lambda_+ lambda_-)) / lambda_-)`
/// with `kappa = 2(det sigma + 1) - (a - b)^2`. The smaller root is taken in
/// the cancellation-free form `lambda_+ / (kappa + sqrt(...))`.
pub fn r_tilde_interval(sf: &StandardForm) -> Result<RTildeInterval> {
    Ok(BoundaryQuadratic::new(sf)?.interval())
}

/// Entropy of the pure state built with the minimal disentangling squeezing,
/// a lower bound on entanglement of formation. Separable inputs
/// (`r~_- <= 0`) give zero.
pub fn eof_lower_bound(sf: &StandardForm) -> Result<f64> {
    let interval = r_tilde_interval(sf)?;
    eof_from_squeezing(interval.r_minus.max(0.0))
}
