//! Classical-residual decompositions of standard-form states.
//!
//! Two orderings are used:
//!
//! * [`DecompositionKind::SqueezeThenLocal`]:
//!   `sigma = L(r1, r2) S2(r) sigma_c S2(r)^T L(r1, r2)^T`
//! * [`DecompositionKind::LocalThenSqueeze`]:
//!   `sigma = S2(r) L(r1, r2) sigma_c L(r1, r2)^T S2(r)^T`
//!
//! A decomposition is valid when the residual `sigma_c >= 1`, i.e. it is a
//! classical state. The closed forms for the local squeezing of the second
//! ordering and for its pure-state equivalent in the first ordering live here
//! as well.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::{apply, local_squeezer, two_mode_squeezer, CovMatrix, SqueezeParams, StandardForm};
use crate::measures::{self, BoundaryQuadratic};

/// Slack on `lambda_min(sigma_c) >= 1`.
pub const CLASSICAL_TOL: f64 = 1e-10;
/// Negative arguments of square roots and logarithms within this relative
/// slack are clamped to zero.
pub const DOMAIN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionKind {
    /// Two-mode squeezing first, local squeezing second.
    SqueezeThenLocal,
    /// Local squeezing first, two-mode squeezing second.
    LocalThenSqueeze,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub params: SqueezeParams,
    pub classical_part: CovMatrix,
}

impl Decomposition {
    pub fn new(sf: &StandardForm, params: SqueezeParams, kind: DecompositionKind) -> Self {
        Self { kind, params, classical_part: classical_residual(sf, params, kind) }
    }

    /// Re-applies the forward transforms to the residual.
    pub fn reconstruct(&self) -> CovMatrix {
        let SqueezeParams { r, r1, r2 } = self.params;
        let op = match self.kind {
            DecompositionKind::SqueezeThenLocal => local_squeezer(r1, r2) * two_mode_squeezer(r),
            DecompositionKind::LocalThenSqueeze => two_mode_squeezer(r) * local_squeezer(r1, r2),
        };
        apply(&op, &self.classical_part)
    }

    pub fn is_classical(&self) -> bool {
        is_classical(&self.classical_part)
    }
}

/// Strips the squeezing off `sf`, returning the would-be classical part.
pub fn classical_residual(sf: &StandardForm, params: SqueezeParams, kind: DecompositionKind) -> CovMatrix {
    let SqueezeParams { r, r1, r2 } = params;
    let op = match kind {
        DecompositionKind::SqueezeThenLocal => two_mode_squeezer(-r) * local_squeezer(-r1, -r2),
        DecompositionKind::LocalThenSqueeze => local_squeezer(-r1, -r2) * two_mode_squeezer(-r),
    };
    apply(&op, &sf.to_cov())
}

pub fn min_eigenvalue(sigma: &CovMatrix) -> f64 {
    SymmetricEigen::new(*sigma.matrix()).eigenvalues.min()
}

/// `sigma >= 1` up to [`CLASSICAL_TOL`].
pub fn is_classical(sigma: &CovMatrix) -> bool {
    min_eigenvalue(sigma) >= 1.0 - CLASSICAL_TOL
}

fn clamp_domain(value: f64, scale: f64, what: &str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -DOMAIN_TOL * scale.max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::Domain(format!("{what} = {value:e} is negative")))
    }
}

/// Local squeezing `(r~1, r~2)` that turns `S2(-r~) sigma S2(-r~)^T` into a
/// classical state, for `r~` inside the disentangling interval.
pub fn local_squeeze_params(sf: &StandardForm, r_tilde: f64) -> Result<(f64, f64)> {
    let quad = BoundaryQuadratic::new(sf)?;
    let interval = quad.interval();
    let slack = 1e-10 * (1.0 + r_tilde.abs());
    if !(r_tilde >= interval.r_minus - slack && r_tilde <= interval.r_plus + slack) {
        return Err(Error::Domain(format!(
            "r~ = {r_tilde} outside [{}, {}] for {sf}",
            interval.r_minus, interval.r_plus
        )));
    }

    // A pure input anti-squeezed to the vacuum needs no local correction,
    // and the closed form degenerates to 0/0 there.
    let anti = apply(&two_mode_squeezer(-r_tilde), &sf.to_cov());
    if anti.max_abs_diff(&CovMatrix::identity()) < 1e-12 {
        return Ok((0.0, 0.0));
    }

    let [a, b, c1, c2] = sf.params();
    let spectrum = measures::symplectic_spectrum(sf, false);

    // 2 (nu_-^2 - 1)(nu_+^2 - 1)
    let purity_gap = 2.0
        * (spectrum.nu_minus.powi(2) - 1.0).max(0.0)
        * (spectrum.nu_plus.powi(2) - 1.0).max(0.0);

    // The boundary polynomial under the second square root equals
    // lambda_- (X - X_-)(X_+ - X) / (2X) with X = e^{4 r~}; it vanishes at the
    // interval ends. Endpoints reached up to rounding are snapped.
    let x = (4.0 * r_tilde).exp();
    let snap = |d: f64| if d.abs() <= 64.0 * f64::EPSILON * x { 0.0 } else { d };
    let boundary = quad.lambda_minus * snap(x - quad.x_minus) * snap(quad.x_plus - x) / (2.0 * x);
    let boundary = clamp_domain(boundary, quad.kappa.abs(), "boundary polynomial")?;
    let root = purity_gap.sqrt() * boundary.sqrt();

    let (ch2, sh2) = ((2.0 * r_tilde).cosh(), (2.0 * r_tilde).sinh());
    let u = a * b - c1 * c1;
    let w = a * b - c2 * c2;
    let base = 2.0 * sh2 * (a * b * c2 - c2 * c1 * c1 + c1) + (a + b) * ch2 * (u - 1.0);
    let skew = (a - b) * (u + 1.0);
    let den1 = 2.0 * (base - skew);
    let den2 = 2.0 * (base + skew);
    let common = -2.0 + 2.0 * u * w;
    let tilt = 2.0 * (a - b) * ((a + b) * ch2 + (c2 - c1) * sh2);
    let num1 = common - tilt - root;
    let num2 = common + tilt + root;

    let ratio = |num: f64, den: f64, which: &str| -> Result<f64> {
        let q = num / den;
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::Domain(format!(
                "log argument for {which} is {num:e}/{den:e} at r~ = {r_tilde} for {sf}"
            )));
        }
        Ok(0.5 * q.ln())
    };
    Ok((ratio(num1, den1, "r~1")?, ratio(num2, den2, "r~2")?))
}

/// Two-mode and local squeezing of the squeeze-then-local construction that
/// reproduces the pure state `S2(r~) L(r~1, r~2) L^T S2(r~)^T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureEquivalent {
    pub r_prime: f64,
    pub r1_prime: f64,
    pub r2_prime: f64,
}

impl PureEquivalent {
    pub fn params(&self) -> SqueezeParams {
        SqueezeParams::new(self.r_prime, self.r1_prime, self.r2_prime)
    }
}

/// Equivalent two-mode squeezing `r'(r~, r~1, r~2)`.
///
/// The nested-root closed form collapses to
/// `sinh 2r' = sinh 2r~ cosh(r~1 - r~2)`, which is what is evaluated here;
/// going through `acosh` of a number near one loses half the digits.
pub fn r_prime(r_tilde: f64, r1: f64, r2: f64) -> f64 {
    0.5 * ((2.0 * r_tilde).sinh() * (r1 - r2).cosh()).asinh()
}

pub fn pure_equivalent(r_tilde: f64, r1: f64, r2: f64) -> Result<PureEquivalent> {
    if ![r_tilde, r1, r2].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidArgument("squeezing parameters must be finite".into()));
    }
    if r_tilde < 0.0 {
        return Err(Error::Domain(format!("pure-state remapping needs r~ >= 0, got {r_tilde}")));
    }
    let (e1, e2) = ((2.0 * r1).exp(), (2.0 * r2).exp());
    let (ch, sh) = (r_tilde.cosh(), r_tilde.sinh());
    let x = e1 * ch * ch + e2 * sh * sh;
    let y = e1 * sh * sh + e2 * ch * ch;
    let half_sum = 0.5 * (r1 + r2);

    let r1_prime = (half_sum.exp() * x.powf(0.25) / y.powf(0.25)).ln();

    let r2_prime = if (2.0 * r_tilde).sinh() > 1e-3 {
        let w = (-r1 - r2).exp() * y.sqrt() * x.sqrt();
        let numerator = (1.0 / (sh * ch))
            * (3.0 * half_sum).exp()
            * y.powf(0.25)
            * (w - 1.0).max(0.0).sqrt()
            * (w + 1.0).sqrt();
        let denominator = (e1 + e2) * x.powf(0.25);
        (numerator / denominator).ln()
    } else {
        // csch(r~) sech(r~) sqrt(W^2 - 1) = (e1 + e2) e^{-(r1 + r2)} exactly,
        // which removes the 0 * inf form near r~ = 0
        (half_sum.exp() * (y / x).powf(0.25)).ln()
    };
    if !r2_prime.is_finite() || !r1_prime.is_finite() {
        return Err(Error::Domain(format!("pure-state remapping failed at ({r_tilde}, {r1}, {r2})")));
    }
    Ok(PureEquivalent { r_prime: r_prime(r_tilde, r1, r2), r1_prime, r2_prime })
}

/// Evenly spaced square grid `[lo, hi]^2` with `points` nodes per side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl SquareGrid {
    pub fn new(lo: f64, hi: f64, points: usize) -> Self {
        Self { lo, hi, points }
    }

    pub fn step(&self) -> f64 {
        if self.points < 2 {
            0.0
        } else {
            (self.hi - self.lo) / (self.points - 1) as f64
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.lo + i as f64 * self.step())
    }
}

/// Checks on `grid` that `r'(r~, r1, r2)` never drops below its minimum
/// along the diagonal `r1 = r2`, and that its second differences in `r1`
/// and in `r2` are non-negative (to `-1e-8`).
pub fn r_prime_convexity_check(r_tilde: f64, grid: &SquareGrid) -> bool {
    if !(r_tilde >= 0.0) || grid.points < 2 || !(grid.hi > grid.lo) {
        return false;
    }
    let diagonal_min = grid.nodes().map(|t| r_prime(r_tilde, t, t)).fold(f64::INFINITY, f64::min);
    let h = grid.step();
    for r1 in grid.nodes() {
        for r2 in grid.nodes() {
            let centre = r_prime(r_tilde, r1, r2);
            if centre < diagonal_min - 1e-12 {
                return false;
            }
            let d11 = (r_prime(r_tilde, r1 + h, r2) - 2.0 * centre + r_prime(r_tilde, r1 - h, r2)) / (h * h);
            let d22 = (r_prime(r_tilde, r1, r2 + h) - 2.0 * centre + r_prime(r_tilde, r1, r2 - h)) / (h * h);
            if d11 < -1e-8 || d22 < -1e-8 {
                return false;
            }
        }
    }
    true
}
