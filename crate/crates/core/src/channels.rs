//! One-mode Gaussian channels acting on one half of a two-mode state.
//!
//! A channel maps the 2x2 blocks touching the chosen mode as
//! `gamma -> U gamma U^T + V` with scalar `U` and `V`:
//!
//! | kind            | `U`      | `V`       | parameter range |
//! |-----------------|----------|-----------|-----------------|
//! | lossy           | `sqrt t` | `1 - t`   | `0 <= t <= 1`   |
//! | amplifier       | `sqrt t` | `t - 1`   | `t >= 1`        |
//! | classical noise | `1`      | `v`       | `v >= 0`        |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::{tmsv_from_chi, StandardForm};
use crate::measures::{eof_from_squeezing, nu_tilde_minus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    Lossy,
    Amplifier,
    ClassicalNoise,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Lossy => "lossy",
            ChannelKind::Amplifier => "amplifier",
            ChannelKind::ClassicalNoise => "classical-noise",
        })
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lossy" => Ok(ChannelKind::Lossy),
            "amplifier" => Ok(ChannelKind::Amplifier),
            "classical-noise" | "noise" => Ok(ChannelKind::ClassicalNoise),
            other => Err(Error::InvalidChannel(format!("unknown channel kind {other:?}"))),
        }
    }
}

/// A validated channel: transmissivity/gain `t` or added noise `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelSpec {
    kind: ChannelKind,
    param: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, param: f64) -> Result<Self> {
        let ok = match kind {
            ChannelKind::Lossy => (0.0..=1.0).contains(&param),
            ChannelKind::Amplifier => param >= 1.0 && param.is_finite(),
            ChannelKind::ClassicalNoise => param >= 0.0 && param.is_finite(),
        };
        if !ok {
            return Err(Error::InvalidChannel(format!("{kind} channel does not accept parameter {param}")));
        }
        Ok(Self { kind, param })
    }

    pub fn lossy(tau: f64) -> Result<Self> {
        Self::new(ChannelKind::Lossy, tau)
    }

    pub fn amplifier(tau: f64) -> Result<Self> {
        Self::new(ChannelKind::Amplifier, tau)
    }

    pub fn classical_noise(v: f64) -> Result<Self> {
        Self::new(ChannelKind::ClassicalNoise, v)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    /// `(U, V)` as scalars multiplying the identity.
    fn scalars(&self) -> (f64, f64) {
        let t = self.param;
        match self.kind {
            ChannelKind::Lossy => (t.sqrt(), 1.0 - t),
            ChannelKind::Amplifier => (t.sqrt(), t - 1.0),
            ChannelKind::ClassicalNoise => (1.0, t),
        }
    }

    /// Channels that leave every state untouched.
    pub fn is_identity(&self) -> bool {
        match self.kind {
            ChannelKind::Lossy | ChannelKind::Amplifier => self.param == 1.0,
            ChannelKind::ClassicalNoise => self.param == 0.0,
        }
    }
}

impl<'de> Deserialize<'de> for ChannelSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: ChannelKind,
            param: f64,
        }
        let raw = Raw::deserialize(d)?;
        ChannelSpec::new(raw.kind, raw.param).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.param)
    }
}

/// Which mode the channel acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "1")]
    One,
    #[default]
    #[serde(rename = "2")]
    Two,
}

impl TryFrom<u8> for Mode {
    type Error = Error;

    fn try_from(m: u8) -> Result<Self> {
        match m {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            other => Err(Error::InvalidArgument(format!("mode must be 1 or 2, got {other}"))),
        }
    }
}

pub fn apply_channel(sf: &StandardForm, ch: &ChannelSpec, mode: Mode) -> Result<StandardForm> {
    let [a, b, c1, c2] = sf.params();
    let (u, v) = ch.scalars();
    let (a, b) = match mode {
        Mode::One => (u * u * a + v, b),
        Mode::Two => (a, u * u * b + v),
    };
    StandardForm::new(a, b, u * c1, u * c2)
}

fn check_chi(chi: f64) -> Result<()> {
    if !(0.0..1.0).contains(&chi) {
        return Err(Error::InvalidArgument(format!("chi must lie in [0, 1), got {chi}")));
    }
    Ok(())
}

/// Optimal two-mode squeezing of the channel output of a two-mode squeezed
/// vacuum with `chi = tanh r`.
pub fn closed_form_r_o(chi: f64, ch: &ChannelSpec) -> Result<f64> {
    check_chi(chi)?;
    Ok(r_o_unchecked(chi, ch))
}

fn r_o_unchecked(chi: f64, ch: &ChannelSpec) -> f64 {
    let t = ch.param;
    match ch.kind {
        ChannelKind::Lossy => 0.5 * ((1.0 + chi * t.sqrt()) / (1.0 - chi * t.sqrt())).ln(),
        ChannelKind::Amplifier => 0.5 * ((t.sqrt() + chi) / (t.sqrt() - chi)).ln(),
        ChannelKind::ClassicalNoise if t <= 2.0 => {
            0.5 * ((2.0 + t + chi * (2.0 - t)) / (2.0 + t + chi * (t - 2.0))).ln()
        }
        ChannelKind::ClassicalNoise => 0.0,
    }
}

/// Entanglement ceilings (ebits) reached by an infinitely squeezed input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeterministicBound {
    pub e_f: f64,
    pub e_n: f64,
}

/// Distances `1 - chi` used for the `chi -> 1` extrapolation.
const EXTRAPOLATION_STEPS: [f64; 6] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

pub fn deterministic_bound(ch: &ChannelSpec, mode: Mode) -> Result<DeterministicBound> {
    if ch.is_identity() {
        return Ok(DeterministicBound { e_f: f64::INFINITY, e_n: f64::INFINITY });
    }
    if ch.kind == ChannelKind::Lossy && ch.param == 0.0 {
        return Ok(DeterministicBound { e_f: 0.0, e_n: 0.0 });
    }
    let e_f = eof_from_squeezing(r_o_unchecked(1.0, ch))?;

    let mut samples = Vec::with_capacity(EXTRAPOLATION_STEPS.len());
    for &h in &EXTRAPOLATION_STEPS {
        let out = apply_channel(&tmsv_from_chi(1.0 - h)?, ch, mode)?;
        samples.push((h, nu_tilde_minus(&out)));
    }
    let nu = neville_at_zero(&samples);
    let e_n = if nu <= 0.0 { f64::INFINITY } else { (-nu.log2()).max(0.0) };
    Ok(DeterministicBound { e_f, e_n })
}

/// Value at `h = 0` of the interpolating polynomial through `(h_i, y_i)`.
pub fn neville_at_zero(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (points[i].0, points[i + level].0);
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gstate::tmsv;
    use crate::measures::{is_separable, r_tilde_interval};

    #[test]
    fn validation() {
        assert!(ChannelSpec::lossy(1.2).is_err());
        assert!(ChannelSpec::lossy(-0.1).is_err());
        assert!(ChannelSpec::amplifier(0.9).is_err());
        assert!(ChannelSpec::classical_noise(-1.0).is_err());
        assert!(ChannelSpec::classical_noise(f64::NAN).is_err());
        assert!(matches!(ChannelSpec::lossy(2.0), Err(Error::InvalidChannel(_))));
        let ok: ChannelSpec = serde_json::from_str(r#"{"kind":"amplifier","param":2.0}"#).unwrap();
        assert_eq!(ok, ChannelSpec::amplifier(2.0).unwrap());
        assert!(serde_json::from_str::<ChannelSpec>(r#"{"kind":"lossy","param":2.0}"#).is_err());
    }

    #[test]
    fn identity_lossy_channel() {
        let sf = StandardForm::new(2.0, 3.0, 1.5, -1.0).unwrap();
        let out = apply_channel(&sf, &ChannelSpec::lossy(1.0).unwrap(), Mode::Two).unwrap();
        assert_eq!(out, sf);
    }

    #[test]
    fn full_loss_is_separable() {
        let out = apply_channel(&tmsv(1.0).unwrap(), &ChannelSpec::lossy(0.0).unwrap(), Mode::Two).unwrap();
        assert!(is_separable(&out));
        assert_eq!((out.b(), out.c1(), out.c2()), (1.0, 0.0, 0.0));
    }

    #[test]
    fn classical_noise_adds_to_mode() {
        let r = 0.8;
        let out = apply_channel(&tmsv(r).unwrap(), &ChannelSpec::classical_noise(0.7).unwrap(), Mode::Two).unwrap();
        assert!((out.b() - ((2.0 * r).cosh() + 0.7)).abs() < 1e-12);
        let out = apply_channel(&tmsv(r).unwrap(), &ChannelSpec::classical_noise(0.7).unwrap(), Mode::One).unwrap();
        // the noisy mode is relabelled as mode 2 by the standard form
        assert!((out.a().max(out.b()) - ((2.0 * r).cosh() + 0.7)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let chi = 0.3_f64;
        let r = closed_form_r_o(chi, &ChannelSpec::lossy(1.0).unwrap()).unwrap();
        assert!((r - chi.atanh()).abs() < 1e-14);
        assert_eq!(closed_form_r_o(0.6, &ChannelSpec::classical_noise(2.0).unwrap()).unwrap(), 0.0);
        assert_eq!(closed_form_r_o(0.6, &ChannelSpec::classical_noise(3.0).unwrap()).unwrap(), 0.0);
        assert!(closed_form_r_o(1.0, &ChannelSpec::lossy(0.5).unwrap()).is_err());

        let ch = ChannelSpec::lossy(0.5).unwrap();
        let chi = 1.0_f64.tanh();
        let r = closed_form_r_o(chi, &ch).unwrap();
        assert!((r - 0.602_08).abs() < 1e-5, "{r}");
        let out = apply_channel(&tmsv_from_chi(chi).unwrap(), &ch, Mode::Two).unwrap();
        assert!((r_tilde_interval(&out).unwrap().r_minus - r).abs() < 1e-9);
    }

    #[test]
    fn noise_value_continuous_at_two() {
        for chi in [0.1, 0.5, 0.9] {
            let below = closed_form_r_o(chi, &ChannelSpec::classical_noise(2.0 - 1e-9).unwrap()).unwrap();
            assert!(below.abs() < 1e-8);
        }
    }

    #[test]
    fn neville_recovers_polynomials() {
        let pts: Vec<(f64, f64)> = [0.1, 0.2, 0.4, 0.8].iter().map(|&h| (h, 3.0 - 2.0 * h + h * h * h)).collect();
        assert!((neville_at_zero(&pts) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_bounds_against_closed_forms() {
        let log2 = |x: f64| x.log2();
        for tau in [0.1, 0.5, 0.9] {
            let b = deterministic_bound(&ChannelSpec::lossy(tau).unwrap(), Mode::Two).unwrap();
            assert!((b.e_n - log2((1.0 + tau) / (1.0 - tau))).abs() < 1e-6, "{tau}: {b:?}");
            let want = eof_from_squeezing((tau.sqrt()).atanh()).unwrap();
            assert!((b.e_f - want).abs() < 1e-12);
        }
        for tau in [1.5, 3.0] {
            let b = deterministic_bound(&ChannelSpec::amplifier(tau).unwrap(), Mode::Two).unwrap();
            assert!((b.e_n - log2((tau + 1.0) / (tau - 1.0))).abs() < 1e-6, "{tau}: {b:?}");
        }
        for v in [0.5, 1.0, 1.5] {
            let b = deterministic_bound(&ChannelSpec::classical_noise(v).unwrap(), Mode::Two).unwrap();
            assert!((b.e_n - log2(2.0 / v)).abs() < 1e-6, "{v}: {b:?}");
        }
        let zero = deterministic_bound(&ChannelSpec::lossy(0.0).unwrap(), Mode::Two).unwrap();
        assert_eq!((zero.e_f, zero.e_n), (0.0, 0.0));
        let inf = deterministic_bound(&ChannelSpec::lossy(1.0).unwrap(), Mode::Two).unwrap();
        assert!(inf.e_f.is_infinite() && inf.e_n.is_infinite());
    }

    #[test]
    fn bounds_increase_with_transmissivity() {
        let mut prev = DeterministicBound { e_f: 0.0, e_n: 0.0 };
        for i in 1..50 {
            let b = deterministic_bound(&ChannelSpec::lossy(i as f64 / 50.0).unwrap(), Mode::Two).unwrap();
            assert!(b.e_f > prev.e_f && b.e_n > prev.e_n);
            prev = b;
        }
    }
}
