//! Table generators behind the figure-reproduction and corpus commands.
//!
//! Random states are always drawn sequentially from one seeded sampler;
//! only the per-state numerics run in parallel, and results are collected
//! in input order, so outputs depend on the seed alone.

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{apply_channel, closed_form_r_o, deterministic_bound, ChannelKind, ChannelSpec, Mode};
use crate::error::{Error, Result};
use crate::gstate::{tmsv, tmsv_from_chi, StandardForm};
use crate::measures::{eof_from_squeezing, log_negativity, r_tilde_interval};
use crate::oracle::{exact_eof, EofConfig};
use crate::records::{ser12, StateRecord};
use crate::sampler::{SamplerConfig, StateSampler};

/// Optimal against lower-bound symplectic eigenvalue for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig2Row {
    #[serde(serialize_with = "ser12")]
    pub a: f64,
    #[serde(serialize_with = "ser12")]
    pub b: f64,
    #[serde(serialize_with = "ser12")]
    pub c1: f64,
    #[serde(serialize_with = "ser12")]
    pub c2: f64,
    /// `e^{-2 r~_-}`
    #[serde(serialize_with = "ser12")]
    pub x: f64,
    /// `e^{-2 r_o}`
    #[serde(serialize_with = "ser12")]
    pub y: f64,
}

pub fn fig2(n_states: usize, seed: u64, sampler: SamplerConfig, eof: &EofConfig) -> Result<Vec<Fig2Row>> {
    if n_states == 0 {
        return Err(Error::InvalidArgument("need at least one state".into()));
    }
    let states = StateSampler::new(seed, sampler)?.sample_n(n_states)?;
    states
        .par_iter()
        .map(|sf| {
            let res = exact_eof(sf, eof)?;
            let [a, b, c1, c2] = sf.params();
            Ok(Fig2Row { a, b, c1, c2, x: (-2.0 * res.r_tilde_minus).exp(), y: (-2.0 * res.r_o).exp() })
        })
        .collect()
}

/// Entanglement of a lossy-channel output of a two-mode squeezed vacuum
/// next to the deterministic ceilings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig3Row {
    #[serde(serialize_with = "ser12")]
    pub tau: f64,
    #[serde(rename = "E_F", serialize_with = "ser12")]
    pub e_f: f64,
    #[serde(rename = "E_N", serialize_with = "ser12")]
    pub e_n: f64,
    #[serde(rename = "E_F_det", serialize_with = "ser12")]
    pub e_f_det: f64,
    #[serde(rename = "E_N_det", serialize_with = "ser12")]
    pub e_n_det: f64,
}

pub fn fig3(r: f64, n_tau: usize, mode: Mode) -> Result<Vec<Fig3Row>> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("squeezing must be positive, got {r}")));
    }
    if n_tau < 2 {
        return Err(Error::InvalidArgument("need at least two transmissivities".into()));
    }
    let input = tmsv(r)?;
    let chi = r.tanh();
    (0..n_tau)
        .into_par_iter()
        .map(|i| {
            let tau = i as f64 / (n_tau - 1) as f64;
            let ch = ChannelSpec::lossy(tau)?;
            let det = deterministic_bound(&ch, mode)?;
            Ok(Fig3Row {
                tau,
                e_f: eof_from_squeezing(closed_form_r_o(chi, &ch)?)?,
                e_n: log_negativity(&apply_channel(&input, &ch, mode)?),
                e_f_det: det.e_f,
                e_n_det: det.e_n,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelRow {
    #[serde(serialize_with = "ser12")]
    pub chi: f64,
    #[serde(serialize_with = "ser12")]
    pub param: f64,
    #[serde(rename = "E_F", serialize_with = "ser12")]
    pub e_f: f64,
    #[serde(rename = "E_N", serialize_with = "ser12")]
    pub e_n: f64,
    #[serde(rename = "E_F_det", serialize_with = "ser12")]
    pub e_f_det: f64,
    #[serde(rename = "E_N_det", serialize_with = "ser12")]
    pub e_n_det: f64,
    /// `r~_-` of the numerically channeled state, clamped at zero.
    #[serde(skip)]
    pub r_tilde_minus: f64,
    #[serde(skip)]
    pub r_o: f64,
}

/// All `(chi, param)` combinations, parameters in the outer loop.
pub fn channel_sweep(kind: ChannelKind, chis: &[f64], params: &[f64], mode: Mode) -> Result<Vec<ChannelRow>> {
    let blocks: Vec<Vec<ChannelRow>> = params
        .par_iter()
        .map(|&param| {
            let ch = ChannelSpec::new(kind, param)?;
            let det = deterministic_bound(&ch, mode)?;
            chis.iter()
                .map(|&chi| {
                    let out = apply_channel(&tmsv_from_chi(chi)?, &ch, mode)?;
                    let r_o = closed_form_r_o(chi, &ch)?;
                    Ok(ChannelRow {
                        chi,
                        param,
                        e_f: eof_from_squeezing(r_o)?,
                        e_n: log_negativity(&out),
                        e_f_det: det.e_f,
                        e_n_det: det.e_n,
                        r_tilde_minus: r_tilde_interval(&out)?.r_minus.max(0.0),
                        r_o,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

pub fn sample_corpus(n: usize, seed: u64, cfg: SamplerConfig) -> Result<Vec<StateRecord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one state".into()));
    }
    let states: Vec<StandardForm> = StateSampler::new(seed, cfg)?.sample_n(n)?;
    Ok(states.iter().map(StateRecord::from).collect())
}
