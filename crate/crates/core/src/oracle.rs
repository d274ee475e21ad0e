//! Numerical oracles: exact entanglement of formation by direct search over
//! squeeze-then-local decompositions, the interval-sweep upper bound, and the
//! gain-optimized EPR product.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decomp::{self, classical_residual, local_squeeze_params, pure_equivalent, DecompositionKind};
use crate::error::{Error, Result};
use crate::gstate::{SqueezeParams, StandardForm};
use crate::measures::{self, eof_from_squeezing, r_tilde_interval};
use crate::optim::{nelder_mead, Minimum, NelderMeadConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EofStrategy {
    /// Simplex over the local squeezings, minimal feasible `r` found by
    /// scan and bisection for each of them.
    #[default]
    Nested,
    /// Penalized simplex over all three parameters, certified afterwards by
    /// the inner search at the final local squeezings.
    FullSimplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EofConfig {
    /// Bracket width on `r_o`.
    pub tol: f64,
    pub max_outer_iterations: usize,
    pub max_bisection_steps: usize,
    pub scan_points: usize,
    /// Points per side of the coarse seeding grid over `(r1, r2)`.
    pub grid_points: usize,
    /// Grid points of the interval sweep used to seed the search.
    pub sweep_points: usize,
    /// Extra simplex starts drawn uniformly from the seeding box.
    pub random_restarts: usize,
    pub seed: u64,
    pub strategy: EofStrategy,
}

impl Default for EofConfig {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_outer_iterations: 200,
            max_bisection_steps: 80,
            scan_points: 64,
            grid_points: 9,
            sweep_points: 41,
            random_restarts: 0,
            seed: 0,
            strategy: EofStrategy::Nested,
        }
    }
}

impl EofConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.scan_points < 2 || self.max_outer_iterations == 0 || self.max_bisection_steps == 0 {
            return Err(Error::InvalidArgument("search budgets must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EofResult {
    pub r_o: f64,
    /// ebits
    pub eof: f64,
    pub r1_o: f64,
    pub r2_o: f64,
    /// Simplex iterations over all starts.
    pub iterations: usize,
    /// Width of the infeasible/feasible bracket on `r_o`.
    pub certified_gap: f64,
    pub r_tilde_minus: f64,
    /// Smallest eigenvalue of the residual at the returned triple.
    pub residual_min_eigenvalue: f64,
}

impl EofResult {
    pub fn params(&self) -> SqueezeParams {
        SqueezeParams::new(self.r_o, self.r1_o, self.r2_o)
    }
}

/// Smallest eigenvalue of `S2(-r) L(-r1,-r2) sigma L^T S2^T`. For a standard
/// form the x and p quadratures decouple into two 2x2 problems.
pub(crate) fn residual_min_eig(sf: &StandardForm, r: f64, r1: f64, r2: f64) -> f64 {
    let [a, b, c1, c2] = sf.params();
    let (ch, sh) = (r.cosh(), r.sinh());
    let (e1, e2) = (r1.exp(), r2.exp());
    // x block: S = [[ch, -sh], [-sh, ch]], D = diag(e^r1, e^r2)
    let x = block_min_eig(a * e1 * e1, b * e2 * e2, c1 * e1 * e2, ch, -sh);
    // p block: S = [[ch, sh], [sh, ch]], D = diag(e^-r1, e^-r2)
    let p = block_min_eig(a / (e1 * e1), b / (e2 * e2), c2 / (e1 * e2), ch, sh);
    x.min(p)
}

/// Smallest eigenvalue of `S M S^T` with `M = [[p, o], [o, q]]` and
/// `S = [[ch, s], [s, ch]]`.
fn block_min_eig(p: f64, q: f64, o: f64, ch: f64, s: f64) -> f64 {
    let m00 = ch * ch * p + 2.0 * ch * s * o + s * s * q;
    let m11 = s * s * p + 2.0 * ch * s * o + ch * ch * q;
    let m01 = ch * s * (p + q) + (ch * ch + s * s) * o;
    0.5 * (m00 + m11) - (0.5 * (m00 - m11)).hypot(m01)
}

/// The search asks for half the classicality slack so that the returned
/// triple survives the independent dense re-check.
fn feasible(g: f64) -> bool {
    g >= 1.0 - 0.5 * decomp::CLASSICAL_TOL
}

/// Minimal feasible `r` for fixed local squeezings.
#[derive(Debug, Clone, Copy, PartialEq)]
struct InnerOutcome {
    /// Feasible upper end of the bracket, or a penalty above the ceiling.
    value: f64,
    gap: f64,
    feasible: bool,
}

struct Search<'a> {
    sf: &'a StandardForm,
    cfg: &'a EofConfig,
    lo: f64,
    ceiling: f64,
}

impl Search<'_> {
    fn inner(&self, r1: f64, r2: f64) -> InnerOutcome {
        let g = |r: f64| residual_min_eig(self.sf, r, r1, r2);
        let n = self.cfg.scan_points;
        let step = (self.ceiling - self.lo) / (n - 1) as f64;
        let node = |i: usize| if i + 1 == n { self.ceiling } else { self.lo + i as f64 * step };
        let mut first = None;
        let mut peak = (0, f64::NEG_INFINITY);
        for i in 0..n {
            let gi = g(node(i));
            if feasible(gi) {
                first = Some(i);
                break;
            }
            if gi > peak.1 {
                peak = (i, gi);
            }
        }
        // Nearly pure states are feasible only on a sliver of r that the scan
        // can step over, so climb the eigenvalue around the best node.
        let (lower, upper) = match first {
            Some(0) => {
                if self.lo <= 0.0 {
                    return InnerOutcome { value: 0.0, gap: 0.0, feasible: true };
                }
                if feasible(g(0.0)) {
                    return InnerOutcome { value: 0.0, gap: 0.0, feasible: true };
                }
                (0.0, self.lo)
            }
            Some(i) => (node(i - 1), node(i)),
            None => {
                let lo = node(peak.0.saturating_sub(1));
                let hi = node((peak.0 + 1).min(n - 1));
                let (r_peak, g_peak) = golden_max(g, lo, hi);
                if !feasible(g_peak) {
                    return InnerOutcome {
                        value: self.ceiling + 1.0 + (1.0 - g_peak.max(peak.1)).max(0.0),
                        gap: f64::INFINITY,
                        feasible: false,
                    };
                }
                if r_peak <= 0.0 {
                    return InnerOutcome { value: 0.0, gap: 0.0, feasible: true };
                }
                (lo.min(r_peak), r_peak)
            }
        };
        let (mut lower, mut upper) = (lower, upper);
        for _ in 0..self.cfg.max_bisection_steps {
            if upper - lower <= 1e-13 * upper.max(1.0) {
                break;
            }
            let mid = 0.5 * (lower + upper);
            if feasible(g(mid)) {
                upper = mid;
            } else {
                lower = mid;
            }
        }
        InnerOutcome { value: upper, gap: upper - lower, feasible: true }
    }

    fn objective(&self, x: &[f64]) -> f64 {
        self.inner(x[0], x[1]).value
    }
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn nm_config(cfg: &EofConfig) -> NelderMeadConfig {
    NelderMeadConfig { max_iterations: cfg.max_outer_iterations, f_tol: cfg.tol * 1e-3, x_tol: cfg.tol * 1e-1 }
}

/// Minimal two-mode squeezing `r_o` over squeeze-then-local decompositions
/// with a classical residual, and the entropy it implies.
pub fn exact_eof(sf: &StandardForm, cfg: &EofConfig) -> Result<EofResult> {
    cfg.validate()?;
    let interval = r_tilde_interval(sf)?;
    let lo = (interval.r_minus - 0.1).max(0.0);

    let mut seeds: Vec<[f64; 2]> = vec![[0.0, 0.0]];
    let mut ceiling = interval.r_plus.max(lo + 0.1);
    if interval.r_minus > 0.0 {
        if let Ok(sweep) = interval_sweep(sf, cfg.sweep_points) {
            ceiling = ceiling.max(sweep.r_prime_min);
            seeds.push([sweep.r1_prime, sweep.r2_prime]);
        }
    }
    let start = interval.r_minus.max(0.0);
    if let Ok((t1, t2)) = local_squeeze_params(sf, start) {
        if let Ok(p) = pure_equivalent(start, t1, t2) {
            ceiling = ceiling.max(p.r_prime);
            seeds.push([p.r1_prime, p.r2_prime]);
        }
    }
    let search = Search { sf, cfg, lo, ceiling };

    let box_half = 2.0;
    if cfg.grid_points >= 2 {
        let h = 2.0 * box_half / (cfg.grid_points - 1) as f64;
        let mut best = ([0.0, 0.0], f64::INFINITY);
        for i in 0..cfg.grid_points {
            for j in 0..cfg.grid_points {
                let x = [-box_half + i as f64 * h, -box_half + j as f64 * h];
                let v = search.objective(&x);
                if v < best.1 {
                    best = (x, v);
                }
            }
        }
        seeds.push(best.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_restarts {
        seeds.push([rng.gen_range(-box_half..box_half), rng.gen_range(-box_half..box_half)]);
    }

    let nm = nm_config(cfg);
    let mut iterations = 0;
    let (best_x, converged) = match cfg.strategy {
        EofStrategy::Nested => {
            let mut best: Option<Minimum> = None;
            for s in &seeds {
                let m = nelder_mead(|x| search.objective(x), s, 0.1, &nm);
                iterations += m.iterations;
                if best.as_ref().is_none_or(|b| m.value < b.value) {
                    best = Some(m);
                }
            }
            let best = best.expect("at least one seed");
            polish(&search, &nm, best, &mut iterations)
        }
        EofStrategy::FullSimplex => {
            let penalized = |x: &[f64]| {
                let r = x[0].max(0.0);
                let g = residual_min_eig(sf, r, x[1], x[2]);
                r + (x[0].min(0.0)).abs() + 1e3 * (1.0 - decomp::CLASSICAL_TOL - g).max(0.0)
            };
            let mut best: Option<Minimum> = None;
            for s in &seeds {
                let start = [search.objective(s).min(ceiling), s[0], s[1]];
                let m = nelder_mead(penalized, &start, 0.1, &nm);
                iterations += m.iterations;
                if best.as_ref().is_none_or(|b| m.value < b.value) {
                    best = Some(m);
                }
            }
            let best = best.expect("at least one seed");
            let locals = Minimum { x: best.x[1..].to_vec(), value: search.objective(&best.x[1..]), ..best };
            polish(&search, &nm, locals, &mut iterations)
        }
    };

    let outcome = search.inner(best_x[0], best_x[1]);
    let r_o = outcome.value;
    let params = SqueezeParams::new(r_o, best_x[0], best_x[1]);
    let residual = classical_residual(sf, params, DecompositionKind::SqueezeThenLocal);
    let min_eig = decomp::min_eigenvalue(&residual);
    let result = EofResult {
        r_o,
        eof: eof_from_squeezing(r_o.max(0.0)).unwrap_or(f64::NAN),
        r1_o: best_x[0],
        r2_o: best_x[1],
        iterations,
        certified_gap: outcome.gap,
        r_tilde_minus: interval.r_minus,
        residual_min_eigenvalue: min_eig,
    };
    if !outcome.feasible || !decomp::is_classical(&residual) {
        return Err(Error::Internal(format!(
            "no classical decomposition found below r = {ceiling} for {sf} (min eigenvalue {min_eig})"
        )));
    }
    if !converged || !(outcome.gap <= cfg.tol) {
        return Err(Error::EofBudgetExceeded { best: Box::new(result) });
    }
    Ok(result)
}

/// Restarts the simplex with shrinking edges around the incumbent until a
/// run meets the stopping rule.
fn polish(search: &Search<'_>, nm: &NelderMeadConfig, incumbent: Minimum, iterations: &mut usize) -> (Vec<f64>, bool) {
    let mut best = incumbent;
    for step in [1e-2, 1e-3, 1e-4] {
        let m = nelder_mead(|x| search.objective(x), &best.x, step, nm);
        *iterations += m.iterations;
        let settled = m.converged;
        if m.value <= best.value {
            best = m;
        }
        if settled {
            return (best.x, true);
        }
    }
    (best.x, false)
}

/// Minimum over the sweep of the pure-equivalent squeezing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub r_prime_min: f64,
    pub eof: f64,
    pub r_tilde: f64,
    pub r1_tilde: f64,
    pub r2_tilde: f64,
    pub r1_prime: f64,
    pub r2_prime: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Walks `r~` over `n_grid` points of `[r~_-, r~_+]`, builds the
/// local-then-squeeze decomposition at each, converts it to the equivalent pure state and keeps
/// the smallest two-mode squeezing. Points whose closed forms leave their
/// domain are skipped and counted.
pub fn interval_sweep(sf: &StandardForm, n_grid: usize) -> Result<SweepResult> {
    if n_grid == 0 {
        return Err(Error::InvalidArgument("sweep needs at least one grid point".into()));
    }
    let interval = r_tilde_interval(sf)?;
    if !(interval.r_minus > 0.0) || measures::is_separable(sf) {
        return Err(Error::InvalidArgument(format!("sweep needs an entangled state, got {sf}")));
    }
    let step = if n_grid > 1 { (interval.r_plus - interval.r_minus) / (n_grid - 1) as f64 } else { 0.0 };
    let mut best: Option<SweepResult> = None;
    let mut skipped = 0;
    for i in 0..n_grid {
        let r_tilde = if i + 1 == n_grid && n_grid > 1 { interval.r_plus } else { interval.r_minus + i as f64 * step };
        let point = local_squeeze_params(sf, r_tilde)
            .and_then(|(t1, t2)| pure_equivalent(r_tilde, t1, t2).map(|p| (t1, t2, p)));
        let Ok((t1, t2, p)) = point else {
            skipped += 1;
            continue;
        };
        if best.as_ref().is_none_or(|b| p.r_prime < b.r_prime_min) {
            best = Some(SweepResult {
                r_prime_min: p.r_prime,
                eof: 0.0,
                r_tilde,
                r1_tilde: t1,
                r2_tilde: t2,
                r1_prime: p.r1_prime,
                r2_prime: p.r2_prime,
                evaluated: 0,
                skipped: 0,
            });
        }
    }
    let mut best = best.ok_or_else(|| Error::Domain(format!("every sweep point failed for {sf}")))?;
    best.eof = eof_from_squeezing(best.r_prime_min)?;
    best.evaluated = n_grid - skipped;
    best.skipped = skipped;
    Ok(best)
}

/// Upper bound on the entanglement of formation (ebits) from the sweep.
pub fn sweep_eof(sf: &StandardForm, n_grid: usize) -> Result<f64> {
    Ok(interval_sweep(sf, n_grid)?.eof)
}

/// `Vx Vp / (1 + gx gp)^2` with `Vx = a + gx^2 b - 2 gx c1` and
/// `Vp = a + gp^2 b + 2 gp c2`.
pub fn epr_beta(sf: &StandardForm, gx: f64, gp: f64) -> Result<f64> {
    let den = 1.0 + gx * gp;
    if den.abs() <= 1e-15 * (1.0 + (gx * gp).abs()) {
        return Err(Error::SingularGain);
    }
    let [a, b, c1, c2] = sf.params();
    let vx = a + gx * gx * b - 2.0 * gx * c1;
    let vp = a + gp * gp * b + 2.0 * gp * c2;
    Ok(vx * vp / (den * den))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EprConfig {
    pub grid_points: usize,
    pub max_iterations: usize,
}

impl Default for EprConfig {
    fn default() -> Self {
        Self { grid_points: 21, max_iterations: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EprResult {
    pub beta_min: f64,
    pub gx: f64,
    pub gp: f64,
    /// `gx = tan(theta_x)`; the angle form also covers infinite gains.
    pub theta_x: f64,
    pub theta_p: f64,
    pub iterations: usize,
    pub nu_tilde_minus_sq: f64,
}

/// `beta` written in gain angles: `Vx(t) Vp(s) / cos^2(t - s)` where the
/// variances are those of `cos(t) x1 - sin(t) x2` and `cos(s) p1 + sin(s) p2`.
fn beta_angles(sf: &StandardForm, tx: f64, tp: f64) -> f64 {
    let [a, b, c1, c2] = sf.params();
    let (sx, cx) = tx.sin_cos();
    let (sp, cp) = tp.sin_cos();
    let vx = a * cx * cx + b * sx * sx - 2.0 * c1 * sx * cx;
    let vp = a * cp * cp + b * sp * sp + 2.0 * c2 * sp * cp;
    let den = (tx - tp).cos().powi(2);
    if den <= 1e-300 {
        f64::INFINITY
    } else {
        vx * vp / den
    }
}

/// Minimum EPR product over the gains, which for these states equals the
/// squared smallest symplectic eigenvalue of the partial transpose.
pub fn min_beta(sf: &StandardForm) -> Result<EprResult> {
    min_beta_with(sf, &EprConfig::default())
}

pub fn min_beta_with(sf: &StandardForm, cfg: &EprConfig) -> Result<EprResult> {
    use std::f64::consts::PI;
    let n = cfg.grid_points.max(1);
    let angle = |i: usize| -0.5 * PI + (i as f64 + 0.5) * PI / n as f64;
    let mut start = [0.0, 0.0];
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            let v = beta_angles(sf, angle(i), angle(j));
            if v < best {
                best = v;
                start = [angle(i), angle(j)];
            }
        }
    }
    let nm = NelderMeadConfig { max_iterations: cfg.max_iterations, f_tol: 1e-15, x_tol: 1e-9 };
    let f = |x: &[f64]| beta_angles(sf, x[0], x[1]);
    let mut m = nelder_mead(f, &start, 0.5 * PI / n as f64, &nm);
    let mut iterations = m.iterations;
    let mut converged = m.converged;
    for step in [1e-3, 1e-5] {
        let again = nelder_mead(f, &m.x, step, &nm);
        iterations += again.iterations;
        converged = again.converged || (again.value - m.value).abs() <= 1e-14 * m.value.abs();
        if again.value <= m.value {
            m = again;
        }
        if converged {
            break;
        }
    }

    let nu = measures::nu_tilde_minus(sf);
    let result = EprResult {
        beta_min: m.value,
        gx: m.x[0].tan(),
        gp: m.x[1].tan(),
        theta_x: m.x[0],
        theta_p: m.x[1],
        iterations,
        nu_tilde_minus_sq: nu * nu,
    };
    if !converged {
        return Err(Error::EprBudgetExceeded { best: Box::new(result) });
    }
    if (result.beta_min - result.nu_tilde_minus_sq).abs() > 1e-6 * result.nu_tilde_minus_sq {
        return Err(Error::Internal(format!(
            "EPR minimum {} differs from nu~_-^2 = {} for {sf}",
            result.beta_min, result.nu_tilde_minus_sq
        )));
    }
    Ok(result)
}
