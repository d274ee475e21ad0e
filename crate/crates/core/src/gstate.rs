//! Two-mode Gaussian state representations and symplectic operations.
//!
//! Quadratures are ordered `(x1, p1, x2, p2)` and the vacuum has unit
//! variance, so the vacuum covariance matrix is the 4x4 identity.

use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack on `nu_minus >= 1` when deciding physicality.
pub const PHYSICALITY_TOL: f64 = 1e-10;
/// Entrywise tolerance on `S Omega S^T = Omega`.
pub const SYMPLECTIC_TOL: f64 = 1e-12;
/// Rounding slack on the symplectic-spectrum discriminant.
pub const DISCRIMINANT_TOL: f64 = 1e-12;

/// The four parameters of the standard form
///
/// ```text
///        [ a  0  c1 0  ]
/// sigma = [ 0  a  0  c2 ]
///        [ c1 0  b  0  ]
///        [ 0  c2 0  b  ]
/// ```
///
/// Values of this type are always physical and normalised so that
/// `c1 >= |c2|` (hence `c1 >= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStandardForm")]
pub struct StandardForm {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
}

#[derive(Deserialize)]
struct RawStandardForm {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
}

impl TryFrom<RawStandardForm> for StandardForm {
    type Error = Error;

    fn try_from(raw: RawStandardForm) -> Result<Self> {
        StandardForm::new(raw.a, raw.b, raw.c1, raw.c2)
    }
}

impl StandardForm {
    /// Builds a standard form, normalising the correlation signs and
    /// rejecting non-physical parameters.
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        let sf = Self::normalized(a, b, c1, c2);
        sf.check_physical()?;
        Ok(sf)
    }

    pub fn vacuum() -> Self {
        Self { a: 1.0, b: 1.0, c1: 0.0, c2: 0.0 }
    }

    /// Applies the sign convention without validating physicality. Used for
    /// rejection-sampling candidates and other intermediate values.
    pub(crate) fn normalized(a: f64, b: f64, c1: f64, c2: f64) -> Self {
        // (c1, c2) ~ (c2, c1) by a pi/2 rotation of both modes and
        // (c1, c2) ~ (-c1, -c2) by a pi rotation of one mode.
        let (mut c1, mut c2) = if c2.abs() > c1.abs() { (c2, c1) } else { (c1, c2) };
        if c1 < 0.0 {
            c1 = -c1;
            c2 = -c2;
        }
        // avoid a stray -0.0 in outputs
        if c2 == 0.0 {
            c2 = 0.0;
        }
        Self { a, b, c1, c2 }
    }

    pub(crate) fn check_physical(&self) -> Result<()> {
        let Self { a, b, c1, c2 } = *self;
        if ![a, b, c1, c2].iter().all(|v| v.is_finite()) {
            return Err(Error::Malformed(format!("non-finite parameters {self}")));
        }
        if a < 1.0 - PHYSICALITY_TOL || b < 1.0 - PHYSICALITY_TOL {
            return Err(Error::NonPhysical(format!("local variance below vacuum in {self}")));
        }
        if a * b - c1 * c1 <= 0.0 || a * b - c2 * c2 <= 0.0 {
            return Err(Error::NonPhysical(format!("not positive definite: {self}")));
        }
        let (nu_minus_sq, _) = spectrum_squared(a, b, c1, c2)?;
        spectrum_squared(a, b, c1, -c2)?;
        // det(sigma) loses about eps * ab in absolute terms; for very large
        // variances that exceeds the fixed slack
        let slack = PHYSICALITY_TOL.max(16.0 * f64::EPSILON * a * b);
        if nu_minus_sq.sqrt() < 1.0 - slack {
            return Err(Error::NonPhysical(format!(
                "smallest symplectic eigenvalue {} < 1 in {self}",
                nu_minus_sq.sqrt()
            )));
        }
        Ok(())
    }

    pub(crate) fn is_physical_candidate(&self) -> bool {
        self.check_physical().is_ok()
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn params(&self) -> [f64; 4] {
        [self.a, self.b, self.c1, self.c2]
    }

    pub fn det_a(&self) -> f64 {
        self.a * self.a
    }

    pub fn det_b(&self) -> f64 {
        self.b * self.b
    }

    pub fn det_c(&self) -> f64 {
        self.c1 * self.c2
    }

    pub fn det_sigma(&self) -> f64 {
        (self.a * self.b - self.c1 * self.c1) * (self.a * self.b - self.c2 * self.c2)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.a - self.b).abs() <= tol
    }

    /// Balanced correlations: `c1 = -c2`.
    pub fn is_balanced(&self, tol: f64) -> bool {
        (self.c1 + self.c2).abs() <= tol
    }

    /// The partially transposed parameters `(a, b, c1, -c2)`. Not a state in
    /// general, hence the bare array.
    pub fn partial_transpose(&self) -> [f64; 4] {
        [self.a, self.b, self.c1, -self.c2]
    }

    pub fn to_cov(&self) -> CovMatrix {
        let Self { a, b, c1, c2 } = *self;
        CovMatrix(Matrix4::new(
            a, 0.0, c1, 0.0, //
            0.0, a, 0.0, c2, //
            c1, 0.0, b, 0.0, //
            0.0, c2, 0.0, b,
        ))
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, c1={}, c2={})", self.a, self.b, self.c1, self.c2)
    }
}

/// Squared symplectic eigenvalues `(nu_-^2, nu_+^2)` of the standard-form
/// matrix with parameters `(a, b, c1, c2)`. Pass `-c2` for the partial
/// transpose.
///
/// The discriminant is evaluated as `(a^2-b^2)^2 + 4(a c1 + b c2)(a c2 + b c1)`,
/// which equals `Delta^2 - 4 det(sigma)` but stays accurate for nearly pure
/// states, and `nu_-^2` is recovered from `det(sigma) / nu_+^2`.
pub(crate) fn spectrum_squared(a: f64, b: f64, c1: f64, c2: f64) -> Result<(f64, f64)> {
    let delta = a * a + b * b + 2.0 * c1 * c2;
    let mut disc = (a * a - b * b).powi(2) + 4.0 * (a * c1 + b * c2) * (a * c2 + b * c1);
    if disc < 0.0 {
        if disc < -DISCRIMINANT_TOL {
            return Err(Error::Malformed(format!(
                "negative symplectic discriminant {disc:e} for (a={a}, b={b}, c1={c1}, c2={c2})"
            )));
        }
        disc = 0.0;
    }
    let plus_sq = 0.5 * (delta + disc.sqrt());
    if plus_sq <= 0.0 {
        return Err(Error::Malformed(format!(
            "non-positive symplectic spectrum for (a={a}, b={b}, c1={c1}, c2={c2})"
        )));
    }
    let det = (a * b - c1 * c1) * (a * b - c2 * c2);
    Ok((det / plus_sq, plus_sq))
}

/// Real symmetric 4x4 covariance matrix in `(x1, p1, x2, p2)` ordering.
///
/// Physicality is not part of the type: classical residuals and other
/// intermediate matrices share it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMatrix(Matrix4<f64>);

impl CovMatrix {
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::Malformed("non-finite covariance entry".into()));
        }
        let scale = m.amax().max(1.0);
        if (m - m.transpose()).amax() > 1e-12 * scale {
            return Err(Error::Malformed("covariance matrix is not symmetric".into()));
        }
        Ok(Self(0.5 * (m + m.transpose())))
    }

    /// Row-major sixteen numbers.
    pub fn from_row_slice(entries: &[f64]) -> Result<Self> {
        if entries.len() != 16 {
            return Err(Error::Malformed(format!(
                "dense covariance needs 16 entries, got {}",
                entries.len()
            )));
        }
        Self::new(Matrix4::from_row_slice(entries))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn to_row_vec(&self) -> Vec<f64> {
        (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| self.0[(i, j)]).collect()
    }

    pub fn block_a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn block_b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn block_c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Flips the sign of `p2`.
    pub fn partial_transpose(&self) -> Self {
        let t = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
        Self(t * self.0 * t)
    }

    pub fn max_abs_diff(&self, other: &CovMatrix) -> f64 {
        (self.0 - other.0).amax()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.0.cholesky().is_some()
    }

    pub fn is_physical(&self) -> bool {
        is_physical(self)
    }
}

/// The two-mode symplectic form, block diagonal in `[[0, 1], [-1, 0]]`.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// A real 4x4 matrix preserving the symplectic form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticOp(Matrix4<f64>);

impl SymplecticOp {
    /// Wraps an arbitrary matrix after checking `S Omega S^T = Omega`.
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        let op = Self(m);
        if !op.is_symplectic(SYMPLECTIC_TOL) {
            return Err(Error::InvalidArgument("matrix is not symplectic".into()));
        }
        Ok(op)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Two-mode squeezer `S2(r)`: diagonal blocks `cosh r * 1`, off-diagonal
    /// blocks `sinh r * diag(1, -1)`.
    pub fn two_mode_squeezer(r: f64) -> Self {
        let (c, s) = (r.cosh(), r.sinh());
        Self(Matrix4::new(
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, -s, //
            s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        ))
    }

    /// Local squeezers `L(r1, r2) = S(r1) (+) S(r2)` with
    /// `S(r) = diag(e^-r, e^r)`, i.e. positive `r` squeezes `x`.
    pub fn local_squeezer(r1: f64, r2: f64) -> Self {
        Self(Matrix4::from_diagonal(&nalgebra::Vector4::new(
            (-r1).exp(),
            r1.exp(),
            (-r2).exp(),
            r2.exp(),
        )))
    }

    /// Independent phase rotations of the two modes.
    pub fn local_rotation(theta1: f64, theta2: f64) -> Self {
        let (s1, c1) = theta1.sin_cos();
        let (s2, c2) = theta2.sin_cos();
        Self(Matrix4::new(
            c1, -s1, 0.0, 0.0, //
            s1, c1, 0.0, 0.0, //
            0.0, 0.0, c2, -s2, //
            0.0, 0.0, s2, c2,
        ))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Inverse via `S^-1 = -Omega S^T Omega`.
    pub fn inverse(&self) -> Self {
        let omega = symplectic_form();
        Self(-(omega * self.0.transpose() * omega))
    }

    pub fn is_symplectic(&self, tol: f64) -> bool {
        let omega = symplectic_form();
        (self.0 * omega * self.0.transpose() - omega).amax() <= tol
    }

    /// Congruence `sigma -> S sigma S^T`.
    pub fn apply(&self, sigma: &CovMatrix) -> CovMatrix {
        apply(self, sigma)
    }
}

impl Mul for SymplecticOp {
    type Output = SymplecticOp;

    fn mul(self, rhs: SymplecticOp) -> SymplecticOp {
        SymplecticOp(self.0 * rhs.0)
    }
}

/// Squeezing parameters, natural-log scale.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SqueezeParams {
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, r1: f64, r2: f64) -> Self {
        Self { r, r1, r2 }
    }
}

/// `S sigma S^T`, symmetrised to remove rounding asymmetry.
pub fn apply(s: &SymplecticOp, sigma: &CovMatrix) -> CovMatrix {
    let m = s.0 * sigma.0 * s.0.transpose();
    CovMatrix(0.5 * (m + m.transpose()))
}

pub fn two_mode_squeezer(r: f64) -> SymplecticOp {
    SymplecticOp::two_mode_squeezer(r)
}

pub fn local_squeezer(r1: f64, r2: f64) -> SymplecticOp {
    SymplecticOp::local_squeezer(r1, r2)
}

/// Two-mode squeezed vacuum: `a = b = cosh 2r`, `c1 = -c2 = sinh 2r`.
pub fn tmsv(r: f64) -> Result<StandardForm> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("squeezing must be finite and >= 0, got {r}")));
    }
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    Ok(StandardForm::normalized(c, c, s, -s))
}

/// Two-mode squeezed vacuum parametrised by `chi = tanh r` in `[0, 1)`:
/// `a = (1 + chi^2)/(1 - chi^2)`, `c1 = 2 chi/(1 - chi^2)`.
pub fn tmsv_from_chi(chi: f64) -> Result<StandardForm> {
    if !(0.0..1.0).contains(&chi) {
        return Err(Error::InvalidArgument(format!("chi must lie in [0, 1), got {chi}")));
    }
    let one_minus = (1.0 - chi) * (1.0 + chi);
    let a = (1.0 + chi * chi) / one_minus;
    let c = 2.0 * chi / one_minus;
    Ok(StandardForm::normalized(a, a, c, -c))
}

pub fn is_physical(sigma: &CovMatrix) -> bool {
    if !sigma.is_positive_definite() {
        return false;
    }
    let [a, b, c1, c2] = reduce_to_standard(sigma);
    StandardForm::normalized(a, b, c1, c2).is_physical_candidate()
}

/// Reduces a physical covariance matrix to its standard form.
///
/// Each local block is first brought to `sqrt(det) * 1` by the local
/// symplectic map `adj(sqrt(A)) / det(A)^(1/4)`; the off-diagonal block is
/// then diagonalised by local rotations (signed 2x2 SVD). The result
/// satisfies `a^2 = det A`, `b^2 = det B`, `c1 c2 = det C` and
/// `c1^2 + c2^2 = (a^2 b^2 + det C^2 - det sigma)/(a b)`.
pub fn to_standard_form(sigma: &CovMatrix) -> Result<StandardForm> {
    if !sigma.is_positive_definite() {
        return Err(Error::NonPhysical("covariance matrix is not positive definite".into()));
    }
    let [a, b, c1, c2] = reduce_to_standard(sigma);
    StandardForm::new(a, b, c1, c2)
}

fn reduce_to_standard(sigma: &CovMatrix) -> [f64; 4] {
    let (na, a) = local_normaliser(&sigma.block_a());
    let (nb, b) = local_normaliser(&sigma.block_b());
    let c = na * sigma.block_c() * nb.transpose();
    let (c1, c2) = signed_singular_values(&c);
    [a, b, c1, c2]
}

/// For a 2x2 SPD block `A` returns `(N, sqrt(det A))` with `det N = 1` and
/// `N A N^T = sqrt(det A) * 1`.
fn local_normaliser(block: &Matrix2<f64>) -> (Matrix2<f64>, f64) {
    let s = block.determinant().sqrt();
    let t = (block.trace() + 2.0 * s).sqrt();
    // sqrt(A) = (A + s 1) / t
    let p = (block[(0, 0)] + s) / t;
    let q = block[(0, 1)] / t;
    let r = (block[(1, 1)] + s) / t;
    let adj = Matrix2::new(r, -q, -q, p);
    (adj / s.sqrt(), s)
}

/// Singular values of a 2x2 matrix under rotations only, so the second one
/// carries the sign of the determinant. Returns `(s1, s2)` with `s1 >= |s2|`.
fn signed_singular_values(m: &Matrix2<f64>) -> (f64, f64) {
    let e = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    let f = 0.5 * (m[(0, 0)] - m[(1, 1)]);
    let g = 0.5 * (m[(1, 0)] + m[(0, 1)]);
    let h = 0.5 * (m[(1, 0)] - m[(0, 1)]);
    let q = e.hypot(h);
    let r = f.hypot(g);
    (q + r, q - r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    #[test]
    fn normalisation_orders_correlations() {
        let sf = StandardForm::new(3.0, 3.0, -0.5, 2.0).unwrap();
        assert_eq!(sf.params(), [3.0, 3.0, 2.0, -0.5]);
        let sf = StandardForm::new(3.0, 3.0, -2.0, 0.5).unwrap();
        assert_eq!(sf.params(), [3.0, 3.0, 2.0, -0.5]);
    }

    #[test]
    fn below_vacuum_rejected() {
        assert!(matches!(StandardForm::new(0.5, 1.0, 0.0, 0.0), Err(Error::NonPhysical(_))));
        // positive definite but violates the uncertainty principle
        assert!(StandardForm::new(2.0, 2.0, 1.9, -1.9).is_err());
    }

    #[test]
    fn tmsv_zero_is_vacuum() {
        assert_eq!(tmsv(0.0).unwrap().params(), [1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn tmsv_matches_chi_parametrisation() {
        let r = 1.0_f64;
        let chi = r.tanh();
        let by_chi = tmsv_from_chi(chi).unwrap();
        let direct = tmsv(r).unwrap();
        for (x, y) in by_chi.params().iter().zip(direct.params()) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
        assert!((direct.a() - 3.762_195_691_083_631).abs() < 1e-12);
        assert!((direct.c1() - 3.626_860_407_847_019).abs() < 1e-12);
        assert!((direct.c2() + 3.626_860_407_847_019).abs() < 1e-12);
    }

    #[test]
    fn negative_squeezing_rejected() {
        assert!(tmsv(-0.1).is_err());
        assert!(tmsv_from_chi(1.0).is_err());
    }

    #[test]
    fn squeezer_on_vacuum_is_tmsv() {
        for r in [0.0, 0.3, 1.0] {
            let out = apply(&two_mode_squeezer(r), &CovMatrix::identity());
            assert!(out.max_abs_diff(&tmsv(r).unwrap().to_cov()) < EPS);
        }
    }

    #[test]
    fn squeezer_inverse() {
        for r in [0.1, 0.5, 2.0] {
            let prod = two_mode_squeezer(r) * two_mode_squeezer(-r);
            assert!((prod.matrix() - Matrix4::identity()).amax() < EPS);
            let l = local_squeezer(r, -0.7 * r) * local_squeezer(-r, 0.7 * r);
            assert!((l.matrix() - Matrix4::identity()).amax() < EPS);
            let inv = two_mode_squeezer(r).inverse();
            assert!((inv.matrix() - two_mode_squeezer(-r).matrix()).amax() < EPS);
        }
    }

    #[test]
    fn zero_parameters_give_identity() {
        assert_eq!(two_mode_squeezer(0.0).matrix(), &Matrix4::identity());
        assert_eq!(local_squeezer(0.0, 0.0).matrix(), &Matrix4::identity());
    }

    #[test]
    fn constructed_ops_are_symplectic() {
        for r in [-1.3, 0.0, 0.4, 2.5] {
            assert!(two_mode_squeezer(r).is_symplectic(SYMPLECTIC_TOL));
            assert!(local_squeezer(r, 0.3 - r).is_symplectic(SYMPLECTIC_TOL));
            assert!(SymplecticOp::local_rotation(r, 2.0 * r).is_symplectic(SYMPLECTIC_TOL));
        }
        assert!(SymplecticOp::from_matrix(Matrix4::identity() * 2.0).is_err());
    }

    #[test]
    fn equal_local_squeezing_commutes_with_two_mode_squeezing() {
        for r in [0.3, 1.0] {
            let s2 = two_mode_squeezer(r);
            let l = local_squeezer(r, r);
            let vac = CovMatrix::identity();
            let lhs = apply(&l, &apply(&s2, &vac));
            let rhs = apply(&s2, &apply(&l, &vac));
            assert!(lhs.max_abs_diff(&rhs) < EPS);
        }
    }

    #[test]
    fn identity_apply_is_noop() {
        let sigma = StandardForm::new(2.0, 3.0, 1.0, -0.5).unwrap().to_cov();
        assert_eq!(apply(&SymplecticOp::identity(), &sigma), sigma);
    }

    #[test]
    fn squeezers_compose_additively() {
        let (r, s) = (0.4, 0.9);
        let vac = CovMatrix::identity();
        let out = apply(&two_mode_squeezer(r), &apply(&two_mode_squeezer(s), &vac));
        assert!(out.max_abs_diff(&tmsv(r + s).unwrap().to_cov()) < 1e-10);
    }

    #[test]
    fn standard_form_fixed_point() {
        let sf = StandardForm::new(2.5, 1.7, 1.2, -0.4).unwrap();
        let back = to_standard_form(&sf.to_cov()).unwrap();
        for (x, y) in back.params().iter().zip(sf.params()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn dense_tmsv_reduces_exactly() {
        let back = to_standard_form(&tmsv(1.0).unwrap().to_cov()).unwrap();
        let (c, s) = (2.0_f64.cosh(), 2.0_f64.sinh());
        let want = [c, c, s, -s];
        for (x, y) in back.params().iter().zip(want) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn physicality_examples() {
        assert!(is_physical(&CovMatrix::identity()));
        let below = CovMatrix::new(Matrix4::from_diagonal(&nalgebra::Vector4::new(0.5, 0.5, 1.0, 1.0)))
            .unwrap();
        assert!(!is_physical(&below));
        // squeezed but pure: physical even though an ordinary eigenvalue < 1
        let sq = CovMatrix::new(Matrix4::from_diagonal(&nalgebra::Vector4::new(0.5, 2.0, 1.0, 1.0)))
            .unwrap();
        assert!(is_physical(&sq));
        for r in [0.5, 1.0, 2.0] {
            assert!(is_physical(&tmsv(r).unwrap().to_cov()));
        }
    }

    #[test]
    fn non_symmetric_dense_rejected() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = 0.3;
        assert!(CovMatrix::new(m).is_err());
        assert!(CovMatrix::from_row_slice(&[1.0; 15]).is_err());
    }

    #[test]
    fn serde_validates() {
        let ok: StandardForm = serde_json::from_str(r#"{"a":2,"b":2,"c1":-1,"c2":0.5}"#).unwrap();
        assert_eq!(ok.params(), [2.0, 2.0, 1.0, -0.5]);
        assert!(serde_json::from_str::<StandardForm>(r#"{"a":0.2,"b":2,"c1":0,"c2":0}"#).is_err());
    }
}
