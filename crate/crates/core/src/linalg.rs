//! Dense complex linear algebra over finite tensor-product Hilbert spaces.
//!
//! Index convention: subsystem 1 is the most significant tensor index, so a
//! bipartite amplitude `amps[i * d2 + j]` belongs to `|i> ⊗ |j>`. Every
//! routine here (kron, tensor_state, partial_trace, subsystem permutations)
//! uses that flattening.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default tolerance for exact-algebra checks.
pub const EXACT_TOL: f64 = 1e-10;
/// Default tolerance for eigensolver residuals and Hermiticity preconditions.
pub const EIGEN_TOL: f64 = 1e-8;

/// Components below this modulus are treated as zero when fixing phases.
const PHASE_FLOOR: f64 = 1e-12;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Multiplies `v` by a unit phase so that its first non-negligible component
/// is real and positive.
pub(crate) fn normalize_phase(v: &mut DVector<C64>) {
    if let Some(first) = v.iter().find(|z| z.norm() > PHASE_FLOOR) {
        let phase = first.conj() / first.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Row-major split of a flat index into a multi-index over `dims`.
pub(crate) fn unflatten(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

pub(crate) fn flatten(multi: &[usize], dims: &[usize]) -> usize {
    multi.iter().zip(dims).fold(0, |acc, (&k, &d)| acc * d + k)
}

/// Thin singular value decomposition with singular values sorted descending.
///
/// Returns `(u, s, v_adjoint)` with `m = u · diag(s) · v_adjoint`. Computed
/// with faer: nalgebra's complex SVD returns inaccurate singular vectors for
/// rank-deficient input.
pub(crate) fn svd_sorted(m: &DMatrix<C64>) -> (DMatrix<C64>, Vec<f64>, DMatrix<C64>) {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    if k == 0 {
        return (DMatrix::zeros(rows, 0), Vec::new(), DMatrix::zeros(0, cols));
    }
    let fm = faer::Mat::<C64>::from_fn(rows, cols, |r, c| m[(r, c)]);
    let svd = fm.thin_svd().expect("SVD of a finite matrix converges");
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| s[b].re.total_cmp(&s[a].re));
    let values = order.iter().map(|&j| s[j].re).collect();
    let u_sorted = DMatrix::from_fn(rows, k, |r, j| u[(r, order[j])]);
    let v_adj = DMatrix::from_fn(k, cols, |j, c| v[(c, order[j])].conj());
    (u_sorted, values, v_adj)
}

/// Number of singular values above `rel_threshold` times the largest one.
pub fn numerical_rank(m: &DMatrix<C64>, rel_threshold: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let (_, s, _) = svd_sorted(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel_threshold * top).count(),
        _ => 0,
    }
}

/// A normalized complex amplitude vector.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amps: DVector<C64>,
}

impl StateVector {
    /// Builds a state from raw amplitudes, normalizing them.
    pub fn new(amps: impl Into<Vec<C64>>) -> Result<Self> {
        Self::from_vector(DVector::from_vec(amps.into()))
    }

    pub fn from_vector(mut amps: DVector<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidArgument("empty amplitude vector".into()));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let norm = amps.norm();
        if norm < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::ZeroNorm);
        }
        amps.unscale_mut(norm);
        Ok(Self { amps })
    }

    /// Computational basis vector `|index>` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = DVector::zeros(dim);
        amps[index] = cr(1.0);
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn as_slice(&self) -> &[C64] {
        self.amps.as_slice()
    }

    pub fn into_vector(self) -> DVector<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.dotc(&other.amps)
    }

    /// `|<self|other>|`.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    /// Distance between the two rays, `min_phi ||self - e^{i phi} other||`.
    pub fn phase_distance(&self, other: &StateVector) -> f64 {
        let cross = other.amps.dotc(&self.amps);
        let phase = if cross.norm() > 0.0 { cross / cross.norm() } else { cr(1.0) };
        (&self.amps - &other.amps * phase).norm()
    }

    /// Applies `op` and renormalizes the image.
    pub fn evolve(&self, op: &Operator) -> Result<StateVector> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: op.dim(), found: self.dim() });
        }
        StateVector::from_vector(op.matrix() * &self.amps)
    }

    /// `|self><self|`.
    pub fn projector(&self) -> Operator {
        Operator { mat: &self.amps * self.amps.adjoint() }
    }

    /// Reshapes the amplitudes into the `d1 x d2` coefficient matrix of `split`.
    pub fn amplitude_matrix(&self, split: BipartiteSplit) -> Result<DMatrix<C64>> {
        split.check_dim(self.dim())?;
        Ok(DMatrix::from_fn(split.d1, split.d2, |i, j| self.amps[i * split.d2 + j]))
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amps.iter()).finish()
    }
}

/// A square complex matrix acting on a finite Hilbert space.
#[derive(Clone, PartialEq)]
pub struct Operator {
    mat: DMatrix<C64>,
}

impl Operator {
    pub fn from_matrix(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch { expected: mat.nrows(), found: mat.ncols() });
        }
        if mat.is_empty() {
            return Err(Error::InvalidArgument("empty operator".into()));
        }
        Ok(Self { mat })
    }

    /// Builds a `dim x dim` operator from row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn identity(dim: usize) -> Self {
        Self { mat: DMatrix::identity(dim, dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { mat: DMatrix::zeros(dim, dim) }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        Self { mat: DMatrix::from_diagonal(&DVector::from_column_slice(entries)) }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn adjoint(&self) -> Operator {
        Operator { mat: self.mat.adjoint() }
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn scale(&self, factor: C64) -> Operator {
        Operator { mat: &self.mat * factor }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.mat * v
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn frobenius_distance(&self, other: &Operator) -> f64 {
        (&self.mat - &other.mat).norm()
    }

    /// `min_phi ||self - e^{i phi} other||_F`.
    pub fn phase_distance(&self, other: &Operator) -> f64 {
        let cross = other.mat.dotc(&self.mat);
        let phase = if cross.norm() > 0.0 { cross / cross.norm() } else { cr(1.0) };
        (&self.mat - &other.mat * phase).norm()
    }

    /// `||A - A^dagger||_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        (&self.mat - self.mat.adjoint()).norm()
    }

    /// `||A^dagger A - 1||_F`.
    pub fn unitary_deviation(&self) -> f64 {
        let n = self.dim();
        (self.mat.adjoint() * &self.mat - DMatrix::<C64>::identity(n, n)).norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    /// `self · rho · self^dagger`.
    pub fn conjugate(&self, rho: &Operator) -> Operator {
        Operator { mat: &self.mat * &rho.mat * self.mat.adjoint() }
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        Operator { mat: &self.mat * &other.mat - &other.mat * &self.mat }
    }

    pub fn anticommutator(&self, other: &Operator) -> Operator {
        Operator { mat: &self.mat * &other.mat + &other.mat * &self.mat }
    }

    /// `<a| self |b>`.
    pub fn matrix_element(&self, a: &StateVector, b: &StateVector) -> C64 {
        a.amps().dotc(&(&self.mat * b.amps()))
    }

    pub fn power(&self, exponent: u32) -> Operator {
        let mut out = Operator::identity(self.dim());
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator{}", self.mat)
    }
}

impl Mul<&Operator> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator { mat: &self.mat * &rhs.mat }
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        Operator { mat: self.mat * rhs.mat }
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator { mat: &self.mat + &rhs.mat }
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator { mat: &self.mat - &rhs.mat }
    }
}

/// A Hermitian, positive semidefinite, unit-trace operator.
#[derive(Clone, PartialEq)]
pub struct DensityOperator {
    op: Operator,
}

impl DensityOperator {
    /// Validates `op` as a density operator at tolerance `tol`.
    pub fn new(op: Operator, tol: f64) -> Result<Self> {
        let dev = op.hermitian_deviation();
        if dev > tol {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {dev:.3e})")));
        }
        let tr = op.trace();
        if (tr - cr(1.0)).norm() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let eig = hermitian_eigensystem(&op, tol.max(EIGEN_TOL))?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self { op })
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn from_operator_unchecked(op: Operator) -> Self {
        Self { op }
    }

    pub fn pure(state: &StateVector) -> Self {
        Self { op: state.projector() }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { op: Operator::identity(dim).scale(cr(1.0 / dim as f64)) }
    }

    /// Convex combination `sum_k w_k rho_k`; weights must be non-negative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityOperator)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut total = 0.0;
        let mut acc = Operator::zeros(dim);
        for &(w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: rho.dim() });
            }
            if w < 0.0 {
                return Err(Error::InvalidArgument(format!("negative weight {w}")));
            }
            total += w;
            acc = &acc + &rho.op.scale(cr(w));
        }
        if (total - 1.0).abs() > EXACT_TOL {
            return Err(Error::InvalidArgument(format!("weights sum to {total}")));
        }
        Ok(Self { op: acc })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn as_operator(&self) -> &Operator {
        &self.op
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        self.op.matrix()
    }

    pub fn trace(&self) -> f64 {
        self.op.trace().re
    }

    pub fn purity(&self) -> f64 {
        (self.matrix() * self.matrix()).trace().re
    }

    /// `Tr(A rho)`, real part.
    pub fn expectation(&self, observable: &Operator) -> f64 {
        (observable.matrix() * self.matrix()).trace().re
    }

    /// `u rho u^dagger` for a unitary `u`.
    pub fn evolve(&self, u: &Operator) -> Result<DensityOperator> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.dim() });
        }
        Ok(Self { op: u.conjugate(&self.op) })
    }

    pub fn frobenius_distance(&self, other: &DensityOperator) -> f64 {
        self.op.frobenius_distance(&other.op)
    }
}

impl fmt::Debug for DensityOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityOperator{}", self.op.mat)
    }
}

/// A tensor-product structure `H = H1 ⊗ H2` with `dim H1 = d1`, `dim H2 = d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteSplit {
    pub d1: usize,
    pub d2: usize,
}

impl BipartiteSplit {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidArgument(format!("split {d1}x{d2} has a zero factor")));
        }
        Ok(Self { d1, d2 })
    }

    /// Two qubits.
    pub const fn qubits() -> Self {
        Self { d1: 2, d2: 2 }
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn min_dim(&self) -> usize {
        self.d1.min(self.d2)
    }

    pub fn is_symmetric(&self) -> bool {
        self.d1 == self.d2
    }

    pub fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }
}

impl fmt::Display for BipartiteSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.d1, self.d2)
    }
}

/// Which factor of a [`BipartiteSplit`] to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// `a ⊗ b`.
pub fn tensor_state(a: &StateVector, b: &StateVector) -> StateVector {
    let db = b.dim();
    let amps = DVector::from_fn(a.dim() * db, |k, _| a.amps[k / db] * b.amps[k % db]);
    // product of unit vectors is a unit vector
    StateVector { amps }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    Operator { mat: a.mat.kronecker(&b.mat) }
}

fn check_permutation(dims: &[usize], perm: &[usize]) -> Result<()> {
    if perm.len() != dims.len() {
        return Err(Error::DimensionMismatch { expected: dims.len(), found: perm.len() });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    if dims.contains(&0) {
        return Err(Error::InvalidArgument("zero subsystem dimension".into()));
    }
    Ok(())
}

/// Index map of a subsystem permutation: `map[k]` is the output flat index
/// receiving input flat index `k`.
fn permutation_index_map(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut multi = vec![0; dims.len()];
    let mut out_multi = vec![0; dims.len()];
    (0..total)
        .map(|k| {
            unflatten(k, dims, &mut multi);
            for (slot, &p) in out_multi.iter_mut().zip(perm) {
                *slot = multi[p];
            }
            flatten(&out_multi, &out_dims)
        })
        .collect()
}

/// Reorders tensor factors: output factor `m` is input factor `perm[m]`.
///
/// The amplitude at output multi-index `(k[perm[0]], .., k[perm[n-1]])` equals
/// the input amplitude at `(k[0], .., k[n-1])`. Permutations are zero-based.
pub fn permute_subsystems(state: &StateVector, dims: &[usize], perm: &[usize]) -> Result<StateVector> {
    check_permutation(dims, perm)?;
    let total: usize = dims.iter().product();
    if total != state.dim() {
        return Err(Error::DimensionMismatch { expected: total, found: state.dim() });
    }
    let map = permutation_index_map(dims, perm);
    let mut amps = DVector::zeros(total);
    for (k, &j) in map.iter().enumerate() {
        amps[j] = state.amps[k];
    }
    Ok(StateVector { amps })
}

/// The unitary permutation matrix implementing [`permute_subsystems`].
pub fn permutation_operator(dims: &[usize], perm: &[usize]) -> Result<Operator> {
    check_permutation(dims, perm)?;
    let total: usize = dims.iter().product();
    let mut mat = DMatrix::zeros(total, total);
    for (k, j) in permutation_index_map(dims, perm).into_iter().enumerate() {
        mat[(j, k)] = cr(1.0);
    }
    Ok(Operator { mat })
}

/// The inverse of a zero-based permutation.
pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (m, &p) in perm.iter().enumerate() {
        inv[p] = m;
    }
    inv
}

/// Traces out one factor of `split`, returning the reduced state of `keep`.
pub fn partial_trace(rho: &DensityOperator, split: BipartiteSplit, keep: Subsystem) -> Result<DensityOperator> {
    split.check_dim(rho.dim())?;
    let (d1, d2) = (split.d1, split.d2);
    let m = rho.matrix();
    let mat = match keep {
        Subsystem::First => DMatrix::from_fn(d1, d1, |i, ip| {
            (0..d2).map(|j| m[(i * d2 + j, ip * d2 + j)]).sum()
        }),
        Subsystem::Second => DMatrix::from_fn(d2, d2, |j, jp| {
            (0..d1).map(|i| m[(i * d2 + j, i * d2 + jp)]).sum()
        }),
    };
    Ok(DensityOperator::from_operator_unchecked(Operator { mat }))
}

/// Spectral decomposition of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: DMatrix<C64>,
}

impl EigenSystem {
    pub fn vector(&self, k: usize) -> StateVector {
        StateVector { amps: self.vectors.column(k).into_owned() }
    }

    /// `sum_k lambda_k v_k v_k^dagger`.
    pub fn reconstruct(&self) -> Operator {
        let diag = DMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&x| cr(x)),
        ));
        Operator { mat: &self.vectors * diag * self.vectors.adjoint() }
    }

    /// Projector onto the span of eigenvectors with eigenvalue above `threshold`.
    pub fn support_projector(&self, threshold: f64) -> Operator {
        let n = self.vectors.nrows();
        let mut mat = DMatrix::zeros(n, n);
        for (k, _) in self.values.iter().enumerate().filter(|(_, &x)| x > threshold) {
            let v = self.vectors.column(k);
            mat += v * v.adjoint();
        }
        Operator { mat }
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian operator.
///
/// Each eigenvector is phase-fixed so that its first nonzero component is
/// real and positive.
pub fn hermitian_eigensystem(a: &Operator, tol: f64) -> Result<EigenSystem> {
    let deviation = a.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let herm = (&a.mat + a.mat.adjoint()).scale(0.5);
    let eig = nalgebra::linalg::SymmetricEigen::new(herm);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (slot, &k) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(k).into_owned();
        normalize_phase(&mut v);
        vectors.set_column(slot, &v);
    }
    Ok(EigenSystem { values, vectors })
}

/// Single-qubit Pauli matrices and related constants.
pub mod pauli {
    use super::{c, cr, Operator};

    pub fn x() -> Operator {
        Operator::from_rows(2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]).unwrap()
    }

    pub fn y() -> Operator {
        Operator::from_rows(2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)]).unwrap()
    }

    pub fn z() -> Operator {
        Operator::diagonal(&[cr(1.0), cr(-1.0)])
    }

    pub fn identity() -> Operator {
        Operator::identity(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ket(amps: &[(f64, f64)]) -> StateVector {
        StateVector::new(amps.iter().map(|&(r, i)| c(r, i)).collect::<Vec<_>>()).unwrap()
    }

    fn bell_phi_minus() -> StateVector {
        ket(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)])
    }

    fn assert_amps(state: &StateVector, expected: &[C64], tol: f64) {
        assert_eq!(state.dim(), expected.len());
        for (a, b) in state.as_slice().iter().zip(expected) {
            assert!((a - b).norm() <= tol, "{state:?} vs {expected:?}");
        }
    }

    #[test]
    fn tensor_state_examples() {
        let zero = StateVector::basis(2, 0).unwrap();
        assert_amps(&tensor_state(&zero, &zero), &[cr(1.0), cr(0.0), cr(0.0), cr(0.0)], 0.0);

        let plus = ket(&[(1.0, 0.0), (1.0, 0.0)]);
        assert_amps(&tensor_state(&plus, &plus), &[cr(0.5); 4], 1e-15);

        let left = ket(&[(1.0, 0.0), (0.0, 1.0)]);
        let right = ket(&[(1.0, 0.0), (0.0, -1.0)]);
        let upsilon = tensor_state(&left, &right);
        assert_amps(&upsilon, &[cr(0.5), c(0.0, -0.5), c(0.0, 0.5), cr(0.5)], 1e-15);
    }

    #[test]
    fn kron_examples() {
        let id = kron(&Operator::identity(2), &Operator::identity(2));
        assert_eq!(id, Operator::identity(4));

        let s = FRAC_1_SQRT_2;
        let phi_plus = ket(&[(s, 0.0), (0.0, 0.0), (0.0, 0.0), (s, 0.0)]);
        let zz = kron(&pauli::z(), &pauli::z());
        let image = zz.apply(phi_plus.amps());
        assert!((image - phi_plus.amps()).norm() < 1e-15);

        // direct 4x4 matrix-vector oracle for X⊗X
        let xx = [
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ];
        let phi_minus = bell_phi_minus();
        let oracle: Vec<C64> = (0..4)
            .map(|r| (0..4).map(|k| cr(xx[r][k]) * phi_minus.amps()[k]).sum())
            .collect();
        let image = kron(&pauli::x(), &pauli::x()).apply(phi_minus.amps());
        for k in 0..4 {
            assert!((image[k] - oracle[k]).norm() < 1e-15);
            assert!((image[k] + phi_minus.amps()[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn permute_subsystems_examples() {
        let state = ket(&[(0.3, 0.1), (0.2, 0.0), (0.0, -0.7), (0.5, 0.5)]);
        let same = permute_subsystems(&state, &[2, 2], &[0, 1]).unwrap();
        assert_eq!(same, state);

        let zero_one = StateVector::basis(4, 1).unwrap();
        let swapped = permute_subsystems(&zero_one, &[2, 2], &[1, 0]).unwrap();
        assert_eq!(swapped, StateVector::basis(4, 2).unwrap());

        // singlet pair in qubit order (1,3,2,4), reordered to (1,2,3,4)
        let singlet = ket(&[(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)]);
        let pair = tensor_state(&singlet, &singlet);
        let lambda = permute_subsystems(&pair, &[2, 2, 2, 2], &[0, 2, 1, 3]).unwrap();
        let mut expected = vec![cr(0.0); 16];
        expected[0b0011] = cr(0.5);
        expected[0b0110] = cr(-0.5);
        expected[0b1001] = cr(-0.5);
        expected[0b1100] = cr(0.5);
        assert_amps(&lambda, &expected, 1e-15);
    }

    #[test]
    fn permute_subsystems_rejects_bad_input() {
        let s = StateVector::basis(4, 0).unwrap();
        assert!(matches!(
            permute_subsystems(&s, &[2, 3], &[0, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(permute_subsystems(&s, &[2, 2], &[0, 0]).is_err());
        assert!(permute_subsystems(&s, &[2, 2], &[0]).is_err());
    }

    #[test]
    fn permutation_operator_matches_state_permutation() {
        let state = ket(&[(1.0, 0.0), (0.0, 2.0), (3.0, 0.0), (0.0, -1.0), (0.5, 0.5), (1.0, 1.0)]);
        let dims = [3, 2];
        let op = permutation_operator(&dims, &[1, 0]).unwrap();
        let via_op = state.evolve(&op).unwrap();
        let direct = permute_subsystems(&state, &dims, &[1, 0]).unwrap();
        assert!((via_op.amps() - direct.amps()).norm() < 1e-15);
        assert!(op.is_unitary(1e-15));
    }

    #[test]
    fn partial_trace_examples() {
        let split = BipartiteSplit::qubits();
        let rho = DensityOperator::pure(&StateVector::basis(4, 0).unwrap());
        let reduced = partial_trace(&rho, split, Subsystem::First).unwrap();
        assert!(reduced.as_operator().frobenius_distance(&StateVector::basis(2, 0).unwrap().projector()) < 1e-15);

        let s = FRAC_1_SQRT_2;
        let phi_plus = ket(&[(s, 0.0), (0.0, 0.0), (0.0, 0.0), (s, 0.0)]);
        let reduced = partial_trace(&DensityOperator::pure(&phi_plus), split, Subsystem::First).unwrap();
        assert!(reduced.frobenius_distance(&DensityOperator::maximally_mixed(2)) < 1e-15);

        // |Upsilon> keep 2: direct trace-out oracle
        let upsilon = [cr(0.5), c(0.0, -0.5), c(0.0, 0.5), cr(0.5)];
        let mut oracle = [[cr(0.0); 2]; 2];
        for (j, row) in oracle.iter_mut().enumerate() {
            for (jp, entry) in row.iter_mut().enumerate() {
                for i in 0..2 {
                    *entry += upsilon[2 * i + j] * upsilon[2 * i + jp].conj();
                }
            }
        }
        let state = StateVector::new(upsilon.to_vec()).unwrap();
        let reduced = partial_trace(&DensityOperator::pure(&state), split, Subsystem::Second).unwrap();
        for (j, row) in oracle.iter().enumerate() {
            for (jp, expected) in row.iter().enumerate() {
                assert!((reduced.matrix()[(j, jp)] - expected).norm() < 1e-15);
            }
        }
        assert!((reduced.purity() - 1.0).abs() < 1e-12);
        let eig = hermitian_eigensystem(reduced.as_operator(), EIGEN_TOL).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-12 && eig.values[1].abs() < 1e-12);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let rho = DensityOperator::maximally_mixed(6);
        assert!(partial_trace(&rho, BipartiteSplit::qubits(), Subsystem::First).is_err());
    }

    #[test]
    fn eigensystem_examples() {
        let eig = hermitian_eigensystem(&pauli::z(), EIGEN_TOL).unwrap();
        assert_eq!(eig.values, vec![1.0, -1.0]);

        let half = Operator::identity(2).scale(cr(0.5));
        let eig = hermitian_eigensystem(&half, EIGEN_TOL).unwrap();
        assert!(eig.values.iter().all(|&x| (x - 0.5).abs() < 1e-15));

        let h = &kron(&pauli::z(), &pauli::z()) + &kron(&pauli::x(), &pauli::x()).scale(cr(0.5));
        let eig = hermitian_eigensystem(&h, EIGEN_TOL).unwrap();
        for (got, want) in eig.values.iter().zip([1.5, 0.5, -0.5, -1.5]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(eig.reconstruct().frobenius_distance(&h) < 1e-8);
    }

    #[test]
    fn eigensystem_phase_convention() {
        let y = pauli::y();
        let eig = hermitian_eigensystem(&y, EIGEN_TOL).unwrap();
        for k in 0..2 {
            let v = eig.vector(k);
            let first = v.as_slice().iter().find(|z| z.norm() > 1e-12).unwrap();
            assert!(first.im.abs() < 1e-14 && first.re > 0.0);
        }
    }

    #[test]
    fn eigensystem_rejects_non_hermitian() {
        let a = Operator::from_rows(2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]).unwrap();
        assert!(matches!(hermitian_eigensystem(&a, EIGEN_TOL), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn density_validation() {
        assert!(DensityOperator::new(Operator::identity(2), EXACT_TOL).is_err());
        assert!(DensityOperator::new(pauli::z().scale(cr(0.5)), EXACT_TOL).is_err());
        let bad = Operator::diagonal(&[cr(1.5), cr(-0.5)]);
        assert!(DensityOperator::new(bad, EXACT_TOL).is_err());
        assert!(DensityOperator::new(Operator::identity(2).scale(cr(0.5)), EXACT_TOL).is_ok());
    }

    #[test]
    fn zero_state_rejected() {
        assert_eq!(StateVector::new(vec![cr(0.0); 3]), Err(Error::ZeroNorm));
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let a = pauli::x();
        let b = a.scale(c(0.0, 1.0));
        assert!(a.phase_distance(&b) < 1e-12);
        assert!(a.frobenius_distance(&b) > 1.0);
    }

    #[test]
    fn svd_rank_deficient_recomposes() {
        let mut rng = crate::random::RngStream::new(17);
        for (rows, cols, rank) in [(4, 9, 1), (9, 4, 1), (4, 4, 2), (16, 16, 1), (10, 10, 9)] {
            let a = DMatrix::from_fn(rows, rank, |_, _| rng.complex_gaussian());
            let b = DMatrix::from_fn(rank, cols, |_, _| rng.complex_gaussian());
            let m = &a * &b;
            let (u, s, v_adj) = svd_sorted(&m);
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
            let sigma = DMatrix::from_diagonal(&DVector::from_iterator(s.len(), s.iter().map(|&x| cr(x))));
            let rebuilt = &u * sigma * &v_adj;
            assert!((rebuilt - &m).norm() < 1e-12 * m.norm(), "{rows}x{cols} rank {rank}");
            assert_eq!(numerical_rank(&m, 1e-10), rank);
            assert!((u.adjoint() * &u - DMatrix::identity(s.len(), s.len())).norm() < 1e-12);
        }
    }
}
