//! Meronomic frames: tensor-product structures, Schmidt analysis, and the
//! frame group `M` of local unitaries (plus SWAP when both factors match).
//!
//! Two frames describe the same subsystem decomposition exactly when they
//! differ by an element of `M`. Membership of a unitary in `M` is decided
//! here by its operator Schmidt rank: `U = V ⊗ W` iff the realigned matrix
//! `R[(i1,j1),(i2,j2)] = U[(i1,i2),(j1,j2)]` has rank one.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    c, cr, kron, normalize_phase, pauli, svd_sorted, tensor_state, C64, EXACT_TOL, Operator,
    StateVector,
};

pub use crate::linalg::BipartiteSplit;

/// Descending Schmidt parameters with their left/right Schmidt vectors.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Squared Schmidt coefficients, descending; `min(d1, d2)` entries.
    pub params: Vec<f64>,
    pub left: Vec<StateVector>,
    pub right: Vec<StateVector>,
}

impl SchmidtDecomposition {
    /// `sum_k sqrt(lambda_k) left_k ⊗ right_k`.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let d = self.left[0].dim() * self.right[0].dim();
        let mut amps = DVector::<C64>::zeros(d);
        for ((&p, l), r) in self.params.iter().zip(&self.left).zip(&self.right) {
            amps += tensor_state(l, r).amps() * cr(p.max(0.0).sqrt());
        }
        StateVector::from_vector(amps)
    }

    /// Number of parameters above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.params.iter().filter(|&&p| p > tol).count()
    }

    /// Von Neumann entropy of either reduced state, in bits.
    pub fn entropy(&self) -> f64 {
        self.params.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
    }
}

/// Schmidt decomposition of `state` with respect to `split`.
pub fn schmidt_decompose(state: &StateVector, split: BipartiteSplit) -> Result<SchmidtDecomposition> {
    let m = state.amplitude_matrix(split)?;
    let (u, s, v_adj) = svd_sorted(&m);
    let left = (0..s.len())
        .map(|k| StateVector::from_vector(u.column(k).into_owned()))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..s.len())
        .map(|k| StateVector::from_vector(v_adj.row(k).transpose()))
        .collect::<Result<Vec<_>>>()?;
    let params = s.iter().map(|&x| x * x).collect();
    Ok(SchmidtDecomposition { params, left, right })
}

/// Entanglement class of a pure bipartite state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Entanglement {
    Product,
    Entangled,
    MaximallyEntangled,
}

/// Classification from already computed Schmidt parameters.
pub fn classify_params(params: &[f64], tol: f64) -> Entanglement {
    let top = params.first().copied().unwrap_or(1.0);
    if top >= 1.0 - tol {
        return Entanglement::Product;
    }
    let flat = 1.0 / params.len() as f64;
    if params.iter().all(|&p| (p - flat).abs() <= tol) {
        Entanglement::MaximallyEntangled
    } else {
        Entanglement::Entangled
    }
}

/// Classifies `state` as product, entangled or maximally entangled across `split`.
pub fn classify(state: &StateVector, split: BipartiteSplit, tol: f64) -> Result<Entanglement> {
    Ok(classify_params(&schmidt_decompose(state, split)?.params, tol))
}

/// The SWAP operator `|j,m> -> |m,j>` on `C^d ⊗ C^d`.
pub fn swap_operator(d: usize) -> Operator {
    let mut mat = DMatrix::zeros(d * d, d * d);
    for j in 0..d {
        for m in 0..d {
            mat[(m * d + j, j * d + m)] = cr(1.0);
        }
    }
    Operator::from_matrix(mat).expect("square")
}

/// An element `(v ⊗ w) · xi` of the frame group, with `xi` the identity or SWAP.
#[derive(Debug, Clone)]
pub struct MeronomicElement {
    pub v: Operator,
    pub w: Operator,
    pub swap: bool,
}

impl MeronomicElement {
    /// Checks unitarity of both factors (within `tol`) and the SWAP dimension rule.
    pub fn new(v: Operator, w: Operator, swap: bool, tol: f64) -> Result<Self> {
        for f in [&v, &w] {
            let deviation = f.unitary_deviation();
            if deviation > tol {
                return Err(Error::NotUnitary { deviation });
            }
        }
        if swap && v.dim() != w.dim() {
            return Err(Error::SwapDimensionMismatch { d1: v.dim(), d2: w.dim() });
        }
        Ok(Self { v, w, swap })
    }

    /// No unitarity check. Used to inject faults into verification suites.
    pub fn new_unchecked(v: Operator, w: Operator, swap: bool) -> Self {
        Self { v, w, swap }
    }

    pub fn identity(split: BipartiteSplit) -> Self {
        Self { v: Operator::identity(split.d1), w: Operator::identity(split.d2), swap: false }
    }

    pub fn split(&self) -> BipartiteSplit {
        BipartiteSplit { d1: self.v.dim(), d2: self.w.dim() }
    }

    /// The full operator `(v ⊗ w) · (SWAP if swap)`.
    pub fn operator(&self) -> Operator {
        let local = kron(&self.v, &self.w);
        if self.swap {
            &local * &swap_operator(self.v.dim())
        } else {
            local
        }
    }
}

/// Applies `elem` to `state` over `split`.
pub fn apply_element(elem: &MeronomicElement, state: &StateVector, split: BipartiteSplit) -> Result<StateVector> {
    if elem.swap && !split.is_symmetric() {
        return Err(Error::SwapDimensionMismatch { d1: split.d1, d2: split.d2 });
    }
    if elem.split() != split {
        return Err(Error::DimensionMismatch { expected: split.dim(), found: elem.split().dim() });
    }
    split.check_dim(state.dim())?;
    state.evolve(&elem.operator())
}

/// The four Bell states `Phi+, Phi-, Psi+, Psi-` in (1,2) coordinates.
pub fn bell_states() -> [StateVector; 4] {
    let s = FRAC_1_SQRT_2;
    let mk = |a: [f64; 4]| StateVector::new(a.map(|x| cr(x * s)).to_vec()).expect("nonzero");
    [
        mk([1.0, 0.0, 0.0, 1.0]),
        mk([1.0, 0.0, 0.0, -1.0]),
        mk([0.0, 1.0, 1.0, 0.0]),
        mk([0.0, 1.0, -1.0, 0.0]),
    ]
}

/// Change of coordinates from the (1,2) frame to the Bell (A,B) frame.
///
/// Maps `Phi+ -> |00>`, `Phi- -> |01>`, `Psi+ -> |10>`, `Psi- -> |11>`, where the
/// A qubit has basis `{Phi, Psi}` and the B qubit `{+, -}`.
pub fn bell_frame_unitary() -> Operator {
    let bells = bell_states();
    let mat = DMatrix::from_fn(4, 4, |row, col| bells[row].amps()[col].conj());
    Operator::from_matrix(mat).expect("square")
}

/// Change of coordinates from the (1,2) frame to the θ-frame (A,B), whose
/// product basis agrees with the computational one except `|1_A,1_B> = e^{iθ}|1,1>`.
///
/// Coordinates transform by `diag(1, 1, 1, e^{-iθ})`.
pub fn theta_frame_unitary(theta: f64) -> Operator {
    Operator::diagonal(&[cr(1.0), cr(1.0), cr(1.0), C64::from_polar(1.0, -theta)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PauliLabel {
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 3] = [PauliLabel::X, PauliLabel::Y, PauliLabel::Z];

    pub fn matrix(self) -> Operator {
        match self {
            PauliLabel::X => pauli::x(),
            PauliLabel::Y => pauli::y(),
            PauliLabel::Z => pauli::z(),
        }
    }
}

/// Which qubit of the Bell (A,B) frame an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FrameSide {
    A,
    B,
}

/// The Pauli operator `label` on qubit `side` of the Bell frame, written in
/// (1,2) coordinates. For example `(Z, A)` is `Z⊗Z` and `(X, B)` is `Z⊗1`.
pub fn ab_pauli(label: PauliLabel, side: FrameSide) -> Operator {
    let local = match side {
        FrameSide::A => kron(&label.matrix(), &pauli::identity()),
        FrameSide::B => kron(&pauli::identity(), &label.matrix()),
    };
    let u = bell_frame_unitary();
    u.adjoint().conjugate(&local)
}

/// `alpha Z⊗Z + beta X⊗X`.
pub fn spin_hamiltonian(alpha: f64, beta: f64) -> Operator {
    let zz = kron(&pauli::z(), &pauli::z()).scale(cr(alpha));
    let xx = kron(&pauli::x(), &pauli::x()).scale(cr(beta));
    &zz + &xx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Membership {
    /// `U = V ⊗ W` up to phase.
    Local,
    /// `U = (V ⊗ W) · SWAP` up to phase.
    SwapLocal,
    NotMember,
}

#[derive(Debug, Clone)]
pub struct MembershipResult {
    pub verdict: Membership,
    pub factors: Option<(Operator, Operator)>,
    /// Phase-minimized Frobenius distance between the tested unitary and the
    /// best factorization found.
    pub residual: f64,
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        self.verdict != Membership::NotMember
    }

    /// The group element described by this result, when it is one.
    pub fn element(&self) -> Option<MeronomicElement> {
        let (v, w) = self.factors.clone()?;
        Some(MeronomicElement::new_unchecked(v, w, self.verdict == Membership::SwapLocal))
    }
}

/// Realignment `R[(i1*d1 + j1), (i2*d2 + j2)] = U[(i1*d2 + i2), (j1*d2 + j2)]`.
fn realign(u: &DMatrix<C64>, split: BipartiteSplit) -> DMatrix<C64> {
    let (d1, d2) = (split.d1, split.d2);
    DMatrix::from_fn(d1 * d1, d2 * d2, |r, col| {
        let (i1, j1) = (r / d1, r % d1);
        let (i2, j2) = (col / d2, col % d2);
        u[(i1 * d2 + i2, j1 * d2 + j2)]
    })
}

/// Nearest unitary in Frobenius norm (the unitary polar factor).
fn unitary_polar_factor(a: &DMatrix<C64>) -> DMatrix<C64> {
    let (u, _, v_adj) = svd_sorted(a);
    u * v_adj
}

struct LocalAttempt {
    /// Top squared operator-Schmidt coefficient over `d1 * d2`.
    weight: f64,
    v: Operator,
    w: Operator,
    residual: f64,
}

fn local_attempt(u: &Operator, split: BipartiteSplit) -> LocalAttempt {
    let r = realign(u.matrix(), split);
    let (left, s, right) = svd_sorted(&r);
    let (d1, d2) = (split.d1, split.d2);
    let a = DMatrix::from_fn(d1, d1, |i, j| left[(i * d1 + j, 0)]);
    let b = DMatrix::from_fn(d2, d2, |i, j| right[(0, i * d2 + j)]);
    let mut v = unitary_polar_factor(&a);
    let mut w = unitary_polar_factor(&b);

    // move the global phase onto w so that v's first nonzero entry is positive real
    let mut flat = DVector::from_column_slice(v.transpose().as_slice());
    let before = flat.clone();
    normalize_phase(&mut flat);
    if let Some(k) = before.iter().position(|z| z.norm() > 1e-12) {
        let phase = flat[k] / before[k];
        v *= phase;
        w *= phase.conj();
    }
    let v = Operator::from_matrix(v).expect("square");
    let w = Operator::from_matrix(w).expect("square");
    let residual = u.phase_distance(&kron(&v, &w));
    LocalAttempt { weight: s[0] * s[0] / split.dim() as f64, v, w, residual }
}

/// Decides whether the unitary `u` lies in the frame group of `split`.
///
/// `u` is local when its top squared operator-Schmidt coefficient is at least
/// `(1 - tol) · d1 · d2`. For equal factor dimensions `u · SWAP` is tried next.
/// Recovered factors are unitarized by polar decomposition and phase-fixed so
/// that `v`'s first nonzero entry (row-major) is real and positive.
pub fn factor_as_local(u: &Operator, split: BipartiteSplit, tol: f64) -> Result<MembershipResult> {
    split.check_dim(u.dim())?;
    let deviation = u.unitary_deviation();
    if deviation > tol.max(EXACT_TOL) {
        return Err(Error::NotUnitary { deviation });
    }
    let direct = local_attempt(u, split);
    if direct.weight >= 1.0 - tol {
        return Ok(MembershipResult {
            verdict: Membership::Local,
            residual: direct.residual,
            factors: Some((direct.v, direct.w)),
        });
    }
    let mut best_residual = direct.residual;
    if split.is_symmetric() {
        let swap = swap_operator(split.d1);
        let swapped = local_attempt(&(u * &swap), split);
        if swapped.weight >= 1.0 - tol {
            let rebuilt = &kron(&swapped.v, &swapped.w) * &swap;
            return Ok(MembershipResult {
                verdict: Membership::SwapLocal,
                residual: u.phase_distance(&rebuilt),
                factors: Some((swapped.v, swapped.w)),
            });
        }
        best_residual = best_residual.min(swapped.residual);
    }
    Ok(MembershipResult { verdict: Membership::NotMember, factors: None, residual: best_residual })
}

/// Whether two frame operators define the same meronomic frame, tested as
/// membership of `u2 · u1^dagger` in the frame group.
pub fn same_meronomic_frame(u1: &Operator, u2: &Operator, split: BipartiteSplit, tol: f64) -> Result<bool> {
    if u1.dim() != u2.dim() {
        return Err(Error::DimensionMismatch { expected: u1.dim(), found: u2.dim() });
    }
    Ok(factor_as_local(&(u2 * &u1.adjoint()), split, tol)?.is_member())
}

/// `(|0> + i|1>)/√2 ⊗ (|0> - i|1>)/√2`, a (1,2) product state that is
/// maximally entangled in the Bell frame.
pub fn upsilon_state() -> StateVector {
    let left = StateVector::new(vec![cr(1.0), c(0.0, 1.0)]).expect("nonzero");
    let right = StateVector::new(vec![cr(1.0), c(0.0, -1.0)]).expect("nonzero");
    tensor_state(&left, &right)
}

/// `|+> ⊗ |+>`.
pub fn plus_plus_state() -> StateVector {
    StateVector::new(vec![cr(0.5); 4]).expect("nonzero")
}
