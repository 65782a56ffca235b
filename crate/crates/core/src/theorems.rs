//! Sampled verification of the frame-group characterizations.
//!
//! For a unitary `U` on `H1 ⊗ H2` the following coincide: `U` lies in the
//! frame group; `U` preserves every state's Schmidt parameters; `U` maps
//! product states to product states and back. For two qubits, preserving the
//! set of maximally entangled states is a further equivalent condition. The
//! suites here check these statements on random and constructed instances
//! and return a [`Verdict`] carrying a reproducible witness on failure.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::frames::{
    apply_element, classify, factor_as_local, schmidt_decompose, BipartiteSplit, Entanglement,
    MeronomicElement, Membership,
};
use crate::linalg::{c, cr, kron, normalize_phase, tensor_state, C64, Operator, StateVector};
use crate::random::{haar_state, haar_unitary, random_m_element, random_maximally_entangled, random_product_state, RngStream};

/// Default tolerance for suite comparisons.
pub const SUITE_TOL: f64 = 1e-9;
/// Reconstruction bound for factorizations of constructed members.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub enum Witness {
    State(StateVector),
    Operator(Operator),
}

impl Witness {
    /// Flattened `[re, im]` entries (row-major for operators).
    pub fn entries(&self) -> Vec<[f64; 2]> {
        match self {
            Witness::State(s) => s.as_slice().iter().map(|z| [z.re, z.im]).collect(),
            Witness::Operator(op) => {
                let m = op.matrix();
                (0..m.nrows())
                    .flat_map(|r| (0..m.ncols()).map(move |col| (r, col)))
                    .map(|(r, col)| [m[(r, col)].re, m[(r, col)].im])
                    .collect()
            }
        }
    }
}

/// Outcome of a check. A witness is present exactly when the check failed.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub passed: bool,
    pub witness: Option<Witness>,
    pub detail: String,
}

impl Verdict {
    pub fn pass(detail: impl Into<String>) -> Self {
        Self { passed: true, witness: None, detail: detail.into() }
    }

    pub fn fail(witness: Witness, detail: impl Into<String>) -> Self {
        Self { passed: false, witness: Some(witness), detail: detail.into() }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{tag}: {}", self.detail)
    }
}

/// The conditioned vectors `psi_k = √2 <k|_1 Psi`, so that
/// `Psi = (|0, psi_0> + |1, psi_1>) / √2`.
fn conditioned_vectors(state: &StateVector) -> [DVector<C64>; 2] {
    let a = state.amps();
    let s = std::f64::consts::SQRT_2;
    [
        DVector::from_vec(vec![a[0] * s, a[1] * s]),
        DVector::from_vec(vec![a[2] * s, a[3] * s]),
    ]
}

fn require_max_ent(state: &StateVector, tol: f64) -> Result<()> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: state.dim() });
    }
    if classify(state, BipartiteSplit::qubits(), tol)? != Entanglement::MaximallyEntangled {
        return Err(Error::NotMaximallyEntangled);
    }
    Ok(())
}

/// The qubit unitary `U = |phi_0><psi_0| + |phi_1><psi_1|` relating two
/// maximally entangled two-qubit states, `(1 ⊗ U) Psi = Phi`.
///
/// The expansion is conditioned on the computational basis of qubit 1, which
/// fixes `U` completely (no phase freedom remains).
pub fn relative_unitary(psi: &StateVector, phi: &StateVector, tol: f64) -> Result<Operator> {
    require_max_ent(psi, tol)?;
    require_max_ent(phi, tol)?;
    let [p0, p1] = conditioned_vectors(psi);
    let [f0, f1] = conditioned_vectors(phi);
    Operator::from_matrix(&f0 * p0.adjoint() + &f1 * p1.adjoint())
}

/// `(psi + phi) / √2`, not renormalized.
fn superposition(psi: &StateVector, phi: &StateVector) -> DVector<C64> {
    (psi.amps() + phi.amps()).scale(FRAC_1_SQRT_2)
}

/// Whether a raw vector is a normalized maximally entangled two-qubit state.
fn is_max_ent_vector(v: &DVector<C64>, tol: f64) -> Result<bool> {
    if (v.norm_squared() - 1.0).abs() > tol {
        return Ok(false);
    }
    let state = StateVector::from_vector(v.clone())?;
    Ok(classify(&state, BipartiteSplit::qubits(), tol)? == Entanglement::MaximallyEntangled)
}

/// `(Psi + Phi)/√2` is a maximally entangled state iff the relative unitary is
/// anti-Hermitian. Both directions are evaluated; the verdict passes when
/// the two sides agree.
///
/// The superposition is not renormalized: a maximally entangled *state* must
/// have unit norm, and that requirement is part of the equivalence.
pub fn check_lemma_antihermitian(psi: &StateVector, phi: &StateVector, tol: f64) -> Result<Verdict> {
    let u = relative_unitary(psi, phi, tol)?;
    let anti_deviation = (&u + &u.adjoint()).frobenius_norm();
    let anti = anti_deviation <= tol;
    let sup = superposition(psi, phi);
    let sup_max = is_max_ent_vector(&sup, tol)?;
    let detail = format!(
        "anti-Hermitian: {anti} (||U + U^dagger|| = {anti_deviation:.3e}); superposition maximally entangled: {sup_max}"
    );
    if anti == sup_max {
        Ok(Verdict::pass(detail))
    } else {
        Ok(Verdict::fail(Witness::State(phi.clone()), detail))
    }
}

/// For orthogonal maximally entangled `Psi`, `Phi` with Hermitian relative
/// unitary, `(Psi + Phi)/√2` is a product state.
pub fn check_lemma_hermitian(psi: &StateVector, phi: &StateVector, tol: f64) -> Result<Verdict> {
    let u = relative_unitary(psi, phi, tol)?;
    let overlap = psi.overlap(phi);
    if overlap > tol {
        return Err(Error::Precondition(format!("states not orthogonal (overlap {overlap:.3e})")));
    }
    let herm = u.hermitian_deviation();
    if herm > tol {
        return Err(Error::Precondition(format!("relative unitary not Hermitian ({herm:.3e})")));
    }
    let sup = StateVector::from_vector(superposition(psi, phi))?;
    let class = classify(&sup, BipartiteSplit::qubits(), tol)?;
    let detail = format!("superposition classified {class:?}");
    if class == Entanglement::Product {
        Ok(Verdict::pass(detail))
    } else {
        Ok(Verdict::fail(Witness::State(sup), detail))
    }
}

/// Orthogonal complement of a qubit state, `(-conj(b), conj(a))`, phase-fixed so
/// that its first nonzero component is real and positive.
pub fn orthogonal_complement(q: &StateVector) -> Result<StateVector> {
    if q.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: q.dim() });
    }
    let a = q.amps();
    let mut v = DVector::from_vec(vec![-a[1].conj(), a[0].conj()]);
    normalize_phase(&mut v);
    StateVector::from_vector(v)
}

/// `Gamma = (|psi,phi> + |psi⊥,phi⊥>)/√2` and `Delta = (|psi,phi> - |psi⊥,phi⊥>)/√2`.
pub fn gamma_delta(psi_local: &StateVector, phi_local: &StateVector) -> Result<(StateVector, StateVector)> {
    let psi_perp = orthogonal_complement(psi_local)?;
    let phi_perp = orthogonal_complement(phi_local)?;
    let aligned = tensor_state(psi_local, phi_local);
    let crossed = tensor_state(&psi_perp, &phi_perp);
    let gamma = StateVector::from_vector(aligned.amps() + crossed.amps())?;
    let delta = StateVector::from_vector(aligned.amps() - crossed.amps())?;
    Ok((gamma, delta))
}

/// Supplies the frame-group elements a suite treats as known members.
pub trait ElementSource {
    fn sample(&mut self, split: BipartiteSplit, rng: &mut RngStream) -> MeronomicElement;
}

/// Haar-random frame-group elements.
#[derive(Debug, Clone, Copy, Default)]
pub struct HaarElements;

impl ElementSource for HaarElements {
    fn sample(&mut self, split: BipartiteSplit, rng: &mut RngStream) -> MeronomicElement {
        random_m_element(split, rng)
    }
}

impl<F> ElementSource for F
where
    F: FnMut(BipartiteSplit, &mut RngStream) -> MeronomicElement,
{
    fn sample(&mut self, split: BipartiteSplit, rng: &mut RngStream) -> MeronomicElement {
        self(split, rng)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub trials: usize,
    /// Random probe states tried per rejected unitary.
    pub probes: usize,
    pub tol: f64,
}

impl SuiteConfig {
    pub fn new(trials: usize) -> Self {
        Self { trials, probes: 20, tol: SUITE_TOL }
    }
}

fn sorted_params(state: &StateVector, split: BipartiteSplit) -> Result<Vec<f64>> {
    let mut p = schmidt_decompose(state, split)?.params;
    p.sort_by(|a, b| b.total_cmp(a));
    Ok(p)
}

/// Checks that a known member is recognized and faithfully reconstructed.
fn check_member_recognized(elem: &MeronomicElement, split: BipartiteSplit, tol: f64) -> Option<Verdict> {
    let op = elem.operator();
    match factor_as_local(&op, split, tol) {
        Err(e) => Some(Verdict::fail(Witness::Operator(op), format!("member rejected by factorization: {e}"))),
        Ok(r) if r.verdict == Membership::NotMember => {
            Some(Verdict::fail(Witness::Operator(op), "member classified NotMember"))
        }
        Ok(r) if r.residual > RECONSTRUCTION_TOL => Some(Verdict::fail(
            Witness::Operator(op),
            format!("member factors reconstruct with residual {:.3e}", r.residual),
        )),
        Ok(_) => None,
    }
}

/// Sampled check of the product-preservation characterization of the frame group.
pub struct Theorem1Suite<S = HaarElements> {
    pub config: SuiteConfig,
    pub source: S,
}

impl Theorem1Suite<HaarElements> {
    pub fn new(trials: usize) -> Self {
        Self { config: SuiteConfig::new(trials), source: HaarElements }
    }
}

impl<S: ElementSource> Theorem1Suite<S> {
    pub fn with_source(config: SuiteConfig, source: S) -> Self {
        Self { config, source }
    }

    /// Per trial and per split (2x2, 2x3):
    /// (a) a member preserves the sorted Schmidt parameters of a random state;
    /// (b) the member is recognized by [`factor_as_local`];
    /// (c) a Haar-random unitary rejected by [`factor_as_local`] maps some
    ///     random product state to a non-product state.
    pub fn run(&mut self, rng: &mut RngStream) -> Verdict {
        let SuiteConfig { trials, probes, tol } = self.config;
        let splits = [BipartiteSplit::qubits(), BipartiteSplit { d1: 2, d2: 3 }];
        let mut rejected = 0usize;
        for trial in 0..trials {
            for split in splits {
                let elem = self.source.sample(split, rng);
                let state = haar_state(split.dim(), rng);
                let image = match apply_element(&elem, &state, split) {
                    Ok(s) => s,
                    Err(e) => {
                        return Verdict::fail(
                            Witness::Operator(elem.operator()),
                            format!("trial {trial} split {split}: element not applicable: {e}"),
                        )
                    }
                };
                let before = sorted_params(&state, split).expect("dimensions checked");
                let after = sorted_params(&image, split).expect("dimensions checked");
                let drift = before.iter().zip(&after).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                if drift > tol {
                    return Verdict::fail(
                        Witness::State(state),
                        format!("trial {trial} split {split}: Schmidt parameters moved by {drift:.3e}"),
                    );
                }

                if let Some(mut v) = check_member_recognized(&elem, split, tol) {
                    v.detail = format!("trial {trial} split {split}: {}", v.detail);
                    return v;
                }

                let u = haar_unitary(split.dim(), rng);
                let verdict = factor_as_local(&u, split, tol).expect("Haar sample is unitary").verdict;
                if verdict == Membership::NotMember {
                    rejected += 1;
                    let found = (0..probes).any(|_| {
                        let p = random_product_state(split, rng);
                        let img = p.evolve(&u).expect("dimensions agree");
                        classify(&img, split, tol).expect("dimensions agree") != Entanglement::Product
                    });
                    if !found {
                        return Verdict::fail(
                            Witness::Operator(u),
                            format!("trial {trial} split {split}: non-member preserved {probes} product probes"),
                        );
                    }
                }
            }
        }
        Verdict::pass(format!(
            "{trials} trials x 2 splits: Schmidt parameters preserved, members recognized, {rejected} non-members exposed"
        ))
    }
}

/// Runs [`Theorem1Suite`] with Haar-random members.
pub fn check_theorem1_suite(trials: usize, rng: &mut RngStream) -> Verdict {
    Theorem1Suite::new(trials).run(rng)
}

/// Sampled check of the maximal-entanglement characterization on two qubits.
pub struct Theorem2Suite<S = HaarElements> {
    pub config: SuiteConfig,
    pub source: S,
}

impl Theorem2Suite<HaarElements> {
    pub fn new(trials: usize) -> Self {
        Self { config: SuiteConfig::new(trials), source: HaarElements }
    }
}

/// First candidate that is maximally entangled but whose image under `u` is not.
pub fn find_max_ent_breaking_witness(u: &Operator, candidates: &[StateVector], tol: f64) -> Option<StateVector> {
    let split = BipartiteSplit::qubits();
    candidates.iter().find_map(|s| {
        let before = classify(s, split, tol).ok()?;
        let after = classify(&s.evolve(u).ok()?, split, tol).ok()?;
        (before == Entanglement::MaximallyEntangled && after != Entanglement::MaximallyEntangled)
            .then(|| s.clone())
    })
}

impl<S: ElementSource> Theorem2Suite<S> {
    pub fn with_source(config: SuiteConfig, source: S) -> Self {
        Self { config, source }
    }

    /// Per trial on two qubits:
    /// (a) a member keeps random maximally entangled probes maximally entangled;
    /// (b) a Haar-random unitary rejected by [`factor_as_local`] breaks the
    ///     maximal entanglement of at least one probe.
    pub fn run(&mut self, rng: &mut RngStream) -> Verdict {
        let SuiteConfig { trials, probes, tol } = self.config;
        let split = BipartiteSplit::qubits();
        let mut rejected = 0usize;
        for trial in 0..trials {
            let elem = self.source.sample(split, rng);
            for _ in 0..probes {
                let probe = random_maximally_entangled(2, rng);
                let class = apply_element(&elem, &probe, split)
                    .and_then(|img| classify(&img, split, tol));
                if class != Ok(Entanglement::MaximallyEntangled) {
                    return Verdict::fail(
                        Witness::State(probe),
                        format!("trial {trial}: member mapped a maximally entangled state to {class:?}"),
                    );
                }
            }

            let u = haar_unitary(4, rng);
            let verdict = factor_as_local(&u, split, tol).expect("Haar sample is unitary").verdict;
            if verdict == Membership::NotMember {
                rejected += 1;
                let candidates: Vec<StateVector> = (0..probes).map(|_| random_maximally_entangled(2, rng)).collect();
                if find_max_ent_breaking_witness(&u, &candidates, tol).is_none() {
                    return Verdict::fail(
                        Witness::Operator(u),
                        format!("trial {trial}: non-member preserved {probes} maximally entangled probes"),
                    );
                }
            }
        }
        Verdict::pass(format!(
            "{trials} trials: members preserve maximal entanglement, {rejected} non-members exposed"
        ))
    }
}

/// Runs [`Theorem2Suite`] with Haar-random members.
pub fn check_theorem2_suite(trials: usize, rng: &mut RngStream) -> Verdict {
    Theorem2Suite::new(trials).run(rng)
}

/// Random Hermitian unitary `2|u><u| - 1` (traceless).
pub fn random_reflection(rng: &mut RngStream) -> Operator {
    let u = haar_state(2, rng);
    &u.projector().scale(cr(2.0)) - &Operator::identity(2)
}

fn on_second(op: &Operator) -> Operator {
    kron(&Operator::identity(2), op)
}

/// Batch check of the two lemmas and the `Gamma`/`Delta` construction.
///
/// Each trial draws a random maximally entangled `Psi` and checks:
/// an anti-Hermitian relative unitary (positive case), a random relative
/// unitary (negative case), a traceless Hermitian relative unitary, and the
/// `Gamma`/`Delta` identities for a random product state.
pub fn check_lemmas_suite(trials: usize, tol: f64, rng: &mut RngStream) -> Verdict {
    let split = BipartiteSplit::qubits();
    let mut negatives_seen = 0usize;
    for trial in 0..trials {
        let psi = random_maximally_entangled(2, rng);

        // positive: U = iH
        let anti = random_reflection(rng).scale(c(0.0, 1.0));
        let phi = psi.evolve(&on_second(&anti)).expect("dimensions agree");
        match check_lemma_antihermitian(&psi, &phi, tol) {
            Ok(v) if v.passed && is_max_ent_vector(&superposition(&psi, &phi), tol).unwrap_or(false) => {}
            Ok(v) => return Verdict::fail(Witness::State(phi), format!("trial {trial} anti-Hermitian case: {}", v.detail)),
            Err(e) => return Verdict::fail(Witness::State(phi), format!("trial {trial} anti-Hermitian case: {e}")),
        }

        // negative: generic relative unitary
        let phi = random_maximally_entangled(2, rng);
        match check_lemma_antihermitian(&psi, &phi, tol) {
            Ok(v) if v.passed => {
                if !is_max_ent_vector(&superposition(&psi, &phi), tol).unwrap_or(true) {
                    negatives_seen += 1;
                }
            }
            Ok(v) => return Verdict::fail(Witness::State(phi), format!("trial {trial} generic case: {}", v.detail)),
            Err(e) => return Verdict::fail(Witness::State(phi), format!("trial {trial} generic case: {e}")),
        }

        // Hermitian, orthogonal
        let herm = random_reflection(rng);
        let phi = psi.evolve(&on_second(&herm)).expect("dimensions agree");
        match check_lemma_hermitian(&psi, &phi, tol) {
            Ok(v) if v.passed => {}
            Ok(v) => return Verdict::fail(Witness::State(phi), format!("trial {trial} Hermitian case: {}", v.detail)),
            Err(e) => return Verdict::fail(Witness::State(phi), format!("trial {trial} Hermitian case: {e}")),
        }

        // Gamma / Delta
        let a = haar_state(2, rng);
        let b = haar_state(2, rng);
        let product = tensor_state(&a, &b);
        let (gamma, delta) = match gamma_delta(&a, &b) {
            Ok(gd) => gd,
            Err(e) => return Verdict::fail(Witness::State(product), format!("trial {trial}: {e}")),
        };
        let rebuilt = (gamma.amps() + delta.amps()).scale(FRAC_1_SQRT_2);
        let gap = (rebuilt - product.amps()).norm();
        let twisted = StateVector::from_vector(gamma.amps() + delta.amps() * c(0.0, 1.0));
        let all_max = [Ok(gamma), Ok(delta), twisted].into_iter().all(|s| {
            s.and_then(|s| classify(&s, split, tol)) == Ok(Entanglement::MaximallyEntangled)
        });
        if gap > 1e-10 || !all_max {
            return Verdict::fail(
                Witness::State(product),
                format!("trial {trial}: Gamma/Delta reconstruction gap {gap:.3e}, maximally entangled: {all_max}"),
            );
        }
    }
    Verdict::pass(format!(
        "{trials} trials: anti-Hermitian, generic ({negatives_seen} non-maximal superpositions), Hermitian and Gamma/Delta cases hold"
    ))
}

/// Relative unitary as a dense 2x2 matrix, mostly for reporting.
pub fn relative_unitary_matrix(psi: &StateVector, phi: &StateVector, tol: f64) -> Result<DMatrix<C64>> {
    relative_unitary(psi, phi, tol).map(Operator::into_matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{bell_frame_unitary, bell_states, swap_operator};
    use crate::linalg::pauli;

    const TOL: f64 = SUITE_TOL;

    /// Solves `(1 ⊗ U) psi = phi` for `U` from the four linear equations
    /// `U_{jk} psi_{ik} = phi_{ij}` with a max-entangled (invertible) `psi`.
    fn solve_relative(psi: &StateVector, phi: &StateVector) -> DMatrix<C64> {
        let m_psi = DMatrix::from_fn(2, 2, |i, k| psi.amps()[2 * i + k]);
        let m_phi = DMatrix::from_fn(2, 2, |i, j| phi.amps()[2 * i + j]);
        // m_phi = m_psi U^T  =>  U^T = m_psi^{-1} m_phi
        let inv = m_psi.try_inverse().unwrap();
        (inv * m_phi).transpose()
    }

    #[test]
    fn relative_unitary_examples() {
        let [pp, pm, sp, _] = bell_states();
        let u = relative_unitary(&pp, &pp, TOL).unwrap();
        assert!(u.phase_distance(&Operator::identity(2)) < 1e-12);

        let u = relative_unitary(&pp, &pm, TOL).unwrap();
        let oracle = Operator::from_matrix(solve_relative(&pp, &pm)).unwrap();
        assert!(u.frobenius_distance(&oracle) < 1e-12);
        assert!(u.phase_distance(&pauli::z()) < 1e-12);

        let u = relative_unitary(&pp, &sp, TOL).unwrap();
        let oracle = Operator::from_matrix(solve_relative(&pp, &sp)).unwrap();
        assert!(u.frobenius_distance(&oracle) < 1e-12);
        assert!(u.phase_distance(&pauli::x()) < 1e-12);
    }

    #[test]
    fn relative_unitary_maps_and_is_unitary() {
        let mut rng = RngStream::new(3);
        for _ in 0..100 {
            let psi = random_maximally_entangled(2, &mut rng);
            let phi = random_maximally_entangled(2, &mut rng);
            let u = relative_unitary(&psi, &phi, TOL).unwrap();
            assert!(u.unitary_deviation() < 1e-9);
            let image = psi.evolve(&on_second(&u)).unwrap();
            assert!(image.phase_distance(&phi) < 1e-9);
        }
    }

    #[test]
    fn relative_unitary_rejects_partial_entanglement() {
        let product = StateVector::basis(4, 0).unwrap();
        assert!(matches!(
            relative_unitary(&product, &bell_states()[0], TOL),
            Err(Error::NotMaximallyEntangled)
        ));
    }

    #[test]
    fn lemma_antihermitian_examples() {
        let pp = bell_states()[0].clone();
        let phi = pp.evolve(&on_second(&pauli::z().scale(c(0.0, 1.0)))).unwrap();
        let v = check_lemma_antihermitian(&pp, &phi, TOL).unwrap();
        assert!(v.passed, "{v}");
        assert!(is_max_ent_vector(&superposition(&pp, &phi), TOL).unwrap());

        let v = check_lemma_antihermitian(&pp, &bell_states()[1], TOL).unwrap();
        assert!(v.passed && v.witness.is_none());
        assert!(!is_max_ent_vector(&superposition(&pp, &bell_states()[1]), TOL).unwrap());

        let mut rng = RngStream::new(4);
        for _ in 0..100 {
            let psi = random_maximally_entangled(2, &mut rng);
            let phi = random_maximally_entangled(2, &mut rng);
            assert!(check_lemma_antihermitian(&psi, &phi, TOL).unwrap().passed);
        }
    }

    #[test]
    fn lemma_antihermitian_phase_rotation_is_not_anti() {
        // Phi = e^{i a} Psi: superposition proportional to Psi but with norm != 1
        let pp = bell_states()[0].clone();
        let phi = StateVector::from_vector(pp.amps() * C64::from_polar(1.0, 0.4)).unwrap();
        let v = check_lemma_antihermitian(&pp, &phi, TOL).unwrap();
        assert!(v.passed, "{v}");
    }

    #[test]
    fn lemma_hermitian_examples() {
        let [pp, pm, sp, sm] = bell_states();
        let v = check_lemma_hermitian(&pp, &pm, TOL).unwrap();
        assert!(v.passed);
        let sup = StateVector::from_vector(superposition(&pp, &pm)).unwrap();
        assert!(sup.phase_distance(&StateVector::basis(4, 0).unwrap()) < 1e-12);

        let v = check_lemma_hermitian(&sp, &sm, TOL).unwrap();
        assert!(v.passed);
        let sup = StateVector::from_vector(superposition(&sp, &sm)).unwrap();
        assert!(sup.phase_distance(&StateVector::basis(4, 1).unwrap()) < 1e-12);

        let mut rng = RngStream::new(5);
        for _ in 0..100 {
            let psi = random_maximally_entangled(2, &mut rng);
            let phi = psi.evolve(&on_second(&random_reflection(&mut rng))).unwrap();
            assert!(check_lemma_hermitian(&psi, &phi, TOL).unwrap().passed);
        }
    }

    #[test]
    fn lemma_hermitian_preconditions() {
        let pp = bell_states()[0].clone();
        assert!(matches!(check_lemma_hermitian(&pp, &pp, TOL), Err(Error::Precondition(_))));
        let phi = pp.evolve(&on_second(&pauli::z().scale(c(0.0, 1.0)))).unwrap();
        assert!(matches!(check_lemma_hermitian(&pp, &phi, TOL), Err(Error::Precondition(_))));
    }

    #[test]
    fn gamma_delta_examples() {
        let zero = StateVector::basis(2, 0).unwrap();
        let (g, d) = gamma_delta(&zero, &zero).unwrap();
        assert!(g.phase_distance(&bell_states()[0]) < 1e-15 && (g.inner(&bell_states()[0]).re - 1.0).abs() < 1e-15);
        assert!((d.inner(&bell_states()[1]).re - 1.0).abs() < 1e-15);

        let mut rng = RngStream::new(6);
        let split = BipartiteSplit::qubits();
        for _ in 0..100 {
            let a = haar_state(2, &mut rng);
            let b = haar_state(2, &mut rng);
            let (g, d) = gamma_delta(&a, &b).unwrap();
            assert_eq!(classify(&g, split, TOL).unwrap(), Entanglement::MaximallyEntangled);
            assert_eq!(classify(&d, split, TOL).unwrap(), Entanglement::MaximallyEntangled);
            let rebuilt = (g.amps() + d.amps()).scale(FRAC_1_SQRT_2);
            assert!((rebuilt - tensor_state(&a, &b).amps()).norm() < 1e-10);
            let twisted = StateVector::from_vector(g.amps() + d.amps() * c(0.0, 1.0)).unwrap();
            assert_eq!(classify(&twisted, split, TOL).unwrap(), Entanglement::MaximallyEntangled);
        }
    }

    #[test]
    fn orthogonal_complement_phase() {
        let q = StateVector::new(vec![c(0.3, 0.4), c(0.0, -0.5)]).unwrap();
        let perp = orthogonal_complement(&q).unwrap();
        assert!(q.inner(&perp).norm() < 1e-15);
        assert!(perp.amps()[0].im.abs() < 1e-15 && perp.amps()[0].re > 0.0);
    }

    #[test]
    fn theorem1_suite_passes() {
        let v = check_theorem1_suite(30, &mut RngStream::new(7));
        assert!(v.passed, "{v}");
        assert!(v.witness.is_none());
    }

    #[test]
    fn theorem1_identity_member() {
        let cfg = SuiteConfig::new(1);
        let v = Theorem1Suite::with_source(cfg, |s: BipartiteSplit, _: &mut RngStream| MeronomicElement::identity(s))
            .run(&mut RngStream::new(1));
        assert!(v.passed, "{v}");
    }

    #[test]
    fn theorem1_detects_non_unitary_factor() {
        let faulty = |s: BipartiteSplit, rng: &mut RngStream| {
            let mut w = haar_unitary(s.d2, rng).into_matrix();
            w.row_mut(0).scale_mut(0.3);
            MeronomicElement::new_unchecked(haar_unitary(s.d1, rng), Operator::from_matrix(w).unwrap(), false)
        };
        let v = Theorem1Suite::with_source(SuiteConfig::new(5), faulty).run(&mut RngStream::new(2));
        assert!(!v.passed);
        assert!(v.witness.is_some(), "{v}");
    }

    #[test]
    fn theorem2_suite_passes() {
        let v = check_theorem2_suite(30, &mut RngStream::new(11));
        assert!(v.passed, "{v}");
    }

    #[test]
    fn theorem2_swap_member() {
        let swap = |_: BipartiteSplit, _: &mut RngStream| {
            MeronomicElement::new_unchecked(Operator::identity(2), Operator::identity(2), true)
        };
        let v = Theorem2Suite::with_source(SuiteConfig::new(1), swap).run(&mut RngStream::new(3));
        assert!(v.passed, "{v}");
        assert!(swap_operator(2).is_unitary(1e-15));
    }

    #[test]
    fn theorem2_bell_frame_witness() {
        let singlet = bell_states()[3].clone();
        let w = find_max_ent_breaking_witness(&bell_frame_unitary(), std::slice::from_ref(&singlet), TOL).unwrap();
        let image = w.evolve(&bell_frame_unitary()).unwrap();
        assert!(image.phase_distance(&StateVector::basis(4, 3).unwrap()) < 1e-12);
    }

    #[test]
    fn theorem2_detects_entangling_member() {
        let faulty = |_: BipartiteSplit, _: &mut RngStream| {
            // a CNOT masquerading as a local element
            let cnot = Operator::from_rows(4, &[
                cr(1.0), cr(0.0), cr(0.0), cr(0.0),
                cr(0.0), cr(1.0), cr(0.0), cr(0.0),
                cr(0.0), cr(0.0), cr(0.0), cr(1.0),
                cr(0.0), cr(0.0), cr(1.0), cr(0.0),
            ]).unwrap();
            MeronomicElement::new_unchecked(cnot, Operator::identity(1), false)
        };
        let v = Theorem2Suite::with_source(SuiteConfig::new(2), faulty).run(&mut RngStream::new(4));
        assert!(!v.passed && v.witness.is_some(), "{v}");
    }

    #[test]
    fn lemmas_suite_passes() {
        let v = check_lemmas_suite(50, TOL, &mut RngStream::new(9));
        assert!(v.passed, "{v}");
    }

    #[test]
    fn suites_are_deterministic() {
        let a = check_theorem1_suite(5, &mut RngStream::new(99)).detail;
        let b = check_theorem1_suite(5, &mut RngStream::new(99)).detail;
        assert_eq!(a, b);
    }
}
