//! Operational tasks that need (or supply) a shared meronomic frame.
//!
//! Qubit labelling: a tictac (a 4-dimensional system) is read as qubits
//! (1,2), a second tictac as qubits (3,4), and two-tictac states are stored
//! in qubit order 1234. States defined on the pairing (13)(24) are built in
//! order (1,3,2,4) and reordered with the permutation `[0, 2, 1, 3]`.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{apply_element, BipartiteSplit, MeronomicElement, swap_operator};
use crate::linalg::{
    cr, hermitian_eigensystem, kron, numerical_rank, permutation_operator, permute_subsystems,
    tensor_state, C64, DensityOperator, Operator, StateVector, EIGEN_TOL, EXACT_TOL,
};
use crate::random::{haar_state, haar_unitary, random_m_element, random_maximally_entangled, RngStream};

/// Largest Hilbert-space dimension handled by the symmetric-subspace routines.
pub const SIZE_GUARD: usize = 4096;
/// Largest number of copies symmetrized by explicit permutation averaging.
pub const MAX_COPIES: usize = 8;

/// Qubit order (1,3,2,4) -> (1,2,3,4).
const PAIRING_TO_STANDARD: [usize; 4] = [0, 2, 1, 3];

/// Cyclic shift `|k> -> |(k + 1) mod d>`.
pub fn shift_unitary(d: usize) -> Result<Operator> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("shift needs d >= 2, got {d}")));
    }
    let mut mat = DMatrix::zeros(d, d);
    for k in 0..d {
        mat[((k + 1) % d, k)] = cr(1.0);
    }
    Operator::from_matrix(mat)
}

#[derive(Debug, Clone, Serialize)]
pub struct SuperdenseReport {
    pub dim: usize,
    pub bit: u8,
    /// `|<Psi'| V |Psi'>|` when Bob encodes a 1, otherwise 1.
    pub overlap_modulus: f64,
    pub decode_success: bool,
}

/// One round of the orthogonalization task with Bob's traceless shift.
pub fn superdense_round(d: usize, bit: bool, rng: &mut RngStream) -> Result<SuperdenseReport> {
    superdense_round_with(d, bit, &shift_unitary(d)?, rng)
}

/// One round of the orthogonalization task with an arbitrary single-subsystem
/// unitary `w` for Bob.
///
/// Alice prepares a Haar-random maximally entangled state of `C^d ⊗ C^d`; the
/// unknown frame change applies a random frame-group element, giving `Psi'`.
/// Bob applies `w ⊗ 1` iff `bit` is set, and the returned state is tested
/// against `{|Psi'><Psi'|, 1 - |Psi'><Psi'|}`. The first outcome decodes as 0.
pub fn superdense_round_with(d: usize, bit: bool, w: &Operator, rng: &mut RngStream) -> Result<SuperdenseReport> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("task needs d >= 2, got {d}")));
    }
    if w.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: w.dim() });
    }
    let split = BipartiteSplit::new(d, d)?;
    let psi = random_maximally_entangled(d, rng);
    let element = random_m_element(split, rng);
    let received = apply_element(&element, &psi, split)?;

    let returned = if bit {
        received.evolve(&kron(w, &Operator::identity(d)))?
    } else {
        received.clone()
    };
    let overlap = received.overlap(&returned);
    let p_same = overlap * overlap;
    let decoded_one = !rng.bernoulli(p_same);
    Ok(SuperdenseReport {
        dim: d,
        bit: u8::from(bit),
        overlap_modulus: if bit { overlap.min(1.0) } else { 1.0 },
        decode_success: decoded_one == bit,
    })
}

/// `Psi-` on qubits (1,3) times `Psi-` on qubits (2,4), in qubit order 1234:
/// `(|0011> - |0110> - |1001> + |1100>) / 2`.
pub fn lambda_state() -> StateVector {
    let singlet = singlet();
    let paired = tensor_state(&singlet, &singlet);
    permute_subsystems(&paired, &[2, 2, 2, 2], &PAIRING_TO_STANDARD).expect("valid permutation")
}

fn singlet() -> StateVector {
    StateVector::new(vec![cr(0.0), cr(1.0), cr(-1.0), cr(0.0)]).expect("nonzero")
}

/// `|<Lambda| phi ⊗ phi>|^2` for a tictac state `phi`; equals `lambda (1 - lambda)`
/// where `lambda` is a Schmidt parameter of `phi`.
pub fn lambda_effect_probability(phi: &StateVector) -> Result<f64> {
    if phi.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: phi.dim() });
    }
    Ok(lambda_state().inner(&tensor_state(phi, phi)).norm_sqr())
}

/// `sqrt(lambda)|00> + sqrt(1 - lambda)|11>`.
pub fn schmidt_form_state(lambda: f64) -> Result<StateVector> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1]")));
    }
    StateVector::new(vec![cr(lambda.sqrt()), cr(0.0), cr(0.0), cr((1.0 - lambda).sqrt())])
}

/// [`schmidt_form_state`] hidden behind a Haar-random local unitary `V ⊗ W`.
pub fn disguised_state(lambda: f64, rng: &mut RngStream) -> Result<StateVector> {
    let v = haar_unitary(2, rng);
    let w = haar_unitary(2, rng);
    schmidt_form_state(lambda)?.evolve(&kron(&v, &w))
}

/// Root in `[0, 1/2]` of `lambda (1 - lambda) = min(p, 1/4)`.
pub fn lambda_from_probability(p: f64) -> f64 {
    let p = p.clamp(0.0, 0.25);
    0.5 * (1.0 - (1.0 - 4.0 * p).max(0.0).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaEstimate {
    pub shots: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub lambda_hat: f64,
}

impl LambdaEstimate {
    fn from_counts(shots: u64, hits: u64) -> Self {
        let p_hat = hits as f64 / shots as f64;
        Self { shots, hits, p_hat, lambda_hat: lambda_from_probability(p_hat) }
    }

    /// Binomial standard error of `p_hat` at the true effect probability `p`.
    pub fn sigma(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.shots as f64).sqrt()
    }
}

fn count_lambda_hits(lambda: f64, shots: u64, rng: &mut RngStream) -> Result<u64> {
    let mut hits = 0;
    for _ in 0..shots {
        let phi = disguised_state(lambda, rng)?;
        if rng.bernoulli(lambda_effect_probability(&phi)?) {
            hits += 1;
        }
    }
    Ok(hits)
}

fn check_lambda_args(lambda: f64, shots: u64) -> Result<()> {
    if !(0.0..=0.5).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("lambda {lambda} outside [0, 1/2]")));
    }
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be positive".into()));
    }
    Ok(())
}

/// Simulates the `|Lambda><Lambda|` effect on `shots` duplicated copies of a
/// tictac state with Schmidt parameter `lambda`, each copy pair under a fresh
/// random local disguise, and inverts the hit rate.
pub fn sample_lambda_measurement(lambda: f64, shots: u64, rng: &mut RngStream) -> Result<LambdaEstimate> {
    check_lambda_args(lambda, shots)?;
    let hits = count_lambda_hits(lambda, shots, rng)?;
    Ok(LambdaEstimate::from_counts(shots, hits))
}

/// Multi-worker [`sample_lambda_measurement`]: worker `k` uses `rng.substream(k)`.
pub fn sample_lambda_measurement_parallel(
    lambda: f64,
    shots: u64,
    rng: &RngStream,
    workers: usize,
) -> Result<LambdaEstimate> {
    check_lambda_args(lambda, shots)?;
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be positive".into()));
    }
    let workers = (workers as u64).min(shots);
    let counts: Vec<Result<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let share = shots / workers + u64::from(k < shots % workers);
                let mut sub = rng.substream(k);
                scope.spawn(move || count_lambda_hits(lambda, share, &mut sub))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shot worker panicked")).collect()
    });
    let mut hits = 0;
    for c in counts {
        hits += c?;
    }
    Ok(LambdaEstimate::from_counts(shots, hits))
}

fn copies_dim(d: usize, n: usize) -> Result<usize> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("need d >= 1 and n >= 1, got d={d}, n={n}")));
    }
    if n > MAX_COPIES {
        return Err(Error::SizeGuard(format!("{n} copies exceeds {MAX_COPIES}")));
    }
    let mut total: usize = 1;
    for _ in 0..n {
        total = total.saturating_mul(d);
        if total > SIZE_GUARD {
            return Err(Error::SizeGuard(format!("{d}^{n} exceeds {SIZE_GUARD}")));
        }
    }
    Ok(total)
}

/// `(1/n!) sum_pi P_pi v` over all permutations of `n` factors of dimension `d`.
pub fn symmetrize(v: &StateVector, d: usize, n: usize) -> Result<DVector<C64>> {
    let total = copies_dim(d, n)?;
    if v.dim() != total {
        return Err(Error::DimensionMismatch { expected: total, found: v.dim() });
    }
    let dims = vec![d; n];
    let mut acc = DVector::zeros(total);
    let mut count = 0usize;
    for perm in (0..n).permutations(n) {
        acc += permute_subsystems(v, &dims, &perm)?.into_vector();
        count += 1;
    }
    Ok(acc.unscale(count as f64))
}

/// Projector onto the permutation-symmetric subspace of `n` copies of `C^d`,
/// built as the average of all `n!` subsystem permutation operators.
pub fn sym_projector(d: usize, n: usize) -> Result<Operator> {
    let total = copies_dim(d, n)?;
    let dims = vec![d; n];
    let mut acc = DMatrix::zeros(total, total);
    let mut count = 0usize;
    for perm in (0..n).permutations(n) {
        acc += permutation_operator(&dims, &perm)?.into_matrix();
        count += 1;
    }
    Operator::from_matrix(acc.unscale(count as f64))
}

/// `C(d + n - 1, n)`.
pub fn symmetric_subspace_dim(d: usize, n: usize) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 0..n as u128 {
        num *= d as u128 + k;
        den *= k + 1;
    }
    (num / den) as usize
}

/// The effect `|phi><phi| + (1 - |phi><phi|)/(n + 1)` induced on one system by a
/// symmetric-subspace test against `n` reference copies of `phi`.
pub fn reference_frame_effect(phi_ref: &StateVector, n: usize) -> Result<Operator> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one reference copy".into()));
    }
    let proj = phi_ref.projector();
    let rest = &Operator::identity(phi_ref.dim()) - &proj;
    Ok(&proj + &rest.scale(cr(1.0 / (n as f64 + 1.0))))
}

/// Probability that `psi ⊗ phi_ref^{⊗n}` is found in the symmetric subspace.
pub fn measure_sym_subspace(psi: &StateVector, phi_ref: &StateVector, n: usize) -> Result<f64> {
    if psi.dim() != phi_ref.dim() {
        return Err(Error::DimensionMismatch { expected: phi_ref.dim(), found: psi.dim() });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one reference copy".into()));
    }
    let d = psi.dim();
    copies_dim(d, n + 1)?;
    let mut joint = psi.clone();
    for _ in 0..n {
        joint = tensor_state(&joint, phi_ref);
    }
    Ok(symmetrize(&joint, d, n + 1)?.norm_squared())
}

#[derive(Debug, Clone, Serialize)]
pub struct SymSpanReport {
    pub samples: usize,
    /// Rank of the symmetric projector on two tictacs.
    pub sym_dim: usize,
    /// Rank of the span of sampled duplicated product states.
    pub product_span_rank: usize,
    /// Largest `|<Lambda| phi, phi>|` over duplicated product states.
    pub max_lambda_overlap: f64,
    /// Smallest `|<Lambda| phi, phi>|` over duplicated Haar-random (entangled) states.
    pub min_entangled_lambda_overlap: f64,
    pub entangled_overlaps_nonzero: bool,
    /// `||Pi_S Lambda - Lambda||`.
    pub lambda_symmetry_defect: f64,
}

/// Overlaps below this are treated as zero.
pub const OVERLAP_FLOOR: f64 = 1e-10;

/// Samples duplicated tictac states `(psi ⊗ phi)^{⊗2}` and characterizes them
/// relative to the symmetric subspace and `|Lambda>`.
pub fn sym_span_analysis(samples: usize, rng: &mut RngStream) -> Result<SymSpanReport> {
    if samples < 20 {
        return Err(Error::InvalidArgument(format!("need at least 20 samples, got {samples}")));
    }
    let lambda = lambda_state();
    let projector = sym_projector(4, 2)?;
    let sym_dim = numerical_rank(projector.matrix(), 1e-8);

    let mut columns = DMatrix::<C64>::zeros(16, samples);
    let mut max_overlap: f64 = 0.0;
    for k in 0..samples {
        let product = tensor_state(&haar_state(2, rng), &haar_state(2, rng));
        let dup = tensor_state(&product, &product);
        max_overlap = max_overlap.max(lambda.overlap(&dup));
        columns.set_column(k, dup.amps());
    }
    let product_span_rank = numerical_rank(&columns, 1e-8);

    let mut min_entangled = f64::INFINITY;
    for _ in 0..samples {
        let phi = haar_state(4, rng);
        min_entangled = min_entangled.min(lambda.overlap(&tensor_state(&phi, &phi)));
    }
    let lambda_symmetry_defect = (projector.apply(lambda.amps()) - lambda.amps()).norm();

    Ok(SymSpanReport {
        samples,
        sym_dim,
        product_span_rank,
        max_lambda_overlap: max_overlap,
        min_entangled_lambda_overlap: min_entangled,
        entangled_overlaps_nonzero: min_entangled > OVERLAP_FLOOR,
        lambda_symmetry_defect,
    })
}

/// Reorders an operator on qubits (1,3,2,4) into qubit order 1234.
fn from_pairing_order(op: &Operator) -> Operator {
    permutation_operator(&[2, 2, 2, 2], &PAIRING_TO_STANDARD)
        .expect("valid permutation")
        .conjugate(op)
}

/// `tau = |Psi-><Psi-|_13 ⊗ Pi_S^24 / 3` and its SWAP image
/// `tau' = Pi_S^13 / 3 ⊗ |Psi-><Psi-|_24`, in qubit order 1234.
pub fn tau_states() -> (DensityOperator, DensityOperator) {
    let singlet_proj = singlet().projector();
    let sym = sym_projector(2, 2).expect("small").scale(cr(1.0 / 3.0));
    let tau = from_pairing_order(&kron(&singlet_proj, &sym));
    let tau_prime = from_pairing_order(&kron(&sym, &singlet_proj));
    (
        DensityOperator::from_operator_unchecked(tau),
        DensityOperator::from_operator_unchecked(tau_prime),
    )
}

/// `SWAP_12 ⊗ SWAP_34`.
pub fn pair_swap_operator() -> Operator {
    let x = swap_operator(2);
    kron(&x, &x)
}

/// A frame-group element acting identically on both tictacs of a pair:
/// `(V ⊗ W ⊗ V ⊗ W)(xi ⊗ xi)`.
pub fn pair_lifted_operator(element: &MeronomicElement) -> Operator {
    let single = element.operator();
    kron(&single, &single)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrderingVerdict {
    Same,
    Swapped,
    Ambiguous,
}

/// Measures the projector onto the support of `tau`.
#[derive(Debug, Clone)]
pub struct OrderingDiscriminator {
    support: Operator,
    tol: f64,
}

/// Eigenvalues of `tau` above this belong to its support.
pub const SUPPORT_THRESHOLD: f64 = 1e-10;
/// Default decision tolerance for [`ordering_discriminate`].
pub const ORDERING_TOL: f64 = 1e-6;

impl OrderingDiscriminator {
    pub fn new(tol: f64) -> Self {
        let (tau, _) = tau_states();
        let eig = hermitian_eigensystem(tau.as_operator(), EIGEN_TOL).expect("tau is Hermitian");
        Self { support: eig.support_projector(SUPPORT_THRESHOLD), tol }
    }

    pub fn support_projector(&self) -> &Operator {
        &self.support
    }

    /// `Tr(Pi_tau rho)`.
    pub fn same_probability(&self, received: &Operator) -> Result<f64> {
        if received.dim() != 16 {
            return Err(Error::DimensionMismatch { expected: 16, found: received.dim() });
        }
        let rho = DensityOperator::new(received.clone(), EXACT_TOL.max(self.tol * 1e-2))?;
        Ok(rho.expectation(&self.support))
    }

    pub fn discriminate(&self, received: &Operator) -> Result<OrderingVerdict> {
        let p = self.same_probability(received)?;
        Ok(if p >= 1.0 - self.tol {
            OrderingVerdict::Same
        } else if p <= self.tol {
            OrderingVerdict::Swapped
        } else {
            OrderingVerdict::Ambiguous
        })
    }
}

/// Decides whether a received two-tictac state is `tau` (same subsystem
/// labels) or `tau'` (labels differ by a SWAP).
pub fn ordering_discriminate(received: &Operator) -> Result<OrderingVerdict> {
    OrderingDiscriminator::new(ORDERING_TOL).discriminate(received)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderingTrial {
    pub swapped: bool,
    pub verdict: OrderingVerdict,
    pub correct: bool,
}

/// Alice sends `tau` through an unknown frame-group element; Bob decides
/// whether that element contained a SWAP.
pub fn ordering_trial(discriminator: &OrderingDiscriminator, rng: &mut RngStream) -> Result<OrderingTrial> {
    let (tau, _) = tau_states();
    let element = random_m_element(BipartiteSplit::qubits(), rng);
    let received = pair_lifted_operator(&element).conjugate(tau.as_operator());
    let verdict = discriminator.discriminate(&received)?;
    let correct = matches!(
        (element.swap, verdict),
        (false, OrderingVerdict::Same) | (true, OrderingVerdict::Swapped)
    );
    Ok(OrderingTrial { swapped: element.swap, verdict, correct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{bell_states, schmidt_decompose};
    use crate::linalg::{c, tensor_state};
    use crate::random::random_local_element;

    #[test]
    fn shift_examples() {
        let x = shift_unitary(2).unwrap();
        assert_eq!(x, crate::linalg::pauli::x());
        assert!(shift_unitary(5).unwrap().trace().norm() == 0.0);
        for d in 2..6 {
            let w = shift_unitary(d).unwrap();
            // W^d by repeated multiplication
            assert!(w.power(d as u32).frobenius_distance(&Operator::identity(d)) < 1e-15);
        }
        assert!(shift_unitary(1).is_err());
    }

    #[test]
    fn superdense_bit_zero() {
        let mut rng = RngStream::new(1);
        let r = superdense_round(3, false, &mut rng).unwrap();
        assert!(r.decode_success);
        assert_eq!(r.overlap_modulus, 1.0);
    }

    #[test]
    fn superdense_bit_one_is_orthogonal() {
        for d in 2..=4 {
            let mut rng = RngStream::new(d as u64);
            for _ in 0..20 {
                let r = superdense_round(d, true, &mut rng).unwrap();
                assert!(r.overlap_modulus <= 1e-10, "d={d} overlap {}", r.overlap_modulus);
                assert!(r.decode_success);
            }
        }
    }

    #[test]
    fn superdense_fails_with_traced_unitary() {
        // <Psi'|(W⊗1)|Psi'> = Tr W / d for maximally entangled Psi'
        let mut rng = RngStream::new(5);
        let r = superdense_round_with(2, true, &Operator::identity(2), &mut rng).unwrap();
        assert!((r.overlap_modulus - 1.0).abs() < 1e-12);
        assert!(!r.decode_success);
    }

    #[test]
    fn lambda_state_expansion() {
        let l = lambda_state();
        let mut expected = vec![cr(0.0); 16];
        expected[0b0011] = cr(0.5);
        expected[0b0110] = cr(-0.5);
        expected[0b1001] = cr(-0.5);
        expected[0b1100] = cr(0.5);
        for (a, b) in l.as_slice().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!((l.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_invariant_under_pair_lifted_elements() {
        let mut rng = RngStream::new(6);
        let l = lambda_state();
        for _ in 0..100 {
            let e = random_m_element(BipartiteSplit::qubits(), &mut rng);
            let image = l.evolve(&pair_lifted_operator(&e)).unwrap();
            assert!((l.overlap(&image) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn lambda_effect_examples() {
        assert!(lambda_effect_probability(&StateVector::basis(4, 0).unwrap()).unwrap().abs() < 1e-15);
        assert!((lambda_effect_probability(&bell_states()[0]).unwrap() - 0.25).abs() < 1e-12);
        let phi = StateVector::new(vec![cr(0.1f64.sqrt()), cr(0.0), cr(0.0), cr(0.9f64.sqrt())]).unwrap();
        assert!((lambda_effect_probability(&phi).unwrap() - 0.09).abs() < 1e-12);
        assert!(lambda_effect_probability(&StateVector::basis(2, 0).unwrap()).is_err());
    }

    #[test]
    fn effect_probability_matches_schmidt_parameter() {
        let mut rng = RngStream::new(7);
        for _ in 0..50 {
            let phi = haar_state(4, &mut rng);
            let lam = *schmidt_decompose(&phi, BipartiteSplit::qubits()).unwrap().params.last().unwrap();
            assert!((lambda_effect_probability(&phi).unwrap() - lam * (1.0 - lam)).abs() < 1e-10);
        }
    }

    #[test]
    fn lambda_zero_never_fires() {
        let mut rng = RngStream::new(8);
        let est = sample_lambda_measurement(0.0, 5_000, &mut rng).unwrap();
        assert_eq!(est.hits, 0);
        assert_eq!(est.lambda_hat, 0.0);
    }

    #[test]
    fn lambda_sampling_within_binomial_band() {
        for (lam, seed) in [(0.5, 11u64), (0.25, 12)] {
            let mut rng = RngStream::new(seed);
            let est = sample_lambda_measurement(lam, 100_000, &mut rng).unwrap();
            let p = lam * (1.0 - lam);
            assert!((est.p_hat - p).abs() <= 3.0 * est.sigma(p), "lambda {lam}: {est:?}");
        }
    }

    #[test]
    fn lambda_argument_errors() {
        let mut rng = RngStream::new(0);
        assert!(sample_lambda_measurement(0.6, 10, &mut rng).is_err());
        assert!(sample_lambda_measurement(-0.1, 10, &mut rng).is_err());
        assert!(sample_lambda_measurement(0.2, 0, &mut rng).is_err());
    }

    #[test]
    fn lambda_inversion_clamps() {
        assert_eq!(lambda_from_probability(0.3), 0.5);
        assert!((lambda_from_probability(0.09) - 0.1).abs() < 1e-12);
        assert_eq!(lambda_from_probability(0.0), 0.0);
    }

    #[test]
    fn parallel_lambda_is_reproducible() {
        let root = RngStream::new(13);
        let a = sample_lambda_measurement_parallel(0.3, 2_000, &root, 3).unwrap();
        let b = sample_lambda_measurement_parallel(0.3, 2_000, &root, 3).unwrap();
        assert_eq!(a.hits, b.hits);
        let one = sample_lambda_measurement_parallel(0.3, 500, &root, 1).unwrap();
        let serial = sample_lambda_measurement(0.3, 500, &mut root.substream(0)).unwrap();
        assert_eq!(one.hits, serial.hits);
    }

    fn rank_of(op: &Operator) -> usize {
        numerical_rank(op.matrix(), 1e-8)
    }

    #[test]
    fn sym_projector_examples() {
        assert!(sym_projector(3, 1).unwrap().frobenius_distance(&Operator::identity(3)) < 1e-15);
        let p = sym_projector(4, 2).unwrap();
        assert_eq!(rank_of(&p), 10);
        assert!((&p * &p).frobenius_distance(&p) < 1e-12);
        assert!(p.is_hermitian(1e-14));
        assert_eq!(rank_of(&sym_projector(2, 3).unwrap()), symmetric_subspace_dim(2, 3));
        assert_eq!(symmetric_subspace_dim(2, 3), 4);
        assert_eq!(symmetric_subspace_dim(4, 2), 10);
    }

    #[test]
    fn sym_projector_size_guard() {
        assert!(matches!(sym_projector(2, 13), Err(Error::SizeGuard(_))));
        assert!(matches!(sym_projector(65, 2), Err(Error::SizeGuard(_))));
        assert!(matches!(sym_projector(4, 7), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn symmetrize_agrees_with_projector() {
        let mut rng = RngStream::new(14);
        let v = haar_state(27, &mut rng);
        let via_vec = symmetrize(&v, 3, 3).unwrap();
        let via_mat = sym_projector(3, 3).unwrap().apply(v.amps());
        assert!((via_vec - via_mat).norm() < 1e-12);
    }

    #[test]
    fn reference_effect_examples() {
        let phi = StateVector::new(vec![cr(0.6), c(0.0, 0.8)]).unwrap();
        let perp = StateVector::new(vec![c(0.0, 0.8), cr(0.6)]).unwrap();
        assert!(phi.inner(&perp).norm() < 1e-15);
        let e1 = reference_frame_effect(&phi, 1).unwrap();
        assert!((e1.matrix_element(&phi, &phi) - cr(1.0)).norm() < 1e-12);
        assert!((e1.matrix_element(&perp, &perp) - cr(0.5)).norm() < 1e-12);
        let e9 = reference_frame_effect(&phi, 9).unwrap();
        assert!((e9.matrix_element(&perp, &perp) - cr(0.1)).norm() < 1e-12);
    }

    #[test]
    fn sym_measurement_examples() {
        let phi = StateVector::basis(2, 0).unwrap();
        let perp = StateVector::basis(2, 1).unwrap();
        assert!((measure_sym_subspace(&phi, &phi, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((measure_sym_subspace(&perp, &phi, 1).unwrap() - 0.5).abs() < 1e-12);
        let mix = StateVector::new(vec![cr(1.0), cr(1.0)]).unwrap();
        assert!((measure_sym_subspace(&mix, &phi, 2).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(measure_sym_subspace(&mix, &StateVector::basis(3, 0).unwrap(), 1).is_err());
        assert!(matches!(
            measure_sym_subspace(&StateVector::basis(16, 0).unwrap(), &StateVector::basis(16, 0).unwrap(), 3),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn sym_span_report() {
        let mut rng = RngStream::new(1);
        let r = sym_span_analysis(50, &mut rng).unwrap();
        assert_eq!(r.sym_dim, 10);
        assert_eq!(r.product_span_rank, 9);
        assert!(r.max_lambda_overlap <= 1e-10);
        assert!(r.entangled_overlaps_nonzero);
        assert!(r.lambda_symmetry_defect < 1e-12);
        assert!(sym_span_analysis(10, &mut rng).is_err());
    }

    #[test]
    fn tau_examples() {
        let (tau, tau_p) = tau_states();
        assert!((tau.trace() - 1.0).abs() < 1e-12 && (tau_p.trace() - 1.0).abs() < 1e-12);
        assert!(DensityOperator::new(tau.as_operator().clone(), 1e-10).is_ok());
        assert!(DensityOperator::new(tau_p.as_operator().clone(), 1e-10).is_ok());
        let overlap = (tau.matrix() * tau_p.matrix()).trace().norm();
        assert!(overlap <= 1e-12);
        let swapped = pair_swap_operator().conjugate(tau.as_operator());
        assert!(swapped.frobenius_distance(tau_p.as_operator()) <= 1e-12);
    }

    #[test]
    fn tau_invariant_under_local_pairs() {
        let mut rng = RngStream::new(15);
        let (tau, _) = tau_states();
        for _ in 0..100 {
            let e = random_local_element(BipartiteSplit::qubits(), &mut rng);
            let conj = pair_lifted_operator(&e).conjugate(tau.as_operator());
            assert!(conj.frobenius_distance(tau.as_operator()) <= 1e-9);
        }
    }

    #[test]
    fn ordering_examples() {
        let (tau, tau_p) = tau_states();
        assert_eq!(ordering_discriminate(tau.as_operator()).unwrap(), OrderingVerdict::Same);
        assert_eq!(ordering_discriminate(tau_p.as_operator()).unwrap(), OrderingVerdict::Swapped);
        let mixed = DensityOperator::mixture(&[(0.5, &tau), (0.5, &tau_p)]).unwrap();
        assert_eq!(ordering_discriminate(mixed.as_operator()).unwrap(), OrderingVerdict::Ambiguous);
    }

    #[test]
    fn ordering_rejects_invalid_input() {
        assert!(ordering_discriminate(&Operator::identity(4)).is_err());
        assert!(matches!(
            ordering_discriminate(&Operator::identity(16)),
            Err(Error::InvalidDensity(_))
        ));
    }

    #[test]
    fn ordering_trials_are_correct() {
        let disc = OrderingDiscriminator::new(ORDERING_TOL);
        let mut rng = RngStream::new(16);
        for _ in 0..50 {
            assert!(ordering_trial(&disc, &mut rng).unwrap().correct);
        }
    }

    #[test]
    fn product_duplicates_orthogonal_to_lambda() {
        let mut rng = RngStream::new(17);
        let l = lambda_state();
        for _ in 0..20 {
            let p = tensor_state(&haar_state(2, &mut rng), &haar_state(2, &mut rng));
            assert!(l.overlap(&tensor_state(&p, &p)) < 1e-12);
        }
    }
}
