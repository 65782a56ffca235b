//! Seeded sampling: Haar-random unitaries and states, random frame-group
//! elements, and twirling over the frame group.

use std::thread;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::frames::{BipartiteSplit, MeronomicElement};
use crate::linalg::{c, cr, tensor_state, C64, DensityOperator, Operator, StateVector};

/// A reproducible random stream built on the ChaCha20 counter-mode generator.
///
/// Identical seeds yield bit-identical sample sequences. Independent
/// sub-streams (one per worker) come from [`RngStream::substream`].
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, inner: ChaCha20Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Stream `index + 1` of the same seed; stream 0 belongs to the parent.
    pub fn substream(&self, index: u64) -> RngStream {
        let mut inner = ChaCha20Rng::seed_from_u64(self.seed);
        inner.set_stream(index.wrapping_add(1));
        RngStream { seed: self.seed, inner }
    }

    pub fn gaussian(&mut self) -> f64 {
        self.sample(StandardNormal)
    }

    /// Standard complex normal: real and imaginary parts N(0, 1/2).
    pub fn complex_gaussian(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        c(s * self.gaussian(), s * self.gaussian())
    }

    pub fn uniform(&mut self) -> f64 {
        self.random::<f64>()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Haar-random `d x d` unitary.
///
/// Draws a complex Ginibre matrix, takes its QR factorization and multiplies
/// each column of Q by the phase of the matching diagonal entry of R.
pub fn haar_unitary(d: usize, rng: &mut RngStream) -> Operator {
    assert!(d >= 1, "dimension must be positive");
    let ginibre = DMatrix::from_fn(d, d, |_, _| rng.complex_gaussian());
    let qr = ginibre.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..d {
        let diag = r[(k, k)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { cr(1.0) };
        for row in 0..d {
            q[(row, k)] *= phase;
        }
    }
    Operator::from_matrix(q).expect("square")
}

/// Haar-random pure state in dimension `d`.
pub fn haar_state(d: usize, rng: &mut RngStream) -> StateVector {
    loop {
        let v = DVector::from_fn(d, |_, _| rng.complex_gaussian());
        if let Ok(s) = StateVector::from_vector(v) {
            return s;
        }
    }
}

/// `a ⊗ b` with independent Haar-random factors.
pub fn random_product_state(split: BipartiteSplit, rng: &mut RngStream) -> StateVector {
    let a = haar_state(split.d1, rng);
    let b = haar_state(split.d2, rng);
    tensor_state(&a, &b)
}

/// `sum_k |k,k> / √d`.
pub fn canonical_maximally_entangled(d: usize) -> StateVector {
    let mut amps = DVector::zeros(d * d);
    for k in 0..d {
        amps[k * d + k] = cr(1.0);
    }
    StateVector::from_vector(amps).expect("nonzero")
}

/// Haar-random maximally entangled state on `C^d ⊗ C^d`, `(U ⊗ 1) sum_k |k,k>/√d`.
pub fn random_maximally_entangled(d: usize, rng: &mut RngStream) -> StateVector {
    let u = haar_unitary(d, rng);
    let local = crate::linalg::kron(&u, &Operator::identity(d));
    canonical_maximally_entangled(d).evolve(&local).expect("dimensions agree")
}

/// Haar-random element of the frame group: independent Haar factors, and a
/// fair-coin SWAP when the split is symmetric.
pub fn random_m_element(split: BipartiteSplit, rng: &mut RngStream) -> MeronomicElement {
    let v = haar_unitary(split.d1, rng);
    let w = haar_unitary(split.d2, rng);
    let swap = split.is_symmetric() && rng.bernoulli(0.5);
    MeronomicElement::new_unchecked(v, w, swap)
}

/// Haar-random element of the ordered frame group (local unitaries only).
pub fn random_local_element(split: BipartiteSplit, rng: &mut RngStream) -> MeronomicElement {
    let v = haar_unitary(split.d1, rng);
    let w = haar_unitary(split.d2, rng);
    MeronomicElement::new_unchecked(v, w, false)
}

fn twirl_sum(rho: &Operator, split: BipartiteSplit, n: usize, rng: &mut RngStream) -> DMatrix<C64> {
    let mut acc = DMatrix::zeros(rho.dim(), rho.dim());
    for _ in 0..n {
        let u = random_m_element(split, rng).operator();
        acc += u.conjugate(rho).into_matrix();
    }
    acc
}

fn finish_twirl(acc: DMatrix<C64>) -> DensityOperator {
    let herm = (&acc + acc.adjoint()).scale(0.5);
    let tr = herm.trace().re;
    let op = Operator::from_matrix(herm.unscale(tr)).expect("square");
    DensityOperator::from_operator_unchecked(op)
}

/// Monte Carlo twirl `(1/n) sum_g U_g rho U_g^dagger` over `n` sampled
/// frame-group elements, accumulated in sample order.
pub fn twirl_monte_carlo(
    rho: &DensityOperator,
    split: BipartiteSplit,
    n: usize,
    rng: &mut RngStream,
) -> Result<DensityOperator> {
    if n == 0 {
        return Err(Error::InvalidArgument("twirl needs at least one sample".into()));
    }
    split.check_dim(rho.dim())?;
    Ok(finish_twirl(twirl_sum(rho.as_operator(), split, n, rng)))
}

/// Parallel Monte Carlo twirl.
///
/// Worker `k` draws its share of samples from `rng.substream(k)`; partial
/// sums are merged in worker order, so output depends only on the seed and
/// the worker count. With `workers == 1` this is exactly
/// [`twirl_monte_carlo`] on `rng.substream(0)`.
pub fn twirl_monte_carlo_parallel(
    rho: &DensityOperator,
    split: BipartiteSplit,
    n: usize,
    rng: &RngStream,
    workers: usize,
) -> Result<DensityOperator> {
    if n == 0 || workers == 0 {
        return Err(Error::InvalidArgument("samples and workers must be positive".into()));
    }
    split.check_dim(rho.dim())?;
    let workers = workers.min(n);
    let op = rho.as_operator();
    let partials: Vec<DMatrix<C64>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let count = n / workers + usize::from(k < n % workers);
                let mut sub = rng.substream(k as u64);
                scope.spawn(move || twirl_sum(op, split, count, &mut sub))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("twirl worker panicked")).collect()
    });
    let mut acc = DMatrix::zeros(op.dim(), op.dim());
    for part in partials {
        acc += part;
    }
    Ok(finish_twirl(acc))
}

/// The exact twirl over the frame group: the maximally mixed state.
pub fn exact_twirl(split: BipartiteSplit) -> DensityOperator {
    DensityOperator::maximally_mixed(split.dim())
}
