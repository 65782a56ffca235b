// Orthogonalizing an unknown maximally entangled state with a local
// traceless unitary, and two-bit superdense coding built on it.

use std::error::Error;

use meronome::frames::{bell_states, BipartiteSplit};
use meronome::linalg::{kron, pauli, Operator};
use meronome::protocols::superdense_round;
use meronome::random::{random_m_element, RngStream};

/// With the frame shared, full two-bit coding works: Bob encodes with
/// 1, X, Z, XZ on his half of Φ+ expressed in that frame, and Alice decodes
/// with the Bell measurement expressed in the same frame.
fn two_bit_round(bits: (bool, bool), rng: &mut RngStream) -> Result<(bool, bool), Box<dyn Error>> {
    let split = BipartiteSplit::qubits();
    let frame = random_m_element(split, rng).operator();
    let encode = |b: (bool, bool)| -> Operator {
        let x = if b.0 { pauli::x() } else { pauli::identity() };
        let z = if b.1 { pauli::z() } else { pauli::identity() };
        let local = &x * &z;
        kron(&local, &pauli::identity())
    };
    let shared = bell_states()[0].evolve(&frame)?;
    let local_encode = &frame * &(&encode(bits) * &frame.adjoint());
    let sent = shared.evolve(&local_encode)?;
    let mut best = ((false, false), 0.0);
    for guess in [(false, false), (true, false), (false, true), (true, true)] {
        let candidate = bell_states()[0].evolve(&encode(guess))?.evolve(&frame)?;
        let p = sent.overlap(&candidate).powi(2);
        if p > best.1 {
            best = (guess, p);
        }
    }
    Ok(best.0)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = RngStream::new(11);
    for d in [2, 3, 4] {
        let mut worst: f64 = 0.0;
        let mut ok = 0;
        for _ in 0..100 {
            let report = superdense_round(d, true, &mut rng)?;
            worst = worst.max(report.overlap_modulus);
            ok += usize::from(report.decode_success);
        }
        println!("d = {d}: max |<ψ'|(W⊗1)|ψ'>| = {worst:.2e}, decoded {ok}/100");
    }

    let mut correct = 0;
    for k in 0..40 {
        let bits = (k % 2 == 1, (k / 2) % 2 == 1);
        correct += usize::from(two_bit_round(bits, &mut rng)? == bits);
    }
    println!("two-bit superdense coding in an unknown frame: {correct}/40 correct");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
