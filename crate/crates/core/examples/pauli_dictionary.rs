// Pauli operators of the Bell-frame qubits written in the computational
// frame, and a Hamiltonian local in the Bell frame.

use std::error::Error;

use meronome::frames::{ab_pauli, spin_hamiltonian, FrameSide, PauliLabel};
use meronome::linalg::{hermitian_eigensystem, Operator};

fn show(op: &Operator) -> String {
    let m = op.matrix();
    (0..4)
        .map(|r| {
            (0..4)
                .map(|c| {
                    let z = m[(r, c)];
                    format!("{:>5}", format!("{}{}", z.re.round(), if z.im.abs() > 0.5 { format!("{:+}i", z.im.round()) } else { String::new() }))
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n    ")
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for side in [FrameSide::A, FrameSide::B] {
        for label in PauliLabel::ALL {
            println!("{label:?}_{side:?} =\n    {}", show(&ab_pauli(label, side)));
        }
    }
    let (alpha, beta) = (0.7, -0.3);
    let h = spin_hamiltonian(alpha, beta);
    let spectrum = hermitian_eigensystem(&h, 1e-10)?.values;
    println!("spectrum of {alpha} Z_A + {beta} Z_B: {spectrum:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
