// Using n copies of a reference state as a partial frame: the
// symmetric-subspace test induces an effect on the unknown system.

use std::error::Error;

use meronome::protocols::{measure_sym_subspace, reference_frame_effect, symmetric_subspace_dim};
use meronome::random::{haar_state, RngStream};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = RngStream::new(8);
    let d = 3;
    let phi = haar_state(d, &mut rng);
    let psi = haar_state(d, &mut rng);
    for n in 1..=4 {
        let measured = measure_sym_subspace(&psi, &phi, n)?;
        let effect = reference_frame_effect(&phi, n)?;
        let predicted = effect.matrix_element(&psi, &psi).re;
        println!(
            "n = {n}: dim Sym = {:>3}, P(sym) = {measured:.10}, <ψ|E|ψ> = {predicted:.10}",
            symmetric_subspace_dim(d, n + 1)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
