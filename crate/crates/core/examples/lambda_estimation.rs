// Estimating the Schmidt parameter of a two-qubit state without a shared
// frame, using the frame-invariant Λ effect on two copies.

use std::error::Error;

use meronome::protocols::{disguised_state, lambda_effect_probability, sample_lambda_measurement, schmidt_form_state};
use meronome::random::RngStream;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = RngStream::new(3);
    for lambda in [0.0, 0.1, 0.25, 0.5] {
        let plain = lambda_effect_probability(&schmidt_form_state(lambda)?)?;
        let disguised = lambda_effect_probability(&disguised_state(lambda, &mut rng)?)?;
        let est = sample_lambda_measurement(lambda, 100_000, &mut rng)?;
        println!(
            "λ = {lambda:<4}: P = {plain:.6} (disguised {disguised:.6}, λ(1-λ) = {:.6}); 1e5 shots: p̂ = {:.5}, λ̂ = {:.4}",
            lambda * (1.0 - lambda),
            est.p_hat,
            est.lambda_hat
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
