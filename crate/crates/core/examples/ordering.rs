// Detecting whether two parties label the subsystems of a tictac in the
// same order, using the orthogonal pair τ, τ'.

use std::error::Error;

use meronome::protocols::{ordering_trial, tau_states, OrderingDiscriminator, ORDERING_TOL};
use meronome::random::RngStream;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (tau, tau_prime) = tau_states();
    println!("Tr(τ τ') = {:.2e}", (tau.matrix() * tau_prime.matrix()).trace().re);
    let disc = OrderingDiscriminator::new(ORDERING_TOL);
    println!("τ -> {:?}, τ' -> {:?}", disc.discriminate(tau.as_operator())?, disc.discriminate(tau_prime.as_operator())?);
    let mut rng = RngStream::new(4);
    let trials: Vec<_> = (0..50).map(|_| ordering_trial(&disc, &mut rng)).collect::<Result<_, _>>()?;
    let swapped = trials.iter().filter(|t| t.swapped).count();
    let correct = trials.iter().filter(|t| t.correct).count();
    println!("50 random frame elements ({swapped} with SWAP): {correct} identified correctly");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
