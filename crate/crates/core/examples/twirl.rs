// Averaging a Bell state over the frame group yields the maximally mixed
// state, the only state with no frame information.

use std::error::Error;

use meronome::frames::{bell_states, BipartiteSplit};
use meronome::linalg::DensityOperator;
use meronome::random::{exact_twirl, twirl_monte_carlo, twirl_monte_carlo_parallel, RngStream};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let split = BipartiteSplit::qubits();
    let rho = DensityOperator::pure(&bell_states()[0]);
    let target = exact_twirl(split);
    for n in [100, 1_000, 10_000, 100_000] {
        let twirled = twirl_monte_carlo(&rho, split, n, &mut RngStream::new(5))?;
        println!("n = {n:>6}: ||T(ρ) - 1/4||_F = {:.5}", twirled.frobenius_distance(&target));
    }
    let parallel = twirl_monte_carlo_parallel(&rho, split, 100_000, &RngStream::new(5), 4)?;
    println!("4 workers, n = 100000: {:.5}", parallel.frobenius_distance(&target));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
