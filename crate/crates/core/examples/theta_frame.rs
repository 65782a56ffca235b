// The product state |+>|+> seen through the one-parameter family of frames
// `diag(1, 1, 1, e^{-iθ})`.

use std::error::Error;
use std::f64::consts::PI;

use meronome::frames::{classify_params, plus_plus_state, schmidt_decompose, theta_frame_unitary, BipartiteSplit};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let split = BipartiteSplit::qubits();
    for theta in [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
        let image = plus_plus_state().evolve(&theta_frame_unitary(theta))?;
        let params = schmidt_decompose(&image, split)?.params;
        let h = (theta / 2.0).cos().abs();
        println!(
            "θ = {theta:.4}: {:?}, params [{:.6}, {:.6}], expected [{:.6}, {:.6}]",
            classify_params(&params, 1e-10),
            params[0],
            params[1],
            (1.0 + h) / 2.0,
            (1.0 - h) / 2.0
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
