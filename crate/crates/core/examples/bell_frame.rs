// Bell states are maximally entangled in the usual split and form a product
// basis in the Bell frame.

use std::error::Error;

use meronome::frames::{bell_frame_unitary, bell_states, classify, schmidt_decompose, BipartiteSplit};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let split = BipartiteSplit::qubits();
    let u = bell_frame_unitary();
    for (name, state) in ["Φ+", "Φ-", "Ψ+", "Ψ-"].iter().zip(bell_states()) {
        let before = classify(&state, split, 1e-10)?;
        let image = state.evolve(&u)?;
        let after = classify(&image, split, 1e-10)?;
        let params = schmidt_decompose(&image, split)?.params;
        println!("{name}: {before:?} -> {after:?} in the Bell frame, params {params:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
