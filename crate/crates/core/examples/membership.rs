// Deciding whether a unitary belongs to the frame group, and whether two
// frame unitaries define the same frame.

use std::error::Error;

use meronome::frames::{bell_frame_unitary, factor_as_local, same_meronomic_frame, swap_operator, BipartiteSplit};
use meronome::linalg::kron;
use meronome::random::{haar_unitary, random_m_element, RngStream};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut rng = RngStream::new(42);
    let split = BipartiteSplit::qubits();

    let local = kron(&haar_unitary(2, &mut rng), &haar_unitary(2, &mut rng));
    let swapped = &local * &swap_operator(2);
    let generic = haar_unitary(4, &mut rng);
    for (name, u) in [("V⊗W", &local), ("(V⊗W)·SWAP", &swapped), ("Haar", &generic), ("Bell frame", &bell_frame_unitary())] {
        let r = factor_as_local(u, split, 1e-10)?;
        println!("{name:>12}: {:?}, residual {:.2e}", r.verdict, r.residual);
    }

    let g = random_m_element(split, &mut rng).operator();
    let u1 = bell_frame_unitary();
    let u2 = &g * &u1;
    println!("Bell frame vs element·Bell frame: same frame = {}", same_meronomic_frame(&u1, &u2, split, 1e-10)?);
    println!("Bell frame vs identity: same frame = {}", same_meronomic_frame(&u1, &kron(&haar_unitary(2, &mut rng), &haar_unitary(2, &mut rng)), split, 1e-10)?);

    let wide = BipartiteSplit::new(2, 3)?;
    let u = kron(&haar_unitary(2, &mut rng), &haar_unitary(3, &mut rng));
    println!("2x3 local: {:?}", factor_as_local(&u, wide, 1e-10)?.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
