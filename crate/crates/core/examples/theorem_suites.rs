// Sampled checks of the frame-group characterizations, including a
// deliberately faulty element source.

use std::error::Error;

use meronome::frames::{BipartiteSplit, MeronomicElement};
use meronome::linalg::Operator;
use meronome::random::{haar_unitary, RngStream};
use meronome::theorems::{check_lemmas_suite, check_theorem1_suite, check_theorem2_suite, SuiteConfig, Theorem1Suite};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for seed in [1, 2, 3] {
        let mut rng = RngStream::new(seed);
        println!("seed {seed}: theorem 1 {}", check_theorem1_suite(100, &mut rng));
        println!("seed {seed}: theorem 2 {}", check_theorem2_suite(100, &mut rng));
        println!("seed {seed}: lemmas {}", check_lemmas_suite(100, 1e-9, &mut rng));
    }

    let faulty = |s: BipartiteSplit, rng: &mut RngStream| {
        let mut w = haar_unitary(s.d2, rng).into_matrix();
        w.row_mut(0).scale_mut(0.5);
        MeronomicElement::new_unchecked(haar_unitary(s.d1, rng), Operator::from_matrix(w).expect("square"), false)
    };
    let verdict = Theorem1Suite::with_source(SuiteConfig::new(10), faulty).run(&mut RngStream::new(9));
    let witness_len = verdict.witness.as_ref().map(|w| w.entries().len()).unwrap_or(0);
    println!("non-unitary W injected: {verdict} (witness with {witness_len} entries)");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
