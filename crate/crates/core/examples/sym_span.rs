// Duplicated product states of two tictacs span only 9 of the 10
// symmetric dimensions; Λ is the missing direction.

use std::error::Error;

use meronome::protocols::sym_span_analysis;
use meronome::random::RngStream;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let report = sym_span_analysis(50, &mut RngStream::new(1))?;
    println!("symmetric subspace dimension: {}", report.sym_dim);
    println!("span of 50 duplicated product states: {}", report.product_span_rank);
    println!("max |<Λ|φ⊗φ>| over products: {:.2e}", report.max_lambda_overlap);
    println!("min |<Λ|φ⊗φ>| over entangled: {:.4}", report.min_entangled_lambda_overlap);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
