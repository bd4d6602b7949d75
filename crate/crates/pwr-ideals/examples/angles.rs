// The angle invariant cos(theta) = (d2 - d1)/(d2 + d1) separates every
// PWR pair up to lattice similarity. The hexagonal angle 1/2 occurs for
// exactly one pair.
//
//   cargo run --example angles [d_max]

use std::collections::BTreeSet;

use num_rational::Ratio;
use pwr_ideals::arith::is_squarefree_u64;
use pwr_ideals::quadfield::embed_gram;
use pwr_ideals::wrideal::{minimal_basis, split_candidates};

fn main() -> pwr_ideals::Result<()> {
    let d_max: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("d_max must be a positive integer"))
        .unwrap_or(20_000);

    let mut seen: BTreeSet<Ratio<u64>> = BTreeSet::new();
    let mut most_square: Option<(Ratio<u64>, (u64, u64))> = None;
    let mut pairs = 0u64;
    for d in (3..d_max).step_by(2) {
        if !is_squarefree_u64(d).admissible() {
            continue;
        }
        for pair in split_candidates(d)? {
            pairs += 1;
            let cos = pair.angle_cos().value();
            assert!(seen.insert(cos), "two distinct pairs may never share an angle");
            if most_square.is_none() || cos < most_square.unwrap().0 {
                most_square = Some((cos, (pair.d1(), pair.d2())));
            }
            if pair.is_hexagonal() {
                println!(
                    "hexagonal pair: ({}, {}) in Q(sqrt {}), cos = 1/2",
                    pair.d1(),
                    pair.d2(),
                    d
                );
            }
        }
    }
    println!("{pairs} splits below {d_max}, all with distinct angles");
    let (cos, (d1, d2)) = most_square.expect("the range always contains splits");
    println!("closest to square: ({d1}, {d2}) with cos = {cos}");

    // the minimal basis realizing an angle, with its exact Gram data
    let pair = split_candidates(91)?.remove(0);
    let (e, f, min) = minimal_basis(&pair, 1);
    let gram = embed_gram(&e, &f)?;
    println!(
        "I1 of split ({}, {}): minimal vectors {e} and {f}, |v|^2 = {min}, dot = {}",
        pair.d1(),
        pair.d2(),
        gram.dot
    );
    Ok(())
}
