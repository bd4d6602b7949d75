// The three family generators, one per residue shape of d = d1 * d2.
//
//   cargo run --example generate_families

use num_bigint::BigUint;
use pwr_ideals::arith::Effort;
use pwr_ideals::generate::{alg1, alg2, alg3, GenTuple};

fn show(label: &str, t: &GenTuple) {
    t.check_invariants();
    println!(
        "{label}: (k, l) = ({}, {}), first squarefree index n = {}",
        t.k, t.l, t.n
    );
    println!("  d1 = {}  (stride {})", t.d1, t.stride1());
    println!("  d2 = {}  (stride {})", t.d2, t.stride2());
    println!("  k^2 d2 - l^2 d1 = {}, d = {} = {} (mod 4)", t.t(), t.d(), t.d() % 4u32);
}

fn main() -> pwr_ideals::Result<()> {
    let effort = Effort::fast();
    let b = BigUint::from;

    // d = 3 (mod 4): odd k, default l = k + 2
    show("alg1(3, 5)  ", &alg1(&b(3u32), None, 64, &effort)?);
    show("alg1(5, 7)  ", &alg1(&b(5u32), None, 64, &effort)?);
    // d = 1 (mod 4) from odd k
    show("alg2(3, 5)  ", &alg2(&b(3u32), None, 64, &effort)?);
    // d = 1 (mod 4) from even k, gcd(k, l) = 2 and 8 | kl
    show("alg3(4, 6)  ", &alg3(&b(4u32), None, 64, &effort)?);
    show("alg3(8, 10) ", &alg3(&b(8u32), None, 64, &effort)?);
    // an explicit l away from the default
    show("alg1(7, 11) ", &alg1(&b(7u32), Some(&b(11u32)), 64, &effort)?);
    Ok(())
}
