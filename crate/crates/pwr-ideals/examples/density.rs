// The density of indices n at which both family members are squarefree:
// the truncated prime product against an actual count along the family.
//
//   cargo run --example density [k l]

use pwr_ideals::arith::is_squarefree_u64;
use pwr_ideals::generate::{cf_density, family_line, wf, ParityClass};

fn main() -> pwr_ideals::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: u64 = args.next().map(|a| a.parse().unwrap()).unwrap_or(3);
    let l: u64 = args.next().map(|a| a.parse().unwrap()).unwrap_or(5);

    let report = cf_density(k, l, 1_000_000)?;
    println!("family (k, l) = ({k}, {l}):");
    println!("  universal part  {:.6}", report.constant_part);
    println!(
        "  correction      {} / {} (primes dividing kl count one root, not two)",
        report.correction.numer(),
        report.correction.denom()
    );
    println!("  predicted c_f   {:.6}", report.c_f);

    // the same constant, observed: count n < N with both members squarefree
    let line = family_line(k, l, ParityClass::Mod3)?;
    let n_max = 200_000u64;
    let mut hits = 0u64;
    for n in 0..n_max {
        let d1 = line.d1_0 + line.s1 * n;
        let d2 = line.d2_0 + line.s2 * n;
        if is_squarefree_u64(d1).admissible() && is_squarefree_u64(d2).admissible() {
            hits += 1;
        }
    }
    println!(
        "  observed        {:.6} over the first {n_max} indices of the 3 (mod 4) family",
        hits as f64 / n_max as f64
    );

    println!("  root counts w_f(p): ");
    for p in [2u64, 3, 5, 7, 11, 13] {
        println!("    p = {p:>2}: {}", wf(p, k, l, ParityClass::Mod3));
    }
    Ok(())
}
