// Solve the pair equation k^2 d2 - l^2 d1 = t for every split of d, two
// ways: a bounded direct scan and the convergents of sqrt(d2/d1).
//
//   cargo run --example pell_witness [d]

use pwr_ideals::pell::{
    fundamental_unit, pell_bounds, solve_gpell, solve_gpell_convergents, PeriodBudget,
};
use pwr_ideals::wrideal::{generator_from_pell, split_candidates};

fn main() -> pwr_ideals::Result<()> {
    let d: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("d must be a positive integer"))
        .unwrap_or(91);
    let splits = split_candidates(d)?;
    if splits.is_empty() {
        println!("d = {d} has no coprime split with d1 < d2 <= 3 d1");
        return Ok(());
    }
    let unit = fundamental_unit(splits[0].field())?;
    let budget = PeriodBudget::default();
    for pair in splits {
        let (k_max, _) = pell_bounds(&pair, &unit);
        println!("split ({}, {}), scan bound k <= {k_max}:", pair.d1(), pair.d2());
        let scan = solve_gpell(&pair, &k_max);
        let conv = solve_gpell_convergents(&pair, &budget)?;
        assert_eq!(scan, conv, "the two solvers must agree");
        match scan {
            Some(sol) => {
                let alpha = generator_from_pell(&pair, &sol)?;
                println!("  k = {}, l = {}, t = {}", sol.k, sol.l, sol.t);
                println!("  generator {alpha} with norm {}", alpha.norm());
            }
            None => println!("  no witness below the bound, so none at all"),
        }
    }
    Ok(())
}
