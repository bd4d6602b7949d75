// Principality of the two pair ideals, decided by walking the cycle of
// reduced states, next to the Pell criterion that must agree with it.
//
//   cargo run --example principality [d]

use pwr_ideals::pell::{
    fundamental_unit, is_principal_cycle, pell_bounds, solve_gpell, PeriodBudget,
};
use pwr_ideals::wrideal::{build_pwr_ideals, factor_pwr, split_candidates};

fn main() -> pwr_ideals::Result<()> {
    let d: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("d must be a positive integer"))
        .unwrap_or(1155);
    let splits = split_candidates(d)?;
    if splits.is_empty() {
        println!("d = {d} has no split candidates");
        return Ok(());
    }
    let budget = PeriodBudget::default();
    let unit = fundamental_unit(splits[0].field())?;
    for pair in splits {
        let (i1, i2) = build_pwr_ideals(&pair);
        let p1 = is_principal_cycle(&i1, &budget)?;
        let p2 = is_principal_cycle(&i2, &budget)?;
        let (k_max, _) = pell_bounds(&pair, &unit);
        let solvable = solve_gpell(&pair, &k_max).is_some();
        println!("split ({}, {}):", pair.d1(), pair.d2());
        println!("  I1 = {i1}  principal: {p1}");
        println!("  I2 = {i2}  principal: {p2}");
        println!("  pair equation solvable: {solvable}");
        assert_eq!(solvable, p1 && p2, "criterion must match the cycle walks");
        let shape = factor_pwr(&pair)?;
        let names = |ps: &[pwr_ideals::wrideal::RamifiedPrime]| {
            ps.iter().map(|r| r.p.to_string()).collect::<Vec<_>>().join(" * ")
        };
        println!("  ramified shape: I1 ~ {}, I2 ~ {}", names(&shape.i1), names(&shape.i2));
    }
    Ok(())
}
