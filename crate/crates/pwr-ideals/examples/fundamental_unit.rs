// Fundamental units by continued fractions, with period and norm.
//
//   cargo run --example fundamental_unit [d_max]

use pwr_ideals::arith::is_squarefree_u64;
use pwr_ideals::pell::fundamental_unit;
use pwr_ideals::quadfield::QuadField;

fn main() -> pwr_ideals::Result<()> {
    let d_max: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("d_max must be a positive integer"))
        .unwrap_or(50);
    println!("{:>5} {:>8} {:>6}  unit", "d", "period", "norm");
    for d in 2..=d_max {
        if !is_squarefree_u64(d).admissible() {
            continue;
        }
        let field = QuadField::new(d)?;
        let unit = fundamental_unit(field)?;
        println!(
            "{d:>5} {:>8} {:>6}  {}",
            unit.period,
            unit.unit_norm,
            unit.element(field)
        );
    }
    Ok(())
}
