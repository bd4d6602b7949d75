// Fields whose principal well-rounded ideals include one of prime norm.
//
//   cargo run --example prime_pwr [limit]

use pwr_ideals::generate::{prime_pwr_search, PrimePwrTag};

fn main() -> pwr_ideals::Result<()> {
    let limit: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("limit must be a positive integer"))
        .unwrap_or(200);
    let hits = prime_pwr_search(limit)?;
    println!("{:>5} {:>9} {:>12}  witness (k, l, t)      family", "p", "d", "split");
    for h in &hits {
        let family = match h.tag {
            PrimePwrTag::SpecialD3 => "d = 3",
            PrimePwrTag::PPlus4 => "q = p + 4",
            PrimePwrTag::PMinus4 => "q = p - 4",
            PrimePwrTag::PrimePair33 => "p, q = 3 (mod 4)",
        };
        println!(
            "{:>5} {:>9} {:>12}  ({}, {}, {:>2})  {:>18}",
            h.p,
            h.pair.d(),
            format!("({}, {})", h.pair.d1(), h.pair.d2()),
            h.witness.k,
            h.witness.l,
            h.witness.t,
            family
        );
    }
    println!("{} fields with a prime-norm PWR ideal for p <= {limit}", hits.len());
    Ok(())
}
