// Walk one family line in both directions. Every index keeps the Pell
// identity; only the squarefree checks and the window decide which
// indices yield usable pairs.
//
//   cargo run --example extend_family

use num_bigint::BigUint;
use pwr_ideals::arith::Effort;
use pwr_ideals::generate::{alg1, extend_family};

fn main() -> pwr_ideals::Result<()> {
    let effort = Effort::fast();
    let base = alg1(&BigUint::from(3u32), None, 64, &effort)?;
    println!(
        "family of (k, l) = (3, 5): d1 = 17 + 18 n, d2 = 47 + 50 n, t = {}",
        base.t()
    );
    println!("{:>4} {:>8} {:>8}  window  squarefree", "n", "d1", "d2");
    for n in -3..=12i64 {
        match extend_family(&base, n, &effort) {
            Ok(ext) => {
                let sf = match (ext.sf1.admissible(), ext.sf2.admissible()) {
                    (true, true) => "both",
                    (true, false) => "d1 only",
                    (false, true) => "d2 only",
                    (false, false) => "neither",
                };
                println!(
                    "{n:>4} {:>8} {:>8}  {:>6}  {sf}",
                    ext.d1, ext.d2, ext.window_ok
                );
            }
            Err(e) => println!("{n:>4} {e}"),
        }
    }
    Ok(())
}
