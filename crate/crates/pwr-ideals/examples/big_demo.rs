// Family generation at cryptographic sizes: k = 10^digits - 1. The tuples
// carry hundreds of digits; the squarefree verdicts switch to the
// probabilistic tier and say so.
//
//   cargo run --example big_demo [digits]

use pwr_ideals::arith::Effort;
use pwr_ideals::experiments::bigdemo;

fn main() -> pwr_ideals::Result<()> {
    let digits: u32 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("digits must be an integer >= 10"))
        .unwrap_or(60);
    let demo = bigdemo(digits, &Effort::fast())?;
    for (label, t, ms) in [
        ("d = 3 (mod 4)", &demo.mod3, demo.mod3_millis),
        ("d = 1 (mod 4)", &demo.mod1odd, demo.mod1odd_millis),
    ] {
        t.check_invariants();
        println!("{label}: k = 10^{digits} - 1, l = k + 2, found n = {} in {ms} ms", t.n);
        println!("  d1 = {}", t.d1);
        println!("  d2 = {}", t.d2);
        println!("  d2 - d1 = {}", &t.d2 - &t.d1);
        println!(
            "  squarefree verdicts: {:?} / {:?}",
            t.squarefree_status.0.status, t.squarefree_status.1.status
        );
    }
    Ok(())
}
