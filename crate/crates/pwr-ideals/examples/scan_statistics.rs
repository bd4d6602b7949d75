// First-index statistics over every valid (k, l) below a cutoff: how often
// the base of a family is already squarefree (n = 0), and the worst case.
//
//   cargo run --example scan_statistics [k_max]

use pwr_ideals::experiments::scan_stats;
use pwr_ideals::generate::ParityClass;

fn main() -> pwr_ideals::Result<()> {
    let k_max: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("k_max must be a positive integer"))
        .unwrap_or(2000);
    for class in [ParityClass::Mod3, ParityClass::Mod1Odd, ParityClass::Mod1Even] {
        let stats = scan_stats(k_max, class)?;
        println!("class {class}, k < {k_max}: {} pairs", stats.total);
        println!(
            "  n = 0 fraction {:.4} ({}), n = 1 fraction {:.4} ({})",
            *stats.fraction_n0.numer() as f64 / *stats.fraction_n0.denom() as f64,
            stats.fraction_n0,
            *stats.fraction_n1.numer() as f64 / *stats.fraction_n1.denom() as f64,
            stats.fraction_n1
        );
        println!("  largest first index {}", stats.max_n);
        let tail: Vec<String> = stats
            .histogram
            .iter()
            .filter(|(n, _)| **n >= 4)
            .map(|(n, c)| format!("n={n}: {c}"))
            .collect();
        if !tail.is_empty() {
            println!("  tail {}", tail.join(", "));
        }
    }
    Ok(())
}
