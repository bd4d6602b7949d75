// Every PWR pair with small d1 and small (k, l), as CSV on stdout.
// Redirect to a file to plot d2 against d1; the rows sit on the lines
// d2 = (l/k)^2 d1 + t/k^2.
//
//   cargo run --example scatter [d1_max kl_max] > pairs.csv

use std::io::{self, Write};

use pwr_ideals::experiments::scatter_export;
use pwr_ideals::generate::ParityClass;

fn main() -> pwr_ideals::Result<()> {
    let mut args = std::env::args().skip(1);
    let d1_max: u64 = args.next().map(|a| a.parse().unwrap()).unwrap_or(200);
    let kl_max: u64 = args.next().map(|a| a.parse().unwrap()).unwrap_or(800);
    let out = io::stdout();
    let mut out = out.lock();
    let mut total = 0;
    for class in [ParityClass::Mod3, ParityClass::Mod1Odd, ParityClass::Mod1Even] {
        // one header per class keeps the blocks separable with grep
        writeln!(out, "# class {class}").map_err(pwr_ideals::Error::from)?;
        total += scatter_export(d1_max, kl_max, class, &mut out)?;
    }
    eprintln!("{total} rows for d1 < {d1_max}, k,l < {kl_max}");
    Ok(())
}
