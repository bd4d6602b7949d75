// Enumerate the well-rounded ideals of a few real quadratic fields.
//
//   cargo run --example wr_ideals [d ...]

use pwr_ideals::quadfield::QuadField;
use pwr_ideals::wrideal::enumerate_wr;

fn main() -> pwr_ideals::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("d must be a positive integer"))
        .collect();
    let ds = if args.is_empty() {
        vec![2, 3, 10, 15, 65, 91, 1155]
    } else {
        args
    };
    for d in ds {
        let field = QuadField::new(d)?;
        let list = enumerate_wr(field);
        println!("Q(sqrt {d}), discriminant {}:", field.disc());
        if list.entries().is_empty() {
            // d = 2 (mod 4) never has any; small d = 1 (mod 4) fields may not
            println!("  (none)");
            continue;
        }
        for ideal in list.entries() {
            println!("  {ideal}  norm {}", ideal.norm());
        }
    }
    Ok(())
}
