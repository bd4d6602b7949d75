//! The acceptance gate: one test per shipped guarantee, each printing a
//! single PASS/FAIL line. Run with `--nocapture` to see the lines as they
//! complete. Every numbered check states its claim and tolerance inline.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};

use pwr_ideals::arith::{is_squarefree_u64, Effort, SplitMix64};
use pwr_ideals::experiments::{bigdemo, scan_stats};
use pwr_ideals::generate::{
    alg1, alg2, alg3, cf_density, prime_pwr_search, validate_kl, wf, wf_count_brute, GenTuple,
    ParityClass, PrimePwrTag,
};
use pwr_ideals::pell::{
    fundamental_unit, is_principal_cycle, pell_bounds, solve_gpell, PeriodBudget,
};
use pwr_ideals::quadfield::{embed_gram, shortest_vector_oracle, QuadField};
use pwr_ideals::wrideal::{
    build_pwr_ideals, enumerate_wr, generator_from_pell, minimal_basis, split_candidates, PwrPair,
};

fn criterion<F>(number: u32, name: &str, budget: Duration, body: F)
where
    F: FnOnce() + UnwindSafe,
{
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    let verdict = if outcome.is_ok() && elapsed <= budget {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "criterion {number} ({name}): {verdict} [{elapsed:.2?}, budget {budget:.0?}]"
    );
    if let Err(e) = outcome {
        resume_unwind(e);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its runtime budget: {elapsed:.2?} > {budget:?}"
    );
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn criterion_01_golden_generators() {
    criterion(1, "golden generators", Duration::from_secs(1), || {
        let e = Effort::fast();
        let cases: [(&str, GenTuple, (u64, u64, u64, i8)); 6] = [
            ("alg1(3,5)", alg1(&big(3), Some(&big(5)), 64, &e).unwrap(), (17, 47, 0, -2)),
            ("alg1(5,7)", alg1(&big(5), Some(&big(7)), 64, &e).unwrap(), (77, 151, 1, 2)),
            ("alg2(3,5)", alg2(&big(3), Some(&big(5)), 64, &e).unwrap(), (43, 119, 1, -4)),
            ("alg2(5,7)", alg2(&big(5), Some(&big(7)), 64, &e).unwrap(), (29, 57, 0, 4)),
            ("alg3(4,6)", alg3(&big(4), Some(&big(6)), 64, &e).unwrap(), (13, 29, 0, -4)),
            ("alg3(8,10)", alg3(&big(8), Some(&big(10)), 64, &e).unwrap(), (71, 111, 0, 4)),
        ];
        for (label, t, (d1, d2, n, tv)) in cases {
            assert_eq!(t.d1.to_u64(), Some(d1), "{label} d1");
            assert_eq!(t.d2.to_u64(), Some(d2), "{label} d2");
            assert_eq!(t.n, n, "{label} n");
            assert_eq!(t.t(), tv, "{label} t");
            // independent re-verification, not trusting the constructor
            let (k, l) = (t.k.to_i128(), t.l.to_i128());
            let (k, l) = (k.unwrap(), l.unwrap());
            assert_eq!(k * k * d2 as i128 - l * l * d1 as i128, tv as i128, "{label} identity");
            assert!(d1 < d2 && d2 <= 3 * d1, "{label} window");
            let want_mod4 = if t.parity_class == ParityClass::Mod3 { 3 } else { 1 };
            assert_eq!((d1 * d2) % 4, want_mod4, "{label} congruence");
            assert!(is_squarefree_u64(d1).admissible(), "{label} d1 squarefree");
            assert!(is_squarefree_u64(d2).admissible(), "{label} d2 squarefree");
        }
    });
}

#[test]
fn criterion_02_theorem_agreement_sweep() {
    criterion(2, "solvability = principality, d < 2000", Duration::from_secs(600), || {
        let budget = PeriodBudget::default();
        let mut splits_checked = 0u32;
        for d in (3..2000u64).step_by(2) {
            if !is_squarefree_u64(d).admissible() {
                continue;
            }
            let splits = split_candidates(d).unwrap();
            if splits.is_empty() {
                continue;
            }
            let unit = fundamental_unit(QuadField::new(d).unwrap()).unwrap();
            for pair in splits {
                let (i1, i2) = build_pwr_ideals(&pair);
                let p1 = is_principal_cycle(&i1, &budget).unwrap();
                let p2 = is_principal_cycle(&i2, &budget).unwrap();
                let (k_bound, _) = pell_bounds(&pair, &unit);
                let sol = solve_gpell(&pair, &k_bound);
                assert_eq!(
                    sol.is_some(),
                    p1,
                    "d = {d}, split ({}, {}): scan vs I1 cycle",
                    pair.d1(),
                    pair.d2()
                );
                assert_eq!(p1, p2, "d = {d}: I1 vs I2 principality");
                splits_checked += 1;
            }
        }
        assert!(splits_checked > 100, "only {splits_checked} splits checked");
    });
}

#[test]
fn criterion_03_d91_witness() {
    criterion(3, "d = 91 witness and generator", Duration::from_secs(5), || {
        let pair = PwrPair::new(7, 13).unwrap();
        let unit = fundamental_unit(QuadField::new(91).unwrap()).unwrap();
        let (k_bound, _) = pell_bounds(&pair, &unit);
        let sol = solve_gpell(&pair, &k_bound).expect("(7, 13) must be solvable");
        assert_eq!(sol.k, big(11));
        assert_eq!(sol.l, big(15));
        assert_eq!(sol.t, -2);
        let g = generator_from_pell(&pair, &sol).unwrap();
        assert_eq!(g.to_string(), "105 - 11*sqrt(91)");
        assert_eq!(g.norm().to_i64(), Some(14));
    });
}

#[test]
fn criterion_04_wr_enumeration() {
    criterion(4, "WR norms for d = 3, 65; none for d = 2 mod 4", Duration::from_secs(60), || {
        let norms = |d: u64| enumerate_wr(QuadField::new(d).unwrap()).norms();
        assert_eq!(norms(3), vec![2, 6]);
        assert_eq!(norms(65), vec![5, 13]);
        for d in (2..10_000u64).step_by(4) {
            if !is_squarefree_u64(d).admissible() {
                continue;
            }
            let found = norms(d);
            assert!(found.is_empty(), "d = {d} unexpectedly has WR norms {found:?}");
        }
    });
}

#[test]
fn criterion_05_hexagonal_uniqueness() {
    criterion(5, "hexagonal only at (1, 3); all angles distinct, d < 100000", Duration::from_secs(300), || {
        let mut seen: HashMap<(u64, u64), (u64, u64)> = HashMap::new();
        let mut pairs = 0u64;
        let mut hexagonal = Vec::new();
        for d in (3..100_000u64).step_by(2) {
            if !is_squarefree_u64(d).admissible() {
                continue;
            }
            for pair in split_candidates(d).unwrap() {
                let cos = pair.angle_cos();
                if cos.is_hexagonal() {
                    hexagonal.push((pair.d1(), pair.d2()));
                }
                if let Some(other) =
                    seen.insert((cos.numer(), cos.denom()), (pair.d1(), pair.d2()))
                {
                    panic!(
                        "splits {other:?} and ({}, {}) share the angle cosine {}/{}",
                        pair.d1(),
                        pair.d2(),
                        cos.numer(),
                        cos.denom()
                    );
                }
                pairs += 1;
            }
        }
        assert_eq!(hexagonal, vec![(1, 3)]);
        assert!(pairs > 3_000, "only {pairs} splits enumerated");
    });
}

#[test]
fn criterion_06_minimal_basis_forms() {
    criterion(6, "minimal vectors match closed forms and oracle, 50 pairs", Duration::from_secs(60), || {
        let effort = Effort::fast();
        let mut checked = 0;
        'outer: for k in 3u64..40 {
            for l in (k + 1)..40 {
                for class in [ParityClass::Mod3, ParityClass::Mod1Odd, ParityClass::Mod1Even] {
                    if validate_kl(&big(k), &big(l), class).is_err() {
                        continue;
                    }
                    let t = match class {
                        ParityClass::Mod3 => alg1(&big(k), Some(&big(l)), 64, &effort),
                        ParityClass::Mod1Odd => alg2(&big(k), Some(&big(l)), 64, &effort),
                        ParityClass::Mod1Even => alg3(&big(k), Some(&big(l)), 64, &effort),
                    }
                    .unwrap();
                    let pair =
                        PwrPair::new(t.d1.to_u64().unwrap(), t.d2.to_u64().unwrap()).unwrap();
                    let d = pair.d();
                    for which in [1u8, 2] {
                        let di = if which == 1 { pair.d1() } else { pair.d2() };
                        let (e, f, min) = minimal_basis(&pair, which);
                        let closed = if d % 4 == 1 {
                            (di as i128 * di as i128 + d as i128) / 2
                        } else {
                            2 * (di as i128 * di as i128 + d as i128)
                        };
                        assert_eq!(min.to_i128(), Some(closed), "closed form for {di} | {d}");
                        let gram = embed_gram(&e, &f).unwrap();
                        assert_eq!(gram.e_sq, gram.f_sq, "well-rounded Gram");
                        assert_eq!(gram.e_sq.to_i128(), Some(closed));
                        let (oracle_min, _) = shortest_vector_oracle(&e, &f).unwrap();
                        assert_eq!(oracle_min, min, "reduction oracle for {di} | {d}");
                    }
                    checked += 1;
                    if checked >= 50 {
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(checked, 50);
    });
}

#[test]
fn criterion_07_scan_statistics() {
    criterion(7, "scan fractions and worst index", Duration::from_secs(120), || {
        // desk scale: hard bounds
        for class in [ParityClass::Mod3, ParityClass::Mod1Odd] {
            let s = scan_stats(2000, class).unwrap();
            let f0 = ratio_f64(&s.fraction_n0);
            assert!(
                (0.67..=0.74).contains(&f0),
                "{class:?} n=0 fraction {f0:.4} outside [0.67, 0.74]"
            );
            assert!(s.max_n <= 12, "{class:?} max_n = {}", s.max_n);
        }
        // extended scale: the published fractions, within half a point
        let published = [
            (ParityClass::Mod3, 0.7077, 0.2135, 9u64),
            (ParityClass::Mod1Odd, 0.7081, 0.2160, 11),
        ];
        for (class, want0, want1, want_max) in published {
            let s = scan_stats(10_000, class).unwrap();
            let (f0, f1) = (ratio_f64(&s.fraction_n0), ratio_f64(&s.fraction_n1));
            assert!(
                (f0 - want0).abs() <= 0.005,
                "{class:?} n=0 fraction {f0:.4} vs published {want0}"
            );
            assert!(
                (f1 - want1).abs() <= 0.005,
                "{class:?} n=1 fraction {f1:.4} vs published {want1}"
            );
            assert!(s.max_n <= 12, "{class:?} extended max_n = {}", s.max_n);
            if s.max_n != want_max {
                // worst-case index depends on the Bezout base point; the
                // published value is informational, not a gate
                println!(
                    "  informational: {class:?} worst index {} (published {want_max})",
                    s.max_n
                );
            }
        }
    });
}

#[test]
fn criterion_08_density_constant() {
    criterion(8, "density constant and c_f > 0.64", Duration::from_secs(30), || {
        let base = cf_density(1, 1, 1_000_000).unwrap();
        assert!(
            base.constant_part >= 0.6450 && base.constant_part <= 0.6456,
            "universal constant {} outside [0.6450, 0.6456]",
            base.constant_part
        );
        assert!(base.correction.is_one());
        // 100 seeded random valid (k, l) inputs across all three classes
        let mut rng = SplitMix64::new(17);
        let mut tried = 0;
        while tried < 100 {
            let class = match rng.next_u64() % 3 {
                0 => ParityClass::Mod3,
                1 => ParityClass::Mod1Odd,
                _ => ParityClass::Mod1Even,
            };
            let k = 3 + rng.next_u64() % 2000;
            let l = k + 1 + rng.next_u64() % k;
            if validate_kl(&big(k), &big(l), class).is_err() {
                continue;
            }
            let r = cf_density(k, l, 100_000).unwrap();
            assert!(r.c_f > 0.64, "c_f({k}, {l}) = {} <= 0.64", r.c_f);
            assert!(r.correction >= Ratio::one());
            tried += 1;
        }
    });
}

#[test]
fn criterion_09_prime_pwr_search() {
    criterion(9, "prime-norm PWR ideals to limit 200", Duration::from_secs(60), || {
        let hits = prime_pwr_search(200).unwrap();
        // the d = 133 example: norm-7 ideal with witness (3, 5)
        let d133 = hits
            .iter()
            .find(|h| h.pair.d() == 133)
            .expect("d = 133 must appear");
        assert_eq!((d133.p, d133.pair.d1(), d133.pair.d2()), (7, 7, 19));
        assert_eq!(
            (d133.witness.k.to_u64(), d133.witness.l.to_u64(), d133.witness.t),
            (Some(3), Some(5), -4)
        );
        let mut family_b = 0;
        for h in &hits {
            // verify: the witness builds a generator, and one pair ideal
            // has norm exactly p
            let g = generator_from_pell(&h.pair, &h.witness).unwrap();
            assert!(!g.is_zero());
            let (i1, i2) = build_pwr_ideals(&h.pair);
            assert!(
                i1.norm() == h.p as u128 || i2.norm() == h.p as u128,
                "no ideal of norm {} for d = {}",
                h.p,
                h.pair.d()
            );
            if h.tag == PrimePwrTag::PrimePair33 {
                family_b += 1;
            }
        }
        assert!(family_b > 300, "only {family_b} prime-pair fields found");
    });
}

#[test]
fn criterion_10_big_demo() {
    criterion(10, "two 121-digit families at k = 10^60 - 1", Duration::from_secs(120), || {
        let demo = bigdemo(60, &Effort::fast()).unwrap();
        let d1_mod3 = "1999999999999999999999999999999999999999999999999999999999995500000000000000000000000000000000000000000000000000000000003";
        let d2_mod3 = "2000000000000000000000000000000000000000000000000000000000003500000000000000000000000000000000000000000000000000000000001";
        let diff_mod3 = "7999999999999999999999999999999999999999999999999999999999998";
        let d1_mod1 = "4999999999999999999999999999999999999999999999999999999999989000000000000000000000000000000000000000000000000000000000007";
        let d2_mod1 = "5000000000000000000000000000000000000000000000000000000000009000000000000000000000000000000000000000000000000000000000003";
        let diff_mod1 = "19999999999999999999999999999999999999999999999999999999999996";
        assert_eq!(demo.mod3.d1.to_string(), d1_mod3);
        assert_eq!(demo.mod3.d2.to_string(), d2_mod3);
        assert_eq!((&demo.mod3.d2 - &demo.mod3.d1).to_string(), diff_mod3);
        assert_eq!(demo.mod3.d1.to_string().len(), 121);
        assert_eq!(demo.mod1odd.d1.to_string(), d1_mod1);
        assert_eq!(demo.mod1odd.d2.to_string(), d2_mod1);
        assert_eq!((&demo.mod1odd.d2 - &demo.mod1odd.d1).to_string(), diff_mod1);
        // identity invariants re-run on every construction; re-check here
        demo.mod3.check_invariants();
        demo.mod1odd.check_invariants();
    });
}

#[test]
fn criterion_11_wf_closed_form() {
    criterion(11, "w_f closed form vs residue counting, p <= 97", Duration::from_secs(60), || {
        let triples: [(u64, u64, ParityClass); 20] = [
            (3, 5, ParityClass::Mod3),
            (5, 7, ParityClass::Mod3),
            (7, 9, ParityClass::Mod3),
            (9, 11, ParityClass::Mod3),
            (15, 17, ParityClass::Mod3),
            (21, 25, ParityClass::Mod3),
            (33, 35, ParityClass::Mod3),
            (3, 5, ParityClass::Mod1Odd),
            (5, 7, ParityClass::Mod1Odd),
            (7, 11, ParityClass::Mod1Odd),
            (9, 13, ParityClass::Mod1Odd),
            (13, 15, ParityClass::Mod1Odd),
            (35, 39, ParityClass::Mod1Odd),
            (4, 6, ParityClass::Mod1Even),
            (6, 8, ParityClass::Mod1Even),
            (8, 10, ParityClass::Mod1Even),
            (10, 16, ParityClass::Mod1Even),
            (14, 16, ParityClass::Mod1Even),
            (16, 18, ParityClass::Mod1Even),
            (20, 22, ParityClass::Mod1Even),
        ];
        let primes: BTreeSet<u64> = (2..=97).filter(|&p| {
            (2..p).all(|q| p % q != 0)
        }).collect();
        assert_eq!(primes.len(), 25);
        for (k, l, class) in triples {
            validate_kl(&big(k), &big(l), class).unwrap();
            for &p in &primes {
                let closed = wf(p, k, l, class) as u64;
                let brute = wf_count_brute(p, k, l, class).unwrap();
                assert_eq!(closed, brute, "p = {p}, (k, l) = ({k}, {l}), {class:?}");
            }
        }
    });
}

fn ratio_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
