//! Constructive generators: the three family algorithms, linear family
//! extension, prime-norm PWR searches, and squarefree density estimates.
//!
//! Each algorithm starts from a canonical Bezout solution of
//! k^2 g + l^2 h = target and emits the smallest family index n whose pair
//! (d1, d2) is squarefree on both sides. The family step is linear in n:
//! 2k^2 per index for the odd classes, k^2 for the even class.

use std::collections::{BTreeSet, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{
    bezout_squares, bezout_squares_i128, factor_u64, is_prime_u64, is_squarefree, primes,
    BezoutPair, Effort, SquarefreeVerdict,
};
use crate::error::{Error, Result};
use crate::pell::{solve_gpell_convergents, PellSolution, PeriodBudget};
use crate::wrideal::PwrPair;

/// Which congruence family a generated pair lives in: d = 3 (mod 4) from
/// odd k (Algorithm 1), d = 1 (mod 4) from odd k (Algorithm 2), or
/// d = 1 (mod 4) from even k (Algorithm 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Mod3,
    Mod1Odd,
    Mod1Even,
}

impl std::fmt::Display for ParityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParityClass::Mod3 => write!(f, "3mod4"),
            ParityClass::Mod1Odd => write!(f, "1mod4-odd"),
            ParityClass::Mod1Even => write!(f, "1mod4-even"),
        }
    }
}

/// One generated family member, with everything needed to audit it.
#[derive(Debug, Clone)]
pub struct GenTuple {
    pub k: BigUint,
    pub l: BigUint,
    pub bezout: BezoutPair,
    pub n: u64,
    pub d1: BigUint,
    pub d2: BigUint,
    pub parity_class: ParityClass,
    pub squarefree_status: (SquarefreeVerdict, SquarefreeVerdict),
}

impl GenTuple {
    pub fn d(&self) -> BigUint {
        &self.d1 * &self.d2
    }

    /// The right-hand side of k^2 d2 - l^2 d1 = t.
    pub fn t(&self) -> i8 {
        let magnitude: i8 = match self.parity_class {
            ParityClass::Mod3 => 2,
            ParityClass::Mod1Odd | ParityClass::Mod1Even => 4,
        };
        magnitude * self.bezout.sign
    }

    /// Family step of d1 per unit of n.
    pub fn stride1(&self) -> BigUint {
        let k2 = &self.k * &self.k;
        match self.parity_class {
            ParityClass::Mod3 | ParityClass::Mod1Odd => k2 * 2u32,
            ParityClass::Mod1Even => k2,
        }
    }

    /// Family step of d2 per unit of n.
    pub fn stride2(&self) -> BigUint {
        let l2 = &self.l * &self.l;
        match self.parity_class {
            ParityClass::Mod3 | ParityClass::Mod1Odd => l2 * 2u32,
            ParityClass::Mod1Even => l2,
        }
    }

    /// Hard checks of the defining identity, the window and the congruence
    /// class. Runs on every construction; a failure is a bug, not bad input.
    pub fn check_invariants(&self) {
        let k = BigInt::from(self.k.clone());
        let l = BigInt::from(self.l.clone());
        let d1 = BigInt::from(self.d1.clone());
        let d2 = BigInt::from(self.d2.clone());
        assert_eq!(
            &k * &k * &d2 - &l * &l * &d1,
            BigInt::from(self.t()),
            "pell identity broken for (k, l) = ({}, {})",
            self.k,
            self.l
        );
        assert!(d1 < d2 && d2 <= &d1 * 3, "window broken: ({d1}, {d2})");
        assert!(self.d1.is_odd() && self.d2.is_odd());
        let want = match self.parity_class {
            ParityClass::Mod3 => 3u32,
            ParityClass::Mod1Odd | ParityClass::Mod1Even => 1,
        };
        assert_eq!((self.d() % 4u32), BigUint::from(want), "wrong residue class");
    }
}

/// Validate a (k, l) input for its class: parity, size, coprimality and the
/// window condition l^2 < 3k^2.
pub fn validate_kl(k: &BigUint, l: &BigUint, class: ParityClass) -> Result<()> {
    let fail = |msg: String| Err(Error::BadL(msg));
    match class {
        ParityClass::Mod3 | ParityClass::Mod1Odd => {
            if k.is_even() || *k <= BigUint::one() {
                return fail(format!("k = {k} must be odd and greater than 1"));
            }
            if l.is_even() {
                return fail(format!("l = {l} must be odd"));
            }
            if !k.gcd(l).is_one() {
                return fail(format!("k = {k} and l = {l} must be coprime"));
            }
        }
        ParityClass::Mod1Even => {
            if k.is_odd() || *k <= BigUint::from(2u32) {
                return fail(format!("k = {k} must be even and greater than 2"));
            }
            if l.is_odd() {
                return fail(format!("l = {l} must be even"));
            }
            if k.gcd(l) != BigUint::from(2u32) {
                return fail(format!("gcd({k}, {l}) must be exactly 2"));
            }
            if !(k * l).is_multiple_of(&BigUint::from(8u32)) {
                return fail(format!("8 must divide k*l = {}", k * l));
            }
        }
    }
    if k >= l {
        return fail(format!("need k < l, got ({k}, {l})"));
    }
    if l * l >= k * k * 3u32 {
        return fail(format!("need l < sqrt(3)*k, got ({k}, {l})"));
    }
    Ok(())
}

/// The Algorithm 3 base multiplier: d1 = v + k^2 * num/den, d2 likewise
/// with l^2, branched on the parities and residues of the Bezout pair.
fn alg3_multiplier(u_mod4: u32, v_mod4: u32, k_mod4: u32, l_mod4: u32) -> (u32, u32) {
    if u_mod4 % 2 == 1 && v_mod4 % 2 == 1 {
        if u_mod4 == v_mod4 {
            (1, 1)
        } else {
            (1, 2)
        }
    } else if u_mod4 % 2 == 0 {
        debug_assert_eq!(k_mod4, 0, "u even forces 4 | k");
        ((v_mod4 + 4 - u_mod4) % 4, 4)
    } else {
        debug_assert_eq!(l_mod4, 0, "v even forces 4 | l");
        ((u_mod4 + 4 - v_mod4) % 4, 4)
    }
}

fn family_base(
    k: &BigUint,
    l: &BigUint,
    class: ParityClass,
) -> Result<(BezoutPair, BigUint, BigUint)> {
    let k2 = k * k;
    let l2 = l * l;
    match class {
        ParityClass::Mod3 => {
            let bz = bezout_squares(k, l, 1)?;
            let d1 = &k2 + &bz.v * 2u32;
            let d2 = &l2 + &bz.u * 2u32;
            Ok((bz, d1, d2))
        }
        ParityClass::Mod1Odd => {
            let bz = bezout_squares(k, l, 1)?;
            let d1 = &k2 + &bz.v * 4u32;
            let d2 = &l2 + &bz.u * 4u32;
            Ok((bz, d1, d2))
        }
        ParityClass::Mod1Even => {
            let bz = bezout_squares(k, l, 4)?;
            let (num, den) = alg3_multiplier(
                (&bz.u % 4u32).to_u32().unwrap(),
                (&bz.v % 4u32).to_u32().unwrap(),
                (k % 4u32).to_u32().unwrap(),
                (l % 4u32).to_u32().unwrap(),
            );
            let d1 = &bz.v + &k2 * num / den;
            let d2 = &bz.u + &l2 * num / den;
            Ok((bz, d1, d2))
        }
    }
}

fn run_family(
    k: BigUint,
    l: BigUint,
    class: ParityClass,
    n_max: u64,
    effort: &Effort,
) -> Result<GenTuple> {
    validate_kl(&k, &l, class)?;
    let (bezout, mut d1, mut d2) = family_base(&k, &l, class)?;
    let k2 = &k * &k;
    let l2 = &l * &l;
    let (stride1, stride2) = match class {
        ParityClass::Mod3 | ParityClass::Mod1Odd => (&k2 * 2u32, &l2 * 2u32),
        ParityClass::Mod1Even => (k2, l2),
    };
    for n in 0..=n_max {
        let v1 = is_squarefree(&d1, effort);
        if v1.admissible() {
            let v2 = is_squarefree(&d2, effort);
            if v2.admissible() {
                let tuple = GenTuple {
                    k,
                    l,
                    bezout,
                    n,
                    d1,
                    d2,
                    parity_class: class,
                    squarefree_status: (v1, v2),
                };
                tuple.check_invariants();
                return Ok(tuple);
            }
        }
        d1 += &stride1;
        d2 += &stride2;
    }
    Err(Error::BudgetExhausted(format!(
        "no squarefree pair for (k, l) = ({k}, {l}) in the first {} family indices",
        n_max + 1
    )))
}

/// Algorithm 1: odd k, d = 3 (mod 4) families. l defaults to k + 2.
pub fn alg1(k: &BigUint, l: Option<&BigUint>, n_max: u64, effort: &Effort) -> Result<GenTuple> {
    let l = l.cloned().unwrap_or_else(|| k + 2u32);
    run_family(k.clone(), l, ParityClass::Mod3, n_max, effort)
}

/// Algorithm 2: odd k, d = 1 (mod 4) families. l defaults to k + 2.
pub fn alg2(k: &BigUint, l: Option<&BigUint>, n_max: u64, effort: &Effort) -> Result<GenTuple> {
    let l = l.cloned().unwrap_or_else(|| k + 2u32);
    run_family(k.clone(), l, ParityClass::Mod1Odd, n_max, effort)
}

/// Algorithm 3: even k, d = 1 (mod 4) families. l defaults to k + 2, the
/// smallest even value with gcd(k, l) = 2 and 8 | kl.
pub fn alg3(k: &BigUint, l: Option<&BigUint>, n_max: u64, effort: &Effort) -> Result<GenTuple> {
    let l = l.cloned().unwrap_or_else(|| k + 2u32);
    run_family(k.clone(), l, ParityClass::Mod1Even, n_max, effort)
}

/// The n = 0 family line of a (k, l) class in machine words, for scans:
/// d1(n) = d1_0 + s1*n, d2(n) = d2_0 + s2*n. Emits exactly the same values
/// as the big-integer algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyLine {
    pub d1_0: u64,
    pub s1: u64,
    pub d2_0: u64,
    pub s2: u64,
    pub t: i8,
}

pub fn family_line(k: u64, l: u64, class: ParityClass) -> Result<FamilyLine> {
    if k >= (1 << 31) || l >= (1 << 31) {
        return Err(Error::BadL(format!(
            "({k}, {l}) is too large for the fixed-width family line"
        )));
    }
    let fail = |msg: String| Err(Error::BadL(msg));
    let gcd = k.gcd(&l);
    match class {
        ParityClass::Mod3 | ParityClass::Mod1Odd => {
            if k % 2 == 0 || k <= 1 || l % 2 == 0 || gcd != 1 {
                return fail(format!("invalid odd-class input ({k}, {l})"));
            }
        }
        ParityClass::Mod1Even => {
            if k % 2 == 1 || k <= 2 || l % 2 == 1 || gcd != 2 || (k * l) % 8 != 0 {
                return fail(format!("invalid even-class input ({k}, {l})"));
            }
        }
    }
    if k >= l || (l as u128 * l as u128) >= 3 * (k as u128 * k as u128) {
        return fail(format!("({k}, {l}) is outside the window"));
    }
    let target: i128 = if class == ParityClass::Mod1Even { 4 } else { 1 };
    let (u, v, sign) = bezout_squares_i128(k as i128, l as i128, target)
        .ok_or_else(|| Error::NotSolvable(format!("no Bezout pair for ({k}, {l})")))?;
    let k2 = k as i128 * k as i128;
    let l2 = l as i128 * l as i128;
    let (d1_0, d2_0, s1, s2, t) = match class {
        ParityClass::Mod3 => (k2 + 2 * v, l2 + 2 * u, 2 * k2, 2 * l2, 2 * sign),
        ParityClass::Mod1Odd => (k2 + 4 * v, l2 + 4 * u, 2 * k2, 2 * l2, 4 * sign),
        ParityClass::Mod1Even => {
            let (num, den) = alg3_multiplier(
                (u % 4) as u32,
                (v % 4) as u32,
                (k % 4) as u32,
                (l % 4) as u32,
            );
            let (num, den) = (num as i128, den as i128);
            (
                v + k2 * num / den,
                u + l2 * num / den,
                k2,
                l2,
                4 * sign,
            )
        }
    };
    let narrow = |x: i128| -> Result<u64> {
        u64::try_from(x).map_err(|_| {
            Error::BadL(format!("family line for ({k}, {l}) overflows a machine word"))
        })
    };
    Ok(FamilyLine {
        d1_0: narrow(d1_0)?,
        s1: narrow(s1)?,
        d2_0: narrow(d2_0)?,
        s2: narrow(s2)?,
        t: t as i8,
    })
}

/// A shifted family member, before any squarefree filtering.
#[derive(Debug, Clone)]
pub struct FamilyExtension {
    pub d1: BigUint,
    pub d2: BigUint,
    pub sf1: SquarefreeVerdict,
    pub sf2: SquarefreeVerdict,
    pub window_ok: bool,
    pub t: i8,
}

/// Move n steps along a tuple's family (n may be negative). The Pell
/// identity survives by construction; squarefree verdicts and the window
/// are re-checked and reported, not assumed.
pub fn extend_family(base: &GenTuple, n: i64, effort: &Effort) -> Result<FamilyExtension> {
    let d1 = BigInt::from(base.d1.clone()) + BigInt::from(base.stride1()) * n;
    let d2 = BigInt::from(base.d2.clone()) + BigInt::from(base.stride2()) * n;
    if !d1.is_positive() || !d2.is_positive() {
        return Err(Error::NonPositive(format!(
            "family index {n} reaches the nonpositive pair ({d1}, {d2})"
        )));
    }
    let d1 = d1.to_biguint().expect("checked positive");
    let d2 = d2.to_biguint().expect("checked positive");
    let k = BigInt::from(base.k.clone());
    let l = BigInt::from(base.l.clone());
    debug_assert_eq!(
        &k * &k * BigInt::from(d2.clone()) - &l * &l * BigInt::from(d1.clone()),
        BigInt::from(base.t())
    );
    let window_ok = d1 < d2 && d2 <= &d1 * 3u32;
    Ok(FamilyExtension {
        sf1: is_squarefree(&d1, effort),
        sf2: is_squarefree(&d2, effort),
        window_ok,
        t: base.t(),
        d1,
        d2,
    })
}

/// How a prime-norm PWR ideal was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimePwrTag {
    /// d = 3 itself, the one d = 3 (mod 4) member.
    SpecialD3,
    /// d = p(p+4) with p prime and p+4 squarefree.
    PPlus4,
    /// d = p(p-4) with p prime and p-4 squarefree.
    PMinus4,
    /// d = pq with p < q < 3p both primes that are 3 (mod 4).
    PrimePair33,
}

/// One field with a PWR ideal of prime norm p.
#[derive(Debug, Clone)]
pub struct PrimePwrHit {
    pub p: u64,
    pub pair: PwrPair,
    pub witness: PellSolution,
    pub tag: PrimePwrTag,
}

/// All prime-norm PWR constructions with defining prime p <= limit:
/// (a) d = p(p +- 4) with the cofactor squarefree, witness (1, 1, 4);
/// (b) d = pq for primes p < q < 3p, both 3 (mod 4), the equation solvable
/// unconditionally (witnesses can be enormous, so they come from the
/// convergent solver); plus the special field d = 3. Pairs reachable more
/// than one way are emitted once, family (a) first. Sorted by (d, d1).
pub fn prime_pwr_search(limit: u64) -> Result<Vec<PrimePwrHit>> {
    if limit < 3 {
        return Err(Error::BadL(format!("limit = {limit} must be at least 3")));
    }
    let one_witness = |t: i8| PellSolution {
        k: BigUint::one(),
        l: BigUint::one(),
        t,
    };
    let mut hits = vec![PrimePwrHit {
        p: 2,
        pair: PwrPair::new(1, 3)?,
        witness: one_witness(2),
        tag: PrimePwrTag::SpecialD3,
    }];
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    seen.insert((1, 3));
    let squarefree_u64 = |n: u64| crate::arith::is_squarefree_u64(n).admissible();
    for p in (3..=limit).step_by(2) {
        if !is_prime_u64(p) {
            continue;
        }
        if squarefree_u64(p + 4) && seen.insert((p, p + 4)) {
            hits.push(PrimePwrHit {
                p,
                pair: PwrPair::new(p, p + 4)?,
                witness: one_witness(4),
                tag: PrimePwrTag::PPlus4,
            });
        }
        if p >= 7 && squarefree_u64(p - 4) && seen.insert((p - 4, p)) {
            hits.push(PrimePwrHit {
                p,
                pair: PwrPair::new(p - 4, p)?,
                witness: one_witness(4),
                tag: PrimePwrTag::PMinus4,
            });
        }
    }
    let budget = PeriodBudget::default();
    for p in (3..=limit).step_by(4) {
        // steps of 4 from 3 enumerate exactly the 3 (mod 4) residues
        if !is_prime_u64(p) {
            continue;
        }
        let mut q = p + 4;
        while q < 3 * p {
            if is_prime_u64(q) && seen.insert((p, q)) {
                let pair = PwrPair::new(p, q)?;
                let witness = solve_gpell_convergents(&pair, &budget)?.ok_or_else(|| {
                    Error::NotSolvable(format!(
                        "({p}, {q}) must be solvable; the convergent walk found nothing"
                    ))
                })?;
                hits.push(PrimePwrHit {
                    p,
                    pair,
                    witness,
                    tag: PrimePwrTag::PrimePair33,
                });
            }
            q += 4;
        }
    }
    hits.sort_by_key(|h| (h.pair.d(), h.pair.d1()));
    Ok(hits)
}

/// The number of roots of f(n) = d1(n) * d2(n) modulo p^2, in closed form:
/// 0 for p = 2, 1 when p divides k or l, otherwise 2.
pub fn wf(p: u64, k: u64, l: u64, class: ParityClass) -> u8 {
    debug_assert!(is_prime_u64(p));
    debug_assert!(validate_kl(&BigUint::from(k), &BigUint::from(l), class).is_ok());
    if p == 2 {
        0
    } else if k % p == 0 || l % p == 0 {
        1
    } else {
        2
    }
}

/// Brute-force verifier for [`wf`]: literally count the roots of the family
/// product modulo p^2 over one full period.
pub fn wf_count_brute(p: u64, k: u64, l: u64, class: ParityClass) -> Result<u64> {
    let line = family_line(k, l, class)?;
    let m = p * p;
    let (d1_0, s1, d2_0, s2) = (line.d1_0 % m, line.s1 % m, line.d2_0 % m, line.s2 % m);
    let mut count = 0;
    for n in 0..m {
        let f1 = (d1_0 + s1 * n % m) % m;
        let f2 = (d2_0 + s2 * n % m) % m;
        if f1 * f2 % m == 0 {
            count += 1;
        }
    }
    Ok(count)
}

/// The squarefree density data of a family f(n) = d1(n) d2(n): the
/// truncated universal product 2 * prod_{p <= B} (1 - 2/p^2) and the exact
/// rational correction prod_{p | kl, p > 2} (p^2 - 1)/(p^2 - 2).
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub k: u64,
    pub l: u64,
    pub prime_bound: u64,
    pub constant_part: f64,
    pub correction: Ratio<BigUint>,
    pub c_f: f64,
}

pub fn cf_density(k: u64, l: u64, prime_bound: u64) -> Result<DensityReport> {
    if k == 0 || l == 0 {
        return Err(Error::BadL("k and l must be positive".into()));
    }
    if prime_bound < 3 {
        return Err(Error::BadL(format!(
            "prime bound {prime_bound} must be at least 3"
        )));
    }
    if prime_bound > 2_500_000 {
        return Err(Error::BudgetExhausted(format!(
            "prime bound {prime_bound} exceeds the sieve (max 2500000)"
        )));
    }
    let mut constant_part = 2.0f64;
    for &p in primes() {
        if p as u64 > prime_bound {
            break;
        }
        let p2 = p as f64 * p as f64;
        constant_part *= 1.0 - 2.0 / p2;
    }
    let mut odd_primes: BTreeSet<u64> = BTreeSet::new();
    for n in [k, l] {
        odd_primes.extend(factor_u64(n).into_iter().map(|(p, _)| p).filter(|&p| p > 2));
    }
    let mut correction: Ratio<BigUint> = Ratio::one();
    for p in odd_primes {
        let p2 = BigUint::from(p) * BigUint::from(p);
        correction *= Ratio::new(&p2 - 1u32, &p2 - 2u32);
    }
    let c_f = constant_part * correction.to_f64().expect("small rational");
    Ok(DensityReport {
        k,
        l,
        prime_bound,
        constant_part,
        correction,
        c_f,
    })
}
