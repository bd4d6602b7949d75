//! Arbitrary-precision integer utilities: extended Euclid with a canonical
//! Bezout normalization, integer roots, bounded factorization, and tiered
//! squarefree testing.
//!
//! Everything here is deterministic for a fixed [`Effort`]; the "randomized"
//! factoring rounds derive their parameters from the input value and the
//! effort seed, so reruns are bit-identical.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division primes cover the cube root of any u64, so the u64
/// squarefree test is fully deterministic.
const SIEVE_LIMIT: usize = 2_650_000;

/// Shared prime table up to [`SIEVE_LIMIT`].
pub fn primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut out = Vec::with_capacity(200_000);
        for p in 2..=SIEVE_LIMIT {
            if composite[p] {
                continue;
            }
            out.push(p as u32);
            let mut q = p * p;
            while q <= SIEVE_LIMIT {
                composite[q] = true;
                q += p;
            }
        }
        out
    })
}

/// Deterministic xorshift-style generator used for factoring parameters and
/// reproducible sampling in tests.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

// ---------------------------------------------------------------------------
// roots

/// Floor square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Does n have an exact integer square root?
pub fn is_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_square_u64(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

/// Quadratic-residue table mod 256; rejects most non-squares with one lookup.
static SQUARE_MOD_256: [bool; 256] = {
    let mut t = [false; 256];
    let mut i = 0usize;
    while i < 256 {
        t[(i * i) % 256] = true;
        i += 1;
    }
    t
};

/// Exact square root of a u128 if one exists.
pub fn sqrt_exact_u128(n: u128) -> Option<u128> {
    if !SQUARE_MOD_256[(n & 0xff) as usize] {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

// ---------------------------------------------------------------------------
// extended gcd, canonical Bezout form

/// Extended Euclid on positive inputs, normalized so that `|x| <= b/(2 gcd)`
/// with ties broken toward `x >= 0`. Returns `(gcd, x, y)` with
/// `a*x + b*y = gcd`. The normalization makes every downstream generator
/// deterministic.
pub fn ext_gcd_canonical(a: &BigUint, b: &BigUint) -> (BigUint, BigInt, BigInt) {
    assert!(
        !a.is_zero() && !b.is_zero(),
        "ext_gcd_canonical requires positive inputs"
    );
    let ai = BigInt::from(a.clone());
    let bi = BigInt::from(b.clone());
    let eg = ai.extended_gcd(&bi);
    let g = eg.gcd;
    debug_assert!(g.is_positive());
    let x = canonical_coefficient(eg.x, &ai, &bi, &g);
    let y = (&g - &ai * &x) / &bi;
    (g.to_biguint().expect("gcd of positive values"), x, y)
}

/// Reduce x into the minimal-magnitude residue modulo b/g, ties to the
/// nonnegative representative.
fn canonical_coefficient(x: BigInt, _a: &BigInt, b: &BigInt, g: &BigInt) -> BigInt {
    let step = b / g;
    let mut r = x.mod_floor(&step);
    if &r * 2 > step {
        r -= &step;
    }
    r
}

/// i128 twin of [`ext_gcd_canonical`] for hot scan loops. Caller guarantees
/// a, b < 2^62 so intermediate products fit.
pub(crate) fn ext_gcd_canonical_i128(a: i128, b: i128) -> (i128, i128, i128) {
    debug_assert!(a > 0 && b > 0);
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    let step = b / r0;
    let mut x = s0.rem_euclid(step);
    if 2 * x > step {
        x -= step;
    }
    let y = (r0 - a * x) / b;
    (r0, x, y)
}

// ---------------------------------------------------------------------------
// Bezout pairs for the generator algorithms

/// Solution data for `k^2 g + l^2 h = target`, in the canonical
/// (minimal `|g|`) form, together with the unsigned pair `u = |g|`,
/// `v = |h|` and the sign of `k^2 u - l^2 v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutPair {
    pub g: BigInt,
    pub h: BigInt,
    pub u: BigUint,
    pub v: BigUint,
    pub sign: i8,
    pub target: u32,
}

/// Solve `k^2 g + l^2 h = target` for `target` in {1, 4}, canonically.
pub fn bezout_squares(k: &BigUint, l: &BigUint, target: u32) -> Result<BezoutPair> {
    assert!(target == 1 || target == 4, "target must be 1 or 4");
    assert!(!k.is_zero() && !l.is_zero());
    let a = BigInt::from(k * k);
    let b = BigInt::from(l * l);
    let (g0, x0, _) = ext_gcd_canonical(&k.clone().pow(2), &l.clone().pow(2));
    let g0 = BigInt::from(g0);
    let t = BigInt::from(target);
    if !(&t % &g0).is_zero() {
        return Err(Error::NotSolvable(format!(
            "gcd({k}^2, {l}^2) = {g0} does not divide {target}"
        )));
    }
    let scale = &t / &g0;
    // rescaling can leave the first coefficient non-minimal, so reduce again
    let g = canonical_coefficient(x0 * scale, &a, &b, &g0);
    let h = (&t - &a * &g) / &b;
    let u = g.magnitude().clone();
    let v = h.magnitude().clone();
    let lhs = &a * BigInt::from(u.clone()) - &b * BigInt::from(v.clone());
    let sign = if lhs == t {
        1
    } else if lhs == -&t {
        -1
    } else {
        unreachable!("k^2 u - l^2 v must be +-target, got {lhs}");
    };
    Ok(BezoutPair {
        g,
        h,
        u,
        v,
        sign,
        target,
    })
}

/// i128 twin of [`bezout_squares`], returning (u, v, sign). Must follow the
/// same canonicalization step for step, so the two paths emit identical
/// families. Caller guarantees k, l < 2^31. None when gcd does not divide.
pub(crate) fn bezout_squares_i128(k: i128, l: i128, target: i128) -> Option<(i128, i128, i8)> {
    debug_assert!(k > 0 && l > 0 && (target == 1 || target == 4));
    let a = k * k;
    let b = l * l;
    let (g0, x0, _) = ext_gcd_canonical_i128(a, b);
    if target % g0 != 0 {
        return None;
    }
    let step = b / g0;
    let mut g = (x0 * (target / g0)).rem_euclid(step);
    if 2 * g > step {
        g -= step;
    }
    let h = (target - a * g) / b;
    let (u, v) = (g.abs(), h.abs());
    let lhs = a * u - b * v;
    debug_assert!(lhs == target || lhs == -target);
    Some((u, v, if lhs == target { 1 } else { -1 }))
}

// ---------------------------------------------------------------------------
// primality (u64 deterministic, big probable)

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12-base set is exact below 2^64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first 25 prime bases. Deterministic; for values
/// above 2^64 the verdict is probabilistic in principle.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'base: for a in [
        2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
        83, 89, 97,
    ] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// factoring

fn addmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn brent_rho_u64(n: u64, salt: u64) -> u64 {
    debug_assert!(n > 3 && !is_prime_u64(n) && n % 2 == 1);
    let mut rng = SplitMix64::new(n ^ salt.wrapping_mul(0xa076_1d64_78bd_642f));
    loop {
        let c = rng.next_u64() % (n - 2) + 1;
        let mut y = rng.next_u64() % n;
        let step = |v: u64| addmod_u64(mulmod_u64(v, v, n), c, n);
        let m = 128u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let mut x;
        let mut ys = y;
        loop {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = step(y);
                    q = mulmod_u64(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            g = 1;
            while g == 1 {
                ys = step(ys);
                g = gcd_u64(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Complete prime factorization of a u64, sorted by prime.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    for &p in primes().iter().take(512) {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![m];
    while let Some(v) = stack.pop() {
        if v == 1 {
            continue;
        }
        if is_prime_u64(v) {
            match out.iter_mut().find(|(p, _)| *p == v) {
                Some((_, e)) => *e += 1,
                None => out.push((v, 1)),
            }
            continue;
        }
        let f = brent_rho_u64(v, 0);
        stack.push(f);
        stack.push(v / f);
    }
    out.sort_unstable();
    out
}

/// Effort tier for factorization-backed operations: a trial-division bound
/// plus a bounded number of rho rounds, each with an iteration cap. The
/// seed only perturbs rho parameters; results below the deterministic
/// threshold (2^64) never depend on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Effort {
    pub trial_bound: u64,
    pub rho_rounds: u32,
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Effort {
    /// Cheap tier for interactive use and very large inputs.
    pub fn fast() -> Self {
        Effort {
            trial_bound: 10_000,
            rho_rounds: 16,
            rho_iterations: 20_000,
            seed: 0,
        }
    }

    /// Thorough tier: full trial division over the prime table prefix and
    /// longer rho rounds.
    pub fn full() -> Self {
        Effort {
            trial_bound: 1_000_000,
            rho_rounds: 64,
            rho_iterations: 500_000,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl Default for Effort {
    fn default() -> Self {
        Effort::fast()
    }
}

/// One multiplicative piece of a partial factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorTerm {
    pub value: BigUint,
    pub exponent: u32,
    /// True when the piece passed the primality test (exact below 2^64).
    pub is_prime: bool,
}

/// Multiset of pairwise-coprime factors whose product is the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub terms: Vec<FactorTerm>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.terms.iter().all(|t| t.is_prime)
    }

    pub fn product(&self) -> BigUint {
        let mut acc = BigUint::one();
        for t in &self.terms {
            acc *= t.value.pow(t.exponent);
        }
        acc
    }
}

fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for &e in primes() {
        if e > bits {
            break;
        }
        let r = n.nth_root(e);
        if r.pow(e) == *n {
            return Some((r, e));
        }
        if e > 2 && r.to_u64() == Some(1) {
            break;
        }
    }
    None
}

fn brent_rho_big(n: &BigUint, seed: u64, max_iters: u64) -> Option<BigUint> {
    let mut rng = SplitMix64::new(seed);
    let one = BigUint::one();
    let c = BigUint::from(rng.next_u64()) % n + &one;
    let mut y = BigUint::from(rng.next_u64()) % n;
    let step = |v: &BigUint| (v * v + &c) % n;
    let m = 64u64;
    let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
    let mut x;
    let mut ys = y.clone();
    let mut used = 0u64;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        used += r;
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = q * diff % n;
            }
            g = q.gcd(n);
            k += m;
        }
        used += r.min(k);
        r *= 2;
        if g != one {
            break;
        }
        if used > max_iters {
            return None;
        }
    }
    if &g == n {
        g = one.clone();
        let mut guard = 0u64;
        while g == one {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            guard += 1;
            if guard > max_iters {
                return None;
            }
        }
    }
    if &g == n || g == one {
        None
    } else {
        Some(g)
    }
}

fn seed_for(n: &BigUint, effort: &Effort, round: u32) -> u64 {
    let low = n.iter_u64_digits().next().unwrap_or(0);
    let mut s = SplitMix64::new(low ^ effort.seed ^ ((n.bits() as u64) << 32));
    let mut v = 0;
    for _ in 0..=round {
        v = s.next_u64();
    }
    v
}

/// Factor `n` with bounded effort. Every returned term divides `n`, the
/// product over terms (with exponents) is exactly `n`, terms are pairwise
/// coprime, and unresolved composites are flagged rather than hidden.
pub fn factor(n: &BigUint, effort: &Effort) -> Factorization {
    assert!(!n.is_zero(), "factor requires n >= 1");
    if let Some(small) = n.to_u64() {
        let terms = factor_u64(small)
            .into_iter()
            .map(|(p, e)| FactorTerm {
                value: BigUint::from(p),
                exponent: e,
                is_prime: true,
            })
            .collect();
        return Factorization { terms };
    }

    let mut terms: Vec<FactorTerm> = Vec::new();
    let mut m = n.clone();
    for &p in primes() {
        let p = p as u64;
        if p > effort.trial_bound {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0u32;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            terms.push(FactorTerm {
                value: BigUint::from(p),
                exponent: e,
                is_prime: true,
            });
        }
    }

    let mut rounds_left = effort.rho_rounds;
    let mut pending: Vec<(BigUint, u32)> = vec![(m, 1)];
    while let Some((v, exp)) = pending.pop() {
        if v.is_one() {
            continue;
        }
        if let Some(small) = v.to_u64() {
            for (p, e) in factor_u64(small) {
                push_term(&mut terms, BigUint::from(p), e * exp, true);
            }
            continue;
        }
        if is_probable_prime(&v) {
            push_term(&mut terms, v, exp, true);
            continue;
        }
        if let Some((root, e)) = perfect_power(&v) {
            pending.push((root, exp * e));
            continue;
        }
        if rounds_left > 0 {
            rounds_left -= 1;
            let round = effort.rho_rounds - rounds_left;
            if let Some(f) = brent_rho_big(&v, seed_for(&v, effort, round), effort.rho_iterations)
            {
                let w = &v / &f;
                pending.push((f, exp));
                pending.push((w, exp));
                continue;
            }
        }
        push_term(&mut terms, v, exp, false);
    }

    refine_coprime(&mut terms);
    terms.sort_by(|a, b| a.value.cmp(&b.value));
    Factorization { terms }
}

fn push_term(terms: &mut Vec<FactorTerm>, value: BigUint, exponent: u32, is_prime: bool) {
    if let Some(t) = terms.iter_mut().find(|t| t.value == value) {
        t.exponent += exponent;
        t.is_prime = t.is_prime || is_prime;
        return;
    }
    terms.push(FactorTerm {
        value,
        exponent,
        is_prime,
    });
}

/// Make term values pairwise coprime by splitting along common gcds. This is
/// what lets a squarefree test see a repeated prime hiding in two different
/// composite pieces.
fn refine_coprime(terms: &mut Vec<FactorTerm>) {
    let mut guard = 0;
    loop {
        guard += 1;
        assert!(guard < 10_000, "coprime refinement failed to settle");
        let mut split: Option<(usize, usize, BigUint)> = None;
        'outer: for i in 0..terms.len() {
            for j in (i + 1)..terms.len() {
                let g = terms[i].value.gcd(&terms[j].value);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let ti = terms[i].clone();
        let tj = terms[j].clone();
        let qi = &ti.value / &g;
        let qj = &tj.value / &g;
        terms.remove(j);
        terms.remove(i);
        let g_prime = is_probable_prime(&g);
        push_term(terms, g.clone(), ti.exponent + tj.exponent, g_prime);
        if !qi.is_one() {
            push_term(terms, qi.clone(), ti.exponent, is_probable_prime(&qi));
        }
        if !qj.is_one() {
            push_term(terms, qj.clone(), tj.exponent, is_probable_prime(&qj));
        }
    }
}

// ---------------------------------------------------------------------------
// squarefree verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquarefreeStatus {
    Squarefree,
    NotSquarefree,
    /// No square divisor found, but the factorization was left incomplete at
    /// this effort, so a square divisor cannot be excluded.
    ProbablySquarefree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffortTier {
    /// Full factorization; the verdict is exact.
    Deterministic,
    /// Bounded effort; `ProbablySquarefree` is possible.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeVerdict {
    pub status: SquarefreeStatus,
    pub tier: EffortTier,
    /// For `NotSquarefree`: a witness w with w^2 dividing the input.
    pub witness: Option<BigUint>,
}

impl SquarefreeVerdict {
    fn squarefree(tier: EffortTier) -> Self {
        SquarefreeVerdict {
            status: SquarefreeStatus::Squarefree,
            tier,
            witness: None,
        }
    }

    fn not_squarefree(tier: EffortTier, witness: BigUint) -> Self {
        SquarefreeVerdict {
            status: SquarefreeStatus::NotSquarefree,
            tier,
            witness: Some(witness),
        }
    }

    /// True when no square divisor was found (including the probable case).
    pub fn admissible(&self) -> bool {
        self.status != SquarefreeStatus::NotSquarefree
    }
}

/// Deterministic squarefree test for u64: trial division to the cube root,
/// then the cofactor has at most two prime factors and is squarefull only if
/// it is a perfect square.
pub fn is_squarefree_u64(n: u64) -> SquarefreeVerdict {
    assert!(n >= 1);
    let det = EffortTier::Deterministic;
    if n == 1 {
        return SquarefreeVerdict::squarefree(det);
    }
    if n % 4 == 0 {
        return SquarefreeVerdict::not_squarefree(det, BigUint::from(2u32));
    }
    let mut m = n;
    for &p in primes() {
        let p = p as u64;
        if (p as u128) * (p as u128) * (p as u128) > m as u128 {
            break;
        }
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return SquarefreeVerdict::not_squarefree(det, BigUint::from(p));
            }
        }
    }
    if m > 1 {
        let r = m.isqrt();
        if r * r == m {
            return SquarefreeVerdict::not_squarefree(det, BigUint::from(r));
        }
    }
    SquarefreeVerdict::squarefree(det)
}

/// Tiered squarefree test: deterministic below 2^64 via full factorization,
/// bounded-effort above. `ProbablySquarefree` is surfaced, never upgraded.
pub fn is_squarefree(n: &BigUint, effort: &Effort) -> SquarefreeVerdict {
    if let Some(small) = n.to_u64() {
        return is_squarefree_u64(small);
    }
    let tier = EffortTier::Heuristic;
    let f = factor(n, effort);
    for t in &f.terms {
        if t.exponent >= 2 {
            return SquarefreeVerdict::not_squarefree(tier, t.value.clone());
        }
    }
    if f.is_complete() {
        SquarefreeVerdict::squarefree(tier)
    } else {
        SquarefreeVerdict {
            status: SquarefreeStatus::ProbablySquarefree,
            tier,
            witness: None,
        }
    }
}

/// Convenience wrapper turning a NotSquarefree verdict into an error.
pub fn require_squarefree(n: &BigUint, effort: &Effort) -> Result<SquarefreeVerdict> {
    let v = is_squarefree(n, effort);
    if v.status == SquarefreeStatus::NotSquarefree {
        return Err(Error::NotSquarefree {
            n: n.clone(),
            witness: v.witness.clone().expect("witness present"),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn ext_gcd_golden_values() {
        let cases = [
            (9u64, 25u64, 1i64, -11i64, 4i64),
            (25, 49, 1, 2, -1),
            (16, 25, 1, 11, -7),
        ];
        for (a, b, g, x, y) in cases {
            let (gg, xx, yy) = ext_gcd_canonical(&big(a), &big(b));
            assert_eq!(gg, big(g as u64), "gcd({a},{b})");
            assert_eq!(xx, BigInt::from(x), "x({a},{b})");
            assert_eq!(yy, BigInt::from(y), "y({a},{b})");
        }
    }

    #[test]
    fn ext_gcd_identity_and_bound() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..500 {
            let a = rng.next_u64() % 10_000 + 1;
            let b = rng.next_u64() % 10_000 + 1;
            let (g, x, y) = ext_gcd_canonical(&big(a), &big(b));
            assert_eq!(
                BigInt::from(a) * &x + BigInt::from(b) * &y,
                BigInt::from(g.clone())
            );
            // |x| <= b / (2 gcd), i.e. 2 |x| g <= b
            assert!(x.magnitude() * 2u32 * &g <= big(b), "bound for ({a},{b})");
        }
    }

    #[test]
    fn ext_gcd_i128_matches_big() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..500 {
            let a = rng.next_u64() % 100_000 + 1;
            let b = rng.next_u64() % 100_000 + 1;
            let (g, x, y) = ext_gcd_canonical(&big(a), &big(b));
            let (g2, x2, y2) = ext_gcd_canonical_i128(a as i128, b as i128);
            assert_eq!(BigInt::from(g), BigInt::from(g2));
            assert_eq!(x, BigInt::from(x2));
            assert_eq!(y, BigInt::from(y2));
        }
    }

    #[test]
    fn bezout_i128_matches_big() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..500 {
            let k = rng.next_u64() % 2_000 + 1;
            let l = rng.next_u64() % 2_000 + 1;
            for target in [1u32, 4] {
                let fast = bezout_squares_i128(k as i128, l as i128, target as i128);
                match bezout_squares(&big(k), &big(l), target) {
                    Ok(bz) => {
                        let (u, v, sign) = fast.expect("big path solved it");
                        assert_eq!(BigInt::from(bz.u), BigInt::from(u));
                        assert_eq!(BigInt::from(bz.v), BigInt::from(v));
                        assert_eq!(bz.sign, sign);
                    }
                    Err(_) => assert!(fast.is_none()),
                }
            }
        }
    }

    #[test]
    fn bezout_squares_golden_values() {
        let b1 = bezout_squares(&big(3), &big(5), 1).unwrap();
        assert_eq!(b1.g, BigInt::from(-11));
        assert_eq!(b1.h, BigInt::from(4));
        assert_eq!((b1.u, b1.v, b1.sign), (big(11), big(4), -1));

        let b2 = bezout_squares(&big(4), &big(6), 4).unwrap();
        assert_eq!(b2.g, BigInt::from(-2));
        assert_eq!(b2.h, BigInt::from(1));
        assert_eq!((b2.u, b2.v, b2.sign), (big(2), big(1), -1));

        let b3 = bezout_squares(&big(8), &big(10), 4).unwrap();
        assert_eq!((b3.u, b3.v, b3.sign), (big(11), big(7), 1));
    }

    #[test]
    fn bezout_squares_unsolvable() {
        assert!(matches!(
            bezout_squares(&big(4), &big(6), 1),
            Err(Error::NotSolvable(_))
        ));
    }

    #[test]
    fn bezout_identity_random() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..300 {
            let k = rng.next_u64() % 500 + 1;
            let l = rng.next_u64() % 500 + 1;
            for target in [1u32, 4] {
                let Ok(p) = bezout_squares(&big(k), &big(l), target) else {
                    continue;
                };
                let lhs = BigInt::from(k * k) * BigInt::from(p.u.clone())
                    - BigInt::from(l * l) * BigInt::from(p.v.clone());
                assert_eq!(lhs, BigInt::from(p.sign) * BigInt::from(target));
                let direct =
                    BigInt::from(k * k) * &p.g + BigInt::from(l * l) * &p.h;
                assert_eq!(direct, BigInt::from(target));
            }
        }
    }

    #[test]
    fn isqrt_and_is_square() {
        assert_eq!(isqrt(&big(0)), big(0));
        assert_eq!(isqrt(&big(225)), big(15));
        assert!(is_square(&big(225)));
        assert_eq!(isqrt(&big(47)), big(6));
        assert!(!is_square(&big(47)));
        assert_eq!(sqrt_exact_u128(225), Some(15));
        assert_eq!(sqrt_exact_u128(226), None);
        assert_eq!(sqrt_exact_u128(0), Some(0));
    }

    #[test]
    fn factor_small_values() {
        let f = factor(&big(119), &Effort::fast());
        assert_eq!(
            f.terms.iter().map(|t| (t.value.to_u64().unwrap(), t.exponent)).collect::<Vec<_>>(),
            vec![(7, 1), (17, 1)]
        );
        let f = factor(&big(799), &Effort::fast());
        assert_eq!(
            f.terms.iter().map(|t| (t.value.to_u64().unwrap(), t.exponent)).collect::<Vec<_>>(),
            vec![(17, 1), (47, 1)]
        );
        let f = factor(&big(27), &Effort::fast());
        assert_eq!(
            f.terms.iter().map(|t| (t.value.to_u64().unwrap(), t.exponent)).collect::<Vec<_>>(),
            vec![(3, 3)]
        );
        assert!(f.is_complete());
    }

    #[test]
    fn squarefree_small_values() {
        let v = is_squarefree(&big(25), &Effort::fast());
        assert_eq!(v.status, SquarefreeStatus::NotSquarefree);
        assert_eq!(v.witness, Some(big(5)));
        assert_eq!(
            is_squarefree(&big(151), &Effort::fast()).status,
            SquarefreeStatus::Squarefree
        );
        assert_eq!(
            is_squarefree(&big(1), &Effort::fast()).status,
            SquarefreeStatus::Squarefree
        );
    }

    #[test]
    fn squarefree_u64_matches_naive_oracle_to_a_million() {
        const LIMIT: usize = 1_000_000;
        let mut squarefull = vec![false; LIMIT + 1];
        let mut i = 2usize;
        while i * i <= LIMIT {
            let ii = i * i;
            let mut q = ii;
            while q <= LIMIT {
                squarefull[q] = true;
                q += ii;
            }
            i += 1;
        }
        for n in 1..=LIMIT {
            let v = is_squarefree_u64(n as u64);
            assert_eq!(
                v.status == SquarefreeStatus::NotSquarefree,
                squarefull[n],
                "disagreement at {n}"
            );
            if let Some(w) = &v.witness {
                let w = w.to_u64().unwrap();
                assert_eq!((n as u64) % (w * w), 0, "witness {w} at {n}");
            }
        }
    }

    #[test]
    fn factor_product_roundtrip_random_128_bit() {
        let effort = Effort {
            trial_bound: 2_000,
            rho_rounds: 2,
            rho_iterations: 2_000,
            seed: 0,
        };
        let mut rng = SplitMix64::new(0xfeed);
        for _ in 0..10_000 {
            let hi = rng.next_u64() as u128;
            let lo = rng.next_u64() as u128;
            let n = (hi << 64) | lo | 1;
            let n = BigUint::from(n);
            let f = factor(&n, &effort);
            assert_eq!(f.product(), n);
            for w in f.terms.windows(2) {
                assert!(w[0].value.gcd(&w[1].value).is_one(), "coprime terms");
            }
        }
    }

    #[test]
    fn big_squarefree_catches_planted_squares() {
        // p^2 * q^5 with p, q beyond the trial bound and the product > 2^64
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_033u64);
        let planted = &p * &p * q.pow(5);
        assert!(planted.to_u64().is_none());
        let effort = Effort {
            trial_bound: 1_000,
            rho_rounds: 24,
            rho_iterations: 100_000,
            seed: 0,
        };
        let v = is_squarefree(&planted, &effort);
        assert_eq!(v.status, SquarefreeStatus::NotSquarefree);
        assert_eq!(v.tier, EffortTier::Heuristic);
        let w = v.witness.expect("square witness");
        assert!((&planted % (&w * &w)).is_zero(), "witness squared divides");
    }

    #[test]
    fn probable_prime_agrees_with_u64() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..2_000 {
            let n = rng.next_u64() % 1_000_000 + 2;
            assert_eq!(is_probable_prime(&big(n)), is_prime_u64(n), "at {n}");
        }
    }

    #[test]
    fn perfect_power_detection() {
        let n = BigUint::from(10_000_019u64).pow(6);
        let f = factor(&n, &Effort::fast());
        assert!(f.is_complete());
        assert_eq!(f.terms.len(), 1);
        assert_eq!(f.terms[0].exponent, 6);
    }
}
