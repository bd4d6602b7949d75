//! Well-rounded ideals of real quadratic fields and the principal
//! well-rounded (PWR) pair machinery.
//!
//! An ideal of norm a is well rounded exactly when a | disc,
//! sqrt(disc/3) <= a <= sqrt(3 disc) (closed on both ends; d = 3 realizes
//! both boundaries) and 4a | (disc - a^2). The PWR construction takes a
//! coprime split d = d1*d2 with d1 < d2 <= 3*d1 and builds the ideal pair
//! I1, I2 of norms 2*d1, 2*d2 (d = 3 mod 4) or d1, d2 (d = 1 mod 4).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::Signed;

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::pell::PellSolution;
use crate::quadfield::{
    canonical_ideal, AngleCos, DeltaKind, IdealRep, QuadField, QuadInt,
};

/// A valid split d = d1 * d2: coprime, squarefree, odd, with
/// d1 < d2 <= 3*d1 (equality only for (1, 3)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PwrPair {
    d1: u64,
    d2: u64,
    field: QuadField,
}

impl PwrPair {
    pub fn new(d1: u64, d2: u64) -> Result<PwrPair> {
        if d1 == 0 {
            return Err(Error::BadPair("d1 must be positive".into()));
        }
        let d = d1
            .checked_mul(d2)
            .ok_or_else(|| Error::BadPair(format!("{d1}*{d2} overflows")))?;
        if d % 2 == 0 {
            return Err(Error::BadPair(format!("d = {d} must be odd")));
        }
        if d1 >= d2 {
            return Err(Error::BadPair(format!("need d1 < d2, got ({d1}, {d2})")));
        }
        let triple = d1
            .checked_mul(3)
            .ok_or_else(|| Error::BadPair(format!("3*{d1} overflows")))?;
        if d2 > triple {
            return Err(Error::BadPair(format!(
                "window violated: {d2} > 3*{d1}"
            )));
        }
        // squarefree d also rules out d2 = 3*d1 for d1 > 1 and any common
        // factor of d1, d2
        let field = QuadField::new(d)?;
        Ok(PwrPair { d1, d2, field })
    }

    pub fn d1(&self) -> u64 {
        self.d1
    }

    pub fn d2(&self) -> u64 {
        self.d2
    }

    pub fn d(&self) -> u64 {
        self.field.d()
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    /// Exact cosine of the angle of the (similar) lattices I1, I2.
    pub fn angle_cos(&self) -> AngleCos {
        AngleCos::from_split(self.d1, self.d2)
    }

    /// Lattice similarity is exact equality of angle cosines.
    pub fn is_similar(&self, other: &PwrPair) -> bool {
        self.angle_cos() == other.angle_cos()
    }

    /// Only (1, 3) reaches cos = 1/2, the hexagonal angle.
    pub fn is_hexagonal(&self) -> bool {
        self.angle_cos().is_hexagonal()
    }
}

/// The well-rounded ideals of a field, sorted by norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrIdealList {
    field: QuadField,
    entries: Vec<IdealRep>,
}

impl WrIdealList {
    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn entries(&self) -> &[IdealRep] {
        &self.entries
    }

    pub fn norms(&self) -> Vec<u64> {
        self.entries.iter().map(|i| i.a()).collect()
    }
}

/// All WR ideals: divisors a of disc in the closed window
/// [sqrt(disc/3), sqrt(3 disc)] with 4a | (disc - a^2), each materialized as
/// the canonical ideal with b = a. Empty for every d = 2 (mod 4).
pub fn enumerate_wr(field: QuadField) -> WrIdealList {
    let disc = field.disc();
    let mut divisors = vec![1u64];
    for (p, e) in factor_u64(disc) {
        let base = divisors.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divisors.extend(base.iter().map(|v| v * pe));
        }
    }
    divisors.sort_unstable();
    let entries = divisors
        .into_iter()
        .filter(|&a| {
            let a2 = a as u128 * a as u128;
            // sqrt(disc/3) <= a <= sqrt(3 disc), both ends closed
            a2 >= (disc as u128).div_ceil(3) && a2 <= 3 * disc as u128
        })
        .filter(|&a| {
            let r = (disc as i128 - (a as i128) * (a as i128)).rem_euclid(4 * a as i128);
            r == 0
        })
        .map(|a| {
            canonical_ideal(field, a, a as i64, 1)
                .expect("the WR criterion is exactly the ideal condition")
        })
        .collect();
    WrIdealList { field, entries }
}

/// All coprime splits d = d1*d2 with d1 < d2 <= 3*d1: divisors of d in the
/// open interval (sqrt(d/3), sqrt(d)), plus the special split (1, 3) of
/// d = 3. Requires odd squarefree d > 1.
pub fn split_candidates(d: u64) -> Result<Vec<PwrPair>> {
    if d < 2 {
        return Err(Error::DTooSmall(BigUint::from(d)));
    }
    if d % 2 == 0 {
        return Err(Error::BadPair(format!("d = {d} must be odd")));
    }
    // constructing the field validates squarefreeness once
    QuadField::new(d)?;
    let mut out = Vec::new();
    if d == 3 {
        out.push(PwrPair::new(1, 3)?);
    }
    let mut d1 = 1u64;
    while (d1 as u128) * (d1 as u128) < d as u128 {
        if d % d1 == 0 && 3 * (d1 as u128) * (d1 as u128) > d as u128 {
            out.push(PwrPair::new(d1, d / d1)?);
        }
        d1 += 1;
    }
    Ok(out)
}

/// The canonical PWR ideal pair: norms (2*d1, 2*d2) for d = 3 (mod 4),
/// (d1, d2) for d = 1 (mod 4).
pub fn build_pwr_ideals(pair: &PwrPair) -> (IdealRep, IdealRep) {
    let f = pair.field();
    let make = |di: u64| {
        let a = if f.d() % 4 == 1 { di } else { 2 * di };
        canonical_ideal(f, a, a as i64, 1).expect("pair ideals always satisfy the divisibility")
    };
    (make(pair.d1()), make(pair.d2()))
}

/// The closed-form minimal basis of Lambda(I_which) and its minimum:
/// (d_i + sqrt(d), d_i - sqrt(d)) with minimum 2(d_i^2 + d) for d = 3 (mod 4),
/// halved elements and minimum (d_i^2 + d)/2 for d = 1 (mod 4).
pub fn minimal_basis(pair: &PwrPair, which: u8) -> (QuadInt, QuadInt, BigInt) {
    assert!(which == 1 || which == 2, "which selects I1 or I2");
    let f = pair.field();
    let di = if which == 1 { pair.d1() } else { pair.d2() };
    let di_sq_plus_d = BigInt::from(di) * BigInt::from(di) + BigInt::from(f.d());
    match f.delta_kind() {
        DeltaKind::Sqrt => {
            let e = QuadInt::from_sqrt_basis(f, di as i64, 1);
            let fv = QuadInt::from_sqrt_basis(f, di as i64, -1);
            (e, fv, di_sq_plus_d * 2)
        }
        DeltaKind::HalfOnePlusSqrt => {
            let e = QuadInt::new(f, (di as i64 - 1) / 2, 1);
            let fv = QuadInt::new(f, (di as i64 + 1) / 2, -1);
            (e, fv, di_sq_plus_d / 2)
        }
    }
}

/// One ramified prime dividing a PWR ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RamifiedPrime {
    pub p: u64,
    pub ideal: IdealRep,
}

/// The prime-ideal shape of the pair: I1 and I2 as products of the unique
/// prime ideals above their ramified primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PwrFactorization {
    pub i1: Vec<RamifiedPrime>,
    pub i2: Vec<RamifiedPrime>,
}

fn prime_ideal_above(field: QuadField, p: u64) -> IdealRep {
    let (a, b) = if p == 2 {
        debug_assert!(field.d() % 4 == 3);
        (2u64, 2i64)
    } else if field.d() % 4 == 1 {
        (p, p as i64)
    } else {
        (p, 0i64)
    };
    canonical_ideal(field, a, b, 1).expect("ramified primes divide disc")
}

/// Factor I1, I2 into ramified prime ideals. For d = 3 (mod 4) both lists
/// start with the prime above 2; the split (1, 3) leaves I1 as that prime
/// alone. u64 factorization is always complete, so this cannot fail at the
/// deterministic tier; the error is part of the contract for future tiers.
pub fn factor_pwr(pair: &PwrPair) -> Result<PwrFactorization> {
    let f = pair.field();
    let shape = |di: u64| -> Vec<RamifiedPrime> {
        let mut out = Vec::new();
        if f.d() % 4 == 3 {
            out.push(RamifiedPrime {
                p: 2,
                ideal: prime_ideal_above(f, 2),
            });
        }
        for (p, e) in factor_u64(di) {
            debug_assert_eq!(e, 1, "pair components are squarefree");
            out.push(RamifiedPrime {
                p,
                ideal: prime_ideal_above(f, p),
            });
        }
        out
    };
    Ok(PwrFactorization {
        i1: shape(pair.d1()),
        i2: shape(pair.d2()),
    })
}

/// Turn a Pell witness k^2 d2 - l^2 d1 = t into an explicit generator of I1:
/// alpha = d1*l - k*sqrt(d) for d = 3 (mod 4), or
/// beta = ((l*d1 - k)/2) + k*delta for d = 1 (mod 4). The result is verified
/// to lie in I1 with |norm| = N(I1).
pub fn generator_from_pell(pair: &PwrPair, sol: &PellSolution) -> Result<QuadInt> {
    let f = pair.field();
    let d1 = BigInt::from(pair.d1());
    let d2 = BigInt::from(pair.d2());
    let k = BigInt::from(sol.k.clone());
    let l = BigInt::from(sol.l.clone());
    let t = BigInt::from(sol.t);
    let expected_abs_t = if f.d() % 4 == 1 { 4 } else { 2 };
    if t.abs() != BigInt::from(expected_abs_t) {
        return Err(Error::InvalidWitness(format!(
            "|t| must be {expected_abs_t} for d = {}, got {t}",
            f.d()
        )));
    }
    if &k * &k * &d2 - &l * &l * &d1 != t {
        return Err(Error::InvalidWitness(format!(
            "k^2 d2 - l^2 d1 != t for k={k}, l={l}, t={t}"
        )));
    }
    let alpha = match f.delta_kind() {
        DeltaKind::Sqrt => QuadInt::from_sqrt_basis(f, &d1 * &l, -&k),
        DeltaKind::HalfOnePlusSqrt => {
            let num = &l * &d1 - &k;
            if num.is_odd() {
                return Err(Error::InvalidWitness(
                    "k and l must have equal parity when d = 1 (mod 4)".into(),
                ));
            }
            QuadInt::new(f, num / 2, k.clone())
        }
    };
    let (i1, _) = build_pwr_ideals(pair);
    if alpha.norm().abs() != BigInt::from(i1.norm()) {
        return Err(Error::InvalidWitness(format!(
            "|N(alpha)| = {} != N(I1) = {}",
            alpha.norm().abs(),
            i1.norm()
        )));
    }
    if !i1.contains(&alpha) {
        return Err(Error::InvalidWitness(format!("{alpha} does not lie in I1")));
    }
    Ok(alpha)
}
