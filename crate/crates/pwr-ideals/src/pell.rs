//! Continued-fraction machinery: fundamental units, search bounds for the
//! generalized Pell equations k^2 d2 - l^2 d1 = t, two independent solvers,
//! and a reduced-cycle principality oracle.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::sqrt_exact_u128;
use crate::error::{Error, Result};
use crate::quadfield::{DeltaKind, IdealRep, QuadField, QuadInt};
use crate::wrideal::{split_candidates, PwrPair};

/// A witness for the pair equation k^2 d2 - l^2 d1 = t. |t| = 2 when
/// d = 3 (mod 4) and |t| = 4 when d = 1 (mod 4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub k: BigUint,
    pub l: BigUint,
    pub t: i8,
}

/// The smallest unit above 1, written x + y*delta on the integral basis.
/// unit_norm is (-1)^period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub x: BigInt,
    pub y: BigInt,
    pub unit_norm: i8,
    pub period: u64,
}

impl FundamentalUnit {
    pub fn element(&self, field: QuadField) -> QuadInt {
        QuadInt::new(field, self.x.clone(), self.y.clone())
    }
}

/// Caps for the continued-fraction walks. Unit and cycle computations are
/// refused outright above max_disc; walks longer than max_steps abort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodBudget {
    pub max_disc: u64,
    pub max_steps: u64,
}

impl Default for PeriodBudget {
    fn default() -> Self {
        PeriodBudget {
            max_disc: 100_000_000_000_000,
            max_steps: 100_000,
        }
    }
}

/// One state (P + sqrt(disc))/Q of a reduction walk, with Q | disc - P^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleState {
    pub p: i128,
    pub q: i128,
}

impl CycleState {
    /// Reduced: (P + sqrt(disc))/Q > 1 and its conjugate lies in (-1, 0),
    /// checked with integer arithmetic only.
    pub fn is_reduced(&self, disc: u64) -> bool {
        let s = disc.isqrt() as i128;
        self.p >= 1 && self.p <= s && self.q <= self.p + s && self.p >= s + 1 - self.q
    }

    /// The rho step to the next reduced state of the same cycle.
    pub fn step(&self, disc: u64) -> CycleState {
        let s = disc.isqrt() as i128;
        let qn = (disc as i128 - self.p * self.p) / self.q;
        let mut r = (-self.p).rem_euclid(qn);
        r += (s - r).div_euclid(qn) * qn;
        CycleState { p: r, q: qn }
    }
}

/// The fundamental unit under the default budget.
pub fn fundamental_unit(field: QuadField) -> Result<FundamentalUnit> {
    fundamental_unit_bounded(field, &PeriodBudget::default())
}

/// The fundamental unit from one full period of the continued fraction of
/// delta's irrationality: sqrt(d) for d = 2, 3 (mod 4), (1+sqrt(d))/2 for
/// d = 1 (mod 4).
pub fn fundamental_unit_bounded(
    field: QuadField,
    budget: &PeriodBudget,
) -> Result<FundamentalUnit> {
    let disc = field.disc();
    if disc > budget.max_disc {
        return Err(Error::PeriodBudgetExceeded(format!(
            "discriminant {disc} above the unit budget {}",
            budget.max_disc
        )));
    }
    let delta = disc as i128;
    let s = disc.isqrt() as i128;
    let (mut p, mut q) = (delta & 1, 2i128);
    let mut steps = 0u64;
    let over_budget = |steps: u64| -> Result<()> {
        if steps > budget.max_steps {
            Err(Error::PeriodBudgetExceeded(format!(
                "unit walk for disc {disc} exceeded {} steps",
                budget.max_steps
            )))
        } else {
            Ok(())
        }
    };
    while !(p <= s && p >= (s + 1 - q).max(q - s)) {
        let a = (p + s).div_euclid(q);
        p = a * q - p;
        q = (delta - p * p) / q;
        steps += 1;
        over_budget(steps)?;
    }
    let (p0, q0) = (p, q);
    let mut qm1 = BigUint::zero();
    let mut qm2 = BigUint::one();
    let mut period = 0u64;
    loop {
        let a = (p + s).div_euclid(q);
        let next = BigUint::from(a as u64) * &qm1 + &qm2;
        qm2 = std::mem::replace(&mut qm1, next);
        p = a * q - p;
        q = (delta - p * p) / q;
        period += 1;
        steps += 1;
        over_budget(steps)?;
        if (p, q) == (p0, q0) {
            break;
        }
    }
    // The period-end convergent gives the unit (A + B*sqrt(disc))/Q0;
    // rewrite it on the integral basis.
    let big_a = &qm1 * BigUint::from(p0 as u64) + &qm2 * BigUint::from(q0 as u64);
    let big_b = qm1;
    let q0b = BigUint::from(q0 as u64);
    let (x, xr) = (&big_a - &big_b * BigUint::from((disc & 1) as u8)).div_rem(&q0b);
    let (y, yr) = (&big_b * 2u32).div_rem(&q0b);
    debug_assert!(xr.is_zero() && yr.is_zero());
    let (x, y) = (BigInt::from(x), BigInt::from(y));
    let n = QuadInt::new(field, x.clone(), y.clone()).norm();
    let unit_norm: i8 = if n == BigInt::one() { 1 } else { -1 };
    assert!(
        n.abs() == BigInt::one() && (unit_norm == 1) == (period % 2 == 0),
        "unit walk for d = {} produced norm {n} at period {period}",
        field.d()
    );
    Ok(FundamentalUnit {
        x,
        y,
        unit_norm,
        period,
    })
}

/// Scan bounds k_max, l_max for the pair equation, derived from the unit:
/// any solution has k <= (sqrt(e) + 1/sqrt(e))/sqrt(c*d2) with c = 2 for
/// d = 3 (mod 4) and c = 1 for d = 1 (mod 4), and symmetrically for l.
/// All rounding is outward, so the true bound is never undercut.
pub fn pell_bounds(pair: &PwrPair, unit: &FundamentalUnit) -> (BigUint, BigUint) {
    let field = pair.field();
    let (mut x, mut y) = (unit.x.clone(), unit.y.clone());
    if unit.unit_norm == -1 {
        // square the unit so the bound argument applies to a norm-one unit
        let d = BigInt::from(field.d());
        match field.delta_kind() {
            DeltaKind::Sqrt => {
                let nx = &x * &x + &d * &y * &y;
                let ny = &x * &y * 2;
                (x, y) = (nx, ny);
            }
            DeltaKind::HalfOnePlusSqrt => {
                let w = (&d - 1) / 4;
                let nx = &x * &x + &w * &y * &y;
                let ny = &x * &y * 2 + &y * &y;
                (x, y) = (nx, ny);
            }
        }
    }
    let s = BigInt::from(field.d().isqrt());
    // integer upper bound for the norm-one unit itself
    let e1 = match field.delta_kind() {
        DeltaKind::Sqrt => &x + &y * (&s + 1),
        DeltaKind::HalfOnePlusSqrt => &x + (&y * (&s + 2) + 1) / 2,
    };
    let c: u32 = if field.d() % 4 == 1 { 1 } else { 2 };
    // (sqrt(e) + 1/sqrt(e))^2 = e + 2 + 1/e < e1 + 3
    let bound = |di: u64| -> BigUint {
        let q: BigInt = (&e1 + 3) / (BigInt::from(c) * BigInt::from(di));
        q.to_biguint().expect("unit exceeds 1").sqrt()
    };
    (bound(pair.d2()), bound(pair.d1()))
}

/// Exhaustive scan for the smallest witness with k <= k_max, in
/// (k, |t|) lexicographic order. With a bound from pell_bounds, None means
/// the pair equation has no solution at all.
pub fn solve_gpell(pair: &PwrPair, k_max: &BigUint) -> Option<PellSolution> {
    let cap = k_max.to_u64().unwrap_or(u64::MAX);
    if cap == 0 {
        return None;
    }
    let d1 = pair.d1();
    let d2 = pair.d2();
    let c: u64 = if pair.d() % 4 == 1 { 4 } else { 2 };
    let two_d2_mod = ((2 * d2 as u128) % d1 as u128) as u64;
    let target_plus = c % d1;
    let target_minus = (d1 - target_plus) % d1;
    // kk tracks k^2*d2, kk_mod and inc_mod track it and its increment
    // modulo d1 with conditional subtraction only
    let mut kk: u128 = d2 as u128;
    let mut inc: u128 = 3 * d2 as u128;
    let mut kk_mod = d2 % d1;
    let mut inc_mod = ((3 * d2 as u128) % d1 as u128) as u64;
    let mut k: u64 = 1;
    let witness = |k: u64, l: u128, t: i8| -> Option<PellSolution> {
        debug_assert_eq!(
            BigInt::from(k) * k * d2 - BigInt::from(l) * l * d1,
            BigInt::from(t)
        );
        Some(PellSolution {
            k: BigUint::from(k),
            l: BigUint::from(l),
            t,
        })
    };
    loop {
        if kk_mod == target_plus && kk > c as u128 {
            if let Some(l) = sqrt_exact_u128((kk - c as u128) / d1 as u128) {
                return witness(k, l, c as i8);
            }
        }
        if kk_mod == target_minus {
            if let Some(l) = sqrt_exact_u128((kk + c as u128) / d1 as u128) {
                return witness(k, l, -(c as i8));
            }
        }
        if k == cap {
            return None;
        }
        k += 1;
        kk = kk.checked_add(inc)?;
        inc = inc.checked_add(2 * d2 as u128)?;
        kk_mod += inc_mod;
        if kk_mod >= d1 {
            kk_mod -= d1;
        }
        inc_mod += two_d2_mod;
        if inc_mod >= d1 {
            inc_mod -= d1;
        }
    }
}

/// Witness search through the continued fraction of sqrt(d2/d1): walks one
/// full period collecting every convergent whose tail state hits a target
/// denominator, and returns the (k, |t|) minimum. A direct scan of k <= 1000
/// runs first, which also covers the small fields where the convergent
/// criterion is not exhaustive. Unlike solve_gpell this needs no unit, so it
/// stays cheap when the regulator is huge.
pub fn solve_gpell_convergents(
    pair: &PwrPair,
    budget: &PeriodBudget,
) -> Result<Option<PellSolution>> {
    if let Some(sol) = solve_gpell(pair, &BigUint::from(1000u32)) {
        return Ok(Some(sol));
    }
    let d = pair.d();
    let disc = pair.field().disc();
    if disc > budget.max_disc {
        return Err(Error::PeriodBudgetExceeded(format!(
            "discriminant {disc} above the convergent budget {}",
            budget.max_disc
        )));
    }
    let tsign: i8 = if d % 4 == 1 { 4 } else { 2 };
    let targets: &[i128] = if d % 4 == 1 { &[4, 1] } else { &[2] };
    let s = d.isqrt() as i128;
    let dd = d as i128;
    let big_d1 = BigInt::from(pair.d1());
    let big_d2 = BigInt::from(pair.d2());
    let mut state = CycleState {
        p: 0,
        q: pair.d1() as i128,
    };
    let (mut pm1, mut pm2) = (BigUint::one(), BigUint::zero());
    let (mut qm1, mut qm2) = (BigUint::zero(), BigUint::one());
    let mut seen = HashSet::new();
    seen.insert(state);
    let mut best: Option<PellSolution> = None;
    for _ in 0..budget.max_steps {
        let a = (state.p + s).div_euclid(state.q);
        let pn = BigUint::from(a as u64) * &pm1 + &pm2;
        let qn = BigUint::from(a as u64) * &qm1 + &qm2;
        pm2 = std::mem::replace(&mut pm1, pn);
        qm2 = std::mem::replace(&mut qm1, qn);
        let p_next = a * state.q - state.p;
        state = CycleState {
            p: p_next,
            q: (dd - p_next * p_next) / state.q,
        };
        if targets.contains(&state.q) {
            let kb = BigInt::from(qm1.clone());
            let lb = BigInt::from(pm1.clone());
            let chk = &kb * &kb * &big_d2 - &lb * &lb * &big_d1;
            let cand = if chk.abs() == BigInt::from(tsign) {
                Some(PellSolution {
                    k: qm1.clone(),
                    l: pm1.clone(),
                    t: if chk.is_positive() { tsign } else { -tsign },
                })
            } else if tsign == 4 && chk.abs() == BigInt::one() {
                // an all-even witness: double a unit-level convergent
                Some(PellSolution {
                    k: &qm1 * 2u32,
                    l: &pm1 * 2u32,
                    t: if chk.is_positive() { 4 } else { -4 },
                })
            } else {
                None
            };
            if let Some(c) = cand {
                if best.as_ref().is_none_or(|b| c.k < b.k) {
                    best = Some(c);
                }
            }
        }
        if !seen.insert(state) {
            return Ok(best);
        }
    }
    Err(Error::PeriodBudgetExceeded(format!(
        "convergent walk for ({}, {}) exceeded {} steps",
        pair.d1(),
        pair.d2(),
        budget.max_steps
    )))
}

/// Principality of a primitive ideal by the classical method: rho-reduce,
/// then walk the cycle of reduced states; the ideal is principal exactly
/// when the unit state (Q = 2, i.e. lead coefficient 1) appears. Shares no
/// code with the Pell solvers, so it serves as an independent oracle.
pub fn is_principal_cycle(ideal: &IdealRep, budget: &PeriodBudget) -> Result<bool> {
    if ideal.m() != 1 {
        return Err(Error::NotAnIdeal(
            "the principality walk needs a primitive ideal (m = 1)".into(),
        ));
    }
    let disc = ideal.field().disc();
    if disc > budget.max_disc {
        return Err(Error::PeriodBudgetExceeded(format!(
            "discriminant {disc} above the cycle budget {}",
            budget.max_disc
        )));
    }
    let delta = disc as i128;
    let s = disc.isqrt() as i128;
    let mut a = ideal.a() as i128;
    let mut b = ideal.b() as i128;
    let reduced =
        |a: i128, b: i128| b >= 1 && b <= s && b >= s + 1 - 2 * a.abs() && 2 * a.abs() <= b + s;
    let mut steps = 0u64;
    while !reduced(a, b) {
        let c = (b * b - delta) / (4 * a);
        let ac = c.abs();
        let mut r = (-b).rem_euclid(2 * ac);
        if ac > s {
            if r > ac {
                r -= 2 * ac;
            }
        } else {
            r += (s - r).div_euclid(2 * ac) * (2 * ac);
        }
        a = c;
        b = r;
        steps += 1;
        if steps > budget.max_steps {
            return Err(Error::PeriodBudgetExceeded(format!(
                "reduction of {ideal} exceeded {} steps",
                budget.max_steps
            )));
        }
    }
    let start = CycleState {
        p: b,
        q: 2 * a.abs(),
    };
    debug_assert!(start.is_reduced(disc));
    let mut state = start;
    loop {
        if state.q == 2 {
            return Ok(true);
        }
        state = state.step(disc);
        steps += 1;
        if steps > budget.max_steps {
            return Err(Error::PeriodBudgetExceeded(format!(
                "cycle walk for {ideal} exceeded {} steps",
                budget.max_steps
            )));
        }
        if state == start {
            return Ok(false);
        }
    }
}

/// Decide whether Q(sqrt(d)) has principal well-rounded ideals: try every
/// split candidate in order and return the first with a solvable pair
/// equation. Sound and complete given the unit-derived scan bounds.
pub fn has_pwr(d: u64) -> Result<Option<(PwrPair, PellSolution)>> {
    let splits = split_candidates(d)?;
    if splits.is_empty() {
        return Ok(None);
    }
    let unit = fundamental_unit(splits[0].field())?;
    for pair in splits {
        let (k_max, _) = pell_bounds(&pair, &unit);
        if let Some(sol) = solve_gpell(&pair, &k_max) {
            return Ok(Some((pair, sol)));
        }
    }
    Ok(None)
}
