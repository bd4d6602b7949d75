//! Real quadratic fields Q(sqrt(d)), their integers, canonical integral
//! ideals, the geometric embedding into the plane, and exact angle data.
//!
//! A field stores d, the discriminant, and which integral basis applies:
//! delta = sqrt(d) for d = 2, 3 (mod 4) and delta = (1+sqrt(d))/2 for
//! d = 1 (mod 4). Every quantity that feeds a similarity decision is exact
//! (big integers and reduced rationals); no floating point appears here.

use std::fmt;
use std::mem;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::arith::{is_squarefree_u64, SquarefreeStatus};
use crate::error::{Error, Result};

/// Which element generates the ring of integers over Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    /// delta = sqrt(d), for d = 2, 3 (mod 4); disc = 4d.
    Sqrt,
    /// delta = (1 + sqrt(d))/2, for d = 1 (mod 4); disc = d.
    HalfOnePlusSqrt,
}

/// A real quadratic field Q(sqrt(d)) for squarefree d > 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadField {
    d: u64,
    disc: u64,
    delta_kind: DeltaKind,
}

impl QuadField {
    /// Build the field, verifying d > 1 and squarefree (deterministic tier).
    pub fn new(d: u64) -> Result<QuadField> {
        if d < 2 {
            return Err(Error::DTooSmall(BigUint::from(d)));
        }
        let verdict = is_squarefree_u64(d);
        if verdict.status == SquarefreeStatus::NotSquarefree {
            return Err(Error::NotSquarefree {
                n: BigUint::from(d),
                witness: verdict.witness.expect("witness attached"),
            });
        }
        if d % 4 == 1 {
            Ok(QuadField {
                d,
                disc: d,
                delta_kind: DeltaKind::HalfOnePlusSqrt,
            })
        } else {
            let disc = d
                .checked_mul(4)
                .ok_or_else(|| Error::DTooLarge(BigUint::from(d)))?;
            Ok(QuadField {
                d,
                disc,
                delta_kind: DeltaKind::Sqrt,
            })
        }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Field discriminant: d when d = 1 (mod 4), else 4d.
    pub fn disc(&self) -> u64 {
        self.disc
    }

    pub fn delta_kind(&self) -> DeltaKind {
        self.delta_kind
    }

    /// disc mod 2; the parity constant in basis conversions.
    pub(crate) fn disc_parity(&self) -> i64 {
        (self.disc % 2) as i64
    }

    /// The integer one, as a field element.
    pub fn one(&self) -> QuadInt {
        QuadInt::new(*self, 1, 0)
    }

    /// sqrt(d) as a field element.
    pub fn sqrt_d(&self) -> QuadInt {
        QuadInt::from_sqrt_basis(*self, 0, 1)
    }
}

/// An algebraic integer x + y*delta of the field's ring of integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    field: QuadField,
    x: BigInt,
    y: BigInt,
}

impl QuadInt {
    pub fn new(field: QuadField, x: impl Into<BigInt>, y: impl Into<BigInt>) -> QuadInt {
        QuadInt {
            field,
            x: x.into(),
            y: y.into(),
        }
    }

    /// Interpret (a, b) as a + b*sqrt(d). In the half-integral basis this is
    /// x = a - b, y = 2b, so it is always an algebraic integer.
    pub fn from_sqrt_basis(
        field: QuadField,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
    ) -> QuadInt {
        let a = a.into();
        let b = b.into();
        match field.delta_kind() {
            DeltaKind::Sqrt => QuadInt { field, x: a, y: b },
            DeltaKind::HalfOnePlusSqrt => QuadInt {
                field,
                x: a - &b,
                y: b * 2,
            },
        }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Coefficients (a, b) with self = (a + b*sqrt(d)) / 2.
    pub fn double_sqrt_coords(&self) -> (BigInt, BigInt) {
        match self.field.delta_kind() {
            DeltaKind::Sqrt => (&self.x * 2, &self.y * 2),
            DeltaKind::HalfOnePlusSqrt => (&self.x * 2 + &self.y, self.y.clone()),
        }
    }

    pub fn trace(&self) -> BigInt {
        match self.field.delta_kind() {
            DeltaKind::Sqrt => &self.x * 2,
            DeltaKind::HalfOnePlusSqrt => &self.x * 2 + &self.y,
        }
    }

    pub fn norm(&self) -> BigInt {
        let d = BigInt::from(self.field.d());
        match self.field.delta_kind() {
            DeltaKind::Sqrt => &self.x * &self.x - d * &self.y * &self.y,
            DeltaKind::HalfOnePlusSqrt => {
                let w = (d - 1) / 4;
                &self.x * &self.x + &self.x * &self.y - w * &self.y * &self.y
            }
        }
    }

    pub fn conjugate(&self) -> QuadInt {
        match self.field.delta_kind() {
            DeltaKind::Sqrt => QuadInt {
                field: self.field,
                x: self.x.clone(),
                y: -&self.y,
            },
            DeltaKind::HalfOnePlusSqrt => QuadInt {
                field: self.field,
                x: &self.x + &self.y,
                y: -&self.y,
            },
        }
    }

    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        assert_eq!(self.field, other.field, "mixed-field product");
        let (x1, y1, x2, y2) = (&self.x, &self.y, &other.x, &other.y);
        match self.field.delta_kind() {
            DeltaKind::Sqrt => {
                let d = BigInt::from(self.field.d());
                QuadInt {
                    field: self.field,
                    x: x1 * x2 + d * y1 * y2,
                    y: x1 * y2 + x2 * y1,
                }
            }
            DeltaKind::HalfOnePlusSqrt => {
                // delta^2 = delta + (d-1)/4
                let w = (BigInt::from(self.field.d()) - 1) / 4;
                QuadInt {
                    field: self.field,
                    x: x1 * x2 + w * y1 * y2,
                    y: x1 * y2 + x2 * y1 + y1 * y2,
                }
            }
        }
    }

    pub fn add(&self, other: &QuadInt) -> QuadInt {
        assert_eq!(self.field, other.field, "mixed-field sum");
        QuadInt {
            field: self.field,
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }

    pub fn sub(&self, other: &QuadInt) -> QuadInt {
        assert_eq!(self.field, other.field, "mixed-field difference");
        QuadInt {
            field: self.field,
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }

    pub fn scale(&self, c: &BigInt) -> QuadInt {
        QuadInt {
            field: self.field,
            x: &self.x * c,
            y: &self.y * c,
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a2, b2) = self.double_sqrt_coords();
        let d = self.field.d();
        if b2.is_zero() {
            return write!(f, "{}", &a2 / 2);
        }
        let halved = a2.is_even() && b2.is_even();
        let (a, b) = if halved {
            (&a2 / 2, &b2 / 2)
        } else {
            (a2, b2)
        };
        let mut s = String::new();
        if !a.is_zero() {
            s.push_str(&format!("{a} "));
            s.push_str(if b.is_negative() { "- " } else { "+ " });
        } else if b.is_negative() {
            s.push('-');
        }
        let babs = b.abs();
        if babs == BigInt::from(1) {
            s.push_str(&format!("sqrt({d})"));
        } else {
            s.push_str(&format!("{babs}*sqrt({d})"));
        }
        if halved {
            write!(f, "{s}")
        } else {
            write!(f, "({s})/2")
        }
    }
}

/// Canonical representation of an integral ideal
/// m * (a Z + ((b + sqrt(disc))/2) Z), with b reduced into the window of the
/// unique-representation lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealRep {
    field: QuadField,
    m: u64,
    a: u64,
    b: i64,
}

/// Canonicalize b modulo 2a into the lemma's window and validate
/// 4a | (disc - b^2).
pub fn canonical_ideal(field: QuadField, a: u64, b: i64, m: u64) -> Result<IdealRep> {
    if a == 0 || m == 0 {
        return Err(Error::NotAnIdeal("a and m must be positive".into()));
    }
    if a > (1u64 << 62) {
        return Err(Error::NotAnIdeal(format!("a = {a} exceeds the supported range")));
    }
    let disc = field.disc() as i128;
    let two_a = 2 * a as i128;
    let s = (field.disc() as i128).isqrt();
    let mut b = (b as i128).rem_euclid(two_a);
    if (a as i128) > s {
        // window (-a, a]
        if b > a as i128 {
            b -= two_a;
        }
    } else {
        // integer window [s - 2a + 1, s]; a = sqrt(disc) cannot occur since
        // disc is never a perfect square for squarefree d > 1
        b += ((s - b).div_euclid(two_a)) * two_a;
    }
    let lhs = BigInt::from(disc) - BigInt::from(b) * BigInt::from(b);
    if !(lhs % BigInt::from(4 * a as i128)).is_zero() {
        return Err(Error::NotAnIdeal(format!(
            "4*{a} does not divide disc - b^2 for b = {b} in Q(sqrt({}))",
            field.d()
        )));
    }
    Ok(IdealRep {
        field,
        m,
        a,
        b: b as i64,
    })
}

impl IdealRep {
    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn norm(&self) -> u128 {
        self.m as u128 * self.a as u128
    }

    /// The lattice basis (m*a, m*(b + sqrt(disc))/2) in the integral basis.
    pub fn basis(&self) -> (QuadInt, QuadInt) {
        let r = self.field.disc_parity();
        let m = BigInt::from(self.m);
        let v1 = QuadInt::new(self.field, &m * BigInt::from(self.a), BigInt::zero());
        let half = BigInt::from((self.b as i128 - r as i128) / 2);
        let v2 = QuadInt::new(self.field, &m * half, m);
        (v1, v2)
    }

    /// Lattice membership via the two-generator test.
    pub fn contains(&self, e: &QuadInt) -> bool {
        if e.field() != self.field {
            return false;
        }
        let m = BigInt::from(self.m);
        if !(e.y() % &m).is_zero() {
            return false;
        }
        let r = self.field.disc_parity();
        let half = BigInt::from((self.b as i128 - r as i128) / 2);
        // x = s*m*a + t*m*half and y = t*m, so x - y*half = s*m*a
        let rem = e.x() - e.y() * half;
        (rem % (m * BigInt::from(self.a))).is_zero()
    }
}

impl fmt::Display for IdealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v1, v2) = self.basis();
        let av1 = v1.x().clone();
        write!(f, "<{av1}, {v2}>")
    }
}

/// Exact Gram data of an embedded basis: squared lengths and dot product of
/// Lambda(e), Lambda(f) where Lambda maps an element to its two real
/// embeddings. All entries are integers for integral elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramData {
    pub e_sq: BigInt,
    pub f_sq: BigInt,
    pub dot: BigInt,
}

/// ||Lambda(e)||^2 = Tr(e)^2 - 2 N(e); dot = Tr(e*f).
pub fn embed_gram(e: &QuadInt, f: &QuadInt) -> Result<GramData> {
    assert_eq!(e.field(), f.field(), "mixed-field basis");
    let det = e.x() * f.y() - f.x() * e.y();
    if det.is_zero() {
        return Err(Error::DegenerateBasis(format!(
            "elements {e} and {f} are rationally dependent"
        )));
    }
    let sq = |v: &QuadInt| {
        let t = v.trace();
        &t * &t - 2 * v.norm()
    };
    Ok(GramData {
        e_sq: sq(e),
        f_sq: sq(f),
        dot: e.mul(f).trace(),
    })
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_mod_floor(d);
    if &r * 2 > *d {
        q + 1
    } else {
        q
    }
}

/// Exact Lagrange reduction of a rank-2 lattice given by two embedded field
/// elements. Returns the lattice minimum (squared) and a reduced basis whose
/// first vector achieves it. This is the independent oracle the closed-form
/// minimal bases are checked against.
pub fn shortest_vector_oracle(e: &QuadInt, f: &QuadInt) -> Result<(BigInt, (QuadInt, QuadInt))> {
    embed_gram(e, f)?;
    let mut e = e.clone();
    let mut f = f.clone();
    loop {
        let mut g = embed_gram(&e, &f).expect("independence is preserved by unimodular steps");
        if g.e_sq > g.f_sq {
            mem::swap(&mut e, &mut f);
            mem::swap(&mut g.e_sq, &mut g.f_sq);
        }
        let t = round_div(&g.dot, &g.e_sq);
        if t.is_zero() {
            return Ok((g.e_sq, (e, f)));
        }
        f = f.sub(&e.scale(&t));
    }
}

/// Exact cosine of the lattice angle, stored as a reduced rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AngleCos(Ratio<u64>);

impl AngleCos {
    /// (d2 - d1) / (d2 + d1), the same formula for both residue classes.
    pub fn from_split(d1: u64, d2: u64) -> AngleCos {
        assert!(d1 < d2, "angle requires d1 < d2");
        AngleCos(Ratio::new(d2 - d1, d2 + d1))
    }

    pub fn value(&self) -> Ratio<u64> {
        self.0
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    /// cos = 1/2, i.e. the hexagonal angle pi/3.
    pub fn is_hexagonal(&self) -> bool {
        self.0 == Ratio::new(1, 2)
    }
}

impl fmt::Display for AngleCos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: u64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    #[test]
    fn field_constructor_cases() {
        let f5 = field(5);
        assert_eq!((f5.disc(), f5.delta_kind()), (5, DeltaKind::HalfOnePlusSqrt));
        let f3 = field(3);
        assert_eq!((f3.disc(), f3.delta_kind()), (12, DeltaKind::Sqrt));
        assert!(matches!(
            QuadField::new(12),
            Err(Error::NotSquarefree { .. })
        ));
        assert!(matches!(QuadField::new(1), Err(Error::DTooSmall(_))));
        let f2 = field(2);
        assert_eq!(f2.disc(), 8);
    }

    #[test]
    fn norms_and_traces() {
        let f15 = field(15);
        let e = QuadInt::from_sqrt_basis(f15, 3, 1);
        assert_eq!(e.norm(), BigInt::from(-6));
        assert_eq!(e.trace(), BigInt::from(6));

        let f91 = field(91);
        let g = QuadInt::from_sqrt_basis(f91, 105, -11);
        assert_eq!(g.norm(), BigInt::from(14));

        // (7 + sqrt(133))/2 = 3 + delta for delta = (1+sqrt(133))/2
        let f133 = field(133);
        let b = QuadInt::new(f133, 3, 1);
        assert_eq!(b.norm(), BigInt::from(-21));
        assert_eq!(b.trace(), BigInt::from(7));
        let (a2, b2) = b.double_sqrt_coords();
        assert_eq!((a2, b2), (BigInt::from(7), BigInt::from(1)));
    }

    #[test]
    fn conjugate_and_mul_are_consistent() {
        for d in [15u64, 21, 65, 91, 133] {
            let f = field(d);
            let e = QuadInt::new(f, 5, -3);
            let c = e.conjugate();
            // e * conj(e) is the rational integer N(e)
            let p = e.mul(&c);
            assert!(p.y().is_zero(), "d={d}");
            assert_eq!(p.x(), &e.norm(), "d={d}");
            // e + conj(e) is the rational integer Tr(e)
            let s = e.add(&c);
            assert!(s.y().is_zero(), "d={d}");
            assert_eq!(s.x(), &e.trace(), "d={d}");
            // norm is multiplicative
            let g = QuadInt::new(f, 2, 7);
            assert_eq!(e.mul(&g).norm(), e.norm() * g.norm(), "d={d}");
        }
    }

    #[test]
    fn canonical_ideal_golden_cases() {
        // Q(sqrt(3)), a=2, b=-2 canonicalizes to the norm-2 WR ideal
        let f3 = field(3);
        let i = canonical_ideal(f3, 2, -2, 1).unwrap();
        assert_eq!((i.a(), i.b(), i.m()), (2, 2, 1));
        assert_eq!(i.norm(), 2);

        let f65 = field(65);
        let i = canonical_ideal(f65, 5, 5, 1).unwrap();
        assert_eq!((i.a(), i.b()), (5, 5));

        let f2 = field(2);
        assert!(matches!(
            canonical_ideal(f2, 3, 1, 1),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn canonical_ideal_is_idempotent() {
        for d in [3u64, 15, 65, 91, 133, 1155] {
            let f = field(d);
            for a in 1..60u64 {
                for b in -40..40i64 {
                    if let Ok(i) = canonical_ideal(f, a, b, 1) {
                        let again = canonical_ideal(f, i.a(), i.b(), i.m()).unwrap();
                        assert_eq!(i, again, "d={d} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_basis_and_membership() {
        let f15 = field(15);
        let i = canonical_ideal(f15, 6, 6, 1).unwrap();
        let (v1, v2) = i.basis();
        assert_eq!((v1.x().clone(), v1.y().clone()), (6.into(), 0.into()));
        assert_eq!((v2.x().clone(), v2.y().clone()), (3.into(), 1.into()));
        assert!(i.contains(&QuadInt::from_sqrt_basis(f15, 3, 1)));
        assert!(i.contains(&QuadInt::from_sqrt_basis(f15, -3, 5)));
        assert!(!i.contains(&QuadInt::from_sqrt_basis(f15, 1, 0)));
    }

    #[test]
    fn membership_with_nontrivial_scalar() {
        // 2 * <2, (46 + sqrt(2428))/2> in Q(sqrt(607))
        let f = field(607);
        let i = canonical_ideal(f, 2, -2, 2).unwrap();
        let (v1, v2) = i.basis();
        assert!(i.contains(&v1) && i.contains(&v2));
        assert!(i.contains(&v1.add(&v2)));
        assert!(i.contains(&v2.scale(&BigInt::from(-3))));
        // halving either generator leaves the lattice
        assert!(!i.contains(&QuadInt::from_sqrt_basis(f, 2, 0)));
        assert!(!i.contains(&QuadInt::from_sqrt_basis(f, 23, 1)));
    }

    #[test]
    fn gram_golden_cases() {
        let f15 = field(15);
        let e = QuadInt::from_sqrt_basis(f15, 3, 1);
        let c = QuadInt::from_sqrt_basis(f15, 3, -1);
        let g = embed_gram(&e, &c).unwrap();
        assert_eq!(g.e_sq, BigInt::from(48));
        assert_eq!(g.f_sq, BigInt::from(48));
        assert_eq!(g.dot, BigInt::from(-12));

        // ((5+sqrt(65))/2, (5-sqrt(65))/2): squared lengths 45
        let f65 = field(65);
        let e = QuadInt::new(f65, 2, 1);
        let c = QuadInt::new(f65, 3, -1);
        let g = embed_gram(&e, &c).unwrap();
        assert_eq!(g.e_sq, BigInt::from(45));
        assert_eq!(g.f_sq, BigInt::from(45));

        let one = f15.one();
        assert!(matches!(
            embed_gram(&one, &one),
            Err(Error::DegenerateBasis(_))
        ));
    }

    #[test]
    fn reduction_oracle_golden_cases() {
        let f2 = field(2);
        let (min, _) = shortest_vector_oracle(&f2.one(), &f2.sqrt_d()).unwrap();
        assert_eq!(min, BigInt::from(2));

        let f15 = field(15);
        let e = QuadInt::from_sqrt_basis(f15, 3, 1);
        let c = QuadInt::from_sqrt_basis(f15, 3, -1);
        let (min, (r1, r2)) = shortest_vector_oracle(&e, &c).unwrap();
        assert_eq!(min, BigInt::from(48));
        // the reduced basis still spans: check via Gram determinant equality
        let g0 = embed_gram(&e, &c).unwrap();
        let g1 = embed_gram(&r1, &r2).unwrap();
        let det = |g: &GramData| &g.e_sq * &g.f_sq - &g.dot * &g.dot;
        assert_eq!(det(&g0), det(&g1));

        // a skewed basis of the same lattice reduces to the same minimum
        let skew = c.add(&e.scale(&BigInt::from(7)));
        let (min2, _) = shortest_vector_oracle(&e, &skew).unwrap();
        assert_eq!(min2, BigInt::from(48));
    }

    #[test]
    fn angle_cos_golden_cases() {
        assert_eq!(AngleCos::from_split(1, 3).value(), Ratio::new(1, 2));
        assert!(AngleCos::from_split(1, 3).is_hexagonal());
        assert_eq!(AngleCos::from_split(3, 5).value(), Ratio::new(1, 4));
        assert!(!AngleCos::from_split(3, 5).is_hexagonal());
        assert_eq!(AngleCos::from_split(17, 47).value(), Ratio::new(15, 32));
        assert_eq!(AngleCos::from_split(17, 47).to_string(), "15/32");
    }

    #[test]
    fn display_forms() {
        let f91 = field(91);
        assert_eq!(
            QuadInt::from_sqrt_basis(f91, 105, -11).to_string(),
            "105 - 11*sqrt(91)"
        );
        let f133 = field(133);
        assert_eq!(QuadInt::new(f133, 3, 1).to_string(), "(7 + sqrt(133))/2");
        assert_eq!(QuadInt::new(f133, 5, 0).to_string(), "5");
        let f15 = field(15);
        assert_eq!(
            QuadInt::from_sqrt_basis(f15, 0, 1).to_string(),
            "sqrt(15)"
        );
    }
}
