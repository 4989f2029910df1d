//! Exact 2×2 integer and rational linear algebra.
//!
//! Everything here works over unbounded integers ([`BigInt`]) and reduced
//! rationals ([`Rat`]); no floating point is used anywhere in the deciders.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced rational with positive denominator.
pub type Rat = BigRational;

/// Builds a rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

/// Serde adapter for a single [`Rat`] as a `"p/q"` string.
pub mod rat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
    }
}

/// Serde adapter for a list of [`Rat`] values.
pub mod rat_vec_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rat_to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rat(s).ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`"))))
            .collect()
    }
}

/// An element of Z², written in the chosen basis of its vertex group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl IntVec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        IntVec2 { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        IntVec2::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> IntVec2 {
        IntVec2 { x: -&self.x, y: -&self.y }
    }

    pub fn add(&self, o: &IntVec2) -> IntVec2 {
        IntVec2 { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &IntVec2) -> IntVec2 {
        IntVec2 { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn scale(&self, k: &BigInt) -> IntVec2 {
        IntVec2 { x: &self.x * k, y: &self.y * k }
    }

    /// Max-norm `max(|x|, |y|)`.
    pub fn max_norm(&self) -> BigInt {
        self.x.abs().max(self.y.abs())
    }

    pub fn to_rat(&self) -> (Rat, Rat) {
        (Rat::from_integer(self.x.clone()), Rat::from_integer(self.y.clone()))
    }

    fn nonzero(&self) -> Result<&Self> {
        if self.is_zero() {
            Err(Error::ZeroVector)
        } else {
            Ok(self)
        }
    }
}

impl From<(i64, i64)> for IntVec2 {
    fn from((x, y): (i64, i64)) -> Self {
        IntVec2::new(x, y)
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for IntVec2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.x.to_string())?;
        t.serialize_element(&self.y.to_string())?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for IntVec2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (x, y) = <(String, String)>::deserialize(d)?;
        let parse = |s: &str| BigInt::from_str(s).map_err(|_| de::Error::custom(format!("invalid integer `{s}`")));
        Ok(IntVec2 { x: parse(&x)?, y: parse(&y)? })
    }
}

/// `u.x·v.y − u.y·v.x`; its absolute value is the intersection number of the
/// two curves on the torus.
pub fn det2(u: &IntVec2, v: &IntVec2) -> BigInt {
    &u.x * &v.y - &u.y * &v.x
}

pub fn is_parallel(u: &IntVec2, v: &IntVec2) -> Result<bool> {
    u.nonzero()?;
    v.nonzero()?;
    Ok(det2(u, v).is_zero())
}

pub fn primitive_of(v: &IntVec2) -> Result<IntVec2> {
    v.nonzero()?;
    let g = v.x.gcd(&v.y);
    Ok(IntVec2 { x: &v.x / &g, y: &v.y / &g })
}

/// Primitive vector spanning the same line as `v`, with its first nonzero
/// coordinate positive. Two nonzero vectors are parallel iff their canonical
/// directions agree.
pub fn canonical_direction(v: &IntVec2) -> Result<IntVec2> {
    let p = primitive_of(v)?;
    if p.x.is_negative() || (p.x.is_zero() && p.y.is_negative()) {
        Ok(p.neg())
    } else {
        Ok(p)
    }
}

pub fn is_primitive(v: &IntVec2) -> bool {
    !v.is_zero() && v.x.gcd(&v.y).is_one()
}

/// Canonical primitive directions with max-norm exactly `n`, ordered
/// lexicographically by `(x, y)`.
pub fn canonical_primitives_with_norm(n: i64) -> Vec<IntVec2> {
    let mut out = Vec::new();
    if n <= 0 {
        return out;
    }
    for x in 0..=n {
        for y in -n..=n {
            if x.abs().max(y.abs()) != n || (x == 0 && y <= 0) {
                continue;
            }
            let v = IntVec2::new(x, y);
            if is_primitive(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// All canonical primitive directions with max-norm at most `bound`, ordered
/// by max-norm and then lexicographically.
pub fn canonical_primitives(bound: i64) -> Vec<IntVec2> {
    (1..=bound).flat_map(canonical_primitives_with_norm).collect()
}

/// For primitive `v`, returns `v'` with `det2(v, v') = 1`. Among all such
/// vectors (a coset `v'₀ + Z·v`) the one of least Euclidean norm is chosen,
/// ties going to the lexicographically smaller vector.
pub fn complete_basis(v: &IntVec2) -> Result<IntVec2> {
    v.nonzero()?;
    if !is_primitive(v) {
        return Err(Error::NotPrimitive(v.clone()));
    }
    // a·s + b·t = 1  ⇒  det((a,b), (−t, s)) = a·s + b·t = 1.
    let eg = v.x.extended_gcd(&v.y);
    let (s, t) = if eg.gcd.is_negative() { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    let base = IntVec2 { x: -t, y: s };
    debug_assert!(det2(v, &base).is_one());

    // |base + k v|² is minimised at k* = −⟨base,v⟩/|v|².
    let dot = &base.x * &v.x + &base.y * &v.y;
    let nn = &v.x * &v.x + &v.y * &v.y;
    let k0 = (-dot).div_floor(&nn);
    let cand = |k: &BigInt| base.add(&v.scale(k));
    let norm2 = |u: &IntVec2| &u.x * &u.x + &u.y * &u.y;
    let a = cand(&k0);
    let b = cand(&(&k0 + 1));
    let best = match norm2(&a).cmp(&norm2(&b)) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => a.min(b),
    };
    Ok(best)
}

/// A 2×2 matrix `[[a, b], [c, d]]` (row-major).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type IntMat2 = Mat2<BigInt>;
pub type RatMat2 = Mat2<Rat>;

impl<T> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }
}

impl IntMat2 {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: &IntVec2, v: &IntVec2) -> Self {
        Mat2::new(u.x.clone(), v.x.clone(), u.y.clone(), v.y.clone())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, v: &IntVec2) -> IntVec2 {
        IntVec2 {
            x: &self.a * &v.x + &self.b * &v.y,
            y: &self.c * &v.x + &self.d * &v.y,
        }
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn to_rat(&self) -> RatMat2 {
        Mat2::new(
            Rat::from_integer(self.a.clone()),
            Rat::from_integer(self.b.clone()),
            Rat::from_integer(self.c.clone()),
            Rat::from_integer(self.d.clone()),
        )
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }
}

impl RatMat2 {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d))
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &RatMat2) -> RatMat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn transpose(&self) -> RatMat2 {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn apply(&self, x: &Rat, y: &Rat) -> (Rat, Rat) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    pub fn apply_int(&self, v: &IntVec2) -> (Rat, Rat) {
        let (x, y) = v.to_rat();
        self.apply(&x, &y)
    }
}

/// Exact inverse of a rational 2×2 matrix.
pub fn inv2(m: &RatMat2) -> Result<RatMat2> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(Mat2::new(&m.d / &det, -&m.b / &det, -&m.c / &det, &m.a / &det))
}

/// Symmetric form `Q(x, y) = a·x² + 2b·xy + c·y²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QForm2 {
    #[serde(with = "rat_serde")]
    pub a: Rat,
    #[serde(with = "rat_serde")]
    pub b: Rat,
    #[serde(with = "rat_serde")]
    pub c: Rat,
}

impl QForm2 {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        QForm2 { a, b, c }
    }

    pub fn identity() -> Self {
        QForm2::new(Rat::one(), Rat::zero(), Rat::one())
    }

    /// The form of the symmetric matrix `m` (which must be symmetric).
    pub fn from_symmetric(m: &RatMat2) -> Self {
        debug_assert_eq!(m.b, m.c);
        QForm2::new(m.a.clone(), m.b.clone(), m.d.clone())
    }

    pub fn matrix(&self) -> RatMat2 {
        Mat2::new(self.a.clone(), self.b.clone(), self.b.clone(), self.c.clone())
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && (&self.a * &self.c - &self.b * &self.b).is_positive()
    }

    pub fn eval(&self, v: &IntVec2) -> Rat {
        let (x, y) = v.to_rat();
        &self.a * &x * &x + rat_int(2) * &self.b * &x * &y + &self.c * &y * &y
    }
}

impl fmt::Display for QForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            rat_to_string(&self.a),
            rat_to_string(&self.b),
            rat_to_string(&self.b),
            rat_to_string(&self.c)
        )
    }
}
