//! Exact integers, rationals and lattice vectors.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `"p/q"`, `"p"` or a plain integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |l, x| l.lcm(x))
}

/// Scales a rational vector by the lcm of denominators and divides by the gcd,
/// giving the primitive integer vector on the same ray. Zero maps to zero.
pub fn primitive_from_rationals(v: &[Rational]) -> LatticeVector {
    let l = lcm_all(v.iter().map(|x| x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    LatticeVector::new(ints).primitive().1
}

/// A vector in a lattice `Z^n` with arbitrary-precision coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Lattice weight: gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        gcd_all(&self.0)
    }

    /// Splits `self = weight * primitive`. The zero vector gives `(0, 0)`.
    pub fn primitive(&self) -> (BigInt, LatticeVector) {
        let g = self.content();
        if g.is_zero() {
            return (g, self.clone());
        }
        (g.clone(), LatticeVector(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, x: &[Rational]) -> Rational {
        self.0.iter().zip(x).map(|(a, b)| rat_int(a) * b).fold(Rational::zero(), |s, t| s + t)
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(rat_int).collect()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }

    pub fn abs_max(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl Index<usize> for LatticeVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Integers serialize as JSON numbers when they fit in i64 and as decimal
// strings otherwise; both forms are accepted on input.

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Int(i64),
    Str(String),
}

fn de_bigint<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    match IntRepr::deserialize(d)? {
        IntRepr::Int(x) => Ok(BigInt::from(x)),
        IntRepr::Str(s) => s.parse().map_err(de::Error::custom),
    }
}

pub mod serde_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        ser_bigint(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        de_bigint(d)
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<IntRepr> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|r| match r {
                IntRepr::Int(x) => Ok(BigInt::from(x)),
                IntRepr::Str(s) => s.parse().map_err(de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LatticeVector)
    }
}

/// Serde adapter for `Rational` as a `"p/q"` string (integers may be plain numbers).
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match IntRepr::deserialize(d)? {
            IntRepr::Int(x) => Ok(Rational::from_integer(BigInt::from(x))),
            IntRepr::Str(s) => parse_rational(&s).ok_or_else(|| de::Error::custom(format!("bad rational {s:?}"))),
        }
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw: Vec<IntRepr> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|r| match r {
                IntRepr::Int(x) => Ok(Rational::from_integer(BigInt::from(x))),
                IntRepr::Str(s) => parse_rational(&s).ok_or_else(|| de::Error::custom(format!("bad rational {s:?}"))),
            })
            .collect()
    }
}

/// Serde adapter for `Vec<Vec<Rational>>`.
pub mod serde_rational_mat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v.iter().map(|row| row.iter().map(format_rational).collect()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        #[derive(Deserialize)]
        struct Row(#[serde(with = "serde_rational_vec")] Vec<Rational>);
        let rows: Vec<Row> = Vec::deserialize(d)?;
        Ok(rows.into_iter().map(|r| r.0).collect())
    }
}
