//! The coefficient field `K = Q(v)` with `v^2 = q`.
//!
//! Elements are kept in a canonical reduced form so that structural equality is
//! mathematical equality: numerator and denominator coprime over `Q`, jointly
//! content-free over `Z`, and the denominator's leading coefficient positive.

mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use poly::Poly;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    num: Poly,
    den: Poly,
}

/// Named constants of the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Q,
    V,
    Delta,
    Z,
}

impl Constant {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "q" => Some(Constant::Q),
            "v" => Some(Constant::V),
            "delta" => Some(Constant::Delta),
            "z" => Some(Constant::Z),
            _ => None,
        }
    }
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        RingElem { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RingElem { num: p, den: Poly::one() }
    }

    /// `c * v^k` for any integer `k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        let c = BigInt::from(c);
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            Self::from_parts(Poly::constant(c), Poly::monomial(BigInt::one(), (-k) as usize))
                .expect("nonzero denominator")
        }
    }

    /// `v^k`, the square-root powers used for T-basis rescaling.
    pub fn v_pow(k: i32) -> Self {
        Self::monomial(1, k)
    }

    pub fn q() -> Self {
        Self::v_pow(2)
    }

    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// `q / (1+q)^2`
    pub fn delta() -> Self {
        let one_plus_q = Poly::from_i64s(&[1, 0, 1]);
        Self::from_parts(Poly::from_i64s(&[0, 0, 1]), &one_plus_q * &one_plus_q).unwrap()
    }

    /// `-(1+q)/v`, the loop value and the Jones stabilisation factor.
    pub fn z() -> Self {
        Self::from_parts(Poly::from_i64s(&[-1, 0, -1]), Poly::from_i64s(&[0, 1])).unwrap()
    }

    pub fn constant(c: Constant) -> Self {
        match c {
            Constant::Q => Self::q(),
            Constant::V => Self::v(),
            Constant::Delta => Self::delta(),
            Constant::Z => Self::z(),
        }
    }

    /// Builds `num/den` and canonicalises.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_exact_scalar(&c);
            den = den.div_exact_scalar(&c);
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = -&num;
            den = -&den;
        }
        RingElem { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::reduce(num, &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RingElem { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        Self::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Self::reduce(base.num.pow(e), base.den.pow(e)))
    }

    /// Evaluates at `v = x`; `None` if the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// The Galois conjugate `v -> -v`.
    pub fn conjugate_v(&self) -> Self {
        Self::reduce(self.num.negate_variable(), self.den.negate_variable())
    }

    /// Plain text form `(num)/(den)` in the variable `v`, accepted by the expression parser.
    pub fn to_text(&self) -> String {
        let wrap = |p: &Poly| {
            if p.is_monomial() && !p.leading().unwrap().is_negative() || p.degree() == Some(0) {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        if self.den.is_one() {
            self.num.to_string()
        } else {
            // the denominator must read as a single factor
            let den = self.den.to_string();
            let den = if den.contains(['*', ' ']) { format!("({den})") } else { den };
            format!("{}/{den}", wrap(&self.num))
        }
    }
}

impl Default for RingElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RingElem {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a RingElem> for &'a RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem {
                RingElem::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &RingElem {
    type Output = RingElem;
    /// Panics on division by zero; use [`RingElem::div`] for a checked result.
    fn div(self, rhs: &RingElem) -> RingElem {
        RingElem::div(self, rhs).expect("division by zero")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

impl std::iter::Sum for RingElem {
    fn sum<I: Iterator<Item = RingElem>>(iter: I) -> Self {
        iter.fold(RingElem::zero(), |a, b| RingElem::add(&a, &b))
    }
}

/// JSON-facing integer: a plain number when it fits in `i64`, otherwise a decimal string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(c: &BigInt) -> Self {
        match i64::try_from(c) {
            Ok(x) => JsonInt::Small(x),
            Err(_) => JsonInt::Big(c.to_string()),
        }
    }
}

impl TryFrom<JsonInt> for BigInt {
    type Error = Error;
    fn try_from(j: JsonInt) -> Result<BigInt> {
        match j {
            JsonInt::Small(x) => Ok(BigInt::from(x)),
            JsonInt::Big(s) => s
                .parse()
                .map_err(|_| Error::Format(format!("bad integer coefficient {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RingElemJson {
    num: Vec<JsonInt>,
    den: Vec<JsonInt>,
}

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingElemJson {
            num: self.num.coeffs().iter().map(JsonInt::from).collect(),
            den: self.den.coeffs().iter().map(JsonInt::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RingElemJson::deserialize(d)?;
        let conv = |cs: Vec<JsonInt>| -> Result<Poly> {
            Ok(Poly::from_coeffs(cs.into_iter().map(BigInt::try_from).collect::<Result<_>>()?))
        };
        let num = conv(raw.num).map_err(D::Error::custom)?;
        let den = conv(raw.den).map_err(D::Error::custom)?;
        RingElem::from_parts(num, den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn v_squared_is_q() {
        assert_eq!(RingElem::v().mul(&RingElem::v()), RingElem::q());
    }

    #[test]
    fn scalar_quadratic_right_side() {
        // (q-1) + q = 2q - 1
        let q = RingElem::q();
        let lhs = q.sub(&RingElem::one()).add(&q);
        assert_eq!(lhs, RingElem::from_poly(poly(&[-1, 0, 2])));
    }

    #[test]
    fn inverse_of_one_plus_q() {
        let x = RingElem::one().add(&RingElem::q()).inv().unwrap();
        assert_eq!(x.numer(), &Poly::one());
        assert_eq!(x.denom(), &poly(&[1, 0, 1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(RingElem::one().div(&RingElem::zero()), Err(Error::DivisionByZero)));
        assert!(RingElem::from_parts(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn named_constants() {
        let q = RingElem::q();
        let opq = RingElem::one().add(&q);
        assert_eq!(RingElem::delta(), q.div(&opq.mul(&opq)).unwrap());
        assert_eq!(RingElem::z(), opq.neg().div(&RingElem::v()).unwrap());
        // z^2 * delta = 1
        let z = RingElem::z();
        assert!(z.mul(&z).mul(&RingElem::delta()).is_one());
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = RingElem::from_parts(poly(&[2, 2]), poly(&[-4, 0, 4])).unwrap();
        // (2+2v)/(4v^2-4) = 1/(2(v-1)) = 1/(2v - 2)
        assert_eq!(a.numer(), &Poly::one());
        assert_eq!(a.denom(), &poly(&[-2, 2]));
    }

    #[test]
    fn json_shape() {
        let d = RingElem::delta();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"num":[0,0,1],"den":[1,0,2,0,1]}"#);
        let back: RingElem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn text_form() {
        assert_eq!(RingElem::z().to_text(), "(-1 - v^2)/v");
        assert_eq!(RingElem::q().to_text(), "v^2");
    }
}
