//! Elements of a quadratic field: integers of the maximal order and general
//! field elements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// An integer of the maximal order of discriminant D, stored as
/// (u + v sqrt(D)) / 2 with u = v D (mod 2). Every element of the order has
/// a unique such representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    delta: i64,
    u: BigInt,
    v: BigInt,
}

impl QuadInt {
    pub fn new(delta: i64, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self, FieldError> {
        let u = u.into();
        let v = v.into();
        if (&u - &v * delta).mod_floor(&BigInt::from(2)) != BigInt::zero() {
            return Err(FieldError::BadElement(format!(
                "({} + {} sqrt({})) / 2 is not integral",
                u, v, delta
            )));
        }
        Ok(QuadInt { delta, u, v })
    }

    pub fn from_int(delta: i64, n: impl Into<BigInt>) -> Self {
        QuadInt { delta, u: n.into() * 2, v: BigInt::zero() }
    }

    pub fn zero(delta: i64) -> Self {
        Self::from_int(delta, 0)
    }

    pub fn one(delta: i64) -> Self {
        Self::from_int(delta, 1)
    }

    /// The standard generator (D + sqrt(D)) / 2 of the order over Z.
    pub fn omega(delta: i64) -> Self {
        QuadInt { delta, u: BigInt::from(delta), v: BigInt::one() }
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// Twice the rational part.
    pub fn u(&self) -> &BigInt {
        &self.u
    }

    /// The sqrt(D)-coefficient, doubled to match `u`.
    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.delta != other.delta {
            return Err(FieldError::DiscriminantMismatch(self.delta, other.delta));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(QuadInt { delta: self.delta, u: &self.u + &other.u, v: &self.v + &other.v })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(QuadInt { delta: self.delta, u: &self.u - &other.u, v: &self.v - &other.v })
    }

    pub fn neg(&self) -> Self {
        QuadInt { delta: self.delta, u: -&self.u, v: -&self.v }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        // (u1 + v1 s)(u2 + v2 s) / 4 = ((u1 u2 + v1 v2 D) + (u1 v2 + u2 v1) s) / 4
        // and both numerator coordinates are even for integral inputs.
        let u = (&self.u * &other.u + &self.v * &other.v * self.delta) / 2;
        let v = (&self.u * &other.v + &other.u * &self.v) / 2;
        Ok(QuadInt { delta: self.delta, u, v })
    }

    pub fn scale(&self, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        QuadInt { delta: self.delta, u: &self.u * &n, v: &self.v * n }
    }

    pub fn conjugate(&self) -> Self {
        QuadInt { delta: self.delta, u: self.u.clone(), v: -&self.v }
    }

    /// Field norm u^2 - v^2 D over 4; an ordinary integer.
    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - &self.v * &self.v * self.delta) / 4
    }

    /// Field trace; equals u.
    pub fn trace(&self) -> BigInt {
        self.u.clone()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.delta);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Sign of the real number (u + v sqrt(D)) / 2 under the embedding
    /// sending sqrt(D) to the positive root. Real fields only.
    pub fn signum(&self) -> i32 {
        assert!(self.delta > 0, "ordering needs a real field");
        let su = match self.u.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Minus => -1,
        };
        let sv = match self.v.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Minus => -1,
        };
        if sv == 0 {
            return su;
        }
        if su == 0 || su == sv {
            return sv;
        }
        // Opposite signs: compare u^2 against v^2 D. Equality cannot occur
        // because D is not a square.
        if &self.u * &self.u > &self.v * &self.v * self.delta {
            su
        } else {
            sv
        }
    }
}

impl std::fmt::Display for QuadInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if (&self.u).mod_floor(&BigInt::from(2)).is_zero() && (&self.v).mod_floor(&BigInt::from(2)).is_zero() {
            write!(f, "{} + {} sqrt({})", &self.u / 2, &self.v / 2, self.delta)
        } else {
            write!(f, "({} + {} sqrt({})) / 2", self.u, self.v, self.delta)
        }
    }
}

/// A nonzero element of the quadratic field, stored as an integral numerator
/// over a positive integer denominator, reduced whenever reduction keeps the
/// numerator integral.
#[derive(Clone, Debug)]
pub struct QuadNum {
    num: QuadInt,
    den: BigInt,
}

impl QuadNum {
    pub fn new(num: QuadInt, den: impl Into<BigInt>) -> Result<Self, FieldError> {
        let den: BigInt = den.into();
        if den.is_zero() {
            return Err(FieldError::BadElement("zero denominator".into()));
        }
        let (num, den) = if den.is_negative() { (num.neg(), -den) } else { (num, den) };
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: QuadInt, mut den: BigInt) -> Self {
        let two = BigInt::from(2);
        let g = num.u.gcd(&num.v).gcd(&den);
        if !g.is_zero() {
            // Odd common factors always cancel; factors of 2 only when the
            // halved numerator is still integral.
            let mut odd = g.clone();
            while (&odd).mod_floor(&two).is_zero() {
                odd /= 2;
            }
            if odd > BigInt::one() {
                num.u /= &odd;
                num.v /= &odd;
                den /= &odd;
            }
            loop {
                if (&den).mod_floor(&two).is_zero()
                    && (&num.u).mod_floor(&two).is_zero()
                    && (&num.v).mod_floor(&two).is_zero()
                {
                    let hu: BigInt = &num.u / 2;
                    let hv: BigInt = &num.v / 2;
                    if (&hu - &hv * num.delta).mod_floor(&two).is_zero() {
                        num.u = hu;
                        num.v = hv;
                        den /= 2;
                        continue;
                    }
                }
                break;
            }
        }
        QuadNum { num, den }
    }

    pub fn from_int_elem(num: QuadInt) -> Self {
        QuadNum { num, den: BigInt::one() }
    }

    pub fn from_rational(delta: i64, q: &BigRational) -> Result<Self, FieldError> {
        if q.is_zero() {
            return Err(FieldError::BadElement("zero element".into()));
        }
        QuadNum::new(QuadInt::from_int(delta, q.numer().clone()), q.denom().clone())
    }

    pub fn one(delta: i64) -> Self {
        Self::from_int_elem(QuadInt::one(delta))
    }

    pub fn delta(&self) -> i64 {
        self.num.delta
    }

    pub fn numerator(&self) -> &QuadInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the element lies in the maximal order.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_integer(&self) -> Option<QuadInt> {
        if self.is_integral() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        let num = self.num.mul(&other.num)?;
        Ok(Self::reduced(num, &self.den * &other.den))
    }

    pub fn mul_int(&self, other: &QuadInt) -> Result<Self, FieldError> {
        Ok(Self::reduced(self.num.mul(other)?, self.den.clone()))
    }

    pub fn neg(&self) -> Self {
        QuadNum { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn conjugate(&self) -> Self {
        QuadNum { num: self.num.conjugate(), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::BadElement("inverse of zero".into()));
        }
        // 1 / (n/d) = d conj(n) / N(n).
        let n = self.num.norm();
        let num = self.num.conjugate().scale(self.den.clone());
        QuadNum::new(num, n)
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.mul(&other.inverse()?)
    }

    /// Field norm as an exact rational.
    pub fn norm(&self) -> BigRational {
        BigRational::new(self.num.norm(), &self.den * &self.den)
    }

    pub fn eq_value(&self, other: &Self) -> bool {
        self.num.delta == other.num.delta
            && self.num.scale(other.den.clone()) == other.num.scale(self.den.clone())
    }

    /// Sign under the positive-root embedding; real fields only.
    pub fn signum(&self) -> i32 {
        self.num.signum()
    }

    /// Exact comparison in the positive-root embedding. Real fields only.
    pub fn cmp_value(&self, other: &Self) -> std::cmp::Ordering {
        match self.sub_val(other).signum() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }

    /// Compares |self| with |other| in the positive-root embedding by
    /// comparing squares, exactly. Real fields only.
    pub fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = self.mul(self).unwrap();
        let b = other.mul(other).unwrap();
        let d = a.sub_val(&b);
        match d.signum() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }

    fn sub_val(&self, other: &Self) -> QuadNum {
        let num = self
            .num
            .scale(other.den.clone())
            .sub(&other.num.scale(self.den.clone()))
            .unwrap();
        QuadNum { num, den: &self.den * &other.den }
    }
}

impl std::fmt::Display for QuadNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        self.eq_value(other)
    }
}

impl Eq for QuadNum {}
