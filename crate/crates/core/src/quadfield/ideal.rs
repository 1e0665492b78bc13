//! Fractional ideals of the maximal order, in Hermite normal form.
//!
//! Every nonzero fractional ideal is c (a Z + ((b + sqrt(D))/2) Z) for a
//! unique positive rational c and integers a > 0, -a < b <= a with
//! b^2 = D (mod 4a). Arithmetic reduces arbitrary generator lattices back
//! to this shape, so equality of ideals is equality of representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elem::{QuadInt, QuadNum};
use super::FieldError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OIdeal {
    delta: i64,
    content: BigRational,
    a: BigInt,
    b: BigInt,
}

/// Reduces b into the window (-a, a] modulo 2a.
fn normalize_b(b: &BigInt, a: &BigInt) -> BigInt {
    let two_a = a * 2;
    let mut r = b.mod_floor(&two_a);
    if &r > a {
        r -= two_a;
    }
    r
}

impl OIdeal {
    pub fn new(
        delta: i64,
        content: BigRational,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
    ) -> Result<Self, FieldError> {
        let a: BigInt = a.into();
        let b: BigInt = b.into();
        if !content.is_positive() {
            return Err(FieldError::BadIdeal("content must be positive".into()));
        }
        if !a.is_positive() {
            return Err(FieldError::BadIdeal("leading coefficient must be positive".into()));
        }
        let b = normalize_b(&b, &a);
        if (&b * &b - delta).mod_floor(&(&a * 4)) != BigInt::zero() {
            return Err(FieldError::BadIdeal(format!(
                "{}^2 != {} (mod {}): not an ideal of the order",
                b,
                delta,
                &a * 4
            )));
        }
        Ok(OIdeal { delta, content, a, b })
    }

    pub fn one(delta: i64) -> Self {
        OIdeal {
            delta,
            content: BigRational::one(),
            a: BigInt::one(),
            b: BigInt::from(delta.rem_euclid(2)),
        }
    }

    /// The ideal generated by a nonzero rational number.
    pub fn from_rational(delta: i64, q: &BigRational) -> Result<Self, FieldError> {
        if q.is_zero() {
            return Err(FieldError::BadIdeal("zero ideal".into()));
        }
        let mut x = Self::one(delta);
        x.content = q.abs();
        Ok(x)
    }

    pub fn from_int(delta: i64, n: impl Into<BigInt>) -> Result<Self, FieldError> {
        Self::from_rational(delta, &BigRational::from_integer(n.into()))
    }

    /// The principal ideal generated by a nonzero integral element.
    pub fn principal(x: &QuadInt) -> Result<Self, FieldError> {
        if x.is_zero() {
            return Err(FieldError::BadIdeal("zero ideal".into()));
        }
        let delta = x.delta();
        let xw = x.mul(&QuadInt::omega(delta)).unwrap();
        let gens = [
            (x.u().clone(), x.v().clone()),
            (xw.u().clone(), xw.v().clone()),
        ];
        Ok(Self::from_lattice(delta, &gens, &BigInt::one()))
    }

    /// The principal fractional ideal generated by a nonzero field element.
    pub fn principal_num(x: &QuadNum) -> Result<Self, FieldError> {
        let mut ideal = Self::principal(x.numerator())?;
        ideal.content /= BigRational::from_integer(x.denominator().clone());
        Ok(ideal)
    }

    /// Ideal spanned by elements (U_i + V_i sqrt(D)) / (2 den). The lattice
    /// must have full rank.
    fn from_lattice(delta: i64, gens: &[(BigInt, BigInt)], den: &BigInt) -> Self {
        // One combined generator w carries the gcd of the V-coordinates.
        let mut wu = BigInt::zero();
        let mut wv = BigInt::zero();
        for (u, v) in gens {
            let e = wv.extended_gcd(v);
            wu = &e.x * &wu + &e.y * u;
            wv = e.gcd;
        }
        assert!(!wv.is_zero(), "lattice has rank < 2");
        if wv.is_negative() {
            wu = -wu;
            wv = -wv;
        }
        // Clearing V against w leaves the rational sublattice.
        let mut g1 = BigInt::zero();
        for (u, v) in gens {
            let k = v / &wv;
            g1 = g1.gcd(&(u - &k * &wu));
        }
        assert!(!g1.is_zero(), "lattice has rank < 2");
        let (a, r) = g1.div_rem(&(&wv * 2));
        assert!(r.is_zero(), "rational sublattice not divisible: not a module over the order");
        let (b_raw, r) = wu.div_rem(&wv);
        assert!(r.is_zero(), "second basis coordinate not divisible by content");
        let b = normalize_b(&b_raw, &a);
        let content = BigRational::new(wv, den.clone());
        debug_assert!(
            (&b * &b - delta).mod_floor(&(&a * 4)).is_zero(),
            "lattice is not an ideal of the order"
        );
        OIdeal { delta, content, a, b }
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// Positive rational content.
    pub fn content(&self) -> &BigRational {
        &self.content
    }

    /// Leading integer of the primitive part.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Second basis coordinate, normalized into (-a, a].
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn primitive_part(&self) -> OIdeal {
        OIdeal {
            delta: self.delta,
            content: BigRational::one(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.content.is_one() && self.a.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.content.is_integer()
    }

    /// Absolute norm; multiplicative.
    pub fn norm(&self) -> BigRational {
        &self.content * &self.content * BigRational::from_integer(self.a.clone())
    }

    pub fn conjugate(&self) -> OIdeal {
        OIdeal {
            delta: self.delta,
            content: self.content.clone(),
            a: self.a.clone(),
            b: normalize_b(&-&self.b, &self.a),
        }
    }

    /// Fixed by conjugation. Happens exactly when a divides b.
    pub fn is_invariant(&self) -> bool {
        self.b.is_zero() || self.b == self.a
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.delta != other.delta {
            return Err(FieldError::DiscriminantMismatch(self.delta, other.delta));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        // Products of the two primitive bases; contents multiply separately.
        let p = [
            (&self.a * 2, BigInt::zero()),
            (self.b.clone(), BigInt::one()),
        ];
        let q = [
            (&other.a * 2, BigInt::zero()),
            (other.b.clone(), BigInt::one()),
        ];
        let mut gens = Vec::with_capacity(4);
        for (u1, v1) in &p {
            for (u2, v2) in &q {
                let u = (u1 * u2 + v1 * v2 * self.delta) / 2;
                let v = (u1 * v2 + u2 * v1) / 2;
                gens.push((u, v));
            }
        }
        let mut out = Self::from_lattice(self.delta, &gens, &BigInt::one());
        out.content *= &self.content * &other.content;
        Ok(out)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Result<Self, FieldError> {
        if q.is_zero() {
            return Err(FieldError::BadIdeal("zero ideal".into()));
        }
        let mut out = self.clone();
        out.content *= q.abs();
        Ok(out)
    }

    pub fn inverse(&self) -> OIdeal {
        // I conj(I) = (N I), so 1/I = conj(I) / (a c^2) with the content
        // folded in.
        let mut out = self.conjugate();
        out.content = BigRational::one()
            / (&self.content * BigRational::from_integer(self.a.clone()));
        out
    }

    pub fn pow(&self, e: i64) -> OIdeal {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = OIdeal::one(self.delta);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base).unwrap();
        }
        acc
    }

    /// Membership test for a nonzero field element.
    pub fn contains(&self, x: &QuadNum) -> bool {
        if x.delta() != self.delta {
            return false;
        }
        // x = c (2 a m + b n + n sqrt(D)) / 2 for integers m, n.
        let u_val = BigRational::new(x.numerator().u().clone(), x.denominator().clone());
        let v_val = BigRational::new(x.numerator().v().clone(), x.denominator().clone());
        let n = v_val / &self.content;
        if !n.is_integer() {
            return false;
        }
        let m = (u_val / &self.content - BigRational::from_integer(&self.b * n.numer()))
            / BigRational::from_integer(&self.a * 2);
        m.is_integer()
    }
}

impl std::fmt::Display for OIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.content.is_one() {
            write!(f, "{} * ", self.content)?;
        }
        write!(f, "[{}, ({} + sqrt({})) / 2]", self.a, self.b, self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(delta: i64, c: i64, a: i64, b: i64) -> OIdeal {
        OIdeal::new(delta, BigRational::from_integer(c.into()), a, b).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(OIdeal::new(-20, BigRational::one(), 2, 2).is_ok());
        assert!(OIdeal::new(-20, BigRational::one(), 2, 1).is_err());
        assert!(OIdeal::new(-20, BigRational::one(), 3, 2).is_ok());
        assert!(OIdeal::new(-20, BigRational::one(), 3, 1).is_err());
        assert!(OIdeal::new(-20, BigRational::one(), -2, 2).is_err());
        assert!(OIdeal::new(-20, BigRational::from_integer((-1).into()), 2, 2).is_err());
    }

    #[test]
    fn b_window_normalization() {
        // b = -2 and b = 2 name the same ideal above 2 for D = -20.
        let x = ideal(-20, 1, 2, -2);
        let y = ideal(-20, 1, 2, 2);
        assert_eq!(x, y);
        let z = ideal(-20, 1, 3, 8);
        assert_eq!(z.b(), &BigInt::from(2));
    }

    #[test]
    fn principal_of_one_is_unit_ideal() {
        for delta in [-20, -23, -3, -4, 5, 8, 13, 136] {
            let one = OIdeal::principal(&QuadInt::one(delta)).unwrap();
            assert!(one.is_one(), "delta {}", delta);
            assert_eq!(one, OIdeal::one(delta));
        }
    }

    #[test]
    fn principal_known_lattices() {
        // (sqrt(-5)): norm 5, invariant, lattice [5, (0 + sqrt(-20))/2].
        let r = QuadInt::new(-20, 0, 1).unwrap();
        let i = OIdeal::principal(&r).unwrap();
        assert_eq!(i.norm(), BigRational::from_integer(5.into()));
        assert_eq!(i.a(), &BigInt::from(5));
        assert!(i.is_invariant());

        // (2) is content 2.
        let two = OIdeal::principal(&QuadInt::from_int(-20, 2)).unwrap();
        assert_eq!(two.content(), &BigRational::from_integer(2.into()));
        assert!(two.a().is_one());

        // (1 + sqrt(-5)) has norm 6, lattice [6, (2 + sqrt(-20))/2].
        let x = QuadInt::new(-20, 2, 1).unwrap();
        let i = OIdeal::principal(&x).unwrap();
        assert_eq!(i.norm(), BigRational::from_integer(6.into()));
        assert_eq!(i.a(), &BigInt::from(6));
        assert_eq!(i.b(), &BigInt::from(2));
    }

    #[test]
    fn norm_multiplicative_on_principals() {
        let xs = [
            QuadInt::new(-20, 2, 2).unwrap(),
            QuadInt::new(-20, 0, 2).unwrap(),
            QuadInt::new(-20, 6, 2).unwrap(),
            QuadInt::from_int(-20, 3),
        ];
        for x in &xs {
            for y in &xs {
                let ix = OIdeal::principal(x).unwrap();
                let iy = OIdeal::principal(y).unwrap();
                let prod = ix.mul(&iy).unwrap();
                assert_eq!(prod.norm(), ix.norm() * iy.norm());
                // (x)(y) = (xy) as lattices.
                let direct = OIdeal::principal(&x.mul(y).unwrap()).unwrap();
                assert_eq!(prod, direct);
            }
        }
    }

    #[test]
    fn product_against_conjugate_is_norm() {
        for (delta, a, b) in [(-20, 2, 2), (-20, 3, 2), (-23, 2, 1), (136, 3, 2), (136, 5, 4), (13, 3, 1)] {
            let i = ideal(delta, 1, a, b);
            let n = i.mul(&i.conjugate()).unwrap();
            assert_eq!(
                n,
                OIdeal::from_rational(delta, &BigRational::from_integer(a.into())).unwrap(),
                "delta {} a {} b {}",
                delta,
                a,
                b
            );
        }
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let cases = [
            ideal(-20, 1, 2, 2),
            ideal(-20, 3, 5, 0),
            ideal(-23, 1, 2, 1),
            ideal(136, 2, 3, 2),
            ideal(13, 1, 3, 1),
        ];
        for i in cases {
            assert!(i.mul(&i.inverse()).unwrap().is_one());
            assert!(i.inverse().mul(&i).unwrap().is_one());
        }
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let p = ideal(-23, 1, 2, 1);
        let sq = p.mul(&p).unwrap();
        assert_eq!(p.pow(2), sq);
        assert_eq!(p.pow(0), OIdeal::one(-23));
        assert_eq!(p.pow(-2), sq.inverse());
        assert_eq!(p.pow(3), sq.mul(&p).unwrap());
    }

    #[test]
    fn ramified_square_is_rational() {
        // Above 2 for D = -20: [2, 2]^2 = (2).
        let p2 = ideal(-20, 1, 2, 2);
        let sq = p2.mul(&p2).unwrap();
        assert_eq!(sq, OIdeal::from_int(-20, 2).unwrap());
        // Above 17 for D = 136: [17, 0]^2 = (17).
        let p17 = ideal(136, 1, 17, 0);
        assert_eq!(p17.mul(&p17).unwrap(), OIdeal::from_int(136, 17).unwrap());
    }

    #[test]
    fn split_product_is_rational() {
        // Above 3 for D = -20: 3 splits, [3, 2] [3, -2] = (3).
        let p = ideal(-20, 1, 3, 2);
        let q = p.conjugate();
        assert_ne!(p, q);
        assert_eq!(p.mul(&q).unwrap(), OIdeal::from_int(-20, 3).unwrap());
        // But [3, 2]^2 is not rational.
        let sq = p.mul(&p).unwrap();
        assert_eq!(sq.a(), &BigInt::from(9));
    }

    #[test]
    fn invariance_detection() {
        assert!(ideal(-20, 1, 2, 2).is_invariant());
        assert!(ideal(-20, 1, 5, 0).is_invariant());
        assert!(ideal(136, 1, 2, 0).is_invariant());
        assert!(!ideal(-20, 1, 3, 2).is_invariant());
        assert!(!ideal(-23, 1, 2, 1).is_invariant());
        assert!(OIdeal::one(-20).is_invariant());
    }

    #[test]
    fn membership() {
        let p2 = ideal(-20, 1, 2, 2);
        // 2 and 1 + sqrt(-5) lie in it; 1 does not.
        let two = QuadNum::from_int_elem(QuadInt::from_int(-20, 2));
        let x = QuadNum::from_int_elem(QuadInt::new(-20, 2, 1).unwrap());
        let one = QuadNum::one(-20);
        assert!(p2.contains(&two));
        assert!(p2.contains(&x));
        assert!(!p2.contains(&one));
        // A generator lies in its principal ideal; so does a multiple.
        let g = QuadNum::new(QuadInt::new(-20, 2, 2).unwrap(), 3).unwrap();
        let i = OIdeal::principal_num(&g).unwrap();
        assert!(i.contains(&g));
        assert!(i.contains(&g.mul(&QuadNum::from_int_elem(QuadInt::omega(-20))).unwrap()));
        assert!(!i.contains(&g.mul(&QuadNum::new(QuadInt::one(-20), 7).unwrap()).unwrap()));
    }

    #[test]
    fn fractional_ideals_compose() {
        let p = ideal(-20, 1, 2, 2);
        let f = p.inverse();
        assert!(!f.is_integral());
        let back = f.mul(&p).unwrap();
        assert!(back.is_one());
        // Content arithmetic: (3/2) O times (2/3) O is O.
        let x = OIdeal::from_rational(-20, &BigRational::new(3.into(), 2.into())).unwrap();
        let y = OIdeal::from_rational(-20, &BigRational::new(2.into(), 3.into())).unwrap();
        assert!(x.mul(&y).unwrap().is_one());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let p = ideal(-23, 1, 2, 1);
        let q = ideal(-23, 1, 3, 1);
        assert_eq!(
            p.mul(&q).unwrap().conjugate(),
            p.conjugate().mul(&q.conjugate()).unwrap()
        );
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn principal_num_with_denominator() {
        // (1 + sqrt(-20)) / 3 generates a genuinely fractional ideal.
        let g = QuadNum::new(QuadInt::new(-20, 2, 2).unwrap(), 3).unwrap();
        let i = OIdeal::principal_num(&g).unwrap();
        assert_eq!(i.norm(), g.norm().abs());
        // And the ideal of the inverse is the inverse ideal.
        let j = OIdeal::principal_num(&g.inverse().unwrap()).unwrap();
        assert_eq!(j, i.inverse());
    }
}
