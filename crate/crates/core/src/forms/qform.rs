//! Form representation and reduction.

use std::fmt;

use num_integer::Integer;

use crate::arith::isqrt_u64;

use super::FormError;

/// A primitive integral binary quadratic form a x^2 + b x y + c y^2.
///
/// The discriminant b^2 - 4ac is never a square (degenerate forms are
/// rejected at construction), and forms of negative discriminant are kept
/// positive definite. Coefficients are plain `i64`; every internal product
/// goes through `i128`, which is exact for any valid form.
///
/// The derived ordering is lexicographic in (a, b, c). The canonical
/// representative of a class is the smallest reduced form under it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    a: i64,
    b: i64,
    c: i64,
}

impl QForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, FormError> {
        let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        if disc < i64::MIN as i128 || disc > i64::MAX as i128 {
            return Err(FormError::DiscOverflow(a, b, c));
        }
        if disc >= 0 {
            let r = isqrt_u64(disc as u64);
            if r * r == disc as u64 {
                return Err(FormError::Degenerate(a, b, c));
            }
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(FormError::NotPrimitive(a, b, c));
        }
        if disc < 0 && a < 0 {
            return Err(FormError::NegativeDefinite(a, b, c));
        }
        Ok(QForm { a, b, c })
    }

    /// The form (1, 0, -delta/4) or (1, 1, (1-delta)/4) of discriminant
    /// `delta`, whose class is the composition identity.
    pub fn principal(delta: i64) -> Result<Self, FormError> {
        match delta.mod_floor(&4) {
            0 => QForm::new(1, 0, -delta / 4),
            1 => QForm::new(1, 1, (1 - delta) / 4),
            _ => Err(FormError::Degenerate(1, delta, delta)),
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn disc(&self) -> i64 {
        ((self.b as i128) * (self.b as i128) - 4 * (self.a as i128) * (self.c as i128)) as i64
    }

    /// Floor of sqrt(disc); callers guarantee disc > 0.
    fn sqrt_disc(&self) -> i64 {
        let d = self.disc();
        debug_assert!(d > 0);
        isqrt_u64(d as u64) as i64
    }

    /// The inverse class: (a, -b, c).
    pub fn opposite(&self) -> QForm {
        QForm { a: self.a, b: -self.b, c: self.c }
    }

    pub fn is_reduced(&self) -> bool {
        if self.disc() < 0 {
            -self.a < self.b
                && self.b <= self.a
                && self.a <= self.c
                && !(self.a == self.c && self.b < 0)
        } else {
            let s = self.sqrt_disc();
            let ta = 2 * self.a.abs();
            0 < self.b && self.b <= s && s < self.b + ta && ta <= self.b + s
        }
    }

    /// One reduction step for indefinite forms: move c into first position
    /// and renormalize b. On reduced forms this steps along the cycle.
    pub fn rho(&self) -> QForm {
        let d = self.disc() as i128;
        debug_assert!(d > 0, "rho is an indefinite-form operation");
        let s = self.sqrt_disc() as i128;
        let c = self.c as i128;
        let ca = c.abs();
        let w = if ca > s { ca } else { s };
        let b2 = w - (w + self.b as i128).mod_floor(&(2 * ca));
        let num = b2 * b2 - d;
        debug_assert_eq!(num.mod_floor(&(4 * c)), 0);
        let c2 = num / (4 * c);
        QForm {
            a: self.c,
            b: b2.try_into().expect("rho keeps b within i64"),
            c: c2.try_into().expect("rho keeps c within i64"),
        }
    }

    /// Some reduced form in the proper equivalence class. Unique for
    /// negative discriminant; one member of the rho cycle otherwise.
    pub fn reduced(&self) -> QForm {
        let d = self.disc() as i128;
        if d < 0 {
            let mut a = self.a as i128;
            let mut b = self.b as i128;
            loop {
                b = a - (a - b).mod_floor(&(2 * a));
                let c = (b * b - d) / (4 * a);
                if a > c {
                    // (a, b, c) -> (c, -b, a), then renormalize; a shrinks.
                    a = c;
                    b = -b;
                    continue;
                }
                if a == c && b < 0 {
                    b = -b;
                }
                let fit = |x: i128| x.try_into().expect("reduction shrinks coefficients");
                return QForm { a: fit(a), b: fit(b), c: fit(c) };
            }
        }
        let mut f = *self;
        for _ in 0..200 {
            if f.is_reduced() {
                return f;
            }
            f = f.rho();
        }
        unreachable!("indefinite reduction stalls on {f}");
    }

    /// The full rho cycle through a reduced indefinite form. Cycle length is
    /// always even because rho flips the sign of the leading coefficient.
    pub fn cycle(&self) -> Vec<QForm> {
        assert!(self.disc() > 0 && self.is_reduced());
        let mut out = vec![*self];
        let mut f = self.rho();
        while f != *self {
            debug_assert!(f.is_reduced());
            out.push(f);
            f = f.rho();
        }
        debug_assert_eq!(out.len() % 2, 0);
        out
    }

    /// Action of the determinant-one matrix with columns (p, r), (q, s).
    pub fn transform(&self, p: i64, q: i64, r: i64, s: i64) -> QForm {
        let det = (p as i128) * (s as i128) - (q as i128) * (r as i128);
        assert_eq!(det, 1, "transforms must have determinant one");
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        let a2 = a * p * p + b * p * r + c * r * r;
        let b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        let c2 = a * q * q + b * q * s + c * s * s;
        let fit = |x: i128| x.try_into().expect("transformed coefficients fit i64");
        QForm { a: fit(a2), b: fit(b2), c: fit(c2) }
    }

    /// The value a x^2 + b x y + c y^2.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        (self.a as i128) * x * x + (self.b as i128) * x * y + (self.c as i128) * y * y
    }
}

impl fmt::Display for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(a: i64, b: i64, c: i64) -> QForm {
        QForm::new(a, b, c).unwrap()
    }

    #[test]
    fn construction_rejects_bad_forms() {
        assert_eq!(QForm::new(1, 0, -4), Err(FormError::Degenerate(1, 0, -4)));
        assert_eq!(QForm::new(1, 3, 0), Err(FormError::Degenerate(1, 3, 0)));
        assert_eq!(QForm::new(2, 2, 4), Err(FormError::NotPrimitive(2, 2, 4)));
        assert_eq!(QForm::new(-1, 0, -5), Err(FormError::NegativeDefinite(-1, 0, -5)));
        assert!(QForm::new(1, 1, 1).is_ok());
        assert!(QForm::new(-1, 1, 1).is_ok());
    }

    #[test]
    fn principal_forms() {
        assert_eq!(QForm::principal(-20).unwrap(), qf(1, 0, 5));
        assert_eq!(QForm::principal(-23).unwrap(), qf(1, 1, 6));
        assert_eq!(QForm::principal(5).unwrap(), qf(1, 1, -1));
        assert_eq!(QForm::principal(136).unwrap(), qf(1, 0, -34));
    }

    #[test]
    fn definite_reduction_known_values() {
        assert_eq!(qf(15, 11, 3).reduced(), qf(3, 1, 5));
        assert_eq!(qf(2, -2, 3).reduced(), qf(2, 2, 3));
        // boundary a == c flips the sign of b
        assert_eq!(qf(2, -1, 2).reduced(), qf(2, 1, 2));
        // boundary b == -a moves to b == a
        assert_eq!(qf(3, -3, 5).reduced(), qf(3, 3, 5));
        assert!(qf(3, 1, 5).is_reduced());
        assert!(!qf(3, -1, 3).is_reduced());
    }

    #[test]
    fn definite_reduction_is_idempotent_and_preserves_disc() {
        for (a, b, c) in [(15, 11, 3), (7, -5, 1), (101, 37, 5), (1, 1, 6)] {
            let f = qf(a, b, c);
            let r = f.reduced();
            assert_eq!(r.disc(), f.disc());
            assert!(r.is_reduced());
            assert_eq!(r.reduced(), r);
        }
    }

    #[test]
    fn indefinite_reduction_and_cycles() {
        let f = qf(1, 0, -34).reduced();
        assert_eq!(f, qf(1, 10, -9));
        let cyc = f.cycle();
        assert!(cyc.contains(&f));
        assert_eq!(cyc.len() % 2, 0);
        for g in &cyc {
            assert!(g.is_reduced());
            assert_eq!(g.disc(), 136);
        }

        let golden = qf(1, 1, -1);
        assert!(golden.is_reduced());
        assert_eq!(golden.cycle(), vec![golden, qf(-1, 1, 1)]);
    }

    #[test]
    fn rho_walks_the_cycle_both_signs() {
        let f = qf(-3, 2, 3);
        let cyc = f.reduced().cycle();
        assert_eq!(cyc.len(), 6);
        // rho alternates the sign of the leading coefficient
        for pair in cyc.windows(2) {
            assert!(pair[0].a().signum() != pair[1].a().signum());
        }
    }

    #[test]
    fn transform_preserves_disc_and_respects_identity() {
        let f = qf(2, 1, 3);
        assert_eq!(f.transform(1, 0, 0, 1), f);
        let g = f.transform(2, 1, 1, 1);
        assert_eq!(g.disc(), f.disc());
        assert_eq!(g.reduced(), f.reduced());
    }

    #[test]
    #[should_panic(expected = "determinant")]
    fn transform_rejects_non_unimodular() {
        qf(2, 1, 3).transform(2, 0, 0, 1);
    }

    #[test]
    fn eval_matches_coefficients() {
        let f = qf(2, 1, 3);
        assert_eq!(f.eval(1, 0), 2);
        assert_eq!(f.eval(0, 1), 3);
        assert_eq!(f.eval(1, 1), 6);
        assert_eq!(f.eval(-3, 2), 18 - 6 + 12);
    }
}
