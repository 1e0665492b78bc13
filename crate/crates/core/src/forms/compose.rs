//! Gauss composition of form classes.
//!
//! Composition is computed through united representatives: the second form
//! is first moved to an equivalent form whose leading coefficient is coprime
//! to that of the first. Both leading coefficients then survive into the
//! product form, and the middle coefficient is stitched together by the
//! Chinese remainder theorem.

use num_integer::Integer;

use crate::arith::factor_u64;

use super::qform::QForm;
use super::FormError;

/// A proper equivalence moving `f` to a form whose leading coefficient is
/// coprime to `n`. Needs f primitive, which the QForm invariant supplies.
fn coprime_transform(f: &QForm, n: i64) -> QForm {
    if f.a().gcd(&n) == 1 {
        return *f;
    }
    // For each prime p | n one of (1,0), (0,1), (1,1) evaluates to a unit
    // mod p; otherwise p would divide all of a, c, a+b+c and hence b.
    let mut x: i128 = 0;
    let mut y: i128 = 0;
    let mut modulus: i128 = 1;
    for (p, _) in factor_u64(n.unsigned_abs()) {
        let p = p as i64;
        let (xp, yp) = [(1, 0), (0, 1), (1, 1)]
            .into_iter()
            .find(|&(xp, yp)| f.eval(xp, yp).mod_floor(&(p as i128)) != 0)
            .expect("primitive forms represent a unit modulo every prime");
        // One CRT step for x and y simultaneously.
        let pi = p as i128;
        let inv = modulus.extended_gcd(&pi).x.mod_floor(&pi);
        x += modulus * ((xp as i128 - x) * inv).mod_floor(&pi);
        y += modulus * ((yp as i128 - y) * inv).mod_floor(&pi);
        modulus *= pi;
    }
    let g = x.gcd(&y);
    let (x, y) = ((x / g) as i64, (y / g) as i64);
    // Extend the primitive column (x, y) to a determinant-one matrix.
    let e = x.extended_gcd(&y);
    debug_assert_eq!(e.gcd, 1);
    let moved = f.transform(x, -e.y, y, e.x);
    debug_assert_eq!(moved.a().gcd(&n), 1);
    moved
}

/// The Dirichlet composite of two forms of the same discriminant, reduced.
/// Composition of classes is well defined; the reduced output is the unique
/// reduced form for negative discriminants and a cycle member otherwise.
pub fn compose(f: &QForm, g: &QForm) -> Result<QForm, FormError> {
    if f.disc() != g.disc() {
        return Err(FormError::DiscMismatch(f.disc(), g.disc()));
    }
    let d = f.disc() as i128;
    let g = coprime_transform(g, f.a());
    let (a1, b1) = (f.a() as i128, f.b() as i128);
    let (a2, b2) = (g.a() as i128, g.b() as i128);

    // b == b1 mod 2 a1 and b == b2 mod 2 a2; the halved difference is
    // integral because both sides match the discriminant parity.
    let inv = a1.extended_gcd(&a2).x;
    let k = (((b2 - b1) / 2) * inv).mod_floor(&a2.abs());
    let a = a1 * a2;
    let m = 2 * a.abs();
    let mut b = (b1 + 2 * a1 * k).mod_floor(&m);
    if b > a.abs() {
        b -= m;
    }
    debug_assert_eq!((b - b1).mod_floor(&(2 * a1).abs()), 0);
    debug_assert_eq!((b - b2).mod_floor(&(2 * a2).abs()), 0);
    let num = b * b - d;
    debug_assert_eq!(num.mod_floor(&(4 * a)), 0);
    let c = num / (4 * a);
    let fit = |x: i128| x.try_into().expect("composite coefficients fit i64");
    Ok(QForm::new(fit(a), fit(b), fit(c))?.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(a: i64, b: i64, c: i64) -> QForm {
        QForm::new(a, b, c).unwrap()
    }

    #[test]
    fn squaring_the_nontrivial_class() {
        // disc -20 has two classes; the non-principal one has order two.
        let f = qf(2, 2, 3);
        assert_eq!(compose(&f, &f).unwrap(), qf(1, 0, 5));
    }

    #[test]
    fn cyclic_group_of_order_three() {
        // disc -23: (2, 1, 3) generates; its square is its inverse.
        let f = qf(2, 1, 3);
        let f2 = compose(&f, &f).unwrap();
        assert_eq!(f2, qf(2, -1, 3));
        assert_eq!(compose(&f2, &f).unwrap(), qf(1, 1, 6));
    }

    #[test]
    fn identity_and_inverse_laws() {
        let cases = [qf(2, 1, 3), qf(3, 1, 2), qf(2, 2, 3), qf(3, 2, -3), qf(-3, 2, 3)];
        for f in cases {
            let e = QForm::principal(f.disc()).unwrap().reduced();
            let with_id = compose(&f, &e).unwrap();
            let inv = compose(&f, &f.opposite()).unwrap();
            if f.disc() < 0 {
                // reduced forms are unique per class
                assert_eq!(with_id, f.reduced());
                assert_eq!(inv, e);
            } else {
                // reduced forms are unique per class up to the rho cycle
                assert!(f.reduced().cycle().contains(&with_id));
                assert!(e.cycle().contains(&inv));
            }
        }
    }

    #[test]
    fn commutes_and_associates() {
        let f = qf(2, 1, 3);
        let g = qf(3, 1, 2);
        let h = qf(2, -1, 3);
        assert_eq!(compose(&f, &g).unwrap(), compose(&g, &f).unwrap());
        let fg_h = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let f_gh = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        assert_eq!(fg_h, f_gh);
    }

    #[test]
    fn indefinite_composition_lands_on_the_right_cycle() {
        // disc 40: the non-principal class squares to the principal one.
        let f = qf(-3, 2, 3);
        let sq = compose(&f, &f).unwrap();
        assert!(qf(1, 6, -1).cycle().contains(&sq));
    }

    #[test]
    fn mismatched_discriminants_are_rejected() {
        let e = compose(&qf(2, 1, 3), &qf(1, 0, 5));
        assert_eq!(e, Err(FormError::DiscMismatch(-23, -20)));
    }
}
