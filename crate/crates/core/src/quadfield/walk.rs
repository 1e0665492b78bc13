//! Lattice reduction walks on ideals.
//!
//! One flip identity drives everything here: for any representative B of
//! the class b mod 2a,
//!
//!   [a, (B + sqrt(D))/2] = mu * [A', (-B + sqrt(D))/2],
//!   A' = |D - B^2| / (4a),  mu = (B + sqrt(D)) / (2 A'),
//!
//! because mu * A' = (B + sqrt(D))/2 and mu * (-B + sqrt(D))/2 = +-a.
//! Imaginary fields walk until a <= c and read principality off a = 1.
//! Real fields walk the periodic continued-fraction cycle; the class is
//! principal exactly when the cycle passes through a = 1, and the walk of
//! the unit ideal around its own cycle produces the fundamental unit.

use std::collections::HashMap;
use std::collections::hash_map::Entry;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::elem::{QuadInt, QuadNum};
use super::ideal::OIdeal;

fn flip(delta: i64, a: &BigInt, big_b: &BigInt) -> (OIdeal, QuadNum) {
    let n: BigInt = (BigInt::from(delta) - big_b * big_b) / (a * BigInt::from(4));
    let a2 = n.abs();
    let next = OIdeal::new(delta, num_rational::BigRational::one(), a2.clone(), -big_b)
        .expect("flip preserves the ideal congruence");
    let mu = QuadNum::new(
        QuadInt::new(delta, big_b.clone(), BigInt::one()).expect("B has the parity of D"),
        a2,
    )
    .expect("positive denominator");
    (next, mu)
}

/// Representative of b mod 2a in the continued-fraction window
/// (s - 2a, s], where s = floor(sqrt(D)).
fn cf_b(s: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
    s - (s - b).mod_floor(&(a * 2))
}

fn isqrt_delta(delta: i64) -> BigInt {
    BigInt::from(crate::arith::isqrt_u64(delta as u64))
}

/// Decides principality and, for principal ideals, produces the canonical
/// generator: the associate of largest coordinates under torsion units for
/// imaginary fields, and for real fields the positive associate gamma with
/// sqrt(|N gamma|) <= gamma < sqrt(|N gamma|) eps.
pub fn is_principal_with_generator(x: &OIdeal) -> Option<QuadNum> {
    let delta = x.delta();
    let content = QuadNum::from_rational(delta, x.content()).unwrap();
    let mut cur = x.primitive_part();
    let mut gamma = QuadNum::one(delta);
    if delta < 0 {
        loop {
            let c = (cur.b() * cur.b() - delta) / (cur.a() * 4);
            if cur.a() <= &c {
                break;
            }
            let (next, mu) = flip(delta, cur.a(), cur.b());
            gamma = gamma.mul(&mu).unwrap();
            cur = next;
        }
        if cur.a().is_one() {
            Some(normalize_imaginary(gamma.mul(&content).unwrap()))
        } else {
            None
        }
    } else {
        let s = isqrt_delta(delta);
        let mut seen = HashMap::new();
        loop {
            if cur.a().is_one() {
                return Some(normalize_real(gamma.mul(&content).unwrap()));
            }
            match seen.entry((cur.a().clone(), cur.b().clone())) {
                Entry::Occupied(_) => return None,
                Entry::Vacant(v) => v.insert(()),
            };
            let big_b = cf_b(&s, cur.a(), cur.b());
            let (next, mu) = flip(delta, cur.a(), &big_b);
            gamma = gamma.mul(&mu).unwrap();
            cur = next;
            assert!(seen.len() < 10_000_000, "reduction walk does not terminate");
        }
    }
}

pub fn is_principal(x: &OIdeal) -> bool {
    is_principal_with_generator(x).is_some()
}

/// Torsion units of the order: 2 generically, 4 for D = -4, 6 for D = -3,
/// 2 for real fields.
pub fn torsion_units(delta: i64) -> Vec<QuadInt> {
    let gen = match delta {
        -4 => QuadInt::new(-4, 0, 1).unwrap(),
        -3 => QuadInt::new(-3, 1, 1).unwrap(),
        _ => QuadInt::from_int(delta, -1),
    };
    let one = QuadInt::one(delta);
    let mut out = vec![one.clone()];
    let mut t = gen.clone();
    while t != one {
        out.push(t.clone());
        t = t.mul(&gen).unwrap();
    }
    out
}

fn normalize_imaginary(gamma: QuadNum) -> QuadNum {
    torsion_units(gamma.delta())
        .iter()
        .map(|t| gamma.mul_int(t).unwrap())
        .max_by(|x, y| {
            (x.numerator().u(), x.numerator().v()).cmp(&(y.numerator().u(), y.numerator().v()))
        })
        .unwrap()
}

fn normalize_real(gamma: QuadNum) -> QuadNum {
    let delta = gamma.delta();
    let eps = QuadNum::from_int_elem(fundamental_unit(delta));
    let eps_inv = eps.inverse().unwrap();
    let lower = QuadNum::from_rational(delta, &gamma.norm().abs()).unwrap();
    let upper = lower.mul(&eps).unwrap().mul(&eps).unwrap();
    let mut gamma = gamma;
    loop {
        let g2 = gamma.mul(&gamma).unwrap();
        if g2.cmp_value(&lower) == std::cmp::Ordering::Less {
            gamma = gamma.mul(&eps).unwrap();
        } else if g2.cmp_value(&upper) != std::cmp::Ordering::Less {
            gamma = gamma.mul(&eps_inv).unwrap();
        } else {
            break;
        }
    }
    if gamma.signum() < 0 {
        gamma.neg()
    } else {
        gamma
    }
}

/// The fundamental unit eps > 1 of the real field of discriminant D,
/// computed by walking the unit ideal once around its reduction cycle.
pub fn fundamental_unit(delta: i64) -> QuadInt {
    assert!(delta > 0, "fundamental unit requires a real field");
    static CACHE: OnceLock<Mutex<HashMap<i64, QuadInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(u) = cache.lock().unwrap().get(&delta) {
        return u.clone();
    }
    let s = isqrt_delta(delta);
    let start = OIdeal::one(delta);
    let mut cur = start.clone();
    let mut pi = QuadNum::one(delta);
    let mut steps = 0u32;
    loop {
        let big_b = cf_b(&s, cur.a(), cur.b());
        let (next, mu) = flip(delta, cur.a(), &big_b);
        pi = pi.mul(&mu).unwrap();
        cur = next;
        steps += 1;
        if cur == start {
            break;
        }
        assert!(steps < 10_000_000, "unit walk does not terminate");
    }
    if pi.abs_cmp(&QuadNum::one(delta)) == std::cmp::Ordering::Less {
        pi = pi.inverse().unwrap();
    }
    if pi.signum() < 0 {
        pi = pi.neg();
    }
    let unit = pi.as_integer().expect("units of the order are integral");
    debug_assert!(unit.norm().abs().is_one());
    cache.lock().unwrap().insert(delta, unit.clone());
    unit
}
