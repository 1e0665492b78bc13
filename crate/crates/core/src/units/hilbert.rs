//! Hilbert symbols over Q, by closed formula and by direct search.

use crate::arith::{factor_u64, is_prime_u64, kronecker};

use super::UnitError;

/// A place of Q: a finite prime or the archimedean absolute value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(i64),
    Infinity,
}

impl Place {
    /// The prime under a finite place, None at infinity, error otherwise.
    fn checked_prime(self) -> Result<Option<i64>, UnitError> {
        match self {
            Place::Infinity => Ok(None),
            Place::Finite(p) if p >= 2 && is_prime_u64(p as u64) => Ok(Some(p)),
            Place::Finite(p) => Err(UnitError::InvalidPlace(p)),
        }
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

/// Splits x as p^v * u with p not dividing u, returning (v, u).
fn split_valuation(mut x: i64, p: i64) -> (u32, i64) {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// (u - 1)/2 mod 2 for odd u.
fn eps2(u: i64) -> u32 {
    (u.rem_euclid(4) == 3) as u32
}

/// (u^2 - 1)/8 mod 2 for odd u.
fn omega2(u: i64) -> u32 {
    matches!(u.rem_euclid(8), 3 | 5) as u32
}

/// The Hilbert symbol of (a, b) at a place: +1 when z^2 = a x^2 + b y^2 has
/// a nontrivial solution in the completion, -1 when it does not.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i32, UnitError> {
    if a == 0 || b == 0 {
        return Err(UnitError::ZeroArgument(a, b));
    }
    let p = match place.checked_prime()? {
        None => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Some(p) => p,
    };
    let (alpha, u) = split_valuation(a, p);
    let (beta, w) = split_valuation(b, p);
    if p == 2 {
        let e = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let mut s = 1;
    if alpha % 2 == 1 && beta % 2 == 1 {
        s *= kronecker(-1, p);
    }
    if beta % 2 == 1 {
        s *= kronecker(u, p);
    }
    if alpha % 2 == 1 {
        s *= kronecker(w, p);
    }
    Ok(s)
}

/// Sign times the product of primes dividing x to an odd power. Dividing
/// square factors out of an argument never moves a symbol.
fn squarefree_kernel(x: i64) -> i64 {
    let mut k = x.signum();
    for (p, e) in factor_u64(x.unsigned_abs()) {
        if e % 2 == 1 {
            k *= p as i64;
        }
    }
    k
}

/// Whether nonzero x is a square in Q_p, for odd p.
fn is_padic_square(mut x: i128, p: i64) -> bool {
    debug_assert!(x != 0 && p % 2 == 1);
    let mut v = 0u32;
    while x % p as i128 == 0 {
        x /= p as i128;
        v += 1;
    }
    v % 2 == 0 && kronecker(x.rem_euclid(p as i128) as i64, p) == 1
}

/// Local solvability of z^2 = a x^2 + b y^2 decided by search, sharing no
/// formulas with `hilbert_symbol`: the real place reads signs, the 2-adic
/// place enumerates primitive triples to the lifting precision, and odd
/// places sweep one affine parameter under an exact square test.
pub fn hilbert_symbol_bruteforce(a: i64, b: i64, place: Place) -> Result<i32, UnitError> {
    if a == 0 || b == 0 {
        return Err(UnitError::ZeroArgument(a, b));
    }
    let p = match place.checked_prime()? {
        None => {
            // anisotropic over the reals only when negative definite
            return Ok(if a < 0 && b < 0 { -1 } else { 1 });
        }
        Some(p) => p,
    };
    let a = squarefree_kernel(a);
    let b = squarefree_kernel(b);
    if p == 2 {
        // a primitive triple solving the congruence mod 2^k lifts 2-adically
        // once k reaches v(4ab) + 3; squarefree arguments keep k at 7 or less
        let k = 2 + split_valuation(a, 2).0 + split_valuation(b, 2).0 + 3;
        let m = 1i64 << k;
        let mut square_any = vec![false; m as usize];
        let mut square_odd = vec![false; m as usize];
        for z in 0..m {
            square_any[((z * z) % m) as usize] = true;
            if z % 2 == 1 {
                square_odd[((z * z) % m) as usize] = true;
            }
        }
        for x in 0..m {
            for y in 0..m {
                let rhs = (a * x * x + b * y * y).rem_euclid(m) as usize;
                // primitivity: x, y both even forces z odd
                let hit = if x % 2 == 0 && y % 2 == 0 {
                    square_odd[rhs]
                } else {
                    square_any[rhs]
                };
                if hit {
                    return Ok(1);
                }
            }
        }
        return Ok(-1);
    }
    // degenerate directions first: z = 0 needs -ab to be a square, the
    // x = 0 patch needs b, and t = 0 below needs a
    if is_padic_square(-(a as i128) * b as i128, p)
        || is_padic_square(a as i128, p)
        || is_padic_square(b as i128, p)
    {
        return Ok(1);
    }
    // every remaining solution scales to z^2 = a + b t^2 with v(t) >= -2,
    // and truncating t below the sweep modulus cannot change squareness
    let k = split_valuation(a, p).0 + split_valuation(b, p).0 + 3;
    let pk = (p as i128).pow(k);
    for j in 0..=2u32 {
        let scale = (p as i128).pow(2 * j);
        for n in 0..pk {
            let val = a as i128 * scale + b as i128 * n * n;
            if val != 0 && is_padic_square(val, p) {
                return Ok(1);
            }
        }
    }
    Ok(-1)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn sym(a: i64, b: i64, place: Place) -> i32 {
        hilbert_symbol(a, b, place).unwrap()
    }

    fn raw(a: i64, b: i64, place: Place) -> i32 {
        hilbert_symbol_bruteforce(a, b, place).unwrap()
    }

    /// Representatives of every square class of Q_p^x for the given prime,
    /// signs included so the real place sees both.
    fn square_class_reps(p: i64) -> Vec<i64> {
        let nonresidue = (2..).find(|&n| kronecker(n, p) == -1).unwrap();
        let units = if p == 2 { vec![1, 3, 5, 7] } else { vec![1, nonresidue] };
        let mut reps = Vec::new();
        for u in units {
            for s in [1, -1] {
                reps.push(s * u);
                reps.push(s * u * p);
            }
        }
        reps
    }

    #[test]
    fn known_symbol_values() {
        assert_eq!(sym(-1, -1, Place::Infinity), -1);
        assert_eq!(sym(-1, 7, Place::Infinity), 1);
        assert_eq!(sym(3, 5, Place::Finite(5)), -1);
        assert_eq!(sym(-1, 5, Place::Finite(5)), 1);
        assert_eq!(sym(5, 7, Place::Finite(7)), -1);
        assert_eq!(sym(-1, -1, Place::Finite(2)), -1);
        assert_eq!(sym(2, 7, Place::Finite(2)), 1);
        assert_eq!(sym(3, 5, Place::Finite(2)), 1);
    }

    #[test]
    fn rejects_zero_arguments_and_bad_places() {
        assert_eq!(
            hilbert_symbol(0, 3, Place::Infinity),
            Err(UnitError::ZeroArgument(0, 3))
        );
        assert_eq!(
            hilbert_symbol_bruteforce(5, 0, Place::Finite(3)),
            Err(UnitError::ZeroArgument(5, 0))
        );
        for bad in [-3, 0, 1, 6, 9] {
            assert_eq!(
                hilbert_symbol(1, 1, Place::Finite(bad)),
                Err(UnitError::InvalidPlace(bad))
            );
            assert_eq!(
                hilbert_symbol_bruteforce(1, 1, Place::Finite(bad)),
                Err(UnitError::InvalidPlace(bad))
            );
        }
    }

    #[test]
    fn symmetry_bilinearity_and_square_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let places = [
            Place::Infinity,
            Place::Finite(2),
            Place::Finite(3),
            Place::Finite(5),
            Place::Finite(7),
            Place::Finite(13),
        ];
        for _ in 0..500 {
            let place = places[rng.gen_range(0..places.len())];
            let pick = |rng: &mut ChaCha8Rng| loop {
                let x = rng.gen_range(-300..=300i64);
                if x != 0 {
                    break x;
                }
            };
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            assert_eq!(sym(a, b, place), sym(b, a, place));
            assert_eq!(sym(a * c * c, b, place), sym(a, b, place));
            assert_eq!(sym(a * c, b, place), sym(a, b, place) * sym(c, b, place));
        }
    }

    #[test]
    fn reciprocity_over_all_places() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let pick = |rng: &mut ChaCha8Rng| loop {
                let x = rng.gen_range(-10_000..=10_000i64);
                if x != 0 {
                    break x;
                }
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            // symbols are +1 away from 2, infinity, and the odd support of ab
            let mut product = sym(a, b, Place::Infinity) * sym(a, b, Place::Finite(2));
            for (p, _) in factor_u64((a * b).unsigned_abs()) {
                if p > 2 {
                    product *= sym(a, b, Place::Finite(p as i64));
                }
            }
            assert_eq!(product, 1, "pair ({a}, {b})");
        }
    }

    #[test]
    fn symbols_are_trivial_off_the_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let a = rng.gen_range(1..=10_000i64);
            let b = rng.gen_range(1..=10_000i64);
            let p = [101, 103, 10_007][rng.gen_range(0..3)];
            if a % p != 0 && b % p != 0 {
                assert_eq!(sym(a, b, Place::Finite(p)), 1);
            }
        }
    }

    #[test]
    fn search_agrees_at_the_real_place() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..500 {
            let pick = |rng: &mut ChaCha8Rng| loop {
                let x = rng.gen_range(-10_000..=10_000i64);
                if x != 0 {
                    break x;
                }
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            assert_eq!(raw(a, b, Place::Infinity), sym(a, b, Place::Infinity));
        }
    }

    #[test]
    fn search_agrees_at_two() {
        // all 16 x 16 pairs of 2-adic square classes, then random noise on
        // top to exercise the squarefree reduction
        let reps = square_class_reps(2);
        for &a in &reps {
            for &b in &reps {
                assert_eq!(raw(a, b, Place::Finite(2)), sym(a, b, Place::Finite(2)), "({a}, {b})");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..244 {
            let pick = |rng: &mut ChaCha8Rng| loop {
                let x = rng.gen_range(-500..=500i64);
                if x != 0 {
                    break x;
                }
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            assert_eq!(raw(a, b, Place::Finite(2)), sym(a, b, Place::Finite(2)), "({a}, {b})");
        }
    }

    #[test]
    fn search_agrees_at_odd_places() {
        for p in [3, 5, 7, 11, 13] {
            let reps = square_class_reps(p);
            for &a in &reps {
                for &b in &reps {
                    assert_eq!(
                        raw(a, b, Place::Finite(p)),
                        sym(a, b, Place::Finite(p)),
                        "({a}, {b}) at {p}"
                    );
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..180 {
            let p = [3, 5, 7, 11, 13][rng.gen_range(0..5)];
            let pick = |rng: &mut ChaCha8Rng| loop {
                let x = rng.gen_range(-10_000..=10_000i64);
                if x != 0 {
                    break x;
                }
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            assert_eq!(
                raw(a, b, Place::Finite(p)),
                sym(a, b, Place::Finite(p)),
                "({a}, {b}) at {p}"
            );
        }
    }
}
