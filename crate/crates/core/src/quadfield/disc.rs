//! Fundamental discriminants and prime ramification data.

use serde::Serialize;

use crate::arith::{factor_u64, is_squarefree_u64, kronecker};

use super::FieldError;

/// A fundamental discriminant D of a quadratic field: either D = 1 (mod 4)
/// and squarefree, or D = 4m with m = 2, 3 (mod 4) and squarefree. D = 1 is
/// excluded. The finite ramified primes are exactly the primes dividing D.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalDiscriminant {
    delta: i64,
    ramified: Vec<i64>,
}

impl FundamentalDiscriminant {
    /// Validates and classifies `delta`.
    pub fn new(delta: i64) -> Result<Self, FieldError> {
        if delta == 0 || delta == 1 {
            return Err(FieldError::NotFundamental(delta));
        }
        let ok = match delta.rem_euclid(4) {
            1 => is_squarefree_u64(delta.unsigned_abs()),
            0 => {
                let m = delta / 4;
                let r = m.rem_euclid(4);
                (r == 2 || r == 3) && is_squarefree_u64(m.unsigned_abs())
            }
            _ => false,
        };
        if !ok {
            return Err(FieldError::NotFundamental(delta));
        }
        let ramified = factor_u64(delta.unsigned_abs())
            .into_iter()
            .map(|(p, _)| p as i64)
            .collect();
        Ok(FundamentalDiscriminant { delta, ramified })
    }

    pub fn value(&self) -> i64 {
        self.delta
    }

    pub fn is_imaginary(&self) -> bool {
        self.delta < 0
    }

    /// Finite primes ramified in the field, ascending.
    pub fn ramified_primes(&self) -> &[i64] {
        &self.ramified
    }

    /// Number of ramified places: the finite ramified primes, plus the
    /// infinite place when the field is imaginary.
    pub fn ramified_place_count(&self) -> u32 {
        self.ramified.len() as u32 + if self.delta < 0 { 1 } else { 0 }
    }

    /// Kronecker symbol (D/n); the splitting symbol of the field.
    pub fn chi(&self, n: i64) -> i32 {
        kronecker(self.delta, n)
    }
}

impl std::fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.delta)
    }
}

/// All fundamental discriminants d with lo <= d <= hi, ascending.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<FundamentalDiscriminant> {
    (lo..=hi)
        .filter_map(|d| FundamentalDiscriminant::new(d).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_known_fundamentals() {
        for d in [-3, -4, -7, -8, -11, -15, -20, -23, 5, 8, 12, 13, 17, 21, 24, 136] {
            assert!(FundamentalDiscriminant::new(d).is_ok(), "{} should be fundamental", d);
        }
    }

    #[test]
    fn rejects_non_fundamentals() {
        // 0, 1, squares times fundamentals, wrong residues.
        for d in [0, 1, -1, -2, 2, 3, 4, -9, 9, 16, -12, 25, 45, -18, -16, 100, -100, -44] {
            assert!(FundamentalDiscriminant::new(d).is_err(), "{} should be rejected", d);
        }
    }

    #[test]
    fn fundamental_iff_conductor_one() {
        // d is fundamental iff d is the discriminant of Q(sqrt(d)), i.e. no
        // proper square divisor leaves a valid discriminant.
        for d in -300..300i64 {
            if d == 0 || d == 1 {
                continue;
            }
            let is_disc = d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1;
            let minimal = is_disc
                && !(2..)
                    .take_while(|f| f * f <= d.abs())
                    .any(|f| {
                        let ff = f * f;
                        d % ff == 0 && {
                            let r = (d / ff).rem_euclid(4);
                            r == 0 || r == 1
                        }
                    });
            assert_eq!(
                FundamentalDiscriminant::new(d).is_ok(),
                minimal,
                "disagree at {}",
                d
            );
        }
    }

    #[test]
    fn ramified_primes_divide_discriminant() {
        for fd in fundamental_discriminants(-500, 500) {
            for &p in fd.ramified_primes() {
                assert_eq!(fd.value() % p, 0);
                assert_eq!(fd.chi(p), 0);
            }
            // chi is nonzero away from the ramified primes.
            for q in [3i64, 5, 7, 11, 13] {
                if fd.value() % q != 0 {
                    assert_ne!(fd.chi(q), 0);
                }
            }
        }
    }

    #[test]
    fn place_counts() {
        let d20 = FundamentalDiscriminant::new(-20).unwrap();
        assert_eq!(d20.ramified_primes(), &[2, 5]);
        assert_eq!(d20.ramified_place_count(), 3);

        let d136 = FundamentalDiscriminant::new(136).unwrap();
        assert_eq!(d136.ramified_primes(), &[2, 17]);
        assert_eq!(d136.ramified_place_count(), 2);

        let d5 = FundamentalDiscriminant::new(5).unwrap();
        assert_eq!(d5.ramified_primes(), &[5]);
        assert_eq!(d5.ramified_place_count(), 1);

        let d3 = FundamentalDiscriminant::new(-3).unwrap();
        assert_eq!(d3.ramified_place_count(), 2);
    }

    #[test]
    fn range_listing_counts() {
        // Count tallied by hand: 21 odd-type (d = 1 mod 4 squarefree) plus
        // 10 even-type (d = 4m, m = 2, 3 mod 4 squarefree) in [-100, -1].
        let negs = fundamental_discriminants(-100, -1);
        assert_eq!(negs.len(), 31);
        assert_eq!(negs.first().unwrap().value(), -95);
        let poss = fundamental_discriminants(2, 100);
        for fd in &poss {
            assert!(fd.value() >= 5);
        }
    }
}
