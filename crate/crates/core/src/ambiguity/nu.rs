//! The sign homomorphism separating ambiguous classes from strongly
//! ambiguous ones.
//!
//! For an ideal whose class is fixed by conjugation, the quotient
//! conj(a) / a is principal; any generator is a unit times any other, so
//! the sign of the generator norm is well defined modulo norms of units.
//! The classes where that coset is trivial are exactly the classes of
//! invariant ideals.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::AmbiguityError;
use crate::abgroup::{Elem, FinAbGroup};
use crate::forms::{ideal_of_form, ClassGroup};
use crate::quadfield::{is_principal_with_generator, OIdeal};
use crate::units::UnitData;

/// Sign of the norm of a generator of conj(x) / x, or an error when that
/// quotient is not principal (the class of x is not ambiguous).
///
/// The value is only meaningful as a coset modulo norms of units: replacing
/// x by an equivalent ideal multiplies the generator by gamma / conj(gamma),
/// whose norm is 1, and replacing the generator changes the norm by a unit
/// norm.
pub fn nu_of_ideal(x: &OIdeal) -> Result<i32, AmbiguityError> {
    let quotient = x
        .conjugate()
        .mul(&x.inverse())
        .expect("conjugate shares the field");
    let Some(alpha) = is_principal_with_generator(&quotient) else {
        return Err(AmbiguityError::NotAmbiguous(format!("{x}")));
    };
    let norm = alpha.norm();
    debug_assert!(norm.abs().is_one(), "conj(x)/x has norm 1");
    Ok(if norm.is_negative() { -1 } else { 1 })
}

/// The sign homomorphism evaluated on a narrow class via its reduced
/// representative.
pub fn nu_map(cl: &ClassGroup, class: usize) -> Result<i32, AmbiguityError> {
    let x = ideal_of_form(&cl.rep(class))?;
    nu_of_ideal(&x)
}

/// The codomain of the sign map: {1, -1} modulo norms of units, as an
/// abstract group. Trivial when -1 is already a unit norm or fails to be
/// a norm at all; of order 2 in between.
pub fn nu_codomain(units: &UnitData) -> FinAbGroup {
    if units.idx_e == units.idx_q {
        FinAbGroup::trivial()
    } else {
        FinAbGroup::from_i64_factors(&[2]).expect("order two group")
    }
}

/// The coset of a computed sign inside [`nu_codomain`].
///
/// Generator norms are norms from the field, so a sign of -1 only ever
/// arises when -1 is a global norm.
pub fn nu_coset(units: &UnitData, sign: i32) -> Elem {
    debug_assert!(sign == 1 || units.idx_q == 1, "-1 must be a global norm");
    let codomain = nu_codomain(units);
    if codomain.is_trivial() || sign == 1 {
        codomain.zero()
    } else {
        codomain.reduce(&[BigInt::from(1)]).expect("generator")
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use num_traits::ToPrimitive;

    use super::*;
    use crate::ambiguity::{ambiguous_subgroup, sigma_class, strongly_ambiguous_subgroup};
    use crate::forms::{class_group, class_of_ideal, ideals_up_to};
    use crate::quadfield::FundamentalDiscriminant;
    use crate::units::unit_data;

    fn field(delta: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(delta).unwrap()
    }

    /// Whether a sign represents the trivial coset modulo unit norms.
    fn trivial(idx_e: u64, sign: i32) -> bool {
        sign == 1 || idx_e == 1
    }

    #[test]
    fn principal_class_maps_to_the_trivial_coset() {
        for &delta in &[-84, -20, -4, 5, 8, 60, 136] {
            let cl = class_group(&field(delta));
            assert_eq!(nu_map(&cl, cl.principal_class()).unwrap(), 1, "delta {delta}");
        }
    }

    #[test]
    fn strongly_ambiguous_classes_map_to_the_trivial_coset() {
        let fd = field(-20);
        let cl = class_group(&fd);
        let units = unit_data(&fd);
        for i in 0..cl.class_count() {
            let sign = nu_map(&cl, i).unwrap();
            assert!(trivial(units.idx_e, sign), "class {i}");
        }
    }

    #[test]
    fn nontrivial_coset_appears_when_the_indices_differ() {
        // Both ordinary classes are ambiguous but only the principal one is
        // strongly ambiguous, so the other must carry the nontrivial coset.
        let fd = field(136);
        let cl = class_group(&fd);
        let units = unit_data(&fd);
        assert_eq!(units.idx_q, 1);
        assert_eq!(units.idx_e, 2);
        let st = strongly_ambiguous_subgroup(&fd, &cl);
        let mut seen_nontrivial = false;
        for i in 0..cl.class_count() {
            let sign = nu_map(&cl, i).unwrap();
            let in_kernel = st.contains(cl.wide_elem(i)).unwrap();
            assert_eq!(trivial(units.idx_e, sign), in_kernel, "class {i}");
            seen_nontrivial |= sign == -1;
        }
        assert!(seen_nontrivial);
    }

    #[test]
    fn value_does_not_depend_on_the_representative() {
        for &delta in &[-84, -20, 60, 136] {
            let fd = field(delta);
            let cl = class_group(&fd);
            let units = unit_data(&fd);
            let am = ambiguous_subgroup(&cl);
            // Compare the coset from every small sweep ideal against the
            // reduced representative of its class.
            let mut reps_seen: HashMap<Elem, u32> = HashMap::new();
            for x in ideals_up_to(&fd, 40) {
                let idx = class_of_ideal(&cl, &x).unwrap();
                let w = cl.wide_elem(idx).clone();
                if !am.contains(&w).unwrap() {
                    continue;
                }
                *reps_seen.entry(w).or_insert(0) += 1;
                let from_sweep = nu_of_ideal(&x).unwrap();
                let from_rep = nu_map(&cl, idx).unwrap();
                assert_eq!(
                    trivial(units.idx_e, from_sweep),
                    trivial(units.idx_e, from_rep),
                    "delta {delta}, ideal {x}"
                );
            }
            // Every ambiguous class was exercised with several ideals.
            assert_eq!(reps_seen.len() as u64, am.order().to_u64().unwrap());
            assert!(reps_seen.values().all(|&n| n >= 3), "delta {delta}");
        }
    }

    #[test]
    fn cosets_obey_the_quotient_group_algebra() {
        for &delta in &[-20, 8, 60, 136] {
            let fd = field(delta);
            let units = unit_data(&fd);
            let codomain = nu_codomain(&units);
            assert_eq!(
                codomain.order().to_u64().unwrap(),
                units.idx_e / units.idx_q,
                "delta {delta}"
            );
            let signs: &[i32] = if units.idx_q == 1 { &[1, -1] } else { &[1] };
            for &s in signs {
                for &t in signs {
                    let sum = codomain
                        .add(&nu_coset(&units, s), &nu_coset(&units, t))
                        .unwrap();
                    assert_eq!(sum, nu_coset(&units, s * t), "delta {delta}");
                }
                assert_eq!(
                    codomain.is_zero_elem(&nu_coset(&units, s)),
                    trivial(units.idx_e, s),
                    "delta {delta}"
                );
            }
        }
    }

    #[test]
    fn cosets_multiply_along_class_composition() {
        for &delta in &[-84, -20, 60, 136] {
            let fd = field(delta);
            let cl = class_group(&fd);
            let units = unit_data(&fd);
            let ambiguous: Vec<usize> = (0..cl.class_count())
                .filter(|&i| sigma_class(&cl, i) == i)
                .collect();
            for &i in &ambiguous {
                for &j in &ambiguous {
                    let k = cl.compose_classes(i, j);
                    let product = nu_map(&cl, i).unwrap() * nu_map(&cl, j).unwrap();
                    assert_eq!(
                        trivial(units.idx_e, product),
                        trivial(units.idx_e, nu_map(&cl, k).unwrap()),
                        "delta {delta}, classes {i} {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn unfixed_classes_are_rejected() {
        let cl = class_group(&field(-23));
        let nonprincipal = (0..cl.class_count())
            .find(|&i| i != cl.principal_class())
            .unwrap();
        assert!(matches!(
            nu_map(&cl, nonprincipal),
            Err(AmbiguityError::NotAmbiguous(_))
        ));
    }
}
