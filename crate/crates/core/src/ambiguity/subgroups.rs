//! The two conjugation-defined subgroups of the ordinary class group.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::abgroup::{subgroup_generated, Elem, Subgroup};
use crate::forms::{class_of_ideal, ideal_of_form, ideals_up_to, ClassGroup};
use crate::quadfield::{prime_splitting, FundamentalDiscriminant, Splitting};

/// Image of a narrow class under conjugation of a representative ideal.
///
/// Well defined because conjugation preserves principality and signs of
/// norms, so it descends from ideals to narrow classes.
pub fn sigma_class(cl: &ClassGroup, class: usize) -> usize {
    let x = ideal_of_form(&cl.rep(class)).expect("representative form is valid");
    class_of_ideal(cl, &x.conjugate()).expect("conjugate lives in the same field")
}

/// Subgroup of the ordinary class group fixed by conjugation.
pub fn ambiguous_subgroup(cl: &ClassGroup) -> Subgroup {
    // Conjugation on narrow classes descends to ordinary classes; record
    // the induced map and keep the fixed points.
    let mut sigma: HashMap<Elem, Elem> = HashMap::new();
    for i in 0..cl.class_count() {
        let w = cl.wide_elem(i).clone();
        let sw = cl.wide_elem(sigma_class(cl, i)).clone();
        if let Some(prev) = sigma.insert(w, sw.clone()) {
            assert_eq!(prev, sw, "conjugation descends to ordinary classes");
        }
    }
    let fixed: Vec<Elem> = sigma
        .iter()
        .filter(|(w, sw)| w == sw)
        .map(|(w, _)| w.clone())
        .collect();
    let sub = subgroup_generated(cl.wide_group(), &fixed).expect("fixed classes are ambient");
    // Fixed points of an automorphism already form a subgroup, so the
    // generated span adds nothing.
    assert_eq!(sub.order(), BigInt::from(fixed.len()));
    sub
}

/// Subgroup of the ordinary class group generated by the classes of the
/// ramified prime ideals. These are exactly the classes containing a
/// conjugation-invariant ideal.
pub fn strongly_ambiguous_subgroup(fd: &FundamentalDiscriminant, cl: &ClassGroup) -> Subgroup {
    let mut gens = Vec::new();
    for &p in fd.ramified_primes() {
        let split = prime_splitting(fd, p).expect("ramified primes divide the discriminant");
        let Splitting::Ramified(x) = split else {
            unreachable!("primes dividing the discriminant ramify");
        };
        let idx = class_of_ideal(cl, &x).expect("same field");
        gens.push(cl.wide_elem(idx).clone());
    }
    subgroup_generated(cl.wide_group(), &gens).expect("prime classes are ambient")
}

/// Ordinary classes met by invariant integral ideals of norm at most
/// `bound`, sorted and deduplicated. Any bound at least the product of the
/// ramified primes reaches every class that contains an invariant ideal,
/// so this recovers the strongly ambiguous subgroup without going through
/// the ramified generators.
pub fn strongly_ambiguous_by_search(
    fd: &FundamentalDiscriminant,
    cl: &ClassGroup,
    bound: u64,
) -> Vec<Elem> {
    let mut out: Vec<Elem> = ideals_up_to(fd, bound)
        .iter()
        .filter(|x| x.is_invariant())
        .map(|x| {
            let idx = class_of_ideal(cl, x).expect("sweep ideal lives in the field");
            cl.wide_elem(idx).clone()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
