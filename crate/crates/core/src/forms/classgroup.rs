//! Class group enumeration and structure.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::abgroup::{presentation_from_relations, Elem, FinAbGroup};
use crate::arith::isqrt_u64;
use crate::quadfield::FundamentalDiscriminant;

use super::compose::compose;
use super::qform::QForm;
use super::FormError;

/// Every primitive reduced form of the given discriminant, sorted.
///
/// For negative discriminants these are exactly the class representatives.
/// For positive ones each class contributes its whole rho cycle. Imprimitive
/// forms, which exist only for non-fundamental discriminants, are skipped.
pub fn reduced_forms(delta: i64) -> Vec<QForm> {
    assert!(matches!(delta.rem_euclid(4), 0 | 1), "{delta} is not a discriminant");
    if delta > 0 {
        let s = isqrt_u64(delta as u64);
        assert!(s * s != delta as u64, "{delta} is a square");
    }
    let mut out = Vec::new();
    if delta < 0 {
        let bound = isqrt_u64(delta.unsigned_abs() / 3) as i64;
        for a in 1..=bound {
            for b in (1 - a)..=a {
                if (b * b - delta) % (4 * a) != 0 {
                    continue;
                }
                let c = (b * b - delta) / (4 * a);
                if c < a || (a == c && b < 0) {
                    continue;
                }
                out.extend(QForm::new(a, b, c).ok());
            }
        }
    } else {
        let s = isqrt_u64(delta as u64) as i64;
        for b in 1..=s {
            if (delta - b) % 2 != 0 {
                continue;
            }
            let m = (delta - b * b) / 4;
            let mut push_if_reduced = |d: i64| {
                if s < b + 2 * d && 2 * d <= b + s {
                    out.extend(QForm::new(d, b, -(m / d)).ok());
                    out.extend(QForm::new(-d, b, m / d).ok());
                }
            };
            for d in 1..=isqrt_u64(m as u64) as i64 {
                if m % d == 0 {
                    push_if_reduced(d);
                    if d != m / d {
                        push_if_reduced(m / d);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The form class group of a fundamental discriminant, in both the narrow
/// and the ordinary (wide) sense, together with discrete logarithms.
///
/// Classes are indexed by position in `reps`, the sorted list of canonical
/// representatives; index lookups cover every reduced form of the field.
pub struct ClassGroup {
    delta: i64,
    reps: Vec<QForm>,
    index_of: HashMap<QForm, usize>,
    principal: usize,
    negated_principal: usize,
    narrow: FinAbGroup,
    narrow_coords: Vec<Elem>,
    wide: FinAbGroup,
    wide_coords: Vec<Elem>,
}

pub fn class_group(fd: &FundamentalDiscriminant) -> ClassGroup {
    let delta = fd.value();
    let all = reduced_forms(delta);
    let mut index_of = HashMap::new();
    let mut reps: Vec<QForm> = Vec::new();
    if delta < 0 {
        for (i, f) in all.iter().enumerate() {
            index_of.insert(*f, i);
        }
        reps = all;
    } else {
        // The scan is in sorted order, so the first form seen from each
        // cycle is the cycle minimum and becomes the canonical rep.
        for f in &all {
            if index_of.contains_key(f) {
                continue;
            }
            let idx = reps.len();
            reps.push(*f);
            for g in f.cycle() {
                let seen = index_of.insert(g, idx);
                debug_assert!(seen.is_none());
            }
        }
    }
    let n_classes = reps.len();

    let compose_idx = |i: usize, j: usize| -> usize {
        let h = compose(&reps[i], &reps[j]).expect("same discriminant").reduced();
        index_of[&h]
    };

    let principal = index_of[&QForm::principal(delta).expect("fundamental").reduced()];
    let negated_principal = if delta < 0 {
        principal
    } else {
        let beta = delta.rem_euclid(2);
        let flipped = QForm::new(-1, beta, (delta - beta * beta) / 4).expect("unit form");
        index_of[&flipped.reduced()]
    };

    // Greedy generator peeling: walk the classes in canonical order, adjoin
    // each one not yet spanned, and record the first power that falls back
    // into the previous span as a relation. Exponent vectors come for free.
    let mut coords: Vec<Option<Vec<BigInt>>> = vec![None; n_classes];
    coords[principal] = Some(Vec::new());
    let mut discovered = vec![principal];
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    let mut num_gens = 0usize;

    for idx in 0..n_classes {
        if coords[idx].is_some() {
            continue;
        }
        let k = num_gens;
        num_gens += 1;

        // Relative order j of class idx over the span, with g^j known.
        let mut power = idx;
        let mut j = 1;
        while coords[power].is_none() {
            power = compose_idx(power, idx);
            j += 1;
        }
        let mut relation: Vec<BigInt> = coords[power]
            .as_ref()
            .expect("loop exit")
            .iter()
            .map(|x| -x)
            .collect();
        relation.resize(k + 1, BigInt::zero());
        relation[k] = BigInt::from(j);
        relations.push(relation);

        // Cosets span * idx^i for 0 < i < j are new and disjoint.
        let snapshot = discovered.clone();
        for s in snapshot {
            let base = coords[s].clone().expect("spanned");
            let mut cur = s;
            for i in 1..j {
                cur = compose_idx(cur, idx);
                debug_assert!(coords[cur].is_none());
                let mut v = base.clone();
                v.resize(k + 1, BigInt::zero());
                v[k] = BigInt::from(i);
                coords[cur] = Some(v);
                discovered.push(cur);
            }
        }
    }
    assert_eq!(discovered.len(), n_classes);

    let pad = |v: &[BigInt]| {
        let mut w = v.to_vec();
        w.resize(num_gens, BigInt::zero());
        w
    };
    let mut narrow_rel: Vec<Vec<BigInt>> = relations.iter().map(|r| pad(r)).collect();
    let narrow_pres = presentation_from_relations(num_gens, &narrow_rel)
        .expect("relation matrix has full rank by construction");
    let narrow = narrow_pres.group().clone();
    assert_eq!(narrow.order(), BigInt::from(n_classes));
    let coords: Vec<Vec<BigInt>> =
        coords.into_iter().map(|v| pad(&v.expect("all classes spanned"))).collect();
    let narrow_coords: Vec<Elem> = coords.iter().map(|v| narrow_pres.to_group(v)).collect();

    // Killing the flipped principal class gives the ordinary group. When it
    // is already trivial the quotient map is the identity.
    let (wide, wide_coords) = if negated_principal == principal {
        (narrow.clone(), narrow_coords.clone())
    } else {
        narrow_rel.push(coords[negated_principal].clone());
        let wide_pres =
            presentation_from_relations(num_gens, &narrow_rel).expect("quotient stays finite");
        let coords: Vec<Elem> = coords.iter().map(|v| wide_pres.to_group(v)).collect();
        (wide_pres.group().clone(), coords)
    };
    debug_assert!(narrow.order() == wide.order() || narrow.order() == wide.order() * 2);

    ClassGroup {
        delta,
        reps,
        index_of,
        principal,
        negated_principal,
        narrow,
        narrow_coords,
        wide,
        wide_coords,
    }
}

impl ClassGroup {
    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// Number of narrow classes (equal to the wide count for delta < 0).
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn h_narrow(&self) -> u64 {
        self.reps.len() as u64
    }

    /// The ordinary class number.
    pub fn h(&self) -> u64 {
        self.wide.order().to_u64().expect("class numbers fit u64")
    }

    pub fn reps(&self) -> &[QForm] {
        &self.reps
    }

    pub fn rep(&self, class: usize) -> QForm {
        self.reps[class]
    }

    pub fn narrow_group(&self) -> &FinAbGroup {
        &self.narrow
    }

    pub fn wide_group(&self) -> &FinAbGroup {
        &self.wide
    }

    /// Coordinates of a class in the narrow group's canonical form.
    pub fn narrow_elem(&self, class: usize) -> &Elem {
        &self.narrow_coords[class]
    }

    /// Coordinates of a class in the wide group's canonical form.
    pub fn wide_elem(&self, class: usize) -> &Elem {
        &self.wide_coords[class]
    }

    pub fn principal_class(&self) -> usize {
        self.principal
    }

    /// Class of the principal form with the sign moved onto the leading
    /// coefficient; the kernel of narrow-to-wide is generated by it.
    pub fn negated_principal_class(&self) -> usize {
        self.negated_principal
    }

    pub fn class_of_form(&self, f: &QForm) -> Result<usize, FormError> {
        if f.disc() != self.delta {
            return Err(FormError::DiscMismatch(f.disc(), self.delta));
        }
        Ok(self.index_of[&f.reduced()])
    }

    pub fn compose_classes(&self, i: usize, j: usize) -> usize {
        let h = compose(&self.reps[i], &self.reps[j]).expect("same discriminant").reduced();
        self.index_of[&h]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.index_of[&self.reps[i].opposite().reduced()]
    }

    pub fn is_wide_principal_class(&self, i: usize) -> bool {
        self.wide.is_zero_elem(&self.wide_coords[i])
    }

    pub fn is_narrow_principal_class(&self, i: usize) -> bool {
        self.narrow.is_zero_elem(&self.narrow_coords[i])
    }
}
