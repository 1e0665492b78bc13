//! The three unit-norm indices behind the ambiguous class counts.

use num_traits::{One, Signed};

use crate::quadfield::{fundamental_unit, torsion_units, FundamentalDiscriminant, QuadInt};

use super::{hilbert_symbol, Place};

/// Unit data of one field: torsion, the fundamental unit when real, and the
/// three norm indices driving the class-count predictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitData {
    pub delta: i64,
    /// Roots of unity: 2 generically, 4 and 6 at discriminants -4 and -3.
    pub torsion_order: u32,
    /// Smallest unit above 1, present exactly for real fields.
    pub fund_unit: Option<QuadInt>,
    /// Norm of the fundamental unit, present exactly for real fields.
    pub norm_eps: Option<i32>,
    /// ({1, -1} : {1, -1} meet the norms from the field).
    pub idx_q: u64,
    /// ({1, -1} : norms of units of the field).
    pub idx_e: u64,
    /// (norm-one units : units of the shape u / conjugate(u)).
    pub idx_coh: u64,
}

/// Whether -1 is the norm of a field element. Being a norm locally
/// everywhere suffices over a cyclic extension, unramified places never
/// obstruct, and the infinite place is split for real fields, so only the
/// ramified primes are consulted.
pub fn minus_one_global_norm(fd: &FundamentalDiscriminant) -> bool {
    if fd.is_imaginary() {
        // the norm form is positive definite
        return false;
    }
    fd.ramified_primes().iter().all(|&p| {
        hilbert_symbol(-1, fd.value(), Place::Finite(p)).expect("ramified primes are prime") == 1
    })
}

/// The indices (idx_q, idx_e) of Galois norms inside {1, -1}: against norms
/// of arbitrary field elements, then against norms of units.
pub fn norm_indices(fd: &FundamentalDiscriminant) -> (u64, u64) {
    let idx_q = if minus_one_global_norm(fd) { 1 } else { 2 };
    // torsion units have positive norm, so only a real fundamental unit of
    // norm -1 makes the unit norms all of {1, -1}
    let idx_e = if !fd.is_imaginary() && fundamental_unit(fd.value()).norm().is_negative() {
        1
    } else {
        2
    };
    (idx_q, idx_e)
}

/// Index of the units u / conjugate(u) inside the norm-one units.
pub fn unit_cohomology_index(fd: &FundamentalDiscriminant) -> u64 {
    let delta = fd.value();
    if fd.is_imaginary() {
        // the unit group is the torsion cycle, every root of unity has norm
        // one, and u / conjugate(u) = u^2 there, so the index counts the
        // cycle against its squares
        let tors = torsion_units(delta);
        debug_assert!(tors.iter().all(|t| t.norm().is_one()));
        let mut squares: Vec<QuadInt> = Vec::new();
        for t in &tors {
            let s = t.mul(t).expect("same field");
            if !squares.contains(&s) {
                squares.push(s);
            }
        }
        return (tors.len() / squares.len()) as u64;
    }
    // real units are generated by -1 and eps, and eps / conjugate(eps) is
    // eps^2 / N(eps): norm -1 puts the norm-one units at <-1, eps^2> over
    // <-eps^2>, norm +1 puts the whole group over <eps^2>
    if fundamental_unit(delta).norm().is_negative() {
        2
    } else {
        4
    }
}

/// One field's instance of the unit-index identity
/// idx_e / idx_coh = e(infinity) / 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitPgtReport {
    pub delta: i64,
    pub idx_e: u64,
    pub idx_coh: u64,
    /// Ramification at the infinite place: 2 for imaginary fields, else 1.
    pub e_infinity: u64,
    pub holds: bool,
}

/// Checks idx_e / idx_coh = e(infinity) / 2 by cross multiplication.
pub fn verify_unit_pgt(fd: &FundamentalDiscriminant) -> UnitPgtReport {
    let (_, idx_e) = norm_indices(fd);
    let idx_coh = unit_cohomology_index(fd);
    let e_infinity = if fd.is_imaginary() { 2 } else { 1 };
    UnitPgtReport {
        delta: fd.value(),
        idx_e,
        idx_coh,
        e_infinity,
        holds: 2 * idx_e == e_infinity * idx_coh,
    }
}

/// Gathers the torsion, the fundamental unit, and all three indices.
pub fn unit_data(fd: &FundamentalDiscriminant) -> UnitData {
    let delta = fd.value();
    let (idx_q, idx_e) = norm_indices(fd);
    let fund_unit = (!fd.is_imaginary()).then(|| fundamental_unit(delta));
    let norm_eps = fund_unit
        .as_ref()
        .map(|e| if e.norm().is_negative() { -1 } else { 1 });
    let data = UnitData {
        delta,
        torsion_order: torsion_units(delta).len() as u32,
        fund_unit,
        norm_eps,
        idx_q,
        idx_e,
        idx_coh: unit_cohomology_index(fd),
    };
    // unit norms are norms, so the first index divides the second
    assert!(data.idx_q <= data.idx_e && data.idx_e <= 2);
    assert_eq!(data.idx_e == 1, data.norm_eps == Some(-1));
    data
}
