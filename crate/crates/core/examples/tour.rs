//! Walks one field through the main library entry points: discriminant
//! validation, prime splitting, principality tests, the fundamental unit,
//! the class group with its form representatives, and the ambiguity
//! verification report.
//!
//! Usage: `cargo run --example tour [-- DELTA]` (default -20).

use quadgenus::ambiguity::{ambiguity_data, verify_discriminant};
use quadgenus::forms::{class_of_ideal, class_counts_by_enumeration, class_group};
use quadgenus::quadfield::{
    factor_ideal, fundamental_unit, is_principal_with_generator, prime_splitting, Splitting,
    DEFAULT_FACTOR_BOUND,
};
use quadgenus::units::{hilbert_symbol, minus_one_global_norm, Place};
use quadgenus::{FundamentalDiscriminant, OIdeal, QuadInt, VerifyConfig};

fn main() {
    let delta: i64 = match std::env::args().nth(1) {
        Some(s) => match s.parse() {
            Ok(d) => d,
            Err(e) => {
                eprintln!("error: bad discriminant {s:?}: {e}");
                std::process::exit(2);
            }
        },
        None => -20,
    };
    let fd = match FundamentalDiscriminant::new(delta) {
        Ok(fd) => fd,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };

    println!("field: {fd}");
    println!("ramified primes: {:?}", fd.ramified_primes());

    for p in [2i64, 3, 5, 7, 11] {
        let split = prime_splitting(&fd, p).expect("small prime");
        match &split {
            Splitting::Ramified(x) => println!("  {p} ramifies: {x}"),
            Splitting::Split(x, y) => println!("  {p} splits: {x} and {y}"),
            Splitting::Inert(_) => println!("  {p} is inert"),
        }
        for x in split.primes() {
            match is_principal_with_generator(x) {
                Some(g) => println!("    {x} = ({g})"),
                None => println!("    {x} is not principal"),
            }
        }
    }

    let omega = QuadInt::omega(delta);
    let x = OIdeal::principal(&omega).expect("principal ideal");
    let factors = factor_ideal(&fd, &x, DEFAULT_FACTOR_BOUND).expect("small norm");
    println!("({omega}) has norm {} and factors as:", x.norm());
    for (p, e) in factors {
        println!("    {p} ^ {e}");
    }

    if !fd.is_imaginary() {
        let eps = fundamental_unit(delta);
        println!("fundamental unit: {eps} with norm {}", eps.norm());
    }

    let g = class_group(&fd);
    println!(
        "class number {} with invariant factors {:?} (narrow: {} with {:?})",
        g.h(),
        g.wide_group().invariant_factors(),
        g.h_narrow(),
        g.narrow_group().invariant_factors(),
    );
    println!("reduced form representatives:");
    for (i, f) in g.reps().iter().enumerate() {
        let mark = if i == g.principal_class() {
            "  (principal)"
        } else if i == g.negated_principal_class() {
            "  (principal flipped)"
        } else {
            ""
        };
        println!("    ({}, {}, {}){mark}", f.a(), f.b(), f.c());
    }
    for &p in fd.ramified_primes() {
        let split = prime_splitting(&fd, p).expect("ramified prime");
        for x in split.primes() {
            let class = class_of_ideal(&g, x).expect("same field");
            println!("  {x} lies in class {} of {}", class, g.class_count());
        }
    }
    let (wide, narrow) = class_counts_by_enumeration(&fd);
    println!("ideal-sweep recount: h = {wide}, narrow h = {narrow}");

    let signs: Vec<i32> = fd
        .ramified_primes()
        .iter()
        .map(|&p| hilbert_symbol(-1, delta, Place::Finite(p)).expect("ramified place"))
        .collect();
    println!(
        "local norm symbols of -1 at the ramified primes: {signs:?} (global: {})",
        minus_one_global_norm(&fd)
    );

    let data = ambiguity_data(&fd).expect("ambiguity data");
    println!(
        "conjugation-fixed classes: {} of {} (invariant-ideal classes: {})",
        data.am.order(),
        g.h(),
        data.am_st.order()
    );
    for (&rep, &sign) in data.am_reps.iter().zip(&data.nu_signs) {
        println!("  fixed class with representative {}: sign {sign}", g.rep(rep));
    }

    let report = verify_discriminant(&fd, &VerifyConfig::default()).expect("verification");
    println!(
        "indices (idx_q, idx_e, idx_coh) = ({}, {}, {})",
        report.idx_q, report.idx_e, report.idx_coh
    );
    println!(
        "ambiguous: {} predicted {}; strongly ambiguous: {} predicted {}",
        report.am_actual, report.am_predicted, report.amst_actual, report.amst_predicted
    );
    println!(
        "checks: eq1 {} eq2 {} prop2 {} lemma4 {} eq56 {} thm5 {} sigma {} -> {}",
        report.checks.eq1,
        report.checks.eq2,
        report.checks.prop2_sequence,
        report.checks.lemma4,
        report.checks.eq56_index,
        report.checks.thm5,
        report.checks.sigma_inversion,
        if report.all_checks_pass() { "PASS" } else { "FAIL" },
    );
}
