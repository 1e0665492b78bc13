//! Splitting of rational primes, factorization of ideals into prime ideals,
//! and the two structure maps built on factorization: writing an invariant
//! ideal as a rational part times ramified primes, and solving
//! a^(sigma - 1) = (alpha) for ideals a when alpha has unit norm.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factor_u64, is_prime_u64, sqrt_mod_prime};

use super::disc::FundamentalDiscriminant;
use super::elem::QuadNum;
use super::ideal::OIdeal;
use super::FieldError;

/// Integers above this are refused by `factor_ideal` and everything built
/// on it; raise it explicitly for heavier inputs.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000_000;

/// How a rational prime decomposes in the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// p = P^2 with P invariant.
    Ramified(OIdeal),
    /// p = P conj(P) with distinct conjugates; the first ideal is the
    /// canonical representative of the pair.
    Split(OIdeal, OIdeal),
    /// p stays prime; the ideal is (p), of norm p^2.
    Inert(OIdeal),
}

impl Splitting {
    /// The prime ideals above p, canonical one first.
    pub fn primes(&self) -> Vec<&OIdeal> {
        match self {
            Splitting::Ramified(p) | Splitting::Inert(p) => vec![p],
            Splitting::Split(p, q) => vec![p, q],
        }
    }
}

pub fn prime_splitting(fd: &FundamentalDiscriminant, p: i64) -> Result<Splitting, FieldError> {
    if p < 2 || !is_prime_u64(p as u64) {
        return Err(FieldError::NotPrime(p));
    }
    let delta = fd.value();
    match fd.chi(p) {
        0 => {
            // b = 0 or b = p is forced; exactly one satisfies the ideal
            // congruence b^2 = D (mod 4p).
            for b in [0i64, p] {
                if (b * b - delta).rem_euclid(4 * p) == 0 {
                    let ideal = OIdeal::new(delta, BigRational::one(), p, b).unwrap();
                    return Ok(Splitting::Ramified(ideal));
                }
            }
            unreachable!("no ramified ideal above {} for discriminant {}", p, delta);
        }
        1 => {
            let b = if p == 2 {
                // D = 1 (mod 8) here; both ideals above 2 use odd b.
                1
            } else {
                let r = sqrt_mod_prime(delta.rem_euclid(p) as u64, p as u64).unwrap() as i64;
                // Match the parity of D modulo 2p.
                if (r - delta).rem_euclid(2) == 0 {
                    r
                } else {
                    r + p
                }
            };
            let first = OIdeal::new(delta, BigRational::one(), p, b).unwrap();
            let second = first.conjugate();
            debug_assert_ne!(first, second);
            Ok(Splitting::Split(first, second))
        }
        _ => {
            let ideal = OIdeal::from_int(delta, p).unwrap();
            Ok(Splitting::Inert(ideal))
        }
    }
}

fn to_bounded_u64(n: &BigInt, bound: u64) -> Result<u64, FieldError> {
    match n.abs().to_u64() {
        Some(v) if v <= bound => Ok(v),
        _ => Err(FieldError::FactorizationTooLarge(n.clone(), bound)),
    }
}

/// Factors a fractional ideal into prime ideals with (possibly negative)
/// exponents, sorted canonically. Inert primes appear as their rational
/// ideals (q). The product of the factors reconstructs the input exactly.
pub fn factor_ideal(
    fd: &FundamentalDiscriminant,
    x: &OIdeal,
    bound: u64,
) -> Result<Vec<(OIdeal, i64)>, FieldError> {
    let mut exps: BTreeMap<OIdeal, i64> = BTreeMap::new();
    let mut bump = |ideal: OIdeal, e: i64| {
        *exps.entry(ideal).or_insert(0) += e;
    };

    // Content primes split as full rational ideals.
    let num = to_bounded_u64(x.content().numer(), bound)?;
    let den = to_bounded_u64(x.content().denom(), bound)?;
    for (source, sign) in [(num, 1i64), (den, -1i64)] {
        for (q, e) in factor_u64(source) {
            let e = sign * e as i64;
            match prime_splitting(fd, q as i64)? {
                Splitting::Ramified(p) => bump(p, 2 * e),
                Splitting::Split(p, pc) => {
                    bump(p, e);
                    bump(pc, e);
                }
                Splitting::Inert(p) => bump(p, e),
            }
        }
    }

    // Primitive part: each prime power of a belongs to the ideal above p
    // containing it.
    let a = to_bounded_u64(x.a(), bound)?;
    for (q, e) in factor_u64(a) {
        let p = q as i64;
        match prime_splitting(fd, p)? {
            Splitting::Ramified(ideal) => {
                assert_eq!(e, 1, "ramified prime squared in a primitive ideal");
                bump(ideal, 1);
            }
            Splitting::Split(first, second) => {
                if divisible(&(x.b() - first.b()), 2 * p) {
                    bump(first, e as i64);
                } else {
                    debug_assert!(divisible(&(x.b() - second.b()), 2 * p));
                    bump(second, e as i64);
                }
            }
            Splitting::Inert(_) => {
                unreachable!("inert prime divides a primitive ideal coefficient")
            }
        }
    }

    Ok(exps.into_iter().filter(|(_, e)| *e != 0).collect())
}

fn divisible(n: &BigInt, m: i64) -> bool {
    n.mod_floor(&BigInt::from(m)).is_zero()
}

/// An invariant ideal split into its rational content and the squarefree
/// set of ramified primes it contains, exponents aligned with
/// `fd.ramified_primes()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantParts {
    pub rational: BigRational,
    pub ramified_exponents: Vec<u8>,
}

/// Writes an invariant ideal as (q) times a squarefree product of ramified
/// primes. This decomposition is unique.
pub fn invariant_decompose(
    fd: &FundamentalDiscriminant,
    x: &OIdeal,
) -> Result<InvariantParts, FieldError> {
    if x.delta() != fd.value() {
        return Err(FieldError::DiscriminantMismatch(x.delta(), fd.value()));
    }
    if !x.is_invariant() {
        return Err(FieldError::NotInvariant(x.to_string()));
    }
    // The coefficient of an invariant ideal divides the discriminant.
    let a = x.a().to_u64().expect("invariant ideal coefficient fits in u64");
    let mut exps = vec![0u8; fd.ramified_primes().len()];
    for (q, e) in factor_u64(a) {
        let idx = fd
            .ramified_primes()
            .iter()
            .position(|&p| p == q as i64)
            .unwrap_or_else(|| panic!("invariant ideal with non-ramified coefficient {}", q));
        assert_eq!(e, 1, "invariant ideal with repeated ramified prime");
        exps[idx] = 1;
    }
    Ok(InvariantParts { rational: x.content().clone(), ramified_exponents: exps })
}

/// Inverse of `invariant_decompose`.
pub fn invariant_compose(
    fd: &FundamentalDiscriminant,
    rational: &BigRational,
    ramified_exponents: &[u8],
) -> Result<OIdeal, FieldError> {
    assert_eq!(ramified_exponents.len(), fd.ramified_primes().len());
    let mut out = OIdeal::from_rational(fd.value(), rational)?;
    for (&p, &e) in fd.ramified_primes().iter().zip(ramified_exponents) {
        if e == 0 {
            continue;
        }
        assert_eq!(e, 1, "ramified exponents must be 0 or 1");
        match prime_splitting(fd, p)? {
            Splitting::Ramified(ideal) => out = out.mul(&ideal)?,
            _ => unreachable!("listed ramified prime does not ramify"),
        }
    }
    Ok(out)
}

/// Solves a^(sigma - 1) = (alpha) for a fractional ideal a, given alpha of
/// norm +-1. The solution is unique up to invariant ideal factors; this
/// routine fixes the choice by putting the whole exponent of each split
/// pair on the canonical member.
pub fn solve_norm_one_ideal(
    fd: &FundamentalDiscriminant,
    alpha: &QuadNum,
    bound: u64,
) -> Result<OIdeal, FieldError> {
    let n = alpha.norm();
    if !(n == BigRational::one() || n == -BigRational::one()) {
        return Err(FieldError::NormNotUnit(alpha.to_string()));
    }
    let target = OIdeal::principal_num(alpha)?;
    let mut answer = OIdeal::one(fd.value());
    for (p, e) in factor_ideal(fd, &target, bound)? {
        if p.is_invariant() || p.a().is_one() {
            unreachable!("invariant prime in the ideal of a norm-unit element");
        }
        // Only the canonical member of each split pair acts; its conjugate
        // carries the opposite exponent automatically.
        let rational_p = p.norm().to_integer().to_i64().unwrap();
        if let Splitting::Split(first, _) = prime_splitting(fd, rational_p)? {
            if first == p {
                answer = answer.mul(&first.pow(-e))?;
            }
        }
    }
    debug_assert_eq!(
        answer.conjugate().mul(&answer.inverse()).unwrap(),
        target,
        "solver postcondition"
    );
    Ok(answer)
}
