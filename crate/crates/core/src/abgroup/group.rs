//! Finite abelian groups in invariant-factor form.
//!
//! A group is a chain of invariant factors d1 | d2 | ... | dk (each >= 2)
//! and an element is a tuple of residues, one per factor. Groups are built
//! from relation matrices via the Smith normal form, which also yields the
//! coordinate changes needed to move elements between a presentation
//! Z^n / (relations) and the canonical tuple form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{kernel_basis, snf, solve_linear, Mat};
use crate::abgroup::GroupError;

/// Element of a [`FinAbGroup`]: one residue per invariant factor.
pub type Elem = Vec<BigInt>;

/// Finite abelian group Z/d1 x ... x Z/dk with d1 | d2 | ... | dk, di >= 2.
#[derive(Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    factors: Vec<BigInt>,
}

impl std::fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinAbGroup({})", self)
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{}", d)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FinAbGroup {
    /// Trivial group.
    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    /// Builds a group from invariant factors. Factors equal to 1 are
    /// dropped; the rest must form a divisibility chain of integers >= 2.
    pub fn from_invariant_factors(factors: Vec<BigInt>) -> Result<Self, GroupError> {
        let kept: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
        for d in &kept {
            if *d < BigInt::from(2) {
                return Err(GroupError::InvalidElement);
            }
        }
        for w in kept.windows(2) {
            if !w[1].mod_floor(&w[0]).is_zero() {
                return Err(GroupError::InvalidElement);
            }
        }
        Ok(FinAbGroup { factors: kept })
    }

    pub fn from_i64_factors(factors: &[i64]) -> Result<Self, GroupError> {
        Self::from_invariant_factors(factors.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product::<BigInt>().max(BigInt::one())
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.factors.len()]
    }

    /// Checks shape and reduces each coordinate into canonical range.
    pub fn reduce(&self, e: &[BigInt]) -> Result<Elem, GroupError> {
        if e.len() != self.factors.len() {
            return Err(GroupError::InvalidElement);
        }
        Ok(e.iter().zip(&self.factors).map(|(x, d)| x.mod_floor(d)).collect())
    }

    pub fn contains(&self, e: &[BigInt]) -> bool {
        e.len() == self.factors.len()
            && e.iter().zip(&self.factors).all(|(x, d)| !x.is_negative() && x < d)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Result<Elem, GroupError> {
        if a.len() != self.factors.len() || b.len() != self.factors.len() {
            return Err(GroupError::InvalidElement);
        }
        Ok(a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> Result<Elem, GroupError> {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> Result<Elem, GroupError> {
        self.reduce(&a.iter().map(|x| k * x).collect::<Vec<_>>())
    }

    pub fn is_zero_elem(&self, a: &[BigInt]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Order of the 2-torsion subgroup G[2].
    pub fn two_torsion_order(&self) -> BigInt {
        let two = BigInt::from(2);
        self.factors.iter().map(|d| d.gcd(&two)).product::<BigInt>().max(BigInt::one())
    }

    /// All elements, in lexicographic tuple order. Only sensible for the
    /// small groups this crate deals in; panics if the order exceeds 2^22.
    pub fn elements(&self) -> Vec<Elem> {
        let order = self.order();
        assert!(
            order <= BigInt::from(1u64 << 22),
            "refusing to enumerate a group of order {}",
            order
        );
        let n: u64 = order.to_string().parse().expect("order fits u64");
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = self.zero();
        loop {
            out.push(cur.clone());
            // Increment the tuple odometer-style.
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = BigInt::zero();
            }
        }
    }

    /// Order of a single element.
    pub fn elem_order(&self, e: &[BigInt]) -> Result<BigInt, GroupError> {
        let e = self.reduce(e)?;
        let mut ord = BigInt::one();
        for (x, d) in e.iter().zip(&self.factors) {
            if x.is_zero() {
                continue;
            }
            let o = d / x.gcd(d);
            ord = ord.lcm(&o);
        }
        Ok(ord)
    }
}

/// A presentation Z^n / (relation columns), with coordinate changes between
/// presentation coordinates and canonical tuples of the quotient group.
#[derive(Clone)]
pub struct Presentation {
    n: usize,
    u: Mat,
    uinv: Mat,
    diag: Vec<BigInt>,
    keep: Vec<usize>,
    group: FinAbGroup,
}

impl Presentation {
    /// Quotient of Z^n by the column span of `rel_cols` (an n x m matrix).
    /// Fails with `InfiniteQuotient` unless the quotient is finite.
    pub fn from_relation_columns(n: usize, rel_cols: &Mat) -> Result<Self, GroupError> {
        assert_eq!(rel_cols.rows(), n, "relation length mismatch");
        let s = snf(rel_cols);
        let sdiag = s.diag();
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            let d = if i < sdiag.len() { sdiag[i].clone() } else { BigInt::zero() };
            if d.is_zero() {
                return Err(GroupError::InfiniteQuotient);
            }
            diag.push(d);
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
        let group =
            FinAbGroup::from_invariant_factors(keep.iter().map(|&i| diag[i].clone()).collect())?;
        Ok(Presentation { n, u: s.u, uinv: s.uinv, diag, keep, group })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn num_generators(&self) -> usize {
        self.n
    }

    /// Maps presentation coordinates to the canonical tuple.
    pub fn to_group(&self, x: &[BigInt]) -> Elem {
        assert_eq!(x.len(), self.n, "coordinate length mismatch");
        let y = self.u.mul_vec(x);
        self.keep.iter().map(|&i| y[i].mod_floor(&self.diag[i])).collect()
    }

    /// Lifts a canonical tuple back to presentation coordinates.
    /// `to_group(lift(e)) == e` always holds.
    pub fn lift(&self, e: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(e.len(), self.keep.len(), "tuple length mismatch");
        let mut y = vec![BigInt::zero(); self.n];
        for (slot, val) in self.keep.iter().zip(e) {
            y[*slot] = val.clone();
        }
        self.uinv.mul_vec(&y)
    }
}

/// Quotient of a free abelian group Z^n by explicit relations.
///
/// Each relation is a length-n integer row; the quotient must be finite.
pub fn group_from_relations(
    num_generators: usize,
    relations: &[Vec<BigInt>],
) -> Result<FinAbGroup, GroupError> {
    Ok(presentation_from_relations(num_generators, relations)?.group().clone())
}

/// Like [`group_from_relations`] but keeps the coordinate maps.
pub fn presentation_from_relations(
    num_generators: usize,
    relations: &[Vec<BigInt>],
) -> Result<Presentation, GroupError> {
    for r in relations {
        if r.len() != num_generators {
            return Err(GroupError::InvalidElement);
        }
    }
    let cols: Vec<Vec<BigInt>> = relations.to_vec();
    let m = Mat::from_cols(num_generators, &cols);
    Presentation::from_relation_columns(num_generators, &m)
}

/// A subgroup of an ambient [`FinAbGroup`], generated by explicit elements,
/// carrying its abstract structure and a membership test.
#[derive(Clone)]
pub struct Subgroup {
    ambient: FinAbGroup,
    gens: Vec<Elem>,
    mat: Mat,
    solver: Mat,
    pres: Presentation,
}

/// Subgroup of `g` generated by `gens`.
pub fn subgroup_generated(g: &FinAbGroup, gens: &[Elem]) -> Result<Subgroup, GroupError> {
    let mut reduced = Vec::with_capacity(gens.len());
    for e in gens {
        reduced.push(g.reduce(e)?);
    }
    let n = g.rank();
    let k = reduced.len();
    let mat = Mat::from_cols(n, &reduced);
    let ambient_rel = Mat::diagonal(g.invariant_factors());
    let solver = mat.hstack(&ambient_rel);
    // Relation lattice of the generators: x with mat*x in the ambient
    // relation lattice. Found as the projection of ker [mat | diag].
    let kern = kernel_basis(&solver);
    let rel_cols: Vec<Vec<BigInt>> =
        (0..kern.cols()).map(|j| kern.col(j)[..k].to_vec()).collect();
    let rel = Mat::from_cols(k, &rel_cols);
    let pres = Presentation::from_relation_columns(k, &rel)?;
    Ok(Subgroup { ambient: g.clone(), gens: reduced, mat, solver, pres })
}

impl Subgroup {
    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    /// Abstract structure of the subgroup.
    pub fn structure(&self) -> &FinAbGroup {
        self.pres.group()
    }

    pub fn order(&self) -> BigInt {
        self.structure().order()
    }

    /// Membership test for an element of the ambient group.
    pub fn contains(&self, e: &[BigInt]) -> Result<bool, GroupError> {
        let e = self.ambient.reduce(e)?;
        Ok(solve_linear(&self.solver, &e).is_some())
    }

    /// The subgroup's elements, as elements of the ambient group.
    pub fn elements(&self) -> Vec<Elem> {
        self.structure()
            .elements()
            .into_iter()
            .map(|t| self.elem_from_tuple(&t))
            .collect()
    }

    /// Maps an abstract tuple of the subgroup structure to the ambient group.
    pub fn elem_from_tuple(&self, t: &[BigInt]) -> Elem {
        let x = self.pres.lift(t);
        let raw = self.mat.mul_vec(&x);
        self.ambient.reduce(&raw).expect("ambient element")
    }
}
