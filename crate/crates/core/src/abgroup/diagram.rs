//! Commutative diagrams with short exact rows, and the multiplicativity of
//! the generalized index along them.
//!
//! For a commutative diagram
//!
//! ```text
//!   1 --> A --f--> B --g--> C --> 1
//!         |        |        |
//!       alpha    beta     gamma
//!         v        v        v
//!   1 --> A' -f'-> B' -g'-> C' --> 1
//! ```
//!
//! with exact rows, the generalized indices (X':X) := #coker / #ker of the
//! vertical maps satisfy (B':B) = (A':A) * (C':C). `check_index_lemma`
//! verifies the hypotheses and then tests that identity on concrete groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::group::{Elem, FinAbGroup, Presentation};
use super::hom::{analyze_hom, GroupHom};
use super::matrix::{solve_linear, Mat};
use crate::abgroup::GroupError;

/// Two short exact rows joined by three vertical maps.
pub struct Diagram {
    pub f: GroupHom,
    pub g: GroupHom,
    pub fp: GroupHom,
    pub gp: GroupHom,
    pub alpha: GroupHom,
    pub beta: GroupHom,
    pub gamma: GroupHom,
}

/// Outcome of [`check_index_lemma`]: the three generalized indices together
/// with the kernel/cokernel orders they came from.
#[derive(Debug)]
pub struct IndexLemmaReport {
    pub idx_a: BigRational,
    pub idx_b: BigRational,
    pub idx_c: BigRational,
    pub ker_orders: [BigInt; 3],
    pub coker_orders: [BigInt; 3],
    /// Whether (B':B) = (A':A) * (C':C) held.
    pub holds: bool,
}

fn require_row_exact(f: &GroupHom, g: &GroupHom) -> Result<(), GroupError> {
    if f.target() != g.source() {
        return Err(GroupError::IllFormedHom);
    }
    let fa = analyze_hom(f)?;
    let ga = analyze_hom(g)?;
    // 1 -> A exact at A: f injective.
    if !fa.kernel.structure().is_trivial() {
        return Err(GroupError::NotExact);
    }
    // C -> 1 exact at C: g surjective.
    if !ga.cokernel.is_trivial() {
        return Err(GroupError::NotExact);
    }
    // Exact at B: im f = ker g. Inclusion via g(f(gen)) = 0, then orders.
    for img in f.generator_images() {
        let out = g.eval(img)?;
        if !g.target().is_zero_elem(&out) {
            return Err(GroupError::NotExact);
        }
    }
    if fa.image.order() != ga.kernel.order() {
        return Err(GroupError::NotExact);
    }
    Ok(())
}

/// Verifies the hypotheses of the diagram (exact rows, commuting squares)
/// and computes both sides of the index identity.
pub fn check_index_lemma(d: &Diagram) -> Result<IndexLemmaReport, GroupError> {
    // Endpoint sanity.
    if d.alpha.source() != d.f.source()
        || d.beta.source() != d.f.target()
        || d.gamma.source() != d.g.target()
        || d.alpha.target() != d.fp.source()
        || d.beta.target() != d.fp.target()
        || d.gamma.target() != d.gp.target()
    {
        return Err(GroupError::IllFormedHom);
    }
    require_row_exact(&d.f, &d.g)?;
    require_row_exact(&d.fp, &d.gp)?;

    // Commuting squares.
    let left_top = d.f.and_then(&d.beta)?;
    let left_bottom = d.alpha.and_then(&d.fp)?;
    if !left_top.same_map(&left_bottom) {
        return Err(GroupError::NotCommutative);
    }
    let right_top = d.g.and_then(&d.gamma)?;
    let right_bottom = d.beta.and_then(&d.gp)?;
    if !right_top.same_map(&right_bottom) {
        return Err(GroupError::NotCommutative);
    }

    let aa = analyze_hom(&d.alpha)?;
    let ab = analyze_hom(&d.beta)?;
    let ac = analyze_hom(&d.gamma)?;
    let idx_a = aa.generalized_index();
    let idx_b = ab.generalized_index();
    let idx_c = ac.generalized_index();
    let holds = idx_b == &idx_a * &idx_c;
    Ok(IndexLemmaReport {
        idx_a,
        idx_b,
        idx_c,
        ker_orders: [aa.kernel.order(), ab.kernel.order(), ac.kernel.order()],
        coker_orders: [aa.cokernel.order(), ab.cokernel.order(), ac.cokernel.order()],
        holds,
    })
}

/// Direct product A x C presented canonically, with the product coordinate
/// maps needed to build inclusion and projection homomorphisms.
pub struct ProductGroup {
    pub group: FinAbGroup,
    pub left: FinAbGroup,
    pub right: FinAbGroup,
    pres: Presentation,
    na: usize,
}

impl ProductGroup {
    pub fn new(left: &FinAbGroup, right: &FinAbGroup) -> Self {
        let mut diag: Vec<BigInt> = left.invariant_factors().to_vec();
        diag.extend_from_slice(right.invariant_factors());
        let n = diag.len();
        let pres = Presentation::from_relation_columns(n, &Mat::diagonal(&diag))
            .expect("finite product");
        ProductGroup {
            group: pres.group().clone(),
            left: left.clone(),
            right: right.clone(),
            pres,
            na: left.rank(),
        }
    }

    pub fn pair(&self, a: &[BigInt], c: &[BigInt]) -> Elem {
        let mut raw: Vec<BigInt> = a.to_vec();
        raw.extend_from_slice(c);
        self.pres.to_group(&raw)
    }

    pub fn split(&self, e: &[BigInt]) -> (Elem, Elem) {
        let raw = self.pres.lift(e);
        let a = self.left.reduce(&raw[..self.na]).expect("left part");
        let c = self.right.reduce(&raw[self.na..]).expect("right part");
        (a, c)
    }

    /// Inclusion of the left factor.
    pub fn include_left(&self) -> GroupHom {
        let images: Vec<Elem> = (0..self.left.rank())
            .map(|i| {
                let mut a = self.left.zero();
                a[i] = BigInt::one();
                self.pair(&a, &self.right.zero())
            })
            .collect();
        GroupHom::new(self.left.clone(), self.group.clone(), images).expect("inclusion")
    }

    /// Projection onto the right factor.
    pub fn project_right(&self) -> GroupHom {
        let images: Vec<Elem> = (0..self.group.rank())
            .map(|j| {
                let mut e = self.group.zero();
                e[j] = BigInt::one();
                self.split(&e).1
            })
            .collect();
        GroupHom::new(self.group.clone(), self.right.clone(), images).expect("projection")
    }
}

/// Random invariant-factor chain with order at most `max_order`.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> FinAbGroup {
    loop {
        let rank = rng.gen_range(0..=3);
        let mut factors: Vec<BigInt> = Vec::new();
        let mut d: u64 = 1;
        for _ in 0..rank {
            d *= rng.gen_range(1..=4);
            if d >= 2 {
                factors.push(BigInt::from(d));
            }
        }
        let g = FinAbGroup::from_invariant_factors(factors).expect("chain by construction");
        if g.order() <= BigInt::from(max_order) {
            return g;
        }
    }
}

/// Random injection of `a` into a larger group: each factor Z/d embeds into
/// Z/(d*m) as multiplication by m, plus optional fresh summands, optionally
/// twisted by an automorphism of the target.
pub fn random_injection<R: Rng + ?Sized>(
    rng: &mut R,
    a: &FinAbGroup,
    max_order: u64,
) -> (FinAbGroup, GroupHom) {
    loop {
        let mut diag: Vec<BigInt> = Vec::new();
        let mut mults: Vec<BigInt> = Vec::new();
        for d in a.invariant_factors() {
            let m = BigInt::from(rng.gen_range(1u64..=3));
            diag.push(d * &m);
            mults.push(m);
        }
        for _ in 0..rng.gen_range(0..=1) {
            diag.push(BigInt::from(rng.gen_range(2u64..=4)));
        }
        let order: BigInt = diag.iter().product::<BigInt>().max(BigInt::one());
        if order > BigInt::from(max_order) {
            continue;
        }
        let n = diag.len();
        let pres = Presentation::from_relation_columns(n, &Mat::diagonal(&diag))
            .expect("finite by construction");
        let target = pres.group().clone();
        let images: Vec<Elem> = (0..a.rank())
            .map(|i| {
                let mut raw = vec![BigInt::zero(); n];
                raw[i] = mults[i].clone();
                pres.to_group(&raw)
            })
            .collect();
        let base = GroupHom::new(a.clone(), target.clone(), images).expect("injection");
        let twist = random_automorphism(rng, &target);
        return (target, base.and_then(&twist).expect("composable"));
    }
}

/// Random automorphism of `g` (falls back to the identity if none is found
/// quickly).
pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, g: &FinAbGroup) -> GroupHom {
    if g.is_trivial() {
        return GroupHom::identity(g);
    }
    for _ in 0..64 {
        let images: Vec<Elem> = g
            .invariant_factors()
            .iter()
            .map(|d| {
                // Random element of g[d]: coordinate j ranges over multiples
                // of D_j / gcd(D_j, d).
                g.invariant_factors()
                    .iter()
                    .map(|dj| {
                        let gc = dj.gcd(d);
                        let step = dj / &gc;
                        let lim: u64 = gc.to_string().parse().unwrap_or(1);
                        step * BigInt::from(rng.gen_range(0..lim.max(1)))
                    })
                    .collect()
            })
            .collect();
        if let Ok(h) = GroupHom::new(g.clone(), g.clone(), images) {
            if let Ok(a) = analyze_hom(&h) {
                if a.kernel.structure().is_trivial() && a.cokernel.is_trivial() {
                    return h;
                }
            }
        }
    }
    GroupHom::identity(g)
}

/// Inverse of a bijective endomorphism.
pub fn invert_automorphism(f: &GroupHom) -> Result<GroupHom, GroupError> {
    if f.source() != f.target() {
        return Err(GroupError::IllFormedHom);
    }
    let g = f.source();
    let m = f.matrix();
    let solver = m.hstack(&Mat::diagonal(g.invariant_factors()));
    let mut images = Vec::with_capacity(g.rank());
    for j in 0..g.rank() {
        let mut e = g.zero();
        e[j] = BigInt::one();
        let sol = solve_linear(&solver, &e).ok_or(GroupError::IllFormedHom)?;
        images.push(g.reduce(&sol[..g.rank()])?);
    }
    GroupHom::new(g.clone(), g.clone(), images)
}

/// Random diagram with split-exact rows 1 -> A -> A x C -> C -> 1 and
/// vertical injections, twisted by an automorphism of the bottom middle
/// group. Every group order stays at or below `max_order^2`.
pub fn random_split_diagram<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> Diagram {
    let a = random_group(rng, max_order / 2);
    let c = random_group(rng, max_order / 2);
    let (ap, alpha) = random_injection(rng, &a, max_order);
    let (cp, gamma) = random_injection(rng, &c, max_order);

    let top = ProductGroup::new(&a, &c);
    let bottom = ProductGroup::new(&ap, &cp);
    let f = top.include_left();
    let g = top.project_right();
    let mut fp = bottom.include_left();
    let mut gp = bottom.project_right();

    let beta_images: Vec<Elem> = (0..top.group.rank())
        .map(|j| {
            let mut e = top.group.zero();
            e[j] = BigInt::one();
            let (ae, ce) = top.split(&e);
            let aim = alpha.eval(&ae).expect("alpha eval");
            let cim = gamma.eval(&ce).expect("gamma eval");
            bottom.pair(&aim, &cim)
        })
        .collect();
    let mut beta =
        GroupHom::new(top.group.clone(), bottom.group.clone(), beta_images).expect("beta");

    // Twist the bottom row so the maps are not plain block matrices.
    let psi = random_automorphism(rng, &bottom.group);
    let psi_inv = invert_automorphism(&psi).expect("automorphism inverts");
    fp = fp.and_then(&psi).expect("fp twist");
    gp = psi_inv.and_then(&gp).expect("gp twist");
    beta = beta.and_then(&psi).expect("beta twist");

    Diagram { f, g, fp, gp, alpha, beta, gamma }
}
