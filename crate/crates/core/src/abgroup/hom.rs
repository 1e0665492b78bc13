//! Homomorphisms between finite abelian groups.
//!
//! A homomorphism is stored by the images of the source's canonical
//! generators. Kernel, image and cokernel all reduce to integer linear
//! algebra against the relation lattices of the two groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::group::{subgroup_generated, Elem, FinAbGroup, Presentation, Subgroup};
use super::matrix::{kernel_basis, Mat};
use crate::abgroup::GroupError;

/// Homomorphism determined by generator images.
#[derive(Clone)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<Elem>,
}

impl GroupHom {
    /// Builds a homomorphism sending the i-th canonical generator of
    /// `source` to `images[i]`. Fails with `IllFormedHom` unless every
    /// generator's order annihilates its image.
    pub fn new(
        source: FinAbGroup,
        target: FinAbGroup,
        images: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.rank() {
            return Err(GroupError::IllFormedHom);
        }
        let mut reduced = Vec::with_capacity(images.len());
        for (img, d) in images.iter().zip(source.invariant_factors()) {
            let img = target.reduce(img).map_err(|_| GroupError::IllFormedHom)?;
            let killed = target.scale(d, &img).map_err(|_| GroupError::IllFormedHom)?;
            if !target.is_zero_elem(&killed) {
                return Err(GroupError::IllFormedHom);
            }
            reduced.push(img);
        }
        Ok(GroupHom { source, target, images: reduced })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let images = (0..g.rank())
            .map(|i| {
                let mut e = g.zero();
                e[i] = BigInt::from(1);
                e
            })
            .collect();
        GroupHom { source: g.clone(), target: g.clone(), images }
    }

    pub fn zero_hom(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        let images = vec![target.zero(); source.rank()];
        GroupHom { source: source.clone(), target: target.clone(), images }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Elem] {
        &self.images
    }

    /// Matrix whose columns are the generator images.
    pub fn matrix(&self) -> Mat {
        Mat::from_cols(self.target.rank(), &self.images)
    }

    /// Applies the homomorphism to an element of the source.
    pub fn eval(&self, e: &[BigInt]) -> Result<Elem, GroupError> {
        let e = self.source.reduce(e)?;
        let mut acc = self.target.zero();
        for (coeff, img) in e.iter().zip(&self.images) {
            let term = self.target.scale(coeff, img)?;
            acc = self.target.add(&acc, &term)?;
        }
        Ok(acc)
    }

    /// Composition `then . self` (apply self first).
    pub fn and_then(&self, then: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.target != then.source {
            return Err(GroupError::IllFormedHom);
        }
        let images = self
            .images
            .iter()
            .map(|img| then.eval(img))
            .collect::<Result<Vec<_>, _>>()?;
        GroupHom::new(self.source.clone(), then.target.clone(), images)
    }

    /// Do two homomorphisms with the same endpoints agree?
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }
}

/// Kernel, image and cokernel of a homomorphism.
pub struct HomAnalysis {
    pub kernel: Subgroup,
    pub image: Subgroup,
    pub cokernel: FinAbGroup,
}

impl HomAnalysis {
    /// Generalized index #cokernel / #kernel as an exact rational.
    pub fn generalized_index(&self) -> BigRational {
        BigRational::new(self.cokernel.order(), self.kernel.order())
    }
}

/// Computes kernel, image and cokernel of `f`.
pub fn analyze_hom(f: &GroupHom) -> Result<HomAnalysis, GroupError> {
    let src = f.source();
    let tgt = f.target();
    let image = subgroup_generated(tgt, f.generator_images())?;

    // Kernel: x in the source with M x lying in the target relation lattice.
    // The projection to source coordinates of ker [M | diag(target)]
    // generates exactly the kernel subgroup.
    let m = f.matrix();
    let solver = m.hstack(&Mat::diagonal(tgt.invariant_factors()));
    let kern = kernel_basis(&solver);
    let k = src.rank();
    let mut kgens = Vec::new();
    for j in 0..kern.cols() {
        let x = kern.col(j)[..k].to_vec();
        let e = src.reduce(&x)?;
        if !src.is_zero_elem(&e) {
            kgens.push(e);
        }
    }
    let kernel = subgroup_generated(src, &kgens)?;

    // Cokernel: target / (image + relations).
    let n = tgt.rank();
    let mut rel_cols: Vec<Vec<BigInt>> = f.generator_images().to_vec();
    for (i, d) in tgt.invariant_factors().iter().enumerate() {
        let mut col = vec![BigInt::zero(); n];
        col[i] = d.clone();
        rel_cols.push(col);
    }
    let relmat = Mat::from_cols(n, &rel_cols);
    let cokernel = Presentation::from_relation_columns(n, &relmat)?.group().clone();

    Ok(HomAnalysis { kernel, image, cokernel })
}
