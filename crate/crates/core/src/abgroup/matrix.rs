//! Dense integer matrices and the Smith normal form.
//!
//! Everything here works over arbitrary-precision integers. The matrices
//! involved are tiny (generator counts of small abelian groups), so the
//! classical elimination algorithm is plenty fast and stays exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix over the integers, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, a: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. All rows must share a length.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            a.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, a }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let conv: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Mat::from_rows(&conv)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(n_rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Mat::zeros(n_rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n_rows, "column length mismatch");
            for i in 0..n_rows {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = entries[i].clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.a[i * self.cols + j]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = lik * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &x[j]).sum())
            .collect()
    }

    /// Glues `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut m = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *m.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.a.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for k in 0..self.rows {
            self.a.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// row(i) += q * row(j)
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for k in 0..self.cols {
            let add = q * self.at(j, k);
            *self.at_mut(i, k) += add;
        }
    }

    /// col(j) += q * col(i)
    fn add_col(&mut self, j: usize, i: usize, q: &BigInt) {
        for k in 0..self.rows {
            let add = q * self.at(k, i);
            *self.at_mut(k, j) += add;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.at(i, k).clone();
            *self.at_mut(i, k) = v;
        }
    }

    fn neg_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.at(k, j).clone();
            *self.at_mut(k, j) = v;
        }
    }
}

/// Smith normal form with all four transformation matrices.
///
/// Satisfies `u * m * v = d`, with `u`, `v` unimodular, `u * uinv` and
/// `v * vinv` identities, and `d` diagonal with nonnegative entries forming
/// a divisibility chain d1 | d2 | ...
pub struct Snf {
    pub u: Mat,
    pub uinv: Mat,
    pub d: Mat,
    pub v: Mat,
    pub vinv: Mat,
}

impl Snf {
    /// Diagonal entries of `d`, one per row/col of the pivot range.
    pub fn diag(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// Rank = number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    m: Mat,
    u: Mat,
    uinv: Mat,
    v: Mat,
    vinv: Mat,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.uinv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.vinv.swap_rows(i, j);
    }

    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        self.m.add_row(i, j, q);
        self.u.add_row(i, j, q);
        let nq = -q;
        self.uinv.add_col(j, i, &nq);
    }

    fn add_col(&mut self, j: usize, i: usize, q: &BigInt) {
        self.m.add_col(j, i, q);
        self.v.add_col(j, i, q);
        let nq = -q;
        self.vinv.add_row(i, j, &nq);
    }

    fn neg_row(&mut self, i: usize) {
        self.m.neg_row(i);
        self.u.neg_row(i);
        self.uinv.neg_col(i);
    }
}

/// Computes the Smith normal form of `m`.
pub fn snf(m: &Mat) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        m: m.clone(),
        u: Mat::identity(rows),
        uinv: Mat::identity(rows),
        v: Mat::identity(cols),
        vinv: Mat::identity(cols),
    };

    let n = rows.min(cols);
    for t in 0..n {
        // Find a pivot of minimal absolute value in the trailing block.
        let pivot = {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w.m.at(i, j).is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if w.m.at(bi, bj).abs() <= w.m.at(i, j).abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        'reduce: loop {
            // Clear the pivot column.
            for i in t + 1..rows {
                if w.m.at(i, t).is_zero() {
                    continue;
                }
                let q = -w.m.at(i, t).div_floor(w.m.at(t, t));
                w.add_row(i, t, &q);
                if !w.m.at(i, t).is_zero() {
                    // Remainder is smaller than the pivot; promote it.
                    w.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            // Clear the pivot row.
            for j in t + 1..cols {
                if w.m.at(t, j).is_zero() {
                    continue;
                }
                let q = -w.m.at(t, j).div_floor(w.m.at(t, t));
                w.add_col(j, t, &q);
                if !w.m.at(t, j).is_zero() {
                    w.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // Pivot must divide every entry of the trailing block to make the
            // diagonal a divisibility chain.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.m.at(i, j).mod_floor(w.m.at(t, t)).is_zero() {
                        let one = BigInt::one();
                        w.add_row(t, i, &one);
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        if w.m.at(t, t).is_negative() {
            w.neg_row(t);
        }
    }

    Snf { u: w.u, uinv: w.uinv, d: w.m, v: w.v, vinv: w.vinv }
}

/// Smith normal form as a plain `(U, D, V)` triple with `U * m * V = D`.
pub fn smith_normal_form(m: &Mat) -> (Mat, Mat, Mat) {
    let s = snf(m);
    (s.u, s.d, s.v)
}

/// Solves `a * z = t` over the integers. Returns any solution, or None.
pub fn solve_linear(a: &Mat, t: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), t.len(), "dimension mismatch");
    let s = snf(a);
    let ut = s.u.mul_vec(t);
    let diag = s.diag();
    let mut wvec = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let di = if i < diag.len() { diag[i].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ut[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ut[i].div_mod_floor(&di);
            if !r.is_zero() {
                return None;
            }
            if i < wvec.len() {
                wvec[i] = q;
            }
        }
    }
    Some(s.v.mul_vec(&wvec))
}

/// Basis of the integer kernel of `a`, returned as matrix columns.
pub fn kernel_basis(a: &Mat) -> Mat {
    let s = snf(a);
    let rank = s.rank();
    let cols: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| s.v.col(j)).collect();
    Mat::from_cols(a.cols(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &Mat) -> Snf {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "u*m*v != d");
        assert_eq!(s.u.mul(&s.uinv), Mat::identity(m.rows()), "uinv wrong");
        assert_eq!(s.v.mul(&s.vinv), Mat::identity(m.cols()), "vinv wrong");
        let diag = s.diag();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative(), "negative diagonal");
            if i + 1 < diag.len() && !diag[i].is_zero() {
                assert!(
                    diag[i + 1].mod_floor(&diag[i]).is_zero() || diag[i + 1].is_zero(),
                    "divisibility chain broken: {:?}",
                    diag
                );
            }
            if diag[i].is_zero() && i + 1 < diag.len() {
                assert!(diag[i + 1].is_zero(), "zero before nonzero in chain");
            }
        }
        // Off-diagonal entries of d vanish.
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.at(i, j).is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn snf_known_small() {
        let m = Mat::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let s = check_snf(&m);
        assert_eq!(s.diag(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_identity_fixed() {
        let m = Mat::identity(3);
        let s = check_snf(&m);
        assert_eq!(s.d, Mat::identity(3));
    }

    #[test]
    fn snf_zero_matrix() {
        let m = Mat::zeros(2, 3);
        let s = check_snf(&m);
        assert!(s.d.is_zero());
    }

    #[test]
    fn snf_rectangular() {
        let m = Mat::from_i64_rows(&[vec![2, 4, 6]]);
        let s = check_snf(&m);
        assert_eq!(s.diag(), vec![BigInt::from(2)]);

        let m = Mat::from_i64_rows(&[vec![3], vec![6], vec![9]]);
        let s = check_snf(&m);
        assert_eq!(s.diag(), vec![BigInt::from(3)]);
    }

    #[test]
    fn snf_needs_divisibility_fixup() {
        // diag(2, 3) alone is not in normal form; SNF must produce (1, 6).
        let m = Mat::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check_snf(&m);
        assert_eq!(s.diag(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solve_linear_known() {
        // 2x = 4 mod nothing: plain linear solve.
        let a = Mat::from_i64_rows(&[vec![2]]);
        let sol = solve_linear(&a, &[BigInt::from(4)]).unwrap();
        assert_eq!(a.mul_vec(&sol), vec![BigInt::from(4)]);
        assert!(solve_linear(&a, &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn kernel_known() {
        // Kernel of [1 2] is spanned by (2, -1) up to sign.
        let a = Mat::from_i64_rows(&[vec![1, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        let col = k.col(0);
        assert!(a.mul_vec(&col).iter().all(|x| x.is_zero()));
        assert!(!col.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn snf_random_roundtrip() {
        // Deterministic pseudo-random small matrices.
        let mut seed: i64 = 12345;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % 51 - 25
        };
        for trial in 0..200 {
            let r = (trial % 5) + 1;
            let c = (trial % 4) + 1;
            let rows: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| next()).collect()).collect();
            let m = Mat::from_i64_rows(&rows);
            check_snf(&m);
        }
    }
}
