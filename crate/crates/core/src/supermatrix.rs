//! Parity-graded block matrices over a Grassmann algebra.
//!
//! An entry at position (i,j) is homogeneous of parity row(i) ⊕ col(j):
//! even-even and odd-odd slots hold even elements, mixed slots hold odd
//! elements. Inversion works through the numeric body plus a terminating
//! Neumann series in the nilpotent remainder; the Berezinian uses the
//! block formula det(A - B D⁻¹ C) · det(D)⁻¹.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::grassmann::{GrassmannElement, GrassmannError, Parity};

#[derive(Debug, Error, PartialEq)]
pub enum SuperMatrixError {
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error("entry ({row},{col}) is not homogeneous of parity {expected}")]
    ParityViolation {
        row: usize,
        col: usize,
        expected: Parity,
    },
    #[error("shape mismatch: {0}×{1} against {2}×{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("column parities of the left factor do not match row parities of the right factor")]
    ParityMismatch,
    #[error("matrix is not square ({0}×{1})")]
    NotSquare(usize, usize),
    #[error("determinant requires all entries even; entry ({0},{1}) is odd or mixed")]
    NonEvenEntry(usize, usize),
    #[error("body matrix is singular")]
    SingularBody,
    #[error("odd-odd block has singular body")]
    SingularOddOddBlock,
}

/// Parity-graded matrix with Grassmann entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMatrix {
    row_parities: Vec<Parity>,
    col_parities: Vec<Parity>,
    algebra_dim: usize,
    entries: Vec<GrassmannElement>, // row-major
}

/// The four parity blocks of a supermatrix, rows and columns gathered in
/// their original order: even rows/cols first block-wise.
#[derive(Debug, Clone)]
pub struct BlockView {
    pub even_even: SuperMatrix,
    pub even_odd: SuperMatrix,
    pub odd_even: SuperMatrix,
    pub odd_odd: SuperMatrix,
}

impl SuperMatrix {
    /// Validates entry homogeneity against the parity grading. Zero entries
    /// are accepted in any slot.
    pub fn new(
        row_parities: Vec<Parity>,
        col_parities: Vec<Parity>,
        algebra_dim: usize,
        entries: Vec<GrassmannElement>,
    ) -> Result<SuperMatrix, SuperMatrixError> {
        let (r, c) = (row_parities.len(), col_parities.len());
        if entries.len() != r * c {
            return Err(SuperMatrixError::ShapeMismatch(r, c, entries.len(), 1));
        }
        for (idx, e) in entries.iter().enumerate() {
            if e.dim() != algebra_dim {
                return Err(GrassmannError::DimensionMismatch(algebra_dim, e.dim()).into());
            }
            let (i, j) = (idx / c, idx % c);
            let expected = row_parities[i].combine(col_parities[j]);
            if !e.is_zero() && !e.is_homogeneous(expected) {
                return Err(SuperMatrixError::ParityViolation {
                    row: i,
                    col: j,
                    expected,
                });
            }
        }
        Ok(SuperMatrix {
            row_parities,
            col_parities,
            algebra_dim,
            entries,
        })
    }

    pub fn from_fn(
        row_parities: Vec<Parity>,
        col_parities: Vec<Parity>,
        algebra_dim: usize,
        mut f: impl FnMut(usize, usize) -> GrassmannElement,
    ) -> Result<SuperMatrix, SuperMatrixError> {
        let (r, c) = (row_parities.len(), col_parities.len());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(f(i, j));
            }
        }
        SuperMatrix::new(row_parities, col_parities, algebra_dim, entries)
    }

    pub fn identity(parities: Vec<Parity>, algebra_dim: usize) -> SuperMatrix {
        let n = parities.len();
        SuperMatrix::from_fn(parities.clone(), parities, algebra_dim, |i, j| {
            if i == j {
                GrassmannElement::one(algebra_dim)
            } else {
                GrassmannElement::zero(algebra_dim)
            }
        })
        .expect("identity is parity-homogeneous")
        .with_shape_assert(n)
    }

    fn with_shape_assert(self, n: usize) -> SuperMatrix {
        debug_assert_eq!(self.nrows(), n);
        self
    }

    pub fn nrows(&self) -> usize {
        self.row_parities.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_parities.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn row_parities(&self) -> &[Parity] {
        &self.row_parities
    }

    pub fn col_parities(&self) -> &[Parity] {
        &self.col_parities
    }

    pub fn entry(&self, i: usize, j: usize) -> &GrassmannElement {
        &self.entries[i * self.ncols() + j]
    }

    /// Numeric matrix of entry bodies.
    pub fn body(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.nrows(), self.ncols(), |i, j| self.entry(i, j).body())
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    /// Max coefficient distance across all entries.
    pub fn max_distance(&self, other: &SuperMatrix) -> f64 {
        assert_eq!(self.nrows(), other.nrows());
        assert_eq!(self.ncols(), other.ncols());
        let mut worst: f64 = 0.0;
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                worst = worst.max(self.entry(i, j).max_coeff_distance(other.entry(i, j)));
            }
        }
        worst
    }

    /// Standard matrix product; the grading makes the result homogeneous.
    pub fn matmul(&self, other: &SuperMatrix) -> Result<SuperMatrix, SuperMatrixError> {
        if self.ncols() != other.nrows() {
            return Err(SuperMatrixError::ShapeMismatch(
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols(),
            ));
        }
        if self.col_parities != other.row_parities {
            return Err(SuperMatrixError::ParityMismatch);
        }
        if self.algebra_dim != other.algebra_dim {
            return Err(GrassmannError::DimensionMismatch(self.algebra_dim, other.algebra_dim).into());
        }
        let dim = self.algebra_dim;
        let mut entries = Vec::with_capacity(self.nrows() * other.ncols());
        for i in 0..self.nrows() {
            for j in 0..other.ncols() {
                let mut acc = GrassmannElement::zero(dim);
                for k in 0..self.ncols() {
                    acc = acc.try_add(&self.entry(i, k).try_mul(other.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        SuperMatrix::new(
            self.row_parities.clone(),
            other.col_parities.clone(),
            dim,
            entries,
        )
    }

    /// Determinant of a square matrix whose entries are all even (hence
    /// commuting), by cofactor expansion along the first row.
    pub fn det_even(&self) -> Result<GrassmannElement, SuperMatrixError> {
        if !self.is_square() {
            return Err(SuperMatrixError::NotSquare(self.nrows(), self.ncols()));
        }
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let e = self.entry(i, j);
                if !e.is_zero() && !e.is_homogeneous(Parity::Even) {
                    return Err(SuperMatrixError::NonEvenEntry(i, j));
                }
            }
        }
        Ok(det_cofactor(self))
    }

    fn gather(&self, rows: &[usize], cols: &[usize]) -> SuperMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.entry(i, j).clone()))
            .collect();
        SuperMatrix {
            row_parities: rows.iter().map(|&i| self.row_parities[i]).collect(),
            col_parities: cols.iter().map(|&j| self.col_parities[j]).collect(),
            algebra_dim: self.algebra_dim,
            entries,
        }
    }

    /// Splits into the four parity blocks (rows/cols gathered by parity,
    /// original order preserved inside each group).
    pub fn block_view(&self) -> BlockView {
        let even_rows: Vec<usize> = (0..self.nrows())
            .filter(|&i| self.row_parities[i] == Parity::Even)
            .collect();
        let odd_rows: Vec<usize> = (0..self.nrows())
            .filter(|&i| self.row_parities[i] == Parity::Odd)
            .collect();
        let even_cols: Vec<usize> = (0..self.ncols())
            .filter(|&j| self.col_parities[j] == Parity::Even)
            .collect();
        let odd_cols: Vec<usize> = (0..self.ncols())
            .filter(|&j| self.col_parities[j] == Parity::Odd)
            .collect();
        BlockView {
            even_even: self.gather(&even_rows, &even_cols),
            even_odd: self.gather(&even_rows, &odd_cols),
            odd_even: self.gather(&odd_rows, &even_cols),
            odd_odd: self.gather(&odd_rows, &odd_cols),
        }
    }

    /// Inverse via body inverse plus a Neumann series in the nilpotent
    /// remainder, which terminates at the algebra's nilpotency order.
    pub fn inverse(&self) -> Result<SuperMatrix, SuperMatrixError> {
        if !self.is_square() {
            return Err(SuperMatrixError::NotSquare(self.nrows(), self.ncols()));
        }
        let n = self.nrows();
        let dim = self.algebra_dim;
        let body_inv = self
            .body()
            .try_inverse()
            .ok_or(SuperMatrixError::SingularBody)?;
        // B^{-1} as a supermatrix: row parities are the column parities of M
        let body_inv_sm = SuperMatrix::from_fn(
            self.col_parities.clone(),
            self.row_parities.clone(),
            dim,
            |i, j| GrassmannElement::scalar(dim, body_inv[(i, j)]),
        )?;
        // soul part S of M, with N = B^{-1} S nilpotent
        let soul = SuperMatrix::from_fn(
            self.row_parities.clone(),
            self.col_parities.clone(),
            dim,
            |i, j| self.entry(i, j).soul(),
        )?;
        let n_mat = body_inv_sm.matmul(&soul)?;
        // (I + N)^{-1} = Σ (-N)^k, truncated when powers vanish
        let mut acc = SuperMatrix::identity(self.col_parities.clone(), dim);
        let mut power = SuperMatrix::identity(self.col_parities.clone(), dim);
        for k in 1..=dim {
            power = power.matmul(&n_mat)?;
            if power.is_zero() {
                break;
            }
            let signed = if k % 2 == 1 {
                power.scale(Complex64::new(-1.0, 0.0))
            } else {
                power.clone()
            };
            acc = acc.add(&signed)?;
        }
        acc.matmul(&body_inv_sm).map(|m| m.with_shape_assert(n))
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, factor: Complex64) -> SuperMatrix {
        SuperMatrix {
            row_parities: self.row_parities.clone(),
            col_parities: self.col_parities.clone(),
            algebra_dim: self.algebra_dim,
            entries: self.entries.iter().map(|e| e.scale(factor)).collect(),
        }
    }

    pub fn add(&self, other: &SuperMatrix) -> Result<SuperMatrix, SuperMatrixError> {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return Err(SuperMatrixError::ShapeMismatch(
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(SuperMatrix {
            row_parities: self.row_parities.clone(),
            col_parities: self.col_parities.clone(),
            algebra_dim: self.algebra_dim,
            entries,
        })
    }

    /// Berezinian (superdeterminant): det(A - B D⁻¹ C) · det(D)⁻¹ with the
    /// blocks of [`Self::block_view`]. The odd-odd block must have an
    /// invertible body. For a matrix without odd rows/cols this reduces to
    /// the ordinary determinant.
    pub fn berezinian(&self) -> Result<GrassmannElement, SuperMatrixError> {
        if !self.is_square() {
            return Err(SuperMatrixError::NotSquare(self.nrows(), self.ncols()));
        }
        let blocks = self.block_view();
        let dim = self.algebra_dim;
        let d = &blocks.odd_odd;
        if d.nrows() == 0 {
            return blocks.even_even.det_even();
        }
        let d_inv = d.inverse().map_err(|e| match e {
            SuperMatrixError::SingularBody => SuperMatrixError::SingularOddOddBlock,
            other => other,
        })?;
        let det_d = d.det_even()?;
        let det_d_inv = det_d.invert().map_err(|_| SuperMatrixError::SingularOddOddBlock)?;
        if blocks.even_even.nrows() == 0 {
            return Ok(det_d_inv);
        }
        let correction = blocks
            .even_odd
            .matmul(&d_inv)?
            .matmul(&blocks.odd_even)?;
        let schur = blocks
            .even_even
            .add(&correction.scale(Complex64::new(-1.0, 0.0)))?;
        let det_schur = schur.det_even()?;
        Ok(det_schur.try_mul(&det_d_inv)?)
    }
}

/// Cofactor determinant over commuting entries.
fn det_cofactor(m: &SuperMatrix) -> GrassmannElement {
    let n = m.nrows();
    let dim = m.algebra_dim();
    if n == 0 {
        return GrassmannElement::one(dim);
    }
    if n == 1 {
        return m.entry(0, 0).clone();
    }
    let mut acc = GrassmannElement::zero(dim);
    let rows: Vec<usize> = (1..n).collect();
    for j in 0..n {
        let e = m.entry(0, j);
        if e.is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = det_cofactor(&m.gather(&rows, &cols));
        let signed = if j % 2 == 0 {
            e.try_mul(&minor).expect("same algebra")
        } else {
            e.try_mul(&minor).expect("same algebra").scale(Complex64::new(-1.0, 0.0))
        };
        acc = acc.try_add(&signed).expect("same algebra");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::OddMonomial;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn scalar(dim: usize, v: f64) -> GrassmannElement {
        GrassmannElement::scalar(dim, v)
    }

    #[test]
    fn parity_validation_rejects_odd_in_even_slot() {
        let dim = 2;
        let theta = GrassmannElement::generator(dim, 0).unwrap();
        let res = SuperMatrix::new(
            vec![Parity::Even],
            vec![Parity::Even],
            dim,
            vec![theta],
        );
        assert!(matches!(res, Err(SuperMatrixError::ParityViolation { .. })));
    }

    #[test]
    fn matmul_identity() {
        let dim = 2;
        let pars = vec![Parity::Even, Parity::Odd];
        let id = SuperMatrix::identity(pars.clone(), dim);
        let theta = GrassmannElement::generator(dim, 0).unwrap();
        let m = SuperMatrix::new(
            pars.clone(),
            pars,
            dim,
            vec![
                scalar(dim, 2.0),
                theta.clone(),
                theta.scale(c(-1.5)),
                scalar(dim, 3.0),
            ],
        )
        .unwrap();
        let prod = m.matmul(&id).unwrap();
        assert!(prod.max_distance(&m) < 1e-15);
    }

    #[test]
    fn matmul_matches_dense_brute_force() {
        // 2x2 numeric blocks against a hand-rolled complex product
        let dim = 0;
        let pars = vec![Parity::Even, Parity::Even];
        let a_vals = [[1.5, -0.3], [2.0, 0.7]];
        let b_vals = [[0.4, 1.1], [-2.2, 0.6]];
        let a = SuperMatrix::from_fn(pars.clone(), pars.clone(), dim, |i, j| {
            scalar(dim, a_vals[i][j])
        })
        .unwrap();
        let b = SuperMatrix::from_fn(pars.clone(), pars.clone(), dim, |i, j| {
            scalar(dim, b_vals[i][j])
        })
        .unwrap();
        let prod = a.matmul(&b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expected: f64 = (0..2).map(|k| a_vals[i][k] * b_vals[k][j]).sum();
                assert!((prod.entry(i, j).body() - c(expected)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn matmul_shape_and_parity_errors() {
        let dim = 0;
        let a = SuperMatrix::identity(vec![Parity::Even, Parity::Even], dim);
        let b = SuperMatrix::identity(vec![Parity::Even], dim);
        assert!(matches!(
            a.matmul(&b),
            Err(SuperMatrixError::ShapeMismatch(..))
        ));
        let c_mat = SuperMatrix::identity(vec![Parity::Even, Parity::Odd], dim);
        assert!(matches!(a.matmul(&c_mat), Err(SuperMatrixError::ParityMismatch)));
    }

    #[test]
    fn det_identity_and_numeric() {
        let dim = 0;
        let id = SuperMatrix::identity(vec![Parity::Even; 3], dim);
        assert_eq!(id.det_even().unwrap(), GrassmannElement::one(dim));

        let pars = vec![Parity::Even, Parity::Even];
        let m = SuperMatrix::from_fn(pars.clone(), pars, dim, |i, j| {
            scalar(dim, [[3.0, 1.0], [4.0, 2.0]][i][j])
        })
        .unwrap();
        let det = m.det_even().unwrap();
        assert!((det.body() - c(2.0)).norm() < 1e-14);
    }

    #[test]
    fn det_with_nilpotent_entry() {
        // det [[2+θ0θ1, 0],[0,3]] = 6 + 3 θ0θ1
        let dim = 2;
        let m01 = OddMonomial::from_indices(&[0, 1], dim).unwrap();
        let e = GrassmannElement::from_terms(dim, [(OddMonomial::UNIT, c(2.0)), (m01, c(1.0))])
            .unwrap();
        let pars = vec![Parity::Even, Parity::Even];
        let m = SuperMatrix::new(
            pars.clone(),
            pars,
            dim,
            vec![e, scalar(dim, 0.0), scalar(dim, 0.0), scalar(dim, 3.0)],
        )
        .unwrap();
        let det = m.det_even().unwrap();
        assert!((det.body() - c(6.0)).norm() < 1e-14);
        assert!((det.coeff(m01) - c(3.0)).norm() < 1e-14);
    }

    #[test]
    fn det_matches_permutation_sum_oracle() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        // permutation-sum determinant over even entries
        fn perm_det(m: &SuperMatrix) -> GrassmannElement {
            let n = m.nrows();
            let dim = m.algebra_dim();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut acc = GrassmannElement::zero(dim);
            permute(&mut perm, 0, &mut |p, sign| {
                let mut prod = GrassmannElement::scalar(dim, sign as f64);
                for (i, &j) in p.iter().enumerate() {
                    prod = prod.try_mul(m.entry(i, j)).unwrap();
                }
                acc = acc.try_add(&prod).unwrap();
            });
            acc
        }
        fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize], i32)) {
            let n = p.len();
            if k == n {
                let mut sign = 1;
                let mut seen = vec![false; n];
                for start in 0..n {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0;
                    let mut cur = start;
                    while !seen[cur] {
                        seen[cur] = true;
                        cur = p[cur];
                        len += 1;
                    }
                    if len % 2 == 0 {
                        sign = -sign;
                    }
                }
                visit(p, sign);
                return;
            }
            for i in k..n {
                p.swap(k, i);
                permute(p, k + 1, visit);
                p.swap(k, i);
            }
        }

        let dim = 4;
        let m01 = OddMonomial::from_indices(&[0, 1], dim).unwrap();
        let m23 = OddMonomial::from_indices(&[2, 3], dim).unwrap();
        for n in 1..=4usize {
            let pars = vec![Parity::Even; n];
            let m = SuperMatrix::from_fn(pars.clone(), pars.clone(), dim, |_, _| {
                GrassmannElement::from_terms(
                    dim,
                    [
                        (OddMonomial::UNIT, Complex64::new(rng.gen_range(-1.0..1.0), 0.0)),
                        (m01, Complex64::new(rng.gen_range(-1.0..1.0), 0.0)),
                        (m23, Complex64::new(rng.gen_range(-1.0..1.0), 0.0)),
                    ],
                )
                .unwrap()
            })
            .unwrap();
            let fast = m.det_even().unwrap();
            let slow = perm_det(&m);
            assert!(fast.max_coeff_distance(&slow) < 1e-12, "n = {}", n);
        }
    }

    #[test]
    fn inverse_identity_and_one_by_one() {
        let dim = 2;
        let id = SuperMatrix::identity(vec![Parity::Even, Parity::Odd], dim);
        assert!(id.inverse().unwrap().max_distance(&id) < 1e-15);

        let m01 = OddMonomial::from_indices(&[0, 1], dim).unwrap();
        let e = GrassmannElement::from_terms(dim, [(OddMonomial::UNIT, c(2.0)), (m01, c(1.0))])
            .unwrap();
        let m = SuperMatrix::new(vec![Parity::Even], vec![Parity::Even], dim, vec![e]).unwrap();
        let inv = m.inverse().unwrap();
        assert!((inv.entry(0, 0).body() - c(0.5)).norm() < 1e-14);
        assert!((inv.entry(0, 0).coeff(m01) - c(-0.25)).norm() < 1e-14);
    }

    #[test]
    fn inverse_is_two_sided() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(12);
        let m = crate::supermatrix::testutil::random_supermatrix(
            &[Parity::Even, Parity::Even, Parity::Odd],
            4,
            &mut rng,
        );
        let inv = m.inverse().unwrap();
        let id = SuperMatrix::identity(m.row_parities().to_vec(), m.algebra_dim());
        assert!(m.matmul(&inv).unwrap().max_distance(&id) < 1e-10);
        assert!(inv.matmul(&m).unwrap().max_distance(&id) < 1e-10);
    }

    #[test]
    fn singular_body_rejected() {
        let dim = 1;
        let theta = GrassmannElement::generator(dim, 0).unwrap();
        // even 1x1 slot cannot hold θ, so use a 2x2 with zero body instead
        let pars = vec![Parity::Even, Parity::Odd];
        let m = SuperMatrix::new(
            pars.clone(),
            pars,
            dim,
            vec![
                GrassmannElement::zero(dim),
                theta.clone(),
                theta,
                GrassmannElement::zero(dim),
            ],
        )
        .unwrap();
        assert!(matches!(m.inverse(), Err(SuperMatrixError::SingularBody)));
    }

    #[test]
    fn berezinian_block_diagonal() {
        // diag(A; D) -> det(A) · det(D)^{-1}
        let dim = 2;
        let pars = vec![Parity::Even, Parity::Even, Parity::Odd];
        let m = SuperMatrix::from_fn(pars.clone(), pars, dim, |i, j| {
            if i != j {
                GrassmannElement::zero(dim)
            } else {
                scalar(dim, [2.0, 3.0, 4.0][i])
            }
        })
        .unwrap();
        let ber = m.berezinian().unwrap();
        assert!((ber.body() - c(6.0 / 4.0)).norm() < 1e-13);
    }

    #[test]
    fn berezinian_one_one_formula() {
        // [[a, β],[γ, d]] with a,d numeric and β,γ odd: a/d - βγ/d²
        let dim = 2;
        let a = 2.0;
        let d = 4.0;
        let beta = GrassmannElement::generator(dim, 0).unwrap();
        let gamma = GrassmannElement::generator(dim, 1).unwrap();
        let pars = vec![Parity::Even, Parity::Odd];
        let m = SuperMatrix::new(
            pars.clone(),
            pars,
            dim,
            vec![scalar(dim, a), beta.clone(), gamma.clone(), scalar(dim, d)],
        )
        .unwrap();
        let ber = m.berezinian().unwrap();
        let m01 = OddMonomial::from_indices(&[0, 1], dim).unwrap();
        assert!((ber.body() - c(a / d)).norm() < 1e-13);
        // βγ = θ0θ1, so the coefficient is -1/d²
        assert!((ber.coeff(m01) - c(-1.0 / (d * d))).norm() < 1e-13);
    }

    #[test]
    fn berezinian_of_identity() {
        let id = SuperMatrix::identity(vec![Parity::Even, Parity::Even, Parity::Odd], 2);
        let ber = id.berezinian().unwrap();
        assert!(ber.max_coeff_distance(&GrassmannElement::one(2)) < 1e-14);
    }
}

#[cfg(any(test, feature = "testutil"))]
pub mod testutil {
    //! Shared generators for randomized supermatrix tests.

    use super::*;
    use crate::grassmann::OddMonomial;
    use rand::Rng;

    /// Random homogeneous supermatrix with unit-scale coefficients and a
    /// body conditioned away from singularity (min singular value >= 0.1).
    pub fn random_supermatrix<R: Rng>(
        parities: &[Parity],
        algebra_dim: usize,
        rng: &mut R,
    ) -> SuperMatrix {
        loop {
            let m = SuperMatrix::from_fn(
                parities.to_vec(),
                parities.to_vec(),
                algebra_dim,
                |i, j| {
                    let parity = parities[i].combine(parities[j]);
                    random_homogeneous(parity, algebra_dim, rng)
                },
            )
            .expect("homogeneous by construction");
            let svd = m.body().svd(false, false);
            let min_sv = svd
                .singular_values
                .iter()
                .fold(f64::INFINITY, |a, &b| a.min(b));
            if min_sv >= 0.1 {
                return m;
            }
        }
    }

    pub fn random_homogeneous<R: Rng>(
        parity: Parity,
        algebra_dim: usize,
        rng: &mut R,
    ) -> GrassmannElement {
        let mut terms = Vec::new();
        for bits in 0u64..(1 << algebra_dim) {
            let idx: Vec<usize> = (0..algebra_dim).filter(|i| bits & (1 << i) != 0).collect();
            if idx.len() % 2 != if parity == Parity::Even { 0 } else { 1 } {
                continue;
            }
            let m = OddMonomial::from_indices(&idx, algebra_dim).unwrap();
            terms.push((
                m,
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ));
        }
        GrassmannElement::from_terms(algebra_dim, terms).unwrap()
    }
}
