//! Berezin integration over odd variables.
//!
//! The normalization follows ∫ θ_m ⋯ θ_1 dθ_1 ∧ ⋯ ∧ dθ_m = 1: integrating
//! the descending top monomial against the ascending measure gives one.
//! Equivalently, [`integrate_all`] equals iterated [`integrate_one`] in
//! ascending generator order. Note that under this convention
//! ∫ θ_1 θ_2 dθ_1 dθ_2 = -1. No domain of integration appears anywhere;
//! the integral is algebraic.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::grassmann::{GrassmannElement, GrassmannError, OddMonomial, Parity};

#[derive(Debug, Error, PartialEq)]
pub enum BerezinError {
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error("substitution matrix is singular")]
    SingularMatrix,
    #[error("substitution matrix must be {dim}×{dim}, got {rows}×{cols}")]
    ShapeMismatch { dim: usize, rows: usize, cols: usize },
    #[error("substitution image for generator {0} is not homogeneous odd")]
    NonOddImage(usize),
}

/// Integrates out a single odd generator: terms not containing `gen` are
/// dropped; in the others `gen` is removed and the coefficient picks up the
/// sign of anticommuting θ_gen to the rightmost position.
pub fn integrate_one(
    x: &GrassmannElement,
    gen: usize,
) -> Result<GrassmannElement, BerezinError> {
    if gen >= x.dim() {
        return Err(GrassmannError::IndexOutOfRange {
            index: gen,
            dim: x.dim(),
        }
        .into());
    }
    let mut terms = Vec::new();
    for (m, c) in x.terms() {
        if !m.contains(gen) {
            continue;
        }
        let above = m.indices().filter(|&i| i > gen).count();
        let sign = if above % 2 == 0 { 1.0 } else { -1.0 };
        let reduced: Vec<usize> = m.indices().filter(|&i| i != gen).collect();
        let mono = OddMonomial::from_indices(&reduced, x.dim()).expect("reduced monomial valid");
        terms.push((mono, *c * sign));
    }
    Ok(GrassmannElement::from_terms(x.dim(), terms)?)
}

/// Full Berezin integral over all generators: the signed top coefficient.
///
/// Equals iterated [`integrate_one`] over generators 0, 1, …, dim-1.
pub fn integrate_all(x: &GrassmannElement) -> Complex64 {
    let m = x.dim();
    let top = x.coeff(OddMonomial::top(m));
    // the descending normalization monomial is (-1)^{m(m-1)/2} times the
    // canonical ascending one
    if (m * (m.saturating_sub(1)) / 2) % 2 == 0 {
        top
    } else {
        -top
    }
}

/// Substitutes each generator θ_i by the homogeneous odd element `images[i]`
/// and extends multiplicatively. Well defined because odd homogeneous
/// elements anticommute and square to zero.
pub fn substitute_odd(
    x: &GrassmannElement,
    images: &[GrassmannElement],
) -> Result<GrassmannElement, BerezinError> {
    let dim = x.dim();
    if images.len() != dim {
        return Err(BerezinError::ShapeMismatch {
            dim,
            rows: images.len(),
            cols: 1,
        });
    }
    for (i, img) in images.iter().enumerate() {
        if img.dim() != dim {
            return Err(GrassmannError::DimensionMismatch(dim, img.dim()).into());
        }
        if !img.is_homogeneous(Parity::Odd) {
            return Err(BerezinError::NonOddImage(i));
        }
    }
    let mut out = GrassmannElement::zero(dim);
    for (m, c) in x.terms() {
        let mut prod = GrassmannElement::scalar(dim, *c);
        for i in m.indices() {
            prod = prod.try_mul(&images[i])?;
            if prod.is_zero() {
                break;
            }
        }
        out = out.try_add(&prod)?;
    }
    Ok(out)
}

/// Linear odd change of variables η_i = Σ_j A_ij θ_j, with the det(A)^{-1}
/// factor that makes [`integrate_all`] invariant (the pure-odd Berezinian).
pub fn change_of_variables_odd(
    x: &GrassmannElement,
    a: &DMatrix<Complex64>,
) -> Result<GrassmannElement, BerezinError> {
    let dim = x.dim();
    if a.nrows() != dim || a.ncols() != dim {
        return Err(BerezinError::ShapeMismatch {
            dim,
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let det = a.clone().lu().determinant();
    if det.norm() < 1e-300 {
        return Err(BerezinError::SingularMatrix);
    }
    let images: Vec<GrassmannElement> = (0..dim)
        .map(|i| {
            let terms = (0..dim).map(|j| (OddMonomial::generator(j), a[(i, j)]));
            GrassmannElement::from_terms(dim, terms)
        })
        .collect::<Result<_, _>>()?;
    let substituted = substitute_odd(x, &images)?;
    Ok(substituted.scale(Complex64::new(1.0, 0.0) / det))
}
