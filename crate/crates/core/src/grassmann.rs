//! Finite-generator Grassmann algebra over complex coefficients.
//!
//! Elements are finite maps from canonical odd monomials to coefficients.
//! A monomial is a strictly increasing sequence of generator indices,
//! packed into a 64-bit set, so an algebra holds at most [`MAX_GENERATORS`]
//! generators. Products pick up the sign of sorting the concatenated index
//! sequence, which encodes the anti-commutation relations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Hard cap on generators per algebra; monomials pack into one machine word.
pub const MAX_GENERATORS: usize = 64;

/// Coefficients with absolute value at or below this are dropped after
/// arithmetic so that stored terms stay nonzero.
pub const DROP_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("generator index {index} out of range for algebra with {dim} generators")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("algebra dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("monomial indices must be strictly increasing")]
    NonCanonicalMonomial,
    #[error("an algebra holds at most {MAX_GENERATORS} generators, requested {0}")]
    TooManyGenerators(usize),
    #[error("element with zero body is not invertible")]
    ZeroBody,
    #[error("non-integer power of an element with zero body")]
    ZeroBodyNonIntegerPower,
}

/// Parity grading of homogeneous quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(degree: usize) -> Parity {
        if degree % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A canonical product of distinct odd generators, stored as a bit set.
/// Bit `i` set means generator `i` occurs; the empty set is the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddMonomial(u64);

impl OddMonomial {
    /// The empty monomial (multiplicative unit).
    pub const UNIT: OddMonomial = OddMonomial(0);

    /// Single generator θ_index.
    pub fn generator(index: usize) -> OddMonomial {
        assert!(index < MAX_GENERATORS);
        OddMonomial(1u64 << index)
    }

    /// Builds a monomial from strictly increasing indices below `dim`.
    pub fn from_indices(indices: &[usize], dim: usize) -> Result<OddMonomial, GrassmannError> {
        let mut bits = 0u64;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= dim {
                return Err(GrassmannError::IndexOutOfRange { index: i, dim });
            }
            if let Some(p) = prev {
                if i <= p {
                    return Err(GrassmannError::NonCanonicalMonomial);
                }
            }
            prev = Some(i);
            bits |= 1u64 << i;
        }
        Ok(OddMonomial(bits))
    }

    /// The full monomial θ_0 θ_1 ⋯ θ_{dim-1}.
    pub fn top(dim: usize) -> OddMonomial {
        if dim == 0 {
            OddMonomial(0)
        } else {
            OddMonomial(u64::MAX >> (64 - dim))
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..MAX_GENERATORS).filter(move |i| bits & (1u64 << i) != 0)
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, index: usize) -> bool {
        index < MAX_GENERATORS && self.0 & (1u64 << index) != 0
    }

    pub fn parity(&self) -> Parity {
        Parity::of_degree(self.degree())
    }

    pub fn fits(&self, dim: usize) -> bool {
        dim >= MAX_GENERATORS || self.0 >> dim == 0
    }
}

impl fmt::Display for OddMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "θ{}", i)?;
        }
        Ok(())
    }
}

/// Signed product of two canonical monomials.
///
/// Returns `None` when the monomials share a generator (the product is zero).
/// Otherwise the product is the sorted union and the sign is (-1)^k where k
/// counts the transpositions needed to sort the concatenation, i.e. the
/// number of pairs (i in a, j in b) with i > j.
pub fn mono_mul(a: OddMonomial, b: OddMonomial) -> Option<(i32, OddMonomial)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // generators of `a` strictly above position j must hop over b_j
        inversions += (a.0 >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((sign, OddMonomial(a.0 | b.0)))
}

/// An element of the Grassmann algebra on `dim` generators: a finite sum of
/// canonical monomials with nonzero complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannElement {
    dim: usize,
    terms: BTreeMap<OddMonomial, Complex64>,
}

impl GrassmannElement {
    pub fn zero(dim: usize) -> GrassmannElement {
        assert!(dim <= MAX_GENERATORS);
        GrassmannElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, value: impl Into<Complex64>) -> GrassmannElement {
        let mut e = GrassmannElement::zero(dim);
        let v: Complex64 = value.into();
        if v.norm() > DROP_TOLERANCE {
            e.terms.insert(OddMonomial::UNIT, v);
        }
        e
    }

    pub fn one(dim: usize) -> GrassmannElement {
        GrassmannElement::scalar(dim, 1.0)
    }

    /// The single generator θ_index as an element.
    pub fn generator(dim: usize, index: usize) -> Result<GrassmannElement, GrassmannError> {
        if index >= dim {
            return Err(GrassmannError::IndexOutOfRange { index, dim });
        }
        Ok(GrassmannElement::from_term(
            dim,
            OddMonomial::generator(index),
            Complex64::new(1.0, 0.0),
        ))
    }

    pub fn from_term(dim: usize, monomial: OddMonomial, coeff: Complex64) -> GrassmannElement {
        assert!(monomial.fits(dim), "monomial exceeds algebra dimension");
        let mut e = GrassmannElement::zero(dim);
        if coeff.norm() > DROP_TOLERANCE {
            e.terms.insert(monomial, coeff);
        }
        e
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<GrassmannElement, GrassmannError>
    where
        I: IntoIterator<Item = (OddMonomial, Complex64)>,
    {
        let mut e = GrassmannElement::zero(dim);
        for (m, c) in terms {
            if !m.fits(dim) {
                return Err(GrassmannError::IndexOutOfRange {
                    index: m.indices().last().unwrap_or(0),
                    dim,
                });
            }
            let entry = e.terms.entry(m).or_insert(Complex64::new(0.0, 0.0));
            *entry += c;
        }
        e.prune(DROP_TOLERANCE);
        Ok(e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddMonomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: OddMonomial) -> Complex64 {
        self.terms
            .get(&monomial)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> Complex64 {
        self.coeff(OddMonomial::UNIT)
    }

    /// The nilpotent remainder x - body(x).
    pub fn soul(&self) -> GrassmannElement {
        let mut e = self.clone();
        e.terms.remove(&OddMonomial::UNIT);
        e
    }

    /// Drops every stored term with |coefficient| <= tol.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }

    /// `Some(parity)` when all monomials share one parity, `None` for
    /// genuinely mixed elements. The zero element reports as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for m in self.terms.keys() {
            let p = m.parity();
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn is_homogeneous(&self, parity: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == parity)
    }

    /// Largest monomial degree present (0 for the zero element).
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn try_add(&self, other: &GrassmannElement) -> Result<GrassmannElement, GrassmannError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(*m).or_insert(Complex64::new(0.0, 0.0));
            *entry += c;
        }
        out.prune(DROP_TOLERANCE);
        Ok(out)
    }

    pub fn try_sub(&self, other: &GrassmannElement) -> Result<GrassmannElement, GrassmannError> {
        self.try_add(&other.clone().neg())
    }

    pub fn try_mul(&self, other: &GrassmannElement) -> Result<GrassmannElement, GrassmannError> {
        self.check_dim(other)?;
        let mut out = GrassmannElement::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = mono_mul(*ma, *mb) {
                    let entry = out.terms.entry(m).or_insert(Complex64::new(0.0, 0.0));
                    *entry += ca * cb * sign as f64;
                }
            }
        }
        out.prune(DROP_TOLERANCE);
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> GrassmannElement {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out.prune(DROP_TOLERANCE);
        out
    }

    /// Raises the element to a complex power.
    ///
    /// Non-negative integer exponents multiply out directly (valid for any
    /// element, including nilpotents). Otherwise the body must be nonzero and
    /// the result is body^p · Σ_k C(p,k) (soul/body)^k, a finite sum because
    /// the soul is nilpotent. body^p takes the principal branch.
    pub fn power(&self, p: Complex64) -> Result<GrassmannElement, GrassmannError> {
        if let Some(n) = as_nonneg_int(p) {
            let mut acc = GrassmannElement::one(self.dim);
            for _ in 0..n {
                acc = acc.try_mul(self)?;
            }
            return Ok(acc);
        }
        let b = self.body();
        if b.norm() == 0.0 {
            return Err(GrassmannError::ZeroBodyNonIntegerPower);
        }
        let reduced = self.soul().scale(Complex64::new(1.0, 0.0) / b);
        let mut acc = GrassmannElement::one(self.dim);
        let mut pow_k = GrassmannElement::one(self.dim);
        let mut binom = Complex64::new(1.0, 0.0);
        for k in 1..=self.dim {
            pow_k = pow_k.try_mul(&reduced)?;
            if pow_k.is_zero() {
                break;
            }
            binom *= (p - (k as f64 - 1.0)) / k as f64;
            acc = acc.try_add(&pow_k.scale(binom))?;
        }
        Ok(acc.scale(b.powc(p)))
    }

    /// Multiplicative inverse: body⁻¹ Σ_k (-soul/body)^k, truncated at the
    /// nilpotency order.
    pub fn invert(&self) -> Result<GrassmannElement, GrassmannError> {
        let b = self.body();
        if b.norm() == 0.0 {
            return Err(GrassmannError::ZeroBody);
        }
        let neg_reduced = self.soul().scale(Complex64::new(-1.0, 0.0) / b);
        let mut acc = GrassmannElement::one(self.dim);
        let mut pow_k = GrassmannElement::one(self.dim);
        for _ in 1..=self.dim {
            pow_k = pow_k.try_mul(&neg_reduced)?;
            if pow_k.is_zero() {
                break;
            }
            acc = acc.try_add(&pow_k)?;
        }
        Ok(acc.scale(Complex64::new(1.0, 0.0) / b))
    }

    /// Re-embeds the element into a larger algebra; generator indices are
    /// preserved.
    pub fn extend_algebra(&self, new_dim: usize) -> Result<GrassmannElement, GrassmannError> {
        if new_dim > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(new_dim));
        }
        if new_dim < self.dim {
            return Err(GrassmannError::DimensionMismatch(self.dim, new_dim));
        }
        let mut out = self.clone();
        out.dim = new_dim;
        Ok(out)
    }

    /// Max-norm distance between coefficients, for tolerance checks.
    pub fn max_coeff_distance(&self, other: &GrassmannElement) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, c) in &self.terms {
            worst = worst.max((c - other.coeff(*m)).norm());
        }
        for (m, c) in &other.terms {
            worst = worst.max((c - self.coeff(*m)).norm());
        }
        worst
    }

    fn check_dim(&self, other: &GrassmannElement) -> Result<(), GrassmannError> {
        if self.dim != other.dim {
            Err(GrassmannError::DimensionMismatch(self.dim, other.dim))
        } else {
            Ok(())
        }
    }
}

fn as_nonneg_int(p: Complex64) -> Option<u32> {
    if p.im != 0.0 {
        return None;
    }
    let r = p.re.round();
    if (p.re - r).abs() < 1e-12 && r >= 0.0 && r <= u32::MAX as f64 {
        Some(r as u32)
    } else {
        None
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_add(rhs).expect("algebra dimension mismatch in +")
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_sub(rhs).expect("algebra dimension mismatch in -")
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_mul(rhs).expect("algebra dimension mismatch in *")
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;
    fn neg(mut self) -> GrassmannElement {
        for c in self.terms.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == OddMonomial::UNIT {
                write!(f, "{}", fmt_complex(*c))?;
            } else if (c - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}·{}", fmt_complex(*c), m)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("({}{}i)", c.re, c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}
