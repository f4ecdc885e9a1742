//! Fock-Bargmann polynomial engine: sparse multivariate polynomials with
//! exact radical or complex-double coefficients, the Bargmann monomial inner
//! product, boson (Weyl) operators, linear substitution, truncated
//! exponentials, and the Gaussian-Bargmann integral.
//!
//! Monomials `z^n/√(n!)` are orthonormal for the cylindrical measure, so the
//! inner product of two polynomials is `Σ_m conj(p_m)·q_m·∏_k (m_k)!` over
//! shared monomials. Everything here is exact in the radical domain; in the
//! complex domain coefficients below [`COMPLEX_EPS`] are dropped after each
//! operation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::{factorial, Rational, RadicalScalar};
use crate::linalg::CMatrix;

/// Absolute threshold below which complex coefficients are dropped.
/// Exact coefficients are never dropped.
pub const COMPLEX_EPS: f64 = 1e-14;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("polynomials live in different variable spaces")]
    SpaceMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("exponential of a series with nonzero constant term")]
    NonzeroConstantTerm,
    #[error("hermitian part of the quadratic form is not positive definite")]
    NotPositiveDefinite,
}

// ---------------------------------------------------------------------------
// variable spaces and monomials
// ---------------------------------------------------------------------------

/// Ordered set of variable names; the index order is fixed for the space's
/// lifetime and is the order used by monomial exponent vectors.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableSpace {
    names: Vec<String>,
}

impl VariableSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len(), "variable names must be unique");
        Arc::new(Self { names })
    }

    /// `n` anonymous variables `z1..zn`.
    pub fn anonymous(n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|i| format!("z{i}")))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

fn same_space(a: &Arc<VariableSpace>, b: &Arc<VariableSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector over a [`VariableSpace`]; ordering is lexicographic in the
/// fixed variable order, which is the tie-breaking convention everywhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn unit(dim: usize) -> Self {
        Monomial(vec![0u16; dim].into_boxed_slice())
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Monomial(e.to_vec().into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// `∏_k (m_k)!` — the Bargmann norm² of the bare monomial.
    pub fn norm_factorial(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for &e in self.0.iter() {
            if e > 1 {
                acc *= factorial(e as u64);
            }
        }
        acc
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", &self.0)
    }
}

// ---------------------------------------------------------------------------
// coefficient domains
// ---------------------------------------------------------------------------

/// Coefficient domain for [`BargmannPoly`]: either exact radicals or complex
/// doubles, fixed per polynomial.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Dropped from term maps after arithmetic. Exact values are negligible
    /// only when exactly zero.
    fn is_negligible(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_radical(r: &RadicalScalar) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn from_biguint(n: &BigUint) -> Self;
    fn to_c64(&self) -> Complex64;
}

impl Coefficient for RadicalScalar {
    fn zero() -> Self {
        RadicalScalar::zero()
    }
    fn one() -> Self {
        RadicalScalar::one()
    }
    fn is_zero(&self) -> bool {
        RadicalScalar::is_zero(self)
    }
    fn is_negligible(&self) -> bool {
        RadicalScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        // exact coefficients are real radicals
        self.clone()
    }
    fn from_radical(r: &RadicalScalar) -> Self {
        r.clone()
    }
    fn from_rational(q: &Rational) -> Self {
        RadicalScalar::from_rational(q.clone())
    }
    fn from_biguint(n: &BigUint) -> Self {
        RadicalScalar::from_rational(Rational::from_integer(BigInt::from(n.clone())))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_negligible(&self) -> bool {
        self.norm() < COMPLEX_EPS
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_radical(r: &RadicalScalar) -> Self {
        Complex64::new(r.to_f64(), 0.0)
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn from_biguint(n: &BigUint) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial over a [`VariableSpace`].
#[derive(Clone, PartialEq)]
pub struct BargmannPoly<C: Coefficient> {
    space: Arc<VariableSpace>,
    terms: BTreeMap<Monomial, C>,
}

pub type ExactPoly = BargmannPoly<RadicalScalar>;
pub type ComplexPoly = BargmannPoly<Complex64>;

impl<C: Coefficient> BargmannPoly<C> {
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<VariableSpace>, c: C) -> Self {
        let mut p = Self::zero(space);
        if !c.is_negligible() {
            p.terms.insert(Monomial::unit(space.dim()), c);
        }
        p
    }

    pub fn one(space: &Arc<VariableSpace>) -> Self {
        Self::constant(space, C::one())
    }

    /// The variable `z_idx` as a polynomial.
    pub fn variable(space: &Arc<VariableSpace>, idx: usize) -> Self {
        assert!(idx < space.dim());
        let mut e = vec![0u16; space.dim()];
        e[idx] = 1;
        let mut p = Self::zero(space);
        p.terms.insert(Monomial(e.into_boxed_slice()), C::one());
        p
    }

    pub fn from_terms(
        space: &Arc<VariableSpace>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            assert_eq!(m.0.len(), space.dim());
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Lexicographically greatest monomial, if any.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_negligible() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_negligible() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(same_space(&self.space, &rhs.space), "space mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert!(same_space(&self.space, &rhs.space), "space mismatch");
        let mut out = Self::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut e = ma.0.clone();
                for (k, &eb) in mb.0.iter().enumerate() {
                    e[k] += eb;
                }
                out.add_term(Monomial(e), ca.mul(cb));
            }
        }
        out
    }

    /// Drop every term of total degree `> cap`.
    pub fn truncate_degree(&self, cap: u32) -> Self {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `∂p/∂z_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut ne = m.0.clone();
            ne[var] = e - 1;
            let factor = C::from_rational(&Rational::from_integer(BigInt::from(e)));
            out.add_term(Monomial(ne), c.mul(&factor));
        }
        out
    }

    /// `z_var · p`.
    pub fn mul_var(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            let mut ne = m.0.clone();
            ne[var] += 1;
            out.add_term(Monomial(ne), c.clone());
        }
        out
    }

    /// One Weyl generator term `z_i ∂/∂z_j` summed over the given variable
    /// blocks: `E_ij p = Σ_blocks z_{b[i]} ∂p/∂z_{b[j]}`.
    ///
    /// Each block is a list of variable indices of equal length; `i`, `j`
    /// index within a block.
    pub fn apply_weyl(&self, i: usize, j: usize, blocks: &[Vec<usize>]) -> Self {
        let mut out = Self::zero(&self.space);
        for block in blocks {
            assert!(i < block.len() && j < block.len(), "weyl index outside block");
            let (vi, vj) = (block[i], block[j]);
            for (m, c) in &self.terms {
                let e = m.0[vj];
                if e == 0 {
                    continue;
                }
                let mut ne = m.0.clone();
                ne[vj] = e - 1;
                ne[vi] += 1;
                let factor = C::from_rational(&Rational::from_integer(BigInt::from(e)));
                out.add_term(Monomial(ne), c.mul(&factor));
            }
        }
        out
    }

    /// Replace each block row-vector `z` by `z·M` (so the matrix of the map
    /// on the fundamental monomials `{z_k}` of a block is exactly `M` in the
    /// block's index order), expand and collect.
    pub fn substitute_linear(&self, m: &[Vec<C>], blocks: &[Vec<usize>]) -> Result<Self, PolyError> {
        let n = m.len();
        if m.iter().any(|row| row.len() != n) {
            return Err(PolyError::Dimension("substitution matrix must be square".into()));
        }
        for block in blocks {
            if block.len() != n {
                return Err(PolyError::Dimension(format!(
                    "block length {} != matrix dimension {n}",
                    block.len()
                )));
            }
        }
        // images of the substituted variables: z_{block[k]} -> Σ_i z_{block[i]}·M[i][k]
        let mut image: Vec<Option<Self>> = vec![None; self.space.dim()];
        for block in blocks {
            for k in 0..n {
                let mut img = Self::zero(&self.space);
                for (i, &vi) in block.iter().enumerate() {
                    let mut e = vec![0u16; self.space.dim()];
                    e[vi] = 1;
                    img.add_term(Monomial(e.into_boxed_slice()), m[i][k].clone());
                }
                image[block[k]] = Some(img);
            }
        }
        let mut out = Self::zero(&self.space);
        for (mono, c) in &self.terms {
            let mut acc = Self::constant(&self.space, c.clone());
            for (v, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &image[v] {
                    None => {
                        acc = acc.mul_var_pow(v, e);
                    }
                    Some(img) => {
                        for _ in 0..e {
                            acc = acc.mul(img);
                        }
                    }
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    fn mul_var_pow(&self, var: usize, e: u16) -> Self {
        let mut out = Self::zero(&self.space);
        for (m, c) in &self.terms {
            let mut ne = m.0.clone();
            ne[var] += e;
            out.add_term(Monomial(ne), c.clone());
        }
        out
    }

    /// Truncated exponential `Σ_{k≤K} sᵏ/k!` keeping total degree `≤ cap`,
    /// with `K` large enough that all retained degrees are complete. Requires
    /// a zero constant term.
    pub fn exp_truncate(s: &Self, degree_cap: u32) -> Result<Self, PolyError> {
        if !s.coefficient(&Monomial::unit(s.space.dim())).is_zero() {
            return Err(PolyError::NonzeroConstantTerm);
        }
        let s = s.truncate_degree(degree_cap);
        let mut out = Self::one(&s.space);
        let mut power = Self::one(&s.space);
        // each factor of s raises degree by ≥ 1, so K = degree_cap completes
        // every retained degree
        for k in 1..=degree_cap as u64 {
            power = power.mul(&s).truncate_degree(degree_cap);
            if power.is_zero() {
                break;
            }
            let inv_k = C::from_rational(&Rational::new(BigInt::from(1), BigInt::from(k)));
            power = power.scale(&inv_k);
            out = out.add(&power);
        }
        Ok(out)
    }

    /// `Σ_m conj(p_m)·q_m·∏_k (m_k)!` over shared monomials (the
    /// Fock-Bargmann inner product; left argument conjugated).
    pub fn bargmann_inner(&self, rhs: &Self) -> Result<C, PolyError> {
        self.pairing(rhs, true)
    }

    /// Bilinear variant of the pairing (no conjugation), matching
    /// `∫ e^{x z̄} e^{y z} dμ = e^{xy}` read as a bilinear form in `(x, y)`.
    pub fn bargmann_pairing(&self, rhs: &Self) -> Result<C, PolyError> {
        self.pairing(rhs, false)
    }

    fn pairing(&self, rhs: &Self, conjugate: bool) -> Result<C, PolyError> {
        if !same_space(&self.space, &rhs.space) {
            return Err(PolyError::SpaceMismatch);
        }
        let mut acc = C::zero();
        // iterate the smaller map
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (&self.terms, &rhs.terms)
        } else {
            (&rhs.terms, &self.terms)
        };
        let small_is_self = self.terms.len() <= rhs.terms.len();
        for (m, cs) in small {
            if let Some(cl) = large.get(m) {
                let (a, b) = if small_is_self { (cs, cl) } else { (cl, cs) };
                let a = if conjugate { a.conj() } else { a.clone() };
                let w = C::from_biguint(&m.norm_factorial());
                acc = acc.add(&a.mul(b).mul(&w));
            }
        }
        Ok(acc)
    }

    /// Squared Bargmann norm `⟨p, p⟩`.
    pub fn norm_sqr(&self) -> C {
        self.bargmann_inner(self).expect("same space")
    }

    pub fn to_complex(&self) -> ComplexPoly {
        BargmannPoly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.to_c64()))
                .filter(|(_, c)| !Coefficient::is_negligible(c))
                .collect(),
        }
    }

    /// Pair the first `split` variables against `left` (conjugating `left`'s
    /// coefficients) and return the residue as a polynomial over `tail_space`
    /// (which must have dimension `self.dim − split`).
    ///
    /// Used to extract representation-matrix entries as polynomials in
    /// symbolic matrix entries: `self` lives in a joint (state ⊗ symbol)
    /// space, `left` is a state polynomial over the first `split` variables.
    pub fn pair_left(
        &self,
        left: &ExactPoly,
        split: usize,
        tail_space: &Arc<VariableSpace>,
    ) -> Result<Self, PolyError> {
        if left.space.dim() != split || tail_space.dim() + split != self.space.dim() {
            return Err(PolyError::Dimension("pair_left split sizes".into()));
        }
        let mut out = Self::zero(tail_space);
        for (m, c) in &self.terms {
            let (head, tail) = m.0.split_at(split);
            let head_m = Monomial::from_exponents(head);
            if let Some(lc) = left.terms.get(&head_m) {
                let w = C::from_biguint(&head_m.norm_factorial());
                let lc = C::from_radical(lc); // exact coefficients are real
                out.add_term(Monomial::from_exponents(tail), lc.mul(c).mul(&w));
            }
        }
        Ok(out)
    }
}

impl ExactPoly {
    /// Exact scale by a rational.
    pub fn scale_rat(&self, q: &Rational) -> Self {
        self.scale(&RadicalScalar::from_rational(q.clone()))
    }
}

impl<C: Coefficient> fmt::Debug for BargmannPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for (v, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", self.space.names[v])?;
                } else if e > 1 {
                    write!(f, "*{}^{}", self.space.names[v], e)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Gaussian-Bargmann integral
// ---------------------------------------------------------------------------

/// `∫ dμ(z) exp(−z̄ᵀXz + Aᵀz + z̄ᵀB) = (det X)⁻¹ · exp(Aᵀ X⁻¹ B)`,
/// valid when the hermitian part of `X` is positive definite.
pub fn gaussian_pairing(x: &CMatrix, a: &[Complex64], b: &[Complex64]) -> Result<Complex64, PolyError> {
    let n = x.nrows();
    if !x.is_square() || a.len() != n || b.len() != n {
        return Err(PolyError::Dimension("gaussian_pairing shapes".into()));
    }
    // Sylvester criterion on the hermitian part
    let herm = CMatrix::from_fn(n, n, |i, j| (x[(i, j)] + x[(j, i)].conj()) * 0.5);
    let idx: Vec<usize> = (0..n).collect();
    for k in 1..=n {
        let d = herm.minor(&idx[..k], &idx[..k]);
        if d.re <= 0.0 {
            return Err(PolyError::NotPositiveDefinite);
        }
    }
    let det = x.det();
    let xinv_b = x.solve(b).map_err(|_| PolyError::NotPositiveDefinite)?;
    let exponent: Complex64 = a.iter().zip(&xinv_b).map(|(ai, xi)| ai * xi).sum();
    Ok(exponent.exp() / det)
}
