//! Gel'fand pattern combinatorics, the binary fundamental representation
//! (BFR) with its coefficient rules and complement symmetry, and the
//! semi-maximal D-matrix formula.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::exact::{factorial_rat, Rational, RadicalScalar};
use crate::linalg::CMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GelfandError {
    #[error("pattern violates betweenness")]
    Betweenness,
    #[error("row lengths must decrease by one down to 1")]
    Shape,
    #[error("top row must be non-increasing and nonnegative")]
    BadTopRow,
    #[error("BFR table needs at least one 1 and one 0")]
    TrivialTable,
    #[error("matrix dimension does not match the pattern")]
    Dimension,
    #[error("could not parse pattern: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// patterns
// ---------------------------------------------------------------------------

/// Triangular integer array `h_{l,m}`, stored top-row-first: `rows[0]` is the
/// length-`n` top row `[h]_n`, `rows[n-1]` the single entry `h_{1,1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GelfandPattern {
    rows: Vec<Vec<i64>>,
}

impl GelfandPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, GelfandError> {
        let n = rows.len();
        if n == 0 || rows.iter().enumerate().any(|(i, r)| r.len() != n - i) {
            return Err(GelfandError::Shape);
        }
        let p = Self { rows };
        if !p.is_valid() {
            return Err(GelfandError::Betweenness);
        }
        Ok(p)
    }

    /// `n` for an SU(n)/U(n) pattern.
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Row `m` (length `m`), `1 ≤ m ≤ n`.
    pub fn row(&self, m: usize) -> &[i64] {
        &self.rows[self.order() - m]
    }

    /// Entry `h_{l,m}` (1-based).
    pub fn entry(&self, l: usize, m: usize) -> i64 {
        self.row(m)[l - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Betweenness `h_{l,m} ≥ h_{l,m−1} ≥ h_{l+1,m}` plus nonnegative entries.
    pub fn is_valid(&self) -> bool {
        let n = self.order();
        if self.rows.iter().flatten().any(|&h| h < 0) {
            return false;
        }
        for m in 2..=n {
            for l in 1..m {
                if !(self.entry(l, m) >= self.entry(l, m - 1)
                    && self.entry(l, m - 1) >= self.entry(l + 1, m))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Weight vector `w_k = Σ row_k − Σ row_{k−1}`.
    pub fn weight(&self) -> Vec<i64> {
        let n = self.order();
        let mut w = Vec::with_capacity(n);
        let mut prev = 0i64;
        for m in 1..=n {
            let s: i64 = self.row(m).iter().sum();
            w.push(s - prev);
            prev = s;
        }
        w
    }

    /// `L(m,l) = h_{m,l} − h_{m,l−1}`, `R(m,l) = h_{m,l−1} − h_{m+1,l}` for
    /// `2 ≤ l ≤ n`, `1 ≤ m < l`; all values nonnegative on a valid pattern.
    pub fn lr_exponents(&self) -> BTreeMap<(usize, usize), (i64, i64)> {
        let n = self.order();
        let mut out = BTreeMap::new();
        for l in 2..=n {
            for m in 1..l {
                let left = self.entry(m, l) - self.entry(m, l - 1);
                let right = self.entry(m, l - 1) - self.entry(m + 1, l);
                out.insert((m, l), (left, right));
            }
        }
        out
    }

    /// Highest-weight pattern for a top row: `h_{r,s} = h_{r,n}` for all rows.
    pub fn highest_weight(top: &[i64]) -> Result<Self, GelfandError> {
        check_top(top)?;
        let n = top.len();
        let rows = (0..n).map(|i| top[..n - i].to_vec()).collect();
        Self::new(rows)
    }
}

fn check_top(top: &[i64]) -> Result<(), GelfandError> {
    if top.is_empty() || top.windows(2).any(|w| w[0] < w[1]) || top.iter().any(|&h| h < 0) {
        return Err(GelfandError::BadTopRow);
    }
    Ok(())
}

/// All patterns with the given top row, in lexicographic order of the
/// flattened entry list (top row first). The count is the irrep dimension.
pub fn enumerate(top: &[i64]) -> Result<Vec<GelfandPattern>, GelfandError> {
    check_top(top)?;
    let mut out = Vec::new();
    let mut rows = vec![top.to_vec()];
    fill(&mut rows, &mut out);
    Ok(out)
}

fn fill(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GelfandPattern>) {
    let above = rows.last().unwrap().clone();
    if above.len() == 1 {
        out.push(GelfandPattern { rows: rows.clone() });
        return;
    }
    let len = above.len() - 1;
    let mut row = vec![0i64; len];
    fill_row(&above, &mut row, 0, rows, out);
}

fn fill_row(
    above: &[i64],
    row: &mut Vec<i64>,
    idx: usize,
    rows: &mut Vec<Vec<i64>>,
    out: &mut Vec<GelfandPattern>,
) {
    if idx == row.len() {
        rows.push(row.clone());
        fill(rows, out);
        rows.pop();
        return;
    }
    // betweenness: above[idx] ≥ row[idx] ≥ above[idx+1]
    for v in above[idx + 1]..=above[idx] {
        row[idx] = v;
        fill_row(above, row, idx + 1, rows, out);
    }
}

/// Irrep dimension, computed by enumeration (the enumeration order is the
/// ground-truth index order downstream).
pub fn dimension(top: &[i64]) -> Result<usize, GelfandError> {
    Ok(enumerate(top)?.len())
}

impl fmt::Display for GelfandPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl fmt::Debug for GelfandPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GelfandPattern({self})")
    }
}

impl FromStr for GelfandPattern {
    type Err = GelfandError;

    /// Text format: rows separated by `/`, entries by `,`, e.g. `2,1,0/1,1/1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Result<Vec<Vec<i64>>, _> = s
            .split('/')
            .map(|row| {
                row.split(',')
                    .map(|e| e.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect();
        let rows = rows.map_err(|e| GelfandError::Parse(e.to_string()))?;
        Self::new(rows)
    }
}

// ---------------------------------------------------------------------------
// binary fundamental representation
// ---------------------------------------------------------------------------

/// Table of `n` boxes holding 0/1, encoding a fundamental-representation
/// minor; the `2ⁿ − 2` nontrivial tables have at least one 1 and one 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BfrTable {
    bits: Vec<u8>,
}

impl BfrTable {
    pub fn new(bits: Vec<u8>) -> Result<Self, GelfandError> {
        if !bits.iter().any(|&b| b == 1) || !bits.iter().any(|&b| b == 0) {
            return Err(GelfandError::TrivialTable);
        }
        assert!(bits.iter().all(|&b| b <= 1));
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.bits.len()
    }

    /// Bitwise complement; still a valid nontrivial table.
    pub fn complement(&self) -> BfrTable {
        BfrTable { bits: self.bits.iter().map(|&b| 1 - b).collect() }
    }

    /// All `2ⁿ − 2` nontrivial tables, by increasing binary value (the box
    /// string read as a big-endian binary number).
    pub fn all(n: usize) -> Vec<BfrTable> {
        (1..(1u32 << n) - 1)
            .map(|v| BfrTable {
                bits: (0..n).map(|i| ((v >> (n - 1 - i)) & 1) as u8).collect(),
            })
            .collect()
    }
}

/// One factor of a φ-word: the parameter symbols `x(μ,λ)` / `y(μ,λ)` with
/// `1 ≤ μ < λ ≤ n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum PhiFactor {
    X(usize, usize),
    Y(usize, usize),
}

impl PhiFactor {
    pub fn is_valid(&self, n: usize) -> bool {
        let (mu, lambda) = match *self {
            PhiFactor::X(m, l) | PhiFactor::Y(m, l) => (m, l),
        };
        1 <= mu && mu < lambda && lambda <= n
    }
}

impl fmt::Display for PhiFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiFactor::X(m, l) => write!(f, "x({m},{l})"),
            PhiFactor::Y(m, l) => write!(f, "y({m},{l})"),
        }
    }
}

/// Multiset of φ-factors, kept sorted.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PhiWord {
    factors: Vec<PhiFactor>,
}

impl PhiWord {
    pub fn new(mut factors: Vec<PhiFactor>) -> Self {
        factors.sort();
        Self { factors }
    }

    pub fn factors(&self) -> &[PhiFactor] {
        &self.factors
    }

    /// The complement reflection `y(m,ℓ) ↔ x(ℓ−m,ℓ)`.
    pub fn reflect(&self) -> PhiWord {
        PhiWord::new(
            self.factors
                .iter()
                .map(|f| match *f {
                    PhiFactor::X(m, l) => PhiFactor::Y(l - m, l),
                    PhiFactor::Y(m, l) => PhiFactor::X(l - m, l),
                })
                .collect(),
        )
    }
}

impl fmt::Display for PhiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// Decode a BFR table: the positions of ones give the minor
/// `Δ^{12…l}_{i₁…i_l}` (returned as the 1-based column set), the Gel'fand
/// labelling of that fundamental-representation state, and the φ-word read
/// off the table by the coefficient rules:
///
/// * each `1` after the first `0` contributes `y(μ,λ)` with `λ` its box
///   number and `μ` the number of ones before it plus one;
/// * each `0` after the first `1` contributes `x(μ,λ)` with `λ` its box
///   number and `μ` the number of ones before it.
pub fn bfr_maps(t: &BfrTable) -> (Vec<usize>, GelfandPattern, PhiWord) {
    let n = t.order();
    let cols: Vec<usize> = (0..n).filter(|&i| t.bits[i] == 1).map(|i| i + 1).collect();

    // pattern rows: row m starts with (#ones among the first m boxes) ones
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let m = n - i;
            let c = t.bits[..m].iter().filter(|&&b| b == 1).count();
            (0..m).map(|k| if k < c { 1 } else { 0 }).collect()
        })
        .collect();
    let pattern = GelfandPattern::new(rows).expect("BFR patterns satisfy betweenness");

    let first_one = t.bits.iter().position(|&b| b == 1).unwrap();
    let first_zero = t.bits.iter().position(|&b| b == 0).unwrap();
    let mut factors = Vec::new();
    let mut ones_before = 0usize;
    for (i, &b) in t.bits.iter().enumerate() {
        if b == 1 {
            if i > first_zero {
                factors.push(PhiFactor::Y(ones_before + 1, i + 1));
            }
            ones_before += 1;
        } else if i > first_one {
            factors.push(PhiFactor::X(ones_before, i + 1));
        }
    }
    (cols, pattern, PhiWord::new(factors))
}

// ---------------------------------------------------------------------------
// semi-maximal D-matrix formula
// ---------------------------------------------------------------------------

/// Closed minor-product form of the D-matrix element between a semi-maximal
/// state (top two rows `hn`, `hn1`, maximal below) and the highest-weight
/// state:
///
/// `D = (1/√N) · ∏_k m_k^{h_{k,n−1}−h_{k+1,n}} · ∏_k e_k^{h_{k,n}−h_{k,n−1}}`
///
/// where `m_k` is the leading `k×k` minor of `U` and `e_k` the minor on rows
/// `{1..k−1, n}`, columns `{1..k}` (times `det U^{h_{n,n}}` in the U(n)
/// case). The minor orientation is fixed by requiring agreement with the
/// substitution oracle on the fundamental representation, where the lowest
/// pattern reproduces the matrix entry `u_{n1}`.
///
/// `1/√N` is computed exactly, once per `(hn, hn1)`, from the Bargmann-minor
/// realization: the semi-maximal state is the minor product
/// `∏ A_k^{h_{k,n−1}−h_{k+1,n}} B_k^{h_{k,n}−h_{k,n−1}}` with
/// `A_k = Δ^{(1..k)}_{(1..k)}(z)`, `B_k = Δ^{(1..k)}_{(1..k−1,n)}(z)`, and the
/// coefficient follows from exact norms and one exact overlap at a totally
/// positive rational matrix.
pub fn semi_maximal_d(hn: &[i64], hn1: &[i64], u: &CMatrix) -> Result<Complex64, GelfandError> {
    let n = hn.len();
    if hn1.len() + 1 != n {
        return Err(GelfandError::Shape);
    }
    check_top(hn)?;
    for k in 0..n - 1 {
        if !(hn[k] >= hn1[k] && hn1[k] >= hn[k + 1]) {
            return Err(GelfandError::Betweenness);
        }
    }
    if u.nrows() != n || u.ncols() != n {
        return Err(GelfandError::Dimension);
    }

    let mut value = Complex64::new(1.0, 0.0);
    let all: Vec<usize> = (0..n).collect();
    for k in 1..=n - 1 {
        let a_exp = hn1[k - 1] - hn[k];
        if a_exp > 0 {
            let m = u.minor(&all[..k], &all[..k]);
            value *= m.powu(a_exp as u32);
        }
        let b_exp = hn[k - 1] - hn1[k - 1];
        if b_exp > 0 {
            let mut rows: Vec<usize> = all[..k - 1].to_vec();
            rows.push(n - 1);
            let m = u.minor(&rows, &all[..k]);
            value *= m.powu(b_exp as u32);
        }
    }
    if hn[n - 1] > 0 {
        value *= u.det().powu(hn[n - 1] as u32);
    }

    Ok(value * semi_maximal_coeff(hn, hn1).to_f64())
}

/// The exact normalization `N` of the minor-product formula
/// (`D = value/√N`); mainly useful for inspection.
pub fn semi_maximal_norm(hn: &[i64], hn1: &[i64]) -> Rational {
    let c = semi_maximal_coeff(hn, hn1);
    let c2 = c.square();
    debug_assert!(c2.is_rational());
    Rational::from_integer(1.into()) / c2.rational_part()
}

fn semi_maximal_coeff(hn: &[i64], hn1: &[i64]) -> RadicalScalar {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: Mutex<Option<HashMap<(Vec<i64>, Vec<i64>), RadicalScalar>>> = Mutex::new(None);
    let key = (hn.to_vec(), hn1.to_vec());
    {
        let cache = CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(c) = map.get(&key) {
                return c.clone();
            }
        }
    }
    let c = compute_semi_maximal_coeff(hn, hn1);
    let mut cache = CACHE.lock().unwrap();
    cache.get_or_insert_with(HashMap::new).insert(key, c.clone());
    c
}

/// Minor of the symbolic n×n variable matrix with the given row/column sets,
/// as an exact polynomial (Laplace expansion along the first row).
fn symbolic_minor(space: &std::sync::Arc<crate::poly::VariableSpace>, n: usize, rows: &[usize], cols: &[usize]) -> crate::poly::ExactPoly {
    use crate::poly::ExactPoly;
    assert_eq!(rows.len(), cols.len());
    if rows.is_empty() {
        return ExactPoly::one(space);
    }
    let mut acc = ExactPoly::zero(space);
    for (j, &c) in cols.iter().enumerate() {
        let var = ExactPoly::variable(space, rows[0] * n + c);
        let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = symbolic_minor(space, n, &rows[1..], &rest_cols);
        let term = var.mul(&sub);
        if j % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

fn compute_semi_maximal_coeff(hn: &[i64], hn1: &[i64]) -> RadicalScalar {
    use crate::poly::{ExactPoly, VariableSpace};
    let n = hn.len();
    // variables z_{r,c} at index r*n + c, rows transforming as z_r -> z_r·U
    let space = VariableSpace::new((0..n * n).map(|i| format!("z{}_{}", i / n + 1, i % n + 1)));
    let blocks: Vec<Vec<usize>> = (0..n).map(|r| (0..n).map(|c| r * n + c).collect()).collect();
    let all: Vec<usize> = (0..n).collect();

    let leading = |l: usize| symbolic_minor(&space, n, &all[..l], &all[..l]);
    let edge = |l: usize| {
        let mut cols: Vec<usize> = all[..l - 1].to_vec();
        cols.push(n - 1);
        // rows (1..l), columns (1..l−1, n) on the variable matrix
        symbolic_minor(&space, n, &all[..l], &cols)
    };

    let mut p_max = ExactPoly::one(&space);
    for l in 1..=n {
        let w = if l == n { hn[n - 1] } else { hn[l - 1] - hn[l] };
        let a = leading(l);
        for _ in 0..w {
            p_max = p_max.mul(&a);
        }
    }
    let mut p_semi = ExactPoly::one(&space);
    for l in 1..n {
        let a_exp = hn1[l - 1] - hn[l];
        let b_exp = hn[l - 1] - hn1[l - 1];
        let a = leading(l);
        for _ in 0..a_exp {
            p_semi = p_semi.mul(&a);
        }
        let b = edge(l);
        for _ in 0..b_exp {
            p_semi = p_semi.mul(&b);
        }
    }
    if hn[n - 1] > 0 {
        let d = leading(n);
        for _ in 0..hn[n - 1] {
            p_semi = p_semi.mul(&d);
        }
    }

    // exact overlap at a totally positive rational matrix (every minor > 0)
    let m: Vec<Vec<RadicalScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| RadicalScalar::from_integer(((i + 1) as i64).pow(j as u32)))
                .collect()
        })
        .collect();
    let p_max_m = p_max.substitute_linear(&m, &blocks).expect("square substitution");
    let overlap = p_semi.bargmann_inner(&p_max_m).expect("same space");

    // the same minor monomial evaluated at the rational matrix
    let mc = CMatrix::from_fn(n, n, |i, j| {
        Complex64::new(((i + 1) as f64).powi(j as i32), 0.0)
    });
    let mut minor_value = Rational::from_integer(1.into());
    let exact_minor = |rows: &[usize], cols: &[usize]| -> Rational {
        // integer matrix: determinant is integral; evaluate exactly via the
        // symbolic minor at unit monomials
        let _ = &mc;
        let mut acc = Rational::from_integer(0.into());
        let sub = symbolic_minor(&VariableSpace::new((0..n * n).map(|i| format!("m{i}"))), n, rows, cols);
        for (mono, coeff) in sub.terms() {
            let mut v = Rational::from_integer(1.into());
            for (idx, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    let (i, j) = (idx / n, idx % n);
                    let base = Rational::from_integer((((i + 1) as i64).pow(j as u32)).into());
                    for _ in 0..e {
                        v *= base.clone();
                    }
                }
            }
            debug_assert!(coeff.is_rational());
            acc += v * coeff.rational_part();
        }
        acc
    };
    for l in 1..n {
        let a_exp = hn1[l - 1] - hn[l];
        for _ in 0..a_exp {
            minor_value *= exact_minor(&all[..l], &all[..l]);
        }
        let b_exp = hn[l - 1] - hn1[l - 1];
        if b_exp > 0 {
            let mut rows: Vec<usize> = all[..l - 1].to_vec();
            rows.push(n - 1);
            let v = exact_minor(&rows, &all[..l]);
            for _ in 0..b_exp {
                minor_value *= v.clone();
            }
        }
    }
    if hn[n - 1] > 0 {
        let v = exact_minor(&all, &all);
        for _ in 0..hn[n - 1] {
            minor_value *= v.clone();
        }
    }

    let norm_semi = RadicalScalar::sqrt_rational(&{
        let ns = p_semi.norm_sqr();
        debug_assert!(ns.is_rational());
        ns.rational_part()
    })
    .expect("norm is nonnegative");
    let norm_max = RadicalScalar::sqrt_rational(&{
        let nm = p_max.norm_sqr();
        debug_assert!(nm.is_rational());
        nm.rational_part()
    })
    .expect("norm is nonnegative");

    // D(M) = overlap/(‖semi‖·‖max‖) = coeff · minor_value
    let denom = &(&norm_semi * &norm_max) * &RadicalScalar::from_rational(minor_value);
    overlap.div_single(&denom).expect("single-term denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn pat(s: &str) -> GelfandPattern {
        s.parse().unwrap()
    }

    /// Weyl dimension formula, used only as a test oracle.
    fn weyl_dim(top: &[i64]) -> usize {
        match top.len() {
            2 => (top[0] - top[1] + 1) as usize,
            3 => {
                let (a, b, c) = (top[0], top[1], top[2]);
                let (l, m) = (a - b, b - c);
                ((l + 1) * (m + 1) * (l + m + 2) / 2) as usize
            }
            _ => panic!("oracle covers SU(2) and SU(3)"),
        }
    }

    #[test]
    fn validate_examples() {
        assert!(pat("1,1,0/1,1/1").is_valid());
        assert!(GelfandPattern::new(vec![vec![1, 0], vec![2]]).is_err());
        let hw = GelfandPattern::highest_weight(&[3, 1, 0]).unwrap();
        assert!(hw.is_valid());
        assert_eq!(hw.to_string(), "3,1,0/3,1/3");
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate(&[1, 0, 0]).unwrap().len(), 3);
        assert_eq!(enumerate(&[1, 1, 0]).unwrap().len(), 3);
        assert_eq!(enumerate(&[2, 1, 0]).unwrap().len(), 8);
    }

    #[test]
    fn enumerate_matches_weyl_dimension() {
        for a in 0..=4i64 {
            for b in 0..=a {
                assert_eq!(enumerate(&[a, b]).unwrap().len(), weyl_dim(&[a, b]));
                for c in 0..=b {
                    assert_eq!(
                        enumerate(&[a, b, c]).unwrap().len(),
                        weyl_dim(&[a, b, c]),
                        "top {:?}",
                        [a, b, c]
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_unique() {
        let pats = enumerate(&[2, 1, 0]).unwrap();
        let keys: Vec<Vec<i64>> = pats
            .iter()
            .map(|p| p.rows().iter().flatten().copied().collect())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn lr_exponent_examples() {
        let hw = GelfandPattern::highest_weight(&[2, 1, 0]).unwrap();
        for ((m, l), (left, _)) in hw.lr_exponents() {
            assert!(m < l);
            assert_eq!(left, 0, "highest weight has all L = 0");
        }
        assert_eq!(pat("1,0/1").lr_exponents()[&(1, 2)], (0, 1));
        assert_eq!(pat("1,0/0").lr_exponents()[&(1, 2)], (1, 0));
    }

    #[test]
    fn bfr_tables_two_and_three_boxes() {
        // SU(2), Table (2)
        let (cols, p, phi) = bfr_maps(&BfrTable::new(vec![0, 1]).unwrap());
        assert_eq!(cols, vec![2]);
        assert_eq!(p, pat("1,0/0"));
        assert_eq!(phi, PhiWord::new(vec![PhiFactor::Y(1, 2)]));
        let (cols, p, phi) = bfr_maps(&BfrTable::new(vec![1, 0]).unwrap());
        assert_eq!(cols, vec![1]);
        assert_eq!(p, pat("1,0/1"));
        assert_eq!(phi, PhiWord::new(vec![PhiFactor::X(1, 2)]));

        // SU(3), Table (3): the legible columns
        let (cols, p, phi) = bfr_maps(&BfrTable::new(vec![1, 1, 0]).unwrap());
        assert_eq!(cols, vec![1, 2]);
        assert_eq!(p, pat("1,1,0/1,1/1"));
        assert_eq!(phi, PhiWord::new(vec![PhiFactor::X(2, 3)]));

        let (cols, p, phi) = bfr_maps(&BfrTable::new(vec![1, 0, 1]).unwrap());
        assert_eq!(cols, vec![1, 3]);
        assert_eq!(p, pat("1,1,0/1,0/1"));
        assert_eq!(
            phi,
            PhiWord::new(vec![PhiFactor::Y(2, 3), PhiFactor::X(1, 2)])
        );

        let (_, p, phi) = bfr_maps(&BfrTable::new(vec![0, 0, 1]).unwrap());
        assert_eq!(p, pat("1,0,0/0,0/0"));
        assert_eq!(phi, PhiWord::new(vec![PhiFactor::Y(1, 3)]));
    }

    #[test]
    fn complement_involution_and_reflection() {
        assert_eq!(
            BfrTable::new(vec![1, 0]).unwrap().complement(),
            BfrTable::new(vec![0, 1]).unwrap()
        );
        assert_eq!(
            BfrTable::new(vec![1, 1, 0]).unwrap().complement(),
            BfrTable::new(vec![0, 0, 1]).unwrap()
        );
        for n in [2usize, 3, 4] {
            let all = BfrTable::all(n);
            assert_eq!(all.len(), (1 << n) - 2);
            for t in &all {
                assert_eq!(t.complement().complement(), *t);
                let (_, pattern, phi) = bfr_maps(t);
                assert!(pattern.is_valid());
                assert!(phi.factors().iter().all(|f| f.is_valid(n)));
                // φ of the complement is the reflection of φ
                let (_, _, phi_c) = bfr_maps(&t.complement());
                assert_eq!(phi_c, phi.reflect(), "table {:?}", t.bits());
            }
        }
    }

    #[test]
    fn semi_maximal_identity_matrix() {
        // U = I and h_{k,n−1} = h_{k,n}: every edge exponent vanishes and the
        // leading minors are 1; N telescopes to 1.
        let u = CMatrix::identity(3);
        let d = semi_maximal_d(&[2, 1, 0], &[2, 1], &u).unwrap();
        assert!((d - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn semi_maximal_fundamental_entries() {
        let mut u = CMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                u[(i, j)] = Complex64::new(0.1 + (i as f64) * 0.3 + (j as f64) * 0.05, 0.02 * (i as f64 - j as f64));
            }
        }
        // SU(3) fundamental, semi-maximal states: [1,0,0], next row [1,0] -> u11
        let d = semi_maximal_d(&[1, 0, 0], &[1, 0], &u).unwrap();
        assert!((d - u[(0, 0)]).norm() < 1e-14);
        // next row [0,0] -> the n-th-row edge minor, u_{31}
        let d = semi_maximal_d(&[1, 0, 0], &[0, 0], &u).unwrap();
        assert!((d - u[(2, 0)]).norm() < 1e-14);
    }

    #[test]
    fn semi_maximal_rejects_non_between() {
        let u = CMatrix::identity(3);
        assert_eq!(
            semi_maximal_d(&[1, 0, 0], &[2, 0], &u),
            Err(GelfandError::Betweenness)
        );
    }

    #[test]
    fn pattern_text_roundtrip() {
        let p = pat("2,1,0/1,1/1");
        assert_eq!(p.to_string(), "2,1,0/1,1/1");
        assert!("2,1/1,1/1".parse::<GelfandPattern>().is_err());
        assert!("1,0/2".parse::<GelfandPattern>().is_err());
    }
}
