//! Exact arithmetic substrate: arbitrary-precision rationals extended by
//! square roots of squarefree integers, plus factorial/binomial utilities.
//!
//! A [`RadicalScalar`] is a finite sum `Σ q_d · √d` with rational `q_d` and
//! squarefree positive integer radicands `d` (`d = 1` is the rational part).
//! This is closed under addition and multiplication and is exactly the
//! coefficient domain needed by the normalization constants that show up in
//! boson-calculus formulas (`√(n!)` factors and friends).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational. `num_rational` keeps the invariants we need:
/// reduced form, positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("square root of a negative rational")]
    NegativeSqrt,
    #[error("division is only defined by nonzero single-term radicals")]
    BadDivisor,
}

// ---------------------------------------------------------------------------
// factorials
// ---------------------------------------------------------------------------

/// Default memoization cap for [`factorial`]. Larger arguments are still
/// exact, they are just recomputed instead of cached.
pub const FACTORIAL_MEMO_CAP: usize = 200;

static FACTORIALS: Mutex<Vec<BigUint>> = Mutex::new(Vec::new());

/// Exact `n!`.
pub fn factorial(n: u64) -> BigUint {
    if n as usize > FACTORIAL_MEMO_CAP {
        let mut acc = factorial(FACTORIAL_MEMO_CAP as u64);
        for k in (FACTORIAL_MEMO_CAP as u64 + 1)..=n {
            acc *= k;
        }
        return acc;
    }
    let mut memo = FACTORIALS.lock().unwrap();
    if memo.is_empty() {
        memo.push(BigUint::one());
    }
    while memo.len() <= n as usize {
        let next = memo.last().unwrap() * (memo.len() as u64);
        memo.push(next);
    }
    memo[n as usize].clone()
}

/// Exact `n!` as a [`Rational`].
pub fn factorial_rat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(factorial(n)))
}

/// Exact binomial coefficient `n choose k` (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

// ---------------------------------------------------------------------------
// squarefree decomposition
// ---------------------------------------------------------------------------

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const LIMIT: usize = 10_000;
        let mut sieve = vec![true; LIMIT + 1];
        let mut primes = Vec::new();
        for p in 2..=LIMIT {
            if sieve[p] {
                primes.push(p as u64);
                let mut q = p * p;
                while q <= LIMIT {
                    sieve[q] = false;
                    q += p;
                }
            }
        }
        primes
    })
}

/// Write `n = s² · f` with `f` squarefree; returns `(s, f)`.
///
/// Trial division by primes below 10⁴ followed by a perfect-square check on
/// the cofactor. All radicands arising from factorial ratios have only small
/// prime factors, so this is exact in this crate's domain; a residual
/// cofactor that is neither 1 nor a perfect square is treated as squarefree.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    let mut s = BigUint::one();
    let mut f = BigUint::one();
    let mut rem = n.clone();
    if rem.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rem {
            break;
        }
        let mut e = 0u64;
        loop {
            let (q, r) = rem.div_rem(&pb);
            if r.is_zero() {
                rem = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            s *= pb.pow((e / 2) as u32);
            if e % 2 == 1 {
                f *= p;
            }
        }
    }
    if !rem.is_one() {
        let r = rem.sqrt();
        if &r * &r == rem {
            s *= r;
        } else {
            f *= rem;
        }
    }
    (s, f)
}

// ---------------------------------------------------------------------------
// RadicalScalar
// ---------------------------------------------------------------------------

/// Exact number of the form `Σ q_d · √d`, keyed by squarefree radicand.
///
/// The empty map is 0; no stored coefficient is zero. Values are immutable
/// in spirit: every operation builds a new value.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<BigUint, Rational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q);
        }
        Self { terms }
    }

    /// `p/q` as a radical scalar; `q` must be nonzero.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Exact `√q` for `q ≥ 0`, normalized to `coefficient · √(squarefree)`.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, ExactError> {
        if q.is_negative() {
            return Err(ExactError::NegativeSqrt);
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(n/d) = √(n·d)/d
        let n = q.numer().to_biguint().expect("non-negative numerator");
        let d = q.denom().to_biguint().expect("positive denominator");
        let (s, f) = squarefree_decompose(&(&n * &d));
        let coeff = Rational::new(BigInt::from(s), BigInt::from(d));
        let mut terms = BTreeMap::new();
        terms.insert(f, coeff);
        Ok(Self { terms }.normalized())
    }

    /// Exact `√(n!)`.
    pub fn sqrt_factorial(n: u64) -> Self {
        Self::sqrt_rational(&factorial_rat(n)).expect("factorial is nonnegative")
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, q| !q.is_zero());
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the value is a plain rational (at most a `d = 1` term).
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|d| d.is_one())
    }

    /// The rational part (coefficient of `√1`).
    pub fn rational_part(&self) -> Rational {
        self.terms
            .get(&BigUint::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Borrow the `(radicand, coefficient)` terms in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Double-precision projection, the only bridge to the numeric modules.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    /// Exact division by a nonzero single-term value `r·√d`.
    pub fn div_single(&self, divisor: &Self) -> Result<Self, ExactError> {
        if divisor.terms.len() != 1 {
            return Err(ExactError::BadDivisor);
        }
        let (d, r) = divisor.terms.iter().next().unwrap();
        // 1/(r·√d) = √d / (r·d)
        let inv_coeff = Rational::new(BigInt::one(), BigInt::from(d.clone())) / r;
        let mut inv_terms = BTreeMap::new();
        inv_terms.insert(d.clone(), inv_coeff);
        Ok(self * &Self { terms: inv_terms })
    }

    /// Exact sign for values whose sign is decidable trivially (zero or all
    /// terms of one sign); falls back to the float projection otherwise.
    pub fn signum(&self) -> i32 {
        if self.terms.is_empty() {
            return 0;
        }
        if self.terms.values().all(|q| q.is_positive()) {
            return 1;
        }
        if self.terms.values().all(|q| q.is_negative()) {
            return -1;
        }
        let v = self.to_f64();
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// The square, always a plain rational for single-term values.
    pub fn square(&self) -> Self {
        self * self
    }
}

impl From<i64> for RadicalScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for RadicalScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut terms = self.terms.clone();
        for (d, q) in &rhs.terms {
            *terms.entry(d.clone()).or_insert_with(Rational::zero) += q;
        }
        RadicalScalar { terms }.normalized()
    }
}

impl Sub for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        self + &(-rhs)
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(d, q)| (d.clone(), -q)).collect(),
        }
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut terms: BTreeMap<BigUint, Rational> = BTreeMap::new();
        for (d1, q1) in &self.terms {
            for (d2, q2) in &rhs.terms {
                // √d1·√d2 = s·√f with d1·d2 = s²·f
                let (s, f) = squarefree_decompose(&(d1 * d2));
                let coeff = q1 * q2 * Rational::from_integer(BigInt::from(s));
                *terms.entry(f).or_insert_with(Rational::zero) += coeff;
            }
        }
        RadicalScalar { terms }.normalized()
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for RadicalScalar {
            type Output = RadicalScalar;
            fn $method(self, rhs: RadicalScalar) -> RadicalScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RadicalScalar> for RadicalScalar {
            type Output = RadicalScalar;
            fn $method(self, rhs: &RadicalScalar) -> RadicalScalar {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -&self
    }
}

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RadicalScalar> for RadicalScalar {
    fn sub_assign(&mut self, rhs: &RadicalScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RadicalScalar> for RadicalScalar {
    fn mul_assign(&mut self, rhs: &RadicalScalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if d.is_one() {
                write!(f, "{q}")?;
            } else if q.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{q}*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt_int(n: u64) -> RadicalScalar {
        RadicalScalar::sqrt_rational(&Rational::from_integer(BigInt::from(n))).unwrap()
    }

    #[test]
    fn factorial_small_and_frozen() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        // frozen from the iterative-product oracle below
        let mut acc = BigUint::one();
        for k in 1..=20u64 {
            acc *= k;
        }
        assert_eq!(factorial(20), acc);
        assert_eq!(factorial(20).to_string(), "2432902008176640000");
    }

    #[test]
    fn factorial_beyond_memo_cap() {
        let n = (FACTORIAL_MEMO_CAP + 3) as u64;
        assert_eq!(factorial(n), factorial(n - 1) * n);
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn additive_identity_and_inverse() {
        let r2 = sqrt_int(2);
        assert_eq!(&r2 + &RadicalScalar::zero(), r2);
        assert!((&r2 + &(-&r2)).is_zero());
        let half_r2 = &RadicalScalar::ratio(1, 2) * &r2;
        assert_eq!(&half_r2 + &half_r2, r2);
    }

    #[test]
    fn square_extraction() {
        let r2 = sqrt_int(2);
        assert_eq!(&r2 * &r2, RadicalScalar::from_integer(2));
        // √8 = 2√2
        assert_eq!(sqrt_int(8), &RadicalScalar::from_integer(2) * &r2);
        // √(1/2) = (1/2)√2, and (1/2)√2 · √2 = 1
        let inv = RadicalScalar::sqrt_rational(&Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(inv, &RadicalScalar::ratio(1, 2) * &r2);
        assert_eq!(&inv * &r2, RadicalScalar::one());
    }

    #[test]
    fn sqrt_rational_examples() {
        let q = RadicalScalar::sqrt_rational(&Rational::new(9.into(), 4.into())).unwrap();
        assert_eq!(q, RadicalScalar::ratio(3, 2));
        assert!(RadicalScalar::sqrt_rational(&Rational::zero()).unwrap().is_zero());
        assert_eq!(
            RadicalScalar::sqrt_rational(&Rational::new((-1).into(), 2.into())),
            Err(ExactError::NegativeSqrt)
        );
    }

    #[test]
    fn division_by_single_term() {
        let x = &sqrt_int(3) + &RadicalScalar::ratio(7, 5);
        let d = &RadicalScalar::ratio(-2, 3) * &sqrt_int(6);
        let q = x.div_single(&d).unwrap();
        assert_eq!(&q * &d, x);
        let multi = &sqrt_int(2) + &sqrt_int(3);
        assert_eq!(x.div_single(&multi), Err(ExactError::BadDivisor));
    }

    #[test]
    fn float_projection() {
        let x = &(&RadicalScalar::ratio(3, 4) * &sqrt_int(5)) + &RadicalScalar::ratio(-1, 3);
        let expect = 0.75 * 5f64.sqrt() - 1.0 / 3.0;
        assert!((x.to_f64() - expect).abs() <= 1e-13 * expect.abs());
    }

    fn arb_radical() -> impl Strategy<Value = RadicalScalar> {
        // small rationals over radicands {1,2,3,5,6,10}
        let term = (prop::sample::select(vec![1u64, 2, 3, 5, 6, 10]), -6i64..=6, 1i64..=4)
            .prop_map(|(d, p, q)| {
                let c = RadicalScalar::ratio(p, q);
                let r = RadicalScalar::sqrt_rational(&Rational::from_integer(d.into())).unwrap();
                &c * &r
            });
        prop::collection::vec(term, 0..4).prop_map(|ts| {
            ts.into_iter()
                .fold(RadicalScalar::zero(), |acc, t| &acc + &t)
        })
    }

    proptest! {
        #[test]
        fn mul_distributes_over_add(a in arb_radical(), b in arb_radical(), c in arb_radical()) {
            let lhs = &a * &(&b + &c);
            let rhs = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sqrt_squares_back(d in prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 13, 14, 15])) {
            let r = RadicalScalar::sqrt_rational(&Rational::from_integer(d.into())).unwrap();
            prop_assert_eq!(&r * &r, RadicalScalar::from_integer(d as i64));
        }

        #[test]
        fn float_matches_terms(a in arb_radical()) {
            let direct: f64 = a
                .terms()
                .map(|(d, q)| q.to_f64().unwrap() * (d.to_f64().unwrap()).sqrt())
                .sum();
            let v = a.to_f64();
            prop_assert!((v - direct).abs() <= 1e-13 * direct.abs().max(1.0));
        }
    }
}
