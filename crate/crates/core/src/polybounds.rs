//! Exact integer polynomials and the coefficient bounds on `e2` and `t2`
//! for semigroups with `F < 2m` and `2m < F < 3m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::semigroup::{InvariantRecord, SemigroupSet};

/// Dense polynomial with arbitrary-precision integer coefficients,
/// `coeffs[i]` multiplying `x^i`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = ExactPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        ExactPolynomial { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        ExactPolynomial { coeffs }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                a + rhs.coeffs.get(i).cloned().unwrap_or_default()
            })
            .collect();
        ExactPolynomial::new(coeffs)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        ExactPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ExactPolynomial::new(coeffs)
    }
}

/// `[x^d] p`; zero outside `[0, deg p]`.
pub fn coefficient(p: &ExactPolynomial, d: i64) -> BigInt {
    if d < 0 {
        return BigInt::zero();
    }
    p.coeffs.get(d as usize).cloned().unwrap_or_default()
}

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `F_1 = F_2 = 1`; `F_0 = 0`.
pub fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

#[derive(Clone, Debug)]
pub struct FibonacciTable {
    /// `values[n] = F_n`, starting at `F_0 = 0`.
    values: Vec<BigInt>,
}

impl FibonacciTable {
    /// Table of `F_0..=F_n`.
    pub fn new(n: u32) -> Self {
        let mut values = vec![BigInt::zero(), BigInt::one()];
        while values.len() <= n as usize {
            let k = values.len();
            let next = &values[k - 1] + &values[k - 2];
            values.push(next);
        }
        values.truncate(n as usize + 1);
        FibonacciTable { values }
    }

    pub fn get(&self, n: u32) -> &BigInt {
        &self.values[n as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn one_plus_x() -> ExactPolynomial {
    ExactPolynomial::from_i64(&[1, 1])
}

/// `(1+x)^n - x^h (x+2)^h (1+x)^(n-2h)` with `h = floor(n/2)`.
pub fn e2_polynomial(n: u32) -> ExactPolynomial {
    let h = n / 2;
    let sub = &ExactPolynomial::monomial(h as usize)
        * &(&ExactPolynomial::from_i64(&[2, 1]).pow(h) * &one_plus_x().pow(n - 2 * h));
    &one_plus_x().pow(n) - &sub
}

/// `(1+x)^n - (1+x+x^2)^floor(n/2) (1+x)^(n mod 2)`. It has no constant
/// term, and dividing by `x` gives the generating polynomial of the `t2` bounds.
pub fn t2_polynomial(n: u32) -> ExactPolynomial {
    let sub = &ExactPolynomial::from_i64(&[1, 1, 1]).pow(n / 2) * &one_plus_x().pow(n % 2);
    &one_plus_x().pow(n) - &sub
}

/// `[x^d] (p / x)` for a polynomial `p` with zero constant term.
fn coefficient_over_x(p: &ExactPolynomial, d: i64) -> BigInt {
    coefficient(p, d + 1)
}

/// `2 [x^(g-m)] e2_polynomial(m)`: bounds the sum of `e2` over `ℬ(g, m)`.
pub fn e2_bound_value(g: i64, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    2 * coefficient(&e2_polynomial(m as u32), g - m)
}

/// `2 [x^(g-m)] e2_polynomial(m+k+1)`: bounds the sum of `e2` over `𝒞(m, k, g)`.
pub fn e2_bound_value_c(g: i64, m: i64, k: i64) -> BigInt {
    if m + k + 1 < 0 {
        return BigInt::zero();
    }
    2 * coefficient(&e2_polynomial((m + k + 1) as u32), g - m)
}

/// `[x^(2m-g-3)] (t2_polynomial(m) / x)`: equals the sum over `ℬ(g, m)` of
/// `#(PF ∩ [ceil(m/2), m-1])`.
pub fn t2_big_value(g: i64, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    coefficient_over_x(&t2_polynomial(m as u32), 2 * m - g - 3)
}

/// `[x^(2m-g-4)] (t2_polynomial(m-1) / x)`: bounds the sum over `ℬ(g, m)`
/// of `#(PF ∩ [1, floor((m-1)/2)])`.
pub fn t2_small_bound(g: i64, m: i64) -> BigInt {
    if m < 1 {
        return BigInt::zero();
    }
    coefficient_over_x(&t2_polynomial((m - 1) as u32), 2 * m - g - 4)
}

/// Bounds over `𝒞(m, k, g)` on the sums of `#(PF ∩ [ceil((m+k)/2), m+k-1])`
/// and of `#(PF ∩ [1, floor((m+k-1)/2)])`.
pub fn t2_bounds_c(g: i64, m: i64, k: i64) -> (BigInt, BigInt) {
    let n = m + k;
    if n < 1 {
        return (BigInt::zero(), BigInt::zero());
    }
    (
        coefficient_over_x(&t2_polynomial(n as u32), 2 * m - g + k - 2),
        coefficient_over_x(&t2_polynomial((n - 1) as u32), 2 * m - g + k - 3),
    )
}

fn alt(l: i64) -> BigInt {
    if l.is_even() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// The inclusion-exclusion form of [`e2_bound_value`] (`n = m`) and
/// [`e2_bound_value_c`] (`n = m + k + 1`):
/// `2 sum_{j=0}^{floor(n/2)-1} sum_{l=0}^{j} (-1)^l C(j,l) C(n-2-2l, g-m)`.
pub fn e2_inclusion_exclusion(g: i64, m: i64, n: i64) -> BigInt {
    let mut total = BigInt::zero();
    for j in 0..n / 2 {
        for l in 0..=j {
            total += alt(l) * binomial(j, l) * binomial(n - 2 - 2 * l, g - m);
        }
    }
    2 * total
}

/// Inclusion-exclusion form of the `t2` coefficient bounds. Here `n = m + k`
/// and `d = |B|`, that is `2m - g - 2` for `ℬ` (`k = 0`) and `2m - g + k - 1`
/// for `𝒞`. Returns `(big, small)`.
pub fn t2_inclusion_exclusion(n: i64, d: i64) -> (BigInt, BigInt) {
    let mut big = BigInt::zero();
    for j in (n + 1) / 2..n {
        for l in 0..=n - 1 - j {
            big += alt(l) * binomial(n - 1 - j, l) * binomial(n - 2 - 2 * l, d - 1 - l);
        }
    }
    let mut small = BigInt::zero();
    for j in 1..=(n - 1) / 2 {
        for l in 0..j {
            small += alt(l) * binomial(j - 1, l) * binomial(n - 3 - 2 * l, d - 2 - l);
        }
    }
    (big, small)
}

/// Checks `sum_{j=0}^{h-1} (1+x)^(n-2) (x(x+2))^j / (1+x)^(2j) = e2_polynomial(n)`,
/// `h = floor(n/2)`, after multiplying both sides by `(1+x)^(2h-2)`.
pub fn e2_identity_holds(n: u32) -> bool {
    if n < 2 {
        return true;
    }
    let h = n / 2;
    let xx2 = ExactPolynomial::from_i64(&[0, 2, 1]);
    let mut lhs = ExactPolynomial::zero();
    for j in 0..h {
        let term = &one_plus_x().pow(n - 2 + 2 * (h - 1) - 2 * j) * &xx2.pow(j);
        lhs = &lhs + &term;
    }
    lhs == &e2_polynomial(n) * &one_plus_x().pow(2 * h - 2)
}

/// Checks `x sum_{s=0}^{h-1} (1+x)^(n-2) ((1+x+x^2)/(1+x)^2)^s = t2_polynomial(n)`,
/// `h = floor(n/2)`, after multiplying both sides by `(1+x)^(2h-2)`.
pub fn t2_identity_holds(n: u32) -> bool {
    let h = n / 2;
    if h == 0 {
        return t2_polynomial(n).is_zero();
    }
    let q = ExactPolynomial::from_i64(&[1, 1, 1]);
    let mut lhs = ExactPolynomial::zero();
    for s in 0..h {
        let term = &one_plus_x().pow(n - 2 + 2 * (h - 1) - 2 * s) * &q.pow(s);
        lhs = &lhs + &term;
    }
    lhs.shift(1) == &t2_polynomial(n) * &one_plus_x().pow(2 * h - 2)
}

/// Sums over one genus, keyed by `(m, k)` with `k = 0` for `F < 2m` and
/// `k = F - 2m` for `2m < F < 3m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DepthSums {
    pub genus: u32,
    pub cells: BTreeMap<(u32, u32), DepthCell>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DepthCell {
    pub count: u64,
    pub e2: u64,
    pub t2: u64,
    /// `#(PF ∩ [ceil(n/2), n-1])` with `n = m + k`.
    pub pf_high: u64,
    /// `#(PF ∩ [1, floor((n-1)/2)])`.
    pub pf_low: u64,
}

impl DepthSums {
    pub fn new(genus: u32) -> Self {
        DepthSums {
            genus,
            cells: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, s: &SemigroupSet, r: &InvariantRecord) {
        let m = r.multiplicity as i64;
        let f = r.frobenius as i64;
        let k = if f < 2 * m {
            0
        } else if f < 3 * m {
            f - 2 * m
        } else {
            return;
        };
        let n = (m + k) as u32;
        let cell = self.cells.entry((m as u32, k as u32)).or_default();
        cell.count += 1;
        cell.e2 += r.e2 as u64;
        cell.t2 += r.t2 as u64;
        for p in s.pseudo_frobenius() {
            if p >= n.div_ceil(2) && p < n {
                cell.pf_high += 1;
            } else if p >= 1 && p <= (n.saturating_sub(1)) / 2 {
                cell.pf_low += 1;
            }
        }
    }

    /// Totals over all multiplicities for a fixed `k`.
    pub fn total(&self, k: u32) -> DepthCell {
        let mut t = DepthCell::default();
        for (_, c) in self.cells.iter().filter(|((_, kk), _)| *kk == k) {
            t.count += c.count;
            t.e2 += c.e2;
            t.t2 += c.t2;
            t.pf_high += c.pf_high;
            t.pf_low += c.pf_low;
        }
        t
    }

    pub fn cell(&self, m: u32, k: u32) -> DepthCell {
        self.cells.get(&(m, k)).cloned().unwrap_or_default()
    }
}

/// Failure of a bound check, with the offending `(g, m, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub genus: u32,
    pub multiplicity: Option<u32>,
    pub k: u32,
    pub what: String,
}

impl fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}", self.genus)?;
        if let Some(m) = self.multiplicity {
            write!(f, " m={m}")?;
        }
        write!(f, " k={}: {}", self.k, self.what)
    }
}

fn violation(g: u32, m: Option<u32>, k: u32, what: String) -> BoundViolation {
    BoundViolation {
        genus: g,
        multiplicity: m,
        k,
        what,
    }
}

/// `sum over ℬ(g,m) of #(PF ∩ [ceil(m/2), m-1]) = t2_big_value(g, m)` for every `m`.
pub fn check_t2_equality(sums: &DepthSums) -> Result<(), BoundViolation> {
    let g = sums.genus;
    for m in 1..=g + 1 {
        let lhs = BigInt::from(sums.cell(m, 0).pf_high);
        let rhs = t2_big_value(g as i64, m as i64);
        if lhs != rhs {
            return Err(violation(g, Some(m), 0, format!("PF count {lhs} != coefficient {rhs}")));
        }
    }
    Ok(())
}

/// Per-multiplicity coefficient bounds and Fibonacci bounds on `e2`, for
/// `ℬ(g)` and `𝒞(k, g)` with `1 <= k <= k_max`.
pub fn check_e2_bounds(sums: &DepthSums, k_max: u32) -> Result<(), BoundViolation> {
    let g = sums.genus;
    let fib = FibonacciTable::new(g + k_max + 4);
    for m in 1..=g + 1 {
        let lhs = BigInt::from(sums.cell(m, 0).e2);
        let rhs = e2_bound_value(g as i64, m as i64);
        if lhs > rhs {
            return Err(violation(g, Some(m), 0, format!("sum e2 = {lhs} > {rhs}")));
        }
    }
    let total = BigInt::from(sums.total(0).e2);
    if total > 2 * fib.get(g + 1) {
        return Err(violation(g, None, 0, format!("sum e2 = {total} > 2F_{}", g + 1)));
    }
    for k in 1..=k_max {
        for m in k + 1..=g + 1 {
            let lhs = BigInt::from(sums.cell(m, k).e2);
            let rhs = e2_bound_value_c(g as i64, m as i64, k as i64);
            if lhs > rhs {
                return Err(violation(g, Some(m), k, format!("sum e2 = {lhs} > {rhs}")));
            }
        }
        let total = BigInt::from(sums.total(k).e2);
        if total > 2 * fib.get(g + k) {
            return Err(violation(g, None, k, format!("sum e2 = {total} > 2F_{}", g + k)));
        }
    }
    Ok(())
}

/// Per-multiplicity coefficient bounds and Fibonacci bounds on `t2`.
pub fn check_t2_bounds(sums: &DepthSums, k_max: u32) -> Result<(), BoundViolation> {
    let g = sums.genus;
    let fib = FibonacciTable::new(g + k_max + 4);
    for m in 1..=g + 1 {
        let c = sums.cell(m, 0);
        let lhs = BigInt::from(c.pf_low);
        let rhs = t2_small_bound(g as i64, m as i64);
        if lhs > rhs {
            return Err(violation(g, Some(m), 0, format!("low PF count {lhs} > {rhs}")));
        }
        if c.t2 > c.pf_high + c.pf_low {
            return Err(violation(g, Some(m), 0, "t2 exceeds PF ∩ [1, m-1]".into()));
        }
    }
    let total = BigInt::from(sums.total(0).t2);
    if total > *fib.get(g + 4) {
        return Err(violation(g, None, 0, format!("sum t2 = {total} > F_{}", g + 4)));
    }
    for k in 1..=k_max {
        for m in k + 1..=g + 1 {
            let c = sums.cell(m, k);
            let (big, small) = t2_bounds_c(g as i64, m as i64, k as i64);
            if BigInt::from(c.pf_high) > big {
                return Err(violation(g, Some(m), k, format!("high PF count {} > {big}", c.pf_high)));
            }
            if BigInt::from(c.pf_low) > small {
                return Err(violation(g, Some(m), k, format!("low PF count {} > {small}", c.pf_low)));
            }
        }
        let total = BigInt::from(sums.total(k).t2);
        if total > *fib.get(g + k + 3) {
            return Err(violation(g, None, k, format!("sum t2 = {total} > F_{}", g + k + 3)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::visit_genus;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn sums(g: u32) -> DepthSums {
        let mut d = DepthSums::new(g);
        visit_genus(g, |s, r| d.add(s, r)).unwrap();
        d
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(10, 5), big(252));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(1), big(1));
        assert_eq!(fibonacci(2), big(1));
        assert_eq!(fibonacci(10), big(55));
        let t = FibonacciTable::new(60);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for n in 1..=60u32 {
            assert_eq!(*t.get(n), fibonacci(n));
            let f: f64 = t.get(n).to_string().parse().unwrap();
            assert!(f < (phi.powi(n as i32) + 1.0) / 5f64.sqrt(), "n={n}");
        }
    }

    #[test]
    fn coefficient_examples() {
        let p = one_plus_x().pow(4);
        assert_eq!(coefficient(&p, 2), big(6));
        let q = ExactPolynomial::from_i64(&[2, 3, 2]);
        assert_eq!(coefficient(&q, 0), big(2));
        assert_eq!(coefficient(&q, -1), big(0));
        assert_eq!(coefficient(&q, 9), big(0));
        // x^{-1}((1+x)^4 - (1+x+x^2)^2)
        let t = t2_polynomial(4);
        assert_eq!(t, q.shift(1));
        assert_eq!(q.to_string(), "2x^2 + 3x + 2");
    }

    #[test]
    fn bound_examples() {
        assert!(e2_bound_value(5, 4) >= big(5));
        assert_eq!(t2_big_value(5, 4), big(2));
        assert_eq!(t2_big_value(10, 5), big(0));
        for g in 1..=20i64 {
            for m in 2..=g + 1 {
                assert!(e2_bound_value(g, m) <= 2 * binomial(m, g - m));
                assert!(e2_bound_value(g, m) >= big(0));
                assert!(t2_big_value(g, m) >= big(0));
                assert!(t2_small_bound(g, m) >= big(0));
            }
        }
        let d = sums(5);
        assert_eq!(d.cell(4, 0).e2, 5);
        assert_eq!(d.total(0).e2, 6);
        assert_eq!(d.cell(4, 0).pf_high, 2);
    }

    #[test]
    fn identities() {
        for n in 2..=40 {
            assert!(e2_identity_holds(n), "n={n}");
            assert!(t2_identity_holds(n), "n={n}");
            assert!(e2_polynomial(n).has_nonnegative_coefficients());
        }
        assert!(t2_identity_holds(0) && t2_identity_holds(1));
    }

    #[test]
    fn dual_routes_agree() {
        for g in 0..=24i64 {
            for m in 2..=g + 1 {
                assert_eq!(e2_inclusion_exclusion(g, m, m), e2_bound_value(g, m));
                let (b, s) = t2_inclusion_exclusion(m, 2 * m - g - 2);
                assert_eq!(b, t2_big_value(g, m), "g={g} m={m}");
                assert_eq!(s, t2_small_bound(g, m), "g={g} m={m}");
                for k in 1..m.min(6) {
                    assert_eq!(
                        e2_inclusion_exclusion(g, m, m + k + 1),
                        e2_bound_value_c(g, m, k)
                    );
                    let (b, s) = t2_inclusion_exclusion(m + k, 2 * m - g + k - 1);
                    assert_eq!((b, s), t2_bounds_c(g, m, k), "g={g} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn bounds_hold_for_small_genera() {
        for g in 0..=14 {
            let d = sums(g);
            check_t2_equality(&d).unwrap();
            check_e2_bounds(&d, 4).unwrap();
            check_t2_bounds(&d, 4).unwrap();
        }
    }

    proptest! {
        #[test]
        fn product_degree_adds(a in prop::collection::vec(-5i64..5, 1..6), b in prop::collection::vec(-5i64..5, 1..6)) {
            let p = ExactPolynomial::from_i64(&a);
            let q = ExactPolynomial::from_i64(&b);
            let pq = &p * &q;
            match (p.degree(), q.degree()) {
                (Some(x), Some(y)) => prop_assert_eq!(pq.degree(), Some(x + y)),
                _ => prop_assert!(pq.is_zero()),
            }
            let x = BigInt::from(3);
            prop_assert_eq!(pq.eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!(&(&p + &q) - &q, p);
        }

        #[test]
        fn pascal(n in 1i64..80, k in -2i64..82) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}
