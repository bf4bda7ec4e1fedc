//! Closed-form counts of semigroups whose multiplicity or embedding dimension
//! is close to the genus, through short prefixes of Kunz vectors.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kunz::KunzVector;
use crate::polybounds::binomial;

/// Largest `k` (and `l`) accepted by the generators below.
pub const MAX_K: i64 = 8;

/// A tuple over `{1, 2, 3}` of length `2k + 1` (empty for `k = -1`) and its
/// statistics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixTuple {
    pub k: i64,
    pub entries: Vec<u8>,
    /// number of 2s
    pub a: u32,
    /// number of 3s
    pub b: u32,
    /// number of 2s at a position `j1 + j2` with `x_{j1} = x_{j2} = 1`
    pub c: u32,
}

impl PrefixTuple {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.len().is_multiple_of(2) && !entries.is_empty() {
            return Err(Error::PrefixConditionViolated(format!(
                "length {} is even",
                entries.len()
            )));
        }
        let (a, b, c) = abc_stats(&entries)?;
        Ok(PrefixTuple {
            k: (entries.len() as i64 - 1).div_euclid(2),
            entries,
            a,
            b,
            c,
        })
    }

    /// `x_i` for `1 <= i <= 2k + 1`.
    pub fn x(&self, i: usize) -> u8 {
        self.entries[i - 1]
    }

    /// The `k2` for which this prefix counts semigroups: `2k + 1 - a - b + c`.
    pub fn derived_k2(&self) -> i64 {
        2 * self.k + 1 - self.a as i64 - self.b as i64 + self.c as i64
    }

    /// Positions `(i1, i2, i3)`, `i1 <= i2`, with `i1 + i2 = i3` and values `(1, 1, 3)`.
    pub fn forbidden_pattern(&self) -> Option<(usize, usize, usize)> {
        find_113(&self.entries)
    }
}

impl fmt::Display for PrefixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn find_113(x: &[u8]) -> Option<(usize, usize, usize)> {
    for i3 in 2..=x.len() {
        if x[i3 - 1] != 3 {
            continue;
        }
        for i1 in 1..=i3 / 2 {
            if x[i1 - 1] == 1 && x[i3 - i1 - 1] == 1 {
                return Some((i1, i3 - i1, i3));
            }
        }
    }
    None
}

fn is_sum_of_ones(x: &[u8], i: usize) -> bool {
    (1..=i / 2).any(|j| x[j - 1] == 1 && x[i - j - 1] == 1)
}

/// `(a, b, c)` of a tuple over `{1, 2, 3}`.
pub fn abc_stats(entries: &[u8]) -> Result<(u32, u32, u32)> {
    if let Some(&bad) = entries.iter().find(|&&x| !(1..=3).contains(&x)) {
        return Err(Error::BadAlphabet(bad as u32));
    }
    let a = entries.iter().filter(|&&x| x == 2).count() as u32;
    let b = entries.iter().filter(|&&x| x == 3).count() as u32;
    let c = (1..=entries.len())
        .filter(|&i| entries[i - 1] == 2 && is_sum_of_ones(entries, i))
        .count() as u32;
    Ok((a, b, c))
}

fn check_k(k: i64) -> Result<()> {
    if k > MAX_K {
        return Err(Error::TooLarge(k, MAX_K));
    }
    Ok(())
}

/// `𝒴(k)` in lexicographic order: tuples of length `2k + 1` over `{1,2,3}`
/// avoiding `(1,1,3)` at positions `i1 + i2 = i3`, with `a + 2b <= k + 1`.
pub fn generate_y(k: i64) -> Result<Vec<PrefixTuple>> {
    check_k(k)?;
    if k < -1 {
        return Ok(vec![]);
    }
    let len = (2 * k + 1).max(0) as usize;
    let budget = (k + 1) as u32;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn dfs(len: usize, budget: u32, used: u32, cur: &mut Vec<u8>, out: &mut Vec<PrefixTuple>) {
        if cur.len() == len {
            out.push(PrefixTuple::new(cur.clone()).expect("generated tuples are valid"));
            return;
        }
        let i = cur.len() + 1;
        for (x, cost) in [(1u8, 0u32), (2, 1), (3, 2)] {
            if used + cost > budget {
                continue;
            }
            if x == 3 && is_sum_of_ones(cur, i) {
                continue;
            }
            cur.push(x);
            dfs(len, budget, used + cost, cur, out);
            cur.pop();
        }
    }
    dfs(len, budget, 0, &mut cur, &mut out);
    Ok(out)
}

/// A formula value together with whether the arguments lie in the range
/// where the formula is proved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counted {
    pub value: BigInt,
    pub in_range: bool,
}

/// Number of `S` of genus `g` with `m = g - k1`, `e = g - k2` and Kunz
/// prefix `prefix`: `C(g - 3k1 - 2, k1 + 1 - a - 2b)`.
pub fn count_fixed_prefix(g: i64, k1: i64, k2: i64, prefix: &PrefixTuple) -> Result<Counted> {
    let fail = |why: String| Err(Error::PrefixConditionViolated(why));
    if k1 < -1 || k1 > k2 {
        return fail(format!("need -1 <= k1 <= k2, got k1={k1} k2={k2}"));
    }
    if prefix.k != k1 {
        return fail(format!("prefix {prefix} has length {}, not {}", prefix.entries.len(), 2 * k1 + 1));
    }
    if let Some((i1, i2, i3)) = prefix.forbidden_pattern() {
        return fail(format!("(1,1,3) at positions ({i1},{i2},{i3})"));
    }
    let (a, b, c) = (prefix.a as i64, prefix.b as i64, prefix.c as i64);
    if a + b - c != 2 * k1 + 1 - k2 {
        return fail(format!("a + b - c = {} but 2k1 + 1 - k2 = {}", a + b - c, 2 * k1 + 1 - k2));
    }
    if a + 2 * b > k1 + 1 {
        return fail(format!("a + 2b = {} exceeds k1 + 1 = {}", a + 2 * b, k1 + 1));
    }
    Ok(Counted {
        value: binomial(g - 3 * k1 - 2, k1 + 1 - a - 2 * b),
        in_range: g >= 4 * k1 + 3,
    })
}

/// `#{S : g(S) = g, m(S) = g - k}` from the `𝒴(k)` formula. Proved for `g >= 4k + 3`.
pub fn count_multiplicity_deficit(g: i64, k: i64) -> Result<Counted> {
    let value = generate_y(k)?
        .iter()
        .map(|y| binomial(g - 3 * k - 2, k + 1 - y.a as i64 - 2 * y.b as i64))
        .sum();
    Ok(Counted {
        value,
        in_range: g >= 4 * k + 3,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCount {
    pub value: BigInt,
    /// `g >= 4l + 3`
    pub above_4l_3: bool,
    /// `2g >= 9l + 7`
    pub above_9l_7: bool,
}

/// `#{S : g(S) = g, e(S) = g - l}` from the `𝒴` formula.
pub fn count_embedding_deficit(g: i64, l: i64) -> Result<EmbeddingCount> {
    check_k(l)?;
    let mut value = BigInt::zero();
    for k in -1..=l {
        for y in generate_y(k)? {
            if y.a as i64 + y.b as i64 - y.c as i64 == 2 * k + 1 - l {
                value += binomial(g - 3 * k - 2, k + 1 - y.a as i64 - 2 * y.b as i64);
            }
        }
    }
    Ok(EmbeddingCount {
        value,
        above_4l_3: g >= 4 * l + 3,
        above_9l_7: 2 * g >= 9 * l + 7,
    })
}

/// `e(S) = g - 2k1 - 1 + a + b - c` for `m = g - k1 >= 2k1 + 2`.
pub fn embedding_from_prefix(g: i64, prefix: &PrefixTuple) -> i64 {
    g - 2 * prefix.k - 1 + prefix.a as i64 + prefix.b as i64 - prefix.c as i64
}

/// Checks the five conditions characterizing Kunz vectors of semigroups with
/// `g = m + k1` and `e = g - k2`. Returns the first failing condition.
pub fn check_prefix_conditions(kv: &KunzVector, k1: i64, k2: i64) -> std::result::Result<(), String> {
    let m = kv.multiplicity as i64;
    if k1 < -1 || k1 > k2 || m < 2 * k1 + 2 {
        return Err(format!("parameters out of range: m={m} k1={k1} k2={k2}"));
    }
    let x = &kv.coords;
    if let Some(i) = x.iter().position(|&v| !(1..=3).contains(&v)) {
        return Err(format!("(1) x_{} = {}", i + 1, x[i]));
    }
    if let Some(i) = (1..m).find(|&i| i >= 2 * k1 && x[i as usize - 1] == 3) {
        return Err(format!("(2) x_{i} = 3 with i >= 2k1"));
    }
    let plen = (2 * k1 + 1).max(0) as usize;
    let prefix: Vec<u8> = x[..plen].iter().map(|&v| v as u8).collect();
    let p = PrefixTuple::new(prefix).map_err(|e| e.to_string())?;
    if let Some(t) = p.forbidden_pattern() {
        return Err(format!("(3) pattern (1,1,3) at {t:?}"));
    }
    let twos = x[plen..].iter().filter(|&&v| v == 2).count() as i64;
    if twos != k1 + 1 - p.a as i64 - 2 * p.b as i64 {
        return Err(format!("(4) {twos} twos after the prefix"));
    }
    if p.a as i64 + p.b as i64 - p.c as i64 != 2 * k1 + 1 - k2 {
        return Err("(5) a + b - c != 2k1 + 1 - k2".to_string());
    }
    Ok(())
}

/// Dense polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RationalPolynomial { coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    /// Coefficients `num[i] / den` for `x^i`.
    pub fn from_ratios(num: &[i64], den: i64) -> Self {
        Self::new(
            num.iter()
                .map(|&n| BigRational::new(n.into(), den.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// `C(x - c, d)` as a polynomial in `x`; zero for `d < 0`.
    pub fn binomial_shifted(c: i64, d: i64) -> Self {
        if d < 0 {
            return Self::zero();
        }
        let mut p = Self::constant(BigRational::one());
        let mut fact = BigInt::one();
        for i in 0..d {
            p = &p * &Self::from_ratios(&[-(c + i), 1], 1);
            fact *= BigInt::from(i + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), fact))
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
                })
                .collect(),
        )
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    /// Written in the variable `t`, e.g. `t^2/2 - 3t/2 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let (num, den) = (a.numer(), a.denom());
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if i == 0 || !num.is_one() {
                write!(f, "{num}")?;
            }
            f.write_str(&var)?;
            if !den.is_one() {
                write!(f, "/{den}")?;
            }
        }
        Ok(())
    }
}

/// `H_l(x) = sum_{k=-1}^{l} sum_{y in 𝒴(k), a+b-c = 2k+1-l} C(x - 3k - 2, k + 1 - a - 2b)`.
pub fn h_polynomial(l: i64) -> Result<RationalPolynomial> {
    check_k(l)?;
    let mut h = RationalPolynomial::zero();
    for k in -1..=l {
        for y in generate_y(k)? {
            if y.a as i64 + y.b as i64 - y.c as i64 == 2 * k + 1 - l {
                let d = k + 1 - y.a as i64 - 2 * y.b as i64;
                h = &h + &RationalPolynomial::binomial_shifted(3 * k + 2, d);
            }
        }
    }
    Ok(h)
}

/// `f_k(x) = (k+1)! sum_{y in 𝒴(k)} C(x - 3k - 2, k + 1 - a - 2b)`.
pub fn f_polynomial(k: i64) -> Result<RationalPolynomial> {
    check_k(k)?;
    let mut sum = RationalPolynomial::zero();
    for y in generate_y(k)? {
        let d = k + 1 - y.a as i64 - 2 * y.b as i64;
        sum = &sum + &RationalPolynomial::binomial_shifted(3 * k + 2, d);
    }
    let fact: BigInt = (1..=k + 1).map(BigInt::from).product();
    Ok(sum.scale(&BigRational::from_integer(fact)))
}
