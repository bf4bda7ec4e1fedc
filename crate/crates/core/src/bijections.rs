//! Parametrizations of the semigroups with `F < 2m` and with `2m < F < 3m`
//! by subsets, and the series for the leading constant of `N(g)`.

use num_bigint::BigInt;

use crate::bits::Bits256;
use crate::error::{Error, Result};
use crate::polybounds::binomial;
use crate::semigroup::{SemigroupSet, MAX_GAP};

/// Largest truncation accepted by [`zhai_partial_sum`].
pub const MAX_TRUNCATION: u32 = 22;

/// `A ⊆ [0, k-1]` with `0 ∈ A` and `k ∉ A + A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeSetA {
    pub k: u32,
    /// Sorted, starts with 0.
    pub elements: Vec<u32>,
}

impl TypeSetA {
    pub fn new(k: u32, mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if k == 0 {
            return Err(Error::InvalidA("k must be positive".into()));
        }
        if elements.first() != Some(&0) {
            return Err(Error::InvalidA("0 must belong to A".into()));
        }
        if let Some(&a) = elements.iter().find(|&&a| a >= k) {
            return Err(Error::InvalidA(format!("{a} is outside [0, {}]", k - 1)));
        }
        let a = TypeSetA { k, elements };
        if let Some((x, y)) = a.pair_summing_to(k) {
            return Err(Error::InvalidA(format!("{x} + {y} = {k}")));
        }
        Ok(a)
    }

    fn pair_summing_to(&self, n: u32) -> Option<(u32, u32)> {
        self.elements
            .iter()
            .find(|&&x| 2 * x <= n && self.contains(n - x))
            .map(|&x| (x, n - x))
    }

    pub fn contains(&self, a: u32) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(A + A) ∩ [0, k]`, sorted.
    pub fn sumset_to_k(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .elements
            .iter()
            .flat_map(|&x| self.elements.iter().map(move |&y| x + y))
            .filter(|&s| s <= self.k)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// All of `A_k` in lexicographic order of the sorted element lists.
pub fn generate_a_k(k: u32) -> Vec<TypeSetA> {
    fn dfs(k: u32, current: &mut Vec<u32>, out: &mut Vec<TypeSetA>) {
        out.push(TypeSetA {
            k,
            elements: current.clone(),
        });
        let start = current.last().map_or(1, |&l| l + 1);
        for e in start..k {
            if 2 * e == k || current.binary_search(&(k - e)).is_ok() {
                continue;
            }
            current.push(e);
            dfs(k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 {
        dfs(k, &mut vec![0], &mut out);
    }
    out
}

fn check_fits(n: u32) -> Result<()> {
    if n > MAX_GAP + 1 {
        return Err(Error::OutOfRange {
            value: n as u64,
            max: MAX_GAP as u64 + 1,
        });
    }
    Ok(())
}

/// `S_{m,B} = (m + B) ∪ {0, m, 2m →}` for `B ⊆ [1, m-1]`.
pub fn semigroup_from_b(m: u32, b: &[u32]) -> Result<SemigroupSet> {
    if m == 0 {
        return Err(Error::InvalidB("multiplicity must be positive".into()));
    }
    check_fits(2 * m)?;
    if let Some(&x) = b.iter().find(|&&x| x == 0 || x >= m) {
        return Err(Error::InvalidB(format!("{x} is outside [1, {}]", m - 1)));
    }
    let mut gaps = Bits256::range(1, 2 * m);
    gaps.clear(m);
    for &x in b {
        gaps.clear(m + x);
    }
    Ok(SemigroupSet::from_gap_bits(gaps))
}

/// `S_{m,A,B} = {0} ∪ (m + A) ∪ (2m + ((A+A) ∩ [0,k])) ∪ B ∪ {2m+k+1 →}`
/// with `B ⊆ [m+k+1, 2m+k-1] \ (2m + A + A)`.
pub fn semigroup_from_ab(m: u32, k: u32, a: &TypeSetA, b: &[u32]) -> Result<SemigroupSet> {
    if a.k != k {
        return Err(Error::InvalidA(format!("A belongs to A_{}, not A_{k}", a.k)));
    }
    if k >= m {
        return Err(Error::InvalidA(format!("k = {k} must be below m = {m}")));
    }
    check_fits(2 * m + k + 1)?;
    let sums = a.sumset_to_k();
    let mut gaps = Bits256::range(1, 2 * m + k + 1);
    for &x in &a.elements {
        gaps.clear(m + x);
    }
    for &s in &sums {
        gaps.clear(2 * m + s);
    }
    for &x in b {
        if x < m + k + 1 || x > 2 * m + k - 1 {
            return Err(Error::InvalidB(format!(
                "{x} is outside [{}, {}]",
                m + k + 1,
                2 * m + k - 1
            )));
        }
        if x >= 2 * m && sums.binary_search(&(x - 2 * m)).is_ok() {
            return Err(Error::InvalidB(format!("{x} lies in 2m + A + A")));
        }
        gaps.clear(x);
    }
    Ok(SemigroupSet::from_gap_bits(gaps))
}

/// `|ℬ(g, m)| = C(m-1, 2m-g-2)`.
pub fn count_b(g: i64, m: i64) -> BigInt {
    binomial(m - 1, 2 * m - g - 2)
}

/// `|𝒞(m, k, A, g)| = C(m-1-s, 2m-g+k-|A|-s)` with `s = |(A+A) ∩ [0,k]|`.
pub fn count_c(m: i64, k: i64, a: &TypeSetA, g: i64) -> BigInt {
    let s = a.sumset_to_k().len() as i64;
    binomial(m - 1 - s, 2 * m - g + k - a.len() as i64 - s)
}

/// All `S_{m,B}` of genus `g`, grouped by `m`, in lexicographic order of `B`.
pub fn family_b(g: u32) -> Result<Vec<SemigroupSet>> {
    let mut out = Vec::new();
    for m in 1..=g + 1 {
        let Some(size) = (2 * m).checked_sub(g + 2) else { continue };
        for b in subsets((1..m).collect(), size as usize) {
            out.push(semigroup_from_b(m, &b)?);
        }
    }
    Ok(out)
}

/// All `S_{m,A,B}` of genus `g` with `F = 2m + k`.
pub fn family_c(g: u32, k: u32) -> Result<Vec<SemigroupSet>> {
    let mut out = Vec::new();
    let sets = generate_a_k(k);
    for m in k + 1..=g + 1 {
        for a in &sets {
            let sums = a.sumset_to_k();
            let target = 2 * m as i64 + k as i64 - g as i64 - a.len() as i64 - sums.len() as i64;
            if target < 0 {
                continue;
            }
            let universe: Vec<u32> = (m + k + 1..2 * m + k)
                .filter(|&x| x < 2 * m || sums.binary_search(&(x - 2 * m)).is_err())
                .collect();
            for b in subsets(universe, target as usize) {
                out.push(semigroup_from_ab(m, k, a, &b)?);
            }
        }
    }
    Ok(out)
}

/// `size`-subsets of `universe` in lexicographic order.
fn subsets(universe: Vec<u32>, size: usize) -> Vec<Vec<u32>> {
    fn go(u: &[u32], size: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = size - cur.len();
        for i in 0..u.len() {
            if u.len() - i < need {
                break;
            }
            cur.push(u[i]);
            go(&u[i + 1..], size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= universe.len() {
        go(&universe, size, &mut Vec::new(), &mut out);
    }
    out
}

/// `phi/sqrt5 + (1/sqrt5) sum_{k=1}^{K} sum_{A in A_k} phi^(|A| - |(A+A) ∩ [0,k]| - k - 1)`.
pub fn zhai_partial_sum(truncation: u32) -> Result<f64> {
    if truncation > MAX_TRUNCATION {
        return Err(Error::TruncationTooLarge(truncation, MAX_TRUNCATION));
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let sqrt5 = 5f64.sqrt();
    let mut sum = phi / sqrt5;
    for k in 1..=truncation {
        for a in generate_a_k(k) {
            let exp = a.len() as i32 - a.sumset_to_k().len() as i32 - k as i32 - 1;
            sum += phi.powi(exp) / sqrt5;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::semigroups_of_genus;
    use std::collections::HashSet;

    fn a(k: u32, e: &[u32]) -> TypeSetA {
        TypeSetA::new(k, e.to_vec()).unwrap()
    }

    #[test]
    fn a_k_examples() {
        assert_eq!(generate_a_k(1), vec![a(1, &[0])]);
        assert_eq!(generate_a_k(2), vec![a(2, &[0])]);
        assert_eq!(generate_a_k(3), vec![a(3, &[0]), a(3, &[0, 1]), a(3, &[0, 2])]);
        for k in 1..=14 {
            assert_eq!(generate_a_k(k).len(), 3usize.pow((k - 1) / 2), "k={k}");
        }
        assert!(TypeSetA::new(2, vec![0, 1]).is_err());
        assert!(TypeSetA::new(3, vec![1]).is_err());
        assert!(TypeSetA::new(3, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn from_b_examples() {
        let s = semigroup_from_b(3, &[]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 4, 5]);
        let s = semigroup_from_b(4, &[3]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 3, 5, 6]);
        let g = 7;
        let all: Vec<u32> = (1..=g).collect();
        assert_eq!(
            semigroup_from_b(g + 1, &all).unwrap(),
            SemigroupSet::ordinary(g + 1).unwrap()
        );
        assert!(matches!(semigroup_from_b(4, &[4]), Err(Error::InvalidB(_))));
    }

    #[test]
    fn from_ab_examples() {
        let s = semigroup_from_ab(4, 1, &a(1, &[0]), &[6]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 3, 5, 7, 9]);
        assert_eq!((s.genus(), s.frobenius()), (6, 9));
        let s = semigroup_from_ab(4, 1, &a(1, &[0]), &[7]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 3, 5, 6, 9]);
        assert!(matches!(
            semigroup_from_ab(4, 1, &a(1, &[0]), &[8]),
            Err(Error::InvalidB(_))
        ));
        assert!(matches!(
            semigroup_from_ab(4, 1, &a(1, &[0]), &[5]),
            Err(Error::InvalidB(_))
        ));
    }

    #[test]
    fn counts() {
        assert_eq!(count_b(5, 4), BigInt::from(3));
        for g in 0..30 {
            assert_eq!(count_b(g, g + 1), BigInt::from(1));
        }
        for g in 0..=14u32 {
            let sg = semigroups_of_genus(g).unwrap();
            let below = sg
                .iter()
                .filter(|s| s.frobenius() < 2 * s.multiplicity() as i32)
                .count();
            let formula: BigInt = (0..=g as i64 + 1).map(|m| count_b(g as i64, m)).sum();
            assert_eq!(formula, BigInt::from(below), "g={g}");
            for m in 1..=g as i64 + 2 {
                let nonempty = count_b(g as i64, m) > BigInt::from(0);
                assert_eq!(nonempty, 2 * m >= g as i64 + 2 && m <= g as i64 + 1);
            }
        }
    }

    #[test]
    fn b_family_is_a_bijection() {
        for g in 0..=12u32 {
            let fam = family_b(g).unwrap();
            let set: HashSet<_> = fam.iter().copied().collect();
            assert_eq!(set.len(), fam.len());
            let expected: HashSet<_> = semigroups_of_genus(g)
                .unwrap()
                .into_iter()
                .filter(|s| s.frobenius() < 2 * s.multiplicity() as i32)
                .collect();
            assert_eq!(set, expected, "g={g}");
        }
    }

    #[test]
    fn c_family_partitions() {
        for k in 1..=3u32 {
            for g in 3 * k..=11 {
                let fam = family_c(g, k).unwrap();
                let set: HashSet<_> = fam.iter().copied().collect();
                assert_eq!(set.len(), fam.len());
                let expected: HashSet<_> = semigroups_of_genus(g)
                    .unwrap()
                    .into_iter()
                    .filter(|s| s.frobenius() == 2 * s.multiplicity() as i32 + k as i32)
                    .collect();
                assert_eq!(set, expected, "g={g} k={k}");
                let counted: BigInt = (k as i64 + 1..=g as i64 + 1)
                    .flat_map(|m| generate_a_k(k).into_iter().map(move |a| (m, a)))
                    .map(|(m, a)| count_c(m, k as i64, &a, g as i64))
                    .sum();
                assert_eq!(counted, BigInt::from(fam.len()));
            }
        }
    }

    #[test]
    fn zhai_values() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((zhai_partial_sum(0).unwrap() - phi / 5f64.sqrt()).abs() < 1e-15);
        assert!((zhai_partial_sum(1).unwrap() - 0.8944272).abs() < 1e-7);
        assert!((zhai_partial_sum(2).unwrap() - 1.0).abs() < 1e-7);
        let mut prev = zhai_partial_sum(0).unwrap();
        for k in 1..=14 {
            let next = zhai_partial_sum(k).unwrap();
            assert!(next > prev);
            prev = next;
        }
        assert_eq!(zhai_partial_sum(23), Err(Error::TruncationTooLarge(23, 22)));
    }
}
