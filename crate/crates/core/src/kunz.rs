//! Kunz coordinates: the Apéry set with respect to the multiplicity, written
//! as `a_i = x_i * m + i`.

use crate::bits::Bits256;
use crate::error::{Error, Result};
use crate::semigroup::{SemigroupSet, MAX_GAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KunzVector {
    pub multiplicity: u32,
    /// `coords[i - 1]` is `x_i`.
    pub coords: Vec<u32>,
}

/// First failing inequality of a Kunz vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KunzViolation {
    Length { expected: usize, found: usize },
    /// `x_i` must be positive.
    NonPositive { i: usize },
    /// `x_i + x_j < x_{i+j}` with `i + j < m`.
    Sum { i: usize, j: usize },
    /// `x_i + x_j + 1 < x_{i+j-m}` with `i + j > m`.
    WrappedSum { i: usize, j: usize },
}

impl KunzVector {
    pub fn new(multiplicity: u32, coords: Vec<u32>) -> Self {
        KunzVector {
            multiplicity,
            coords,
        }
    }

    pub fn genus(&self) -> u64 {
        self.coords.iter().map(|&x| x as u64).sum()
    }

    /// `x_i` for `1 <= i < m`.
    pub fn x(&self, i: usize) -> u32 {
        self.coords[i - 1]
    }
}

pub fn check_kunz(m: u32, coords: &[u32]) -> std::result::Result<(), KunzViolation> {
    let m = m as usize;
    if m == 0 || coords.len() != m - 1 {
        return Err(KunzViolation::Length {
            expected: m.saturating_sub(1),
            found: coords.len(),
        });
    }
    if let Some(i) = coords.iter().position(|&x| x == 0) {
        return Err(KunzViolation::NonPositive { i: i + 1 });
    }
    let x = |i: usize| coords[i - 1] as u64;
    for i in 1..m {
        for j in i..m {
            if i + j < m {
                if x(i) + x(j) < x(i + j) {
                    return Err(KunzViolation::Sum { i, j });
                }
            } else if i + j > m && x(i) + x(j) + 1 < x(i + j - m) {
                return Err(KunzViolation::WrappedSum { i, j });
            }
        }
    }
    Ok(())
}

pub fn is_valid_kunz(m: u32, coords: &[u32]) -> bool {
    check_kunz(m, coords).is_ok()
}

fn validate(kv: &KunzVector) -> Result<()> {
    check_kunz(kv.multiplicity, &kv.coords).map_err(|v| Error::InvalidKunz(format!("{v:?}")))
}

/// Kunz coordinates with respect to the multiplicity. The full monoid maps to
/// the empty vector with `m = 1`.
pub fn kunz_of(s: &SemigroupSet) -> KunzVector {
    let m = s.multiplicity();
    let ap = s
        .apery(m)
        .expect("the multiplicity is always a member");
    let coords = ap.entries[1..]
        .iter()
        .enumerate()
        .map(|(idx, &a)| (a - (idx as u32 + 1)) / m)
        .collect();
    KunzVector::new(m, coords)
}

pub fn semigroup_of_kunz(kv: &KunzVector) -> Result<SemigroupSet> {
    validate(kv)?;
    let m = kv.multiplicity;
    let mut gaps = Bits256::empty();
    for (idx, &x) in kv.coords.iter().enumerate() {
        let i = idx as u32 + 1;
        for k in 0..x {
            let h = i as u64 + k as u64 * m as u64;
            if h > MAX_GAP as u64 {
                return Err(Error::OutOfRange {
                    value: h,
                    max: MAX_GAP as u64,
                });
            }
            gaps.set(h as u32);
        }
    }
    Ok(SemigroupSet::from_gap_bits(gaps))
}

/// `{m}` together with the Apéry elements `m x_i + i` that do not split as a
/// sum of two smaller Apéry elements.
pub fn generators_from_kunz(kv: &KunzVector) -> Result<Vec<u32>> {
    validate(kv)?;
    let m = kv.multiplicity as usize;
    let x = |i: usize| kv.coords[i - 1];
    let mut gens = vec![kv.multiplicity];
    for i in 1..m {
        let xi = x(i);
        let split = (1..i).any(|j| x(j) + x(i - j) == xi)
            || (i + 1..m).any(|j| x(j) + x(m + i - j) + 1 == xi);
        if !split {
            gens.push(xi * m as u32 + i as u32);
        }
    }
    gens.sort_unstable();
    Ok(gens)
}

/// Every valid Kunz vector with coordinate sum `g`, over all multiplicities
/// `1..=g+1`, found by backtracking on the coordinates. Independent of the
/// semigroup tree.
pub fn kunz_vectors_of_genus(g: u32) -> Vec<KunzVector> {
    fn extend(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<KunzVector>) {
        let j = cur.len() + 1;
        if j == m {
            if left == 0 && check_kunz(m as u32, cur).is_ok() {
                out.push(KunzVector::new(m as u32, cur.clone()));
            }
            return;
        }
        let remaining = (m - j - 1) as u32;
        // x_j <= x_i + x_{j-i}
        let cap = (1..j).map(|i| cur[i - 1] + cur[j - i - 1]).min().unwrap_or(u32::MAX);
        let hi = left.saturating_sub(remaining).min(cap);
        for x in 1..=hi {
            cur.push(x);
            extend(m, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for m in 1..=g as usize + 1 {
        extend(m, g, &mut Vec::with_capacity(m), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(gaps: &[u32]) -> SemigroupSet {
        SemigroupSet::from_gaps(gaps.iter().copied()).unwrap()
    }

    #[test]
    fn kunz_of_examples() {
        assert_eq!(kunz_of(&s(&[1, 2, 4])), KunzVector::new(3, vec![2, 1]));
        assert_eq!(kunz_of(&s(&[1, 3, 5, 7])), KunzVector::new(2, vec![4]));
        for m in 2..20 {
            let kv = kunz_of(&SemigroupSet::ordinary(m).unwrap());
            assert_eq!(kv.coords, vec![1; m as usize - 1]);
        }
        assert_eq!(kunz_of(&SemigroupSet::naturals()), KunzVector::new(1, vec![]));
    }

    #[test]
    fn inverse_examples() {
        let kv = KunzVector::new(3, vec![2, 1]);
        assert_eq!(semigroup_of_kunz(&kv).unwrap().gaps(), vec![1, 2, 4]);
        assert_eq!(
            semigroup_of_kunz(&KunzVector::new(5, vec![1; 4])).unwrap(),
            SemigroupSet::ordinary(5).unwrap()
        );
        assert!(matches!(
            semigroup_of_kunz(&KunzVector::new(3, vec![1, 3])),
            Err(Error::InvalidKunz(_))
        ));
        assert_eq!(
            semigroup_of_kunz(&KunzVector::new(1, vec![])).unwrap(),
            SemigroupSet::naturals()
        );
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid_kunz(3, &[2, 1]));
        assert_eq!(check_kunz(3, &[1, 3]), Err(KunzViolation::Sum { i: 1, j: 1 }));
        for m in 1..=50 {
            assert!(is_valid_kunz(m, &vec![1; m as usize - 1]));
        }
        assert!(!is_valid_kunz(3, &[1]));
        assert!(!is_valid_kunz(3, &[0, 1]));
        // x_2 + x_2 + 1 = 3 < x_1 = 4 with 2 + 2 > 3
        assert_eq!(
            check_kunz(3, &[4, 1]),
            Err(KunzViolation::WrappedSum { i: 2, j: 2 })
        );
    }

    #[test]
    fn oracle_counts() {
        let counts: Vec<usize> = (0..=9).map(|g| kunz_vectors_of_genus(g).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 7, 12, 23, 39, 67, 118]);
        for kv in kunz_vectors_of_genus(8) {
            let s = semigroup_of_kunz(&kv).unwrap();
            assert_eq!(s.genus() as u64, kv.genus());
            assert_eq!(kunz_of(&s), kv);
            assert_eq!(generators_from_kunz(&kv).unwrap(), s.minimal_generators());
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            generators_from_kunz(&KunzVector::new(3, vec![2, 1])).unwrap(),
            vec![3, 5, 7]
        );
        assert_eq!(
            generators_from_kunz(&KunzVector::new(5, vec![1; 4])).unwrap(),
            vec![5, 6, 7, 8, 9]
        );
        assert_eq!(
            generators_from_kunz(&KunzVector::new(2, vec![4])).unwrap(),
            vec![2, 9]
        );
    }
}
