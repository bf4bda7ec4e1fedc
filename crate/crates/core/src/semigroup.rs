//! Numerical semigroups and their per-semigroup invariants.
//!
//! A semigroup is stored through its gap set, which is finite. Every integer
//! that is not a recorded gap is a member, so membership queries are exact for
//! all nonnegative integers, not only inside a working window.

use std::fmt;

use num_integer::Integer;

use crate::bits::{Bits256, BITS};
use crate::error::{Error, Result};

/// Largest integer that can be recorded as a gap.
pub const MAX_GAP: u32 = BITS - 1;

/// A numerical semigroup, identified by its gap set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemigroupSet {
    gaps: Bits256,
    multiplicity: u32,
    frobenius: i32,
    genus: u32,
}

/// Every scalar invariant of a single semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantRecord {
    pub genus: u32,
    pub multiplicity: u32,
    pub frobenius: i32,
    pub embedding_dim: u32,
    /// Minimal generators in `[m, 2m-1]`.
    pub e1: u32,
    pub e2: u32,
    pub type_t: u32,
    /// Pseudo-Frobenius numbers in `[F-m+1, F]`.
    pub t1: u32,
    pub t2: u32,
    pub weight: u64,
    /// Sum of the gaps.
    pub gap_sum: u64,
}

/// Least element of the semigroup in each residue class modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperyTable {
    pub modulus: u32,
    pub entries: Vec<u32>,
}

impl SemigroupSet {
    /// The full monoid of nonnegative integers.
    pub fn naturals() -> Self {
        SemigroupSet {
            gaps: Bits256::empty(),
            multiplicity: 1,
            frobenius: -1,
            genus: 0,
        }
    }

    /// `{0, m, m+1, ...}`.
    pub fn ordinary(m: u32) -> Result<Self> {
        if m == 0 || m > BITS {
            return Err(Error::OutOfRange {
                value: m as u64,
                max: BITS as u64,
            });
        }
        Ok(Self::from_gap_bits(Bits256::range(1, m)))
    }

    /// Builds the semigroup whose gap set is exactly `gaps`.
    pub fn from_gaps<I: IntoIterator<Item = u32>>(gaps: I) -> Result<Self> {
        let mut bits = Bits256::empty();
        for h in gaps {
            if h == 0 {
                return Err(Error::NotASemigroup { a: 0, b: 0, sum: 0 });
            }
            if h > MAX_GAP {
                return Err(Error::OutOfRange {
                    value: h as u64,
                    max: MAX_GAP as u64,
                });
            }
            bits.set(h);
        }
        for h in bits.iter() {
            for s in 1..=h / 2 {
                if !bits.get(s) && !bits.get(h - s) {
                    return Err(Error::NotASemigroup {
                        a: s,
                        b: h - s,
                        sum: h,
                    });
                }
            }
        }
        Ok(Self::from_gap_bits(bits))
    }

    /// Smallest additively closed set containing 0 and `gens`.
    pub fn from_generators<I: IntoIterator<Item = u32>>(gens: I) -> Result<Self> {
        let mut gens: Vec<u32> = gens.into_iter().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let d = gens.iter().fold(0u32, |acc, &g| acc.gcd(&g));
        if d != 1 {
            return Err(Error::InfiniteGenus(d));
        }
        let smallest = gens[0];
        let limit = (BITS + smallest) as usize;
        let mut member = vec![false; limit + 1];
        member[0] = true;
        let mut run = 0u32;
        let mut gaps = Bits256::empty();
        for n in 1..=limit {
            member[n] = gens
                .iter()
                .take_while(|&&g| g as usize <= n)
                .any(|&g| member[n - g as usize]);
            if member[n] {
                run += 1;
                if run == smallest {
                    return Ok(Self::from_gap_bits(gaps));
                }
            } else {
                run = 0;
                if n as u32 > MAX_GAP {
                    break;
                }
                gaps.set(n as u32);
            }
        }
        Err(Error::OutOfRange {
            value: limit as u64,
            max: MAX_GAP as u64,
        })
    }

    /// Caller guarantees closure.
    pub(crate) fn from_gap_bits(gaps: Bits256) -> Self {
        let multiplicity = (1..=BITS).find(|&n| !gaps.get(n)).unwrap_or(BITS);
        SemigroupSet {
            gaps,
            multiplicity,
            frobenius: gaps.highest().map_or(-1, |f| f as i32),
            genus: gaps.count(),
        }
    }

    pub(crate) fn gap_bits(&self) -> Bits256 {
        self.gaps
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn frobenius(&self) -> i32 {
        self.frobenius
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    #[inline]
    pub fn contains(&self, n: u32) -> bool {
        !self.gaps.get(n)
    }

    pub fn gaps(&self) -> Vec<u32> {
        self.gaps.iter().collect()
    }

    /// Members in `[0, bound]`.
    pub fn elements_up_to(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// The minimal generating set, ascending. Every generator is at most `F + m`.
    pub fn minimal_generators(&self) -> Vec<u32> {
        let m = self.multiplicity;
        let top = (self.frobenius + m as i32) as u32;
        (m..=top.max(m))
            .filter(|&y| self.contains(y))
            .filter(|&y| !(m..=y / 2).any(|s| self.contains(s) && self.contains(y - s)))
            .collect()
    }

    /// Gaps `P` with `P + s` in the semigroup for every positive member `s`.
    /// Empty for the full monoid.
    pub fn pseudo_frobenius(&self) -> Vec<u32> {
        self.pseudo_frobenius_bits(&self.minimal_generators())
            .iter()
            .collect()
    }

    fn pseudo_frobenius_bits(&self, generators: &[u32]) -> Bits256 {
        // P + s in S for all s > 0 iff it holds for every minimal generator.
        generators
            .iter()
            .fold(self.gaps, |pf, &a| pf.and_not(&self.gaps.shr(a)))
    }

    pub fn invariants(&self) -> InvariantRecord {
        let m = self.multiplicity;
        let f = self.frobenius;
        let g = self.genus as u64;
        let generators = self.minimal_generators();
        let e1 = generators.iter().filter(|&&a| a < 2 * m).count() as u32;
        let pf = self.pseudo_frobenius_bits(&generators);
        let t1 = if f < 0 {
            0
        } else {
            let lo = (f - m as i32 + 1).max(0) as u32;
            self.gaps.and(&Bits256::range(lo, f as u32 + 1)).count()
        };
        let gap_sum: u64 = self.gaps.iter().map(u64::from).sum();
        let e = generators.len() as u32;
        let t = pf.count();
        InvariantRecord {
            genus: self.genus,
            multiplicity: m,
            frobenius: f,
            embedding_dim: e,
            e1,
            e2: e - e1,
            type_t: t,
            t1,
            t2: t - t1,
            weight: gap_sum - g * (g + 1) / 2,
            gap_sum,
        }
    }

    /// The Apéry set with respect to a positive member `n`.
    pub fn apery(&self, n: u32) -> Result<AperyTable> {
        if n == 0 || !self.contains(n) {
            return Err(Error::NotAMember(n));
        }
        let entries = (0..n)
            .map(|i| {
                let mut a = i;
                while !self.contains(a) {
                    a += n;
                }
                a
            })
            .collect();
        Ok(AperyTable {
            modulus: n,
            entries,
        })
    }
}

impl Default for SemigroupSet {
    fn default() -> Self {
        Self::naturals()
    }
}

impl fmt::Display for SemigroupSet {
    /// Sorted gap list, e.g. `[1,2,4]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, h) in self.gaps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SemigroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SemigroupSet(g={}, m={}, F={}, gaps={})",
            self.genus, self.multiplicity, self.frobenius, self
        )
    }
}
