//! A 256-bit set of small nonnegative integers.

use std::fmt;

pub const WORDS: usize = 4;
pub const BITS: u32 = (WORDS as u32) * 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Bits256([u64; WORDS]);

impl Bits256 {
    pub const fn empty() -> Self {
        Bits256([0; WORDS])
    }

    /// All positions in `[lo, hi)`, clamped to the width.
    pub fn range(lo: u32, hi: u32) -> Self {
        let hi = hi.min(BITS);
        if lo >= hi {
            return Self::empty();
        }
        Self::below(hi).and_not(&Self::below(lo))
    }

    /// All positions in `[0, n)`.
    pub fn below(n: u32) -> Self {
        let mut w = [0u64; WORDS];
        let n = n.min(BITS);
        for (i, word) in w.iter_mut().enumerate() {
            let base = (i as u32) * 64;
            if n >= base + 64 {
                *word = u64::MAX;
            } else if n > base {
                *word = (1u64 << (n - base)) - 1;
            }
        }
        Bits256(w)
    }

    #[inline]
    pub fn get(&self, i: u32) -> bool {
        i < BITS && (self.0[(i >> 6) as usize] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: u32) {
        debug_assert!(i < BITS);
        self.0[(i >> 6) as usize] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: u32) {
        debug_assert!(i < BITS);
        self.0[(i >> 6) as usize] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and(&self, other: &Self) -> Self {
        let mut w = self.0;
        for (a, b) in w.iter_mut().zip(other.0.iter()) {
            *a &= *b;
        }
        Bits256(w)
    }

    #[inline]
    pub fn or(&self, other: &Self) -> Self {
        let mut w = self.0;
        for (a, b) in w.iter_mut().zip(other.0.iter()) {
            *a |= *b;
        }
        Bits256(w)
    }

    #[inline]
    pub fn and_not(&self, other: &Self) -> Self {
        let mut w = self.0;
        for (a, b) in w.iter_mut().zip(other.0.iter()) {
            *a &= !*b;
        }
        Bits256(w)
    }

    /// Bit `i` of the result is bit `i + n` of `self`.
    #[inline]
    pub fn shr(&self, n: u32) -> Self {
        if n >= BITS {
            return Self::empty();
        }
        let words = (n / 64) as usize;
        let bits = n % 64;
        let mut out = [0u64; WORDS];
        for (i, slot) in out.iter_mut().take(WORDS - words).enumerate() {
            let lo = self.0[i + words] >> bits;
            let hi = if bits > 0 && i + words + 1 < WORDS {
                self.0[i + words + 1] << (64 - bits)
            } else {
                0
            };
            *slot = lo | hi;
        }
        Bits256(out)
    }

    /// Largest set position.
    pub fn highest(&self) -> Option<u32> {
        for i in (0..WORDS).rev() {
            if self.0[i] != 0 {
                return Some(i as u32 * 64 + 63 - self.0[i].leading_zeros());
            }
        }
        None
    }

    /// Smallest set position.
    pub fn lowest(&self) -> Option<u32> {
        for i in 0..WORDS {
            if self.0[i] != 0 {
                return Some(i as u32 * 64 + self.0[i].trailing_zeros());
            }
        }
        None
    }

    pub fn iter(&self) -> Ones {
        Ones {
            words: self.0,
            idx: 0,
        }
    }
}

impl FromIterator<u32> for Bits256 {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut b = Bits256::empty();
        for i in iter {
            b.set(i);
        }
        b
    }
}

impl fmt::Debug for Bits256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones {
    words: [u64; WORDS],
    idx: usize,
}

impl Iterator for Ones {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        while self.idx < WORDS {
            let w = self.words[self.idx];
            if w != 0 {
                let tz = w.trailing_zeros();
                self.words[self.idx] = w & (w - 1);
                return Some(self.idx as u32 * 64 + tz);
            }
            self.idx += 1;
        }
        None
    }
}
