//! Plain bitvector with constant-time rank and near-constant select.
//!
//! Bits are stored LSB-first in u64 words. Positions are 1-based; `rank1(i)`
//! counts ones among positions `1..=i` and `rank1(0) = 0`. A single-level
//! directory stores the cumulative popcount before every 512-bit block
//! (one u32 per block, 6.25% overhead). `select` binary-searches the
//! directory and then scans at most eight words.

use crate::error::{Error, Result};
use crate::succinct::wire::{self, Reader};

const BLOCK_WORDS: usize = 8; // 512 bits

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitvector {
    len: u64,
    ones: u64,
    words: Vec<u64>,
    /// blocks[b] = number of ones in words[..b * BLOCK_WORDS]
    blocks: Vec<u32>,
}

impl Bitvector {
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1u64 << (i % 64);
            }
        }
        Self::from_words(words, bits.len() as u64)
    }

    /// `len` bits taken LSB-first from `words`; any bits of the final word
    /// beyond `len` must be zero.
    pub fn from_words(words: Vec<u64>, len: u64) -> Self {
        debug_assert_eq!(words.len(), (len as usize).div_ceil(64));
        if len % 64 != 0 {
            debug_assert_eq!(words[words.len() - 1] >> (len % 64), 0);
        }
        let n_blocks = words.len().div_ceil(BLOCK_WORDS);
        let mut blocks = Vec::with_capacity(n_blocks + 1);
        let mut acc: u64 = 0;
        for b in 0..=n_blocks {
            blocks.push(acc as u32);
            if b < n_blocks {
                let lo = b * BLOCK_WORDS;
                let hi = (lo + BLOCK_WORDS).min(words.len());
                acc += words[lo..hi].iter().map(|w| w.count_ones() as u64).sum::<u64>();
            }
        }
        assert!(acc <= u32::MAX as u64, "bitvector too large for u32 directory");
        Bitvector { len, ones: acc, words, blocks }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.ones
    }

    pub fn count_zeros(&self) -> u64 {
        self.len - self.ones
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 1-based position `i` (must satisfy `1 <= i <= len`).
    #[inline]
    pub fn get(&self, i: u64) -> bool {
        debug_assert!(i >= 1 && i <= self.len, "bit index {i} out of 1..={}", self.len);
        let p = (i - 1) as usize;
        (self.words[p / 64] >> (p % 64)) & 1 == 1
    }

    /// Number of ones among positions `1..=i`; `i` may be 0 or `len`.
    #[inline]
    pub fn rank1(&self, i: u64) -> u64 {
        debug_assert!(i <= self.len, "rank index {i} out of 0..={}", self.len);
        let p = i as usize; // number of leading bits to count
        let full_words = p / 64;
        let rem = p % 64;
        let block = full_words / BLOCK_WORDS;
        let mut cnt = self.blocks[block] as u64;
        for w in &self.words[block * BLOCK_WORDS..full_words] {
            cnt += w.count_ones() as u64;
        }
        if rem != 0 {
            cnt += (self.words[full_words] & ((1u64 << rem) - 1)).count_ones() as u64;
        }
        cnt
    }

    #[inline]
    pub fn rank0(&self, i: u64) -> u64 {
        i - self.rank1(i)
    }

    /// Position of the k-th one (k is 1-based); `None` when `k > ones`.
    pub fn select1(&self, k: u64) -> Option<u64> {
        if k == 0 || k > self.ones {
            return None;
        }
        // Find the block whose cumulative count first reaches k.
        let mut lo = 0usize;
        let mut hi = self.blocks.len() - 1; // blocks[hi] == ones
        while lo < hi {
            let mid = (lo + hi) / 2;
            if (self.blocks[mid + 1] as u64) < k {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let mut need = k - self.blocks[lo] as u64;
        let start = lo * BLOCK_WORDS;
        for (wi, &w) in self.words[start..].iter().enumerate() {
            let c = w.count_ones() as u64;
            if need <= c {
                let bit = select_in_word(w, need as u32);
                return Some(((start + wi) * 64 + bit as usize) as u64 + 1);
            }
            need -= c;
        }
        unreachable!("directory said the one exists");
    }

    /// Position of the k-th zero (k is 1-based); `None` when `k > zeros`.
    pub fn select0(&self, k: u64) -> Option<u64> {
        if k == 0 || k > self.count_zeros() {
            return None;
        }
        // zeros before block b = b * 512 - blocks[b], monotone in b.
        let zeros_before = |b: usize| -> u64 {
            let bits_before = ((b * BLOCK_WORDS * 64) as u64).min(self.len);
            bits_before - self.blocks[b] as u64
        };
        let mut lo = 0usize;
        let mut hi = self.blocks.len() - 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if zeros_before(mid + 1) < k {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let mut need = k - zeros_before(lo);
        let start = lo * BLOCK_WORDS;
        for wi in start..self.words.len() {
            // Bits past len are stored as zeros but must not be counted;
            // they can only appear in the very last word.
            let w = !self.words[wi];
            let valid = (self.len as usize).saturating_sub(wi * 64).min(64);
            let w = if valid == 64 { w } else { w & ((1u64 << valid) - 1) };
            let c = w.count_ones() as u64;
            if need <= c {
                let bit = select_in_word(w, need as u32);
                return Some((wi * 64 + bit as usize) as u64 + 1);
            }
            need -= c;
        }
        unreachable!("directory said the zero exists");
    }

    pub fn serialize(&self, buf: &mut Vec<u8>) {
        wire::put_u64(buf, self.len);
        wire::put_u64(buf, self.ones);
        wire::put_u64_slice(buf, &self.words);
        wire::put_u32_slice(buf, &self.blocks);
    }

    pub fn deserialize(r: &mut Reader) -> Result<Self> {
        let len = r.get_u64()?;
        let ones = r.get_u64()?;
        let words = r.get_u64_slice()?;
        let blocks = r.get_u32_slice()?;
        if words.len() != (len as usize).div_ceil(64) {
            return Err(Error::Format("bitvector word count mismatch".into()));
        }
        let expect_blocks = words.len().div_ceil(BLOCK_WORDS) + 1;
        if blocks.len() != expect_blocks.max(1) {
            return Err(Error::Format("bitvector directory length mismatch".into()));
        }
        if *blocks.last().unwrap() as u64 != ones {
            return Err(Error::Format("bitvector popcount mismatch".into()));
        }
        Ok(Bitvector { len, ones, words, blocks })
    }
}

/// 0-based index of the k-th set bit of `w` (k is 1-based, must exist).
#[inline]
fn select_in_word(w: u64, k: u32) -> u32 {
    debug_assert!(k >= 1 && k <= w.count_ones());
    let mut remaining = k;
    let mut base = 0u32;
    let mut cur = w;
    // Narrow byte by byte, then bit by bit.
    loop {
        let c = (cur & 0xFF).count_ones();
        if remaining <= c {
            let mut byte = cur & 0xFF;
            let mut idx = base;
            loop {
                if byte & 1 == 1 {
                    remaining -= 1;
                    if remaining == 0 {
                        return idx;
                    }
                }
                byte >>= 1;
                idx += 1;
            }
        }
        remaining -= c;
        cur >>= 8;
        base += 8;
    }
}
