//! Elias-Fano coded bitvectors for skewed densities.
//!
//! [`SparseBitvector`] stores the positions of the ones; `select1` is
//! constant-time up to the inner select, while `rank1`, `get` and `select0`
//! pay a logarithmic binary search, which is fine for the access patterns of
//! the container (selects dominate). [`FlippedSparse`] stores the complement
//! and swaps the roles of ones and zeros, for vectors that are mostly ones.
//!
//! Positions are 1-based like everywhere else in [`crate::succinct`].

use crate::error::{Error, Result};
use crate::succinct::bitvector::Bitvector;
use crate::succinct::packed::PackedIntArray;
use crate::succinct::wire::{self, Reader};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBitvector {
    len: u64,
    ones: u64,
    low_width: u32,
    lows: PackedIntArray,
    highs: Bitvector,
}

impl SparseBitvector {
    /// Build from the sorted, strictly increasing 1-based positions of ones.
    pub fn from_ones(len: u64, positions: &[u64]) -> Self {
        let m = positions.len() as u64;
        for (i, &p) in positions.iter().enumerate() {
            assert!(p >= 1 && p <= len, "one position {p} out of 1..={len}");
            assert!(i == 0 || positions[i - 1] < p, "positions must be strictly increasing");
        }
        if m == 0 {
            return SparseBitvector {
                len,
                ones: 0,
                low_width: 0,
                lows: PackedIntArray::from_slice(&[]),
                highs: Bitvector::from_bools(&[]),
            };
        }
        let low_width = (len / m).ilog2(); // len/m >= 1
        let mask = if low_width == 0 { 0 } else { (1u64 << low_width) - 1 };
        let lows_vals: Vec<u64> = positions.iter().map(|&p| (p - 1) & mask).collect();
        let lows = PackedIntArray::with_width(&lows_vals, low_width.max(1));
        let groups = ((len - 1) >> low_width) + 1;
        let high_len = (m + groups) as usize;
        let mut high_bits = vec![false; high_len];
        for (k, &p) in positions.iter().enumerate() {
            let h = (p - 1) >> low_width;
            high_bits[h as usize + k] = true;
        }
        let highs = Bitvector::from_bools(&high_bits);
        SparseBitvector { len, ones: m, low_width, lows, highs }
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

    pub fn select1(&self, k: u64) -> Option<u64> {
        if k == 0 || k > self.ones {
            return None;
        }
        let pos = self.highs.select1(k).unwrap();
        let high = pos - k; // zeros before the k-th one = its group index
        let low = self.lows.get(k as usize - 1);
        Some(((high << self.low_width) | low) + 1)
    }

    pub fn rank1(&self, i: u64) -> u64 {
        debug_assert!(i <= self.len);
        if i == 0 || self.ones == 0 {
            return 0;
        }
        let p = i - 1; // 0-based position; count ones at 0-based <= p
        let h = p >> self.low_width;
        let low_p = if self.low_width == 0 { 0 } else { p & ((1u64 << self.low_width) - 1) };
        // ones strictly before group h
        let before = if h == 0 { 0 } else { self.highs.select0(h).unwrap() - h };
        // ones within group h (might be none; the group's terminating zero
        // always exists because groups cover the whole universe)
        let through = self.highs.select0(h + 1).unwrap() - (h + 1);
        let (mut lo, mut hi) = (before, through); // 0-based k range of group h
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.lows.get(mid as usize) <= low_p {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    pub fn rank0(&self, i: u64) -> u64 {
        i - self.rank1(i)
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        self.rank1(i) - self.rank1(i - 1) == 1
    }

    pub fn select0(&self, k: u64) -> Option<u64> {
        if k == 0 || k > self.count_zeros() {
            return None;
        }
        // rank0 is monotone; find the smallest i with rank0(i) == k.
        let (mut lo, mut hi) = (1u64, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.rank0(mid) < k {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }

    pub fn serialize(&self, buf: &mut Vec<u8>) {
        wire::put_u64(buf, self.len);
        wire::put_u64(buf, self.ones);
        wire::put_u8(buf, self.low_width as u8);
        self.lows.serialize(buf);
        self.highs.serialize(buf);
    }

    pub fn deserialize(r: &mut Reader) -> Result<Self> {
        let len = r.get_u64()?;
        let ones = r.get_u64()?;
        let low_width = r.get_u8()? as u32;
        if low_width > 63 {
            return Err(Error::Format(format!("sparse low width {low_width}")));
        }
        let lows = PackedIntArray::deserialize(r)?;
        let highs = Bitvector::deserialize(r)?;
        if ones > len || lows.len() as u64 != ones || highs.count_ones() != ones {
            return Err(Error::Format("sparse bitvector inconsistent".into()));
        }
        Ok(SparseBitvector { len, ones, low_width, lows, highs })
    }
}

/// Complement wrapper: efficient when the vector is mostly ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlippedSparse {
    inner: SparseBitvector,
}

impl FlippedSparse {
    /// Build from the sorted 1-based positions of ZEROS.
    pub fn from_zeros(len: u64, zero_positions: &[u64]) -> Self {
        FlippedSparse { inner: SparseBitvector::from_ones(len, zero_positions) }
    }

    pub fn len(&self) -> u64 {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn count_ones(&self) -> u64 {
        self.inner.count_zeros()
    }

    pub fn count_zeros(&self) -> u64 {
        self.inner.count_ones()
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        !self.inner.get(i)
    }

    pub fn rank1(&self, i: u64) -> u64 {
        i - self.inner.rank1(i)
    }

    pub fn rank0(&self, i: u64) -> u64 {
        self.inner.rank1(i)
    }

    pub fn select1(&self, k: u64) -> Option<u64> {
        self.inner.select0(k)
    }

    pub fn select0(&self, k: u64) -> Option<u64> {
        self.inner.select1(k)
    }

    pub fn serialize(&self, buf: &mut Vec<u8>) {
        self.inner.serialize(buf);
    }

    pub fn deserialize(r: &mut Reader) -> Result<Self> {
        Ok(FlippedSparse { inner: SparseBitvector::deserialize(r)? })
    }
}
