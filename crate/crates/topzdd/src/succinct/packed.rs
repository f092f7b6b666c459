//! Fixed-width packed integer array.
//!
//! Width is `floor(log2(max)) + 1` bits per element (1 bit when every value
//! is zero). Unlike the bit structures this is an array, so `get` takes a
//! 0-based index like `Vec`.

use crate::error::{Error, Result};
use crate::succinct::wire::{self, Reader};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedIntArray {
    len: usize,
    width: u32,
    words: Vec<u64>,
}

impl PackedIntArray {
    pub fn from_slice(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        let width = if max == 0 { 1 } else { 64 - max.leading_zeros() };
        Self::with_width(values, width)
    }

    pub fn with_width(values: &[u64], width: u32) -> Self {
        assert!(width >= 1 && width <= 64);
        let total_bits = values.len() as u64 * width as u64;
        let mut words = vec![0u64; (total_bits as usize).div_ceil(64)];
        for (i, &v) in values.iter().enumerate() {
            debug_assert!(width == 64 || v < (1u64 << width), "value {v} exceeds width {width}");
            let bit = i as u64 * width as u64;
            let w = (bit / 64) as usize;
            let off = (bit % 64) as u32;
            words[w] |= v << off;
            if off + width > 64 {
                words[w + 1] |= v >> (64 - off);
            }
        }
        PackedIntArray { len: values.len(), width, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Value at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len, "index {i} out of 0..{}", self.len);
        let bit = i as u64 * self.width as u64;
        let w = (bit / 64) as usize;
        let off = (bit % 64) as u32;
        let mask = if self.width == 64 { u64::MAX } else { (1u64 << self.width) - 1 };
        let mut v = self.words[w] >> off;
        if off + self.width > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        v & mask
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn serialize(&self, buf: &mut Vec<u8>) {
        wire::put_u64(buf, self.len as u64);
        wire::put_u8(buf, self.width as u8);
        wire::put_u64_slice(buf, &self.words);
    }

    pub fn deserialize(r: &mut Reader) -> Result<Self> {
        let len = r.get_u64()? as usize;
        let width = r.get_u8()? as u32;
        if !(1..=64).contains(&width) {
            return Err(Error::Format(format!("packed array width {width}")));
        }
        let words = r.get_u64_slice()?;
        let expect = (len as u64 * width as u64).div_ceil(64) as usize;
        if words.len() != expect {
            return Err(Error::Format("packed array word count mismatch".into()));
        }
        Ok(PackedIntArray { len, width, words })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_of_zeroes_is_one() {
        let a = PackedIntArray::from_slice(&[0, 0, 0]);
        assert_eq!(a.width(), 1);
        assert_eq!(a.get(2), 0);
    }

    #[test]
    fn cross_word_boundaries() {
        // width 17 guarantees elements straddling word boundaries
        let values: Vec<u64> = (0..300).map(|i| (i * 12345) % (1 << 17)).collect();
        let a = PackedIntArray::from_slice(&values);
        assert_eq!(a.width(), 17);
        for (i, &v) in values.iter().enumerate() {
            assert_eq!(a.get(i), v, "index {i}");
        }
    }

    #[test]
    fn large_values_round_trip() {
        let values = [0u64, 1, (1 << 48) - 1, 12_345_678_901_234, 3];
        let a = PackedIntArray::from_slice(&values);
        assert_eq!(a.width(), 48);
        for (i, &v) in values.iter().enumerate() {
            assert_eq!(a.get(i), v);
        }
        let mut buf = Vec::new();
        a.serialize(&mut buf);
        let mut r = Reader::new(&buf);
        let b = PackedIntArray::deserialize(&mut r).unwrap();
        r.finish().unwrap();
        assert_eq!(a, b);
    }
}
