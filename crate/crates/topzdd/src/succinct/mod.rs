//! Succinct storage substrate: bitvectors, packed arrays, and a
//! balanced-parentheses tree.
//!
//! Index conventions: bit positions and rank/select arguments are 1-based,
//! `rank(0) = 0`, `select(k)` expects `k >= 1` and returns `None` past the
//! end. Packed integer arrays are plain arrays and index from 0.

pub mod bitvector;
pub mod bp;
pub mod packed;
pub mod sparse;
pub mod wire;

pub use bitvector::Bitvector;
pub use bp::BpTree;
pub use packed::PackedIntArray;
pub use sparse::{FlippedSparse, SparseBitvector};

use crate::error::{Error, Result};
use wire::Reader;

/// Below this length the sparse representations' fixed metadata outweighs
/// any density win, so `bv_auto` sticks to the plain layout.
const SPARSE_MIN_LEN: u64 = 256;

/// A bitvector whose physical representation was picked by density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bv {
    Plain(Bitvector),
    Sparse(SparseBitvector),
    Flipped(FlippedSparse),
}

/// Pick a representation: fewer than 1/4 ones -> positions of ones
/// (Elias-Fano); fewer than 1/4 zeros -> positions of zeros; otherwise plain.
pub fn bv_auto(bits: &[bool]) -> Bv {
    let len = bits.len() as u64;
    let ones = bits.iter().filter(|&&b| b).count() as u64;
    let zeros = len - ones;
    if len >= SPARSE_MIN_LEN && ones * 4 < len {
        let pos: Vec<u64> = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u64 + 1))
            .collect();
        Bv::Sparse(SparseBitvector::from_ones(len, &pos))
    } else if len >= SPARSE_MIN_LEN && zeros * 4 < len {
        let pos: Vec<u64> = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (!b).then_some(i as u64 + 1))
            .collect();
        Bv::Flipped(FlippedSparse::from_zeros(len, &pos))
    } else {
        Bv::Plain(Bitvector::from_bools(bits))
    }
}

impl Bv {
    pub fn len(&self) -> u64 {
        match self {
            Bv::Plain(b) => b.len(),
            Bv::Sparse(b) => b.len(),
            Bv::Flipped(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count_ones(&self) -> u64 {
        match self {
            Bv::Plain(b) => b.count_ones(),
            Bv::Sparse(b) => b.count_ones(),
            Bv::Flipped(b) => b.count_ones(),
        }
    }

    pub fn get(&self, i: u64) -> bool {
        match self {
            Bv::Plain(b) => b.get(i),
            Bv::Sparse(b) => b.get(i),
            Bv::Flipped(b) => b.get(i),
        }
    }

    pub fn rank1(&self, i: u64) -> u64 {
        match self {
            Bv::Plain(b) => b.rank1(i),
            Bv::Sparse(b) => b.rank1(i),
            Bv::Flipped(b) => b.rank1(i),
        }
    }

    pub fn rank0(&self, i: u64) -> u64 {
        i - self.rank1(i)
    }

    pub fn select1(&self, k: u64) -> Option<u64> {
        match self {
            Bv::Plain(b) => b.select1(k),
            Bv::Sparse(b) => b.select1(k),
            Bv::Flipped(b) => b.select1(k),
        }
    }

    pub fn select0(&self, k: u64) -> Option<u64> {
        match self {
            Bv::Plain(b) => b.select0(k),
            Bv::Sparse(b) => b.select0(k),
            Bv::Flipped(b) => b.select0(k),
        }
    }

    /// Name of the representation actually chosen, for reports.
    pub fn variant(&self) -> &'static str {
        match self {
            Bv::Plain(_) => "plain",
            Bv::Sparse(_) => "sparse1",
            Bv::Flipped(_) => "sparse0",
        }
    }

    pub fn serialize(&self, buf: &mut Vec<u8>) {
        match self {
            Bv::Plain(b) => {
                wire::put_u8(buf, 0);
                b.serialize(buf);
            }
            Bv::Sparse(b) => {
                wire::put_u8(buf, 1);
                b.serialize(buf);
            }
            Bv::Flipped(b) => {
                wire::put_u8(buf, 2);
                b.serialize(buf);
            }
        }
    }

    pub fn deserialize(r: &mut Reader) -> Result<Self> {
        match r.get_u8()? {
            0 => Ok(Bv::Plain(Bitvector::deserialize(r)?)),
            1 => Ok(Bv::Sparse(SparseBitvector::deserialize(r)?)),
            2 => Ok(Bv::Flipped(FlippedSparse::deserialize(r)?)),
            t => Err(Error::Format(format!("unknown bitvector tag {t}"))),
        }
    }
}
