//! Ordinal tree over a balanced-parentheses sequence.
//!
//! The paren bits (1 = open) are backed by a range-min-max block tree:
//! 512-bit blocks summarized by (excess delta, min prefix excess, max prefix
//! excess), combined in a flat power-of-two segment tree. `fwdsearch` /
//! `bwdsearch` / range-min run in O(block + log blocks) with byte lookup
//! tables inside blocks; every value between a walk's min and max is attained
//! because excess moves in unit steps, so interval checks are exact.
//!
//! Nodes are identified by preorder rank (1-based, root = 1), positions by
//! 1-based paren index. `excess(i)` is the open-minus-close balance of the
//! first `i` parens; `excess(0) = 0`. `depth(root) = 0`.

use crate::error::{Error, Result};
use crate::succinct::bitvector::Bitvector;
use crate::succinct::wire::{self, Reader};

const BLOCK_BITS: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rmm {
    delta: i32,
    min: i32,
    max: i32,
}

/// Neutral element: empty padding blocks never match an interval check.
const IDENTITY: Rmm = Rmm { delta: 0, min: i32::MAX, max: i32::MIN };

#[inline]
fn combine(a: Rmm, b: Rmm) -> Rmm {
    Rmm {
        delta: a.delta + b.delta,
        min: a.min.min(a.delta.saturating_add(b.min)),
        max: a.max.max(a.delta.saturating_add(b.max)),
    }
}

struct ByteTables {
    delta: [i8; 256],
    min: [i8; 256],
    max: [i8; 256],
}

const fn build_tables() -> ByteTables {
    let mut t = ByteTables { delta: [0; 256], min: [0; 256], max: [0; 256] };
    let mut b = 0usize;
    while b < 256 {
        let mut e: i8 = 0;
        let mut mn: i8 = 8;
        let mut mx: i8 = -8;
        let mut i = 0;
        while i < 8 {
            e += if (b >> i) & 1 == 1 { 1 } else { -1 };
            if e < mn {
                mn = e;
            }
            if e > mx {
                mx = e;
            }
            i += 1;
        }
        t.delta[b] = e;
        t.min[b] = mn;
        t.max[b] = mx;
        b += 1;
    }
    t
}

static TABLES: ByteTables = build_tables();

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpTree {
    bits: Bitvector,
    /// Over preorder ids 1..=k: 1 when the node is a leaf.
    leafbits: Bitvector,
    /// Number of leaves of the flat segment tree (power of two >= blocks).
    p2: usize,
    /// 1-indexed flat segment tree; `tree[p2 + b]` summarizes block `b`.
    tree: Vec<Rmm>,
}

impl BpTree {
    /// Build from a paren sequence (true = open). The sequence must describe
    /// one tree: balanced, and the excess stays positive strictly inside.
    pub fn from_parens(parens: &[bool]) -> Result<Self> {
        if parens.is_empty() || parens.len() % 2 != 0 {
            return Err(Error::Invariant(format!(
                "paren sequence length {} is not a positive even number",
                parens.len()
            )));
        }
        let mut excess: i64 = 0;
        for (i, &b) in parens.iter().enumerate() {
            excess += if b { 1 } else { -1 };
            if excess <= 0 && i + 1 != parens.len() {
                return Err(Error::Invariant(format!(
                    "paren sequence describes a forest or is unbalanced at position {}",
                    i + 1
                )));
            }
        }
        if excess != 0 {
            return Err(Error::Invariant("unbalanced paren sequence".into()));
        }
        let leaf_flags: Vec<bool> = (0..parens.len())
            .filter(|&i| parens[i])
            .map(|i| i + 1 == parens.len() || !parens[i + 1])
            .collect();
        let bits = Bitvector::from_bools(parens);
        let leafbits = Bitvector::from_bools(&leaf_flags);
        let (p2, tree) = Self::build_block_tree(&bits);
        Ok(BpTree { bits, leafbits, p2, tree })
    }

    fn build_block_tree(bits: &Bitvector) -> (usize, Vec<Rmm>) {
        let nblocks = ((bits.len() + BLOCK_BITS - 1) / BLOCK_BITS).max(1) as usize;
        let p2 = nblocks.next_power_of_two();
        let mut tree = vec![IDENTITY; 2 * p2];
        for b in 0..nblocks {
            tree[p2 + b] = Self::summarize_block(bits, b);
        }
        for i in (1..p2).rev() {
            tree[i] = combine(tree[2 * i], tree[2 * i + 1]);
        }
        (p2, tree)
    }

    fn summarize_block(bits: &Bitvector, b: usize) -> Rmm {
        let lo = b as u64 * BLOCK_BITS + 1;
        let hi = ((b as u64 + 1) * BLOCK_BITS).min(bits.len());
        let mut cur = Rmm { delta: 0, min: i32::MAX, max: i32::MIN };
        let mut p = lo;
        while p + 7 <= hi {
            let byte = Self::byte_at(bits, p);
            let step = Rmm {
                delta: TABLES.delta[byte as usize] as i32,
                min: TABLES.min[byte as usize] as i32,
                max: TABLES.max[byte as usize] as i32,
            };
            cur = combine(cur, step);
            p += 8;
        }
        while p <= hi {
            let step = if bits.get(p) { 1 } else { -1 };
            cur = combine(cur, Rmm { delta: step, min: step, max: step });
            p += 1;
        }
        cur
    }

    /// The byte of bits at positions p..p+7; p must be byte-aligned
    /// (p = 8q + 1) and fully inside the vector.
    #[inline]
    fn byte_at(bits: &Bitvector, p: u64) -> u8 {
        let idx = (p - 1) as usize;
        ((bits.words()[idx / 64] >> (idx % 64)) & 0xFF) as u8
    }

    pub fn num_nodes(&self) -> u64 {
        self.leafbits.len()
    }

    pub fn num_leaves(&self) -> u64 {
        self.leafbits.count_ones()
    }

    pub fn paren_len(&self) -> u64 {
        self.bits.len()
    }

    #[inline]
    pub fn excess(&self, i: u64) -> i64 {
        2 * self.bits.rank1(i) as i64 - i as i64
    }

    /// Paren position of node x (the x-th open paren).
    #[inline]
    pub fn preorder_select(&self, x: u64) -> Option<u64> {
        self.bits.select1(x)
    }

    /// Preorder rank of the node whose open paren is at position p.
    #[inline]
    pub fn preorder_rank(&self, p: u64) -> u64 {
        self.bits.rank1(p)
    }

    #[inline]
    fn pos(&self, x: u64) -> u64 {
        self.bits.select1(x).expect("node id out of range")
    }

    /// Smallest j > i with excess(j) = excess(i) + d.
    pub fn fwdsearch(&self, i: u64, d: i64) -> Option<u64> {
        let n = self.bits.len();
        debug_assert!(i <= n);
        let t = self.excess(i) + d;
        let b0 = (i / BLOCK_BITS) as usize; // block of position i + 1
        let block_end = ((b0 as u64 + 1) * BLOCK_BITS).min(n);
        let mut cur = self.excess(i);
        if i + 1 <= block_end {
            match self.scan_fwd(i + 1, block_end, cur, t) {
                Ok(p) => return Some(p),
                Err(e) => cur = e,
            }
        }
        // Climb: whenever we sit in a left child, the right sibling covers
        // the blocks immediately after the range scanned so far.
        let mut node = self.p2 + b0;
        while node > 1 {
            if node % 2 == 0 {
                let sib = self.tree[node + 1];
                if t >= cur.saturating_add(sib.min as i64) && t <= cur.saturating_add(sib.max as i64)
                {
                    return Some(self.descend_leftmost(node + 1, cur, t));
                }
                cur += sib.delta as i64;
            }
            node /= 2;
        }
        None
    }

    fn descend_leftmost(&self, mut node: usize, mut cur: i64, t: i64) -> u64 {
        while node < self.p2 {
            let l = self.tree[2 * node];
            if t >= cur.saturating_add(l.min as i64) && t <= cur.saturating_add(l.max as i64) {
                node = 2 * node;
            } else {
                cur += l.delta as i64;
                node = 2 * node + 1;
            }
        }
        let b = (node - self.p2) as u64;
        let lo = b * BLOCK_BITS + 1;
        let hi = ((b + 1) * BLOCK_BITS).min(self.bits.len());
        match self.scan_fwd(lo, hi, cur, t) {
            Ok(p) => p,
            Err(_) => unreachable!("block summary promised a hit"),
        }
    }

    /// Scan positions lo..=hi; Ok(first position with excess == t) or
    /// Err(excess at hi).
    fn scan_fwd(&self, lo: u64, hi: u64, mut cur: i64, t: i64) -> std::result::Result<u64, i64> {
        let mut p = lo;
        while p <= hi && (p - 1) % 8 != 0 {
            cur += if self.bits.get(p) { 1 } else { -1 };
            if cur == t {
                return Ok(p);
            }
            p += 1;
        }
        while p + 7 <= hi {
            let byte = Self::byte_at(&self.bits, p);
            let mn = TABLES.min[byte as usize] as i64;
            let mx = TABLES.max[byte as usize] as i64;
            if t >= cur + mn && t <= cur + mx {
                for q in p..p + 8 {
                    cur += if self.bits.get(q) { 1 } else { -1 };
                    if cur == t {
                        return Ok(q);
                    }
                }
                unreachable!("byte table promised a hit");
            }
            cur += TABLES.delta[byte as usize] as i64;
            p += 8;
        }
        while p <= hi {
            cur += if self.bits.get(p) { 1 } else { -1 };
            if cur == t {
                return Ok(p);
            }
            p += 1;
        }
        Err(cur)
    }

    /// Largest j < i with excess(j) = excess(i) + d (j may be 0).
    pub fn bwdsearch(&self, i: u64, d: i64) -> Option<u64> {
        debug_assert!(i >= 1 && i <= self.bits.len());
        let ei = self.excess(i);
        let t = ei + d;
        let bi = ((i - 1) / BLOCK_BITS) as usize; // block of position i
        let lo = bi as u64 * BLOCK_BITS + 1;
        if i > lo {
            // excess(i - 1)
            let prev = ei - if self.bits.get(i) { 1 } else { -1 };
            if let Some(j) = self.scan_bwd(lo, i - 1, prev, t) {
                return Some(j);
            }
        }
        // cur = excess at the start boundary of the current node's range
        let mut cur = self.excess(bi as u64 * BLOCK_BITS);
        let mut node = self.p2 + bi;
        while node > 1 {
            if node % 2 == 1 {
                let sib = self.tree[node - 1];
                let sib_start = cur - sib.delta as i64;
                if t >= sib_start.saturating_add(sib.min as i64)
                    && t <= sib_start.saturating_add(sib.max as i64)
                {
                    return Some(self.descend_rightmost(node - 1, sib_start, t));
                }
                cur = sib_start;
            }
            node /= 2;
        }
        if t == 0 {
            return Some(0); // the virtual boundary before the sequence
        }
        None
    }

    fn descend_rightmost(&self, mut node: usize, mut cur: i64, t: i64) -> u64 {
        while node < self.p2 {
            let l = self.tree[2 * node];
            let r = self.tree[2 * node + 1];
            let r_start = cur + l.delta as i64;
            if t >= r_start.saturating_add(r.min as i64) && t <= r_start.saturating_add(r.max as i64)
            {
                cur = r_start;
                node = 2 * node + 1;
            } else {
                node = 2 * node;
            }
        }
        let b = (node - self.p2) as u64;
        let lo = b * BLOCK_BITS + 1;
        let hi = ((b + 1) * BLOCK_BITS).min(self.bits.len());
        let top = cur + self.tree[node].delta as i64; // excess(hi)
        self.scan_bwd(lo, hi, top, t)
            .expect("block summary promised a hit")
    }

    /// Largest j in lo..=hi with excess(j) == t; cur = excess(hi).
    fn scan_bwd(&self, lo: u64, hi: u64, mut cur: i64, t: i64) -> Option<u64> {
        let mut q = hi;
        loop {
            if cur == t {
                return Some(q);
            }
            if q == lo {
                return None;
            }
            cur -= if self.bits.get(q) { 1 } else { -1 };
            q -= 1;
        }
    }

    /// Minimum excess over positions i..=j.
    fn min_excess_in(&self, i: u64, j: u64) -> i64 {
        debug_assert!(i >= 1 && i <= j && j <= self.bits.len());
        let bi = ((i - 1) / BLOCK_BITS) as usize;
        let bj = ((j - 1) / BLOCK_BITS) as usize;
        let mut cur = self.excess(i - 1);
        let mut best = i64::MAX;
        let scan = |lo: u64, hi: u64, cur: &mut i64, best: &mut i64| {
            for p in lo..=hi {
                *cur += if self.bits.get(p) { 1 } else { -1 };
                *best = (*best).min(*cur);
            }
        };
        if bi == bj {
            scan(i, j, &mut cur, &mut best);
            return best;
        }
        scan(i, (bi as u64 + 1) * BLOCK_BITS, &mut cur, &mut best);
        if bi + 1 < bj {
            let (delta, relmin) = self.query_blocks(1, 0, self.p2, bi + 1, bj);
            best = best.min(cur + relmin);
            cur += delta;
        }
        scan(bj as u64 * BLOCK_BITS + 1, j, &mut cur, &mut best);
        best
    }

    /// (delta, min prefix excess) over blocks ql..qr, left-to-right order.
    fn query_blocks(&self, node: usize, lo: usize, hi: usize, ql: usize, qr: usize) -> (i64, i64) {
        if ql <= lo && hi <= qr {
            let s = self.tree[node];
            return (s.delta as i64, s.min as i64);
        }
        let mid = (lo + hi) / 2;
        if qr <= mid {
            return self.query_blocks(2 * node, lo, mid, ql, qr);
        }
        if ql >= mid {
            return self.query_blocks(2 * node + 1, mid, hi, ql, qr);
        }
        let (dl, ml) = self.query_blocks(2 * node, lo, mid, ql, qr);
        let (dr, mr) = self.query_blocks(2 * node + 1, mid, hi, ql, qr);
        (dl + dr, ml.min(dl + mr))
    }

    /// Position of the close paren matching the open paren at p.
    #[inline]
    pub fn findclose(&self, p: u64) -> u64 {
        debug_assert!(self.bits.get(p), "findclose on a close paren");
        self.fwdsearch(p, -1).expect("balanced sequence")
    }

    /// Position of the open paren matching the close paren at q.
    #[inline]
    pub fn findopen(&self, q: u64) -> u64 {
        debug_assert!(!self.bits.get(q), "findopen on an open paren");
        self.bwdsearch(q, 0).expect("balanced sequence") + 1
    }

    // ----- node-level operations; x and y are preorder ids -----

    pub fn parent(&self, x: u64) -> Option<u64> {
        if x == 1 {
            return None;
        }
        let p = self.pos(x);
        let j = self.bwdsearch(p, -2).expect("non-root node has a parent");
        Some(self.preorder_rank(j + 1))
    }

    pub fn isleaf(&self, x: u64) -> bool {
        self.leafbits.get(x)
    }

    pub fn firstchild(&self, x: u64) -> Option<u64> {
        if self.isleaf(x) {
            None
        } else {
            Some(x + 1) // preorder: first child follows its parent
        }
    }

    pub fn lastchild(&self, x: u64) -> Option<u64> {
        if self.isleaf(x) {
            return None;
        }
        let c = self.findclose(self.pos(x));
        Some(self.preorder_rank(self.findopen(c - 1)))
    }

    pub fn nextsibling(&self, x: u64) -> Option<u64> {
        let c = self.findclose(self.pos(x));
        if c + 1 <= self.bits.len() && self.bits.get(c + 1) {
            Some(self.preorder_rank(c + 1))
        } else {
            None
        }
    }

    pub fn prevsibling(&self, x: u64) -> Option<u64> {
        let p = self.pos(x);
        if p > 1 && !self.bits.get(p - 1) {
            Some(self.preorder_rank(self.findopen(p - 1)))
        } else {
            None
        }
    }

    /// Root has depth 0.
    pub fn depth(&self, x: u64) -> u64 {
        (self.excess(self.pos(x)) - 1) as u64
    }

    pub fn subtreesize(&self, x: u64) -> u64 {
        let p = self.pos(x);
        (self.findclose(p) - p + 1) / 2
    }

    /// Number of leaves with preorder id <= x (x may be 0).
    pub fn leaf_rank(&self, x: u64) -> u64 {
        self.leafbits.rank1(x)
    }

    /// Preorder id of the i-th leaf.
    pub fn leaf_select(&self, i: u64) -> Option<u64> {
        self.leafbits.select1(i)
    }

    pub fn leftmost_leaf(&self, x: u64) -> u64 {
        self.leaf_select(self.leaf_rank(x - 1) + 1)
            .expect("every subtree contains a leaf")
    }

    pub fn rightmost_leaf(&self, x: u64) -> u64 {
        self.leaf_select(self.leaf_rank(x + self.subtreesize(x) - 1))
            .expect("every subtree contains a leaf")
    }

    pub fn lca(&self, x: u64, y: u64) -> u64 {
        if x == y {
            return x;
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if b < a + self.subtreesize(a) {
            return a; // a is an ancestor of b (preorder containment)
        }
        let pa = self.pos(a);
        let pb = self.pos(b);
        let m = self.min_excess_in(pa, pb);
        // Rightmost position with the min excess is the close of the lca
        // child preceding the one that contains b.
        let r = self
            .bwdsearch(pb, m - self.excess(pb))
            .expect("min excess is attained in range");
        let j = self.bwdsearch(r + 1, -2).expect("lca exists");
        self.preorder_rank(j + 1)
    }

    pub fn serialize(&self, buf: &mut Vec<u8>) {
        self.bits.serialize(buf);
        self.leafbits.serialize(buf);
        let flat: Vec<i32> = self
            .tree
            .iter()
            .flat_map(|r| [r.delta, r.min, r.max])
            .collect();
        wire::put_i32_slice(buf, &flat);
    }

    pub fn deserialize(r: &mut Reader) -> Result<Self> {
        let bits = Bitvector::deserialize(r)?;
        let leafbits = Bitvector::deserialize(r)?;
        let flat = r.get_i32_slice()?;
        let nblocks = ((bits.len() + BLOCK_BITS - 1) / BLOCK_BITS).max(1) as usize;
        let p2 = nblocks.next_power_of_two();
        if flat.len() != 2 * p2 * 3 {
            return Err(Error::Format("bp block tree length mismatch".into()));
        }
        if bits.count_ones() != leafbits.len() || bits.count_ones() * 2 != bits.len() {
            return Err(Error::Format("bp paren/leaf bit counts inconsistent".into()));
        }
        let tree: Vec<Rmm> = flat
            .chunks_exact(3)
            .map(|c| Rmm { delta: c[0], min: c[1], max: c[2] })
            .collect();
        Ok(BpTree { bits, leafbits, p2, tree })
    }
}
