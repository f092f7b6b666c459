//! Pointer-based ZDD store: the uncompressed representation.
//!
//! Nodes live in an append-only arena with a uniqueness table, so equal
//! (label, zero-child, one-child) triples share one handle and the two
//! reduction rules hold by construction: a node whose one-child is bottom is
//! never materialized, and no two distinct handles carry the same triple.
//! Labels grow strictly along both edges (ordered ZDD); terminals act as
//! label c+1.
//!
//! The store doubles as the reference semantics for everything the
//! compressed form must reproduce: `preorder_edge_list` is the edge-exact
//! oracle the decompressor is tested against, with nodes renamed to their
//! spanning-tree preorder (root = 1, zero-subtree explored before
//! one-subtree, terminals excluded).

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Handle into a [`ZddStore`]. 0 and 1 are the terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node(u32);

impl Node {
    pub const BOTTOM: Node = Node(0);
    pub const TOP: Node = Node(1);

    pub fn is_terminal(self) -> bool {
        self.0 <= 1
    }

    pub fn raw(self) -> u32 {
        self.0
    }
}

/// Destination of an edge in the preorder-renamed view of a ZDD.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Spanning-tree preorder id of a branching node (1-based).
    Node(u32),
    Bottom,
    Top,
}

/// One branching node in the preorder-renamed view: (label, zero, one).
pub type PreorderNode = (u32, Target, Target);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Union,
    Intersection,
    Difference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct NodeData {
    label: u32,
    lo: Node,
    hi: Node,
}

#[derive(Debug, Default)]
pub struct ZddStore {
    c: u32,
    nodes: Vec<NodeData>,
    unique: HashMap<NodeData, Node>,
    apply_memo: HashMap<(Op, Node, Node), Node>,
}

impl ZddStore {
    pub fn new(c: u32) -> Self {
        ZddStore { c, nodes: Vec::new(), unique: HashMap::new(), apply_memo: HashMap::new() }
    }

    /// Universe size: labels range over 1..=c.
    pub fn c(&self) -> u32 {
        self.c
    }

    /// Number of branching nodes ever created (not all need be reachable
    /// from a given root).
    pub fn arena_len(&self) -> usize {
        self.nodes.len()
    }

    fn data(&self, n: Node) -> NodeData {
        debug_assert!(!n.is_terminal());
        self.nodes[n.0 as usize - 2]
    }

    /// Label of a node; terminals report c+1 so label comparisons are total.
    pub fn label(&self, n: Node) -> u32 {
        if n.is_terminal() {
            self.c + 1
        } else {
            self.data(n).label
        }
    }

    pub fn lo(&self, n: Node) -> Node {
        self.data(n).lo
    }

    pub fn hi(&self, n: Node) -> Node {
        self.data(n).hi
    }

    /// Hash-consed constructor. Applies the zero-suppression rule (one-child
    /// bottom collapses to the zero-child) and enforces label ordering.
    pub fn make_node(&mut self, label: u32, lo: Node, hi: Node) -> Result<Node> {
        if label < 1 || label > self.c {
            return Err(Error::Invariant(format!(
                "label {label} outside universe 1..={}",
                self.c
            )));
        }
        if label >= self.label(lo) || label >= self.label(hi) {
            return Err(Error::Invariant(format!(
                "label {label} not above children labels {} and {}",
                self.label(lo),
                self.label(hi)
            )));
        }
        if hi == Node::BOTTOM {
            return Ok(lo);
        }
        let data = NodeData { label, lo, hi };
        if let Some(&n) = self.unique.get(&data) {
            return Ok(n);
        }
        let n = Node(self.nodes.len() as u32 + 2);
        self.nodes.push(data);
        self.unique.insert(data, n);
        Ok(n)
    }

    /// Binary set operation, memoized across calls.
    pub fn apply(&mut self, op: Op, f: Node, g: Node) -> Node {
        // terminal and identity shortcuts
        match op {
            Op::Union => {
                if f == g || g == Node::BOTTOM {
                    return f;
                }
                if f == Node::BOTTOM {
                    return g;
                }
            }
            Op::Intersection => {
                if f == g {
                    return f;
                }
                if f == Node::BOTTOM || g == Node::BOTTOM {
                    return Node::BOTTOM;
                }
            }
            Op::Difference => {
                if f == Node::BOTTOM || g == Node::BOTTOM {
                    return f;
                }
                if f == g {
                    return Node::BOTTOM;
                }
            }
        }
        if f == Node::TOP && g == Node::TOP {
            return match op {
                Op::Union | Op::Intersection => Node::TOP,
                Op::Difference => Node::BOTTOM,
            };
        }
        // commutative ops: normalize the memo key
        let key = match op {
            Op::Union | Op::Intersection if f > g => (op, g, f),
            _ => (op, f, g),
        };
        if let Some(&r) = self.apply_memo.get(&key) {
            return r;
        }
        let lf = self.label(f);
        let lg = self.label(g);
        let m = lf.min(lg);
        let (f0, f1) = if lf == m { (self.lo(f), self.hi(f)) } else { (f, Node::BOTTOM) };
        let (g0, g1) = if lg == m { (self.lo(g), self.hi(g)) } else { (g, Node::BOTTOM) };
        let r = match op {
            Op::Union | Op::Difference => {
                let r0 = self.apply(op, f0, g0);
                let r1 = self.apply(op, f1, g1);
                self.make_node(m, r0, r1).expect("apply respects ordering")
            }
            Op::Intersection => {
                // the side that skips label m keeps only its zero part
                if lf != lg {
                    if lf < lg {
                        self.apply(op, f0, g)
                    } else {
                        self.apply(op, f, g0)
                    }
                } else {
                    let r0 = self.apply(op, f0, g0);
                    let r1 = self.apply(op, f1, g1);
                    self.make_node(m, r0, r1).expect("apply respects ordering")
                }
            }
        };
        self.apply_memo.insert(key, r);
        r
    }

    /// Membership test. `set` must be strictly ascending.
    pub fn member(&self, f: Node, set: &[u32]) -> bool {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
        let mut cur = f;
        let mut i = 0;
        while !cur.is_terminal() {
            let l = self.label(cur);
            if i < set.len() && set[i] == l {
                cur = self.hi(cur);
                i += 1;
            } else if i < set.len() && set[i] < l {
                return false; // needed element was skipped by the order
            } else {
                cur = self.lo(cur);
            }
        }
        cur == Node::TOP && i == set.len()
    }

    /// Exact number of sets in the family.
    pub fn count_sets(&self, f: Node) -> BigUint {
        fn go(store: &ZddStore, n: Node, memo: &mut HashMap<Node, BigUint>) -> BigUint {
            if n == Node::BOTTOM {
                return BigUint::from(0u32);
            }
            if n == Node::TOP {
                return BigUint::from(1u32);
            }
            if let Some(v) = memo.get(&n) {
                return v.clone();
            }
            let v = go(store, store.lo(n), memo) + go(store, store.hi(n), memo);
            memo.insert(n, v.clone());
            v
        }
        let mut memo = HashMap::new();
        go(self, f, &mut memo)
    }

    /// All member sets in characteristic-vector lexicographic order
    /// (zero-branch explored before one-branch). Errors out past `limit`.
    pub fn enumerate(&self, f: Node, limit: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enum_rec(f, limit, &mut prefix, &mut out)?;
        Ok(out)
    }

    fn enum_rec(
        &self,
        n: Node,
        limit: usize,
        prefix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<()> {
        match n {
            Node::BOTTOM => Ok(()),
            Node::TOP => {
                if out.len() >= limit {
                    return Err(Error::EnumerationLimit(limit));
                }
                out.push(prefix.clone());
                Ok(())
            }
            _ => {
                self.enum_rec(self.lo(n), limit, prefix, out)?;
                prefix.push(self.label(n));
                self.enum_rec(self.hi(n), limit, prefix, out)?;
                prefix.pop();
                Ok(())
            }
        }
    }

    /// Branching nodes reachable from f.
    pub fn node_count(&self, f: Node) -> u64 {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![f];
        let mut count = 0u64;
        while let Some(n) = stack.pop() {
            if n.is_terminal() {
                continue;
            }
            let idx = n.0 as usize - 2;
            if seen[idx] {
                continue;
            }
            seen[idx] = true;
            count += 1;
            stack.push(self.lo(n));
            stack.push(self.hi(n));
        }
        count
    }

    /// Bytes an explicit array layout would take for the ZDD rooted at `f`.
    pub fn naive_size_bytes(&self, f: Node) -> u64 {
        naive_size_bytes_for(self.node_count(f), self.c as u64)
    }

    /// The preorder-renamed edge list: entry i-1 describes preorder node i.
    /// DFS from the root claims the zero-edge before the one-edge; terminals
    /// are not numbered.
    pub fn preorder_edge_list(&self, f: Node) -> Vec<PreorderNode> {
        if f.is_terminal() {
            return Vec::new();
        }
        let mut order: HashMap<Node, u32> = HashMap::new();
        let mut seq: Vec<Node> = Vec::new();
        let mut stack = vec![f];
        while let Some(n) = stack.pop() {
            if n.is_terminal() || order.contains_key(&n) {
                continue;
            }
            let id = seq.len() as u32 + 1;
            order.insert(n, id);
            seq.push(n);
            // LIFO: push the one-child first so the zero-child pops first
            stack.push(self.hi(n));
            stack.push(self.lo(n));
        }
        let target = |n: Node| match n {
            Node::BOTTOM => Target::Bottom,
            Node::TOP => Target::Top,
            other => Target::Node(order[&other]),
        };
        seq.iter()
            .map(|&n| (self.label(n), target(self.lo(n)), target(self.hi(n))))
            .collect()
    }

    /// Validate ordering and reduction over the whole arena (test support).
    pub fn audit(&self) -> Result<()> {
        for (i, d) in self.nodes.iter().enumerate() {
            let n = Node(i as u32 + 2);
            if d.hi == Node::BOTTOM {
                return Err(Error::Invariant(format!("node {n:?} has bottom one-child")));
            }
            if d.label >= self.label(d.lo) || d.label >= self.label(d.hi) {
                return Err(Error::Invariant(format!("node {n:?} breaks label order")));
            }
            if self.unique.get(d) != Some(&n) {
                return Err(Error::Invariant(format!("node {n:?} duplicated in arena")));
            }
        }
        Ok(())
    }
}

/// Bytes an explicit array layout would take: two child pointers of
/// floor(log2 n) bits and a label of floor(log2 c) bits per node.
pub fn naive_size_bytes_for(n: u64, c: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let ptr = 63 - n.leading_zeros() as u64; // floor(log2 n)
    let lab = if c == 0 { 0 } else { 63 - c.leading_zeros() as u64 };
    (2 * n * ptr + n * lab).div_ceil(8)
}
