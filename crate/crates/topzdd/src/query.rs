//! Navigation on the compressed form: cluster sizes, label access, edge
//! resolution, membership, and full decompression.
//!
//! All of it works by descending the expansion tree while tracking one
//! number k: the local preorder of the node of interest inside the current
//! cluster. Merge vertices translate k into a child-cluster coordinate;
//! the [`Frame`] recorded at each step inverts that translation so results
//! found deep in the tree can be mapped back to global preorders. Dummy
//! leaves redirect the descent to their target vertex with coordinates
//! unchanged (the clusters are structurally identical).
//!
//! Resolving zero(x)/one(x) runs in up to two descents. The first looks
//! for the spanning edge leaving x: it chases clusters whose top boundary
//! is x (when k hits the shared boundary of a vertical merge, the wanted
//! edges continue in the lower cluster; when k is the top of a horizontal
//! merge, the zero-edge side is the left child because sibling subtrees
//! keep claim order). If the edge of the requested type is not a spanning
//! edge, a second descent follows x's own parent edge down to its leaf
//! cluster and binary-searches the complement bag of every cluster on that
//! path, bottom-up, finishing with the top-level edge list.

use crate::error::{Error, Result};
use crate::succinct::Bv;
use crate::topzdd::{Components, Degenerate, TopZdd};
use crate::zdd::{PreorderNode, Target};

/// Coordinate translation from a child cluster's local preorders back to
/// its parent's, recorded on the way down.
#[derive(Debug, Clone, Copy)]
enum Frame {
    /// Entered the upper cluster of a vertical merge; locals past the
    /// shared boundary d skip over the lower cluster's c_right - 1 nodes.
    VerticalUpper { d: u64, c_right: u64 },
    /// Entered the lower cluster; its local 1 is the parent's local d.
    VerticalLower { d: u64 },
    /// Entered the left cluster of a horizontal merge; locals coincide.
    HorizontalLeft,
    /// Entered the right cluster; locals 2.. shift past the left cluster.
    HorizontalRight { c_left: u64 },
}

impl Frame {
    #[inline]
    fn unfold(self, j: u64) -> u64 {
        match self {
            Frame::VerticalUpper { d, c_right } => {
                if j <= d {
                    j
                } else {
                    j + c_right - 1
                }
            }
            Frame::VerticalLower { d } => d + j - 1,
            Frame::HorizontalLeft => j,
            Frame::HorizontalRight { c_left } => {
                if j == 1 {
                    1
                } else {
                    c_left + j - 1
                }
            }
        }
    }
}

/// Start index arithmetic for unary-coded groups: total count in the first
/// p groups.
fn unary_cum(bv: &Bv, p: u64) -> u64 {
    if p == 0 {
        0
    } else {
        bv.select0(p).expect("unary group delimiter exists") - p
    }
}

fn target_of(d: u64, n: u64) -> Target {
    if d <= n {
        Target::Node(d as u32)
    } else if d == n + 1 {
        Target::Bottom
    } else {
        Target::Top
    }
}

impl Components {
    fn vertex_count(&self) -> u64 {
        self.bp.num_nodes()
    }

    fn is_dummy(&self, u: u64) -> bool {
        self.bp.isleaf(u) && self.b_dummy.get(self.bp.leaf_rank(u))
    }

    /// Preorder with dummies skipped (the numbering dst_dummy speaks).
    fn nd(&self, p: u64) -> u64 {
        p - self.b_dummy.rank1(self.bp.leaf_rank(p))
    }

    /// The canonical vertex a dummy stands for.
    fn dummy_target(&self, u: u64) -> u64 {
        let dr = self.b_dummy.rank1(self.bp.leaf_rank(u));
        let t = self.dst_dummy.get(dr as usize - 1);
        // nd is monotone, so the smallest preorder reaching t is the
        // non-dummy vertex numbered t
        let (mut lo, mut hi) = (1u64, self.vertex_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.nd(mid) >= t {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    fn cl(&self, i: u64) -> u64 {
        if i == 0 {
            0
        } else {
            self.clsize.get(i as usize - 1)
        }
    }

    /// Cluster size from the leaf interval: dummies contribute their
    /// recorded mass, plain leaves 2 nodes each, and the k - 1 pairwise
    /// merges each share one node. A dummy argument yields its target's
    /// size.
    fn size_of(&self, x: u64) -> u64 {
        let l = self.bp.leaf_rank(self.bp.leftmost_leaf(x));
        let r = self.bp.leaf_rank(self.bp.rightmost_leaf(x));
        let lp = self.b_dummy.rank1(l - 1) + 1;
        let rp = self.b_dummy.rank1(r);
        let k = r - l + 1;
        let (dummy_mass, dummy_count) =
            if rp >= lp { (self.cl(rp) - self.cl(lp - 1), rp - lp + 1) } else { (0, 0) };
        let c = k - dummy_count;
        dummy_mass + 2 * c - k + 1
    }

    fn inode_rank(&self, u: u64) -> u64 {
        u - self.bp.leaf_rank(u)
    }

    fn is_horizontal(&self, u: u64) -> bool {
        self.b_h.get(self.inode_rank(u))
    }

    /// (shared boundary's local preorder, label distance to it) of a
    /// vertical merge vertex.
    fn vertical_meta(&self, u: u64) -> (u64, u64) {
        let vi = self.b_h.rank0(self.inode_rank(u)) as usize;
        (self.preorder_diff.get(vi - 1), self.label_diff.get(vi - 1))
    }

    fn children(&self, u: u64) -> (u64, u64) {
        let left = u + 1;
        (left, left + self.bp.subtreesize(left))
    }

    /// (edge type, label span) of a non-dummy leaf.
    fn leaf_meta(&self, u: u64) -> (bool, u64) {
        let lr = self.bp.leaf_rank(u);
        let idx = lr - self.b_dummy.rank1(lr);
        (self.type_span.get(idx), self.label_span.get(idx as usize - 1))
    }

    /// Binary search the vertex's bag for an edge leaving local node k
    /// with the given type; returns the stored destination code.
    fn bag_lookup(&self, u: u64, k: u64, ty: bool) -> Option<u64> {
        let lo = unary_cum(&self.b_edge, u - 1);
        let hi = unary_cum(&self.b_edge, u);
        let (mut a, mut b) = (lo + 1, hi + 1);
        let key = (k, ty);
        while a < b {
            let m = (a + b) / 2;
            if (self.src_in.get(m as usize - 1), self.type_in.get(m)) < key {
                a = m + 1;
            } else {
                b = m;
            }
        }
        if a <= hi && (self.src_in.get(a as usize - 1), self.type_in.get(a)) == key {
            Some(self.dst_in.get(a as usize - 1))
        } else {
            None
        }
    }

    /// Top-level complement edge leaving global node x, if stored.
    fn root_lookup(&self, x: u64, ty: bool, n: u64) -> Option<Target> {
        let lo = unary_cum(&self.b_src_root, x - 1);
        let hi = unary_cum(&self.b_src_root, x);
        (lo + 1..=hi)
            .find(|&e| self.type_root.get(e) == ty)
            .map(|e| target_of(self.dst_root.get(e as usize - 1), n))
    }
}

/// One descent's state: current vertex, the tracked node's local preorder,
/// and the coordinate frames needed to climb back out.
struct ClusterCursor<'a> {
    cs: &'a Components,
    u: u64,
    k: u64,
    frames: Vec<Frame>,
    /// (vertex, k) at every canonical vertex visited; entry i sits below
    /// frames[..i].
    path: Vec<(u64, u64)>,
    visits: u64,
}

impl<'a> ClusterCursor<'a> {
    fn start(cs: &'a Components, k: u64) -> Self {
        ClusterCursor { cs, u: 1, k, frames: Vec::new(), path: vec![(1, k)], visits: 1 }
    }

    fn enter(&mut self, child: u64, k: u64, frame: Frame) {
        self.frames.push(frame);
        self.visits += 1;
        let mut c = child;
        if self.cs.is_dummy(c) {
            c = self.cs.dummy_target(c);
            self.visits += 1;
        }
        self.u = c;
        self.k = k;
        self.path.push((c, k));
    }

    /// Map a local preorder at path position i to a global preorder.
    fn unfold_from(&self, i: usize, mut j: u64) -> u64 {
        for f in self.frames[..i].iter().rev() {
            j = f.unfold(j);
        }
        j
    }

    fn unfold_full(&self, j: u64) -> u64 {
        self.unfold_from(self.frames.len(), j)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Descent {
    /// Find the spanning edges leaving k: at the shared boundary of a
    /// vertical merge the node's child edges continue in the lower
    /// cluster.
    EdgesFrom(bool),
    /// Find the spanning edge entering k (always a bottom endpoint, so k
    /// stays >= 2 throughout).
    EdgeInto,
}

impl TopZdd {
    fn regular(&self) -> &Components {
        self.components.as_ref().expect("non-degenerate container has components")
    }

    fn check_node(&self, x: u64) -> Result<()> {
        if x < 1 || x > self.n {
            return Err(Error::OutOfRange(format!(
                "node {x} outside preorder range 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// One descent from the root; returns the cursor standing at a leaf.
    fn descend(&self, mode: Descent, x: u64) -> Result<ClusterCursor<'_>> {
        let cs = self.regular();
        let mut cur = ClusterCursor::start(cs, x);
        while !cs.bp.isleaf(cur.u) {
            let (u, k) = (cur.u, cur.k);
            let (left, right) = cs.children(u);
            if cs.is_horizontal(u) {
                let c = cs.size_of(left);
                if k == 1 {
                    // standing on the shared top boundary: both sibling
                    // subtrees hang off k, and the zero-edge side is left
                    match mode {
                        Descent::EdgesFrom(true) => {
                            cur.enter(right, 1, Frame::HorizontalRight { c_left: c });
                        }
                        Descent::EdgesFrom(false) => {
                            cur.enter(left, 1, Frame::HorizontalLeft);
                        }
                        Descent::EdgeInto => {
                            return Err(Error::Corruption(
                                "parent-edge descent reached a top boundary".into(),
                            ))
                        }
                    }
                } else if k <= c {
                    cur.enter(left, k, Frame::HorizontalLeft);
                } else {
                    cur.enter(right, k - c + 1, Frame::HorizontalRight { c_left: c });
                }
            } else {
                let (d, _) = cs.vertical_meta(u);
                let to_lower = k == d && matches!(mode, Descent::EdgesFrom(_));
                if k < d || (k == d && !to_lower) {
                    cur.enter(left, k, Frame::VerticalUpper { d, c_right: cs.size_of(right) });
                } else if to_lower {
                    // the boundary node keeps no children in the upper
                    // cluster, so its outgoing edges all lie below
                    cur.enter(right, 1, Frame::VerticalLower { d });
                } else {
                    let cw = cs.size_of(right);
                    if k <= d + cw - 1 {
                        cur.enter(right, k - d + 1, Frame::VerticalLower { d });
                    } else {
                        cur.enter(left, k - cw + 1, Frame::VerticalUpper { d, c_right: cw });
                    }
                }
            }
        }
        Ok(cur)
    }

    /// Search the complement bags along a parent-edge path, bottom-up,
    /// then the top-level edges.
    fn bag_search(&self, cur: &ClusterCursor<'_>, x: u64, ty: bool) -> Result<Target> {
        let cs = self.regular();
        for i in (0..cur.path.len()).rev() {
            let (u, k) = cur.path[i];
            if let Some(d) = cs.bag_lookup(u, k, ty) {
                let c = cs.size_of(u);
                return Ok(if d <= c {
                    Target::Node(cur.unfold_from(i, d) as u32)
                } else if d == c + 1 {
                    Target::Bottom
                } else {
                    Target::Top
                });
            }
        }
        cs.root_lookup(x, ty, self.n).ok_or_else(|| {
            Error::Corruption(format!("no {}-edge stored for node {x}", ty as u8))
        })
    }

    fn edge_with_depth(&self, x: u64, ty: bool) -> Result<(Target, u64)> {
        match self.degenerate {
            Degenerate::Bottom | Degenerate::Top => {
                return Err(Error::OutOfRange("terminal-only ZDD has no nodes".into()))
            }
            Degenerate::Single { zero_to_top } => {
                self.check_node(x)?;
                let t = if ty || zero_to_top { Target::Top } else { Target::Bottom };
                return Ok((t, 0));
            }
            Degenerate::No => {}
        }
        self.check_node(x)?;
        let cs = self.regular();

        // spanning-edge search
        let cur = self.descend(Descent::EdgesFrom(ty), x)?;
        match cur.k {
            1 => {
                let (lty, _) = cs.leaf_meta(cur.u);
                if lty == ty {
                    let g = cur.unfold_full(2);
                    return Ok((Target::Node(g as u32), cur.visits));
                }
                // the requested edge is a complement edge
                if x == 1 {
                    // the root has no parent edge; its complements are all
                    // top-level
                    let t = cs
                        .root_lookup(1, ty, self.n)
                        .ok_or_else(|| Error::Corruption("root edge missing".into()))?;
                    return Ok((t, cur.visits));
                }
            }
            2 => {
                // x keeps no spanning children; this path already follows
                // its parent edge
                let t = self.bag_search(&cur, x, ty)?;
                return Ok((t, cur.visits));
            }
            k => {
                return Err(Error::Corruption(format!(
                    "spanning search ended at leaf-local {k}"
                )))
            }
        }

        let cur2 = self.descend(Descent::EdgeInto, x)?;
        if cur2.k != 2 {
            return Err(Error::Corruption(format!(
                "parent-edge search ended at leaf-local {}",
                cur2.k
            )));
        }
        let t = self.bag_search(&cur2, x, ty)?;
        Ok((t, cur.visits.max(cur2.visits)))
    }

    /// Element label of preorder node x, with the number of expansion-tree
    /// vertices the descent visited.
    pub fn label_with_depth(&self, x: u64) -> Result<(u64, u64)> {
        match self.degenerate {
            Degenerate::Bottom | Degenerate::Top => {
                return Err(Error::OutOfRange("terminal-only ZDD has no nodes".into()))
            }
            Degenerate::Single { .. } => {
                self.check_node(x)?;
                return Ok((self.root_label, 0));
            }
            Degenerate::No => {}
        }
        self.check_node(x)?;
        let cs = self.regular();
        let mut u = 1u64;
        let mut k = x;
        let mut s = self.root_label;
        let mut visits = 1u64;
        loop {
            if cs.is_dummy(u) {
                u = cs.dummy_target(u);
                visits += 1;
            }
            if cs.bp.isleaf(u) {
                let (_, span) = cs.leaf_meta(u);
                return match k {
                    1 => Ok((s, visits)),
                    2 => Ok((s + span, visits)),
                    _ => Err(Error::Corruption(format!("label descent ended at local {k}"))),
                };
            }
            let (left, right) = cs.children(u);
            if cs.is_horizontal(u) {
                let c = cs.size_of(left);
                if k <= c {
                    u = left;
                } else {
                    u = right;
                    k = k - c + 1;
                }
            } else {
                let (d, ld) = cs.vertical_meta(u);
                if k <= d {
                    u = left;
                } else {
                    let cw = cs.size_of(right);
                    if k <= d + cw - 1 {
                        s += ld;
                        u = right;
                        k = k - d + 1;
                    } else {
                        u = left;
                        k = k - cw + 1;
                    }
                }
            }
            visits += 1;
        }
    }

    pub fn label(&self, x: u64) -> Result<u64> {
        self.label_with_depth(x).map(|(l, _)| l)
    }

    /// Zero-edge target of preorder node x.
    pub fn zero(&self, x: u64) -> Result<Target> {
        self.edge_with_depth(x, false).map(|(t, _)| t)
    }

    /// One-edge target of preorder node x.
    pub fn one(&self, x: u64) -> Result<Target> {
        self.edge_with_depth(x, true).map(|(t, _)| t)
    }

    /// Like zero/one but also reports the deepest single descent, measured
    /// in expansion-tree vertices visited (dummy hops included).
    pub fn zero_with_depth(&self, x: u64) -> Result<(Target, u64)> {
        self.edge_with_depth(x, false)
    }

    pub fn one_with_depth(&self, x: u64) -> Result<(Target, u64)> {
        self.edge_with_depth(x, true)
    }

    /// Number of expansion-tree vertices (dummies included); 0 when
    /// degenerate.
    pub fn expansion_vertex_count(&self) -> u64 {
        self.components.as_ref().map_or(0, |cs| cs.vertex_count())
    }

    pub fn is_dummy_vertex(&self, v: u64) -> Result<bool> {
        let cs = self
            .components
            .as_ref()
            .ok_or_else(|| Error::OutOfRange("degenerate container has no vertices".into()))?;
        if v < 1 || v > cs.vertex_count() {
            return Err(Error::OutOfRange(format!("vertex {v} out of range")));
        }
        Ok(cs.is_dummy(v))
    }

    /// Size (node count) of the cluster represented by expansion-tree
    /// vertex v. Dummies are rejected: they stand for another vertex.
    pub fn cluster_size(&self, v: u64) -> Result<u64> {
        if self.is_dummy_vertex(v)? {
            return Err(Error::OutOfRange(format!("vertex {v} is a dummy")));
        }
        Ok(self.regular().size_of(v))
    }

    /// Membership walk over the compressed form, using only label and edge
    /// resolution.
    pub fn member(&self, set: &[u32]) -> Result<bool> {
        if set.windows(2).any(|w| w[0] >= w[1]) || set.first() == Some(&0) {
            return Err(Error::OutOfRange("set must be strictly ascending from 1".into()));
        }
        match self.degenerate {
            Degenerate::Bottom => return Ok(false),
            Degenerate::Top => return Ok(set.is_empty()),
            _ => {}
        }
        let mut t = Target::Node(1);
        let mut i = 0;
        loop {
            match t {
                Target::Bottom => return Ok(false),
                Target::Top => return Ok(i == set.len()),
                Target::Node(x) => {
                    let lab = self.label(x as u64)?;
                    if i < set.len() && (set[i] as u64) < lab {
                        // a wanted element can no longer be tested on this
                        // path, and skipping means absent
                        return Ok(false);
                    }
                    if i < set.len() && set[i] as u64 == lab {
                        t = self.one(x as u64)?;
                        i += 1;
                    } else {
                        t = self.zero(x as u64)?;
                    }
                }
            }
        }
    }

    /// (label, zero-target, one-target) for every preorder node, from one
    /// expansion walk. The isomorphism oracle against the source ZDD.
    pub fn decompress_all(&self) -> Result<Vec<PreorderNode>> {
        match self.degenerate {
            Degenerate::Bottom | Degenerate::Top => return Ok(Vec::new()),
            Degenerate::Single { zero_to_top } => {
                let z = if zero_to_top { Target::Top } else { Target::Bottom };
                return Ok(vec![(self.root_label as u32, z, Target::Top)]);
            }
            Degenerate::No => {}
        }
        let cs = self.regular();
        let n = self.n;
        let mut st = Expansion {
            cs,
            n,
            frames: Vec::new(),
            zero: vec![None; n as usize + 1],
            one: vec![None; n as usize + 1],
            parent_edge: vec![(0, 0); n as usize + 1],
        };
        st.walk(1)?;

        // top-level complement edges
        for x in 1..=n {
            let lo = unary_cum(&cs.b_src_root, x - 1);
            let hi = unary_cum(&cs.b_src_root, x);
            for e in lo + 1..=hi {
                let t = target_of(cs.dst_root.get(e as usize - 1), n);
                st.assign(x, cs.type_root.get(e), t)?;
            }
        }

        // labels: the root's is given, every other node's derives from its
        // parent edge's span (parents precede children in preorder)
        let mut labels = vec![0u64; n as usize + 1];
        labels[1] = self.root_label;
        for b in 2..=n as usize {
            let (top, span) = st.parent_edge[b];
            if top == 0 || top as usize >= b {
                return Err(Error::Corruption(format!("node {b} has no tree edge into it")));
            }
            labels[b] = labels[top as usize] + span as u64;
        }

        let mut out = Vec::with_capacity(n as usize);
        for x in 1..=n as usize {
            let z = st.zero[x]
                .ok_or_else(|| Error::Corruption(format!("node {x} lacks a zero-edge")))?;
            let o = st.one[x]
                .ok_or_else(|| Error::Corruption(format!("node {x} lacks a one-edge")))?;
            out.push((labels[x] as u32, z, o));
        }
        Ok(out)
    }
}

/// Shared state of the single decompression walk.
struct Expansion<'a> {
    cs: &'a Components,
    n: u64,
    frames: Vec<Frame>,
    zero: Vec<Option<Target>>,
    one: Vec<Option<Target>>,
    /// bottom node -> (top node, label span) of its spanning edge.
    parent_edge: Vec<(u32, u32)>,
}

impl Expansion<'_> {
    fn fold(&self, mut j: u64) -> u64 {
        for f in self.frames.iter().rev() {
            j = f.unfold(j);
        }
        j
    }

    fn assign(&mut self, node: u64, ty: bool, t: Target) -> Result<()> {
        if node < 1 || node > self.n {
            return Err(Error::Corruption(format!("edge from out-of-range node {node}")));
        }
        let slot =
            if ty { &mut self.one[node as usize] } else { &mut self.zero[node as usize] };
        if slot.is_some() {
            return Err(Error::Corruption(format!(
                "node {node} got two {}-edges",
                ty as u8
            )));
        }
        *slot = Some(t);
        Ok(())
    }

    fn walk(&mut self, u: u64) -> Result<()> {
        let cs = self.cs;
        let u = if cs.is_dummy(u) { cs.dummy_target(u) } else { u };
        let c = cs.size_of(u);
        let lo = unary_cum(&cs.b_edge, u - 1);
        let hi = unary_cum(&cs.b_edge, u);
        for e in lo + 1..=hi {
            let src = self.fold(cs.src_in.get(e as usize - 1));
            let d = cs.dst_in.get(e as usize - 1);
            let t = if d <= c {
                Target::Node(self.fold(d) as u32)
            } else if d == c + 1 {
                Target::Bottom
            } else {
                Target::Top
            };
            self.assign(src, cs.type_in.get(e), t)?;
        }
        if cs.bp.isleaf(u) {
            let (ty, span) = cs.leaf_meta(u);
            let top = self.fold(1);
            let bottom = self.fold(2);
            self.assign(top, ty, Target::Node(bottom as u32))?;
            let slot = &mut self.parent_edge[bottom as usize];
            if slot.0 != 0 {
                return Err(Error::Corruption(format!("node {bottom} has two tree edges")));
            }
            *slot = (top as u32, span as u32);
            return Ok(());
        }
        let (left, right) = cs.children(u);
        let (fl, fr) = if cs.is_horizontal(u) {
            (Frame::HorizontalLeft, Frame::HorizontalRight { c_left: cs.size_of(left) })
        } else {
            let (d, _) = cs.vertical_meta(u);
            (
                Frame::VerticalUpper { d, c_right: cs.size_of(right) },
                Frame::VerticalLower { d },
            )
        };
        self.frames.push(fl);
        self.walk(left)?;
        self.frames.pop();
        self.frames.push(fr);
        self.walk(right)?;
        self.frames.pop();
        Ok(())
    }
}
