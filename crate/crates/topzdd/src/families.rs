//! Deterministic generators for the benchmark families.
//!
//! A family is described by a spec string like `powerset:A=64` or
//! `knapsack:A=100,W=100,C=500,seed=7`; parsing and the canonical rendering
//! live in [`FamilySpec`]. Every generator is fully deterministic: same spec,
//! same store layout, same root handle.
//!
//! Parameter conventions worth spelling out:
//! * `grid_paths:n=K` uses K vertices per side (so K-1 cells); paths run
//!   between opposite corners of the K x K vertex grid.
//! * `nqueens:n=K` uses the K*K board cells, numbered row-major from 1, as
//!   the universe.
//! * `matchings:graph=PATH` reads a 1-based edge list; the line order of the
//!   file is the ZDD variable order.
//! * `knapsack` draws weights in 1..=W with the SplitMix64 generator below,
//!   then relabels elements in order of non-increasing weight (ties keep the
//!   original order), so element 1 is a heaviest item.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::zdd::{Node, Op, ZddStore};

/// SplitMix64 (Steele, Lea, Flood). Implemented inline because the exact
/// stream is part of the reproducibility contract of `knapsack` instances.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Undirected graph given as an ordered edge list (the order is the ZDD
/// variable order). Vertex ids are 1-based; the vertex count is the largest
/// id seen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: u32,
    pub edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn parse(text: &str) -> Result<Graph> {
        let mut edges = Vec::new();
        let mut vertices = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse_id = |tok: Option<&str>| -> Result<u32> {
                let tok = tok.ok_or_else(|| {
                    Error::Parse(format!("graph line {}: expected two vertex ids", lineno + 1))
                })?;
                let v: u32 = tok.parse().map_err(|_| {
                    Error::Parse(format!("graph line {}: bad vertex id {tok:?}", lineno + 1))
                })?;
                if v == 0 {
                    return Err(Error::Parse(format!(
                        "graph line {}: vertex ids are 1-based",
                        lineno + 1
                    )));
                }
                Ok(v)
            };
            let u = parse_id(it.next())?;
            let v = parse_id(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse(format!(
                    "graph line {}: trailing tokens",
                    lineno + 1
                )));
            }
            if u == v {
                return Err(Error::Parse(format!("graph line {}: self loop", lineno + 1)));
            }
            vertices = vertices.max(u).max(v);
            edges.push((u, v));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// K_k, edges in lexicographic order.
    pub fn complete(k: u32) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=k {
            for v in u + 1..=k {
                edges.push((u, v));
            }
        }
        Graph { vertices: k, edges }
    }

    /// rows x cols vertex grid; vertices numbered row-major from 1, edges
    /// row-major (right edge before down edge at each vertex).
    pub fn grid(rows: u32, cols: u32) -> Graph {
        let id = |r: u32, c: u32| r * cols + c + 1;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Graph { vertices: rows * cols, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Powerset { a: u32 },
    BoundedRange { a: u32, b: u32 },
    BoundedCard { a: u32, b: u32 },
    Knapsack { a: u32, w: u64, cap: u64, seed: u64 },
    Matchings { graph: String },
    GridPaths { n: u32 },
    NQueens { n: u32 },
    File { path: String },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Powerset { a } => write!(f, "powerset:A={a}"),
            FamilySpec::BoundedRange { a, b } => write!(f, "bounded_range:A={a},B={b}"),
            FamilySpec::BoundedCard { a, b } => write!(f, "bounded_card:A={a},B={b}"),
            FamilySpec::Knapsack { a, w, cap, seed } => {
                write!(f, "knapsack:A={a},W={w},C={cap},seed={seed}")
            }
            FamilySpec::Matchings { graph } => write!(f, "matchings:graph={graph}"),
            FamilySpec::GridPaths { n } => write!(f, "grid_paths:n={n}"),
            FamilySpec::NQueens { n } => write!(f, "nqueens:n={n}"),
            FamilySpec::File { path } => write!(f, "file:path={path}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, r),
            None => (s, ""),
        };
        let mut params: HashMap<&str, &str> = HashMap::new();
        if !rest.is_empty() {
            for part in rest.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad parameter {part:?} in {s:?}")))?;
                if params.insert(k, v).is_some() {
                    return Err(Error::Parse(format!("duplicate parameter {k:?} in {s:?}")));
                }
            }
        }
        fn take_num(params: &mut HashMap<&str, &str>, key: &str, s: &str) -> Result<u64> {
            params
                .remove(key)
                .ok_or_else(|| Error::Parse(format!("missing parameter {key} in {s:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("parameter {key} in {s:?} is not a number")))
        }
        let mut num = |key: &str| take_num(&mut params, key, s);
        let spec = match kind {
            "powerset" => FamilySpec::Powerset { a: num("A")? as u32 },
            "bounded_range" => {
                FamilySpec::BoundedRange { a: num("A")? as u32, b: num("B")? as u32 }
            }
            "bounded_card" => FamilySpec::BoundedCard { a: num("A")? as u32, b: num("B")? as u32 },
            "knapsack" => {
                let a = num("A")? as u32;
                let w = num("W")?;
                let cap = num("C")?;
                let seed =
                    if params.contains_key("seed") { take_num(&mut params, "seed", s)? } else { 1 };
                FamilySpec::Knapsack { a, w, cap, seed }
            }
            "matchings" => {
                let graph = params
                    .remove("graph")
                    .ok_or_else(|| Error::Parse(format!("missing parameter graph in {s:?}")))?
                    .to_string();
                FamilySpec::Matchings { graph }
            }
            "grid_paths" => FamilySpec::GridPaths { n: num("n")? as u32 },
            "nqueens" => FamilySpec::NQueens { n: num("n")? as u32 },
            "file" => {
                let path = params
                    .remove("path")
                    .ok_or_else(|| Error::Parse(format!("missing parameter path in {s:?}")))?
                    .to_string();
                FamilySpec::File { path }
            }
            other => return Err(Error::Parse(format!("unknown family kind {other:?}"))),
        };
        if !params.is_empty() {
            let mut keys: Vec<&str> = params.keys().copied().collect();
            keys.sort_unstable();
            return Err(Error::Parse(format!("unknown parameters {keys:?} in {s:?}")));
        }
        Ok(spec)
    }
}

impl FamilySpec {
    /// Build the family. Returns the store and the root handle.
    pub fn generate(&self) -> Result<(ZddStore, Node)> {
        match self {
            FamilySpec::Powerset { a } => powerset(*a),
            FamilySpec::BoundedRange { a, b } => bounded_range(*a, *b),
            FamilySpec::BoundedCard { a, b } => bounded_card(*a, *b),
            FamilySpec::Knapsack { a, w, cap, seed } => knapsack(*a, *w, *cap, *seed),
            FamilySpec::Matchings { graph } => {
                let text = std::fs::read_to_string(graph)
                    .map_err(|e| Error::Parse(format!("cannot read graph {graph:?}: {e}")))?;
                matchings(&Graph::parse(&text)?)
            }
            FamilySpec::GridPaths { n } => grid_paths(*n),
            FamilySpec::NQueens { n } => nqueens(*n),
            FamilySpec::File { path } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read family {path:?}: {e}")))?;
                let (c, sets) = parse_family_text(&text)?;
                family_from_sets(c, &sets)
            }
        }
    }
}

/// Knapsack weights after drawing and relabeling, exposed for oracles.
pub fn knapsack_weights(a: u32, w: u64, seed: u64) -> Vec<u64> {
    let mut rng = SplitMix64::new(seed);
    let mut items: Vec<(u64, u32)> = (0..a).map(|i| (1 + rng.next_u64() % w.max(1), i)).collect();
    items.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    items.into_iter().map(|(wt, _)| wt).collect()
}

/// All subsets of 1..=a.
pub fn powerset(a: u32) -> Result<(ZddStore, Node)> {
    let mut store = ZddStore::new(a);
    let mut cur = Node::TOP;
    for label in (1..=a).rev() {
        cur = store.make_node(label, cur, cur)?;
    }
    Ok((store, cur))
}

/// The empty set plus every nonempty S with max(S) - min(S) <= b.
pub fn bounded_range(a: u32, b: u32) -> Result<(ZddStore, Node)> {
    let mut store = ZddStore::new(a);
    let mut root = Node::TOP;
    for m in 1..=a {
        // sets with minimum m: {m} followed by any subset of (m, m+b]
        let end = m.saturating_add(b).min(a);
        let mut chain = Node::TOP;
        for label in (m + 1..=end).rev() {
            chain = store.make_node(label, chain, chain)?;
        }
        let with_min = store.make_node(m, Node::BOTTOM, chain)?;
        root = store.apply(Op::Union, root, with_min);
    }
    Ok((store, root))
}

/// All subsets of 1..=a with at most b elements.
pub fn bounded_card(a: u32, b: u32) -> Result<(ZddStore, Node)> {
    let mut store = ZddStore::new(a);
    // f[k] = family over elements {i..=a} with budget k, for the current i
    let mut row: Vec<Node> = vec![Node::TOP; b as usize + 1];
    for i in (1..=a).rev() {
        let mut next = Vec::with_capacity(b as usize + 1);
        next.push(Node::TOP); // budget 0: only the empty set
        for k in 1..=b as usize {
            let lo = row[k];
            let hi = row[k - 1];
            next.push(store.make_node(i, lo, hi)?);
        }
        row = next;
    }
    Ok((store, row[b as usize]))
}

/// Subsets whose total weight stays within the capacity.
pub fn knapsack(a: u32, w: u64, cap: u64, seed: u64) -> Result<(ZddStore, Node)> {
    if w == 0 {
        return Err(Error::Unsupported("knapsack needs W >= 1".into()));
    }
    let weights = knapsack_weights(a, w, seed);
    let mut store = ZddStore::new(a);
    let mut memo: HashMap<(u32, u64), Node> = HashMap::new();
    fn go(
        store: &mut ZddStore,
        weights: &[u64],
        memo: &mut HashMap<(u32, u64), Node>,
        i: u32,
        rem: u64,
    ) -> Result<Node> {
        if i as usize >= weights.len() {
            return Ok(Node::TOP);
        }
        if let Some(&n) = memo.get(&(i, rem)) {
            return Ok(n);
        }
        let lo = go(store, weights, memo, i + 1, rem)?;
        let hi = if weights[i as usize] <= rem {
            go(store, weights, memo, i + 1, rem - weights[i as usize])?
        } else {
            Node::BOTTOM
        };
        let n = store.make_node(i + 1, lo, hi)?;
        memo.insert((i, rem), n);
        Ok(n)
    }
    let root = go(&mut store, &weights, &mut memo, 0, cap)?;
    Ok((store, root))
}

/// All matchings (including the empty one) of the graph; universe = edges.
pub fn matchings(g: &Graph) -> Result<(ZddStore, Node)> {
    if g.vertices > 25 {
        return Err(Error::Unsupported(format!(
            "matchings supports at most 25 vertices, got {}",
            g.vertices
        )));
    }
    let m = g.edges.len() as u32;
    let mut store = ZddStore::new(m);
    // relevant[i] = vertices touched by edges i.. (1-based edge index)
    let mut relevant = vec![0u32; m as usize + 2];
    for i in (0..m as usize).rev() {
        let (u, v) = g.edges[i];
        relevant[i + 1] = relevant[i + 2] | (1 << (u - 1)) | (1 << (v - 1));
    }
    let mut memo: HashMap<(u32, u32), Node> = HashMap::new();
    fn go(
        store: &mut ZddStore,
        g: &Graph,
        relevant: &[u32],
        memo: &mut HashMap<(u32, u32), Node>,
        i: u32,
        used: u32,
    ) -> Result<Node> {
        if i > g.edges.len() as u32 {
            return Ok(Node::TOP);
        }
        let key = (i, used & relevant[i as usize]);
        if let Some(&n) = memo.get(&key) {
            return Ok(n);
        }
        let (u, v) = g.edges[i as usize - 1];
        let bits = (1u32 << (u - 1)) | (1 << (v - 1));
        let lo = go(store, g, relevant, memo, i + 1, used)?;
        let hi = if used & bits == 0 {
            go(store, g, relevant, memo, i + 1, used | bits)?
        } else {
            Node::BOTTOM
        };
        let n = store.make_node(i, lo, hi)?;
        memo.insert(key, n);
        Ok(n)
    }
    let root = go(&mut store, g, &relevant, &mut memo, 1, 0)?;
    Ok((store, root))
}

/// Simple corner-to-corner paths of the n x n vertex grid, as edge sets.
pub fn grid_paths(n: u32) -> Result<(ZddStore, Node)> {
    if n < 2 || n > 6 {
        return Err(Error::Unsupported(format!(
            "grid_paths supports 2 <= n <= 6 vertices per side, got {n}"
        )));
    }
    let g = Graph::grid(n, n);
    let start = 1u32;
    let goal = n * n;
    let paths = enumerate_simple_paths(&g, start, goal);
    let mut store = ZddStore::new(g.edges.len() as u32);
    let mut root = Node::BOTTOM;
    for path in &paths {
        let mut chain = Node::TOP;
        for &e in path.iter().rev() {
            chain = store.make_node(e, Node::BOTTOM, chain)?;
        }
        root = store.apply(Op::Union, root, chain);
    }
    Ok((store, root))
}

/// Edge-id sets of all simple start-goal paths, each sorted ascending.
/// Exposed so tests can cross-check against an independent enumeration.
pub fn enumerate_simple_paths(g: &Graph, start: u32, goal: u32) -> Vec<Vec<u32>> {
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); g.vertices as usize + 1];
    for (idx, &(u, v)) in g.edges.iter().enumerate() {
        let e = idx as u32 + 1;
        adj[u as usize].push((e, v));
        adj[v as usize].push((e, u));
    }
    let mut out = Vec::new();
    let mut visited = vec![false; g.vertices as usize + 1];
    let mut edges_taken = Vec::new();
    visited[start as usize] = true;
    dfs_paths(&adj, start, goal, &mut visited, &mut edges_taken, &mut out);
    out
}

fn dfs_paths(
    adj: &[Vec<(u32, u32)>],
    at: u32,
    goal: u32,
    visited: &mut [bool],
    edges_taken: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if at == goal {
        let mut p = edges_taken.clone();
        p.sort_unstable();
        out.push(p);
        return;
    }
    for &(e, next) in &adj[at as usize] {
        if !visited[next as usize] {
            visited[next as usize] = true;
            edges_taken.push(e);
            dfs_paths(adj, next, goal, visited, edges_taken, out);
            edges_taken.pop();
            visited[next as usize] = false;
        }
    }
}

/// Placements of n non-attacking queens; universe = board cells, row-major.
pub fn nqueens(n: u32) -> Result<(ZddStore, Node)> {
    if n < 1 || n > 12 {
        return Err(Error::Unsupported(format!("nqueens supports 1 <= n <= 12, got {n}")));
    }
    let mut solutions: Vec<Vec<u32>> = Vec::new();
    let mut cols = vec![false; n as usize];
    let mut diag1 = vec![false; 2 * n as usize];
    let mut diag2 = vec![false; 2 * n as usize];
    let mut placed = Vec::new();
    fn go(
        n: u32,
        row: u32,
        cols: &mut [bool],
        diag1: &mut [bool],
        diag2: &mut [bool],
        placed: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if row == n {
            out.push(placed.clone());
            return;
        }
        for col in 0..n {
            let d1 = (row + col) as usize;
            let d2 = (row + n - 1 - col) as usize;
            if cols[col as usize] || diag1[d1] || diag2[d2] {
                continue;
            }
            cols[col as usize] = true;
            diag1[d1] = true;
            diag2[d2] = true;
            placed.push(row * n + col + 1);
            go(n, row + 1, cols, diag1, diag2, placed, out);
            placed.pop();
            diag2[d2] = false;
            diag1[d1] = false;
            cols[col as usize] = false;
        }
    }
    go(n, 0, &mut cols, &mut diag1, &mut diag2, &mut placed, &mut solutions);
    let mut store = ZddStore::new(n * n);
    let mut root = Node::BOTTOM;
    for sol in &solutions {
        let mut chain = Node::TOP;
        for &cell in sol.iter().rev() {
            chain = store.make_node(cell, Node::BOTTOM, chain)?;
        }
        root = store.apply(Op::Union, root, chain);
    }
    Ok((store, root))
}

/// Parse the text family format: header `c=<universe>`, then one set per
/// line as ascending space-separated integers; a blank line is the empty set.
pub fn parse_family_text(text: &str) -> Result<(u32, Vec<Vec<u32>>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty family file".into()))?;
    let c: u32 = header
        .trim()
        .strip_prefix("c=")
        .ok_or_else(|| Error::Parse(format!("family header {header:?} is not c=<universe>")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad universe in header {header:?}")))?;
    let mut sets = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() {
            sets.push(Vec::new());
            continue;
        }
        let mut set = Vec::new();
        for tok in line.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| {
                Error::Parse(format!("family line {}: bad element {tok:?}", lineno + 2))
            })?;
            if v < 1 || v > c {
                return Err(Error::Parse(format!(
                    "family line {}: element {v} outside 1..={c}",
                    lineno + 2
                )));
            }
            if let Some(&last) = set.last() {
                if v <= last {
                    return Err(Error::Parse(format!(
                        "family line {}: elements must be strictly ascending",
                        lineno + 2
                    )));
                }
            }
            set.push(v);
        }
        sets.push(set);
    }
    Ok((c, sets))
}

/// Render the text family format (inverse of [`parse_family_text`]).
pub fn family_to_text(c: u32, sets: &[Vec<u32>]) -> String {
    let mut s = format!("c={c}\n");
    for set in sets {
        let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// Build a ZDD holding exactly the given sets.
pub fn family_from_sets(c: u32, sets: &[Vec<u32>]) -> Result<(ZddStore, Node)> {
    let mut store = ZddStore::new(c);
    let mut root = Node::BOTTOM;
    for set in sets {
        let mut chain = Node::TOP;
        for &v in set.iter().rev() {
            chain = store.make_node(v, Node::BOTTOM, chain)?;
        }
        root = store.apply(Op::Union, root, chain);
    }
    Ok((store, root))
}
