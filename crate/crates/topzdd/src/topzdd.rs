//! The compressed ZDD container: component table, file format, size
//! accounting.
//!
//! Sixteen succinct components describe the expansion tree T' and the
//! complement edges. File layout: a 32-byte header (magic `TZDD`, format
//! version, degenerate tag + aux byte, n, c, root label), a component
//! count byte, each component length-prefixed (u32) in the fixed
//! [`COMPONENT_NAMES`] order, and an FNV-1a 64-bit checksum over all
//! preceding bytes. Everything is little-endian. The rank/select
//! directories are serialized along with the payload, so a deserialized
//! container answers queries without any rebuild pass, and reported sizes
//! are exactly what the file stores.
//!
//! ZDDs with no branching node (the families with zero or one member set
//! reachable without a decision) and single-node ZDDs have no spanning
//! edge to build a top tree from; they are flagged degenerate in the
//! header and carry no components.

use std::path::Path;

use crate::error::{Error, Result};
use crate::succinct::wire::{self, Reader};
use crate::succinct::{BpTree, Bv, PackedIntArray};
use crate::zdd::naive_size_bytes_for;

pub const FORMAT_VERSION: u16 = 1;

pub const COMPONENT_NAMES: [&str; 16] = [
    "bp",
    "B_dummy",
    "clsize",
    "label_span",
    "type_span",
    "B_H",
    "preorder_diff",
    "label_diff",
    "B_src_root",
    "dst_root",
    "type_root",
    "B_edge",
    "src_in",
    "dst_in",
    "type_in",
    "dst_dummy",
];

/// The succinct component table.
///
/// Bit positions are 1-based throughout; T' vertices are named by their
/// preorder in `bp`; tree nodes by their spanning-tree preorder 1..=n with
/// n+1 standing for the bottom terminal and n+2 for the top terminal.
#[derive(Debug, Clone)]
pub struct Components {
    /// Balanced parentheses of the expansion tree T'.
    pub bp: BpTree,
    /// Per T' leaf (in leaf rank order): 1 if the leaf is a dummy.
    pub b_dummy: Bv,
    /// Cumulative cluster sizes over dummies in preorder; entry i-1 is the
    /// sum over the first i dummies.
    pub clsize: PackedIntArray,
    /// Per non-dummy leaf: label difference along its spanning edge (>= 1).
    pub label_span: PackedIntArray,
    /// Per non-dummy leaf: the spanning edge's type (1 = one-edge).
    pub type_span: Bv,
    /// Per internal T' vertex in preorder: 0 = vertical merge,
    /// 1 = horizontal merge.
    pub b_h: Bv,
    /// Per vertical vertex: local preorder of the boundary node its two
    /// children share.
    pub preorder_diff: PackedIntArray,
    /// Per vertical vertex: label distance from the cluster top to that
    /// shared boundary node.
    pub label_diff: PackedIntArray,
    /// Unary code: for each tree node 1..=n in preorder, one 1-bit per
    /// top-level complement edge leaving it, then a 0.
    pub b_src_root: Bv,
    /// Destinations of top-level complement edges (n+1 = bottom terminal,
    /// n+2 = top).
    pub dst_root: PackedIntArray,
    /// Types of top-level complement edges.
    pub type_root: Bv,
    /// Unary code: for each T' vertex in preorder, one 1-bit per bag edge,
    /// then a 0 (dummies contribute empty groups).
    pub b_edge: Bv,
    /// Bag edge sources as cluster-local preorders, grouped by vertex and
    /// sorted by (source, type) within a group.
    pub src_in: PackedIntArray,
    /// Bag edge destinations as cluster-local preorders; C+1 = bottom
    /// terminal, C+2 = top, where C is the owning cluster's size.
    pub dst_in: PackedIntArray,
    /// Bag edge types.
    pub type_in: Bv,
    /// Per dummy (in preorder): its target's preorder among non-dummy
    /// vertices.
    pub dst_dummy: PackedIntArray,
}

impl Components {
    pub fn serialize_parts(&self) -> Vec<Vec<u8>> {
        fn bv(b: &Bv) -> Vec<u8> {
            let mut v = Vec::new();
            b.serialize(&mut v);
            v
        }
        fn pa(a: &PackedIntArray) -> Vec<u8> {
            let mut v = Vec::new();
            a.serialize(&mut v);
            v
        }
        let mut bp = Vec::new();
        self.bp.serialize(&mut bp);
        vec![
            bp,
            bv(&self.b_dummy),
            pa(&self.clsize),
            pa(&self.label_span),
            bv(&self.type_span),
            bv(&self.b_h),
            pa(&self.preorder_diff),
            pa(&self.label_diff),
            bv(&self.b_src_root),
            pa(&self.dst_root),
            bv(&self.type_root),
            bv(&self.b_edge),
            pa(&self.src_in),
            pa(&self.dst_in),
            bv(&self.type_in),
            pa(&self.dst_dummy),
        ]
    }

    fn deserialize_parts(parts: &[&[u8]]) -> Result<Self> {
        fn one<T>(bytes: &[u8], f: impl FnOnce(&mut Reader) -> Result<T>) -> Result<T> {
            let mut r = Reader::new(bytes);
            let v = f(&mut r)?;
            r.finish()?;
            Ok(v)
        }
        Ok(Components {
            bp: one(parts[0], BpTree::deserialize)?,
            b_dummy: one(parts[1], Bv::deserialize)?,
            clsize: one(parts[2], PackedIntArray::deserialize)?,
            label_span: one(parts[3], PackedIntArray::deserialize)?,
            type_span: one(parts[4], Bv::deserialize)?,
            b_h: one(parts[5], Bv::deserialize)?,
            preorder_diff: one(parts[6], PackedIntArray::deserialize)?,
            label_diff: one(parts[7], PackedIntArray::deserialize)?,
            b_src_root: one(parts[8], Bv::deserialize)?,
            dst_root: one(parts[9], PackedIntArray::deserialize)?,
            type_root: one(parts[10], Bv::deserialize)?,
            b_edge: one(parts[11], Bv::deserialize)?,
            src_in: one(parts[12], PackedIntArray::deserialize)?,
            dst_in: one(parts[13], PackedIntArray::deserialize)?,
            type_in: one(parts[14], Bv::deserialize)?,
            dst_dummy: one(parts[15], PackedIntArray::deserialize)?,
        })
    }
}

/// ZDDs too small to carry a spanning edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degenerate {
    /// Regular container with all components.
    No,
    /// The bottom terminal: no set belongs to the family.
    Bottom,
    /// The top terminal: the family is exactly the empty set.
    Top,
    /// One branching node; its one-edge goes to the top terminal (reduced
    /// form forbids bottom), the zero-edge to either terminal.
    Single { zero_to_top: bool },
}

#[derive(Debug, Clone)]
pub struct TopZdd {
    pub(crate) n: u64,
    pub(crate) c: u64,
    pub(crate) root_label: u64,
    pub(crate) degenerate: Degenerate,
    pub(crate) components: Option<Components>,
}

/// Byte accounting of one serialized container.
#[derive(Debug, Clone)]
pub struct ComponentSizes {
    pub parts: Vec<(&'static str, u64)>,
    /// Header, length prefixes, and checksum.
    pub fixed_bytes: u64,
    pub total_bytes: u64,
}

/// Everything the size experiment reports for one family.
#[derive(Debug, Clone)]
pub struct SizeReport {
    pub spec: String,
    pub n: u64,
    pub c: u64,
    pub naive_bytes: u64,
    pub topzdd_bytes: u64,
    pub sizes: ComponentSizes,
    pub build_ms: f64,
    /// naive / topzdd: how many times smaller the compressed form is.
    pub ratio: f64,
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl TopZdd {
    /// Branching-node count of the source ZDD.
    pub fn node_count(&self) -> u64 {
        self.n
    }

    /// Universe size (largest possible element label).
    pub fn universe(&self) -> u64 {
        self.c
    }

    /// Label of preorder node 1, the base for all label arithmetic.
    pub fn root_label(&self) -> u64 {
        self.root_label
    }

    pub fn degenerate(&self) -> Degenerate {
        self.degenerate
    }

    pub fn components(&self) -> Option<&Components> {
        self.components.as_ref()
    }

    pub fn serialize(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(b"TZDD");
        wire::put_u16(&mut out, FORMAT_VERSION);
        let (tag, aux) = match self.degenerate {
            Degenerate::No => (0u8, 0u8),
            Degenerate::Bottom => (1, 0),
            Degenerate::Top => (2, 0),
            Degenerate::Single { zero_to_top } => (3, 0b10 | zero_to_top as u8),
        };
        wire::put_u8(&mut out, tag);
        wire::put_u8(&mut out, aux);
        wire::put_u64(&mut out, self.n);
        wire::put_u64(&mut out, self.c);
        wire::put_u64(&mut out, self.root_label);
        match &self.components {
            None => wire::put_u8(&mut out, 0),
            Some(cs) => {
                wire::put_u8(&mut out, COMPONENT_NAMES.len() as u8);
                for part in cs.serialize_parts() {
                    wire::put_u32(&mut out, part.len() as u32);
                    out.extend_from_slice(&part);
                }
            }
        }
        let ck = fnv1a(&out);
        wire::put_u64(&mut out, ck);
        out
    }

    pub fn deserialize(bytes: &[u8]) -> Result<TopZdd> {
        if bytes.len() < 8 {
            return Err(Error::Format("container shorter than its checksum".into()));
        }
        let (body, trailer) = bytes.split_at(bytes.len() - 8);
        let stored = u64::from_le_bytes(trailer.try_into().expect("8 bytes"));
        if fnv1a(body) != stored {
            return Err(Error::Format("checksum mismatch".into()));
        }
        let mut r = Reader::new(body);
        let magic = r.get_bytes(4)?;
        if magic != b"TZDD" {
            return Err(Error::Format("bad magic".into()));
        }
        let version = r.get_u16()?;
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {version}")));
        }
        let tag = r.get_u8()?;
        let aux = r.get_u8()?;
        let n = r.get_u64()?;
        let c = r.get_u64()?;
        let root_label = r.get_u64()?;
        let degenerate = match tag {
            0 | 1 | 2 if aux != 0 => {
                return Err(Error::Format("aux byte set on a non-single container".into()))
            }
            0 => Degenerate::No,
            1 => Degenerate::Bottom,
            2 => Degenerate::Top,
            3 => {
                if aux & !0b11 != 0 || aux & 0b10 == 0 {
                    return Err(Error::Format(format!("bad aux byte {aux:#04x}")));
                }
                Degenerate::Single { zero_to_top: aux & 1 == 1 }
            }
            t => return Err(Error::Format(format!("unknown degenerate tag {t}"))),
        };
        let expected_n_ok = match degenerate {
            Degenerate::No => n >= 2,
            Degenerate::Bottom | Degenerate::Top => n == 0,
            Degenerate::Single { .. } => n == 1,
        };
        if !expected_n_ok {
            return Err(Error::Format(format!("node count {n} contradicts the shape tag")));
        }
        let count = r.get_u8()? as usize;
        let components = if count == 0 {
            if degenerate == Degenerate::No {
                return Err(Error::Format("regular container without components".into()));
            }
            None
        } else {
            if degenerate != Degenerate::No {
                return Err(Error::Format("degenerate container with components".into()));
            }
            if count != COMPONENT_NAMES.len() {
                return Err(Error::Format(format!("expected 16 components, found {count}")));
            }
            let mut parts: Vec<&[u8]> = Vec::with_capacity(count);
            for _ in 0..count {
                let len = r.get_u32()? as usize;
                parts.push(r.get_bytes(len)?);
            }
            Some(Components::deserialize_parts(&parts)?)
        };
        r.finish()?;
        let tz = TopZdd { n, c, root_label, degenerate, components };
        tz.audit()?;
        Ok(tz)
    }

    /// Cross-component length identities; cheap enough to run on every
    /// deserialize.
    pub fn audit(&self) -> Result<()> {
        let cs = match &self.components {
            None => return Ok(()),
            Some(cs) => cs,
        };
        let fail = |m: &str| Err(Error::Format(format!("component audit: {m}")));
        let leaves = cs.bp.num_leaves();
        let vertices = cs.bp.num_nodes();
        if cs.b_dummy.len() != leaves {
            return fail("B_dummy length != leaf count");
        }
        let dummies = cs.b_dummy.count_ones();
        if cs.clsize.len() as u64 != dummies || cs.dst_dummy.len() as u64 != dummies {
            return fail("clsize / dst_dummy length != dummy count");
        }
        let plain = leaves - dummies;
        if cs.label_span.len() as u64 != plain || cs.type_span.len() != plain {
            return fail("label_span / type_span length != non-dummy leaf count");
        }
        let internal = vertices - leaves;
        if cs.b_h.len() != internal {
            return fail("B_H length != internal vertex count");
        }
        let verticals = cs.b_h.rank0(internal);
        if cs.preorder_diff.len() as u64 != verticals || cs.label_diff.len() as u64 != verticals {
            return fail("preorder_diff / label_diff length != vertical vertex count");
        }
        let root_edges = cs.b_src_root.count_ones();
        let src_groups = cs.b_src_root.len() - root_edges;
        if src_groups != self.n {
            return fail("B_src_root group count != n");
        }
        if cs.dst_root.len() as u64 != root_edges || cs.type_root.len() != root_edges {
            return fail("dst_root / type_root length != top-level edge count");
        }
        let bag_edges = cs.b_edge.count_ones();
        if cs.b_edge.len() - bag_edges != vertices {
            return fail("B_edge group count != T' vertex count");
        }
        if cs.src_in.len() as u64 != bag_edges
            || cs.dst_in.len() as u64 != bag_edges
            || cs.type_in.len() != bag_edges
        {
            return fail("src_in / dst_in / type_in length != bag edge count");
        }
        for i in 1..cs.clsize.len() {
            if cs.clsize.get(i) < cs.clsize.get(i - 1) {
                return fail("clsize not nondecreasing");
            }
        }
        Ok(())
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.serialize())?;
        Ok(())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<TopZdd> {
        TopZdd::deserialize(&std::fs::read(path)?)
    }

    pub fn component_sizes(&self) -> ComponentSizes {
        let total_bytes = self.serialize().len() as u64;
        let parts: Vec<(&'static str, u64)> = match &self.components {
            None => Vec::new(),
            Some(cs) => COMPONENT_NAMES
                .iter()
                .zip(cs.serialize_parts())
                .map(|(&name, bytes)| (name, bytes.len() as u64))
                .collect(),
        };
        let payload: u64 = parts.iter().map(|(_, b)| b).sum();
        ComponentSizes { parts, fixed_bytes: total_bytes - payload, total_bytes }
    }

    /// Serialized size in bits (the unit the size experiment compares in).
    pub fn size_in_bits(&self) -> u64 {
        8 * self.serialize().len() as u64
    }

    pub fn size_report(&self, spec: &str, build_ms: f64) -> SizeReport {
        let sizes = self.component_sizes();
        let naive_bytes = naive_size_bytes_for(self.n, self.c);
        let topzdd_bytes = sizes.total_bytes;
        let ratio =
            if topzdd_bytes == 0 { 0.0 } else { naive_bytes as f64 / topzdd_bytes as f64 };
        SizeReport {
            spec: spec.to_string(),
            n: self.n,
            c: self.c,
            naive_bytes,
            topzdd_bytes,
            sizes,
            build_ms,
            ratio,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_round_trip() {
        for dg in [
            Degenerate::Bottom,
            Degenerate::Top,
            Degenerate::Single { zero_to_top: false },
            Degenerate::Single { zero_to_top: true },
        ] {
            let n = if matches!(dg, Degenerate::Single { .. }) { 1 } else { 0 };
            let root_label = if n == 1 { 5 } else { 0 };
            let tz =
                TopZdd { n, c: 9, root_label, degenerate: dg, components: None };
            let bytes = tz.serialize();
            let back = TopZdd::deserialize(&bytes).unwrap();
            assert_eq!(back.degenerate(), dg);
            assert_eq!(back.node_count(), n);
            assert_eq!(back.universe(), 9);
            assert_eq!(back.root_label(), root_label);
            assert_eq!(back.serialize(), bytes);
        }
    }

    #[test]
    fn corruption_is_detected() {
        let tz = TopZdd {
            n: 0,
            c: 3,
            root_label: 0,
            degenerate: Degenerate::Bottom,
            components: None,
        };
        let good = tz.serialize();
        // flip one bit anywhere before the checksum
        for i in 0..good.len() - 8 {
            let mut bad = good.clone();
            bad[i] ^= 0x10;
            assert!(
                matches!(TopZdd::deserialize(&bad), Err(Error::Format(_))),
                "byte {i} flip went unnoticed"
            );
        }
        // truncation
        assert!(TopZdd::deserialize(&good[..good.len() - 9]).is_err());
        assert!(TopZdd::deserialize(&[]).is_err());
        // trailing garbage changes the checksummed region
        let mut long = good.clone();
        long.push(0);
        assert!(TopZdd::deserialize(&long).is_err());
    }

    #[test]
    fn header_is_32_bytes_plus_count() {
        let tz = TopZdd {
            n: 0,
            c: 1,
            root_label: 0,
            degenerate: Degenerate::Top,
            components: None,
        };
        // magic 4 + version 2 + tag 1 + aux 1 + three u64 = 32, then the
        // component count byte and the 8-byte checksum
        assert_eq!(tz.serialize().len(), 32 + 1 + 8);
    }
}
