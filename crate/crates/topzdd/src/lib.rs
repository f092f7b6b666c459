//! Top-tree compressed ZDDs.
//!
//! A ZDD is stored as a spanning tree of its internal DAG plus the list of
//! edges the spanning tree leaves out. The spanning tree is compressed with a
//! top tree whose repeated clusters are shared (a top DAG), the leftover
//! edges ride along inside the clusters, and the whole thing is serialized
//! into a handful of succinct bit- and integer-vectors. Navigation
//! (`label`, `zero`, `one`) runs directly on the compressed form.
//!
//! Crate layout:
//! * [`succinct`]: rank/select bitvectors, packed integer arrays, and a
//!   balanced-parentheses tree, the storage substrate.
//! * [`zdd`]: a plain pointer-based ZDD store (build input and test oracle).
//! * [`families`]: deterministic generators for the benchmark families.
//! * [`build`]: spanning tree extraction, greedy top-tree construction,
//!   cluster sharing, and the component encoder.
//! * [`topzdd`]: the compressed container, its serialization, and size report.
//! * [`query`]: navigation and full decompression on the compressed form.
//!
//! Conventions used throughout: ZDD nodes are identified by their preorder
//! rank in the spanning tree (1-based, root = 1); terminals are not part of
//! the spanning tree and are encoded as `n+1` (bottom) and `n+2` (top) where
//! they have to share an integer domain with nodes. Bit positions and all
//! rank/select arguments are 1-based; `rank(0) = 0`.

pub mod build;
pub mod error;
pub mod families;
pub mod query;
pub mod succinct;
pub mod topzdd;
pub mod zdd;

pub use build::{build_top_zdd, BuildReport};
pub use error::{Error, Result};
pub use topzdd::{ComponentSizes, SizeReport, TopZdd};
pub use zdd::{Node, Target, ZddStore};
