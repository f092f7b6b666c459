//! Random-walk timing protocol over one container.
//!
//! The walk starts at the root, picks the zero- or one-edge uniformly at
//! random each step, and restarts at the root whenever it lands on a
//! terminal. The same pre-generated choice sequence drives two walks: one
//! on the compressed structure (navigation queries) and one on plain
//! decompressed arrays. Both walks fold the visited node ids into a
//! digest; a mismatch means one of the representations lied, so it is
//! reported as corruption rather than silently timed.

use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use topzdd::zdd::PreorderNode;
use topzdd::{Error, Result, Target, TopZdd};

/// Default number of edge choices per timed walk.
pub const DEFAULT_STEPS: u64 = 65_536;

/// Default RNG seed when the caller does not pin one.
pub const DEFAULT_SEED: u64 = 1;

/// How many leading choices the untimed warm-up replays.
const WARMUP_STEPS: u64 = 4_096;

/// Outcome of one traversal benchmark.
#[derive(Debug, Clone)]
pub struct TraverseReport {
    pub steps: u64,
    pub seed: u64,
    /// Mean wall-clock microseconds per step on the compressed form.
    pub us_per_step_compressed: f64,
    /// Mean wall-clock microseconds per step on decompressed arrays.
    pub us_per_step_uncompressed: f64,
    /// Fold of every visited node id; equal across representations and
    /// across runs with the same seed.
    pub visit_digest: u64,
}

/// Run the two-walk benchmark. Fails on containers without branching
/// nodes since there is no root to walk from.
pub fn run(tz: &TopZdd, steps: u64, seed: u64) -> Result<TraverseReport> {
    if tz.node_count() == 0 || steps == 0 {
        return Err(Error::OutOfRange(
            "traversal needs at least one branching node and one step".into(),
        ));
    }
    let choices = choice_bits(steps, seed);
    let edges = tz.decompress_all()?;
    let warm = WARMUP_STEPS.min(steps) as usize;

    walk_compressed(tz, &choices[..warm])?;
    let clock = Instant::now();
    let digest_compressed = walk_compressed(tz, &choices)?;
    let spent_compressed = clock.elapsed();

    walk_arrays(&edges, &choices[..warm]);
    let clock = Instant::now();
    let digest_uncompressed = walk_arrays(&edges, &choices);
    let spent_uncompressed = clock.elapsed();

    if digest_compressed != digest_uncompressed {
        return Err(Error::Corruption(
            "compressed and uncompressed walks visited different nodes".into(),
        ));
    }
    Ok(TraverseReport {
        steps,
        seed,
        us_per_step_compressed: spent_compressed.as_secs_f64() * 1e6 / steps as f64,
        us_per_step_uncompressed: spent_uncompressed.as_secs_f64() * 1e6 / steps as f64,
        visit_digest: digest_compressed,
    })
}

/// Pre-generate the whole choice sequence so RNG cost stays out of the
/// timed loops.
fn choice_bits(steps: u64, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(steps as usize);
    let mut word = 0u64;
    let mut bits_left = 0u32;
    for _ in 0..steps {
        if bits_left == 0 {
            word = rng.next_u64();
            bits_left = 64;
        }
        out.push(word & 1 == 1);
        word >>= 1;
        bits_left -= 1;
    }
    out
}

const DIGEST_BASIS: u64 = 0xcbf2_9ce4_8422_2325;
const DIGEST_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fold(digest: u64, node: u64) -> u64 {
    (digest ^ node).wrapping_mul(DIGEST_PRIME)
}

fn walk_compressed(tz: &TopZdd, choices: &[bool]) -> Result<u64> {
    let mut node = 1u64;
    let mut digest = DIGEST_BASIS;
    for &take_one in choices {
        let to = if take_one { tz.one(node)? } else { tz.zero(node)? };
        node = match to {
            Target::Node(x) => u64::from(x),
            Target::Bottom | Target::Top => 1,
        };
        digest = fold(digest, node);
    }
    Ok(digest)
}

fn walk_arrays(edges: &[PreorderNode], choices: &[bool]) -> u64 {
    let mut node = 1u32;
    let mut digest = DIGEST_BASIS;
    for &take_one in choices {
        let (_, zero, one) = edges[node as usize - 1];
        let to = if take_one { one } else { zero };
        node = match to {
            Target::Node(x) => x,
            Target::Bottom | Target::Top => 1,
        };
        digest = fold(digest, u64::from(node));
    }
    digest
}
