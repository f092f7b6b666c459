//! Library half of the `tzdd` binary.
//!
//! The traversal benchmark and the report rendering live here so that
//! integration tests can drive them in-process instead of scraping the
//! binary's stdout.

pub mod traverse;

use topzdd::SizeReport;

/// Render a [`SizeReport`] as the aligned human-readable table that
/// `tzdd build` and `tzdd stats` print.
pub fn render_size_table(r: &SizeReport) -> String {
    let mut out = String::new();
    let mut row = |k: &str, v: String| {
        out.push_str(&format!("{k:<16} {v}\n"));
    };
    row("family", r.spec.clone());
    row("zdd nodes", r.n.to_string());
    row("universe", r.c.to_string());
    row("naive bytes", r.naive_bytes.to_string());
    row("topzdd bytes", r.topzdd_bytes.to_string());
    row("ratio", format!("{:.3}x", r.ratio));
    row("build time", format!("{:.2} ms", r.build_ms));
    row(
        "fixed overhead",
        format!("{} bytes", r.sizes.fixed_bytes),
    );
    for &(name, bytes) in &r.sizes.parts {
        out.push_str(&format!("  {name:<14} {bytes}\n"));
    }
    out
}

/// Render a [`SizeReport`] as one machine-readable JSON line.
pub fn render_size_json(r: &SizeReport) -> String {
    let components: serde_json::Map<String, serde_json::Value> = r
        .sizes
        .parts
        .iter()
        .map(|&(name, bytes)| (name.to_string(), bytes.into()))
        .collect();
    serde_json::json!({
        "record": "size",
        "spec": r.spec,
        "n": r.n,
        "c": r.c,
        "naive_bytes": r.naive_bytes,
        "topzdd_bytes": r.topzdd_bytes,
        "ratio": r.ratio,
        "build_ms": r.build_ms,
        "fixed_bytes": r.sizes.fixed_bytes,
        "components": components,
    })
    .to_string()
}

/// Render a traversal report as the human-readable block.
pub fn render_traverse_table(r: &traverse::TraverseReport) -> String {
    let mut out = String::new();
    let mut row = |k: &str, v: String| {
        out.push_str(&format!("{k:<16} {v}\n"));
    };
    row("steps", r.steps.to_string());
    row("seed", r.seed.to_string());
    row(
        "compressed",
        format!("{:.4} us/step", r.us_per_step_compressed),
    );
    row(
        "uncompressed",
        format!("{:.4} us/step", r.us_per_step_uncompressed),
    );
    row("visit digest", format!("{:016x}", r.visit_digest));
    out
}

/// Render a traversal report as one machine-readable JSON line.
pub fn render_traverse_json(r: &traverse::TraverseReport) -> String {
    serde_json::json!({
        "record": "traverse",
        "steps": r.steps,
        "seed": r.seed,
        "us_per_step_compressed": r.us_per_step_compressed,
        "us_per_step_uncompressed": r.us_per_step_uncompressed,
        "visit_digest": format!("{:016x}", r.visit_digest),
    })
    .to_string()
}
