//! JSON documents the binary prints on success.

use serde_json::{json, Value};

use spcut_core::graph::Cut;

use crate::format::format_weight;

/// The answer document shared by the solving subcommands. Weights come out
/// as decimal strings so results stay exact and diff-friendly.
pub fn cut_document(objective: &str, cut: &Cut, stats: Value) -> Value {
    json!({
        "objective": objective,
        "weight": format_weight(cut.weight),
        "cut_edges": cut.edge_ids.iter().copied().collect::<Vec<_>>(),
        "side": cut.side.iter().copied().collect::<Vec<_>>(),
        "valid": cut.is_connected_sides(),
        "stats": stats,
    })
}

/// Pretty by default, one line with `compact`.
pub fn render(doc: &Value, compact: bool) -> String {
    if compact {
        doc.to_string()
    } else {
        serde_json::to_string_pretty(doc).expect("documents contain no non-string keys")
    }
}
