//! Instance preparation shared by the benchmarks.

use spcut_core::sp::{build_from_script, random_sp_script, SeriesLabeling};
use spcut_core::Multigraph;

/// A generated instance with its creation labeling, sized by op count.
pub fn instance(ops: usize, seed: u64) -> (Multigraph, SeriesLabeling) {
    let script = random_sp_script(seed, ops, (1, 100), false).expect("fixed range is valid");
    build_from_script(&script).expect("generated scripts replay cleanly")
}
