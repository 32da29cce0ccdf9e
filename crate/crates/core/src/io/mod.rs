//! Text formats: Newick trees, partitions, partition systems, splits,
//! edge colorings and Fitch maps.

pub mod newick;
pub mod text;

pub use newick::{parse_newick, parse_newick_on, serialize_newick, serialize_newick_named};
pub use text::{
    format_edge_colors, format_fitch_map, format_partition_system, parse_edge_colors, parse_fitch_map,
    parse_partition, parse_partition_line, parse_partition_system, parse_splits,
};
