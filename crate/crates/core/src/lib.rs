//! Perfect crystals, Young walls and the limit crystal `B(∞)` for the
//! classical affine families.

pub mod binf;
pub mod cartan;
pub mod column;
pub mod coords;
pub mod error;
pub mod export;
pub mod figures;
pub mod graph;
pub mod perfect;
pub mod wall;

pub use binf::{BInfWall, Extended, ExtendedColumn, LimitCrystal};
pub use cartan::{build_datum, AffineDatum, ClassicalWeight, Family, RootVector};
pub use column::{
    column_etilde, column_ftilde, materialize, read_coords, reduce_column, render_column, ColumnPattern,
    Group, RenderFormat, YoungColumn,
};
pub use coords::{BInfVector, CrystalVector, Slot};
pub use error::{Error, Result};
pub use export::{
    export, export_dot, export_json, export_text, export_tikz, json_string, load_fixture, parse_document,
    GraphDocument, GraphFormat,
};
pub use figures::{check_figure, drawn_binf_key, drawn_wall_key, embed, Figure, FigureCheck};
pub use graph::{
    compare_graphs, generate, graphs_equal, verify_axioms, weight_multiplicities, AxiomReport, CrystalGraph,
    Edge, Realization, RealizationTag, Vertex,
};
pub use perfect::{CrystalReport, MinimalPair, PerfectCrystal};
pub use wall::{
    ground_state, GroundStateWall, PathCrystal, Position, SignatureResolution, VertexStats, WallCrystal,
    YoungWall,
};
