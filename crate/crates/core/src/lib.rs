//! Upper bounds on the number of monochromatic cliques forced at the Ramsey
//! threshold, the constructions showing the counting steps are sharp, and
//! brute-force oracles for small cases.

pub mod bounds;
pub mod coloring;
pub mod construct;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod ramsey_table;
pub mod tables;

pub use bounds::{
    balanced_bound, binomial, classic_bound, counting_cap, edge_bound, general_bound, BoundResult, Formula,
};
pub use coloring::{extend_one_vertex, paley_coloring, read_coloring, write_coloring, PartialColoring, RamseySpec};
pub use construct::{
    build_extremal_book, extract_extension_family, read_certificate, saturation_search, verify_certificate,
    write_certificate, BookConstruction, Certificate, ExtensionFamily,
};
pub use error::{BoundError, ColoringError, ConstructionError, GraphError, OracleError, ParseError, TableError};
pub use graph::{Edge, Graph, Row, MAX_VERTICES};
pub use oracle::{exact_multiplicity, goodman_check, ramsey_witness, verify_counting_lemma, EnumerationBudget};
pub use ramsey_table::{RamseyTable, R334};
pub use tables::reproduce_tables;
