//! Constructors for the graphs of the 1-Salem classification: the bipartite
//! hub construction, the generalized line graph families, and the growth
//! of the intermediate graphs around the minimal ones.

pub mod bipartite;
pub mod catalog;
pub mod growth;

pub use catalog::{build_family, catalog, enumerate_family_instances, hat_variant_counts, FamilyInstance, PathSpec};
pub use growth::{attachable_gcps, grow_ma, grow_ma_report, minimal_graphs, GrowthReport};
pub use bipartite::{bipartite_exception_check, bipartite_sweep, build_bipartite, BipComponentSpec, BipShape};
