//! Semi-orthogonal decompositions of HPD I and HPD II for Veronese
//! embeddings, with certificates, plus the mutation and generation schedules
//! and a small catalog of worked examples.

mod catalog;
mod decomposition;
mod grid;
mod lefschetz;
mod orlov;
mod report;

pub use catalog::{example_catalog, CatalogEntry, CATALOG_NAMES};
pub use decomposition::{
    base_locus_chi, hpd1_decomposition, hpd2_decomposition, hpd_category_rank,
    universal_hyperplane_chi,
};
pub use grid::{
    final_support, generation_schedule, generation_schedule_on, mutation_walkthrough,
    mutation_walkthrough_on, witness_degree, GridBox, GridState, MutationStep, ScheduleEntry,
    SkipCertificate,
};
pub use lefschetz::{build_lefschetz, validate_lefschetz, LefschetzData, LefschetzValidation};
pub use orlov::{orlov_checks, OrlovInstance, OrlovParams, OrlovReport};
pub use report::{BlockLabel, CaseTag, Certificate, SODBlock, SODReport};
