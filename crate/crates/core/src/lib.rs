//! Principalization and toroidalization of locally toroidal morphisms to
//! surfaces, computed exactly on monomial local presentations.

pub mod cli;
pub mod descent;
pub mod error;
pub mod forms;
pub mod invariants;
pub mod oracle;
pub mod principalize;
pub mod row;
pub mod scenario_file;
pub mod transform;

pub use descent::{classify_global, lift, BasePoint, LiftedPresentation, Slope};
pub use error::{DescentError, DriverError, FormError, InvariantError, OracleError, RoundError, TransformError};
pub use forms::{
    classify_point, is_principal, match_template, ChartContext, EBranchData, FormTag, LocalForm,
    MonomialPresentation, TemplateTag, ToroidalTemplate,
};
pub use invariants::{big_omega, center_value, enumerate_centers, locus_report, small_omega, LocusReport};
pub use principalize::{PresentationId, Scenario, Trace};
pub use row::ExponentRow;
pub use transform::{blowup, Center, ChartLabel, Descendant, DescendantSet};
