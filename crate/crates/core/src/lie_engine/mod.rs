//! Complete fields, membership scripts for the Lie algebra they generate,
//! and the end-to-end density check.

pub mod certificate;
pub mod fields;
pub mod identities;
pub mod pipeline;
pub mod planner;
pub mod sampling;
pub mod script;
pub mod spanning;

pub use certificate::{is_locally_nilpotent, verify_completeness, CompletenessCertificate};
pub use fields::{descend, standard_fields, DescendedField, StandardFields};
pub use pipeline::{density_pipeline, PipelineConfig, Stage, StageResult, Status, VerificationReport};
pub use planner::{module_word, plan_membership, ScriptBuilder, Target};
pub use script::{is_valid_script, verify_script, MembershipScript, ScriptFailure, ScriptStep, StepOp};
pub use spanning::{candidate_points, find_spanning_point, rank, spanning_check, SpanningWitness, SurfacePoint};
