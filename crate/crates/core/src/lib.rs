//! Hybrid FAIRness assessment of dataset and model releases, plus the
//! linked-data annotation tools used to improve them.

pub mod harvest;
pub mod registry;

pub use registry::{builtin_registry, Indicator, Letter, Mode, Registry};
pub mod autoeval;
pub mod manual;
pub mod hybrid;
pub mod annotate;
pub mod treemodel;
pub mod report;
pub mod assess;
