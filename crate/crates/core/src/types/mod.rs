//! Domain types shared by every stage of the pipeline.

mod annotation;
mod feature;
mod matrix;
mod profile;
mod tag;
mod token;

pub use annotation::TagAnnotation;
pub use feature::{FeatureId, FeatureKind, FeatureSet, UnknownFeature, FEATURE_COUNT};
pub use matrix::{canonical_columns, FeatureMatrix, ShapeError};
pub use profile::{CountingMode, FeatureStats, ProfileValues, StyleProfile};
pub use tag::PennTag;
pub use token::{fold_lower, is_well_indexed, Token};
