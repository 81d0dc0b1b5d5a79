//! Level-n Zhu algebras: the products, truncated spans of `O_n(V)`, and presentations.

mod algebra;
mod products;
mod tracked;

pub use algebra::{
    on_generators, GeneratorKind, OnGenerator, OnMembership, WitnessTerm, ZhuAlgebra, ZhuLevel,
};
pub use products::{circ_n, star_n, star_weight_bound};
pub use tracked::TrackedSpan;
mod presentation;

pub use presentation::{
    an_presentation, check_defining_relation, check_idempotent, defining_relation,
    second_generator, stability, CertificateStep, PolyXY, RelationCheck, RelationEvaluator,
    RepresentativeInfo, ZhuPresentation,
};
mod surjection;

pub use surjection::{surjection_consistency, SurjectionPair, SurjectionReport};
