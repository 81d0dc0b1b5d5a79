//! Truncated modules and the functors between modules and Zhu-algebra modules.

mod constructors;
mod induce;
mod omega;
mod reports;
mod roundtrip;
mod similarity;
mod spec;

pub use constructors::{heisenberg_module, vacuum_module, verma};
pub use induce::{
    build_free, build_mbar, compute_j, induce_ln, induce_ln_with, FreeInduced, InduceOptions,
    InducedModule, MbarModule,
};
pub use omega::{default_state_weight, omega_n, omega_n_with, OmegaSpace, OmegaSummary, OMEGA_PATIENCE};
pub use reports::{gdim, jordan_by_degree, l0_check, module_report, DegreeJordan, ModuleReport};
pub use roundtrip::{
    degree_bound_check, omega_quotient, omega_quotient_spec, roundtrip_of, roundtrip_report,
    DegreeBoundReport, GradedQuotient, RoundtripReport, SIMILARITY_SEED,
};
pub use similarity::simultaneous_similarity;
pub use spec::{classify_an_module, AnModuleSpec, Classification};
