//! Finite abstract simplicial complexes, their open and closed subsets in the
//! star-generated Alexandroff topology, the associated exterior-derivative /
//! Dirac / Hodge / connection operators, exact and numerical spectral
//! invariants, and a randomized verification harness for spectral
//! monotonicity and its corollaries.
//!
//! Layout:
//! - [`complex`]: simplices, complexes, subsets, stars, filtrations.
//! - [`operators`]: integer operator matrices (`d`, `D`, `L`, `P`, `H`) and
//!   the Witten deformation.
//! - [`exact`]: big-integer linear algebra (fraction-free rank, modular
//!   determinants, division-free characteristic polynomials).
//! - [`spectral`]: symmetric eigensolver front-end, exact Betti vectors,
//!   left-padded spectra, pseudo determinants, torsion.
//! - [`verify`]: per-claim checks plus the seeded randomized suite.
//! - [`io`]: JSON / CSV / JSONL file formats shared by the CLI and the
//!   browser demo.

pub mod complex;
pub mod exact;
pub mod io;
pub mod operators;
pub mod spectral;
pub mod verify;

pub use complex::{Complex, ComplexError, ComplexId, Filtration, Graph, SetKind, Simplex, Subset};
pub use operators::{Hodge, OperatorError, SignedMatrix, WeightFunction};
pub use spectral::{BettiVector, PseudoDet, SpectralError, Spectrum, TorsionReport};
pub use verify::{
    Generator, SetClass, Split, Status, SuiteOutcome, TrialRecord, TrialSpec, VerifyError,
    VerifyReport,
};
