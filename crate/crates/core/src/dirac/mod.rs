//! The Dirac operator on `C^4 ⊗ M_N(C)`, its spectrum and the real
//! spectral triple it defines.

pub mod axioms;
pub mod clifford;
pub mod intertwiner;
pub mod operator;
pub mod spectrum;
pub mod translation;

pub use axioms::{verify_axioms, AxiomCheck, AxiomReport, SpectralTriple};
pub use clifford::{clifford_module, CliffordModule};
pub use operator::{chirality_operator, dirac_operator, dirac_squared_formula, ex_ey_split};
pub use spectrum::{dirac_spectrum_formula, DiracSpectrumRecord, HalfInt};
