//! Free (Boltzmannian) coherent states over `p` letters and their
//! identification with distributions on the p-adic integers `Z_p`.
//!
//! The crate is organized bottom-up:
//!
//! - [`padic`]: words, disks in `Z_p`, eventually periodic points, p-adic norm.
//! - [`lc_space`]: locally constant functions, the Haar `L₂` product, and
//!   distributions given by cascade trees.
//! - [`fock`]: the truncated free Fock space with `A_i A†_j = δ_ij`.
//! - [`coherent`]: cascade states `Ψ`, indicator states `X_I`, path states
//!   of points, and the eigenvector residual of `A = Σ A_i`.
//! - [`limit`]: pairings as rational functions of `t = λ²/p`, the regularized
//!   limit `lim_{t→1⁻} (1 − t)(·,·)`, the map `φ`, and a floating-point oracle.
//! - [`verify`]: self-contained verification suites over these identities.
//! - [`cli`]: the command-line driver behind the `padic-coherent` binary.
//!
//! All scalars are exact (`BigRational` parts); floating point only appears
//! in [`limit::numeric_oracle`] and in CSV decimal columns.

pub mod cli;
pub mod coherent;
pub mod error;
pub mod fock;
pub mod lc_space;
pub mod limit;
pub mod padic;
pub mod scalar;
pub mod verify;

pub use coherent::{
    coherent_from_cascade, coherent_with_uniform_extension, delta_path_state, eigen_residual,
    indicator_state, residual_by_degree, Family, TruncatedState,
};
pub use error::{Error, Result};
pub use fock::FockVector;
pub use lc_space::{
    act, indicator, l2_inner, normalized_indicator, random_cascade, CascadeTree, Distribution,
    LCFunction,
};
pub use limit::{
    numeric_oracle, pairing_coherent, pairing_delta, pairing_indicators, phi_coherent,
    phi_indicator, regularized_limit, theorem_witness, PairingCase, PairingValue,
};
pub use padic::{
    disk_relation, haar_measure, longest_common_prefix, padic_norm, padic_norm_total, Disk,
    DiskRelation, PAdicPoint, Word,
};
pub use scalar::{Rational, Scalar};
