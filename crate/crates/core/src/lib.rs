//! Exact analysis of Pauli diagonal maps on qubit tensor powers: multiplier
//! tensors and Choi spectra, the polyhedral cone of Pauli PPT spectra with its
//! extremal-ray census, symmetry orbits, decomposability decisions with exact
//! certificates, and the supporting zero-pattern combinatorics.

pub mod cone_geometry;
pub mod decomposability;
pub mod exact_arith;
pub mod pattern_combinatorics;
pub mod pauli_maps;
pub mod symmetry;
