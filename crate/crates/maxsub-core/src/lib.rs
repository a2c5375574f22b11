//! Classification engine for maximal subgroups of the compact classical
//! groups SU(n), SO(n) and Sp(n).
//!
//! The crate is organized around a pipeline:
//!
//! * [`rootdata`] — root systems, exact Weyl/Freudenthal representation
//!   arithmetic, reality (Frobenius–Schur) classification;
//! * [`primsub`] — enumeration of the primitive subalgebras of a classical
//!   algebra (the candidates whose normalizers are the maximal subgroups);
//! * [`normalizer`] — component-group assembly for the normalizer of each
//!   primitive subalgebra, producing the maximal-subgroup records;
//! * [`matrixcheck`] — independent matrix-level certificates: explicit
//!   embeddings, normalizer/centralizer dimensions, determinant witnesses,
//!   component representatives;
//! * [`reduction`] — maximal and Σ-invariant subgroups of products of a
//!   simple group from per-factor data (the reduction step for
//!   non-semisimple ambients).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals,
//! with complex scalars represented as pairs of rationals. No floating
//! point is used anywhere.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod linalg;
pub mod matrixcheck;
pub mod normalizer;
pub mod primsub;
pub mod reduction;
pub mod rootdata;
pub mod scalar;
