//! Exact-arithmetic representation theory of quivers with relations attached
//! to symmetrizable Cartan matrices.
//!
//! The library builds the path algebras H(C,D,Ω) (loops with nilpotency and
//! commutativity relations) and their generalized preprojective algebras
//! Π(C,D) (double quiver with mesh relations), constructs their canonical
//! modules, and computes Hom/Ext spaces, reflection and Coxeter functors, the
//! Auslander-Reiten translation on locally free modules, and the bijection
//! between τ-locally-free modules and positive roots in Dynkin type.
//!
//! All linear algebra is exact: arbitrary-precision rationals or a prime
//! field, never floating point. The matrix core is generic over the scalar;
//! concrete aliases for both fields live at the crate root.

pub mod algebra;
pub mod cartan;
pub mod construct;
pub mod fixtures;
pub mod functors;
pub mod linalg;
pub mod pimod;
pub mod rep;
pub mod roots;

pub use linalg::{FieldDescriptor, Fp, Mat, Scalar, Q};

/// Matrix over the rationals.
pub type QMat = Mat<Q>;
/// Matrix over a prime field.
pub type FpMat = Mat<Fp>;
/// Representation over the rationals.
pub type QRep = rep::Representation<Q>;
/// Representation over a prime field.
pub type FpRep = rep::Representation<Fp>;
