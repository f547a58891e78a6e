//! Trace-free SU(2) representation varieties of braid closures, computed as
//! fixed-point sets of the braid action on (S²)ⁿ, together with numerical
//! checks of the symplectic structure on the space of such tuples.

pub mod braid;
pub mod chern;
pub mod hessian;
pub mod invariants;
pub mod laurent;
pub mod su2;
pub mod symplectic;
pub mod table;
pub mod variety;
pub mod verify;
