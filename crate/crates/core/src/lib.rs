//! Exact arithmetic for checking permutation trinomials over F_{q^2}, q = 3^n.
//!
//! * [`fields`]: the tower F_3 ⊂ F_q ⊂ F_{q^2}.
//! * [`polyring`]: sparse polynomials over F_3, resultants, parsing.
//! * [`ppcheck`]: permutation tests and the coefficient conditions.
//! * [`replay`]: fixture-driven re-execution of the symbolic computations.

pub mod fields;
pub mod polyring;
pub mod ppcheck;
pub mod replay;
mod fp_poly;
pub mod ring;

pub use fields::{make_tower, make_tower_p, FieldCtx, FieldElem, FieldError, Fq, Fq2, GfTable, Level};
