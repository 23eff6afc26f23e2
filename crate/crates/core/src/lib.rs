//! Construction of the explicit decomposition of split metacyclic group
//! algebras F_q G_{n,m,r} (gcd(q,n) = 1) into matrix algebras over skew group
//! algebras, and the code machinery built on top of it: metacyclic codes as
//! left ideals, their submodule decomposition, minimum-distance bounds, the
//! generalized-concatenated view, induced codes, and an attack-feasibility
//! census for McEliece-style constructions.

pub mod algebra;
pub mod arith;
pub mod codes;
pub mod distance;
pub mod error;
pub mod gf;
pub mod induced;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod polyfact;
pub mod wedderburn;

pub use error::{Error, Result};
