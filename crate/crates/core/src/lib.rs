//! Equidistant cyclic codes over prime fields, the imprimitive permutation
//! groups `G(C)` on `Z_q x Z_m` built from them, and exact intersection
//! density certificates for those groups.
//!
//! The pipeline is:
//!
//! 1. [`numtheory`] finds parameters `p = (q^k - 1)/(q - 1)`.
//! 2. [`field_poly`] factors the cyclotomic polynomial `Phi_p` over `F_q`.
//! 3. [`cyclic_code`] builds the `[p, k]_q` code with an irreducible factor as
//!    parity-check polynomial and checks its weight distribution.
//! 4. [`perm_group`] realizes `G(C)` explicitly or symbolically.
//! 5. [`density`] certifies `rho(G(C)) = q` with a matching intersecting set
//!    and a semiregular clique cover.

pub mod cyclic_code;
pub mod density;
pub mod error;
pub mod field_poly;
pub mod numtheory;
pub mod perm_group;

pub use error::{Error, Result};
