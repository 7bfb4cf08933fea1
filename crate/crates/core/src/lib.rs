//! Abstract isogeny graphs and their Ihara zeta functions.
//!
//! * [`graph`]: the graph data, axiom checks, and the orientable quotients
//!   `Γ^{+1}`, `Γ^{-1}`.
//! * [`zeta`]: the determinant formula, the edge-operator series and the
//!   involution form.
//! * [`walks`]: brute-force closed-walk and prime enumeration.
//! * [`quadratic`]: Kronecker symbols, class numbers, and the closed-form
//!   Euler characteristic and point-count formulas.
//! * [`format`]: the `AIG v1` text format.
//! * [`random`]: random graphs and self-maps for testing.

pub mod cycles;
pub mod det;
pub mod format;
pub mod graph;
pub mod poly;
pub mod quadratic;
pub mod random;
pub mod ratfunc;
pub mod walks;
pub mod zeta;

pub use graph::{AbstractIsogenyGraph, Edge, OrientableGraph, QuotientData, ValidationReport};
pub use poly::IntPoly;
pub use ratfunc::FactoredRationalFunction;
