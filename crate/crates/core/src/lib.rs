//! Differential-algebra and numerical machinery for pseudo-null curve flows.
//!
//! * [`diffalg`]: exact differential polynomials in `τ` (or `k`) with
//!   coefficients in `Q[G]`, total and evolution derivations, the Euler
//!   operator and the formal antiderivative.
//! * [`geometry`]: variation formulas for vector fields along a pseudo-null
//!   curve, the frame derivation `D_V` and the Lie bracket of evolution fields.
//! * [`hierarchy`]: the Burgers recursion operator, the geometric recursion
//!   `V ↦ ∇_T V` and the resulting τ- and k-hierarchies.
//! * [`numerics`]: floating-point checks (frame reconstruction, Burgers and
//!   heat solvers, Hopf-Cole, filament flow, lightlike-cylinder invariants).

pub mod diffalg;
pub mod geometry;
pub mod hierarchy;
pub mod numerics;
pub mod sample;
