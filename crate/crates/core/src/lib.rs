//! Exact-rational cohomology of intersection spaces.
//!
//! Given a triangulation of the blowup `(X̄, ∂X̄ = L)` of an `n`-dimensional
//! pseudomanifold `X` with one isolated singular point, this crate computes
//! the cohomology ring of the intersection space `IᵖX` for a perversity `p̄`,
//! entirely over `ℚ` (no floating point anywhere).
//!
//! The pipeline, bottom to top:
//!
//! * [`exactq`] — arbitrary-precision rationals and sparse exact linear
//!   algebra (kernels, images, solves, complements, quotient coordinates).
//! * [`complexes`] — cochain complexes, chain maps (strict or up to sign),
//!   cohomology with deterministic representatives, induced maps, kernel
//!   subcomplexes, pullbacks, exactness checks and connecting homomorphisms.
//! * [`simplicial`] — simplicial pairs, (co)boundary matrices with the sign
//!   convention `(dα)(a) = (−1)^{deg a} α(∂a)`, the simplicial cup product,
//!   restriction to the boundary, orientability detection.
//! * [`truncation`] — chain-level Moore truncation `t_{<k}L` and
//!   metric cotruncation `τ_{≥k}C•(L)` / lower truncation `τ_{<k}C•(L)`.
//! * [`ispace`] — assembly of the intersection-space model: the cone and
//!   `IᵖX` complexes, the pullback `Q•`, the comparison maps
//!   `φ₁, φ₂, φ`, the subalgebras `ker g♯ ⊆ OI• ⊆ C̄• ⊆ C•(X̄)`, ring
//!   structures, the main-theorem verification and Poincaré duality.
//! * [`cli`] — input/report JSON formats, built-in example spaces and the
//!   end-to-end runner used by the `ispace` binary.

pub mod cli;
pub mod complexes;
pub mod exactq;
pub mod ispace;
pub mod rng;
pub mod simplicial;
pub mod truncation;
