//! Simulation kernel for an actively shaped cable-net spherical reflector.
//!
//! The reflector rests on a reference sphere of radius `R`. For a source at a
//! given azimuth/elevation the toolkit:
//!
//! 1. fits the ideal paraboloid whose focus sits on the focal plane at
//!    distance `R - F` from the sphere center ([`shape::fit_parabola`]),
//! 2. builds the rotation that aligns the source direction with the `+z`
//!    axis ([`geometry::build_rotation`]),
//! 3. moves every cable node along its actuator axis toward the paraboloid
//!    by the largest uniform proportion that respects the actuator stroke
//!    and edge-strain limits ([`shape::solve_proportion`]),
//! 4. evaluates, panel by panel, whether the specularly reflected signal
//!    reaches the receiver cabin's effective disk on the focal plane
//!    ([`reception::evaluate_reception`]).
//!
//! All heavy per-node and per-panel loops fan out through [`exec`], which
//! uses rayon when the `parallel` feature (default) is enabled and plain
//! iterators otherwise. Every public operation is deterministic: identical
//! inputs produce identical outputs regardless of thread count.

pub mod exec;
pub mod geometry;
pub mod mesh;
pub mod reception;
pub mod shape;
pub mod tolerances;

pub use geometry::{AzEl, RotationFrame, Triangle2D, Vec3};
pub use mesh::{CableNode, Mesh, Panel};
pub use reception::{ReceptionReport, SurfaceKind};
pub use shape::{AdjustmentSolution, ParabolaCoeffs, TelescopeConstants};
