//! Exact and numerical tools for the compactified trigonometric
//! Ruijsenaars–Schneider system: the parameter intervals, the momentum
//! polytope, the spectral data behind the action map, the fibers over the
//! polytope and the Lax matrix dynamics.

pub mod dynamics;
pub mod error;
pub mod farey;
pub mod fiber;
pub mod harness;
pub mod polytope;
pub mod rational;
pub mod sampling;
pub mod spectral;

pub use error::{Error, Result};
pub use farey::{FareyInterval, IntervalType};
pub use polytope::{AlcovePoint, PolytopeModel};
pub use rational::{AffineForm, ExactRational};
