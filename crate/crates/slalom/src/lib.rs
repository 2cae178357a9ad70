//! Slalom divides of rooted planar trees and their fibered knots.
//!
//! A rooted planar tree, given by its Cayley code, determines a slalom
//! curve in the unit disk: an immersed arc that starts and ends on the
//! boundary circle and weaves once across every edge of the tree. The curve
//! is a divide, and reading it in the unit tangent bundle of the disk
//! produces a fibered knot in the 3-sphere. This crate computes the knot's
//! algebraic invariants exactly — Dynkin diagram, Coxeter and skew-Coxeter
//! elements, Alexander polynomial, dominating eigenvalue with its entropy
//! bound, gordian number, fiber genus, Conway-sphere decomposition — and
//! realizes the knot geometrically by lifting the curve to the tangent
//! bundle, with the geometric pipeline cross-validating the algebra.
//!
//! Two conventions are fixed throughout:
//!
//! * Cayley codes are 1-based attachment lists: `[0,1,1,2]` attaches vertex
//!   `i` to the earlier vertex given by the `i`-th entry, and vertex 0 (the
//!   root) is terminal.
//! * Matrices act on column vectors, and the bicolored vertex order of a
//!   Dynkin diagram lists the new (edge) vertices before the old ones.

pub mod dynkin;
pub mod coxeter;
pub mod divide;
pub mod gamma;
pub mod geometry;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod tree;
