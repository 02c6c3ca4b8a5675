//! Group distance magic labelings over finite abelian groups.
//!
//! A Γ-distance magic labeling of a graph `G` with `|V(G)| = |Γ|` is a
//! bijection `l: V(G) → Γ` such that every vertex's neighbor sum
//! `w(x) = Σ_{y ∈ N(x)} l(y)` is the same element μ of Γ.
//!
//! - [`abelian`]: finite abelian groups as products of cyclic factors.
//! - [`graphs`]: simple graphs, a small expression language, tree enumeration.
//! - [`products`]: lexicographic, direct and Cartesian products.
//! - [`magic`]: labelings, the verifier, obstructions and certificates.
//! - [`constructors`]: explicit labelings of product and join families.
//! - [`solver`]: exhaustive search.

pub mod abelian;
pub mod constructors;
pub mod graphs;
pub mod magic;
pub mod products;
pub mod solver;

pub use abelian::{GroupElement, GroupSpec};
pub use graphs::Graph;
pub use magic::{verify, Labeling, Verdict};
