//! Structural obstructions to Γ-distance magic labelings.

use std::fmt;

use serde::Serialize;

use super::MagicError;
use crate::graphs::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ObstructionKind {
    /// Two vertices of degree `|V| - 1`.
    TwoUniversal,
    /// `u ≠ v` with `|N(u) ∩ N(v)| = deg(u) - 1 = deg(v) - 1`.
    SharedNeighborhood,
    /// A tree other than `K_{1,n}` with `n ≢ 1 (mod 4)`.
    TreeShape,
    /// Every Γ-labeling must put `e` on the witness vertex.
    ForcedIdentity,
}

impl ObstructionKind {
    /// Whether the obstruction excludes a labeling for every group of order `|V|`.
    pub fn rules_out_all_groups(self) -> bool {
        !matches!(self, ObstructionKind::ForcedIdentity)
    }

    pub fn tag(self) -> &'static str {
        match self {
            ObstructionKind::TwoUniversal => "two-universal",
            ObstructionKind::SharedNeighborhood => "shared-neighborhood",
            ObstructionKind::TreeShape => "tree-shape",
            ObstructionKind::ForcedIdentity => "forced-identity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    Pair(usize, usize),
    Vertex(usize),
    Text(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pair(u, v) => write!(f, "({u},{v})"),
            Witness::Vertex(v) => write!(f, "{v}"),
            Witness::Text(text) => f.write_str(text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub witness: Witness,
}

/// First two vertices of degree `|V| - 1`, if there are two.
pub fn obstruction_two_universal(g: &Graph) -> Option<Obstruction> {
    let n = g.n();
    let mut universal = (0..n).filter(|&v| g.degree(v) + 1 == n);
    let u = universal.next()?;
    let v = universal.next()?;
    Some(Obstruction { kind: ObstructionKind::TwoUniversal, witness: Witness::Pair(u, v) })
}

fn common_neighbors(g: &Graph, u: usize, v: usize) -> usize {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// First pair `u < v` (lexicographic) of equal positive degree `d` sharing
/// exactly `d - 1` neighbors.
pub fn obstruction_shared_neighborhood(g: &Graph) -> Option<Obstruction> {
    for u in 0..g.n() {
        let d = g.degree(u);
        if d == 0 {
            continue;
        }
        for v in u + 1..g.n() {
            if g.degree(v) == d && common_neighbors(g, u, v) == d - 1 {
                return Some(Obstruction { kind: ObstructionKind::SharedNeighborhood, witness: Witness::Pair(u, v) });
            }
        }
    }
    None
}

fn star_leaves(t: &Graph) -> Option<usize> {
    let n = t.n();
    (n >= 2 && t.is_tree() && (0..n).any(|v| t.degree(v) == n - 1)).then_some(n - 1)
}

/// Whether a non-trivial tree is Γ-distance magic (for any, equivalently
/// every, Γ of its order): exactly the stars `K_{1,n}` with `n ≢ 1 (mod 4)`.
pub fn tree_group_magic(t: &Graph) -> Result<bool, MagicError> {
    if !t.is_tree() {
        return Err(MagicError::NotATree);
    }
    if t.n() == 1 {
        return Err(MagicError::TrivialTree);
    }
    Ok(star_leaves(t).is_some_and(|leaves| leaves % 4 != 1))
}

pub fn obstruction_tree_shape(g: &Graph) -> Option<Obstruction> {
    if g.n() < 2 || tree_group_magic(g).ok()? {
        return None;
    }
    let text = match star_leaves(g) {
        Some(leaves) => format!("star K_1,{leaves} with {leaves} ≡ 1 mod 4"),
        None => format!("tree of diameter {} is not a star", g.diameter().unwrap_or(0)),
    };
    Some(Obstruction { kind: ObstructionKind::TreeShape, witness: Witness::Text(text) })
}

/// `K_{m,n}` is group distance magic iff `m + n ≢ 2 (mod 4)`.
pub fn kmn_group_magic(m: usize, n: usize) -> bool {
    (m + n) % 4 != 2
}

/// A unique universal vertex whose removal leaves an `r2`-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BiregularUniversal {
    pub vertex: usize,
    pub r2: usize,
    /// `G ≅ (K_{n-1} - M) + K_1`, checked structurally.
    pub via_matching_join: bool,
}

/// Bi-regular graphs on an odd number `n > 3` of vertices with one vertex of
/// degree `n - 1` and every other vertex of degree `r2 ∈ {1, 2, 3, n-3}`,
/// or `r2 = n - 2` when `G ≅ (K_{n-1} - M) + K_1`. In these graphs every
/// Γ-distance magic labeling puts `e` on the universal vertex.
pub fn detect_biregular_universal(g: &Graph) -> Option<BiregularUniversal> {
    let n = g.n();
    if n <= 3 || n.is_multiple_of(2) {
        return None;
    }
    let mut universal = (0..n).filter(|&v| g.degree(v) == n - 1);
    let vertex = universal.next()?;
    if universal.next().is_some() {
        return None;
    }
    let r2 = g.degree((vertex + 1) % n);
    if (0..n).any(|v| v != vertex && g.degree(v) != r2) {
        return None;
    }
    let via_matching_join = r2 == n - 2 && {
        let rest: Vec<usize> = (0..n).filter(|&v| v != vertex).collect();
        let missing = g.induced(&rest).complement();
        missing.degrees().iter().all(|&d| d == 1)
    };
    let listed = matches!(r2, 1..=3) || r2 == n - 3;
    (listed || via_matching_join).then_some(BiregularUniversal { vertex, r2, via_matching_join })
}

pub fn obstruction_forced_identity(g: &Graph) -> Option<Obstruction> {
    detect_biregular_universal(g)
        .map(|d| Obstruction { kind: ObstructionKind::ForcedIdentity, witness: Witness::Vertex(d.vertex) })
}

/// Every check in a fixed order: two-universal, shared-neighborhood,
/// tree-shape, forced-identity.
pub fn all_obstructions(g: &Graph) -> Vec<Obstruction> {
    [
        obstruction_two_universal(g),
        obstruction_shared_neighborhood(g),
        obstruction_tree_shape(g),
        obstruction_forced_identity(g),
    ]
    .into_iter()
    .flatten()
    .collect()
}
