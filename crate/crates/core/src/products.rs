//! Lexicographic, direct and Cartesian products.
//!
//! All three share one vertex numbering: the pair `(i, j)` with `i` a vertex
//! of `G` and `j` a vertex of `H` is vertex `i·|V(H)| + j`. The ids
//! `i·|V(H)| .. (i+1)·|V(H)|` therefore form the copy `H_i` of `H` that
//! replaces vertex `i` of `G`, and labelers rely on this.

use crate::graphs::Graph;

/// Id of the product vertex `(g, h)`.
#[inline]
pub fn product_vertex(h_order: usize, g: usize, h: usize) -> usize {
    g * h_order + h
}

fn product_by(g: &Graph, h: &Graph, adjacent: impl Fn(usize, usize, usize, usize) -> bool) -> Graph {
    let m = h.n();
    Graph::from_fn(g.n() * m, |a, b| adjacent(a / m, a % m, b / m, b % m))
}

/// `G ∘ H`: `(g,h) ~ (g',h')` iff `g ~ g'`, or `g = g'` and `h ~ h'`.
pub fn lex_product(g: &Graph, h: &Graph) -> Graph {
    product_by(g, h, |g1, h1, g2, h2| g.has_edge(g1, g2) || (g1 == g2 && h.has_edge(h1, h2)))
}

/// `G × H`: `(g,h) ~ (g',h')` iff `g ~ g'` and `h ~ h'`.
pub fn direct_product(g: &Graph, h: &Graph) -> Graph {
    product_by(g, h, |g1, h1, g2, h2| g.has_edge(g1, g2) && h.has_edge(h1, h2))
}

/// `G □ H`: `(g,h) ~ (g',h')` iff one coordinate is equal and the other adjacent.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    product_by(g, h, |g1, h1, g2, h2| (g1 == g2 && h.has_edge(h1, h2)) || (h1 == h2 && g.has_edge(g1, g2)))
}
