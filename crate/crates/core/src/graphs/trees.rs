//! Free trees up to isomorphism.

use std::collections::BTreeMap;

use super::{Graph, GraphError};

pub const MAX_TREE_ORDER: usize = 10;

/// One representative per isomorphism class of trees on `n` vertices,
/// `1 <= n <= 10`.
///
/// Classes on `n` vertices are obtained by hanging a leaf on every vertex
/// of every class on `n - 1` vertices, deduplicated by
/// [`tree_canonical_code`]. Output is sorted by canonical code.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, GraphError> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(GraphError::InvalidParameter(format!(
            "tree enumeration supports 1 <= n <= {MAX_TREE_ORDER}, got {n}"
        )));
    }
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let single = Graph::empty(1);
    level.insert(tree_canonical_code(&single), single);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for tree in level.values() {
            for attach in 0..size - 1 {
                let edges = tree.edges().chain(std::iter::once((attach, size - 1)));
                let grown = Graph::from_edges(size, edges).expect("valid tree edges");
                next.entry(tree_canonical_code(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Decodes a Prüfer sequence over `0..n` into its labeled tree on `n`
/// vertices (`seq.len() == n - 2`).
pub fn prufer_decode(seq: &[usize], n: usize) -> Result<Graph, GraphError> {
    if n < 2 || seq.len() != n - 2 {
        return Err(GraphError::InvalidParameter(format!("a Prüfer sequence for n = {n} has length n - 2")));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges)
}

/// AHU code of the tree rooted at its center; for bicentral trees the
/// smaller of the two codes. Equal codes iff isomorphic trees.
pub fn tree_canonical_code(tree: &Graph) -> String {
    centers(tree).into_iter().map(|c| rooted_code(tree, c, usize::MAX)).min().unwrap_or_default()
}

fn centers(tree: &Graph) -> Vec<usize> {
    let n = tree.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree = tree.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &v in tree.neighbors(leaf) {
                degree[v] -= 1;
                if degree[v] == 1 {
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(tree: &Graph, root: usize, parent: usize) -> String {
    let mut children: Vec<String> =
        tree.neighbors(root).iter().filter(|&&v| v != parent).map(|&v| rooted_code(tree, v, root)).collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(11).is_err());
    }

    #[test]
    fn three_and_four() {
        let t3 = enumerate_trees(3).unwrap();
        assert!(t3[0].is_isomorphic(&Graph::path(3)));
        let t4 = enumerate_trees(4).unwrap();
        assert!(t4.iter().any(|t| t.is_isomorphic(&Graph::path(4))));
        assert!(t4.iter().any(|t| t.is_isomorphic(&Graph::star(3))));
        assert!(t4.iter().all(Graph::is_tree));
    }

    #[test]
    fn prufer_examples() {
        // [3,3] on 4 vertices is the star centered at 3
        let star = prufer_decode(&[3, 3], 4).unwrap();
        assert_eq!(star.degree(3), 3);
        let path = prufer_decode(&[1, 2], 4).unwrap();
        assert!(path.is_isomorphic(&Graph::path(4)));
        assert!(prufer_decode(&[1], 4).is_err());
        assert_eq!(prufer_decode(&[], 2).unwrap(), Graph::complete(2));
    }
}
