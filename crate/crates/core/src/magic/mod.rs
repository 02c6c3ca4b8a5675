//! Γ-distance magic labelings: data model, weights and verification.
//!
//! A labeling is a bijection `l: V(G) → Γ`. The weight of `u` is the group
//! sum of the labels of its neighbors, and `l` is Γ-distance magic when all
//! weights agree; the common value is the magic constant `μ0`.

mod certificate;
mod obstruction;

pub use certificate::{Certificate, CertificateError, CertificateVerdict};
pub use obstruction::{
    all_obstructions, detect_biregular_universal, kmn_group_magic, obstruction_forced_identity,
    obstruction_shared_neighborhood, obstruction_tree_shape, obstruction_two_universal, tree_group_magic,
    BiregularUniversal, Obstruction, ObstructionKind, Witness,
};

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{GroupElement, GroupError, GroupSpec};
use crate::graphs::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagicError {
    #[error("graph has {vertices} vertices but the group has order {order}")]
    SizeMismatch { vertices: usize, order: u64 },
    #[error("label {element} is used twice (vertices {first} and {second})")]
    NotBijective { element: GroupElement, first: usize, second: usize },
    #[error("label of vertex {vertex} is not an element of {group}")]
    ForeignElement { vertex: usize, group: GroupSpec },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("labeling is not Γ-distance magic: {0}")]
    NotMagic(String),
    #[error("integer labeling is not distance magic: {0}")]
    NotDistanceMagic(String),
    #[error("{0} has no element g with 2g != e, so negation fixes every labeling")]
    NoNonInvolution(GroupSpec),
    #[error("graph is not a tree")]
    NotATree,
    #[error("a single vertex is a trivial tree")]
    TrivialTree,
}

/// A bijection from vertex ids to the elements of a group, optionally with
/// the magic constant it claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labeling {
    group: GroupSpec,
    assignment: Vec<GroupElement>,
    magic_constant: Option<GroupElement>,
}

impl Labeling {
    /// Checks that `assignment` (indexed by vertex id) is a bijection onto `group`.
    pub fn new(group: GroupSpec, assignment: Vec<GroupElement>) -> Result<Self, MagicError> {
        if assignment.len() as u64 != group.order() {
            return Err(MagicError::SizeMismatch { vertices: assignment.len(), order: group.order() });
        }
        let mut first_use = std::collections::HashMap::with_capacity(assignment.len());
        for (vertex, g) in assignment.iter().enumerate() {
            if !group.contains(g) {
                return Err(MagicError::ForeignElement { vertex, group });
            }
            if let Some(&first) = first_use.get(g) {
                return Err(MagicError::NotBijective { element: g.clone(), first, second: vertex });
            }
            first_use.insert(g, vertex);
        }
        Ok(Labeling { group, assignment, magic_constant: None })
    }

    pub fn with_magic_constant(mut self, mu: GroupElement) -> Self {
        self.magic_constant = Some(mu);
        self
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn assignment(&self) -> &[GroupElement] {
        &self.assignment
    }

    pub fn label(&self, v: usize) -> &GroupElement {
        &self.assignment[v]
    }

    pub fn magic_constant(&self) -> Option<&GroupElement> {
        self.magic_constant.as_ref()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Magic(GroupElement),
    /// The first vertex whose weight differs from vertex 0's.
    Rejected {
        first: usize,
        first_weight: GroupElement,
        second: usize,
        second_weight: GroupElement,
    },
}

impl Verdict {
    pub fn magic_constant(&self) -> Option<&GroupElement> {
        match self {
            Verdict::Magic(mu) => Some(mu),
            Verdict::Rejected { .. } => None,
        }
    }

    pub fn is_magic(&self) -> bool {
        matches!(self, Verdict::Magic(_))
    }
}

fn check_size(g: &Graph, l: &Labeling) -> Result<(), MagicError> {
    if g.n() as u64 != l.group.order() || g.n() != l.assignment.len() {
        return Err(MagicError::SizeMismatch { vertices: g.n(), order: l.group.order() });
    }
    Ok(())
}

/// `w(v)`: sum of the labels on `N(v)`; `e` for an isolated vertex.
pub fn weight(g: &Graph, l: &Labeling, v: usize) -> Result<GroupElement, MagicError> {
    check_size(g, l)?;
    Ok(l.group.sum(g.neighbors(v).iter().map(|&u| &l.assignment[u]))?)
}

pub fn weights(g: &Graph, l: &Labeling) -> Result<Vec<GroupElement>, MagicError> {
    (0..g.n()).map(|v| weight(g, l, v)).collect()
}

/// Returns `Magic(μ0)` when every vertex has the same weight.
pub fn verify(g: &Graph, l: &Labeling) -> Result<Verdict, MagicError> {
    check_size(g, l)?;
    let reference = weight(g, l, 0)?;
    for v in 1..g.n() {
        let w = weight(g, l, v)?;
        if w != reference {
            return Ok(Verdict::Rejected { first: 0, first_weight: reference, second: v, second_weight: w });
        }
    }
    Ok(Verdict::Magic(reference))
}

/// `v ↦ -l(v)`, a labeling with magic constant `-μ0`.
///
/// Requires `l` to be magic on `g` and the group to contain an element that
/// is not its own inverse (otherwise negation is the identity map).
pub fn negate_labeling(g: &Graph, l: &Labeling) -> Result<Labeling, MagicError> {
    if !l.group.has_non_involution() {
        return Err(MagicError::NoNonInvolution(l.group.clone()));
    }
    let mu = match verify(g, l)? {
        Verdict::Magic(mu) => mu,
        Verdict::Rejected { first, second, .. } => {
            return Err(MagicError::NotMagic(format!("weights of {first} and {second} differ")))
        }
    };
    let assignment = l.assignment.iter().map(|x| l.group.neg(x)).collect::<Result<Vec<_>, _>>()?;
    let negated = Labeling::new(l.group.clone(), assignment)?;
    Ok(negated.with_magic_constant(l.group.neg(&mu)?))
}

/// Turns a distance magic labeling with labels `1..=n` and constant `μ`
/// into a `Z_n`-distance magic labeling: label `n` becomes 0, the rest stay.
pub fn to_zn_labeling(g: &Graph, labels: &[u64], mu: u64) -> Result<Labeling, MagicError> {
    let n = g.n();
    if labels.len() != n {
        return Err(MagicError::SizeMismatch { vertices: n, order: labels.len() as u64 });
    }
    let distinct: HashSet<u64> = labels.iter().copied().collect();
    if distinct.len() != n || labels.iter().any(|&x| x == 0 || x > n as u64) {
        return Err(MagicError::NotDistanceMagic(format!("labels are not a bijection onto 1..={n}")));
    }
    for v in 0..n {
        let w: u64 = g.neighbors(v).iter().map(|&u| labels[u]).sum();
        if w != mu {
            return Err(MagicError::NotDistanceMagic(format!("vertex {v} has weight {w}, not {mu}")));
        }
    }
    let group = GroupSpec::cyclic(n as u64)?;
    let to_element = |x: u64| -> Result<GroupElement, GroupError> {
        if group.factors().is_empty() {
            Ok(group.zero())
        } else {
            group.element(&[(x % n as u64) as i64])
        }
    };
    let assignment = labels.iter().map(|&x| to_element(x)).collect::<Result<Vec<_>, _>>()?;
    let mu0 = to_element(mu)?;
    Ok(Labeling::new(group, assignment)?.with_magic_constant(mu0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn cyclic_labeling(n: u64, values: &[i64]) -> Labeling {
        let g = z(n);
        let assignment = values.iter().map(|&x| g.element(&[x]).unwrap()).collect();
        Labeling::new(g, assignment).unwrap()
    }

    #[test]
    fn weight_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let l = cyclic_labeling(4, &[1, 0, 2, 3]);
        assert_eq!(weight(&c4, &l, 0).unwrap().residues(), &[3]);

        let edgeless = Graph::empty(3);
        let l3 = cyclic_labeling(3, &[0, 1, 2]);
        assert_eq!(weight(&edgeless, &l3, 1).unwrap(), z(3).zero());

        let star = Graph::star(3);
        let l = cyclic_labeling(4, &[2, 0, 1, 3]);
        for leaf in 1..4 {
            assert_eq!(weight(&star, &l, leaf).unwrap().residues(), &[2]);
        }
    }

    #[test]
    fn verify_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let good = cyclic_labeling(4, &[1, 0, 2, 3]);
        assert_eq!(verify(&c4, &good).unwrap(), Verdict::Magic(z(4).element(&[3]).unwrap()));

        let bad = cyclic_labeling(4, &[0, 1, 2, 3]);
        match verify(&c4, &bad).unwrap() {
            Verdict::Rejected { first_weight, second_weight, .. } => {
                assert_eq!(first_weight.residues(), &[0]);
                assert_eq!(second_weight.residues(), &[2]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let g = Graph::complete_minus_matching(4).unwrap().join(&Graph::complete(1));
        let l = cyclic_labeling(5, &[1, 4, 2, 3, 0]);
        assert_eq!(verify(&g, &l).unwrap(), Verdict::Magic(z(5).zero()));

        assert_eq!(verify(&Graph::empty(3), &cyclic_labeling(3, &[2, 0, 1])).unwrap(), Verdict::Magic(z(3).zero()));
    }

    #[test]
    fn size_and_bijection_errors() {
        let l = cyclic_labeling(4, &[1, 0, 2, 3]);
        assert!(matches!(verify(&Graph::cycle(5).unwrap(), &l), Err(MagicError::SizeMismatch { .. })));
        let g = z(3);
        let dup = vec![g.zero(), g.zero(), g.element(&[1]).unwrap()];
        assert!(matches!(Labeling::new(g.clone(), dup), Err(MagicError::NotBijective { .. })));
        assert!(matches!(Labeling::new(g, vec![]), Err(MagicError::SizeMismatch { .. })));
    }

    #[test]
    fn negation_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let l = cyclic_labeling(4, &[1, 0, 2, 3]);
        let neg = negate_labeling(&c4, &l).unwrap();
        let values: Vec<u64> = neg.assignment().iter().map(|x| x.residues()[0]).collect();
        assert_eq!(values, [3, 0, 2, 1]);
        assert_eq!(verify(&c4, &neg).unwrap(), Verdict::Magic(z(4).element(&[1]).unwrap()));
        assert_eq!(neg.magic_constant().unwrap().residues(), &[1]);
        assert_ne!(neg, l);

        let klein: GroupSpec = "Z2xZ2".parse().unwrap();
        let l = Labeling::new(klein.clone(), klein.elements().collect()).unwrap();
        assert!(matches!(negate_labeling(&c4, &l), Err(MagicError::NoNonInvolution(_))));

        let not_magic = cyclic_labeling(4, &[0, 1, 2, 3]);
        assert!(matches!(negate_labeling(&c4, &not_magic), Err(MagicError::NotMagic(_))));
    }

    #[test]
    fn integer_bridge() {
        // opposite pairs {v0,v2} ↦ {1,4}, {v1,v3} ↦ {2,3}
        let c4 = Graph::cycle(4).unwrap();
        let l = to_zn_labeling(&c4, &[1, 2, 4, 3], 5).unwrap();
        assert_eq!(l.label(2).residues(), &[0]);
        assert_eq!(verify(&c4, &l).unwrap(), Verdict::Magic(z(4).element(&[1]).unwrap()));
        assert_eq!(l.magic_constant().unwrap().residues(), &[1]);

        let k1 = Graph::complete(1);
        let l = to_zn_labeling(&k1, &[1], 0).unwrap();
        assert_eq!(verify(&k1, &l).unwrap(), Verdict::Magic(GroupSpec::trivial().zero()));

        assert!(matches!(to_zn_labeling(&c4, &[1, 2, 3, 4], 5), Err(MagicError::NotDistanceMagic(_))));
        assert!(matches!(to_zn_labeling(&c4, &[1, 1, 4, 3], 5), Err(MagicError::NotDistanceMagic(_))));
    }

    /// P4 has no distance magic labeling at all (4! integer labelings).
    #[test]
    fn integer_bridge_rejects_every_p4_labeling() {
        let p4 = Graph::path(4);
        let mut perm = [1u64, 2, 3, 4];
        let mut count = 0;
        permute(&mut perm, 0, &mut |labels| {
            for mu in 1..=10 {
                if to_zn_labeling(&p4, labels, mu).is_ok() {
                    count += 1;
                }
            }
        });
        assert_eq!(count, 0);
    }

    fn permute(items: &mut [u64], k: usize, visit: &mut impl FnMut(&[u64])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }
}
