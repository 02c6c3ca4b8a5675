//! Constructive Γ-distance magic labelings.
//!
//! Each labeler builds its graph (a product `G ∘ H` or `G × H`, a star, or
//! `(K_{n-1} - M) + K_1`), writes down the labeling, predicts the magic
//! constant, and checks the prediction with [`verify`]. A mismatch is
//! reported as [`ConstructError::VerificationFailed`] and never returned as
//! a report.
//!
//! Product labelers work in coordinates `Z_c × A` given by a
//! [`CyclicSplit`] of Γ. Twin vertices `x_i^t`, `x_i^{t'}` of block `H_i`
//! are the pair `t` of the factor's [`TwinPairing`], offset by `i·|V(H)|`.
//! The twin of a vertex labeled `(z, a)` is labeled `(c - z, -a)` for a
//! per-construction constant `c`.

mod auto;

pub use auto::{auto_label, auto_label_single};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{CyclicSplit, GroupElement, GroupError, GroupSpec};
use crate::graphs::{Graph, GraphError, TwinPairing};
use crate::magic::{verify, Labeling, MagicError, Verdict};
use crate::products::{direct_product, lex_product, product_vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    /// `(K_{n-1} - M) + K_1`, `l(v0) = e`, twins get `g, -g`.
    MatchingJoin,
    /// `K_{1,n}` with the center solving `2x = s(Γ)`.
    Star,
    /// `G ∘ C_{4k+2}^{2k}` over `Z_{4k+2} × A`.
    C4k2Lex,
    /// `G × C_{4k+2}^{2k}` over `Z_{4k+2} × A`.
    C4k2Dir,
    /// `G ∘ H`, `|V(H)| = 2^k`, over `Z_{2^s} × A` with `s <= k - 1`.
    BalancedSmallLex,
    BalancedSmallDir,
    /// `G ∘ H`, `|V(H)| = 2^k`, over `Z_{2^s} × A` with `s >= k`.
    BalancedLargeLex,
    BalancedLargeDir,
    /// `G ∘ H` with all degrees of `G` even, over `Z_{2^k} × A`.
    EvenDegreesLex,
    /// `K_{m,n} ∘ H`, `m` even, `n` odd, `H` `2r`-regular with `r` odd.
    KmnMixedLex,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::MatchingJoin,
        Theorem::Star,
        Theorem::C4k2Lex,
        Theorem::C4k2Dir,
        Theorem::BalancedSmallLex,
        Theorem::BalancedSmallDir,
        Theorem::BalancedLargeLex,
        Theorem::BalancedLargeDir,
        Theorem::EvenDegreesLex,
        Theorem::KmnMixedLex,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::MatchingJoin => "matching-join",
            Theorem::Star => "star",
            Theorem::C4k2Lex => "c4k2-lex",
            Theorem::C4k2Dir => "c4k2-dir",
            Theorem::BalancedSmallLex => "balanced-small-lex",
            Theorem::BalancedSmallDir => "balanced-small-dir",
            Theorem::BalancedLargeLex => "balanced-large-lex",
            Theorem::BalancedLargeDir => "balanced-large-dir",
            Theorem::EvenDegreesLex => "even-degrees-lex",
            Theorem::KmnMixedLex => "kmn-mixed-lex",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.tag() == tag)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Product {
    Lex,
    Dir,
}

impl Product {
    pub fn build(self, g: &Graph, h: &Graph) -> Graph {
        match self {
            Product::Lex => lex_product(g, h),
            Product::Dir => direct_product(g, h),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Product::Lex => "lex",
            Product::Dir => "dir",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("group order is {actual}, expected {expected}")]
    OrderMismatch { expected: u64, actual: u64 },
    #[error("{group} has no direct factor Z{order}")]
    NoCyclicFactor { group: GroupSpec, order: u64 },
    #[error("degrees not all ≡ m mod {modulus} (residues {})", join_values(.residues))]
    DegreeResidues { modulus: u64, residues: Vec<u64> },
    #[error("{0}")]
    Precondition(String),
    #[error("{theorem} produced a labeling that does not verify: {detail}")]
    VerificationFailed { theorem: Theorem, detail: String },
    #[error("no applicable theorem: {}", join_attempts(.0))]
    NoApplicableTheorem(Vec<(Theorem, ConstructError)>),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Magic(#[from] MagicError),
}

fn join_values(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn join_attempts(attempts: &[(Theorem, ConstructError)]) -> String {
    if attempts.is_empty() {
        return "no candidate construction".into();
    }
    attempts.iter().map(|(t, e)| format!("{t}: {e}")).collect::<Vec<_>>().join("; ")
}

fn precondition(msg: impl Into<String>) -> ConstructError {
    ConstructError::Precondition(msg.into())
}

/// Construction parameters, named as in the theorems they come from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    /// `|V(H)| = 2^k` or `4k + 2`.
    pub k: Option<u32>,
    /// Exponent of the cyclic factor `Z_{2^s}`.
    pub s: Option<u32>,
    /// Common degree residue of `G`.
    pub m: Option<u64>,
    /// `H` is `2r`-regular.
    pub r: Option<u64>,
    /// `r = 2t + 1` for the `K_{m,n}` construction.
    pub t: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub theorem: Theorem,
    pub graph: Graph,
    pub labeling: Labeling,
    pub predicted_mu: GroupElement,
    pub split: Option<CyclicSplit>,
    pub parameters: Parameters,
}

impl ConstructionReport {
    /// The magic constant as `(z, a)` in split coordinates.
    pub fn split_mu(&self) -> Option<(u64, GroupElement)> {
        self.split.as_ref().map(|s| s.to_pair(&self.predicted_mu).expect("mu lies in the group"))
    }
}

/// A balanced distance magic factor `H`: regular, `2r`-regular, with its
/// twin pairing.
#[derive(Debug, Clone)]
pub struct BalancedFactor {
    graph: Graph,
    pairing: TwinPairing,
    r: usize,
}

impl BalancedFactor {
    pub fn new(graph: Graph) -> Result<Self, ConstructError> {
        if graph.n() < 2 || !graph.is_balanced_dmg() {
            return Err(precondition("H is not a balanced distance magic graph"));
        }
        let pairing = graph.find_twin_pairing().expect("balanced graphs have a twin pairing");
        let r = graph.degree(0) / 2;
        Ok(BalancedFactor { graph, pairing, r })
    }

    /// `C_{4k+2}^{2k} ≅ K_{4k+2} - M`, twins `(t, t + 2k + 1)`.
    pub fn c4k2(k: u32) -> Result<Self, ConstructError> {
        if k == 0 {
            return Err(precondition("k must be at least 1"));
        }
        let size = 4 * k as usize + 2;
        Self::new(Graph::cycle(size)?.power(2 * k as usize)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pairing(&self) -> &TwinPairing {
        &self.pairing
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// `r` for a `2r`-regular factor.
    pub fn half_degree(&self) -> usize {
        self.r
    }

    /// `k` when `|V(H)| = 2^k`.
    pub fn log2_order(&self) -> Option<u32> {
        let n = self.order();
        n.is_power_of_two().then(|| n.trailing_zeros())
    }

    /// `k` when `H ≅ K_{4k+2} - M`.
    pub fn c4k2_parameter(&self) -> Option<u32> {
        let n = self.order();
        (n >= 6 && n % 4 == 2 && self.graph.degree(0) == n - 2).then(|| ((n - 2) / 4) as u32)
    }
}

/// Label of the first vertex `x_i^t` of a twin pair, in split coordinates,
/// together with the twin constant `c`.
struct BlockLabel {
    z: i64,
    a: GroupElement,
    twin_z: i64,
}

fn check_order(group: &GroupSpec, expected: u64) -> Result<(), ConstructError> {
    if group.order() != expected {
        return Err(ConstructError::OrderMismatch { expected, actual: group.order() });
    }
    Ok(())
}

/// The common residue of all degrees of `g` modulo `modulus`.
pub fn common_degree_residue(g: &Graph, modulus: u64) -> Result<u64, ConstructError> {
    let mut residues: Vec<u64> = g.degrees().iter().map(|&d| d as u64 % modulus).collect();
    residues.sort_unstable();
    residues.dedup();
    match residues.as_slice() {
        [] => Ok(0),
        [m] => Ok(*m),
        _ => Err(ConstructError::DegreeResidues { modulus, residues }),
    }
}

fn split_for(group: &GroupSpec, order: u64) -> Result<CyclicSplit, ConstructError> {
    group.split_cyclic(order).ok_or_else(|| ConstructError::NoCyclicFactor { group: group.clone(), order })
}

/// Lays out block labels over `G ∘ H` / `G × H` and verifies the predicted
/// constant `(mu_z, a_0)`.
#[allow(clippy::too_many_arguments)]
fn assemble_blocks(
    theorem: Theorem,
    g: &Graph,
    h: &BalancedFactor,
    product: Product,
    split: CyclicSplit,
    mu_z: i64,
    parameters: Parameters,
    block_label: impl Fn(usize, usize) -> BlockLabel,
) -> Result<ConstructionReport, ConstructError> {
    let graph = product.build(g, &h.graph);
    let complement = split.complement().clone();
    let group = split.group().clone();
    let mut assignment = vec![group.zero(); graph.n()];
    for i in 0..g.n() {
        for (t, &(x, x_twin)) in h.pairing.pairs().iter().enumerate() {
            let BlockLabel { z, a, twin_z } = block_label(i, t);
            let twin_a = complement.neg(&a)?;
            assignment[product_vertex(h.order(), i, x)] = split.from_pair(z, &a)?;
            assignment[product_vertex(h.order(), i, x_twin)] = split.from_pair(twin_z - z, &twin_a)?;
        }
    }
    let predicted_mu = split.from_pair(mu_z, &complement.zero())?;
    finish(theorem, graph, group, assignment, predicted_mu, Some(split), parameters)
}

fn finish(
    theorem: Theorem,
    graph: Graph,
    group: GroupSpec,
    assignment: Vec<GroupElement>,
    predicted_mu: GroupElement,
    split: Option<CyclicSplit>,
    parameters: Parameters,
) -> Result<ConstructionReport, ConstructError> {
    let failed = |detail: String| ConstructError::VerificationFailed { theorem, detail };
    let labeling = Labeling::new(group, assignment).map_err(|e| failed(e.to_string()))?;
    match verify(&graph, &labeling)? {
        Verdict::Magic(mu) if mu == predicted_mu => {}
        Verdict::Magic(mu) => return Err(failed(format!("magic constant {mu}, predicted {predicted_mu}"))),
        Verdict::Rejected { first, first_weight, second, second_weight } => {
            return Err(failed(format!("w({first}) = {first_weight} but w({second}) = {second_weight}")))
        }
    }
    Ok(ConstructionReport {
        theorem,
        graph,
        labeling: labeling.with_magic_constant(predicted_mu.clone()),
        predicted_mu,
        split,
        parameters,
    })
}

/// `(K_{n-1} - M) + K_1` over a group of odd order `n`: `v0 ↦ e`, and each
/// twin pair gets `g, -g`. The magic constant is `e`.
pub fn label_matching_join(n: usize, group: &GroupSpec) -> Result<ConstructionReport, ConstructError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(precondition(format!("n must be an odd integer >= 3, got {n}")));
    }
    check_order(group, n as u64)?;
    let g = Graph::complete_minus_matching(n - 1)?.join(&Graph::complete(1));
    label_matching_join_on(&g, group)
}

/// Same construction for any graph isomorphic to `(K_{n-1} - M) + K_1`.
pub fn label_matching_join_on(g: &Graph, group: &GroupSpec) -> Result<ConstructionReport, ConstructError> {
    let n = g.n();
    if n < 3 || n.is_multiple_of(2) {
        return Err(precondition(format!("n must be an odd integer >= 3, got {n}")));
    }
    check_order(group, n as u64)?;
    let hub = (0..n).find(|&v| g.degree(v) == n - 1).ok_or_else(|| precondition("no vertex of degree n-1"))?;
    let mut partner = vec![usize::MAX; n];
    for v in (0..n).filter(|&v| v != hub) {
        let missing: Vec<usize> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect();
        match missing.as_slice() {
            [u] if *u != hub => partner[v] = *u,
            _ => return Err(precondition("graph is not (K_{n-1} - M) + K_1")),
        }
    }
    let mut assignment = vec![group.zero(); n];
    let mut used = vec![false; n];
    let mut elements = group.elements().skip(1);
    for v in (0..n).filter(|&v| v != hub) {
        if used[v] {
            continue;
        }
        let w = partner[v];
        let x = loop {
            let x = elements.next().expect("enough elements");
            let neg = group.neg(&x)?;
            if group.index_of(&x)? < group.index_of(&neg)? {
                break x;
            }
        };
        assignment[w] = group.neg(&x)?;
        assignment[v] = x;
        used[v] = true;
        used[w] = true;
    }
    finish(Theorem::MatchingJoin, g.clone(), group.clone(), assignment, group.zero(), None, Parameters::default())
}

/// `K_{1,n}` over a group of order `n + 1`: center `x` with `2x = s(Γ)`,
/// leaves get the other elements in enumeration order, magic constant `x`.
/// `Ok(None)` when no such `x` exists, which happens iff `n ≡ 1 (mod 4)`.
pub fn label_star(n: usize, group: &GroupSpec) -> Result<Option<ConstructionReport>, ConstructError> {
    label_star_on(&Graph::star(n), group)
}

pub fn label_star_on(g: &Graph, group: &GroupSpec) -> Result<Option<ConstructionReport>, ConstructError> {
    let n = g.n();
    check_order(group, n as u64)?;
    let center = (0..n)
        .find(|&v| g.degree(v) + 1 == n)
        .filter(|_| g.is_tree() && n >= 2)
        .ok_or_else(|| precondition("graph is not a star K_{1,n}"))?;
    let total = group.sum_of_elements();
    let Some(x) = group.elements().find(|x| group.scalar_mul(2, x).ok().as_ref() == Some(&total)) else {
        return Ok(None);
    };
    let mut assignment = vec![group.zero(); n];
    assignment[center] = x.clone();
    let mut rest = group.elements().filter(|y| *y != x);
    for v in (0..n).filter(|&v| v != center) {
        assignment[v] = rest.next().expect("n - 1 leaves");
    }
    let report = finish(Theorem::Star, g.clone(), group.clone(), assignment, x, None, Parameters::default())?;
    Ok(Some(report))
}

/// `G ∘ C_{4k+2}^{2k}` over `Γ ≅ Z_{4k+2} × A`, for `G` whose degrees are
/// all even (constant `(2k+2, a_0)`) or all odd (constant `(1, a_0)`).
pub fn label_lex_c4k2(g: &Graph, k: u32, group: &GroupSpec) -> Result<ConstructionReport, ConstructError> {
    label_c4k2_factor(g, &BalancedFactor::c4k2(k)?, group, Product::Lex)
}

/// `G × C_{4k+2}^{2k}` over `Γ ≅ Z_{4k+2} × A`, for `G` with every degree
/// `≡ m (mod 4k+2)`; constant `(-2mk, a_0)`.
pub fn label_dir_c4k2(g: &Graph, k: u32, group: &GroupSpec) -> Result<ConstructionReport, ConstructError> {
    label_c4k2_factor(g, &BalancedFactor::c4k2(k)?, group, Product::Dir)
}

/// The same constructions for any `H ≅ K_{4k+2} - M` with its own vertex
/// numbering.
pub fn label_c4k2_factor(
    g: &Graph,
    h: &BalancedFactor,
    group: &GroupSpec,
    product: Product,
) -> Result<ConstructionReport, ConstructError> {
    let k = h.c4k2_parameter().ok_or_else(|| precondition("H must be K_{4k+2} - M with k >= 1"))?;
    let k = k as i64;
    let c = 4 * k + 2;
    check_order(group, c as u64 * g.n() as u64)?;
    let split = split_for(group, c as u64)?;
    let (theorem, mu_z, m) = match product {
        Product::Lex => {
            let parity = common_degree_residue(g, 2)
                .map_err(|_| precondition("degrees of G are neither all even nor all odd"))?;
            (Theorem::C4k2Lex, if parity == 0 { 2 * k + 2 } else { 1 }, parity)
        }
        Product::Dir => {
            let m = common_degree_residue(g, c as u64)?;
            (Theorem::C4k2Dir, -2 * m as i64 * k, m)
        }
    };
    let parameters = Parameters { k: Some(k as u32), m: Some(m), r: Some(2 * k as u64), ..Default::default() };
    let a = split.complement().clone();
    assemble_blocks(theorem, g, h, product, split, mu_z, parameters, |i, t| BlockLabel {
        z: t as i64,
        a: a.element_at(i).expect("|A| = |V(G)|"),
        twin_z: 4 * k + 1,
    })
}

fn pow2_parameter(h: &BalancedFactor) -> Result<u32, ConstructError> {
    match h.log2_order() {
        Some(k) if k >= 2 => Ok(k),
        _ => Err(precondition(format!("H must have 2^k vertices with k >= 2, has {}", h.order()))),
    }
}

/// `G ∘ H` for a balanced `H` on `2^k` vertices over `Γ ≅ Z_{2^s} × A`.
///
/// For `s <= k - 1` there is no condition on `G` and the constant is
/// `(-r, a_0)`. For `s >= k` the degrees of `G` must agree mod `2^{s-1}`
/// (common residue `m`), `2^{s-k}` must divide `|V(G)|`, and the constant
/// is `(-r - 2^{k-1} m, a_0)`.
pub fn label_lex_balanced_pow2(
    g: &Graph,
    h: &BalancedFactor,
    group: &GroupSpec,
    s: u32,
) -> Result<ConstructionReport, ConstructError> {
    balanced_pow2(g, h, group, s, Product::Lex)
}

/// `G × H` for a balanced `H` on `2^k` vertices over `Γ ≅ Z_{2^s} × A`,
/// with every degree of `G` `≡ m (mod 2^s)`; constant `(-mr, a_0)`.
pub fn label_dir_balanced_pow2(
    g: &Graph,
    h: &BalancedFactor,
    group: &GroupSpec,
    s: u32,
) -> Result<ConstructionReport, ConstructError> {
    balanced_pow2(g, h, group, s, Product::Dir)
}

fn balanced_pow2(
    g: &Graph,
    h: &BalancedFactor,
    group: &GroupSpec,
    s: u32,
    product: Product,
) -> Result<ConstructionReport, ConstructError> {
    let k = pow2_parameter(h)?;
    let n = g.n() as u64;
    check_order(group, (1u64 << k) * n)?;
    if s == 0 || s > 32 {
        return Err(precondition(format!("s must be in 1..=32, got {s}")));
    }
    let split = split_for(group, 1 << s)?;
    let r = h.half_degree() as i64;
    let twin_z = (1i64 << s) - 1;
    let a = split.complement().clone();
    if s < k {
        let (theorem, m, mu_z) = match product {
            Product::Lex => (Theorem::BalancedSmallLex, None, -r),
            Product::Dir => {
                let m = common_degree_residue(g, 1 << s)?;
                (Theorem::BalancedSmallDir, Some(m), -(m as i64) * r)
            }
        };
        let parameters = Parameters { k: Some(k), s: Some(s), m, r: Some(r as u64), ..Default::default() };
        let width = 1usize << (k - s);
        assemble_blocks(theorem, g, h, product, split, mu_z, parameters, |i, t| BlockLabel {
            z: (t / width) as i64,
            a: a.element_at(t % width + width * i).expect("index below |A|"),
            twin_z,
        })
    } else {
        let stride = 1u64 << (s - k);
        if !n.is_multiple_of(stride) {
            return Err(precondition(format!("2^(s-k) = {stride} must divide |V(G)| = {n}")));
        }
        let (theorem, m, mu_z) = match product {
            Product::Lex => {
                let m = common_degree_residue(g, 1 << (s - 1))?;
                (Theorem::BalancedLargeLex, m, -r - (1i64 << (k - 1)) * m as i64)
            }
            Product::Dir => {
                let m = common_degree_residue(g, 1 << s)?;
                (Theorem::BalancedLargeDir, m, -(m as i64) * r)
            }
        };
        let parameters = Parameters { k: Some(k), s: Some(s), m: Some(m), r: Some(r as u64), ..Default::default() };
        let half = 1i64 << (s - 1);
        assemble_blocks(theorem, g, h, product, split, mu_z, parameters, |i, t| BlockLabel {
            z: (((1i64 << (k - 1)) * i as i64) + t as i64).rem_euclid(half),
            a: a.element_at(i / stride as usize).expect("index below |A|"),
            twin_z,
        })
    }
}

/// `G ∘ H` for `G` with all degrees even (and positive) over
/// `Γ ≅ Z_{2^k} × A`, `|V(H)| = 2^k`; constant `(-r, a_0)`.
pub fn label_lex_even_degrees(
    g: &Graph,
    h: &BalancedFactor,
    group: &GroupSpec,
) -> Result<ConstructionReport, ConstructError> {
    let k = pow2_parameter(h)?;
    check_order(group, (1u64 << k) * g.n() as u64)?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1 || g.degree(v) == 0) {
        return Err(precondition(format!(
            "all degrees of G must be even and positive (vertex {v} has degree {})",
            g.degree(v)
        )));
    }
    let split = split_for(group, 1 << k)?;
    let r = h.half_degree() as i64;
    let parameters = Parameters { k: Some(k), s: Some(k), r: Some(r as u64), ..Default::default() };
    let a = split.complement().clone();
    assemble_blocks(Theorem::EvenDegreesLex, g, h, Product::Lex, split, -r, parameters, |i, t| BlockLabel {
        z: 2 * t as i64,
        a: a.element_at(i).expect("|A| = |V(G)|"),
        twin_z: (1i64 << k) - 1,
    })
}

/// `K_{m,n} ∘ H` with `m` even, `n` odd and `H` a `2r`-regular balanced
/// graph on `2^k` vertices, `r` odd; constant `(-r, a_0)`.
///
/// Without a `Z_{2^k}` factor in Γ this routes to the `s <= k - 1` branch of
/// [`label_lex_balanced_pow2`].
pub fn label_lex_kmn_mixed(
    m: usize,
    n: usize,
    h: &BalancedFactor,
    group: &GroupSpec,
) -> Result<ConstructionReport, ConstructError> {
    if m == 0 || n == 0 || m % 2 == 1 || n.is_multiple_of(2) {
        return Err(precondition(format!("K_{{m,n}} needs m even and n odd, got K_{{{m},{n}}}")));
    }
    let g = Graph::complete_bipartite(m, n);
    let x_side: Vec<bool> = (0..m + n).map(|v| v < m).collect();
    kmn_mixed_on(&g, &x_side, h, group)
}

/// The `K_{m,n}` construction on any complete bipartite `g`, with the
/// even part playing the role of `X`.
pub fn label_lex_kmn_mixed_on(
    g: &Graph,
    h: &BalancedFactor,
    group: &GroupSpec,
) -> Result<ConstructionReport, ConstructError> {
    let parts = g.complete_bipartition().ok_or_else(|| precondition("G is not a complete bipartite graph"))?;
    let left = parts.iter().filter(|&&x| x).count();
    let x_side: Vec<bool> = if left % 2 == 0 { parts } else { parts.iter().map(|x| !x).collect() };
    kmn_mixed_on(g, &x_side, h, group)
}

/// `x_side` marks the part of even size.
fn kmn_mixed_on(
    g: &Graph,
    x_side: &[bool],
    h: &BalancedFactor,
    group: &GroupSpec,
) -> Result<ConstructionReport, ConstructError> {
    let k = pow2_parameter(h)?;
    let r = h.half_degree();
    if r.is_multiple_of(2) {
        return Err(precondition(format!("H is 2r-regular with r = {r} even; r must be odd")));
    }
    let m = x_side.iter().filter(|&&x| x).count();
    let n = g.n() - m;
    if m % 2 == 1 || n.is_multiple_of(2) {
        return Err(precondition(format!("K_{{m,n}} needs m even and n odd, got K_{{{m},{n}}}")));
    }
    check_order(group, (1u64 << k) * g.n() as u64)?;
    let Some(split) = group.find_cyclic_two_factor(k) else {
        let s = (1..k)
            .rev()
            .find(|&s| group.find_cyclic_two_factor(s).is_some())
            .ok_or_else(|| ConstructError::NoCyclicFactor { group: group.clone(), order: 1 << k })?;
        return balanced_pow2(g, h, group, s, Product::Lex);
    };
    let a = split.complement().clone();
    // X blocks take whole inverse pairs {a, -a}; Y blocks take e and the
    // remaining pairs. |A| = m + n is odd, so no element is its own inverse.
    let mut pairs: Vec<GroupElement> = Vec::with_capacity(a.order() as usize);
    for x in a.elements().skip(1) {
        let neg = a.neg(&x)?;
        if a.index_of(&x)? < a.index_of(&neg)? {
            pairs.push(x);
            pairs.push(neg);
        }
    }
    let (x_elems, y_rest) = pairs.split_at(m);
    let y_elems: Vec<GroupElement> = std::iter::once(a.zero()).chain(y_rest.iter().cloned()).collect();
    let mut block_elem = Vec::with_capacity(g.n());
    let (mut xi, mut yi) = (0, 0);
    for &on_x in x_side {
        if on_x {
            block_elem.push((true, x_elems[xi].clone()));
            xi += 1;
        } else {
            block_elem.push((false, y_elems[yi].clone()));
            yi += 1;
        }
    }
    let half = 1i64 << (k - 1);
    let parameters =
        Parameters { k: Some(k), s: Some(k), r: Some(r as u64), t: Some((r as u64 - 1) / 2), ..Default::default() };
    assemble_blocks(Theorem::KmnMixedLex, g, h, Product::Lex, split, -(r as i64), parameters, |i, t| {
        let (on_x, elem) = &block_elem[i];
        if *on_x {
            BlockLabel { z: (half + 1) * t as i64, a: elem.clone(), twin_z: half - 1 }
        } else {
            BlockLabel { z: 2 * t as i64, a: elem.clone(), twin_z: 2 * half - 1 }
        }
    })
}

#[cfg(test)]
mod tests;
