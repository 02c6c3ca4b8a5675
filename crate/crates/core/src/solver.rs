//! Exhaustive search for Γ-distance magic labelings.
//!
//! The pruned engine labels vertices one at a time and checks a vertex's
//! weight as soon as its last neighbor is labeled. The first such weight
//! fixes μ; after that, the label of a vertex completing some neighborhood
//! is forced to `μ - (partial weight)`. The naive engine runs every
//! bijection through [`verify`] and exists as an independent oracle.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{enumerate_abelian_groups, GroupElement, GroupSpec};
use crate::graphs::Graph;
use crate::magic::{verify, Labeling, MagicError, Verdict};

pub const PRUNED_LIMIT: usize = 12;
pub const NAIVE_LIMIT: usize = 8;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("graph has {vertices} vertices but the group has order {order}")]
    SizeMismatch { vertices: usize, order: u64 },
    #[error("{vertices} vertices exceeds the {engine} search limit of {limit}")]
    TooLarge { vertices: usize, limit: usize, engine: &'static str },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Magic(#[from] MagicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    First,
    All,
    Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexOrder {
    /// Descending degree, ties by id.
    DegreeDesc,
    Input,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub vertex_order: VertexOrder,
    /// `false` selects the naive permutation scan.
    pub use_pruning: bool,
    /// Worker threads for the pruned engine; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { mode: SearchMode::All, vertex_order: VertexOrder::DegreeDesc, use_pruning: true, jobs: None }
    }
}

impl SearchOptions {
    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn naive(mut self) -> Self {
        self.use_pruning = false;
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Labelings found; `count` in `All` mode, at most one in `First` mode,
    /// none in `Count` mode.
    pub labelings: Vec<Labeling>,
    pub count: u64,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.count > 0
    }
}

pub fn search_labelings(g: &Graph, group: &GroupSpec, opts: &SearchOptions) -> Result<SearchOutcome, SolverError> {
    let n = g.n();
    if n as u64 != group.order() {
        return Err(SolverError::SizeMismatch { vertices: n, order: group.order() });
    }
    if opts.use_pruning {
        if n > PRUNED_LIMIT {
            return Err(SolverError::TooLarge { vertices: n, limit: PRUNED_LIMIT, engine: "pruned" });
        }
        pruned(g, group, opts)
    } else {
        if n > NAIVE_LIMIT {
            return Err(SolverError::TooLarge { vertices: n, limit: NAIVE_LIMIT, engine: "naive" });
        }
        naive(g, group, opts.mode)
    }
}

/// One entry per abelian group of order `|V(G)|`, in enumeration order:
/// whether `G` is Γ-distance magic.
pub fn classify_over_all_groups(g: &Graph, opts: &SearchOptions) -> Result<Vec<(GroupSpec, bool)>, SolverError> {
    let opts = opts.with_mode(SearchMode::First);
    enumerate_abelian_groups(g.n() as u64)
        .into_iter()
        .map(|group| {
            let found = search_labelings(g, &group, &opts)?.found();
            Ok((group, found))
        })
        .collect()
}

fn naive(g: &Graph, group: &GroupSpec, mode: SearchMode) -> Result<SearchOutcome, SolverError> {
    let elements: Vec<GroupElement> = group.elements().collect();
    let mut perm: Vec<usize> = (0..elements.len()).collect();
    let mut outcome = SearchOutcome { labelings: Vec::new(), count: 0 };
    loop {
        let assignment = perm.iter().map(|&i| elements[i].clone()).collect();
        let labeling = Labeling::new(group.clone(), assignment)?;
        if let Verdict::Magic(mu) = verify(g, &labeling)? {
            outcome.count += 1;
            match mode {
                SearchMode::Count => {}
                SearchMode::All => outcome.labelings.push(labeling.with_magic_constant(mu)),
                SearchMode::First => {
                    outcome.labelings.push(labeling.with_magic_constant(mu));
                    return Ok(outcome);
                }
            }
        }
        if !next_permutation(&mut perm) {
            return Ok(outcome);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("p[i] qualifies");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Read-only tables shared by all branches.
struct Problem<'a> {
    g: &'a Graph,
    size: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    order: Vec<usize>,
    /// Vertices whose last neighbor (in `order`) sits at each position.
    completes_at: Vec<Vec<usize>>,
    /// Isolated vertices have weight `e`, which fixes μ up front.
    preset_mu: Option<usize>,
}

struct State {
    label: Vec<usize>,
    used: Vec<bool>,
    weight: Vec<usize>,
    mu: Option<usize>,
}

#[derive(Default)]
struct BranchResult {
    count: u64,
    found: Vec<(Vec<usize>, usize)>,
}

impl<'a> Problem<'a> {
    fn new(g: &'a Graph, group: &GroupSpec, vertex_order: VertexOrder) -> Self {
        let n = g.n();
        let elements: Vec<GroupElement> = group.elements().collect();
        let index = |e: &GroupElement| group.index_of(e).expect("element of the group");
        let mut add = vec![0; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                add[a * n + b] = index(&group.add(x, y).expect("same group"));
            }
        }
        let neg = elements.iter().map(|x| index(&group.neg(x).expect("same group"))).collect();
        let mut order: Vec<usize> = (0..n).collect();
        if vertex_order == VertexOrder::DegreeDesc {
            order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        }
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut completes_at = vec![Vec::new(); n];
        let mut preset_mu = None;
        for v in 0..n {
            match g.neighbors(v).iter().map(|&u| pos[u]).max() {
                Some(p) => completes_at[p].push(v),
                None => preset_mu = Some(0),
            }
        }
        Problem { g, size: n, add, neg, order, completes_at, preset_mu }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    /// Labels `order[p]` with `c`; returns whether every completed weight
    /// agrees with μ. The caller must `unplace` either way.
    fn place(&self, st: &mut State, p: usize, c: usize) -> bool {
        let v = self.order[p];
        st.label[v] = c;
        st.used[c] = true;
        for &u in self.g.neighbors(v) {
            st.weight[u] = self.add(st.weight[u], c);
        }
        for &u in &self.completes_at[p] {
            match st.mu {
                None => st.mu = Some(st.weight[u]),
                Some(mu) if mu != st.weight[u] => return false,
                Some(_) => {}
            }
        }
        true
    }

    fn unplace(&self, st: &mut State, p: usize, c: usize, mu_before: Option<usize>) {
        let v = self.order[p];
        st.used[c] = false;
        for &u in self.g.neighbors(v) {
            st.weight[u] = self.add(st.weight[u], self.neg[c]);
        }
        st.mu = mu_before;
    }

    fn branch(&self, first: usize, mode: SearchMode) -> BranchResult {
        let mut st = State {
            label: vec![0; self.size],
            used: vec![false; self.size],
            weight: vec![0; self.size],
            mu: self.preset_mu,
        };
        let mut out = BranchResult::default();
        self.try_label(&mut st, 0, first, mode, &mut out);
        out
    }

    /// Returns `false` to stop the search.
    fn try_label(&self, st: &mut State, p: usize, c: usize, mode: SearchMode, out: &mut BranchResult) -> bool {
        let mu_before = st.mu;
        let ok = self.place(st, p, c);
        let keep_going = if !ok {
            true
        } else if p + 1 == self.size {
            out.count += 1;
            if mode != SearchMode::Count {
                out.found.push((st.label.clone(), st.mu.expect("n >= 1 fixes mu")));
            }
            mode != SearchMode::First
        } else {
            self.descend(st, p + 1, mode, out)
        };
        self.unplace(st, p, c, mu_before);
        keep_going
    }

    fn descend(&self, st: &mut State, p: usize, mode: SearchMode, out: &mut BranchResult) -> bool {
        let forced = match (st.mu, self.completes_at[p].first()) {
            (Some(mu), Some(&u)) => Some(self.add(mu, self.neg[st.weight[u]])),
            _ => None,
        };
        match forced {
            Some(c) => st.used[c] || self.try_label(st, p, c, mode, out),
            None => {
                for c in 0..self.size {
                    if !st.used[c] && !self.try_label(st, p, c, mode, out) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

fn pruned(g: &Graph, group: &GroupSpec, opts: &SearchOptions) -> Result<SearchOutcome, SolverError> {
    let n = g.n();
    if n == 0 {
        return Ok(SearchOutcome { labelings: Vec::new(), count: 0 });
    }
    let problem = Problem::new(g, group, opts.vertex_order);
    let run =
        || -> Vec<BranchResult> { (0..n).into_par_iter().map(|first| problem.branch(first, opts.mode)).collect() };
    let branches = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| SolverError::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    };
    let elements: Vec<GroupElement> = group.elements().collect();
    let mut outcome = SearchOutcome { labelings: Vec::new(), count: 0 };
    for branch in branches {
        outcome.count += branch.count;
        for (labels, mu) in branch.found {
            let assignment = labels.iter().map(|&i| elements[i].clone()).collect();
            let labeling = Labeling::new(group.clone(), assignment)?.with_magic_constant(elements[mu].clone());
            outcome.labelings.push(labeling);
        }
        if opts.mode == SearchMode::First && outcome.count > 0 {
            outcome.count = 1;
            break;
        }
    }
    Ok(outcome)
}
