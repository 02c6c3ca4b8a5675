//! Text certificates: a graph expression, a group, a claimed magic constant
//! and one label per vertex.
//!
//! ```text
//! # theorem: even-degrees-lex
//! graph: lex(C(3),C(4))
//! group: Z4xZ3
//! mu: (3,0)
//! v 0 (0,0)
//! v 1 (2,0)
//! ...
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{verify, Labeling, MagicError, Verdict};
use crate::abelian::{GroupElement, GroupError, GroupSpec};
use crate::graphs::{construct_graph, GraphError};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
    #[error("vertex {0} has no label")]
    MissingVertex(usize),
    #[error("vertex {0} is labeled twice")]
    DuplicateVertex(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Magic(#[from] MagicError),
    #[error("labeling has no magic constant")]
    NoMagicConstant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub theorem: Option<String>,
    pub graph: String,
    pub group: GroupSpec,
    pub mu: GroupElement,
    pub labels: Vec<GroupElement>,
}

/// Result of checking a certificate against its own graph expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CertificateVerdict {
    Accepted(GroupElement),
    /// The labeling is magic but with a different constant than claimed.
    WrongConstant {
        claimed: GroupElement,
        actual: GroupElement,
    },
    NotMagic(Verdict),
}

impl Certificate {
    pub fn from_labeling(
        graph: impl Into<String>,
        labeling: &Labeling,
        theorem: Option<String>,
    ) -> Result<Self, CertificateError> {
        let mu = labeling.magic_constant().cloned().ok_or(CertificateError::NoMagicConstant)?;
        Ok(Certificate {
            theorem,
            graph: graph.into(),
            group: labeling.group().clone(),
            mu,
            labels: labeling.assignment().to_vec(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let mut theorem = None;
        let mut graph = None;
        let mut group: Option<GroupSpec> = None;
        let mut mu_text = None;
        let mut entries: Vec<(usize, usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(tag) = comment.trim().strip_prefix("theorem:") {
                    theorem = Some(tag.trim().to_string());
                }
                continue;
            }
            let syntax = |msg: &str| CertificateError::Syntax { line: line_no, msg: msg.to_string() };
            if let Some(rest) = line.strip_prefix("graph:") {
                graph = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("group:") {
                group = Some(rest.trim().parse()?);
            } else if let Some(rest) = line.strip_prefix("mu:") {
                mu_text = Some((line_no, rest.trim().to_string()));
            } else if let Some(rest) = line.strip_prefix("v ") {
                let rest = rest.trim_start();
                let split = rest.find(char::is_whitespace).ok_or_else(|| syntax("expected `v <id> <element>`"))?;
                let id = rest[..split].parse::<usize>().map_err(|_| syntax("bad vertex id"))?;
                entries.push((line_no, id, rest[split..].trim().to_string()));
            } else {
                return Err(syntax("unrecognized line"));
            }
        }
        let graph = graph.ok_or(CertificateError::Missing("graph"))?;
        let group = group.ok_or(CertificateError::Missing("group"))?;
        let (_, mu_text) = mu_text.ok_or(CertificateError::Missing("mu"))?;
        let mu = group.parse_element(&mu_text)?;
        let n = entries.len();
        let mut labels: Vec<Option<GroupElement>> = vec![None; n];
        for (line, id, element) in entries {
            if id >= n {
                return Err(CertificateError::Syntax { line, msg: format!("vertex id {id} out of range") });
            }
            if labels[id].is_some() {
                return Err(CertificateError::DuplicateVertex(id));
            }
            labels[id] = Some(group.parse_element(&element)?);
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or(CertificateError::MissingVertex(v)))
            .collect::<Result<_, _>>()?;
        Ok(Certificate { theorem, graph, group, mu, labels })
    }

    /// Rebuilds the graph from its expression and verifies the labeling.
    pub fn check(&self) -> Result<CertificateVerdict, CertificateError> {
        let graph = construct_graph(&self.graph)?;
        let labeling = Labeling::new(self.group.clone(), self.labels.clone())?;
        Ok(match verify(&graph, &labeling)? {
            Verdict::Magic(actual) if actual == self.mu => CertificateVerdict::Accepted(actual),
            Verdict::Magic(actual) => CertificateVerdict::WrongConstant { claimed: self.mu.clone(), actual },
            rejected => CertificateVerdict::NotMagic(rejected),
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(tag) = &self.theorem {
            writeln!(f, "# theorem: {tag}")?;
        }
        writeln!(f, "graph: {}", self.graph)?;
        writeln!(f, "group: {}", self.group)?;
        writeln!(f, "mu: {}", self.mu)?;
        for (v, label) in self.labels.iter().enumerate() {
            writeln!(f, "v {v} {label}")?;
        }
        Ok(())
    }
}
