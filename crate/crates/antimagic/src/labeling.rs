//! Total labelings, vertex weights and the local antimagic check.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub type Label = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("labeling is not a bijection onto 1..={expected}: {reason}")]
    NotBijective { expected: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The class a labeling is required (or found) to belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Vertex labels are exactly `1..=n`.
    Svtla,
    /// Edge labels are exactly `1..=m`.
    Setla,
    General,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Svtla => "svtla",
            Mode::Setla => "setla",
            Mode::General => "general",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "svtla" => Ok(Mode::Svtla),
            "setla" => Ok(Mode::Setla),
            "general" => Ok(Mode::General),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// `vertex_labels[v - 1] = f(v)`, `edge_labels[i] = f(e_i)` in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TotalLabeling {
    pub vertex_labels: Vec<Label>,
    pub edge_labels: Vec<Label>,
}

impl TotalLabeling {
    pub fn new(vertex_labels: Vec<Label>, edge_labels: Vec<Label>) -> Self {
        TotalLabeling { vertex_labels, edge_labels }
    }

    pub fn vertex(&self, v: usize) -> Label {
        self.vertex_labels[v - 1]
    }

    pub fn edge(&self, i: usize) -> Label {
        self.edge_labels[i]
    }

    /// Checks shape against `g` and that all labels together are exactly `1..=n+m`.
    pub fn check(&self, g: &Graph) -> Result<(), LabelingError> {
        let total = g.n() + g.m();
        let fail = |reason: String| Err(LabelingError::NotBijective { expected: total, reason });
        if self.vertex_labels.len() != g.n() || self.edge_labels.len() != g.m() {
            return fail(format!(
                "expected {} vertex and {} edge labels, got {} and {}",
                g.n(),
                g.m(),
                self.vertex_labels.len(),
                self.edge_labels.len()
            ));
        }
        let mut seen = vec![false; total + 1];
        for &l in self.vertex_labels.iter().chain(&self.edge_labels) {
            match usize::try_from(l) {
                Ok(i) if (1..=total).contains(&i) => {
                    if std::mem::replace(&mut seen[i], true) {
                        return fail(format!("label {l} used twice"));
                    }
                }
                _ => return fail(format!("label {l} out of range")),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    /// `weights[v - 1] = w(v)`.
    pub weights: Vec<Label>,
    pub colors: BTreeSet<Label>,
}

impl WeightProfile {
    pub fn from_weights(weights: Vec<Label>) -> Self {
        let colors = weights.iter().copied().collect();
        WeightProfile { weights, colors }
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    pub fn weight(&self, v: usize) -> Label {
        self.weights[v - 1]
    }
}

impl Serialize for WeightProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("WeightProfile", 3)?;
        st.serialize_field("weights", &self.weights)?;
        st.serialize_field("colors", &self.colors)?;
        st.serialize_field("color_count", &self.color_count())?;
        st.end()
    }
}

// Weights never exceed 2·Δ·(n+m); checked arithmetic turns a would-be wrap into a panic.
fn weight_unchecked(g: &Graph, f: &TotalLabeling, v: usize) -> Label {
    g.incident(v)
        .iter()
        .map(|&(u, e)| f.vertex(u).checked_add(f.edge(e)).expect("weight overflow"))
        .fold(0, |acc: Label, x| acc.checked_add(x).expect("weight overflow"))
}

/// w(v): sum of the labels of v's neighbors and incident edges. f(v) is not included.
pub fn vertex_weight(g: &Graph, f: &TotalLabeling, v: usize) -> Result<Label, LabelingError> {
    f.check(g)?;
    if v == 0 || v > g.n() {
        return Err(GraphError::VertexOutOfRange { v, n: g.n() }.into());
    }
    Ok(weight_unchecked(g, f, v))
}

pub fn weight_profile(g: &Graph, f: &TotalLabeling) -> Result<WeightProfile, LabelingError> {
    f.check(g)?;
    Ok(WeightProfile::from_weights(g.vertices().map(|v| weight_unchecked(g, f, v)).collect()))
}

/// Class tags whose label-set condition holds. The two super classes are mutually
/// exclusive for graphs with at least one edge, so the set has exactly one element.
pub fn classify(g: &Graph, f: &TotalLabeling) -> Result<BTreeSet<Mode>, LabelingError> {
    f.check(g)?;
    let mut tags = BTreeSet::new();
    let (n, m) = (g.n() as Label, g.m() as Label);
    if f.vertex_labels.iter().all(|&l| l <= n) {
        tags.insert(Mode::Svtla);
    }
    if f.edge_labels.iter().all(|&l| l <= m) {
        tags.insert(Mode::Setla);
    }
    if tags.is_empty() {
        tags.insert(Mode::General);
    }
    Ok(tags)
}

/// True when `f` belongs to `mode` (every bijection belongs to `General`).
pub fn has_class(g: &Graph, f: &TotalLabeling, mode: Mode) -> Result<bool, LabelingError> {
    Ok(mode == Mode::General || classify(g, f)?.contains(&mode))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub weight: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Reports every edge whose endpoints share a weight.
pub fn is_local_antimagic(g: &Graph, f: &TotalLabeling) -> Result<Verdict, LabelingError> {
    let p = weight_profile(g, f)?;
    let violations: Vec<_> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| p.weight(u) == p.weight(v))
        .map(|&(u, v)| Violation { u, v, weight: p.weight(u) })
        .collect();
    Ok(Verdict { valid: violations.is_empty(), violations })
}

/// Σ w(v) = Σ deg(v)·f(v) + 2·Σ f(e). Holds for every bijection; used as a sanity check.
pub fn counting_identity_check(g: &Graph, f: &TotalLabeling) -> Result<bool, LabelingError> {
    let p = weight_profile(g, f)?;
    let lhs: Label = p.weights.iter().sum();
    let rhs = g.vertices().map(|v| g.degree(v) as Label * f.vertex(v)).sum::<Label>()
        + 2 * f.edge_labels.iter().sum::<Label>();
    Ok(lhs == rhs)
}

/// `l + 1`, where `l` is the largest number of pendant neighbors at one vertex;
/// 2 when the graph has no pendants.
pub fn pendant_lower_bound(g: &Graph) -> usize {
    let l = g.vertices().map(|v| g.neighbors(v).filter(|&u| g.degree(u) == 1).count()).max().unwrap_or(0);
    if l == 0 {
        2
    } else {
        l + 1
    }
}
