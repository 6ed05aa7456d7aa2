//! Total local antimagic labelings of graphs.
//!
//! A total labeling maps vertices and edges bijectively onto `1..=n+m`. The weight of
//! a vertex is the sum of the labels of its neighbors and incident edges. A labeling
//! is local antimagic when adjacent vertices get different weights, and the weights
//! then form a proper vertex coloring.

pub mod constructions;
pub mod graph;
pub mod labeling;
pub mod magic;
pub mod solver;

pub use graph::{Element, FamilySpec, Graph, GraphError};
pub use labeling::{Label, LabelingError, Mode, TotalLabeling, WeightProfile};
