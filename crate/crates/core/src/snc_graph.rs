//! Weighted dual graphs of SNC divisors.
//!
//! A graph stores rational curves as vertices (with self-intersection and a
//! role tag) and transversal intersection points as edges. All operations
//! return new graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact_algebra::{rat, solve_linear, LinearSolution, Rational};

pub type VertexId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Boundary,
    FiberComponent,
    Section,
    Exceptional,
    Other,
}

impl Role {
    pub const ALL: [Role; 5] = [
        Role::Boundary,
        Role::FiberComponent,
        Role::Section,
        Role::Exceptional,
        Role::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Boundary => "boundary",
            Role::FiberComponent => "fiber-component",
            Role::Section => "section",
            Role::Exceptional => "exceptional",
            Role::Other => "other",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = SncError;

    fn from_str(s: &str) -> Result<Self, SncError> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| SncError::UnknownRole(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: VertexId,
    pub label: String,
    pub self_int: i64,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SncError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("no label {0:?} in graph")]
    UnknownLabel(String),
    #[error("unknown role {0:?}")]
    UnknownRole(String),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("vertex {id} has self-intersection {self_int}, expected -1")]
    NotContractible { id: VertexId, self_int: i64 },
    #[error("vertex {id} has {neighbours} neighbours; contraction would not be SNC")]
    TooManyNeighbours { id: VertexId, neighbours: usize },
    #[error("contracting {0} would join already adjacent vertices")]
    WouldCreateMultiEdge(VertexId),
    #[error("graph is not a chain")]
    NotAChain,
    #[error("vertex {0} is not an endpoint of the chain")]
    NotAnEndpoint(VertexId),
    #[error("multiplicity of {0} must be positive")]
    ZeroMultiplicity(VertexId),
    #[error("fiber must be nonempty")]
    EmptyFiber,
    #[error("section {0} lies in the fiber")]
    SectionInFiber(VertexId),
    #[error("section meets {0} fiber components, expected exactly 1")]
    SectionMeets(usize),
    #[error("fiber components are not connected")]
    FiberDisconnected,
    #[error("fiber equations have no solution")]
    NoSolution,
    #[error("fiber equations have {0} free parameters")]
    NotUnique(usize),
    #[error("multiplicity of {id} is {value}, not a positive integer")]
    InvalidMultiplicity { id: VertexId, value: String },
}

/// Effective divisor supported on graph vertices: vertex to positive
/// multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightedMember(BTreeMap<VertexId, u64>);

impl WeightedMember {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, u64)>) -> Result<Self, SncError> {
        let mut member = Self::new();
        for (id, m) in pairs {
            if m == 0 {
                return Err(SncError::ZeroMultiplicity(id));
            }
            *member.0.entry(id).or_insert(0) += m;
        }
        Ok(member)
    }

    /// Multiplicity at `id`, zero when absent.
    pub fn get(&self, id: VertexId) -> u64 {
        self.0.get(&id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u64)> + '_ {
        self.0.iter().map(|(&id, &m)| (id, m))
    }

    pub fn support(&self) -> BTreeSet<VertexId> {
        self.0.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_map(&self) -> &BTreeMap<VertexId, u64> {
        &self.0
    }

    fn with(&self, id: VertexId, m: u64) -> Self {
        let mut out = self.clone();
        if m > 0 {
            out.0.insert(id, m);
        }
        out
    }

    /// The member with the component `id` dropped.
    pub fn without(&self, id: VertexId) -> Self {
        let mut out = self.clone();
        out.0.remove(&id);
        out
    }
}

/// Point blown up: a general point of one component or the crossing of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlowupCenter {
    On(VertexId),
    Edge(VertexId, VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUp {
    pub graph: SncGraph,
    pub members: Vec<WeightedMember>,
    pub exceptional: VertexId,
}

fn edge_key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SncGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl SncGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from explicit parts, validating ids and edges.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, SncError> {
        let mut g = Self::new();
        for v in vertices {
            if g.vertices.contains_key(&v.id) {
                return Err(SncError::DuplicateVertex(v.id));
            }
            g.vertices.insert(v.id, v);
        }
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    fn fresh_id(&self) -> VertexId {
        self.vertices.keys().next_back().map_or(0, |id| id + 1)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, self_int: i64, role: Role) -> VertexId {
        let id = self.fresh_id();
        self.vertices.insert(
            id,
            Vertex {
                id,
                label: label.into(),
                self_int,
                role,
            },
        );
        id
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), SncError> {
        self.require(a)?;
        self.require(b)?;
        if a == b {
            return Err(SncError::Loop(a));
        }
        if !self.edges.insert(edge_key(a, b)) {
            return Err(SncError::DuplicateEdge(a.min(b), a.max(b)));
        }
        Ok(())
    }

    fn require(&self, id: VertexId) -> Result<&Vertex, SncError> {
        self.vertices.get(&id).ok_or(SncError::UnknownVertex(id))
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertices.get(&id)
    }

    /// Vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    /// Edges as `(smaller id, larger id)`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.vertices.contains_key(&id)
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&edge_key(a, b))
    }

    pub fn neighbours(&self, id: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == id, b == id) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, id: VertexId) -> usize {
        self.neighbours(id).len()
    }

    pub fn self_int(&self, id: VertexId) -> Result<i64, SncError> {
        Ok(self.require(id)?.self_int)
    }

    pub fn id_of(&self, label: &str) -> Result<VertexId, SncError> {
        self.vertices
            .values()
            .find(|v| v.label == label)
            .map(|v| v.id)
            .ok_or_else(|| SncError::UnknownLabel(label.into()))
    }

    pub fn set_label(&mut self, id: VertexId, label: impl Into<String>) -> Result<(), SncError> {
        self.vertices
            .get_mut(&id)
            .ok_or(SncError::UnknownVertex(id))?
            .label = label.into();
        Ok(())
    }

    pub fn set_role(&mut self, id: VertexId, role: Role) -> Result<(), SncError> {
        self.vertices
            .get_mut(&id)
            .ok_or(SncError::UnknownVertex(id))?
            .role = role;
        Ok(())
    }

    fn component_of(&self, start: VertexId, within: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if within.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        let all: BTreeSet<_> = self.vertices.keys().copied().collect();
        match all.first() {
            None => true,
            Some(&start) => self.component_of(start, &all).len() == all.len(),
        }
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertices.len().max(1)
    }

    /// Blows up `center`. The new vertex is labelled `E<id>` and tagged
    /// exceptional.
    pub fn blow_up(
        &self,
        center: BlowupCenter,
        members: &[WeightedMember],
    ) -> Result<BlowUp, SncError> {
        let through: Vec<VertexId> = match center {
            BlowupCenter::On(v) => {
                self.require(v)?;
                vec![v]
            }
            BlowupCenter::Edge(a, b) => {
                self.require(a)?;
                self.require(b)?;
                if !self.adjacent(a, b) {
                    return Err(SncError::NotAdjacent(a, b));
                }
                vec![a, b]
            }
        };
        let mut graph = self.clone();
        if let BlowupCenter::Edge(a, b) = center {
            graph.edges.remove(&edge_key(a, b));
        }
        let e = graph.fresh_id();
        graph.vertices.insert(
            e,
            Vertex {
                id: e,
                label: format!("E{e}"),
                self_int: -1,
                role: Role::Exceptional,
            },
        );
        for &v in &through {
            graph.vertices.get_mut(&v).expect("checked").self_int -= 1;
            graph.edges.insert(edge_key(v, e));
        }
        let members = members
            .iter()
            .map(|m| m.with(e, through.iter().map(|&v| m.get(v)).sum()))
            .collect();
        Ok(BlowUp {
            graph,
            members,
            exceptional: e,
        })
    }

    /// Contracts the (-1)-vertex `v`.
    pub fn contract(&self, v: VertexId) -> Result<SncGraph, SncError> {
        let vertex = self.require(v)?;
        if vertex.self_int != -1 {
            return Err(SncError::NotContractible {
                id: v,
                self_int: vertex.self_int,
            });
        }
        let nbrs = self.neighbours(v);
        if nbrs.len() > 2 {
            return Err(SncError::TooManyNeighbours {
                id: v,
                neighbours: nbrs.len(),
            });
        }
        if let [a, b] = nbrs[..] {
            if self.adjacent(a, b) {
                return Err(SncError::WouldCreateMultiEdge(v));
            }
        }
        let mut graph = self.clone();
        graph.vertices.remove(&v);
        graph.edges.retain(|&(a, b)| a != v && b != v);
        for &w in &nbrs {
            graph.vertices.get_mut(&w).expect("neighbour exists").self_int += 1;
        }
        if let [a, b] = nbrs[..] {
            graph.edges.insert(edge_key(a, b));
        }
        Ok(graph)
    }

    /// Vertex ids along the chain starting at `start`.
    pub fn chain_order(&self, start: VertexId) -> Result<Vec<VertexId>, SncError> {
        self.require(start)?;
        if !self.is_tree() || self.vertices.keys().any(|&v| self.degree(v) > 2) {
            return Err(SncError::NotAChain);
        }
        if self.degree(start) > 1 {
            return Err(SncError::NotAnEndpoint(start));
        }
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        while let Some(next) = self.neighbours(cur).into_iter().find(|&w| Some(w) != prev) {
            order.push(next);
            prev = Some(cur);
            cur = next;
        }
        Ok(order)
    }

    /// Self-intersections along the chain starting at `start`.
    pub fn chain_type(&self, start: VertexId) -> Result<Vec<i64>, SncError> {
        Ok(self
            .chain_order(start)?
            .into_iter()
            .map(|v| self.vertices[&v].self_int)
            .collect())
    }

    /// The subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Result<SncGraph, SncError> {
        for &v in keep {
            self.require(v)?;
        }
        Ok(SncGraph {
            vertices: self
                .vertices
                .iter()
                .filter(|(id, _)| keep.contains(id))
                .map(|(&id, v)| (id, v.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .copied()
                .collect(),
        })
    }

    /// Intersection number of two components.
    pub fn pairing(&self, a: VertexId, b: VertexId) -> Result<i64, SncError> {
        if a == b {
            return self.self_int(a);
        }
        self.require(a)?;
        self.require(b)?;
        Ok(i64::from(self.adjacent(a, b)))
    }

    /// Intersection number of two divisors supported on the graph.
    pub fn divisor_pairing(
        &self,
        x: &BTreeMap<VertexId, u64>,
        y: &BTreeMap<VertexId, u64>,
    ) -> Result<i64, SncError> {
        let mut total = 0i64;
        for (&a, &ma) in x {
            for (&b, &mb) in y {
                total += (ma * mb) as i64 * self.pairing(a, b)?;
            }
        }
        Ok(total)
    }

    /// Unique positive integral `m` on `fiber` with `(sum m_j C_j) . C_i = 0`
    /// for every fiber component `C_i` and `(sum m_j C_j) . section = 1`.
    pub fn fiber_multiplicities(
        &self,
        fiber: &BTreeSet<VertexId>,
        section: VertexId,
    ) -> Result<BTreeMap<VertexId, u64>, SncError> {
        self.require(section)?;
        for &v in fiber {
            self.require(v)?;
        }
        let Some(&first) = fiber.first() else {
            return Err(SncError::EmptyFiber);
        };
        if fiber.contains(&section) {
            return Err(SncError::SectionInFiber(section));
        }
        let touching = fiber.iter().filter(|&&v| self.adjacent(v, section)).count();
        if touching != 1 {
            return Err(SncError::SectionMeets(touching));
        }
        if self.component_of(first, fiber).len() != fiber.len() {
            return Err(SncError::FiberDisconnected);
        }
        let ids: Vec<VertexId> = fiber.iter().copied().collect();
        let pairing_row = |i: VertexId| -> Vec<Rational> {
            ids.iter()
                .map(|&j| rat(self.pairing(i, j).expect("ids validated")))
                .collect()
        };
        let mut rows: Vec<Vec<Rational>> = ids.iter().map(|&i| pairing_row(i)).collect();
        let mut rhs = vec![Rational::zero(); ids.len()];
        rows.push(pairing_row(section));
        rhs.push(rat(1));
        let values = match solve_linear(&rows, &rhs, ids.len()) {
            LinearSolution::Unique(values) => values,
            LinearSolution::Inconsistent => return Err(SncError::NoSolution),
            LinearSolution::Underdetermined(k) => return Err(SncError::NotUnique(k)),
        };
        let mut out = BTreeMap::new();
        for (&id, value) in ids.iter().zip(&values) {
            let integral = value.is_integer() && value.is_positive();
            let m = integral
                .then(|| value.to_integer())
                .and_then(|n: BigInt| n.to_u64())
                .ok_or_else(|| SncError::InvalidMultiplicity {
                    id,
                    value: format!("{value}"),
                })?;
            out.insert(id, m);
        }
        Ok(out)
    }

    /// Label-keyed view: label to (self-intersection, role), plus edges as
    /// sorted label pairs. Two graphs built by different routes compare equal
    /// here when they agree up to renumbering.
    pub fn labeled_shape(&self) -> LabeledShape {
        let vertices = self
            .vertices
            .values()
            .map(|v| (v.label.clone(), (v.self_int, v.role)))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|(a, b)| {
                let (la, lb) = (&self.vertices[a].label, &self.vertices[b].label);
                if la <= lb {
                    (la.clone(), lb.clone())
                } else {
                    (lb.clone(), la.clone())
                }
            })
            .collect();
        LabeledShape { vertices, edges }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledShape {
    pub vertices: BTreeMap<String, (i64, Role)>,
    pub edges: BTreeSet<(String, String)>,
}

/// Path graph with the given self-intersections; vertices are labelled
/// `V0, V1, ...` and tagged [`Role::Other`].
pub fn chain(self_ints: &[i64]) -> SncGraph {
    let mut g = SncGraph::new();
    let mut prev = None;
    for (i, &w) in self_ints.iter().enumerate() {
        let id = g.add_vertex(format!("V{i}"), w, Role::Other);
        if let Some(p) = prev {
            g.add_edge(p, id).expect("fresh vertices");
        }
        prev = Some(id);
    }
    g
}
