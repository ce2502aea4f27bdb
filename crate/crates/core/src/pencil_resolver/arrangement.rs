//! Configurations of smooth rational curves that need not be SNC yet.
//!
//! Every point where two or more curves meet is stored with the local
//! intersection number of each pair through it. Blowing up a point separates
//! curves with distinct tangents and lowers the contact of tangent pairs by
//! one, so repeated blow-ups of base points reach an SNC configuration.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::snc_graph::{Role, SncGraph, Vertex, VertexId, WeightedMember};

use super::PencilError;

pub type CurveId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub label: String,
    pub self_int: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Point {
    /// Local intersection number for each pair `(a, b)`, `a < b`, of curves
    /// through the point.
    contact: BTreeMap<(CurveId, CurveId), u32>,
}

impl Point {
    fn curves(&self) -> BTreeSet<CurveId> {
        self.contact.keys().flat_map(|&(a, b)| [a, b]).collect()
    }

    fn is_normal_crossing(&self) -> bool {
        self.contact.len() == 1 && self.contact.values().all(|&c| c == 1)
    }
}

/// Record of one blow-up: the curves through the blown-up point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterRecord {
    pub exceptional: CurveId,
    pub through: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Arrangement {
    curves: Vec<Curve>,
    points: Vec<Point>,
    blowups: u32,
}

fn pair(a: CurveId, b: CurveId) -> (CurveId, CurveId) {
    (a.min(b), a.max(b))
}

impl Arrangement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_curve(&mut self, label: impl Into<String>, self_int: i64) -> CurveId {
        self.curves.push(Curve {
            label: label.into(),
            self_int,
        });
        (self.curves.len() - 1) as CurveId
    }

    pub fn curve(&self, id: CurveId) -> Option<&Curve> {
        self.curves.get(id as usize)
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    /// Adds a point through the given curves with the given pairwise local
    /// intersection numbers; every pair of listed curves must be given.
    pub fn add_point(&mut self, contacts: &[(CurveId, CurveId, u32)]) -> Result<(), PencilError> {
        let mut contact = BTreeMap::new();
        for &(a, b, c) in contacts {
            if a == b || c == 0 || self.curve(a).is_none() || self.curve(b).is_none() {
                return Err(PencilError::BadPoint(format!("invalid contact {a}-{b}:{c}")));
            }
            contact.insert(pair(a, b), c);
        }
        let point = Point { contact };
        let curves = point.curves();
        for &a in &curves {
            for &b in curves.range(a + 1..) {
                if !point.contact.contains_key(&(a, b)) {
                    return Err(PencilError::BadPoint(format!("missing contact {a}-{b}")));
                }
            }
        }
        self.points.push(point);
        Ok(())
    }

    fn multiplicity(member: &BTreeMap<CurveId, u64>, curves: &BTreeSet<CurveId>) -> u64 {
        curves.iter().map(|c| member.get(c).copied().unwrap_or(0)).sum()
    }

    /// Blows up point `index`. Curves through it are separated according to
    /// their tangent directions; members are pulled back and the common
    /// multiplicity at the point is removed as fixed part.
    fn blow_up(
        &mut self,
        index: usize,
        members: &mut [BTreeMap<CurveId, u64>],
    ) -> CenterRecord {
        let point = self.points.remove(index);
        let through = point.curves();
        self.blowups += 1;
        let e = self.add_curve(format!("E{}", self.blowups), -1);
        for &c in &through {
            self.curves[c as usize].self_int -= 1;
        }
        let mults: Vec<u64> = members.iter().map(|m| Self::multiplicity(m, &through)).collect();
        let fixed = mults.iter().copied().min().unwrap_or(0);
        for (member, m) in members.iter_mut().zip(&mults) {
            if m > &fixed {
                member.insert(e, m - fixed);
            }
        }
        // Tangent classes: smooth curves with contact >= 2 share a tangent.
        let mut class: BTreeMap<CurveId, CurveId> = through.iter().map(|&c| (c, c)).collect();
        for (&(a, b), &c) in &point.contact {
            if c >= 2 {
                let (ra, rb) = (class[&a], class[&b]);
                for v in class.values_mut() {
                    if *v == rb {
                        *v = ra;
                    }
                }
            }
        }
        let mut groups: BTreeMap<CurveId, Vec<CurveId>> = BTreeMap::new();
        for (&c, &root) in &class {
            groups.entry(root).or_default().push(c);
        }
        for group in groups.values() {
            let mut contact: BTreeMap<_, _> = group.iter().map(|&c| (pair(c, e), 1)).collect();
            for (i, &a) in group.iter().enumerate() {
                for &b in &group[i + 1..] {
                    contact.insert(pair(a, b), point.contact[&pair(a, b)] - 1);
                }
            }
            self.points.push(Point { contact });
        }
        CenterRecord {
            exceptional: e,
            through: through.iter().map(|&c| self.curves[c as usize].label.clone()).collect(),
        }
    }

    /// Blows up base points of the pencil spanned by `members` until none is
    /// left. Returns the centers used and the final members.
    pub fn resolve_pencil(
        &mut self,
        members: &[BTreeMap<CurveId, u64>],
        max_steps: usize,
    ) -> Result<(Vec<CenterRecord>, Vec<BTreeMap<CurveId, u64>>), PencilError> {
        let mut members = members.to_vec();
        let supports: Vec<BTreeSet<CurveId>> =
            members.iter().map(|m| m.keys().copied().collect()).collect();
        if let [a, b] = &supports[..] {
            if let Some(&c) = a.intersection(b).next() {
                return Err(PencilError::FixedComponent(self.curves[c as usize].label.clone()));
            }
        }
        let mut centers = Vec::new();
        loop {
            let base = self.points.iter().position(|p| {
                let curves = p.curves();
                members.iter().all(|m| Self::multiplicity(m, &curves) > 0)
            });
            let Some(index) = base else {
                return Ok((centers, members));
            };
            if centers.len() == max_steps {
                return Err(PencilError::TooManyBlowUps(max_steps));
            }
            centers.push(self.blow_up(index, &mut members));
        }
    }

    /// The dual graph, once every point is a normal crossing of two curves.
    /// Vertex ids equal curve ids.
    pub fn dual_graph(&self, roles: impl Fn(CurveId) -> Role) -> Result<SncGraph, PencilError> {
        let mut edges = BTreeSet::new();
        for p in &self.points {
            if !p.is_normal_crossing() {
                let labels: Vec<_> = p.curves().iter().map(|&c| self.curves[c as usize].label.clone()).collect();
                return Err(PencilError::NotSnc(labels.join(",")));
            }
            let &(a, b) = p.contact.keys().next().expect("one pair");
            if !edges.insert((a, b)) {
                return Err(PencilError::NotSnc(format!(
                    "{} and {} meet twice",
                    self.curves[a as usize].label, self.curves[b as usize].label
                )));
            }
        }
        let vertices = self.curves.iter().enumerate().map(|(i, c)| Vertex {
            id: i as VertexId,
            label: c.label.clone(),
            self_int: c.self_int,
            role: roles(i as CurveId),
        });
        Ok(SncGraph::from_parts(vertices, edges)?)
    }
}

pub(crate) fn to_member(m: &BTreeMap<CurveId, u64>) -> WeightedMember {
    WeightedMember::from_pairs(m.iter().map(|(&c, &k)| (c as VertexId, k))).expect("positive")
}
