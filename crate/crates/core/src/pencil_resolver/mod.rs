//! Resolution of the special pencils and the curve constructions attached
//! to them.
//!
//! Each scenario starts from a small configuration of smooth curves meeting
//! at one point `q`, resolves the base points of the pencil spanned by two
//! members and returns the SNC dual graph. Fiber multiplicities are computed
//! twice, by pulling members back (minus the fixed part) and by the fiber
//! solver, and must agree.

mod arrangement;
mod bvs;

pub use arrangement::{Arrangement, CenterRecord, Curve, CurveId};
pub use bvs::{
    bvs_contact_order, bvs_curve, complete_type_form, complete_type_params, same_torus_orbit,
    torus_orbit_map,
};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exact_algebra::AlgebraError;
use crate::snc_graph::{BlowupCenter, Role, SncError, SncGraph, VertexId, WeightedMember};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PencilError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid point: {0}")]
    BadPoint(String),
    #[error("curve {0} lies in both generating members")]
    FixedComponent(String),
    #[error("no resolution within {0} blow-ups")]
    TooManyBlowUps(usize),
    #[error("configuration is not SNC at {0}")]
    NotSnc(String),
    #[error("expected one exceptional section, found {0}")]
    SectionCount(usize),
    #[error("bookkeeping multiplicities {bookkeeping} disagree with solver {solver}")]
    BookkeepingMismatch { bookkeeping: String, solver: String },
    #[error("fiber check failed: {0}")]
    FiberCheck(String),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("expected degree {expected}, found {found:?}")]
    WrongDegree { expected: usize, found: Option<usize> },
    #[error("restriction {0} is not a single monomial")]
    ContactNotMonomial(String),
    #[error("constant parameter vanishes, so the curve contains the fiber through q")]
    NotPrime,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("expected {expected} parameters, found {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("form is not of complete type: {0}")]
    NotCompleteType(String),
    #[error(transparent)]
    Graph(#[from] SncError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A resolved scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub graph: SncGraph,
    /// The exceptional curve meeting every member once.
    pub section: VertexId,
    /// Multiplicities of the special fiber, from the fiber solver.
    pub fiber: BTreeMap<VertexId, u64>,
    /// Same fiber obtained by pulling back the special member.
    pub bookkeeping: WeightedMember,
    /// Total transform of the original boundary curve.
    pub boundary: BTreeSet<VertexId>,
    pub centers: Vec<CenterRecord>,
}

impl Resolution {
    pub fn id(&self, label: &str) -> Result<VertexId, PencilError> {
        Ok(self.graph.id_of(label)?)
    }

    pub fn multiplicity(&self, label: &str) -> Result<u64, PencilError> {
        let id = self.id(label)?;
        Ok(self.fiber.get(&id).copied().unwrap_or(0))
    }

    pub fn fiber_by_label(&self) -> BTreeMap<String, u64> {
        self.fiber
            .iter()
            .map(|(&id, &m)| (self.graph.vertex(id).expect("fiber vertex").label.clone(), m))
            .collect()
    }

    /// `(F^2, F . section)` for the special fiber `F`.
    pub fn fiber_checks(&self) -> Result<(i64, i64), PencilError> {
        let square = self.graph.divisor_pairing(&self.fiber, &self.fiber)?;
        let section = BTreeMap::from([(self.section, 1)]);
        let with_section = self.graph.divisor_pairing(&self.fiber, &section)?;
        Ok((square, with_section))
    }

    fn verify(&self) -> Result<(), PencilError> {
        if self.fiber != *self.bookkeeping.as_map() {
            return Err(PencilError::BookkeepingMismatch {
                bookkeeping: format!("{:?}", self.bookkeeping.as_map()),
                solver: format!("{:?}", self.fiber),
            });
        }
        match self.fiber_checks()? {
            (0, 1) => Ok(()),
            (sq, sec) => Err(PencilError::FiberCheck(format!(
                "fiber^2 = {sq}, fiber . section = {sec}"
            ))),
        }
    }
}

const MAX_BLOWUPS: usize = 1000;

struct Scenario {
    arrangement: Arrangement,
    general: BTreeMap<CurveId, u64>,
    special: BTreeMap<CurveId, u64>,
    boundary_curve: CurveId,
    general_role: Role,
}

impl Scenario {
    fn run(mut self) -> Result<Resolution, PencilError> {
        let originals = self.arrangement.curve_count() as CurveId;
        let (centers, members) = self
            .arrangement
            .resolve_pencil(&[self.general.clone(), self.special.clone()], MAX_BLOWUPS)?;
        let special = &members[1];
        let sections: Vec<CurveId> = (originals..self.arrangement.curve_count() as CurveId)
            .filter(|c| members.iter().all(|m| !m.contains_key(c)))
            .collect();
        let [section] = sections[..] else {
            return Err(PencilError::SectionCount(sections.len()));
        };
        let boundary: BTreeSet<VertexId> = core::iter::once(self.boundary_curve)
            .chain(originals..self.arrangement.curve_count() as CurveId)
            .collect();
        let general = self.general.keys().next().copied();
        let graph = self.arrangement.dual_graph(|c| {
            if c == section {
                Role::Section
            } else if boundary.contains(&c) {
                Role::Boundary
            } else if Some(c) == general {
                self.general_role
            } else if special.contains_key(&c) {
                Role::FiberComponent
            } else {
                Role::Other
            }
        })?;
        let support: BTreeSet<VertexId> = special.keys().copied().collect();
        let fiber = graph.fiber_multiplicities(&support, section)?;
        let resolution = Resolution {
            graph,
            section,
            fiber,
            bookkeeping: arrangement::to_member(special),
            boundary,
            centers,
        };
        resolution.verify()?;
        Ok(resolution)
    }
}

/// Pencil of conics with contact 4 at a point `q` of a smooth conic `Q`,
/// spanned by `Q` and twice its tangent line `T`.
pub fn resolve_conic() -> Result<Resolution, PencilError> {
    let mut arr = Arrangement::new();
    let q = arr.add_curve("Q", 4);
    let t = arr.add_curve("T", 1);
    arr.add_point(&[(q, t, 2)])?;
    Scenario {
        arrangement: arr,
        general: BTreeMap::from([(q, 1)]),
        special: BTreeMap::from([(t, 2)]),
        boundary_curve: q,
        general_role: Role::Boundary,
    }
    .run()
}

fn check_degree(d: i64, min: i64) -> Result<(), PencilError> {
    if d < min {
        return Err(PencilError::InvalidParameter(format!("d = {d} must be at least {min}")));
    }
    Ok(())
}

/// Pencil spanned by `B` (with `B^2 = d`) and `C + k F_q`, where
/// `C ~ B - kF` meets `B` only at `q` with contact `d - k` and `F_q` is the
/// fiber through `q`.
fn b_plus_fiber_pencil(d: i64, k: i64) -> Result<Resolution, PencilError> {
    let mut arr = Arrangement::new();
    let b = arr.add_curve("B", d);
    let c = arr.add_curve("C", d - 2 * k);
    let f = arr.add_curve("F", 0);
    arr.add_point(&[(b, c, (d - k) as u32), (b, f, 1), (c, f, 1)])?;
    Scenario {
        arrangement: arr,
        general: BTreeMap::from([(b, 1)]),
        special: BTreeMap::from([(c, 1), (f, k as u64)]),
        boundary_curve: b,
        general_role: Role::Boundary,
    }
    .run()
}

/// The pencil `P_q` whose special member `C + F_q` is reduced.
pub fn resolve_reduced(d: i64) -> Result<Resolution, PencilError> {
    check_degree(d, 2)?;
    b_plus_fiber_pencil(d, 1)
}

/// The pencil `P_q` whose special member is `C + 2 F_q`. The boundary also
/// contains `C`.
pub fn resolve_mult2(d: i64) -> Result<Resolution, PencilError> {
    check_degree(d, 3)?;
    let mut r = b_plus_fiber_pencil(d, 2)?;
    let c = r.id("C")?;
    r.boundary.insert(c);
    r.graph.set_role(c, Role::Boundary)?;
    Ok(r)
}

/// The pencil spanned by a section `B_m ~ B + mF` with contact `d + m` with
/// `B` at `q`, and `B + m F_q`.
pub fn resolve_complete(d: i64, m: i64) -> Result<Resolution, PencilError> {
    check_degree(d, 2)?;
    if m < 1 {
        return Err(PencilError::InvalidParameter(format!("m = {m} must be positive")));
    }
    let mut arr = Arrangement::new();
    let b = arr.add_curve("B", d);
    let bm = arr.add_curve("Bm", d + 2 * m);
    let f = arr.add_curve("F", 0);
    arr.add_point(&[(b, bm, (d + m) as u32), (b, f, 1), (bm, f, 1)])?;
    Scenario {
        arrangement: arr,
        general: BTreeMap::from([(bm, 1)]),
        special: BTreeMap::from([(b, 1), (f, m as u64)]),
        boundary_curve: b,
        general_role: Role::Other,
    }
    .run()
}

/// Relatively minimal completion of the multiplicity-two surfaces with
/// parameter `l`: the conic resolution relabelled, followed by `l - 1`
/// blow-ups of general points of the multiplicity-two component.
pub fn resolve_sls(l: i64) -> Result<Resolution, PencilError> {
    if l < 1 {
        return Err(PencilError::InvalidParameter(format!("l = {l} must be positive")));
    }
    let conic = resolve_conic()?;
    let mut graph = conic.graph.clone();
    for (old, new) in [("Q", "Finf"), ("E4", "H"), ("E3", "G0"), ("E2", "G2"), ("E1", "G1"), ("T", "Fbar")] {
        let id = graph.id_of(old)?;
        graph.set_label(id, new)?;
    }
    let mut member = conic.bookkeeping.clone();
    let mut boundary = conic.boundary.clone();
    for k in 2..=l {
        let fbar = graph.id_of("Fbar")?;
        let step = graph.blow_up(BlowupCenter::On(fbar), &[member])?;
        graph = step.graph;
        member = step.members.into_iter().next().expect("one member");
        graph.set_label(fbar, format!("G{}", k + 1))?;
        graph.set_role(fbar, Role::Boundary)?;
        boundary.insert(fbar);
        graph.set_label(step.exceptional, "Fbar")?;
        graph.set_role(step.exceptional, Role::FiberComponent)?;
    }
    let fiber = graph.fiber_multiplicities(&member.support(), conic.section)?;
    let resolution = Resolution {
        graph,
        section: conic.section,
        fiber,
        bookkeeping: member,
        boundary,
        centers: conic.centers,
    };
    resolution.verify()?;
    Ok(resolution)
}

/// Result of contracting the reduced-case resolution back to a minimal
/// model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReplay {
    pub graph: SncGraph,
    /// Type of the remaining chain read from `B`.
    pub chain: Vec<i64>,
    /// Type of the boundary part `B, E_d`.
    pub boundary_chain: Vec<i64>,
}

/// Contracts `F`, `E_1, ..., E_{d-2}` and then `C` in the reduced-case
/// resolution.
pub fn reduced_contraction_replay(d: i64) -> Result<ContractionReplay, PencilError> {
    let r = resolve_reduced(d)?;
    let mut graph = r.graph.clone();
    let order = core::iter::once(String::from("F"))
        .chain((1..=d - 2).map(|k| format!("E{k}")))
        .chain(core::iter::once(String::from("C")));
    for label in order {
        let id = graph.id_of(&label)?;
        graph = graph.contract(id)?;
    }
    let b = graph.id_of("B")?;
    let ed = graph.id_of(&format!("E{d}"))?;
    let chain = graph.chain_type(b)?;
    let boundary_chain = graph.induced(&BTreeSet::from([b, ed]))?.chain_type(b)?;
    Ok(ContractionReplay {
        graph,
        chain,
        boundary_chain,
    })
}
