//! Counts of equivalence classes of A^1-fibrations on the complements of
//! smooth ample sections `B` with `B^2 = d`, indexed by the multiplicity `m`
//! of the degenerate fiber, `1 <= m <= d - 1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exact_algebra::UniPoly;
use crate::fibration_classifier::{count_classes, maximal_normal_form, ClassCount, ClassifierError};
use crate::hirzebruch::{existence_construction, HirzebruchError};
use crate::pencil_resolver::{reduced_contraction_replay, PencilError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("dmax = {0} must be at least 2")]
    DmaxTooSmall(u32),
    #[error("supporting computation disagrees: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Hirzebruch(#[from] HirzebruchError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Produced by running the supporting procedures.
    Computed,
    /// Recorded from the published case analysis.
    PaperEncoded,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::PaperEncoded => "paper-encoded",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusEntry {
    Finite { count: u64, provenance: Provenance },
    Infinite { moduli_dim: u64 },
    /// Existence is verified but the number of classes is not determined.
    AtLeast { count: u64 },
}

impl fmt::Display for CensusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusEntry::Finite { count, provenance: Provenance::Computed } => write!(f, "{count}"),
            CensusEntry::Finite { count, provenance: Provenance::PaperEncoded } => write!(f, "{count}*"),
            CensusEntry::Infinite { moduli_dim } => write!(f, "inf({moduli_dim})"),
            CensusEntry::AtLeast { count } => write!(f, ">={count}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Total {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Total {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Total::Finite(n) => write!(f, "{n}"),
            Total::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub d: u32,
    pub entries: BTreeMap<u32, CensusEntry>,
    pub total: Total,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub rows: Vec<CensusRow>,
}

/// Entries taken from the case analysis for `d = 5, 6`: `(d, m, count)`.
pub const PAPER_ENCODED: [(u32, u32, u64); 3] = [(5, 3, 1), (6, 3, 2), (6, 4, 1)];

fn paper_encoded(d: u32, m: u32) -> Option<u64> {
    PAPER_ENCODED
        .iter()
        .find(|&&(dd, mm, _)| dd == d && mm == m)
        .map(|&(_, _, c)| c)
}

/// Reduced fiber: the resolution must contract to the `[0, -1, 0]` chain.
fn check_reduced(d: u32) -> Result<(), CensusError> {
    let replay = reduced_contraction_replay(i64::from(d))?;
    if replay.chain != [0, -1, 0] || replay.boundary_chain != [0, -1] {
        return Err(CensusError::Inconsistent(format!(
            "reduced case for d = {d} contracts to {:?}",
            replay.chain
        )));
    }
    Ok(())
}

/// Maximal multiplicity: the normal form must exist for sample curves.
fn check_maximal(d: u32) -> Result<(), CensusError> {
    for k in 1..=3i64 {
        let mut coeffs: Vec<i64> = (0..=i64::from(d)).map(|i| (i * k) % 5 - 2).collect();
        coeffs.push(k);
        maximal_normal_form(d, &UniPoly::from_i64s(&coeffs))?;
    }
    Ok(())
}

fn from_class_count(c: ClassCount) -> CensusEntry {
    match c {
        ClassCount::Finite(count) => CensusEntry::Finite {
            count,
            provenance: Provenance::Computed,
        },
        ClassCount::Infinite { moduli_dim } => CensusEntry::Infinite { moduli_dim },
    }
}

fn entry(d: u32, m: u32) -> Result<CensusEntry, CensusError> {
    let computed = CensusEntry::Finite {
        count: 1,
        provenance: Provenance::Computed,
    };
    let mut candidates = Vec::new();
    if m == 1 {
        check_reduced(d)?;
        candidates.push(computed);
    }
    if m == d - 1 {
        check_maximal(d)?;
        candidates.push(computed);
    }
    if m == 2 {
        candidates.push(from_class_count(count_classes(i64::from(d) - 2)?));
    }
    if let Some(count) = paper_encoded(d, m) {
        candidates.push(CensusEntry::Finite {
            count,
            provenance: Provenance::PaperEncoded,
        });
    }
    match candidates[..] {
        [] => {
            let i = m.min(d - m);
            existence_construction(i64::from(d), i64::from(i))?;
            Ok(CensusEntry::AtLeast { count: 1 })
        }
        [first, ref rest @ ..] => {
            if rest.iter().any(|c| *c != first) {
                return Err(CensusError::Inconsistent(format!(
                    "entry (d = {d}, m = {m}) has conflicting values {candidates:?}"
                )));
            }
            Ok(first)
        }
    }
}

pub fn census_row(d: u32) -> Result<CensusRow, CensusError> {
    if d < 2 {
        return Err(CensusError::DmaxTooSmall(d));
    }
    let entries = (1..d)
        .map(|m| entry(d, m).map(|e| (m, e)))
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    let total = entries.values().try_fold(0u64, |acc, e| match e {
        CensusEntry::Finite { count, .. } => Some(acc + count),
        _ => None,
    });
    Ok(CensusRow {
        d,
        entries,
        total: total.map_or(Total::Infinite, Total::Finite),
    })
}

/// Rows `d = 2..=dmax`.
pub fn census(dmax: u32) -> Result<CensusTable, CensusError> {
    if dmax < 2 {
        return Err(CensusError::DmaxTooSmall(dmax));
    }
    Ok(CensusTable {
        rows: (2..=dmax).map(census_row).collect::<Result<_, _>>()?,
    })
}
