//! Divisor classes on Hirzebruch surfaces `F_n`.
//!
//! A class `a C0 + b F` pairs via `C0^2 = -n`, `C0 . F = 1`, `F^2 = 0`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HirzebruchError {
    #[error("classes live on different surfaces F_{left} and F_{right}")]
    SurfaceMismatch { left: u32, right: u32 },
    #[error("degree {0} is below 2")]
    DegreeTooSmall(i64),
    #[error("split index {i} outside 1..={max}")]
    SplitOutOfRange { i: i64, max: i64 },
    #[error("invalid ample model: {0}")]
    InvalidModel(String),
    #[error("elementary transformation off C0 from F_0 has no negative section to track")]
    NegativeSurface,
    #[error("unknown section index {0}")]
    UnknownSection(usize),
    #[error("sections {0} and {1} are disjoint but share the center")]
    DisjointThroughCenter(usize, usize),
    #[error("section {index} has self-intersection {self_int} of wrong parity on F_{n}")]
    Parity { index: usize, self_int: i64, n: u32 },
    #[error("tracked pairing {tracked} of sections {a},{b} disagrees with class value {computed}")]
    PairingMismatch { a: usize, b: usize, tracked: i64, computed: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HClass {
    pub n: u32,
    pub a: i64,
    pub b: i64,
}

impl HClass {
    pub fn new(n: u32, a: i64, b: i64) -> Self {
        Self { n, a, b }
    }

    /// The negative section `C0`.
    pub fn c0(n: u32) -> Self {
        Self::new(n, 1, 0)
    }

    pub fn fiber(n: u32) -> Self {
        Self::new(n, 0, 1)
    }

    fn same_surface(&self, other: &HClass) -> Result<(), HirzebruchError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(HirzebruchError::SurfaceMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn intersect(&self, other: &HClass) -> Result<i64, HirzebruchError> {
        self.same_surface(other)?;
        Ok(self.a * other.b + other.a * self.b - i64::from(self.n) * self.a * other.a)
    }

    pub fn self_intersection(&self) -> i64 {
        self.intersect(self).expect("same surface")
    }

    pub fn checked_add(&self, other: &HClass) -> Result<HClass, HirzebruchError> {
        self.same_surface(other)?;
        Ok(HClass::new(self.n, self.a + other.a, self.b + other.b))
    }

    pub fn checked_sub(&self, other: &HClass) -> Result<HClass, HirzebruchError> {
        self.same_surface(other)?;
        Ok(HClass::new(self.n, self.a - other.a, self.b - other.b))
    }

    pub fn scaled(&self, k: i64) -> HClass {
        HClass::new(self.n, k * self.a, k * self.b)
    }

    /// `h^0(F_n, O(D))`, from the splitting of `pi_* O(a C0 + b F)`.
    pub fn h0(&self) -> u64 {
        if self.a < 0 {
            return 0;
        }
        (0..=self.a)
            .map(|i| (self.b - i * i64::from(self.n) + 1).max(0) as u64)
            .sum()
    }
}

/// `K = -2 C0 - (n + 2) F`.
pub fn canonical(n: u32) -> HClass {
    HClass::new(n, -2, -(i64::from(n) + 2))
}

/// Smooth section `B` with `B^2 = d` on `F_n`, `n = d - 2i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AmpleModel {
    pub n: u32,
    pub section_class: HClass,
    pub d: i64,
}

impl AmpleModel {
    /// The model `(F_{d-2i}, C0 + (d-i) F)`.
    pub fn new(d: i64, i: i64) -> Result<Self, HirzebruchError> {
        if d < 2 {
            return Err(HirzebruchError::DegreeTooSmall(d));
        }
        if i < 1 || i > d / 2 {
            return Err(HirzebruchError::SplitOutOfRange { i, max: d / 2 });
        }
        let n = (d - 2 * i) as u32;
        let model = Self {
            n,
            section_class: HClass::new(n, 1, d - i),
            d,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), HirzebruchError> {
        let n = i64::from(self.n);
        let fail = |why: &str| Err(HirzebruchError::InvalidModel(why.into()));
        if self.section_class.n != self.n || self.section_class.a != 1 {
            return fail("section class is not of the form C0 + bF on this surface");
        }
        if self.d < n + 2 {
            return fail("d < n + 2");
        }
        if (self.d - n) % 2 != 0 {
            return fail("d and n differ in parity");
        }
        if self.section_class.self_intersection() != self.d {
            return fail("B^2 differs from d");
        }
        Ok(())
    }

    /// `i` with `n = d - 2i`; equals `B . C0`.
    pub fn split(&self) -> i64 {
        (self.d - i64::from(self.n)) / 2
    }
}

/// All models `(F_{d-2i}, C0 + (d-i) F)` for `i = 1..=floor(d/2)`.
pub fn ample_models(d: i64) -> Result<Vec<AmpleModel>, HirzebruchError> {
    if d < 2 {
        return Err(HirzebruchError::DegreeTooSmall(d));
    }
    (1..=d / 2).map(|i| AmpleModel::new(d, i)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZqDimension {
    /// The value `m` recorded for the family of divisors in `|B + mF|`
    /// with full contact at `q`.
    pub stated: u32,
    /// Projective dimension read off from the section count:
    /// `h0(B + mF) - (d + m) - 1 = m + 1`.
    pub from_sections: i64,
}

pub fn zq_dimension(d: i64, m: u32) -> Result<ZqDimension, HirzebruchError> {
    let model = *ample_models(d)?.first().expect("d >= 2 has a model");
    let divisor = model
        .section_class
        .checked_add(&HClass::fiber(model.n).scaled(i64::from(m)))?;
    let conditions = d + i64::from(m);
    Ok(ZqDimension {
        stated: m,
        from_sections: divisor.h0() as i64 - conditions - 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H1Dim {
    /// `dim H^1(P^1, O(-d)) = d - 1`.
    pub affine: i64,
    /// Dimension of its projectivization, `d - 2`.
    pub projective: i64,
}

pub fn h1_p1_dim(d: i64) -> Result<H1Dim, HirzebruchError> {
    if d < 2 {
        return Err(HirzebruchError::DegreeTooSmall(d));
    }
    Ok(H1Dim {
        affine: d - 1,
        projective: d - 2,
    })
}

/// Sections of `F_n -> P^1` followed through elementary transformations by
/// their self-intersections and pairwise intersection numbers. Index
/// `NEGATIVE` is the original negative section `C0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedSurface {
    pub n: u32,
    labels: Vec<String>,
    self_ints: Vec<i64>,
    pairings: Vec<Vec<i64>>,
}

impl TrackedSurface {
    pub const NEGATIVE: usize = 0;

    /// Starts on `F_n` with `C0` and further sections given by their classes
    /// `C0 + b F`.
    pub fn new(n: u32, others: &[(&str, i64)]) -> Self {
        let mut classes = alloc::vec![("C0", HClass::c0(n))];
        classes.extend(others.iter().map(|&(l, b)| (l, HClass::new(n, 1, b))));
        let pairings = classes
            .iter()
            .map(|(_, x)| classes.iter().map(|(_, y)| x.intersect(y).expect("same n")).collect())
            .collect();
        Self {
            n,
            labels: classes.iter().map(|(l, _)| String::from(*l)).collect(),
            self_ints: classes.iter().map(|(_, c)| c.self_intersection()).collect(),
            pairings,
        }
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn self_int(&self, index: usize) -> Result<i64, HirzebruchError> {
        self.self_ints
            .get(index)
            .copied()
            .ok_or(HirzebruchError::UnknownSection(index))
    }

    pub fn pairing(&self, a: usize, b: usize) -> Result<i64, HirzebruchError> {
        if a == b {
            return self.self_int(a);
        }
        self.pairings
            .get(a)
            .and_then(|row| row.get(b))
            .copied()
            .ok_or(HirzebruchError::UnknownSection(a.max(b)))
    }

    /// Class `C0 + b F` of a tracked section, recovered from its
    /// self-intersection `2b - n`.
    pub fn class_of(&self, index: usize) -> Result<HClass, HirzebruchError> {
        let s = self.self_int(index)?;
        let n = i64::from(self.n);
        if (s + n) % 2 != 0 {
            return Err(HirzebruchError::Parity {
                index,
                self_int: s,
                n: self.n,
            });
        }
        Ok(HClass::new(self.n, 1, (s + n) / 2))
    }

    /// Checks every tracked pairing against the class-derived one.
    pub fn verify(&self) -> Result<(), HirzebruchError> {
        let classes = (0..self.labels.len())
            .map(|i| self.class_of(i))
            .collect::<Result<Vec<_>, _>>()?;
        if classes[Self::NEGATIVE] != HClass::c0(self.n) {
            return Err(HirzebruchError::PairingMismatch {
                a: 0,
                b: 0,
                tracked: self.self_ints[0],
                computed: -i64::from(self.n),
            });
        }
        for (a, ca) in classes.iter().enumerate() {
            for (b, cb) in classes.iter().enumerate().skip(a + 1) {
                let computed = ca.intersect(cb)?;
                let tracked = self.pairings[a][b];
                if tracked != computed {
                    return Err(HirzebruchError::PairingMismatch {
                        a,
                        b,
                        tracked,
                        computed,
                    });
                }
            }
        }
        Ok(())
    }

    /// Blows up a point on one fiber and contracts the old fiber. `through`
    /// lists the sections passing through the center; the center lies on
    /// `C0` iff `NEGATIVE` is listed.
    pub fn elementary_transform(&self, through: &BTreeSet<usize>) -> Result<Self, HirzebruchError> {
        let count = self.labels.len();
        if let Some(&bad) = through.iter().find(|&&i| i >= count) {
            return Err(HirzebruchError::UnknownSection(bad));
        }
        for &a in through {
            for &b in through.range(a + 1..) {
                if self.pairings[a][b] <= 0 {
                    return Err(HirzebruchError::DisjointThroughCenter(a, b));
                }
            }
        }
        let on_negative = through.contains(&Self::NEGATIVE);
        let n = if on_negative {
            self.n + 1
        } else {
            self.n.checked_sub(1).ok_or(HirzebruchError::NegativeSurface)?
        };
        let mut next = self.clone();
        next.n = n;
        for i in 0..count {
            next.self_ints[i] += if through.contains(&i) { -1 } else { 1 };
            for j in 0..count {
                if i != j {
                    next.pairings[i][j] += match (through.contains(&i), through.contains(&j)) {
                        (true, true) => -1,
                        (false, false) => 1,
                        _ => 0,
                    };
                }
            }
        }
        Ok(next)
    }
}

/// One run of the existence construction for multiplicities `d - i` and `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceRun {
    pub model: AmpleModel,
    /// `B' . C0`, computed from classes on the start model.
    pub meets_negative: i64,
    /// `B' . C_{n'}` with `C_{n'} ~ C0 + n' F`.
    pub meets_positive: i64,
    /// Tracked states, starting on `F_{n'}` and ending on `F_0`.
    pub states: Vec<TrackedSurface>,
}

/// On `F_{d-2i}` with `B' ~ C0 + (d-i) F` and `C' ~ C0 + (d-2i) F`, performs
/// `i` elementary transformations at a point of `C0 n B'` followed by `d - i`
/// at a point of `C' n B'`, verifying every intermediate state.
pub fn existence_construction(d: i64, i: i64) -> Result<ExistenceRun, HirzebruchError> {
    const B: usize = 1;
    const C: usize = 2;
    let model = AmpleModel::new(d, i)?;
    let n = model.n;
    let positive = HClass::new(n, 1, i64::from(n));
    let meets_negative = model.section_class.intersect(&HClass::c0(n))?;
    let meets_positive = model.section_class.intersect(&positive)?;
    let mut state = TrackedSurface::new(n, &[("B'", d - i), ("C'", i64::from(n))]);
    state.verify()?;
    let mut states = alloc::vec![state.clone()];
    let on_negative = BTreeSet::from([TrackedSurface::NEGATIVE, B]);
    let on_positive = BTreeSet::from([B, C]);
    for step in 0..d {
        let through = if step < i { &on_negative } else { &on_positive };
        state = state.elementary_transform(through)?;
        state.verify()?;
        states.push(state.clone());
    }
    Ok(ExistenceRun {
        model,
        meets_negative,
        meets_positive,
        states,
    })
}
