//! Exact birational calculus for affine surfaces completed by a smooth
//! rational curve.
//!
//! The crate is `no_std` (it needs `alloc`) and every operation is a pure
//! function over exact rational arithmetic:
//!
//! * [`exact_algebra`] — rationals, dense and Laurent polynomials, bihomogeneous
//!   forms, Bezout identities and the integer-exponent scaling test.
//! * [`snc_graph`] — weighted dual graphs of SNC divisors: blow-ups,
//!   contractions, chain types and the fiber-multiplicity solver.
//! * [`hirzebruch`] — divisor classes on Hirzebruch surfaces, ample models,
//!   dimension counts and elementary transformations.
//! * [`pencil_resolver`] — resolution of the special pencils into dual graphs,
//!   the Blanc–van Santen sections and the torus action on pencil parameters.
//! * [`fibration_classifier`] — normal forms and the equivalence decision for
//!   multiplicity-two fibrations, class counting and gluing identities.
//! * [`census`] — the table of equivalence-class counts.

#![no_std]

extern crate alloc;

pub mod census;
pub mod exact_algebra;
pub mod fibration_classifier;
pub mod hirzebruch;
pub mod pencil_resolver;
pub mod snc_graph;
