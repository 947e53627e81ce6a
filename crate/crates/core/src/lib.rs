//! Exact computation over small finite fields GF(p^k), aimed at one job:
//! counting, sampling, and decomposing pairs of commuting matrices whose
//! p-th power vanishes.
//!
//! The crate is organised bottom-up:
//!
//! * [`ff`] — field arithmetic with canonical moduli and O(1) mul/inv.
//! * [`matff`] — dense matrices over those fields, a bit-packed GF(2)
//!   engine, and budgeted exhaustive enumeration of affine families.
//! * [`nilpotent`] — Jordan types, canonical square-zero representatives,
//!   centralizers and exact conjugacy-class sizes.
//! * [`variety`] — the pair variety itself: stratified exact point counts,
//!   dimension estimates from counts at several field sizes, explicit
//!   component representatives, and a truncated-polynomial side computation
//!   in characteristic 7.
//! * [`modvar`] — commuting pairs viewed as modules over k[X,Y]/(X²,Y²):
//!   fingerprints, endomorphism rings, Krull-Schmidt decomposition and
//!   isomorphism testing.
//! * [`io`] — JSON/CSV interchange for matrices, pairs and reports.
//! * [`verify`] — named check suites combining the above into pass/fail
//!   reports.
//!
//! Everything is deterministic: randomized procedures take explicit seeds,
//! and enumeration results are independent of the worker count.

pub mod ff;
pub mod io;
pub mod matff;
pub mod modvar;
pub mod nilpotent;
pub mod variety;
pub mod verify;
