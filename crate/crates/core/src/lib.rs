//! Exact piercing of axis-parallel boxes.
//!
//! This crate decides whether a family of boxes in `R^d` can be met by `n`
//! points, certifies colorful and fractional Helly-type statements for
//! concrete instances, generates the tight lower-bound systems for
//! two-piercing, and runs the randomized one-sided tester for
//! `(n, B)`-clusterability of point sets.
//!
//! All arithmetic is exact: coordinates are [`Rational`]s and no floating
//! point value takes part in any decision.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and SVG output live in the `helly-piercer` crate.
//!
//! ```
//! use helly_core::{geometry::ibx, pierce_n, Family};
//!
//! let f: Family = [ibx(&[(0, 1)]), ibx(&[(2, 3)]), ibx(&[(4, 5)])].into_iter().collect();
//! assert!(!pierce_n(&f, 2).unwrap().is_pierceable());
//! assert!(pierce_n(&f, 3).unwrap().is_pierceable());
//! ```

#![no_std]

extern crate alloc;

pub mod caps;
pub mod clustering;
pub mod constructions;
pub mod error;
pub mod family;
pub mod geometry;
pub mod helly;
pub mod piercing;
pub mod rational;

pub use caps::SearchCaps;
pub use error::{Error, Result};
pub use family::{colorful_tuples, ColorSystem, Family};
pub use geometry::{AxisBox, DiagonalPair, Interval, Point, Vertex};
pub use piercing::{
    check_all_colorful, helly_number, interval_colorful_witness, min_stab_intervals, pierce1, pierce_n, pierce_n_with,
    ColorfulChecker, PiercingCertificate, PiercingIndex, Verdict,
};
pub use rational::Rational;
