//! Multi-threaded sweeps over colorful tuples.
//!
//! Tuples are addressed by their rank in lexicographic order, so taking the
//! first failing rank reproduces the sequential answer exactly.

use helly_core::constructions::{witness_from_tables, TableReading};
use helly_core::{ColorSystem, ColorfulChecker, Error};
use rayon::prelude::*;

/// Same result as [`helly_core::check_all_colorful`], computed in parallel.
pub fn check_all_colorful(c: &ColorSystem, n: usize) -> Result<Option<Vec<usize>>, Error> {
    if n == 0 {
        return Err(Error::ZeroBudget);
    }
    let checker = ColorfulChecker::new(c);
    Ok((0..c.tuple_count())
        .into_par_iter()
        .find_first(|&k| !checker.tuple_pierceable(&c.tuple_at(k), n))
        .map(|k| c.tuple_at(k)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableSweep {
    pub tuples: u64,
    pub axis_consistent: u64,
    pub literal_only: u64,
    /// First tuple (lexicographic) neither reading handles, with the error.
    pub first_failure: Option<(Vec<usize>, String)>,
    pub failures: u64,
}

/// Runs [`witness_from_tables`] on every colorful tuple.
pub fn sweep_table_witnesses(c: &ColorSystem) -> TableSweep {
    let outcomes: Vec<(u64, Result<TableReading, String>)> = (0..c.tuple_count())
        .into_par_iter()
        .map(|k| (k, witness_from_tables(c, &c.tuple_at(k)).map(|w| w.reading).map_err(|e| e.to_string())))
        .collect();
    let mut sweep = TableSweep { tuples: outcomes.len() as u64, ..TableSweep::default() };
    for (k, outcome) in outcomes {
        match outcome {
            Ok(TableReading::AxisConsistent) => sweep.axis_consistent += 1,
            Ok(TableReading::Literal) => sweep.literal_only += 1,
            Err(e) => {
                sweep.failures += 1;
                if sweep.first_failure.is_none() {
                    sweep.first_failure = Some((c.tuple_at(k), e));
                }
            }
        }
    }
    sweep
}

#[cfg(test)]
mod tests {
    use super::*;
    use helly_core::constructions::{gen_lowerbound_2piercing, gen_lowerbound_2piercing_with, LowerBoundCoordinates};

    #[test]
    fn agrees_with_sequential_check() {
        for coords in [LowerBoundCoordinates::Corrected, LowerBoundCoordinates::Printed] {
            let sys = gen_lowerbound_2piercing_with(2, coords).unwrap();
            assert_eq!(check_all_colorful(&sys, 2).unwrap(), helly_core::check_all_colorful(&sys, 2).unwrap());
        }
    }

    #[test]
    fn table_sweep_on_d2() {
        let sys = gen_lowerbound_2piercing(2).unwrap();
        let s = sweep_table_witnesses(&sys);
        assert_eq!(s.tuples, 243);
        assert_eq!(s.axis_consistent, 243);
        assert_eq!(s.failures, 0);
    }
}
