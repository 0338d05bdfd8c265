//! Monte-Carlo counts of instances without a stable matching, and of those
//! that still admit a popular matching.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{gen_instance, GenConfig};
use crate::instance::Instance;
use crate::search::{solve, SolveMode, SolveOptions, SolveResult};
use crate::stable::find_stable;

pub const CSV_HEADER: &str = "n,c,p,samples,seed,no_stable,popular_no_stable,elapsed_ms";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub c: usize,
    pub p: f64,
    pub samples: u64,
    pub seed: u64,
    pub no_stable: u64,
    pub popular_no_stable: u64,
    pub elapsed_ms: u64,
}

#[derive(Copy, Clone, Debug)]
pub struct ExperimentOptions {
    pub workers: usize,
    /// Search every admissible `U` instead of only `|U| <= c`.
    pub uncapped: bool,
    /// Report wall-clock time; when off, `elapsed_ms` is 0 and output is
    /// fully reproducible.
    pub timing: bool,
    pub rejection_cap: u64,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            workers: 1,
            uncapped: false,
            timing: true,
            rejection_cap: crate::generator::DEFAULT_REJECTION_CAP,
        }
    }
}

/// What one instance contributes to a row.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub no_stable: bool,
    pub popular_no_stable: bool,
}

/// Classifies one instance of odd order; `cap` bounds `|U|`.
pub fn classify(inst: &Instance, cap: Option<usize>) -> Result<Outcome> {
    if find_stable(inst).is_some() {
        return Ok(Outcome::default());
    }
    let result = solve(inst, &SolveOptions::new(SolveMode::OddExact).with_cap(cap))?;
    Ok(Outcome {
        no_stable: true,
        popular_no_stable: result != SolveResult::None,
    })
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))
}

/// One cell: `samples` instances drawn from streams `0..samples`.
pub fn run_cell(
    n: usize,
    c: usize,
    p: f64,
    samples: u64,
    seed: u64,
    options: &ExperimentOptions,
) -> Result<ExperimentRow> {
    pool(options.workers)?.install(|| run_cell_in_pool(n, c, p, samples, seed, options))
}

fn run_cell_in_pool(
    n: usize,
    c: usize,
    p: f64,
    samples: u64,
    seed: u64,
    options: &ExperimentOptions,
) -> Result<ExperimentRow> {
    if n % 2 == 0 {
        return Err(Error::Config(format!(
            "experiment cells need odd n, got {n}"
        )));
    }
    let cfg = GenConfig::new(n, c, p, seed).with_rejection_cap(options.rejection_cap);
    cfg.validate()?;
    let cap = (!options.uncapped).then_some(c);
    let start = Instant::now();
    let (no_stable, popular_no_stable) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let outcome = classify(&gen_instance(&cfg, i)?, cap)?;
            Ok::<_, Error>((outcome.no_stable as u64, outcome.popular_no_stable as u64))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let elapsed_ms = if options.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(ExperimentRow {
        n,
        c,
        p,
        samples,
        seed,
        no_stable,
        popular_no_stable,
        elapsed_ms,
    })
}

/// Runs every cell in order and writes the CSV, header first.
pub fn run_table<W: Write>(
    cells: &[(usize, usize)],
    p: f64,
    samples: u64,
    seed: u64,
    options: &ExperimentOptions,
    out: W,
) -> Result<Vec<ExperimentRow>> {
    let pool = pool(options.workers)?;
    let mut writer = csv::Writer::from_writer(out);
    let mut rows = Vec::with_capacity(cells.len());
    for &(n, c) in cells {
        let row = pool.install(|| run_cell_in_pool(n, c, p, samples, seed, options))?;
        writer.serialize(&row)?;
        writer.flush()?;
        rows.push(row);
    }
    if rows.is_empty() {
        writer.write_record(CSV_HEADER.split(','))?;
    }
    writer.flush()?;
    Ok(rows)
}

/// The 3×3 grid n ∈ {7,9,11}, c ∈ {3,4,5}.
pub fn standard_cells() -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for c in [3, 4, 5] {
        for n in [7, 9, 11] {
            cells.push((n, c));
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(workers: usize) -> ExperimentOptions {
        ExperimentOptions {
            workers,
            timing: false,
            ..ExperimentOptions::default()
        }
    }

    #[test]
    fn empty_run() {
        let row = run_cell(7, 3, 0.8, 0, 1, &quiet(1)).unwrap();
        assert_eq!((row.no_stable, row.popular_no_stable), (0, 0));
    }

    #[test]
    fn even_n_is_rejected() {
        assert!(run_cell(8, 3, 0.8, 10, 1, &quiet(1)).is_err());
    }

    #[test]
    fn counts_are_sandwiched_and_worker_invariant() {
        let one = run_cell(7, 5, 0.8, 400, 5, &quiet(1)).unwrap();
        let four = run_cell(7, 5, 0.8, 400, 5, &quiet(4)).unwrap();
        assert_eq!(one, four);
        assert!(one.popular_no_stable <= one.no_stable && one.no_stable <= one.samples);
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        let rows = run_table(&[(7, 3)], 0.8, 20, 3, &quiet(2), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let expected = format!(
            "7,3,0.8,20,3,{},{},0",
            rows[0].no_stable, rows[0].popular_no_stable
        );
        assert_eq!(lines.next(), Some(expected.as_str()));
        assert_eq!(lines.next(), None);

        let mut buf = Vec::new();
        run_table(&[], 0.8, 20, 3, &quiet(1), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn standard_grid_has_nine_cells() {
        assert_eq!(standard_cells().len(), 9);
    }
}
