//! Benchmark suites producing CSV records.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

use nnirank2_core::instancegen::{gen_bt, gen_near_t_with, gen_product_with, instance_rng, DiscreteGaussian};
use nnirank2_core::{reduce_to_3x3, solve, IntMatrix, Verdict};

use crate::commands::{CliError, CliResult};

pub const THREADS_ENV: &str = "NNIRANK2_THREADS";
pub const TABLE1_SIZES: [usize; 5] = [3, 5, 10, 50, 100];
pub const TABLE1_SIGMAS: [f64; 4] = [3.0, 6.0, 10.0, 25.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Table2,
    Bt,
    NearT,
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "table1" => Ok(Suite::Table1),
            "table2" => Ok(Suite::Table2),
            "bt" => Ok(Suite::Bt),
            "near_t" => Ok(Suite::NearT),
            other => Err(CliError::Usage(format!("unknown suite '{other}' (expected table1, table2, bt or near_t)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    /// Overrides the suite's default matrix sizes.
    pub sizes: Option<Vec<usize>>,
    pub sigmas: Option<Vec<f64>>,
    /// Largest `t` of the `bt` sweep.
    pub t_max: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub m: usize,
    pub sigma_or_t: f64,
    pub count: usize,
    pub avg_largest_entry: f64,
    pub min_seconds: f64,
    pub avg_seconds: f64,
    pub max_seconds: f64,
    pub rank2_count: usize,
    /// Only set by the table2 suite.
    pub reduce_seconds: Option<f64>,
    pub reduced_factor_seconds: Option<f64>,
}

pub const HEADER: [&str; 9] =
    ["n", "m", "sigma_or_t", "count", "avg_largest_entry", "min_seconds", "avg_seconds", "max_seconds", "rank2_count"];

struct Sample {
    largest: f64,
    seconds: f64,
    rank2: bool,
    reduce: Option<(f64, f64)>,
}

fn timed_solve(a: &IntMatrix) -> CliResult<(f64, Verdict)> {
    let start = Instant::now();
    let verdict = solve(a)?.verdict;
    Ok((start.elapsed().as_secs_f64(), verdict))
}

fn sample(a: &IntMatrix, with_reduce: bool) -> CliResult<Sample> {
    let (seconds, verdict) = timed_solve(a)?;
    let reduce = if with_reduce {
        let start = Instant::now();
        let (c, _) = reduce_to_3x3(a)?;
        let reduce_t = start.elapsed().as_secs_f64();
        let (factor_t, reduced) = timed_solve(&c)?;
        if reduced != verdict {
            return Err(nnirank2_core::Error::Internal("reduction changed the verdict".into()).into());
        }
        Some((reduce_t, factor_t))
    } else {
        None
    };
    Ok(Sample { largest: a.max_entry().to_f64().unwrap_or(f64::INFINITY), seconds, rank2: verdict == Verdict::Rank2, reduce })
}

fn summarize(n: usize, m: usize, sigma_or_t: f64, samples: &[Sample]) -> BenchRecord {
    let k = samples.len() as f64;
    let times = samples.iter().map(|s| s.seconds);
    let mean = |it: &mut dyn Iterator<Item = f64>| it.sum::<f64>() / k;
    let reduce = samples.iter().all(|s| s.reduce.is_some()).then(|| {
        (
            mean(&mut samples.iter().map(|s| s.reduce.unwrap().0)),
            mean(&mut samples.iter().map(|s| s.reduce.unwrap().1)),
        )
    });
    BenchRecord {
        n,
        m,
        sigma_or_t,
        count: samples.len(),
        avg_largest_entry: mean(&mut samples.iter().map(|s| s.largest)),
        min_seconds: times.clone().fold(f64::INFINITY, f64::min),
        avg_seconds: mean(&mut times.clone()),
        max_seconds: times.fold(0.0, f64::max),
        rank2_count: samples.iter().filter(|s| s.rank2).count(),
        reduce_seconds: reduce.map(|r| r.0),
        reduced_factor_seconds: reduce.map(|r| r.1),
    }
}

/// Per-cell streams keep every instance reproducible regardless of thread
/// scheduling or cell order.
fn stream(cell: usize, index: usize) -> u64 {
    ((cell as u64) << 32) | index as u64
}

fn product_cell(cfg: &BenchConfig, cell: usize, n: usize, sigma: f64, count: usize, with_reduce: bool) -> CliResult<BenchRecord> {
    let g = DiscreteGaussian::new(sigma)?;
    let samples = (0..count)
        .into_par_iter()
        .map(|i| {
            let a = gen_product_with(n, n, &g, &mut instance_rng(cfg.seed, stream(cell, i)))?.a;
            sample(&a, with_reduce)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(summarize(n, n, sigma, &samples))
}

fn grid(cfg: &BenchConfig) -> Vec<(usize, f64, usize)> {
    let sizes = cfg.sizes.clone().unwrap_or_else(|| TABLE1_SIZES.to_vec());
    let sigmas = cfg.sigmas.clone().unwrap_or_else(|| TABLE1_SIGMAS.to_vec());
    sizes.iter().flat_map(|&n| sigmas.iter().map(move |&s| (n, s, cfg.count))).collect()
}

fn table2_grid(cfg: &BenchConfig) -> Vec<(usize, f64, usize)> {
    if cfg.sizes.is_some() || cfg.sigmas.is_some() {
        return grid(cfg);
    }
    let mut cells: Vec<_> = TABLE1_SIGMAS.iter().map(|&s| (10, s, cfg.count)).collect();
    cells.push((300, 3.0, cfg.count.min(3)));
    cells
}

pub fn run_suite(cfg: &BenchConfig) -> CliResult<Vec<BenchRecord>> {
    if cfg.count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    match cfg.suite {
        Suite::Table1 => grid(cfg)
            .into_iter()
            .enumerate()
            .map(|(cell, (n, s, k))| product_cell(cfg, cell, n, s, k, false))
            .collect(),
        Suite::Table2 => table2_grid(cfg)
            .into_iter()
            .enumerate()
            .map(|(cell, (n, s, k))| product_cell(cfg, cell, n, s, k, true))
            .collect(),
        Suite::Bt => (1..=cfg.t_max)
            .map(|t| {
                let a = gen_bt(t)?;
                let samples = (0..cfg.count).map(|_| sample(&a, false)).collect::<CliResult<Vec<_>>>()?;
                Ok(summarize(3, 3, t as f64, &samples))
            })
            .collect(),
        Suite::NearT => (0..cfg.count)
            .into_par_iter()
            .map(|i| {
                let mut rng = instance_rng(cfg.seed, stream(0, i));
                let t = rng.random_range(3..=100);
                let a = gen_near_t_with(t, &mut rng)?;
                Ok(summarize(3, 3, t as f64, &[sample(&a, false)?]))
            })
            .collect(),
    }
}

/// Runs `f` on a pool capped by `NNIRANK2_THREADS` when it is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let k: usize = v.parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
        if k == 0 {
            return Err(CliError::Usage(format!("{THREADS_ENV} must be positive")));
        }
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(pool.install(f))
}

pub fn write_csv(records: &[BenchRecord], suite: Suite, out: impl Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let extra = suite == Suite::Table2;
    let mut header: Vec<&str> = HEADER.to_vec();
    if extra {
        header.extend(["reduce_seconds", "reduced_factor_seconds"]);
    }
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.n.to_string(),
            r.m.to_string(),
            r.sigma_or_t.to_string(),
            r.count.to_string(),
            r.avg_largest_entry.to_string(),
            r.min_seconds.to_string(),
            r.avg_seconds.to_string(),
            r.max_seconds.to_string(),
            r.rank2_count.to_string(),
        ];
        if extra {
            row.push(r.reduce_seconds.map_or_else(String::new, |x| x.to_string()));
            row.push(r.reduced_factor_seconds.map_or_else(String::new, |x| x.to_string()));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite) -> BenchConfig {
        BenchConfig { suite, seed: 1, count: 4, sizes: Some(vec![3]), sigmas: Some(vec![3.0]), t_max: 5 }
    }

    #[test]
    fn records_are_consistent() {
        for suite in [Suite::Table1, Suite::Table2, Suite::Bt, Suite::NearT] {
            for r in run_suite(&cfg(suite)).unwrap() {
                assert!(r.min_seconds <= r.avg_seconds + 1e-12 && r.avg_seconds <= r.max_seconds + 1e-12);
                assert!(r.rank2_count <= r.count);
                assert_eq!(r.reduce_seconds.is_some(), suite == Suite::Table2);
            }
        }
    }

    #[test]
    fn bt_is_never_rank2() {
        assert!(run_suite(&cfg(Suite::Bt)).unwrap().iter().all(|r| r.rank2_count == 0));
    }

    #[test]
    fn csv_round_trips() {
        let records = run_suite(&cfg(Suite::Table2)).unwrap();
        let mut buf = Vec::new();
        write_csv(&records, Suite::Table2, &mut buf).unwrap();
        let mut rd = csv::Reader::from_reader(buf.as_slice());
        assert_eq!(rd.headers().unwrap().len(), 11);
        for (row, r) in rd.records().zip(&records) {
            let row = row.unwrap();
            assert_eq!(row[4].parse::<f64>().unwrap(), r.avg_largest_entry);
            assert_eq!(row[6].parse::<f64>().unwrap(), r.avg_seconds);
            assert_eq!(row[9].parse::<f64>().unwrap(), r.reduce_seconds.unwrap());
        }
    }

    #[test]
    fn suite_names() {
        assert_eq!("near_t".parse::<Suite>().unwrap(), Suite::NearT);
        assert!("".parse::<Suite>().is_err());
    }
}
