//! Seeded, order-independent execution of independent replications.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;

use crate::error::{GarchError, Result};
use crate::rng::derive_seed;

/// Results of `R` replications, in replication order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationOutcome<T> {
    pub records: Vec<(usize, T)>,
    /// Replication index and error (or panic) message.
    pub failures: Vec<(usize, String)>,
    pub requested: usize,
}

impl<T> ReplicationOutcome<T> {
    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.records.iter().map(|(_, v)| v)
    }
}

/// Run `task(r, seed_r)` for `r = 0..reps` with
/// `seed_r = derive_seed(master_seed, r, label)`.
///
/// Errors and panics are caught per replication, logged and counted; the
/// remaining replications still run. The outcome does not depend on `threads`
/// (`None` uses the global rayon pool).
pub fn run_replications<T, F>(
    label: &str,
    master_seed: u64,
    reps: usize,
    threads: Option<usize>,
    task: F,
) -> Result<ReplicationOutcome<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync + Send,
{
    let run = || -> Vec<std::result::Result<T, String>> {
        (0..reps)
            .into_par_iter()
            .map(|r| {
                let seed = derive_seed(master_seed, r as u64, label);
                match catch_unwind(AssertUnwindSafe(|| task(r, seed))) {
                    Ok(Ok(v)) => Ok(v),
                    Ok(Err(e)) => Err(e.to_string()),
                    Err(panic) => Err(panic_message(panic.as_ref())),
                }
            })
            .collect()
    };
    let results = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| GarchError::InvalidArgument(format!("cannot build thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut records = Vec::with_capacity(reps);
    let mut failures = Vec::new();
    for (r, res) in results.into_iter().enumerate() {
        match res {
            Ok(v) => records.push((r, v)),
            Err(msg) => {
                log::warn!("{label}: replication {r} failed: {msg}");
                failures.push((r, msg));
            }
        }
    }
    Ok(ReplicationOutcome { records, failures, requested: reps })
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        format!("panic: {s}")
    } else if let Some(s) = p.downcast_ref::<String>() {
        format!("panic: {s}")
    } else {
        "panic".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn task(_r: usize, seed: u64) -> Result<f64> {
        let mut rng = rng_from_seed(seed);
        Ok((0..1000).map(|_| rng.random::<f64>()).sum())
    }

    #[test]
    fn serial_and_parallel_agree() {
        let a = run_replications("t", 5, 4, Some(1), task).unwrap();
        let b = run_replications("t", 5, 4, Some(4), task).unwrap();
        let c = run_replications("t", 5, 4, None, task).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.records.len(), 4);
    }

    #[test]
    fn failures_are_counted_not_fatal() {
        let out = run_replications("t", 5, 4, Some(2), |r, s| {
            if r == 2 {
                panic!("forced failure");
            }
            task(r, s)
        })
        .unwrap();
        assert_eq!(out.records.len(), 3);
        assert_eq!(out.failures.len(), 1);
        assert_eq!(out.failures[0].0, 2);
        assert!(out.failures[0].1.contains("forced failure"));
        assert_eq!(out.records.len() + out.failures.len(), out.requested);

        let errs = run_replications("t", 5, 3, None, |r, s| {
            if r == 0 {
                Err(GarchError::DegenerateData("boom".into()))
            } else {
                task(r, s)
            }
        })
        .unwrap();
        assert_eq!(errs.failures.len(), 1);
    }

    #[test]
    fn master_seed_changes_records() {
        let a = run_replications("t", 5, 3, None, task).unwrap();
        let b = run_replications("t", 6, 3, None, task).unwrap();
        assert_ne!(a.records, b.records);
    }
}
