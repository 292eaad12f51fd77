//! Order-preserving data-parallel map with a sequential fallback. Without
//! the `parallel` feature every execution mode runs serially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How independent work items are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Serial,
    /// Rayon's global pool, or a dedicated pool of the given size.
    #[default]
    Parallel,
    Jobs(usize),
}

impl Execution {
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Execution::Serial,
            Some(n) => Execution::Jobs(n),
            None => Execution::Parallel,
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Execution::Serial
    }

    /// Applies `f` to every item; results come back in input order
    /// regardless of scheduling.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        match self {
            Execution::Serial => {}
            Execution::Parallel => return items.par_iter().map(f).collect(),
            Execution::Jobs(n) => {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    return pool.install(|| items.par_iter().map(&f).collect());
                }
            }
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..10_000).collect();
        let expect: Vec<u64> = items.iter().map(|x| x * x).collect();
        for ex in [Execution::Serial, Execution::Parallel, Execution::Jobs(3)] {
            assert_eq!(ex.map(&items, |x| x * x), expect);
        }
    }

    #[test]
    fn jobs_one_is_serial() {
        assert_eq!(Execution::from_jobs(Some(1)), Execution::Serial);
        assert!(!Execution::Serial.is_parallel());
    }
}
