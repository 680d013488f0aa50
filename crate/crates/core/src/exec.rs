//! Order-preserving batch execution.
//!
//! With the `parallel` feature (default) batches run on a rayon pool;
//! without it every executor falls back to a plain sequential map. Results
//! come back in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Executor {
    Sequential,
    /// `workers == 0` lets rayon pick the thread count.
    Parallel { workers: usize },
    #[default]
    Auto,
}

impl Executor {
    pub fn with_workers(workers: usize) -> Self {
        match workers {
            0 => Executor::Auto,
            1 => Executor::Sequential,
            n => Executor::Parallel { workers: n },
        }
    }

    pub fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match *self {
            Executor::Sequential => items.into_iter().map(f).collect(),
            Executor::Parallel { workers } => parallel_map(items, f, workers),
            Executor::Auto => parallel_map(items, f, 0),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: Vec<T>, f: F, workers: usize) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build worker pool");
    pool.install(|| items.into_par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: Vec<T>, f: F, _workers: usize) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_executors_preserve_order() {
        let items: Vec<u64> = (0..1000).collect();
        let expected: Vec<u64> = items.iter().map(|x| x * x).collect();
        for ex in [Executor::Sequential, Executor::Auto, Executor::Parallel { workers: 3 }] {
            assert_eq!(ex.map(items.clone(), |x| x * x), expected);
        }
    }

    #[test]
    fn worker_count_mapping() {
        assert_eq!(Executor::with_workers(0), Executor::Auto);
        assert_eq!(Executor::with_workers(1), Executor::Sequential);
        assert_eq!(Executor::with_workers(8), Executor::Parallel { workers: 8 });
    }
}
