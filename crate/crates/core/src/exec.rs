//! Sequential or rayon-parallel evaluation of the data-parallel loops
//! (sweeps, enumerations, oracle scans).
//!
//! Without the `parallel` feature, [`Execution::Parallel`] runs sequentially.
//! Both modes return identical results in identical order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.into_par_iter().map(f).collect();
        }
        items.into_iter().map(f).collect()
    }

    /// Sum of `f(i)` over `0..n`.
    pub fn sum_range<F>(self, n: u64, f: F) -> u64
    where
        F: Fn(u64) -> u64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).sum();
        }
        (0..n).map(f).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Execution::Sequential.map(items.clone(), |x| x * x % 97);
        let par = Execution::Parallel.map(items, |x| x * x % 97);
        assert_eq!(seq, par);
        assert_eq!(
            Execution::Sequential.sum_range(10_000, |i| i % 7),
            Execution::Parallel.sum_range(10_000, |i| i % 7)
        );
    }
}
