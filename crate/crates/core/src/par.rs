//! Execution strategy for the data-parallel loops (box enumeration,
//! random-point identity checks, property sweeps).
//!
//! With the `parallel` feature disabled, [`Exec::Parallel`] runs
//! sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            #[cfg(not(feature = "parallel"))]
            Exec::Parallel => items.iter().map(f).collect(),
        }
    }

    /// Keeps the items for which `pred` holds, preserving order.
    pub fn filter<T, F>(self, items: &[T], pred: F) -> Vec<T>
    where
        T: Sync + Send + Clone,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().filter(|t| pred(t)).cloned().collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().filter(|t| pred(t)).cloned().collect(),
            #[cfg(not(feature = "parallel"))]
            Exec::Parallel => items.iter().filter(|t| pred(t)).cloned().collect(),
        }
    }

    /// Fallible map; the first error in item order is returned.
    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let sq = |x: &u64| x * x;
        assert_eq!(Exec::Sequential.map(&items, sq), Exec::Parallel.map(&items, sq));
        let even = |x: &u64| x.is_multiple_of(2);
        assert_eq!(Exec::Sequential.filter(&items, even), Exec::Parallel.filter(&items, even));
    }
}
