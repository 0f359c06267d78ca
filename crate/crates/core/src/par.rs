//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over the rayon pool; without it every helper runs sequentially.

/// How a search distributes its work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// The strategy that will actually run, given the compiled features.
    pub fn effective(self) -> Self {
        if cfg!(feature = "parallel") {
            self
        } else {
            Strategy::Sequential
        }
    }
}

/// Map `f` over `items` and fold the results with `merge`, starting from `init()`.
pub fn map_reduce<T, R, F, I, M>(strategy: Strategy, items: &[T], f: F, init: I, merge: M) -> R
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
    M: Fn(R, R) -> R + Sync + Send,
{
    match strategy.effective() {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).reduce(init, merge)
        }
        _ => items.iter().map(f).fold(init(), merge),
    }
}

/// Order-preserving parallel map.
pub fn map_collect<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy.effective() {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (1..=1000).collect();
        for s in [Strategy::Sequential, Strategy::Parallel] {
            let total = map_reduce(s, &xs, |&x| x * x, || 0, |a, b| a + b);
            assert_eq!(total, 333_833_500);
            assert_eq!(map_collect(s, &xs, |&x| x + 1)[999], 1001);
        }
    }
}
