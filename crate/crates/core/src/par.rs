//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature disabled every [`Exec`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items the parallel path is not worth the scheduling cost.
const PAR_THRESHOLD: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    pub fn is_parallel(self, len: usize) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel && len >= PAR_THRESHOLD
    }
}

pub fn num_threads() -> usize {
    #[cfg(feature = "parallel")]
    return rayon::current_num_threads();

    #[cfg(not(feature = "parallel"))]
    return 1;
}

/// Order-preserving map.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel(items.len()) {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving fallible map; returns the first error in item order.
pub fn try_map<T, U, E, F>(exec: Exec, items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    map(exec, items, f).into_iter().collect()
}

/// Map then fold with an associative `combine`; the result does not depend on `exec`
/// as long as `combine` is associative and commutative.
pub fn map_reduce<T, U, F, G, Z>(exec: Exec, items: &[T], f: F, identity: Z, combine: G) -> U
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
    G: Fn(U, U) -> U + Sync + Send,
    Z: Fn() -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel(items.len()) {
        return items.par_iter().map(f).reduce(&identity, &combine);
    }
    let _ = exec;
    items.iter().map(f).fold(identity(), combine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map(Exec::Parallel, &items, |x| x * x);
        let b = map(Exec::Sequential, &items, |x| x * x);
        assert_eq!(a, b);
        let s1 = map_reduce(Exec::Parallel, &items, |x| *x, || 0, |a, b| a + b);
        let s2 = map_reduce(Exec::Sequential, &items, |x| *x, || 0, |a, b| a + b);
        assert_eq!(s1, s2);
    }

    #[test]
    fn try_map_reports_first_error() {
        let items: Vec<i32> = (0..100).collect();
        let r: Result<Vec<i32>, i32> =
            try_map(Exec::Parallel, &items, |x| if *x % 30 == 29 { Err(*x) } else { Ok(*x) });
        assert_eq!(r, Err(29));
    }
}
