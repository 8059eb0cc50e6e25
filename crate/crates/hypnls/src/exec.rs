//! Data-parallel loop helpers with a sequential fallback.
//!
//! All parallelism in the crate funnels through these two functions so that
//! results are bitwise independent of thread count: work is mapped by index
//! into preallocated slots and never combined through order-dependent
//! parallel reductions.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f(i)` for each index and collects results in index order.
pub(crate) fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Mutates each element in place with access to its index.
pub(crate) fn for_each_indexed<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_preserves_order() {
        let v = map_indexed(100, |i| i * i);
        assert_eq!(v[7], 49);
        assert_eq!(v.len(), 100);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn for_each_indexed_writes_by_slot() {
        let mut v = vec![0usize; 64];
        for_each_indexed(&mut v, |i, x| *x = 2 * i + 1);
        assert_eq!(v[0], 1);
        assert_eq!(v[63], 127);
    }
}
