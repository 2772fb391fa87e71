//! Data-parallel mapping with a sequential fallback.
//!
//! Everything compute-heavy in this crate sweeps an independent batch
//! (contexts × terms, law instantiations, generated corpora), so one
//! shape suffices: map a function over a slice. With the `parallel`
//! feature (on by default) the work spreads across the rayon pool;
//! without it the same call runs sequentially. Bounds are identical in
//! both builds so code written against one compiles against the other.

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    use rayon::prelude::*;
    items.par_iter().map(|t| f(t)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    items.iter().map(|t| f(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order_and_length() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = par_map(&xs, |x| x * x);
        assert_eq!(ys.len(), xs.len());
        for (i, y) in ys.iter().enumerate() {
            assert_eq!(*y, (i as u64) * (i as u64));
        }
    }

    #[test]
    fn works_on_empty_input() {
        let xs: Vec<u8> = Vec::new();
        assert_eq!(par_map(&xs, |x| *x).len(), 0);
    }
}
