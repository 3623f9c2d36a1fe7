//! Dispatch for the data-parallel kernels.
//!
//! With the `parallel` feature (default) the face scans, per-subset volume
//! sums and per-sample family analyses run on rayon; without it everything
//! falls back to plain iterators. [`sequential`] forces the fallback at
//! runtime on the current thread, which is what the benchmarks use to
//! compare both paths in one binary.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Run `f` with all data-parallel kernels forced onto the sequential path.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQUENTIAL.with(|flag| {
        let previous = flag.replace(true);
        let out = f();
        flag.set(previous);
        out
    })
}

fn is_sequential() -> bool {
    FORCE_SEQUENTIAL.with(Cell::get)
}

/// Order-preserving map over a slice. Parallel when the feature is enabled
/// and not overridden; results are collected in input order either way, so
/// callers see identical output from both paths.
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if !is_sequential() {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_slice_preserves_order() {
        let items: Vec<u64> = (0..100).collect();
        let doubled = map_slice(&items, |x| x * 2);
        assert_eq!(doubled, (0..100).map(|x| x * 2).collect::<Vec<_>>());
        let seq = sequential(|| map_slice(&items, |x| x * 2));
        assert_eq!(seq, doubled);
    }

    #[test]
    fn sequential_flag_restores() {
        assert!(!is_sequential());
        sequential(|| {
            assert!(is_sequential());
            sequential(|| assert!(is_sequential()));
            assert!(is_sequential());
        });
        assert!(!is_sequential());
    }
}
