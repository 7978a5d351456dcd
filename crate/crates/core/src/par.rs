//! Dispatch between rayon and plain loops for the enumeration kernels.
//!
//! Every reduction here is over exact field arithmetic with commutative,
//! associative combination, so partitioning cannot change the result.

/// Fold `f` over `0..count` and combine with `merge`, in parallel when the
/// `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub(crate) fn reduce_indexed<T, F, M>(count: u64, identity: impl Fn() -> T + Sync, f: F, merge: M) -> T
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count)
        .into_par_iter()
        .map(f)
        .reduce(&identity, &merge)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn reduce_indexed<T, F, M>(count: u64, identity: impl Fn() -> T, f: F, merge: M) -> T
where
    F: Fn(u64) -> T,
    M: Fn(T, T) -> T,
{
    let mut acc = identity();
    for i in 0..count {
        acc = merge(acc, f(i));
    }
    acc
}

/// Always-sequential variant: the reference path for tests and benches.
pub(crate) fn reduce_indexed_seq<T, F, M>(count: u64, identity: impl Fn() -> T, f: F, merge: M) -> T
where
    F: Fn(u64) -> T,
    M: Fn(T, T) -> T,
{
    let mut acc = identity();
    for i in 0..count {
        acc = merge(acc, f(i));
    }
    acc
}
