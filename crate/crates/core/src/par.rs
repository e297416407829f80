//! Ordered maps over independent work items, data-parallel when the
//! `parallel` feature is on.

/// Applies `f` to every item in order on the current thread.
pub fn run_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Applies `f` to every item on the rayon pool; results keep input order.
#[cfg(feature = "parallel")]
pub fn run_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// [`run_parallel`] when built with `parallel`, else [`run_sequential`].
pub fn run<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        run_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sequential(items, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..100).collect();
        let seq = run_sequential(&items, |x| x * x);
        assert_eq!(run(&items, |x| x * x), seq);
    }
}
