//! Thin execution-strategy layer: data-parallel loops via rayon when the
//! `parallel` feature is on, plain sequential iteration otherwise. All
//! helpers preserve input order, so reports and golden outputs are identical
//! under both strategies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Threshold below which parallel dispatch is not worth the overhead.
const MIN_PAR_LEN: usize = 8;

/// Maps `f` over `0..len`, in parallel for large `len`.
pub fn map_indexed<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if len >= MIN_PAR_LEN {
            return (0..len).into_par_iter().map(f).collect();
        }
    }
    (0..len).map(f).collect()
}

/// Maps `f` over owned items, preserving order.
pub fn map_items<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() >= MIN_PAR_LEN {
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let squares = map_indexed(100, |i| i * i);
        assert_eq!(squares[7], 49);
        assert_eq!(squares.len(), 100);
        let doubled = map_items((0..50).collect::<Vec<_>>(), |x| 2 * x);
        assert_eq!(doubled, (0..50).map(|x| 2 * x).collect::<Vec<_>>());
    }
}
