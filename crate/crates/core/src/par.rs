//! Data-parallel helpers. With the `parallel` feature the maps run on the
//! rayon pool; without it they fall back to plain iterators. Output order
//! always matches input order, so callers get deterministic results either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

pub fn flat_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    map(items, f).into_iter().flatten().collect()
}

/// First element (by position) satisfying `pred`.
pub fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_first(|x| pred(x))
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find(|x| pred(x))
    }
}

pub fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().all(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().all(pred)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_keeps_order() {
        let xs: Vec<u32> = (0..100).collect();
        assert_eq!(map(&xs, |x| x * 2), map_seq(&xs, |x| x * 2));
    }

    #[test]
    fn find_first_is_positional() {
        let xs = [5, 3, 8, 3, 1];
        assert_eq!(find_first(&xs, |&x| x < 4), Some(&3));
        assert_eq!(find_first(&xs, |&x| x > 10), None);
    }
}
