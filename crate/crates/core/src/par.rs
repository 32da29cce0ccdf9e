//! Execution strategy for the enumeration in [`crate::systems`].

/// How candidate trees are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    /// Rayon data parallelism; the first success in enumeration order wins,
    /// so results match [`Exec::Sequential`].
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Smallest `i < count` with `pred(i)`.
pub(crate) fn find_first<F>(exec: Exec, count: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec {
        Exec::Sequential => (0..count).find(|&i| pred(i)),
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().find_first(|&i| pred(i))
        }
    }
}
