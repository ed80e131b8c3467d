//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over the rayon pool; without it everything runs on the calling thread.

/// How a batch of independent jobs is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// Parallel when the `parallel` feature is enabled.
    #[default]
    Auto,
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Auto
    }
}

/// `items.map(f)`, order preserved.
pub fn map<T, U, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        let v: Vec<usize> = (0..100).collect();
        let a = map(Execution::Auto, v.clone(), |x| x * x);
        let b = map(Execution::Sequential, v, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(a[7], 49);
    }
}
