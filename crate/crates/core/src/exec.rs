//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! pool; without it every call runs on the current thread. Results are
//! always returned in input order and reductions are only applied to
//! operations whose result does not depend on grouping, so both strategies
//! produce identical output.

use crate::kernel::Fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Strategy {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Strategy::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
        }
    }

    /// Sum of fractions; the result is canonical, so grouping is irrelevant.
    pub fn tree_sum(self, parts: Vec<Fraction>) -> Fraction {
        match self {
            Strategy::Sequential => Fraction::sum(&parts),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                parts
                    .into_par_iter()
                    .reduce(Fraction::zero, |a, b| a.add(&b))
            }
        }
    }

    /// `prod_{lo <= j < hi, j % skip != 0} j  (mod modulus)`.
    pub fn product_mod(self, lo: u64, hi: u64, skip: u64, modulus: u64) -> u64 {
        let chunk = |a: u64, b: u64| -> u64 {
            let mut acc: u128 = 1 % modulus as u128;
            for j in a..b {
                if j % skip != 0 {
                    acc = acc * (j as u128 % modulus as u128) % modulus as u128;
                }
            }
            acc as u64
        };
        match self {
            Strategy::Sequential => chunk(lo, hi),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                const BLOCK: u64 = 1 << 16;
                if hi <= lo {
                    return 1 % modulus;
                }
                let blocks = (hi - lo).div_ceil(BLOCK);
                (0..blocks)
                    .into_par_iter()
                    .map(|b| chunk(lo + b * BLOCK, (lo + (b + 1) * BLOCK).min(hi)))
                    .reduce(
                        || 1 % modulus,
                        |a, b| ((a as u128 * b as u128) % modulus as u128) as u64,
                    )
            }
        }
    }
}

/// Runs `f` on a pool of `jobs` threads, or on the global pool when `None`.
pub fn with_jobs<R, F>(jobs: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(j) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
        {
            return pool.install(f);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let seq = Strategy::Sequential.product_mod(1, 300_000, 7, 7u64.pow(6));
        let def = Strategy::default().product_mod(1, 300_000, 7, 7u64.pow(6));
        assert_eq!(seq, def);
        let xs: Vec<u32> = (0..100).collect();
        assert_eq!(
            Strategy::Sequential.map(&xs, |x| x * 3),
            Strategy::default().map(&xs, |x| x * 3)
        );
    }
}
