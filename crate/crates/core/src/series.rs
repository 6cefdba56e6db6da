//! Truncated formal power series over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// `log f` truncated to the length of `f`. Requires `f[0] == 1`.
///
/// Uses `g' = f' / f`, i.e. `g_n = f_n - (1/n) sum_{k<n} k g_k f_{n-k}`.
pub fn log(f: &[BigRational]) -> Vec<BigRational> {
    assert!(
        f.first().is_some_and(One::is_one),
        "series logarithm needs constant term 1"
    );
    let mut g = vec![BigRational::zero(); f.len()];
    for n in 1..f.len() {
        let mut acc = BigRational::zero();
        for k in 1..n {
            acc += BigRational::from_integer(k.into()) * &g[k] * &f[n - k];
        }
        g[n] = &f[n] - acc / BigRational::from_integer(n.into());
    }
    g
}

/// `exp g` truncated to the length of `g`. Requires `g[0] == 0`.
pub fn exp(g: &[BigRational]) -> Vec<BigRational> {
    assert!(
        g.first().is_none_or(Zero::is_zero),
        "series exponential needs constant term 0"
    );
    let mut h = vec![BigRational::zero(); g.len()];
    if let Some(first) = h.first_mut() {
        *first = BigRational::one();
    }
    for n in 1..g.len() {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += BigRational::from_integer(k.into()) * &g[k] * &h[n - k];
        }
        h[n] = acc / BigRational::from_integer(n.into());
    }
    h
}
