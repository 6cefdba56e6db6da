use num_bigint::{BigInt, BigUint};
use num_traits::One;

pub fn factorial(n: u32) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `a (a - 1) ... (a - m + 1)`, with the empty product 1.
pub fn falling_factorial(a: i64, m: u32) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, j| acc * (a - j))
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k as u64).fold(BigUint::one(), |acc, i| acc * (n as u64 - i) / (i + 1))
}
