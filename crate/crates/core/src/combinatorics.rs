//! Overflow-safe binomials and factorial ratios.

/// Largest `n` for which [`binomial`] uses exact integer arithmetic.
pub const EXACT_BINOMIAL_MAX: u32 = 60;

/// `C(n, k)` as an exact integer, valid for `n <= 60`.
pub fn binomial_exact(n: u32, k: u32) -> Option<u128> {
    if k > n || n > EXACT_BINOMIAL_MAX {
        return None;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1)
        acc = acc * (n - i) / (i + 1);
    }
    Some(acc)
}

/// `C(n, k)` in floating point. Exact integers below the cutoff, a
/// multiplicative recurrence above it.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    if let Some(exact) = binomial_exact(n, k) {
        return exact as f64;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn factorial_exact(n: u32) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// `sqrt((l+m)! (l-m)!) / l!`, the factorial prefactor linking the
/// generating-function coefficients to normalized harmonics.
pub fn harmonic_prefactor(l: u32, m: i32) -> f64 {
    let hi = (l as i64 + m as i64) as u32;
    let lo = (l as i64 - m as i64) as u32;
    if hi.max(lo) <= 20 {
        let f = |n| factorial_exact(n).expect("20! fits in u64") as f64;
        f(hi).sqrt() * f(lo).sqrt() / f(l)
    } else {
        (0.5 * (ln_factorial(hi) + ln_factorial(lo)) - ln_factorial(l)).exp()
    }
}
