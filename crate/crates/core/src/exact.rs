//! Exact rational versions of the symbol coefficients.
//!
//! `a^P`, `a^Q`, `(a^W)^2` and `K` are all rational for half-integer `j`,
//! so their identities can be checked with zero error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `prod_{k=1..l} (2j - k + 1)/2`.
pub fn a_q(two_j: u32, l: u32) -> BigRational {
    (1..=l as i64).fold(BigRational::one(), |acc, k| acc * int(two_j as i64 - k + 1) / int(2))
}

/// `prod_{k=1..l} (2j + k + 1)/2`.
pub fn a_p(two_j: u32, l: u32) -> BigRational {
    (1..=l as i64).fold(BigRational::one(), |acc, k| acc * int(two_j as i64 + k + 1) / int(2))
}

/// `(a^W)^2 = prod_{k=1..l} ((2j+1)^2 - k^2)/4`, clamped to zero for `l > 2j`.
pub fn a_w_squared(two_j: u32, l: u32) -> BigRational {
    if l > two_j {
        return BigRational::zero();
    }
    let d = two_j as i64 + 1;
    (1..=l as i64).fold(BigRational::one(), |acc, k| acc * int(d * d - k * k) / int(4))
}

/// `K = (2l+1) [(2j)!]^2 / ((2j-l)! (2j+l+1)!)`, `l <= 2j`.
pub fn k(two_j: u32, l: u32) -> Option<BigRational> {
    if l > two_j {
        return None;
    }
    let (n, l) = (two_j as i64, l as i64);
    let num = BigInt::from(2 * l + 1) * factorial(n) * factorial(n);
    let den = factorial(n - l) * factorial(n + l + 1);
    Some(BigRational::new(num, den))
}

/// `a^Q == (2j+1)/(2l+1) K a^P`, evaluated exactly.
pub fn pq_identity_holds(two_j: u32, l: u32) -> bool {
    let Some(k) = k(two_j, l) else { return false };
    a_q(two_j, l) == int(two_j as i64 + 1) / int(2 * l as i64 + 1) * k * a_p(two_j, l)
}

/// `(a^W)^2 == a^P a^Q`, evaluated exactly.
pub fn weyl_identity_holds(two_j: u32, l: u32) -> bool {
    a_w_squared(two_j, l) == a_p(two_j, l) * a_q(two_j, l)
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_half_values() {
        assert_eq!(a_q(1, 1), int(1) / int(2));
        assert_eq!(a_p(1, 1), int(3) / int(2));
        assert_eq!(k(1, 1).unwrap(), int(1) / int(2));
        assert_eq!(k(6, 0).unwrap(), int(1) / int(7));
        assert!(k(2, 3).is_none());
    }

    #[test]
    fn identities_hold_exactly() {
        for two_j in 0..=40 {
            for l in 0..=two_j {
                assert!(pq_identity_holds(two_j, l), "2j={two_j} l={l}");
                assert!(weyl_identity_holds(two_j, l), "2j={two_j} l={l}");
            }
        }
    }

    #[test]
    fn q_matches_factorial_form() {
        // a^Q = (2j)! / (2^l (2j-l)!)
        for two_j in 0..=20u32 {
            for l in 0..=two_j {
                let f = BigRational::new(
                    factorial(two_j as i64),
                    factorial((two_j - l) as i64) * BigInt::from(2).pow(l),
                );
                assert_eq!(a_q(two_j, l), f);
            }
            assert!(a_q(two_j, two_j + 1).is_zero());
        }
    }
}
