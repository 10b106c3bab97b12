//! Small numeric helpers that `core` does not provide.

use core::f64::consts::TAU;

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_angle(angle: f64) -> f64 {
    let r = angle % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    // `r + TAU` can round up to exactly TAU for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `⌈log₂ x⌉` for `x ≥ 1`; zero for `x ≤ 1`.
pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Binary-reflected Gray code of `i`.
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Number of divisors of `n` (σ₀).
pub fn sigma0(n: usize) -> usize {
    (1..=n).filter(|j| n.is_multiple_of(*j)).count()
}

/// Divisors `j` of `n` with `1 ≤ j < n`, ascending.
pub fn proper_divisors(n: usize) -> alloc::vec::Vec<usize> {
    (1..n).filter(|j| n.is_multiple_of(*j)).collect()
}

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_small_values() {
        let expected = [0, 0, 1, 2, 2, 3, 3, 3, 3, 4];
        for (x, &e) in expected.iter().enumerate() {
            assert_eq!(ceil_log2(x), e, "x = {x}");
        }
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(0.0), 0.0);
        assert!((wrap_angle(-core::f64::consts::PI) - core::f64::consts::PI).abs() < 1e-15);
        assert_eq!(wrap_angle(TAU), 0.0);
        assert!(wrap_angle(-1e-300) < TAU);
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(sigma0(16), 5);
        assert_eq!(proper_divisors(16), [1, 2, 4, 8]);
        assert_eq!(sigma0(17), 2);
        assert_eq!(proper_divisors(17), [1]);
        assert_eq!(sigma0(1), 1);
        assert!(proper_divisors(1).is_empty());
    }

    #[test]
    fn gray_neighbours_differ_in_one_bit() {
        for i in 0..255u64 {
            assert_eq!((gray(i) ^ gray(i + 1)).count_ones(), 1);
        }
    }
}
