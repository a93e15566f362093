//! Integer helpers for square-root radicands.

use num_integer::Integer;

/// Splits `n` into `factor² · core` with `core` squarefree.
///
/// # Panics
/// Panics if `n == 0`.
pub fn normalize_radical(n: u64) -> (u64, u64) {
    assert!(n >= 1, "radicand must be positive");
    let mut rest = n;
    let mut factor = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        factor *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // whatever is left is a prime appearing once
    core *= rest;
    (factor, core)
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && normalize_radical(n).0 == 1
}

/// `√a · √b = g · √core` for squarefree `a`, `b`; returns `(g, core)`.
///
/// `None` when the reduced radicand overflows `u64`.
pub(crate) fn multiply_radicands(a: u64, b: u64) -> Option<(u64, u64)> {
    let g = a.gcd(&b);
    let core = (a / g).checked_mul(b / g)?;
    Some((g, core))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_oracle(n: u64) -> (u64, u64) {
        // largest square dividing n, found by brute force
        let mut best = 1;
        let mut k = 1;
        while k * k <= n {
            if n.is_multiple_of(k * k) {
                best = k;
            }
            k += 1;
        }
        (best, n / (best * best))
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_radical(12), (2, 3));
        assert_eq!(normalize_radical(1), (1, 1));
        assert_eq!(normalize_radical(360), (6, 10));
    }

    #[test]
    fn normalize_matches_brute_force() {
        for n in 1..2000u64 {
            let (f, c) = normalize_radical(n);
            assert_eq!((f, c), trial_division_oracle(n), "n = {n}");
            assert!(is_squarefree(c));
        }
    }

    #[test]
    fn radicand_product() {
        assert_eq!(multiply_radicands(6, 10), Some((2, 15)));
        assert_eq!(multiply_radicands(3, 3), Some((3, 1)));
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }
}
