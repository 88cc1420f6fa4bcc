//! Finite products behind the chi-factor decomposition.

/// Wallis partial product `∏_{n ≤ N} (2n)² / ((2n − 1)(2n + 1))`, which
/// increases to π/2.
pub fn wallis_partial(n_terms: usize) -> f64 {
    (1..=n_terms)
        .map(|n| {
            let m = n as f64;
            // (2n)²/((2n−1)(2n+1)) = 1 + 1/(4n² − 1)
            1.0 + 1.0 / (4.0 * m * m - 1.0)
        })
        .product()
}

/// Literal product `∏_{n ≤ N} (2n + 1) n / ((2n − 1)(n + 1))`.
pub fn telescoping_partial(n_terms: usize) -> f64 {
    (1..=n_terms)
        .map(|n| {
            let m = n as f64;
            (2.0 * m + 1.0) * m / ((2.0 * m - 1.0) * (m + 1.0))
        })
        .product()
}

/// Closed form `(2N + 1) / (N + 1)` of [`telescoping_partial`].
pub fn telescoping_closed_form(n_terms: usize) -> f64 {
    let m = n_terms as f64;
    (2.0 * m + 1.0) / (m + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn wallis_small_cases() {
        assert!((wallis_partial(1) - 4.0 / 3.0).abs() < 1e-15);
        assert!((wallis_partial(2) - 64.0 / 45.0).abs() < 1e-15);
        assert_eq!(wallis_partial(0), 1.0);
    }

    #[test]
    fn wallis_converges_to_half_pi() {
        let w = wallis_partial(1_000_000);
        assert!(w < FRAC_PI_2);
        assert!(FRAC_PI_2 - w < 1e-6);
    }

    #[test]
    fn wallis_strictly_increasing() {
        let mut prev = wallis_partial(1);
        for n in 2..2000 {
            let next = wallis_partial(n);
            assert!(next > prev);
            prev = next;
        }
    }

    #[test]
    fn telescoping_matches_closed_form() {
        assert!((telescoping_partial(1) - 1.5).abs() < 1e-15);
        assert!((telescoping_partial(3) - 1.75).abs() < 1e-15);
        for n in [1, 2, 5, 17, 100, 10_000, 1_000_000] {
            let lit = telescoping_partial(n);
            let closed = telescoping_closed_form(n);
            assert!(((lit - closed) / closed).abs() < 1e-14 * (n as f64).sqrt().max(1.0), "{n}");
            assert!(lit < 2.0);
        }
        assert!(2.0 - telescoping_closed_form(10_000_000) < 1e-6);
    }
}
