use super::rational::Rational;
use super::upoly::UPoly;

/// Coefficients of the n-th cyclotomic polynomial, low degree first.
///
/// Computed as `(t^n - 1) / prod_{d | n, d < n} Phi_d` with exact division.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Rational> {
    cyclotomic_upoly(n).into_coeffs()
}

pub(crate) fn cyclotomic_upoly(n: u32) -> UPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = UPoly::monomial(Rational::one(), n as usize);
    num = num.sub(&UPoly::constant(Rational::one()));
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = num.div_rem(&cyclotomic_upoly(d)).expect("cyclotomic divisor is nonzero");
        debug_assert!(r.is_zero());
        num = q;
    }
    num
}

/// Euler's totient, i.e. the degree of `Phi_n`.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn primes_are_all_ones() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            assert_eq!(cyclotomic_polynomial(p), vec![Rational::one(); p as usize]);
        }
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, totient(n), "n = {n}");
        }
    }
}
