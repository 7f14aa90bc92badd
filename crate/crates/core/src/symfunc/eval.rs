//! Evaluation of monomial expansions at points.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{rat_from_uint, MonomialExpansion};
use crate::combinatorics::{distinct_permutations, orbit_size, Partition};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(self) -> f64 {
        self.sum + self.carry
    }
}

/// `m_η(x_1, …, x_n)`; zero when `η` has more than `n` parts.
pub fn monomial_value(eta: &Partition, x: &[f64]) -> f64 {
    let Ok(padded) = eta.padded(x.len()) else {
        return 0.0;
    };
    let mut acc = CompensatedSum::default();
    for a in distinct_permutations(&padded) {
        acc.add(a.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product());
    }
    acc.total()
}

/// Floating-point value of `f` at `x`, with compensated summation over every
/// monomial in every orbit.
pub fn evaluate(f: &MonomialExpansion, x: &[f64]) -> f64 {
    let mut acc = CompensatedSum::default();
    for (eta, c) in f.terms() {
        let Ok(padded) = eta.padded(x.len()) else {
            continue;
        };
        let c = c.to_f64().unwrap_or(f64::NAN);
        for a in distinct_permutations(&padded) {
            let term: f64 = a.iter().zip(x).map(|(&e, &xi)| xi.powi(e as i32)).product();
            acc.add(c * term);
        }
    }
    acc.total()
}

/// Exact value of `f` at a rational point.
pub fn evaluate_exact(f: &MonomialExpansion, x: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (eta, c) in f.terms() {
        let Ok(padded) = eta.padded(x.len()) else {
            continue;
        };
        let mut m = BigRational::zero();
        for a in distinct_permutations(&padded) {
            m += a
                .iter()
                .zip(x)
                .fold(BigRational::one(), |acc, (&e, xi)| acc * xi.pow(e as i32));
        }
        acc += c * m;
    }
    acc
}

/// `f(1, …, 1)` in `n` variables, via orbit sizes.
pub fn evaluate_at_ones(f: &MonomialExpansion, n: usize) -> BigRational {
    f.terms()
        .filter_map(|(eta, c)| orbit_size(eta, n).ok().map(|o| c * rat_from_uint(o)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;
    use crate::symfunc::{jack_monomial_expansion, rat, JackParameter};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn zonal(parts: &[usize]) -> MonomialExpansion {
        jack_monomial_expansion(&p(parts), &JackParameter::zonal())
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(evaluate(&zonal(&[1]), &[1.0, 1.0, 1.0]), 3.0);
        assert_eq!(evaluate(&zonal(&[2]), &[1.0]), 3.0);
        assert_eq!(evaluate(&zonal(&[1, 1]), &[1.0]), 0.0);
        assert_eq!(evaluate_at_ones(&zonal(&[1]), 3), rat(3));
        // m_2(1,1) = 2, so 3·2 + 2·1
        assert_eq!(evaluate_at_ones(&zonal(&[2]), 2), rat(8));
        assert_eq!(evaluate_at_ones(&zonal(&[2]), 1), rat(3));
    }

    #[test]
    fn zero_padding_is_harmless() {
        let f = zonal(&[3, 1]);
        let x = [0.3, -1.2, 2.0];
        let y = [0.3, -1.2, 2.0, 0.0, 0.0];
        assert!((evaluate(&f, &x) - evaluate(&f, &y)).abs() < 1e-9);
        let xq: Vec<_> = [1, 2, 3].iter().map(|&v| rat(v)).collect();
        let yq: Vec<_> = [1, 2, 3, 0].iter().map(|&v| rat(v)).collect();
        assert_eq!(evaluate_exact(&f, &xq), evaluate_exact(&f, &yq));
    }

    #[test]
    fn ones_shortcut_matches_direct_evaluation() {
        for lambda in partitions_of(6, 6) {
            let f = zonal(lambda.parts());
            for n in 1..=4 {
                let ones = vec![rat(1); n];
                assert_eq!(evaluate_at_ones(&f, n), evaluate_exact(&f, &ones));
            }
        }
    }

    #[test]
    fn float_matches_exact() {
        let f = zonal(&[4, 2, 1]);
        let xq: Vec<_> = [1, 2, 3].iter().map(|&v| rat(v)).collect();
        let exact = evaluate_exact(&f, &xq).to_f64().unwrap();
        let approx = evaluate(&f, &[1.0, 2.0, 3.0]);
        assert!(((approx - exact) / exact).abs() < 1e-14);
        assert_eq!(monomial_value(&p(&[1, 1]), &[2.0, 3.0]), 6.0);
    }
}
