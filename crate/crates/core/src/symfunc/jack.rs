//! Jack polynomials via the eigenoperator recurrence.
//!
//! `J_λ` is an eigenfunction of the Laplace–Beltrami type operator
//! `D(α) = (α/2) Σ x_i² ∂_i² + Σ_{i≠j} x_i² / (x_i − x_j) ∂_i`. Writing
//! `J_λ = Σ_{μ ⊴ λ} c_μ m_μ`, comparing coefficients gives
//!
//! ```text
//! c_μ = 2 / (ρ(λ) − ρ(μ)) · Σ (μ_i − μ_j + 2t) · c_ν,
//! ρ(κ) = Σ_i κ_i (α (κ_i − 1) − 2 (i − 1)),
//! ```
//!
//! summed over positions `i < j` and `1 ≤ t ≤ μ_j`, where `ν` is `μ` with
//! `μ_i += t`, `μ_j −= t`, re-sorted. Every such `ν` strictly dominates `μ`,
//! so walking partitions in decreasing lexicographic order only ever reads
//! coefficients that are already known. Raising never adds parts, so the
//! recurrence closes on partitions with at most `n` parts and can be run
//! directly in `n` variables.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, JackParameter, MonomialExpansion};
use crate::combinatorics::{dominance_leq, partitions_of, Partition};

/// `J_λ^(α)` in the monomial basis, in all variables.
pub fn jack_monomial_expansion(lambda: &Partition, alpha: &JackParameter) -> MonomialExpansion {
    jack_expansion_in(lambda, alpha, None)
}

/// `J_λ^(α)` restricted to `max_parts` variables (`None` for the stable
/// expansion). A partition longer than `max_parts` gives zero.
pub fn jack_expansion_in(
    lambda: &Partition,
    alpha: &JackParameter,
    max_parts: Option<usize>,
) -> MonomialExpansion {
    let n = lambda.weight();
    let cap = max_parts.unwrap_or(n).min(n.max(1));
    if lambda.len() > cap {
        return MonomialExpansion::zero(n);
    }
    if lambda.is_empty() {
        return MonomialExpansion::one();
    }

    let a = alpha.value();
    let rho_lambda = rho(lambda, a);
    let mut coeffs: HashMap<Partition, BigRational> = HashMap::new();
    coeffs.insert(lambda.clone(), BigRational::one());

    let below = partitions_of(n, cap)
        .into_iter()
        .skip_while(|mu| mu != lambda)
        .skip(1)
        .filter(|mu| dominance_leq(mu, lambda).expect("same weight"));

    for mu in below {
        let parts = mu.parts();
        let mut acc = BigRational::zero();
        for j in 1..parts.len() {
            for i in 0..j {
                for t in 1..=parts[j] {
                    let mut raised = parts.to_vec();
                    raised[i] += t;
                    raised[j] -= t;
                    let nu = Partition::from_unsorted(raised);
                    if let Some(c) = coeffs.get(&nu) {
                        let w = (parts[i] + 2 * t - parts[j]) as i64;
                        acc += c * rat(w);
                    }
                }
            }
        }
        let c = acc * rat(2) / (&rho_lambda - rho(&mu, a));
        if !c.is_zero() {
            coeffs.insert(mu, c);
        }
    }

    let scale = hook_product(lambda, alpha);
    MonomialExpansion::from_terms(n, coeffs.into_iter().map(|(p, c)| (p, c * &scale)))
        .expect("all partitions have weight n")
}

fn rho(kappa: &Partition, alpha: &BigRational) -> BigRational {
    kappa
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &k)| rat(k as i64) * (alpha * rat(k as i64 - 1) - rat(2 * i as i64)))
        .sum()
}

/// `Π_{s ∈ λ} (α·arm(s) + leg(s) + 1)`: the coefficient of `m_λ` in `J_λ`.
pub fn hook_product(lambda: &Partition, alpha: &JackParameter) -> BigRational {
    let conj = lambda.conjugate();
    let mut out = BigRational::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            out *= alpha.value() * rat(arm as i64) + rat(leg as i64 + 1);
        }
    }
    out
}

/// All Jack polynomials of one degree, built once and then read-only.
#[derive(Debug, Clone)]
pub struct JackBasis {
    alpha: JackParameter,
    degree: usize,
    max_parts: Option<usize>,
    table: BTreeMap<Partition, MonomialExpansion>,
}

impl JackBasis {
    pub fn new(degree: usize, alpha: JackParameter, max_parts: Option<usize>) -> Self {
        let cap = max_parts.unwrap_or(degree).max(1);
        let table = partitions_of(degree, cap)
            .into_iter()
            .map(|lambda| {
                let j = jack_expansion_in(&lambda, &alpha, max_parts);
                (lambda, j)
            })
            .collect();
        Self {
            alpha,
            degree,
            max_parts,
            table,
        }
    }

    pub fn alpha(&self) -> &JackParameter {
        &self.alpha
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn max_parts(&self) -> Option<usize> {
        self.max_parts
    }

    pub fn get(&self, lambda: &Partition) -> Option<&MonomialExpansion> {
        self.table.get(lambda)
    }

    /// Entries from the dominance-largest partition down.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &MonomialExpansion)> {
        self.table.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::factorial;
    use crate::symfunc::rat_from_uint;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn zonal(parts: &[usize]) -> MonomialExpansion {
        jack_monomial_expansion(&p(parts), &JackParameter::zonal())
    }

    #[test]
    fn small_zonal_tables() {
        assert_eq!(zonal(&[1]), MonomialExpansion::single(p(&[1]), rat(1)));
        assert_eq!(
            zonal(&[2]),
            MonomialExpansion::from_terms(2, [(p(&[2]), rat(3)), (p(&[1, 1]), rat(2))]).unwrap()
        );
        assert_eq!(
            zonal(&[1, 1]),
            MonomialExpansion::single(p(&[1, 1]), rat(2))
        );
        assert_eq!(
            zonal(&[3]),
            MonomialExpansion::from_terms(
                3,
                [
                    (p(&[3]), rat(15)),
                    (p(&[2, 1]), rat(9)),
                    (p(&[1, 1, 1]), rat(6))
                ]
            )
            .unwrap()
        );
    }

    #[test]
    fn empty_partition_is_one() {
        assert_eq!(zonal(&[]), MonomialExpansion::one());
    }

    #[test]
    fn general_alpha_two_row() {
        // J_(2) = (1 + α) m_2 + 2 m_11
        let alpha = JackParameter::new(BigRational::new(3.into(), 7.into())).unwrap();
        let j = jack_monomial_expansion(&p(&[2]), &alpha);
        assert_eq!(j.coeff(&p(&[2])), rat(1) + alpha.value());
        assert_eq!(j.coeff(&p(&[1, 1])), rat(2));
    }

    #[test]
    fn restriction_commutes_with_recurrence() {
        let alpha = JackParameter::zonal();
        for lambda in partitions_of(7, 7) {
            let full = jack_monomial_expansion(&lambda, &alpha);
            for n in 1..=4 {
                assert_eq!(
                    jack_expansion_in(&lambda, &alpha, Some(n)),
                    full.restricted(n)
                );
            }
        }
    }

    #[test]
    fn normalization_and_triangularity() {
        for alpha in [JackParameter::zonal(), JackParameter::schur()] {
            for n in 1..=8 {
                let nfact = rat_from_uint(factorial(n));
                let ones = p(&vec![1; n]);
                for lambda in partitions_of(n, n) {
                    let j = jack_monomial_expansion(&lambda, &alpha);
                    assert_eq!(j.coeff(&ones), nfact, "{lambda}");
                    assert_eq!(j.leading().unwrap().0, &lambda);
                    let keys: Vec<_> = j.partitions().cloned().collect();
                    let expected: Vec<_> = partitions_of(n, n)
                        .into_iter()
                        .filter(|mu| dominance_leq(mu, &lambda).unwrap())
                        .collect();
                    assert_eq!(keys, expected);
                }
            }
        }
    }

    #[test]
    fn basis_is_indexed_by_partitions() {
        let b = JackBasis::new(5, JackParameter::zonal(), Some(2));
        assert_eq!(b.len(), 3);
        assert_eq!(b.get(&p(&[3, 2])), Some(&zonal(&[3, 2]).restricted(2)));
        assert!(b.get(&p(&[3, 1, 1])).is_none());
    }
}
