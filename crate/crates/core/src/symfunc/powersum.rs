//! Power-sum basis and the Jack scalar product
//! `⟨p_λ, p_μ⟩ = δ_{λμ} z_λ α^{ℓ(λ)}`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, rat_from_uint, JackParameter, MonomialExpansion, PowerSumExpansion};
use crate::combinatorics::{factorial, partitions_of, Partition};
use crate::error::{Error, Result};

/// `p_μ` in the monomial basis. The coefficient of `m_λ` counts the maps
/// from the parts of `μ` to the rows of `λ` whose fibres sum to the rows.
pub fn powersum_in_monomials(mu: &Partition) -> MonomialExpansion {
    let n = mu.weight();
    let mut out = MonomialExpansion::zero(n);
    for lambda in partitions_of(n, mu.len().max(1)) {
        let mut room = lambda.parts().to_vec();
        let count = count_fillings(mu.parts(), &mut room);
        if count > 0 {
            out.add_term(lambda, rat(count as i64));
        }
    }
    out
}

fn count_fillings(parts: &[usize], room: &mut [usize]) -> u64 {
    let Some((&first, rest)) = parts.split_first() else {
        return u64::from(room.iter().all(|&r| r == 0));
    };
    let mut total = 0;
    for j in 0..room.len() {
        if room[j] >= first {
            room[j] -= first;
            total += count_fillings(rest, room);
            room[j] += first;
        }
    }
    total
}

/// `z_λ = Π_i i^{m_i} m_i!`.
pub fn z_factor(lambda: &Partition) -> BigUint {
    let mut out = BigUint::one();
    let parts = lambda.parts();
    let mut i = 0;
    while i < parts.len() {
        let m = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
        out *= BigUint::from(parts[i]).pow(m as u32) * factorial(m);
        i += m;
    }
    out
}

/// Transition tables between monomials and power sums in one degree.
#[derive(Debug, Clone)]
pub struct PowerSumBasis {
    degree: usize,
    p_to_m: BTreeMap<Partition, MonomialExpansion>,
    m_to_p: BTreeMap<Partition, PowerSumExpansion>,
}

impl PowerSumBasis {
    pub fn new(degree: usize) -> Self {
        let parts = partitions_of(degree, degree.max(1));
        let p_to_m: BTreeMap<_, _> = parts
            .iter()
            .map(|mu| (mu.clone(), powersum_in_monomials(mu)))
            .collect();

        // p_λ = R_λλ m_λ + Σ_{ν ▷ λ} R_λν m_ν; solve from the top of the order.
        let mut m_to_p: BTreeMap<Partition, PowerSumExpansion> = BTreeMap::new();
        for lambda in &parts {
            let row = &p_to_m[lambda];
            let mut acc = PowerSumExpansion::single(lambda.clone(), BigRational::one());
            for (nu, r) in row.terms() {
                if nu != lambda {
                    acc.add_scaled(&m_to_p[nu], &-r);
                }
            }
            let diag = row.coeff(lambda);
            m_to_p.insert(lambda.clone(), acc.scaled(&diag.recip()));
        }
        Self {
            degree,
            p_to_m,
            m_to_p,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn to_powersum(&self, f: &MonomialExpansion) -> Result<PowerSumExpansion> {
        self.check(f.degree())?;
        let mut out = PowerSumExpansion::zero(self.degree);
        for (lambda, c) in f.terms() {
            out.add_scaled(&self.m_to_p[lambda], c);
        }
        Ok(out)
    }

    pub fn to_monomial(&self, f: &PowerSumExpansion) -> Result<MonomialExpansion> {
        self.check(f.degree())?;
        let mut out = MonomialExpansion::zero(self.degree);
        for (mu, c) in f.terms() {
            out.add_scaled(&self.p_to_m[mu], c);
        }
        Ok(out)
    }

    fn check(&self, degree: usize) -> Result<()> {
        if degree != self.degree {
            return Err(Error::WeightMismatch {
                expected: self.degree,
                actual: degree,
            });
        }
        Ok(())
    }
}

pub fn monomial_to_powersum(f: &MonomialExpansion) -> PowerSumExpansion {
    PowerSumBasis::new(f.degree())
        .to_powersum(f)
        .expect("basis built for this degree")
}

pub fn powersum_to_monomial(f: &PowerSumExpansion) -> MonomialExpansion {
    PowerSumBasis::new(f.degree())
        .to_monomial(f)
        .expect("basis built for this degree")
}

pub fn jack_inner_product(
    f: &PowerSumExpansion,
    g: &PowerSumExpansion,
    alpha: &JackParameter,
) -> Result<BigRational> {
    if f.degree() != g.degree() {
        return Err(Error::WeightMismatch {
            expected: f.degree(),
            actual: g.degree(),
        });
    }
    let mut acc = BigRational::zero();
    for (lambda, a) in f.terms() {
        if let Some(b) = g.get(lambda) {
            let weight = rat_from_uint(z_factor(lambda)) * alpha.value().pow(lambda.len() as i32);
            acc += a * b * weight;
        }
    }
    Ok(acc)
}
