//! Jack polynomials by Gram–Schmidt, used as an independent check on the
//! recurrence in [`super::jack`]. Cost grows with the square of the number of
//! partitions, so this is only meant for small degrees.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::powersum::{z_factor, PowerSumBasis};
use super::{rat_from_uint, JackParameter, MonomialExpansion};
use crate::combinatorics::{factorial, partitions_of, Partition};

/// Orthogonalizes the monomial basis of degree `n`, from `m_(1^n)` upward in
/// lexicographic order, under the α-scalar product, then rescales each result
/// so the coefficient of `m_(1^n)` is `n!`.
pub fn gram_schmidt_jack_oracle(
    n: usize,
    alpha: &JackParameter,
) -> BTreeMap<Partition, MonomialExpansion> {
    let parts: Vec<Partition> = partitions_of(n, n.max(1)).into_iter().rev().collect();
    let basis = PowerSumBasis::new(n);
    let gram = monomial_gram_matrix(&parts, &basis, alpha);
    let index = |p: &Partition| parts.iter().position(|q| q == p).expect("partition of n");

    let inner = |f: &MonomialExpansion, g: &MonomialExpansion| -> BigRational {
        let mut acc = BigRational::zero();
        for (a, fa) in f.terms() {
            let row = &gram[index(a)];
            for (b, gb) in g.terms() {
                acc += fa * gb * &row[index(b)];
            }
        }
        acc
    };

    let mut done: Vec<(MonomialExpansion, BigRational)> = Vec::with_capacity(parts.len());
    let mut out = BTreeMap::new();
    let ones = Partition::new(vec![1; n]).expect("weakly decreasing");
    let nfact = rat_from_uint(factorial(n));
    for lambda in &parts {
        let m = MonomialExpansion::single(lambda.clone(), BigRational::from_integer(1.into()));
        let mut p = m.clone();
        for (q, qq) in &done {
            let proj = inner(&m, q) / qq;
            p.add_scaled(q, &-proj);
        }
        let norm = inner(&p, &p);
        done.push((p.clone(), norm));
        let scale = &nfact / p.coeff(&ones);
        out.insert(lambda.clone(), p.scaled(&scale));
    }
    out
}

fn monomial_gram_matrix(
    parts: &[Partition],
    basis: &PowerSumBasis,
    alpha: &JackParameter,
) -> Vec<Vec<BigRational>> {
    let weights: BTreeMap<&Partition, BigRational> = parts
        .iter()
        .map(|rho| {
            let w = rat_from_uint(z_factor(rho)) * alpha.value().pow(rho.len() as i32);
            (rho, w)
        })
        .collect();
    let in_p: Vec<_> = parts
        .iter()
        .map(|mu| {
            basis
                .to_powersum(&MonomialExpansion::single(
                    mu.clone(),
                    BigRational::from_integer(1.into()),
                ))
                .expect("same degree")
        })
        .collect();
    in_p.iter()
        .map(|f| {
            in_p.iter()
                .map(|g| {
                    let mut acc = BigRational::zero();
                    for (rho, a) in f.terms() {
                        if let Some(b) = g.get(rho) {
                            acc += a * b * &weights[rho];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
