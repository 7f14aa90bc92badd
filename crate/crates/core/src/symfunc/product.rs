//! Products in the monomial basis.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::{rat_from_uint, MonomialExpansion};
use crate::combinatorics::{distinct_permutations, orbit_size, Partition};

/// `m_μ · m_ν` in at most `max_parts` variables (`None`: stable product).
///
/// Fixes `μ` padded to `L = ℓ(μ) + ℓ(ν)` slots and adds every distinct
/// arrangement `b` of `ν`. Summing over the orbit of `μ` instead multiplies
/// each count by `|orbit(μ)|`, and spreads it evenly over the orbit of the
/// target, which gives the coefficient of a single monomial.
pub fn monomial_product(
    mu: &Partition,
    nu: &Partition,
    max_parts: Option<usize>,
) -> BTreeMap<Partition, BigRational> {
    let slots = max_parts.map_or(mu.len() + nu.len(), |n| n.min(mu.len() + nu.len()));
    let mut out = BTreeMap::new();
    let (Ok(base), Ok(other)) = (mu.padded(slots), nu.padded(slots)) else {
        return out;
    };
    let mut counts: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for b in distinct_permutations(&other) {
        let sum: Vec<usize> = base.iter().zip(&b).map(|(x, y)| x + y).collect();
        *counts.entry(Partition::from_unsorted(sum)).or_default() += 1u32;
    }
    let mu_orbit = orbit_size(mu, slots).expect("fits in slots");
    for (lambda, count) in counts {
        let target_orbit = orbit_size(&lambda, slots).expect("fits in slots");
        let c = count * &mu_orbit / target_orbit;
        out.insert(lambda, rat_from_uint(c));
    }
    out
}

/// Exact product of two symmetric functions in the monomial basis.
pub fn expand_product(f: &MonomialExpansion, g: &MonomialExpansion) -> MonomialExpansion {
    expand_product_in(f, g, None)
}

/// As [`expand_product`], restricted to `max_parts` variables.
pub fn expand_product_in(
    f: &MonomialExpansion,
    g: &MonomialExpansion,
    max_parts: Option<usize>,
) -> MonomialExpansion {
    let mut out = MonomialExpansion::zero(f.degree() + g.degree());
    for (mu, a) in f.terms() {
        for (nu, b) in g.terms() {
            let ab = a * b;
            for (lambda, c) in monomial_product(mu, nu, max_parts) {
                out.add_term(lambda, c * &ab);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{evaluate_exact, jack_monomial_expansion, rat, JackParameter};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn square_of_m1() {
        let m1 = MonomialExpansion::single(p(&[1]), rat(1));
        assert_eq!(
            expand_product(&m1, &m1),
            MonomialExpansion::from_terms(2, [(p(&[2]), rat(1)), (p(&[1, 1]), rat(2))]).unwrap()
        );
    }

    #[test]
    fn one_is_the_identity() {
        let f = jack_monomial_expansion(&p(&[2, 1]), &JackParameter::zonal());
        assert_eq!(expand_product(&f, &MonomialExpansion::one()), f);
        assert_eq!(expand_product(&MonomialExpansion::one(), &f), f);
    }

    #[test]
    fn known_monomial_products() {
        // m_2 · m_11 = m_31 + m_211
        let m2 = MonomialExpansion::single(p(&[2]), rat(1));
        let m11 = MonomialExpansion::single(p(&[1, 1]), rat(1));
        let prod = expand_product(&m2, &m11);
        assert_eq!(prod.coeff(&p(&[3, 1])), rat(1));
        assert_eq!(prod.coeff(&p(&[2, 1, 1])), rat(1));
        assert_eq!(prod.len(), 2);
        let sq = expand_product(&m11, &m11);
        // m_11² = m_22 + 2 m_211 + 6 m_1111
        assert_eq!(sq.coeff(&p(&[2, 2])), rat(1));
        assert_eq!(sq.coeff(&p(&[2, 1, 1])), rat(2));
        assert_eq!(sq.coeff(&p(&[1, 1, 1, 1])), rat(6));
    }

    #[test]
    fn product_is_a_ring_homomorphism_at_a_point() {
        let alpha = JackParameter::zonal();
        let x: Vec<BigRational> = [1, 2, 3].iter().map(|&v| rat(v)).collect();
        let f = jack_monomial_expansion(&p(&[2, 1]), &alpha);
        let g = jack_monomial_expansion(&p(&[2, 2]), &alpha);
        let fg = expand_product(&f, &g);
        assert_eq!(
            evaluate_exact(&fg, &x),
            evaluate_exact(&f, &x) * evaluate_exact(&g, &x)
        );
    }

    #[test]
    fn restricted_product_is_restriction_of_product() {
        let alpha = JackParameter::zonal();
        let f = jack_monomial_expansion(&p(&[2, 1]), &alpha);
        let g = jack_monomial_expansion(&p(&[1, 1, 1]), &alpha);
        let full = expand_product(&f, &g);
        for n in 1..=4 {
            assert_eq!(
                expand_product_in(&f.restricted(n), &g.restricted(n), Some(n)),
                full.restricted(n)
            );
        }
    }
}
