//! Symmetric functions over the rationals, indexed by partitions.
//!
//! Jack polynomials are kept in J-normalization: the coefficient of
//! `m_(1^N)` in `J_λ` is `N!`. At `α = 2` these are the zonal polynomials.

mod eval;
mod jack;
mod oracle;
mod powersum;
mod product;

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

pub use eval::{evaluate, evaluate_at_ones, evaluate_exact, monomial_value};
pub use jack::{hook_product, jack_expansion_in, jack_monomial_expansion, JackBasis};
pub use oracle::gram_schmidt_jack_oracle;
pub use powersum::{
    jack_inner_product, monomial_to_powersum, powersum_in_monomials, powersum_to_monomial,
    z_factor, PowerSumBasis,
};
pub use product::{expand_product, expand_product_in, monomial_product};

/// Basis marker for [`Expansion`].
pub trait Basis {
    const SYMBOL: char;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerSum;

/// The Jack (zonal, at α = 2) basis itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jack;

impl Basis for Monomial {
    const SYMBOL: char = 'm';
}

impl Basis for PowerSum {
    const SYMBOL: char = 'p';
}

impl Basis for Jack {
    const SYMBOL: char = 'J';
}

/// A homogeneous symmetric function of fixed degree written in basis `B`.
/// Zero coefficients are never stored.
pub struct Expansion<B> {
    degree: usize,
    coeffs: BTreeMap<Partition, BigRational>,
    _basis: PhantomData<B>,
}

pub type MonomialExpansion = Expansion<Monomial>;
pub type PowerSumExpansion = Expansion<PowerSum>;
pub type JackExpansion = Expansion<Jack>;

impl<B> Clone for Expansion<B> {
    fn clone(&self) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.clone(),
            _basis: PhantomData,
        }
    }
}

impl<B> PartialEq for Expansion<B> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl<B> Eq for Expansion<B> {}

impl<B: Basis> fmt::Debug for Expansion<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<B: Basis> fmt::Display for Expansion<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{}({p})", B::SYMBOL)?;
        }
        Ok(())
    }
}

impl<B> Expansion<B> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
            _basis: PhantomData,
        }
    }

    /// The degree-0 constant `1`.
    pub fn one() -> Self {
        Self::single(Partition::empty(), BigRational::one())
    }

    pub fn single(p: Partition, c: BigRational) -> Self {
        let mut e = Self::zero(p.weight());
        e.add_term(p, c);
        e
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigRational)>,
    {
        let mut e = Self::zero(degree);
        for (p, c) in terms {
            if p.weight() != degree {
                return Err(Error::WeightMismatch {
                    expected: degree,
                    actual: p.weight(),
                });
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> BigRational {
        self.coeffs
            .get(p)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn get(&self, p: &Partition) -> Option<&BigRational> {
        self.coeffs.get(p)
    }

    /// Terms from the dominance-largest (lexicographically largest) partition down.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.coeffs.iter().rev()
    }

    pub fn partitions(&self) -> impl Iterator<Item = &Partition> {
        self.coeffs.keys().rev()
    }

    /// The lexicographically largest partition with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Partition, &BigRational)> {
        self.coeffs.iter().next_back()
    }

    /// Adds `c` to the coefficient of `p`, dropping it if the result is zero.
    /// Panics on a weight mismatch.
    pub fn add_term(&mut self, p: Partition, c: BigRational) {
        assert_eq!(p.weight(), self.degree, "term {p} has the wrong weight");
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &Self, scale: &BigRational) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for (p, c) in &other.coeffs {
            self.add_term(p.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &BigRational) -> Self {
        let mut out = Self::zero(self.degree);
        out.add_scaled(self, scale);
        out
    }

    /// Drops every term with more than `n` parts: the restriction to `n`
    /// variables for the monomial basis.
    pub fn restricted(&self, n: usize) -> Self {
        Self {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(p, _)| p.len() <= n)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
            _basis: PhantomData,
        }
    }

    /// Writes `partition,coefficient` rows with `p/q` coefficients, largest
    /// partition first.
    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "partition,coefficient")?;
        for (p, c) in self.terms() {
            writeln!(w, "{p},{}/{}", c.numer(), c.denom())?;
        }
        Ok(())
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.coeffs.values().any(|c| c.is_negative())
    }
}

/// The Jack parameter α, a positive rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JackParameter(BigRational);

impl JackParameter {
    pub fn new(alpha: BigRational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidInput(format!(
                "Jack parameter {alpha} must be positive"
            )));
        }
        Ok(Self(alpha))
    }

    /// α = 2: zonal polynomials.
    pub fn zonal() -> Self {
        Self(BigRational::from_integer(BigInt::from(2)))
    }

    /// α = 1: Schur functions up to scaling.
    pub fn schur() -> Self {
        Self(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for JackParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_from_uint(n: num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut e = MonomialExpansion::zero(2);
        e.add_term(p(&[2]), rat(3));
        e.add_term(p(&[2]), rat(-3));
        assert!(e.is_zero());
        e.add_term(p(&[1, 1]), rat(0));
        assert!(e.is_empty());
    }

    #[test]
    fn from_terms_checks_weight() {
        let bad = MonomialExpansion::from_terms(2, [(p(&[3]), rat(1))]);
        assert!(matches!(bad, Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn csv_lists_leading_term_first() {
        let e =
            MonomialExpansion::from_terms(2, [(p(&[1, 1]), rat(2)), (p(&[2]), rat(3))]).unwrap();
        let mut buf = Vec::new();
        e.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "partition,coefficient\n2,3/1\n1-1,2/1\n"
        );
    }

    #[test]
    fn jack_parameter_must_be_positive() {
        assert!(JackParameter::new(rat(0)).is_err());
        assert!(JackParameter::new(rat(-1)).is_err());
        assert_eq!(JackParameter::zonal().value(), &rat(2));
    }
}
