//! Structure constants of the zonal basis and the spectrum-of-sums harness.
//!
//! `Z_μ · Z_ν = Σ_η C_η Z_η` is solved by expanding the product in monomials
//! and peeling off zonal polynomials from the top of the dominance order:
//! the remainder's leading monomial always names the next `Z_η`.
//!
//! The predicted spectrum distribution of `(o D_λ oᵀ + o' D_γ o'ᵀ) / 2` puts
//! weight `C_η Z_η(I_n) / (Z_{Nλ}(I_n) Z_{Nγ}(I_n))` on the point `η / 2N`.
//! These weights sum to one by evaluating the product at the identity. Each
//! `Z_η / Z_η(I_n)` is the diagonal law of a conjugate of `D_{η/2N}`, so the
//! weights are the mixing law of the spectrum.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::combinatorics::{chamber_points, Composition, Partition};
use crate::error::{Error, Result};
use crate::measures::{nearest_lattice_point, LatticeDistribution};
use crate::randmat::{sample_sum_spectrum, MonteCarlo, SpectrumVector};
use crate::symfunc::{
    evaluate_at_ones, expand_product_in, jack_expansion_in, JackBasis, JackExpansion,
    JackParameter, MonomialExpansion,
};

/// `Z_left · Z_right` written in the zonal basis.
#[derive(Debug, Clone)]
pub struct StructureConstantTable {
    left: MonomialExpansion,
    right: MonomialExpansion,
    left_partition: Partition,
    right_partition: Partition,
    coeffs: JackExpansion,
    basis: JackBasis,
}

/// Zonal structure constants, optionally in `max_parts` variables only.
pub fn structure_constants(
    left: &Partition,
    right: &Partition,
    max_parts: Option<usize>,
) -> Result<StructureConstantTable> {
    let alpha = JackParameter::zonal();
    let f = jack_expansion_in(left, &alpha, max_parts);
    let g = jack_expansion_in(right, &alpha, max_parts);
    let degree = left.weight() + right.weight();
    let basis = JackBasis::new(degree, alpha, max_parts);

    let mut residual = expand_product_in(&f, &g, max_parts);
    let mut coeffs = JackExpansion::zero(degree);
    for (eta, z) in basis.iter() {
        let Some(top) = residual.get(eta) else {
            continue;
        };
        let c = top / z.coeff(eta);
        residual.add_scaled(z, &-&c);
        coeffs.add_term(eta.clone(), c);
    }
    if !residual.is_zero() {
        return Err(Error::NonzeroResidual(residual.len()));
    }
    Ok(StructureConstantTable {
        left: f,
        right: g,
        left_partition: left.clone(),
        right_partition: right.clone(),
        coeffs,
        basis,
    })
}

impl StructureConstantTable {
    pub fn left(&self) -> &Partition {
        &self.left_partition
    }

    pub fn right(&self) -> &Partition {
        &self.right_partition
    }

    pub fn coeffs(&self) -> &JackExpansion {
        &self.coeffs
    }

    pub fn coeff(&self, eta: &Partition) -> BigRational {
        self.coeffs.coeff(eta)
    }

    /// Partitions with a negative structure constant. None have been observed.
    pub fn negative(&self) -> Vec<Partition> {
        self.coeffs
            .terms()
            .filter(|(_, c)| c.is_negative())
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Both sides of the product identity at `X = I_n`:
    /// `(Σ_η C_η Z_η(I_n), Z_left(I_n) · Z_right(I_n))`. Only meaningful for
    /// `n` no larger than the variable cap the table was built with.
    pub fn evaluation_at_ones(&self, n: usize) -> (BigRational, BigRational) {
        let lhs = self
            .coeffs
            .terms()
            .map(|(eta, c)| {
                let z = self.basis.get(eta).expect("table built from this basis");
                c * evaluate_at_ones(z, n)
            })
            .sum();
        let rhs = evaluate_at_ones(&self.left, n) * evaluate_at_ones(&self.right, n);
        (lhs, rhs)
    }

    /// The mixing weights `C_η Z_η(I_n) / (Z_left(I_n) Z_right(I_n))`.
    pub fn mixture_weights(&self, n: usize) -> BTreeMap<Partition, BigRational> {
        let denom = evaluate_at_ones(&self.left, n) * evaluate_at_ones(&self.right, n);
        if denom.is_zero() {
            return BTreeMap::new();
        }
        self.coeffs
            .terms()
            .filter(|(eta, _)| eta.len() <= n)
            .map(|(eta, c)| {
                let z = self.basis.get(eta).expect("table built from this basis");
                (eta.clone(), c * evaluate_at_ones(z, n) / &denom)
            })
            .collect()
    }
}

/// The zonal prediction for the sorted spectrum of the half-sum, together
/// with the exact table it came from.
#[derive(Debug, Clone)]
pub struct SumPrediction {
    pub table: StructureConstantTable,
    pub weights: BTreeMap<Partition, BigRational>,
    /// Masses on the sorted chamber of the `2N`-grid. Negative weights, if
    /// any ever appear, are clipped to zero here and visible in `table`.
    pub distribution: LatticeDistribution,
}

/// Sorted compositions of `2N` with `n` parts, the support shared by the
/// predicted and sampled spectra.
pub fn sum_chamber(grid: usize, n: usize) -> Vec<Composition> {
    chamber_points(2 * grid, n)
}

pub fn predicted_sum_distribution(
    lambda: &SpectrumVector,
    gamma: &SpectrumVector,
    grid: usize,
) -> Result<SumPrediction> {
    let n = lambda.dim();
    if gamma.dim() != n {
        return Err(Error::DimensionMismatch(n, gamma.dim()));
    }
    let left = lambda.grid_partition(grid)?;
    let right = gamma.grid_partition(grid)?;
    let table = structure_constants(&left, &right, Some(n))?;
    let weights = table.mixture_weights(n);

    let points = sum_chamber(grid, n);
    let mass = points
        .iter()
        .map(|p| {
            weights
                .get(&p.sorted())
                .and_then(|w| w.to_f64())
                .unwrap_or(0.0)
                .max(0.0)
        })
        .collect();
    let mut distribution = LatticeDistribution::from_masses(2 * grid, n, points, mass)?;
    distribution.normalize();
    Ok(SumPrediction {
        table,
        weights,
        distribution,
    })
}

/// Histogram of sampled spectra of the half-sum on the sorted `2N`-chamber.
pub fn empirical_sum_distribution(
    lambda: &SpectrumVector,
    gamma: &SpectrumVector,
    grid: usize,
    mc: &MonteCarlo,
) -> Result<LatticeDistribution> {
    let n = lambda.dim();
    if gamma.dim() != n {
        return Err(Error::DimensionMismatch(n, gamma.dim()));
    }
    let fine = 2 * grid;
    let mut out = LatticeDistribution::zeros(fine, n, sum_chamber(grid, n))?;
    let per_stream = mc.map_streams(|rng, count| -> Result<Vec<u64>> {
        let mut hist = vec![0u64; out.points().len()];
        for _ in 0..count {
            let spectrum = sample_sum_spectrum(lambda, gamma, rng)?;
            let cell = nearest_lattice_point(&spectrum, fine);
            let i = out
                .index_of(&cell)
                .expect("rounding a sorted vector keeps it sorted");
            hist[i] += 1;
        }
        Ok(hist)
    });
    let mut counts = vec![0.0; out.points().len()];
    for hist in per_stream {
        for (c, h) in counts.iter_mut().zip(hist?) {
            *c += h as f64;
        }
    }
    out = LatticeDistribution::from_masses(fine, n, out.points().to_vec(), counts)?;
    out.normalize();
    Ok(out)
}
