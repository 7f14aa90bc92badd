//! Discrete distributions on the lattice `{η / N}` of the simplex.
//!
//! Three estimates of the pushforward of Haar measure under
//! `o ↦ diag(o D_λ oᵀ)` live here:
//!
//! * the zonal prediction, `a_η / Z_{Nλ}(1, …, 1)` from the monomial
//!   coefficients of the zonal polynomial `Z_{Nλ}`;
//! * the empirical histogram of sampled diagonals, binned to the nearest
//!   lattice point;
//! * the Bernstein moments `E[ (N choose η) Π d_i^{η_i} ]`, whose kernels
//!   concentrate at `η / N` as `N` grows.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::combinatorics::{lattice_points, multinomial, Composition, Partition};
use crate::error::{Error, Result};
use crate::randmat::{Group, MonteCarlo, SpectrumVector};
use crate::symfunc::{evaluate_at_ones, jack_expansion_in, JackParameter};

/// Masses below this are left out of relative-error reporting.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-4;

/// A probability mass function on a fixed set of lattice points of weight
/// `grid` and length `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeDistribution {
    grid: usize,
    dim: usize,
    points: Vec<Composition>,
    mass: Vec<f64>,
    index: HashMap<Composition, usize>,
}

impl LatticeDistribution {
    /// Zero mass on the given points, which must all be compositions of
    /// `grid` with `dim` entries.
    pub fn zeros(grid: usize, dim: usize, points: Vec<Composition>) -> Result<Self> {
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.weight() != grid || p.dim() != dim {
                return Err(Error::InvalidInput(format!(
                    "{p} is not a composition of {grid} with {dim} parts"
                )));
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate lattice point {p}")));
            }
        }
        Ok(Self {
            grid,
            dim,
            mass: vec![0.0; points.len()],
            points,
            index,
        })
    }

    /// Zero mass on every composition of `grid` with `dim` parts.
    pub fn simplex(grid: usize, dim: usize) -> Self {
        Self::zeros(grid, dim, lattice_points(grid, dim)).expect("lattice points are valid")
    }

    pub fn from_masses(
        grid: usize,
        dim: usize,
        points: Vec<Composition>,
        mass: Vec<f64>,
    ) -> Result<Self> {
        if points.len() != mass.len() {
            return Err(Error::DimensionMismatch(points.len(), mass.len()));
        }
        if mass.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(Error::InvalidInput(
                "masses must be finite and nonnegative".into(),
            ));
        }
        let mut d = Self::zeros(grid, dim, points)?;
        d.mass = mass;
        Ok(d)
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Composition] {
        &self.points
    }

    pub fn masses(&self) -> &[f64] {
        &self.mass
    }

    pub fn mass_at(&self, p: &Composition) -> f64 {
        self.index.get(p).map_or(0.0, |&i| self.mass[i])
    }

    pub fn index_of(&self, p: &Composition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, f64)> {
        self.points.iter().zip(self.mass.iter().copied())
    }

    /// Rescales so the masses sum to one; a zero distribution is left alone.
    pub fn normalize(&mut self) {
        let total = self.total();
        if total > 0.0 {
            self.mass.iter_mut().for_each(|m| *m /= total);
        }
    }

    fn with_counts(mut self, counts: &[f64]) -> Self {
        self.mass.copy_from_slice(counts);
        self.normalize();
        self
    }
}

/// Exact zonal masses `a_{sort(η)} / Z_{Nλ}(I_n)` at every composition `η`
/// of `N`, in lattice order. They sum to exactly one.
pub fn zonal_masses_exact(
    lambda: &SpectrumVector,
    grid: usize,
) -> Result<Vec<(Composition, BigRational)>> {
    let n = lambda.dim();
    let top = lambda.grid_partition(grid)?;
    let z = jack_expansion_in(&top, &JackParameter::zonal(), Some(n));
    let at_ones = evaluate_at_ones(&z, n);
    Ok(lattice_points(grid, n)
        .into_iter()
        .map(|eta| {
            let a = z.coeff(&eta.sorted()) / &at_ones;
            (eta, a)
        })
        .collect())
}

pub fn zonal_mass_distribution(
    lambda: &SpectrumVector,
    grid: usize,
) -> Result<LatticeDistribution> {
    let exact = zonal_masses_exact(lambda, grid)?;
    let (points, mass): (Vec<_>, Vec<_>) = exact
        .into_iter()
        .map(|(p, a)| (p, a.to_f64().unwrap_or(0.0)))
        .unzip();
    LatticeDistribution::from_masses(grid, lambda.dim(), points, mass)
}

/// Histogram of sampled diagonals of `g D_λ g*`, snapped to the `N`-grid.
pub fn empirical_diagonal_distribution(
    lambda: &SpectrumVector,
    grid: usize,
    mc: &MonteCarlo,
    group: Group,
) -> LatticeDistribution {
    let out = LatticeDistribution::simplex(grid, lambda.dim());
    let per_stream = mc.map_streams(|rng, count| {
        let mut hist = vec![0u64; out.points.len()];
        for _ in 0..count {
            let d = group.sample_diagonal(lambda.values(), rng);
            let cell = nearest_lattice_point(&d, grid);
            hist[out.index[&cell]] += 1;
        }
        hist
    });
    let counts = reduce_counts(out.points.len(), per_stream);
    out.with_counts(&counts)
}

fn reduce_counts(len: usize, per_stream: Vec<Vec<u64>>) -> Vec<f64> {
    let mut total = vec![0u64; len];
    for hist in per_stream {
        total.iter_mut().zip(hist).for_each(|(t, h)| *t += h);
    }
    total.into_iter().map(|c| c as f64).collect()
}

/// Monte Carlo estimate of `E[ (N choose η) Π d_i^{η_i} ]` at every lattice
/// point, with `d` the diagonal of a Haar conjugate of `D_λ`.
pub fn bernstein_moment_distribution(
    lambda: &SpectrumVector,
    grid: usize,
    mc: &MonteCarlo,
) -> LatticeDistribution {
    let out = LatticeDistribution::simplex(grid, lambda.dim());
    let weights: Vec<f64> = out
        .points
        .iter()
        .map(|p| {
            multinomial(grid, p.entries())
                .expect("lattice point has weight N")
                .to_f64()
                .unwrap_or(f64::INFINITY)
        })
        .collect();
    let per_stream = mc.map_streams(|rng, count| {
        let mut acc = vec![0.0; out.points.len()];
        for _ in 0..count {
            let d = Group::Orthogonal.sample_diagonal(lambda.values(), rng);
            for ((slot, p), w) in acc.iter_mut().zip(&out.points).zip(&weights) {
                let kernel: f64 = p
                    .entries()
                    .iter()
                    .zip(&d)
                    .map(|(&e, &di)| di.max(0.0).powi(e as i32))
                    .product();
                *slot += w * kernel;
            }
        }
        acc
    });
    let mut sums = vec![0.0; out.points.len()];
    for acc in per_stream {
        sums.iter_mut().zip(acc).for_each(|(s, a)| *s += a);
    }
    out.with_counts(&sums)
}

/// Coefficients of `Z_(N)` in two variables at `x^{N−k} y^k`, `k = 0..=N`.
pub fn one_row_coefficients(grid: usize) -> Vec<(Composition, BigRational)> {
    let top = Partition::new(vec![grid]).expect("single part");
    let z = jack_expansion_in(&top, &JackParameter::zonal(), Some(2));
    lattice_points(grid, 2)
        .into_iter()
        .map(|eta| {
            let c = z.coeff(&eta.sorted());
            (eta, c)
        })
        .collect()
}

/// The one-row coefficient profile against `(k (N − k))^{−1/2}`, both
/// normalized to unit mass over the interior points `0 < k < N`.
#[derive(Debug, Clone)]
pub struct ArcsineProfile {
    pub zonal: LatticeDistribution,
    pub arcsine: LatticeDistribution,
}

pub fn arcsine_profile(grid: usize) -> Result<ArcsineProfile> {
    if grid < 2 {
        return Err(Error::InvalidInput("arcsine profile needs N >= 2".into()));
    }
    let (points, coeffs): (Vec<_>, Vec<_>) = one_row_coefficients(grid)
        .into_iter()
        .filter(|(eta, _)| eta.entries().iter().all(|&e| e > 0))
        .map(|(eta, c)| (eta, c.to_f64().unwrap_or(f64::NAN)))
        .unzip();
    let curve = points
        .iter()
        .map(|eta| {
            let (x, y) = (eta.entries()[0] as f64, eta.entries()[1] as f64);
            (x * y).powf(-0.5)
        })
        .collect();
    let mut zonal = LatticeDistribution::from_masses(grid, 2, points.clone(), coeffs)?;
    let mut arcsine = LatticeDistribution::from_masses(grid, 2, points, curve)?;
    zonal.normalize();
    arcsine.normalize();
    Ok(ArcsineProfile { zonal, arcsine })
}

/// Largest-remainder rounding of `N·p` to a composition of `N`: floors
/// first, then one extra unit to each of the largest fractional parts, ties
/// going to the lowest index.
pub fn nearest_lattice_point(p: &[f64], grid: usize) -> Composition {
    debug_assert!(
        (p.iter().sum::<f64>() - 1.0).abs() <= 1e-9,
        "point is off the simplex"
    );
    let scaled: Vec<f64> = p.iter().map(|&x| x.max(0.0) * grid as f64).collect();
    let mut entries: Vec<usize> = scaled.iter().map(|x| x.floor() as usize).collect();
    let assigned: usize = entries.iter().sum();
    if assigned > grid {
        // only reachable through rounding when Σp sits just above one
        let mut excess = assigned - grid;
        let mut order: Vec<usize> = (0..p.len()).collect();
        order.sort_by(|&i, &j| frac(scaled[i]).total_cmp(&frac(scaled[j])));
        for &i in order.iter().cycle() {
            if excess == 0 {
                break;
            }
            if entries[i] > 0 {
                entries[i] -= 1;
                excess -= 1;
            }
        }
        return Composition::new(entries);
    }
    let mut order: Vec<usize> = (0..p.len()).collect();
    // stable, so equal remainders keep index order
    order.sort_by(|&i, &j| frac(scaled[j]).total_cmp(&frac(scaled[i])));
    let mut remaining = grid - assigned;
    for &i in order.iter().cycle() {
        if remaining == 0 {
            break;
        }
        entries[i] += 1;
        remaining -= 1;
    }
    Composition::new(entries)
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// Whether `p` lies in the permutohedron of `lambda` up to `tol`: sorted
/// partial sums of `p` never exceed those of `lambda`, and the totals agree.
pub fn majorization_check(p: &[f64], lambda: &[f64], tol: f64) -> bool {
    if p.len() != lambda.len() {
        return false;
    }
    let mut ps = p.to_vec();
    let mut ls = lambda.to_vec();
    ps.sort_by(|a, b| b.total_cmp(a));
    ls.sort_by(|a, b| b.total_cmp(a));
    let (mut sp, mut sl) = (0.0, 0.0);
    for (a, b) in ps.iter().zip(&ls) {
        sp += a;
        sl += b;
        if sp > sl + tol {
            return false;
        }
    }
    (sp - sl).abs() <= tol
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityComparison {
    /// Total variation, `½ Σ |p − q|`.
    pub tv: f64,
    /// `max |p − q| / q` over points where both masses exceed
    /// [`RELATIVE_ERROR_FLOOR`]; zero when no point qualifies.
    pub sup_rel: f64,
    /// Pearson correlation of the two mass vectors.
    pub correlation: f64,
}

/// Compares `d1` against the reference `d2`. Both must live on the same points.
pub fn compare(d1: &LatticeDistribution, d2: &LatticeDistribution) -> Result<DensityComparison> {
    if d1.grid != d2.grid || d1.dim != d2.dim || d1.points != d2.points {
        return Err(Error::InvalidInput(
            "distributions live on different lattices".into(),
        ));
    }
    let (a, b) = (&d1.mass, &d2.mass);
    let tv = 0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>();
    let sup_rel = a
        .iter()
        .zip(b)
        .filter(|(x, y)| **x > RELATIVE_ERROR_FLOOR && **y > RELATIVE_ERROR_FLOOR)
        .map(|(x, y)| (x - y).abs() / y)
        .fold(0.0, f64::max);
    Ok(DensityComparison {
        tv: tv.min(1.0),
        sup_rel,
        correlation: pearson(a, b),
    })
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    if a.is_empty() {
        return 1.0;
    }
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    if saa == 0.0 || sbb == 0.0 {
        return if a == b { 1.0 } else { 0.0 };
    }
    (sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn spectrum(s: &str) -> SpectrumVector {
        SpectrumVector::parse(s).unwrap().0
    }

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn zonal_masses_examples() {
        let d = zonal_mass_distribution(&spectrum("1/2,1/2"), 2).unwrap();
        assert_eq!(d.masses(), &[0.0, 1.0, 0.0]);
        let d = zonal_mass_distribution(&spectrum("1,0"), 2).unwrap();
        assert_eq!(d.masses(), &[3.0 / 8.0, 2.0 / 8.0, 3.0 / 8.0]);
        assert!(matches!(
            zonal_mass_distribution(&spectrum("2/3,1/3"), 4),
            Err(Error::NonIntegralGrid { minimal: 3, .. })
        ));
    }

    #[test]
    fn zonal_masses_sum_to_one_exactly() {
        for (lam, grid) in [
            ("2/3,1/3,0", 6),
            ("1/2,1/4,1/4", 8),
            ("1/3,1/3,1/3", 9),
            ("1,0,0,0", 5),
        ] {
            let total: BigRational = zonal_masses_exact(&spectrum(lam), grid)
                .unwrap()
                .into_iter()
                .map(|(_, a)| a)
                .sum();
            assert!(total.is_one(), "{lam} at N = {grid}");
        }
    }

    #[test]
    fn zonal_masses_are_permutation_invariant() {
        let d = zonal_mass_distribution(&spectrum("1/2,1/3,1/6"), 6).unwrap();
        for (p, m) in d.iter() {
            let mut e = p.entries().to_vec();
            e.reverse();
            assert_eq!(m, d.mass_at(&comp(&e)));
        }
    }

    #[test]
    fn zonal_support_lies_in_permutohedron() {
        let lam = spectrum("2/3,1/3,0");
        let d = zonal_mass_distribution(&lam, 12).unwrap();
        for (p, m) in d.iter() {
            let x: Vec<f64> = p.entries().iter().map(|&e| e as f64 / 12.0).collect();
            assert_eq!(m > 0.0, majorization_check(&x, lam.values(), 1e-12), "{p}");
        }
    }

    #[test]
    fn nearest_lattice_point_examples() {
        assert_eq!(
            nearest_lattice_point(&[0.5, 0.25, 0.25], 4),
            comp(&[2, 1, 1])
        );
        assert_eq!(
            nearest_lattice_point(&[0.4, 0.35, 0.25], 4),
            comp(&[2, 1, 1])
        );
        // ties go to the lowest index
        assert_eq!(nearest_lattice_point(&[0.5, 0.5], 1), comp(&[1, 0]));
        assert_eq!(
            nearest_lattice_point(&[1.0 + 1e-12, -1e-12], 3),
            comp(&[3, 0])
        );
    }

    #[test]
    fn majorization_examples() {
        let lam = [0.7, 0.3];
        assert!(majorization_check(&lam, &lam, 1e-12));
        assert!(majorization_check(&[0.5, 0.5], &lam, 1e-12));
        assert!(!majorization_check(&[0.8, 0.2], &lam, 1e-12));
        assert!(!majorization_check(&[0.5, 0.4], &lam, 1e-12));
    }

    #[test]
    fn compare_examples() {
        let d = zonal_mass_distribution(&spectrum("1,0"), 4).unwrap();
        let c = compare(&d, &d).unwrap();
        assert_eq!((c.tv, c.sup_rel, c.correlation), (0.0, 0.0, 1.0));
        let pts = lattice_points(2, 2);
        let a = LatticeDistribution::from_masses(2, 2, pts.clone(), vec![1.0, 0.0, 0.0]).unwrap();
        let b = LatticeDistribution::from_masses(2, 2, pts, vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(compare(&a, &b).unwrap().tv, 1.0);
        assert_eq!(
            compare(&a, &d).unwrap_err(),
            Error::InvalidInput("distributions live on different lattices".into())
        );
    }

    #[test]
    fn empirical_degenerate_cases() {
        let mc = MonteCarlo::new(500, 9, 4);
        let d =
            empirical_diagonal_distribution(&SpectrumVector::uniform(3), 6, &mc, Group::Orthogonal);
        assert_eq!(d.mass_at(&comp(&[2, 2, 2])), 1.0);
        let d =
            empirical_diagonal_distribution(&SpectrumVector::uniform(1), 7, &mc, Group::Orthogonal);
        assert_eq!(d.masses(), &[1.0]);
        let b = bernstein_moment_distribution(&SpectrumVector::uniform(1), 7, &mc);
        assert_eq!(b.masses(), &[1.0]);
    }

    #[test]
    fn bernstein_on_uniform_spectrum_is_multinomial() {
        let mc = MonteCarlo::new(50, 3, 2);
        let b = bernstein_moment_distribution(&SpectrumVector::uniform(3), 6, &mc);
        for (p, m) in b.iter() {
            let exact = multinomial(6, p.entries()).unwrap().to_f64().unwrap() / 729.0;
            assert!((m - exact).abs() < 1e-12, "{p}");
        }
    }

    #[test]
    fn exact_zero_masses_are_not_counted() {
        let d = zonal_mass_distribution(&spectrum("1/2,1/2"), 4).unwrap();
        assert!(d.iter().filter(|(_, m)| m.is_zero()).count() > 0);
        assert!((d.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_row_in_two_variables() {
        let rows = one_row_coefficients(2);
        let c: Vec<_> = rows.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(
            c,
            vec![
                BigRational::from_integer(3.into()),
                BigRational::from_integer(2.into()),
                BigRational::from_integer(3.into())
            ]
        );
        assert_eq!(one_row_coefficients(40).len(), 41);
    }

    #[test]
    fn arcsine_profile_tracks_the_coefficients() {
        let p = arcsine_profile(50).unwrap();
        assert_eq!(p.zonal.points().len(), 49);
        let c = compare(&p.zonal, &p.arcsine).unwrap();
        assert!(c.correlation > 0.99, "{c:?}");
        assert!(c.sup_rel < 0.1, "{c:?}");
        assert!(arcsine_profile(1).is_err());
    }
}
