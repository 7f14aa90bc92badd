//! Haar sampling on the orthogonal and unitary groups, conjugated diagonals,
//! a cyclic Jacobi eigensolver and reproducible random streams.

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// A fixed spectrum: nonnegative rationals, sorted descending, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumVector {
    exact: Vec<BigRational>,
    values: Vec<f64>,
}

impl SpectrumVector {
    pub fn new(exact: Vec<BigRational>) -> Result<Self> {
        if exact.is_empty() {
            return Err(Error::InvalidInput("spectrum is empty".into()));
        }
        if exact.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidInput("spectrum has a negative entry".into()));
        }
        if exact.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "spectrum is not sorted descending".into(),
            ));
        }
        let total: BigRational = exact.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidInput(format!(
                "spectrum sums to {total}, not 1"
            )));
        }
        let values = exact
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect();
        Ok(Self { exact, values })
    }

    /// Sorts descending first; the flag reports whether the order changed.
    pub fn from_unsorted(mut exact: Vec<BigRational>) -> Result<(Self, bool)> {
        let sorted = exact.windows(2).all(|w| w[0] >= w[1]);
        exact.sort_by(|a, b| b.cmp(a));
        Ok((Self::new(exact)?, !sorted))
    }

    /// `(1/n, …, 1/n)`.
    pub fn uniform(n: usize) -> Self {
        let v = BigRational::new(BigInt::one(), BigInt::from(n));
        Self::new(vec![v; n]).expect("valid uniform spectrum")
    }

    /// Parses comma-separated rationals such as `2/3,1/3,0`.
    pub fn parse(s: &str) -> Result<(Self, bool)> {
        let exact = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigRational>()
                    .map_err(|_| Error::InvalidInput(format!("cannot parse {t:?} as a rational")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_unsorted(exact)
    }

    pub fn dim(&self) -> usize {
        self.exact.len()
    }

    pub fn exact(&self) -> &[BigRational] {
        &self.exact
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Smallest `N` with `N·λ` integral: the lcm of the denominators.
    pub fn minimal_grid(&self) -> usize {
        self.exact
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
            .to_usize()
            .unwrap_or(usize::MAX)
    }

    /// `N·λ` as a partition.
    pub fn grid_partition(&self, grid: usize) -> Result<Partition> {
        let n = BigRational::from_integer(BigInt::from(grid));
        let scaled: Option<Vec<usize>> = self
            .exact
            .iter()
            .map(|v| {
                let s = v * &n;
                if s.is_integer() {
                    s.to_integer().to_usize()
                } else {
                    None
                }
            })
            .collect();
        match scaled {
            Some(parts) if grid > 0 => Ok(Partition::from_unsorted(parts)),
            _ => Err(Error::NonIntegralGrid {
                grid,
                minimal: self.minimal_grid(),
            }),
        }
    }
}

/// A reproducible random stream keyed by `(master seed, stream index)`.
///
/// Backed by ChaCha20 with the stream index in the cipher's stream word, so
/// distinct indices give independent sequences from the same seed.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    index: u64,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { seed, index, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn gaussian(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Sample budget split over `streams` independent streams of one seed.
///
/// Stream `k` draws `samples / streams` samples, plus one if
/// `k < samples % streams`. Results come back in stream order regardless of
/// how many threads ran them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarlo {
    pub samples: usize,
    pub seed: u64,
    pub streams: usize,
}

impl MonteCarlo {
    pub fn new(samples: usize, seed: u64, streams: usize) -> Self {
        Self {
            samples,
            seed,
            streams: streams.max(1),
        }
    }

    pub fn share(&self, k: usize) -> usize {
        self.samples / self.streams + usize::from(k < self.samples % self.streams)
    }

    pub fn map_streams<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut RngStream, usize) -> T + Sync,
    {
        (0..self.streams)
            .into_par_iter()
            .map(|k| {
                let mut rng = RngStream::new(self.seed, k as u64);
                f(&mut rng, self.share(k))
            })
            .collect()
    }
}

/// Which compact group to conjugate by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    Orthogonal,
    SpecialOrthogonal,
    Unitary,
    SpecialUnitary,
}

impl Group {
    /// Diagonal of `g D_λ g*` for a Haar draw `g` from this group.
    pub fn sample_diagonal(self, lambda: &[f64], rng: &mut RngStream) -> Vec<f64> {
        let n = lambda.len();
        match self {
            Group::Orthogonal => conjugated_diagonal(lambda, &haar_orthogonal(n, rng)),
            Group::SpecialOrthogonal => {
                conjugated_diagonal(lambda, &haar_special_orthogonal(n, rng))
            }
            Group::Unitary => conjugated_diagonal_unitary(lambda, &haar_unitary(n, rng)),
            Group::SpecialUnitary => {
                conjugated_diagonal_unitary(lambda, &haar_special_unitary(n, rng))
            }
        }
    }
}

/// Haar-distributed `o ∈ O(n)`: QR of a Gaussian matrix, with each column of
/// `Q` multiplied by the sign of the matching diagonal entry of `R`.
pub fn haar_orthogonal(n: usize, rng: &mut RngStream) -> DMatrix<f64> {
    assert!(n >= 1, "dimension must be positive");
    loop {
        let g = DMatrix::from_fn(n, n, |_, _| rng.gaussian());
        let qr = g.qr();
        let r = qr.r();
        if (0..n).any(|i| r[(i, i)].abs() < f64::MIN_POSITIVE) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..n {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        return q;
    }
}

/// Haar on `SO(n)`: a Haar `O(n)` draw with its first column negated when
/// the determinant is `-1`.
pub fn haar_special_orthogonal(n: usize, rng: &mut RngStream) -> DMatrix<f64> {
    let mut o = haar_orthogonal(n, rng);
    if o.determinant() < 0.0 {
        o.column_mut(0).neg_mut();
    }
    o
}

/// Haar-distributed `u ∈ U(n)`, with the phase correction `r_jj / |r_jj|`.
pub fn haar_unitary(n: usize, rng: &mut RngStream) -> DMatrix<Complex<f64>> {
    assert!(n >= 1, "dimension must be positive");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    loop {
        let g = DMatrix::from_fn(n, n, |_, _| {
            Complex::new(rng.gaussian() * scale, rng.gaussian() * scale)
        });
        let qr = g.qr();
        let r = qr.r();
        if (0..n).any(|i| r[(i, i)].norm() < f64::MIN_POSITIVE) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..n {
            let phase = r[(j, j)] / r[(j, j)].norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        return q;
    }
}

/// Haar on `SU(n)`: the first column of a `U(n)` draw divided by the determinant.
pub fn haar_special_unitary(n: usize, rng: &mut RngStream) -> DMatrix<Complex<f64>> {
    let mut u = haar_unitary(n, rng);
    let det = u.determinant();
    let fix = det.conj() / det.norm();
    for i in 0..n {
        u[(i, 0)] *= fix;
    }
    u
}

/// Diagonal of `o D_λ oᵀ`: `d_i = Σ_j λ_j o_ij²`.
pub fn conjugated_diagonal(lambda: &[f64], o: &DMatrix<f64>) -> Vec<f64> {
    (0..o.nrows())
        .map(|i| {
            lambda
                .iter()
                .enumerate()
                .map(|(j, l)| l * o[(i, j)].powi(2))
                .sum()
        })
        .collect()
}

/// Diagonal of `u D_λ u*`: `d_i = Σ_j λ_j |u_ij|²`.
pub fn conjugated_diagonal_unitary(lambda: &[f64], u: &DMatrix<Complex<f64>>) -> Vec<f64> {
    (0..u.nrows())
        .map(|i| {
            lambda
                .iter()
                .enumerate()
                .map(|(j, l)| l * u[(i, j)].norm_sqr())
                .sum()
        })
        .collect()
}

/// `o D_λ oᵀ` as a full matrix.
pub fn conjugate(lambda: &[f64], o: &DMatrix<f64>) -> DMatrix<f64> {
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(lambda));
    o * d * o.transpose()
}

const MAX_SWEEPS: usize = 50;

/// Eigenvalues (descending) and matching eigenvector columns of a symmetric
/// matrix by cyclic Jacobi rotations.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch(n, a.ncols()));
    }
    let asym = (a - a.transpose()).amax();
    if asym > 1e-10 {
        return Err(Error::NotSymmetric(asym));
    }
    let mut m = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = m.norm().max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

// Applies the rotation J(p, q) as m ← Jᵀ m J and v ← v J.
fn rotate(m: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    let n = m.nrows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    symmetric_eigen(a).map(|(values, _)| values)
}

/// Spectrum of `(o D_λ oᵀ + o' D_γ o'ᵀ) / 2` for independent Haar `o, o'`.
pub fn sample_sum_spectrum(
    lambda: &SpectrumVector,
    gamma: &SpectrumVector,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let n = lambda.dim();
    if gamma.dim() != n {
        return Err(Error::DimensionMismatch(n, gamma.dim()));
    }
    let a = conjugate(lambda.values(), &haar_orthogonal(n, rng));
    let b = conjugate(gamma.values(), &haar_orthogonal(n, rng));
    symmetric_eigenvalues(&((a + b) * 0.5))
}
