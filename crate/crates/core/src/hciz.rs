//! The orthogonal HCIZ-type integral
//! `I_λ(C) = ∫_{O(n)} exp(tr(C o D_λ oᵀ)) do`
//! by Monte Carlo, by the normalized zonal polynomial at `exp(C/N)`, and by
//! one-dimensional quadrature when `n = 2`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::randmat::{symmetric_eigenvalues, Group, MonteCarlo, SpectrumVector};
use crate::symfunc::{evaluate, evaluate_at_ones, jack_expansion_in, JackParameter};

/// The spectrum `c` of the source matrix `C`. Only the spectrum matters
/// because Haar measure absorbs the eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceMatrix {
    c: Vec<f64>,
}

impl SourceMatrix {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("source entries must be finite".into()));
        }
        Ok(Self { c })
    }

    /// Reduces a general symmetric matrix to its eigenvalues.
    pub fn from_symmetric(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(symmetric_eigenvalues(m)?)
    }

    pub fn values(&self) -> &[f64] {
        &self.c
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    fn check(&self, lambda: &SpectrumVector) -> Result<()> {
        if self.dim() != lambda.dim() {
            return Err(Error::DimensionMismatch(lambda.dim(), self.dim()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

/// Sample mean of `exp(Σ c_i d_i)` over Haar conjugates.
pub fn hciz_mc(lambda: &SpectrumVector, c: &SourceMatrix, mc: &MonteCarlo) -> Result<Estimate> {
    c.check(lambda)?;
    let per_stream = mc.map_streams(|rng, count| {
        let (mut s, mut ss) = (0.0, 0.0);
        for _ in 0..count {
            let d = Group::Orthogonal.sample_diagonal(lambda.values(), rng);
            let v = c
                .values()
                .iter()
                .zip(&d)
                .map(|(a, b)| a * b)
                .sum::<f64>()
                .exp();
            s += v;
            ss += v * v;
        }
        (s, ss)
    });
    let (s, ss) = per_stream
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let m = mc.samples as f64;
    let mean = s / m;
    let var = if mc.samples > 1 {
        ((ss - m * mean * mean) / (m - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(Estimate {
        mean,
        stderr: (var / m).sqrt(),
    })
}

/// `Z_{Nλ}(e^{c_1/N}, …, e^{c_n/N}) / Z_{Nλ}(I_n)`.
///
/// `Z_{Nλ}` is homogeneous of degree `N`, so the largest `c_i` is factored
/// out as `exp(max c)`, keeping every evaluation point in `(0, 1]`.
pub fn hciz_zonal(lambda: &SpectrumVector, c: &SourceMatrix, grid: usize) -> Result<f64> {
    c.check(lambda)?;
    let n = lambda.dim();
    let top = lambda.grid_partition(grid)?;
    let shift = c.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let reduced: Vec<f64> = c.values().iter().map(|x| x - shift).collect();
    if reduced.iter().all(|&x| x == 0.0) {
        return Ok(shift.exp());
    }
    let z = jack_expansion_in(&top, &JackParameter::zonal(), Some(n));
    let normalized = z.scaled(&(BigRational::one() / evaluate_at_ones(&z, n)));
    let x: Vec<f64> = reduced.iter().map(|r| (r / grid as f64).exp()).collect();
    Ok(shift.exp() * evaluate(&normalized, &x))
}

/// `(1/2π) ∫_0^{2π} exp(c_1 d_1(θ) + c_2 d_2(θ)) dθ` with
/// `d_1 = λ_2 + (λ_1 − λ_2) cos²θ`, `d_2 = λ_1 + λ_2 − d_1`.
pub fn hciz_quadrature_2x2(lambda: &SpectrumVector, c: &SourceMatrix) -> Result<f64> {
    if lambda.dim() != 2 || c.dim() != 2 {
        return Err(Error::InvalidInput("quadrature oracle needs n = 2".into()));
    }
    let (l1, l2) = (lambda.values()[0], lambda.values()[1]);
    let (c1, c2) = (c.values()[0], c.values()[1]);
    if c1 == c2 || l1 == l2 {
        // the integrand is constant in θ
        return Ok((c1 * l2 + c2 * l1).exp());
    }
    let f = |t: f64| {
        let d1 = l2 + (l1 - l2) * t.cos().powi(2);
        let d2 = l1 + l2 - d1;
        (c1 * d1 + c2 * d2).exp()
    };
    Ok(adaptive_simpson(f, 0.0, 2.0 * PI, 1e-10, 16) / (2.0 * PI))
}

/// Adaptive Simpson over `panels` equal starting panels, to absolute
/// tolerance `tol` on the whole interval.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> f64 {
    // the array holds f at a, (a + b) / 2 and b
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        (a, b): (f64, f64),
        [fa, fm, fb]: [f64; 3],
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, (a, m), [fa, flm, fm], left, 0.5 * tol, depth - 1)
            + recurse(f, (m, b), [fm, frm, fb], right, 0.5 * tol, depth - 1)
    }

    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let (lo, hi) = (a + k as f64 * h, a + (k + 1) as f64 * h);
            let (flo, fmid, fhi) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = h / 6.0 * (flo + 4.0 * fmid + fhi);
            recurse(
                &f,
                (lo, hi),
                [flo, fmid, fhi],
                whole,
                tol / panels as f64,
                40,
            )
        })
        .sum()
}

/// Relative error helper used by convergence tables.
pub fn relative_error(estimate: f64, reference: f64) -> f64 {
    ((estimate - reference) / reference).abs()
}
