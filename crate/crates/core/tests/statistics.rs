//! Monte Carlo checks with fixed seeds. Tolerances are several standard
//! errors wide.

use zonal_core::hciz::{hciz_mc, hciz_quadrature_2x2, hciz_zonal, SourceMatrix};
use zonal_core::linearize::{empirical_sum_distribution, predicted_sum_distribution};
use zonal_core::measures::{
    bernstein_moment_distribution, compare, empirical_diagonal_distribution, majorization_check,
    zonal_mass_distribution,
};
use zonal_core::randmat::{haar_orthogonal, Group, MonteCarlo, RngStream, SpectrumVector};

fn spectrum(s: &str) -> SpectrumVector {
    SpectrumVector::parse(s).unwrap().0
}

#[test]
fn first_entry_second_moment() {
    for n in [2usize, 3, 5] {
        let m = 20_000;
        let mut rng = RngStream::new(11, n as u64);
        let xs: Vec<f64> = (0..m)
            .map(|_| haar_orthogonal(n, &mut rng)[(0, 0)].powi(2))
            .collect();
        let mean = xs.iter().sum::<f64>() / m as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
        let se = (var / m as f64).sqrt();
        assert!(
            (mean - 1.0 / n as f64).abs() < 4.0 * se,
            "n={n} mean={mean} se={se}"
        );
    }
}

#[test]
fn diagonal_law_is_permutation_equivariant() {
    // Reversing λ does not change the law of the diagonal, so the two
    // histograms agree up to sampling noise.
    let a = spectrum("2/3,1/3,0");
    let mc = MonteCarlo::new(20_000, 5, 4);
    let d1 = empirical_diagonal_distribution(&a, 6, &mc, Group::Orthogonal);
    let mc2 = MonteCarlo::new(20_000, 6, 4);
    let d2 = empirical_diagonal_distribution(&a, 6, &mc2, Group::Orthogonal);
    let c = compare(&d1, &d2).unwrap();
    assert!(c.tv < 0.03, "{c:?}");
    // symmetry of the law under swapping coordinates
    for (eta, m) in d1.iter() {
        let mut swapped = eta.entries().to_vec();
        swapped.swap(0, 2);
        let other = d1.mass_at(&zonal_core::Composition::new(swapped));
        assert!((m - other).abs() < 0.015, "{eta}: {m} vs {other}");
    }
}

#[test]
fn diagonals_are_majorized() {
    let lambda = spectrum("1/2,1/3,1/6");
    let mut rng = RngStream::new(3, 0);
    for group in [
        Group::Orthogonal,
        Group::SpecialOrthogonal,
        Group::Unitary,
        Group::SpecialUnitary,
    ] {
        for _ in 0..500 {
            let d = group.sample_diagonal(lambda.values(), &mut rng);
            assert!(majorization_check(&d, lambda.values(), 1e-9));
        }
    }
}

#[test]
fn rank_one_bernstein_matches_zonal_masses() {
    // For a rank-one λ the zonal masses are exactly the Bernstein moments.
    let lambda = spectrum("1,0,0");
    let mc = MonteCarlo::new(40_000, 9, 4);
    for grid in [4, 8] {
        let z = zonal_mass_distribution(&lambda, grid).unwrap();
        let b = bernstein_moment_distribution(&lambda, grid, &mc);
        let c = compare(&b, &z).unwrap();
        assert!(c.tv < 0.02, "N={grid}: {c:?}");
    }
}

#[test]
fn diagonal_histogram_approaches_zonal_masses() {
    let lambda = spectrum("2/3,1/3,0");
    let mc = MonteCarlo::new(30_000, 2, 8);
    let tv: Vec<f64> = [6, 12, 18]
        .iter()
        .map(|&n| {
            let z = zonal_mass_distribution(&lambda, n).unwrap();
            let e = empirical_diagonal_distribution(&lambda, n, &mc, Group::Orthogonal);
            compare(&e, &z).unwrap().tv
        })
        .collect();
    assert!(tv[0] > tv[1] && tv[1] > tv[2], "{tv:?}");
}

#[test]
fn rank_one_sum_spectrum_matches_prediction() {
    let lambda = spectrum("1,0");
    let mc = MonteCarlo::new(50_000, 4, 8);
    let pred = predicted_sum_distribution(&lambda, &lambda, 2).unwrap();
    let emp = empirical_sum_distribution(&lambda, &lambda, 2, &mc).unwrap();
    let c = compare(&emp, &pred.distribution).unwrap();
    assert!(c.tv <= 0.1, "{c:?}");
}

#[test]
fn hciz_estimates_converge_to_quadrature() {
    let lambda = spectrum("1,0");
    let c = SourceMatrix::new(vec![1.0, -0.5]).unwrap();
    let oracle = hciz_quadrature_2x2(&lambda, &c).unwrap();
    let errs: Vec<f64> = [4, 8, 16, 32]
        .iter()
        .map(|&n| (hciz_zonal(&lambda, &c, n).unwrap() - oracle).abs())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] <= w[0]), "{errs:?}");
    let est = hciz_mc(&lambda, &c, &MonteCarlo::new(50_000, 8, 8)).unwrap();
    assert!(
        (est.mean - oracle).abs() < 4.0 * est.stderr,
        "{est:?} vs {oracle}"
    );
}
