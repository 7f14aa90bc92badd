use nalgebra::DMatrix;
use num_rational::BigRational;
use zonal_core::hciz::{hciz_mc, hciz_quadrature_2x2, hciz_zonal, SourceMatrix};
use zonal_core::linearize::{empirical_sum_distribution, predicted_sum_distribution};
use zonal_core::measures::{
    arcsine_profile, bernstein_moment_distribution, compare, empirical_diagonal_distribution,
    one_row_coefficients, zonal_mass_distribution, DensityComparison,
};
use zonal_core::randmat::{Group, MonteCarlo, SpectrumVector};
use zonal_core::symfunc::{jack_expansion_in, JackParameter};
use zonal_core::Partition;

use crate::output::{float, rational, Report};
use crate::{CliError, Command, Figure, GroupArgs};

pub fn run(cmd: &Command, seed: u64, streams: usize, report: &mut Report) -> Result<(), CliError> {
    let mc = |samples: usize| -> Result<MonteCarlo, CliError> {
        if samples == 0 {
            return Err(CliError::Input("--samples must be at least 1".into()));
        }
        Ok(MonteCarlo::new(samples, seed, streams))
    };
    match cmd {
        Command::Zonal {
            partition,
            alpha,
            variables,
        } => zonal(partition, alpha, *variables, report),
        Command::Density {
            spectrum,
            samples,
            group,
        } => density(
            &spectrum.lambda,
            spectrum.grid,
            &mc(*samples)?,
            group,
            report,
        ),
        Command::Sumspec {
            spectrum,
            gamma,
            samples,
        } => sumspec(
            &spectrum.lambda,
            gamma,
            spectrum.grid,
            &mc(*samples)?,
            report,
        ),
        Command::Hciz {
            lambda,
            c,
            c_matrix,
            grid,
            doublings,
            samples,
        } => {
            let source = match c_matrix {
                Some(m) => SourceMatrix::from_symmetric(&parse_matrix(m)?)?,
                None => SourceMatrix::new(c.clone())?,
            };
            hciz(lambda, &source, grid, *doublings, &mc(*samples)?, report)
        }
        Command::Figures { fig, samples } => figures(*fig, &mc(*samples)?, report),
    }
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    let parts = s
        .split([',', '-'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad partition part {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Input(format!("bad rational {s:?}")))
}

fn parse_matrix(s: &str) -> Result<DMatrix<f64>, CliError> {
    let rows = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Input(format!("bad matrix entry {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input("--c-matrix must be square".into()));
    }
    Ok(DMatrix::from_row_iterator(n, n, rows.into_iter().flatten()))
}

/// Parses a spectrum and reports on stderr if it had to be sorted.
fn parse_spectrum(s: &str) -> Result<SpectrumVector, CliError> {
    let (v, resorted) = SpectrumVector::parse(s)?;
    if resorted {
        eprintln!("note: spectrum {s} sorted to decreasing order");
    }
    Ok(v)
}

fn summary(report: &mut Report, label: &str, c: &DensityComparison) -> Result<(), CliError> {
    report.comment(format_args!(
        "{label} tv={} sup_rel={} correlation={}",
        float(c.tv),
        float(c.sup_rel),
        float(c.correlation)
    ))?;
    Ok(())
}

fn zonal(
    partition: &str,
    alpha: &str,
    variables: Option<usize>,
    report: &mut Report,
) -> Result<(), CliError> {
    let lambda = parse_partition(partition)?;
    let alpha = JackParameter::new(parse_rational(alpha)?)?;
    let f = jack_expansion_in(&lambda, &alpha, variables);
    report.table(
        &["partition", "coefficient"],
        f.terms().map(|(p, c)| vec![p.to_string(), rational(c)]),
    )?;
    Ok(())
}

fn density(
    lambda: &str,
    grid: usize,
    mc: &MonteCarlo,
    group: &GroupArgs,
    report: &mut Report,
) -> Result<(), CliError> {
    let lambda = parse_spectrum(lambda)?;
    let group = match (group.unitary, group.special) {
        (false, false) => Group::Orthogonal,
        (false, true) => Group::SpecialOrthogonal,
        (true, false) => Group::Unitary,
        (true, true) => Group::SpecialUnitary,
    };
    let zonal = zonal_mass_distribution(&lambda, grid)?;
    let empirical = empirical_diagonal_distribution(&lambda, grid, mc, group);
    let bernstein = bernstein_moment_distribution(&lambda, grid, mc);
    report.comment(format_args!("group {group:?}"))?;
    report.table(
        &["eta", "zonal_mass", "empirical_mass", "bernstein_mass"],
        zonal.iter().map(|(eta, z)| {
            vec![
                eta.to_string(),
                float(z),
                float(empirical.mass_at(eta)),
                float(bernstein.mass_at(eta)),
            ]
        }),
    )?;
    summary(report, "empirical_vs_zonal", &compare(&empirical, &zonal)?)?;
    summary(report, "bernstein_vs_zonal", &compare(&bernstein, &zonal)?)?;
    Ok(())
}

fn sumspec(
    lambda: &str,
    gamma: &str,
    grid: usize,
    mc: &MonteCarlo,
    report: &mut Report,
) -> Result<(), CliError> {
    let lambda = parse_spectrum(lambda)?;
    let gamma = parse_spectrum(gamma)?;
    let pred = predicted_sum_distribution(&lambda, &gamma, grid)?;
    let empirical = empirical_sum_distribution(&lambda, &gamma, grid, mc)?;
    let negative = pred.table.negative();
    if !negative.is_empty() {
        eprintln!("warning: {} negative structure constants", negative.len());
        report.comment(format_args!(
            "negative structure constants: {}",
            negative.len()
        ))?;
    }
    report.table(
        &[
            "eta",
            "structure_constant",
            "predicted_mass",
            "empirical_mass",
        ],
        pred.distribution.iter().map(|(eta, p)| {
            vec![
                eta.to_string(),
                rational(&pred.table.coeff(&eta.sorted())),
                float(p),
                float(empirical.mass_at(eta)),
            ]
        }),
    )?;
    summary(
        report,
        "empirical_vs_predicted",
        &compare(&empirical, &pred.distribution)?,
    )?;
    Ok(())
}

/// Default grid: the smallest valid `N` of at least 8, doubled.
fn default_grids(lambda: &SpectrumVector, doublings: usize) -> Vec<usize> {
    let m = lambda.minimal_grid();
    let start = m * 8usize.div_ceil(m);
    (0..doublings).map(|j| start << j).collect()
}

fn hciz(
    lambda: &str,
    c: &SourceMatrix,
    grid: &[usize],
    doublings: usize,
    mc: &MonteCarlo,
    report: &mut Report,
) -> Result<(), CliError> {
    let lambda = parse_spectrum(lambda)?;
    let grids = if grid.is_empty() {
        default_grids(&lambda, doublings)
    } else {
        grid.to_vec()
    };
    let estimate = hciz_mc(&lambda, c, mc)?;
    let oracle = if lambda.dim() == 2 {
        Some(hciz_quadrature_2x2(&lambda, c)?)
    } else {
        None
    };
    let rows = grids
        .iter()
        .map(|&n| {
            Ok(vec![
                n.to_string(),
                float(hciz_zonal(&lambda, c, n)?),
                float(estimate.mean),
                float(estimate.stderr),
                oracle.map(float).unwrap_or_default(),
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    report.comment(format_args!(
        "source spectrum {}",
        c.values()
            .iter()
            .map(|&x| float(x))
            .collect::<Vec<_>>()
            .join(",")
    ))?;
    report.table(
        &["N", "zonal_estimate", "mc_estimate", "mc_stderr", "oracle"],
        rows,
    )?;
    Ok(())
}

fn scatter(
    lambda: &str,
    group: Group,
    mc: &MonteCarlo,
    report: &mut Report,
) -> Result<(), CliError> {
    let lambda = SpectrumVector::parse(lambda)?.0;
    let draws = mc.map_streams(|rng, count| {
        (0..count)
            .map(|_| group.sample_diagonal(lambda.values(), rng))
            .collect::<Vec<_>>()
    });
    report.table(
        &["d11", "d22"],
        draws
            .into_iter()
            .flatten()
            .map(|d| vec![float(d[0]), float(d[1])]),
    )?;
    Ok(())
}

fn figures(fig: Figure, mc: &MonteCarlo, report: &mut Report) -> Result<(), CliError> {
    match fig {
        Figure::DiagonalSo3 => scatter("2/3,1/3,0", Group::SpecialOrthogonal, mc, report),
        Figure::DiagonalSu3 => scatter("2/3,1/3,0", Group::SpecialUnitary, mc, report),
        Figure::RankOneSo3 => scatter("1,0,0", Group::SpecialOrthogonal, mc, report),
        Figure::OneRow40 => {
            report.table(
                &["eta", "coefficient"],
                one_row_coefficients(40)
                    .into_iter()
                    .map(|(eta, c)| vec![eta.to_string(), rational(&c)]),
            )?;
            Ok(())
        }
        Figure::Arcsine50 => {
            let p = arcsine_profile(50)?;
            report.table(
                &["eta", "zonal_normalized", "arcsine_normalized"],
                p.zonal
                    .iter()
                    .map(|(eta, z)| vec![eta.to_string(), float(z), float(p.arcsine.mass_at(eta))]),
            )?;
            summary(report, "zonal_vs_arcsine", &compare(&p.zonal, &p.arcsine)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_parsing() {
        assert_eq!(parse_partition("3,1,1").unwrap().parts(), &[3, 1, 1]);
        assert_eq!(parse_partition("2-1").unwrap().parts(), &[2, 1]);
        assert!(parse_partition("2,3").is_err());
        assert!(parse_partition("a").is_err());
    }

    #[test]
    fn matrix_parsing() {
        let m = parse_matrix("1,0.5;0.5,0").unwrap();
        assert_eq!(m[(0, 1)], 0.5);
        assert!(parse_matrix("1,2;3").is_err());
    }

    #[test]
    fn default_grid_sequence() {
        let l = SpectrumVector::parse("1,0").unwrap().0;
        assert_eq!(default_grids(&l, 4), vec![8, 16, 32, 64]);
        let l = SpectrumVector::parse("2/3,1/3,0").unwrap().0;
        assert_eq!(default_grids(&l, 3), vec![9, 18, 36]);
    }
}
