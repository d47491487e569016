//! Table and figure data bundles.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use qsurf_core::analysis::{
    asymptotic_asym_approx, asymptotic_slope_approx, logical_error_alpha_form, logical_error_beta, logical_error_beta_z,
    logical_error_bounded,
};
use qsurf_core::enumeration::{beta_table, DEFAULT_BUDGET};
use qsurf_core::montecarlo::{exact_logical_error_rate, point_seed, sweep};
use qsurf_core::{
    build_surface_code, build_xzzx_code, BetaTable, BetaVector, Bias, ChannelModel, CodeParams, Decoder, DecoderKind,
    SurfaceCode,
};
use serde::Serialize;

use crate::args::{CodeSpec, Grid};
use crate::commands::{compute_threshold, enumerated_betas, write_table1_block, ThresholdResult};
use crate::output::{csv_writer, write_json, Provenance};
use crate::plot::{gnuplot_script, BundleRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Table1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    All,
}

#[derive(Args, Debug, Serialize)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Monte Carlo trials per simulated point.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Most decodes allowed for one enumerated weight row.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

/// Reference beta sets for the [[13,1,3]] depolarizing and [[23,1,3/5]]
/// phase-flip approximation curves.
const REF_BETAS_13: [f64; 5] = [0.76, 0.48, 0.48, 0.46, 0.5];
const REF_BETAS_Z_23: [f64; 5] = [0.92, 0.76, 0.59, 0.52, 0.49];

#[derive(Serialize)]
struct Tables {
    tables: Vec<BetaTable>,
}

#[derive(Serialize)]
struct Thresholds {
    thresholds: Vec<ThresholdResult>,
}

fn curve_grid() -> Vec<f64> {
    "log:1e-3:0.3:60".parse::<Grid>().expect("static grid").0
}

fn mwpm(code: &SurfaceCode) -> Result<Decoder> {
    Ok(Decoder::new(code, DecoderKind::Mwpm, None)?)
}

pub fn reproduce(a: &ReproduceArgs) -> Result<()> {
    fs::create_dir_all(&a.out_dir).with_context(|| format!("cannot create {}", a.out_dir.display()))?;
    let targets = match a.target {
        Target::All => vec![Target::Table1, Target::Fig2, Target::Fig3, Target::Fig4, Target::Fig5],
        t => vec![t],
    };
    for t in targets {
        match t {
            Target::Table1 => table1(a)?,
            Target::Fig2 => bundle(a, "fig2", &fig2(a)?, false)?,
            Target::Fig3 => {
                let (rows, thresholds) = fig3(a)?;
                let doc = Thresholds { thresholds };
                write_json(Some(&a.out_dir.join("fig3_thresholds.json")), Provenance::new("reproduce", a), &doc)?;
                bundle(a, "fig3", &rows, true)?;
            }
            Target::Fig4 => bundle(a, "fig4", &fig4(a)?, false)?,
            Target::Fig5 => bundle(a, "fig5", &fig5()?, false)?,
            Target::All => unreachable!(),
        }
    }
    Ok(())
}

fn bundle(a: &ReproduceArgs, name: &str, rows: &[BundleRow], uncoded: bool) -> Result<()> {
    let csv_path = a.out_dir.join(format!("{name}.csv"));
    let mut w = csv_writer(Some(&csv_path), Provenance::new("reproduce", a))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    let (script, warnings) = gnuplot_script(rows, &format!("{name}.csv"), uncoded);
    for warning in warnings {
        eprintln!("warning: {name}: {warning}");
    }
    write_text(&a.out_dir.join(format!("{name}.gp")), &script)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn table1(a: &ReproduceArgs) -> Result<()> {
    let jobs: [(usize, usize, &[usize]); 3] = [(3, 3, &[2, 3]), (3, 5, &[2, 3]), (5, 5, &[3])];
    let mut tables: Vec<BetaTable> = Vec::new();
    for (dx, dz, weights) in jobs {
        let code = build_surface_code(dx, dz)?;
        tables.push(beta_table(&code, &mwpm(&code)?, weights.iter().copied(), a.budget)?);
    }
    let mut w = csv_writer(Some(&a.out_dir.join("table1.csv")), Provenance::new("reproduce", a))?;
    for weight in [2, 3] {
        let rows: Vec<(String, _)> =
            tables.iter().filter_map(|t| t.row(weight).map(|r| (t.code.clone(), r))).collect();
        write_table1_block(&mut w, weight, &rows)?;
    }
    w.flush()?;
    write_json(Some(&a.out_dir.join("table1.json")), Provenance::new("reproduce", a), &Tables { tables })
}

fn sim_rows(
    a: &ReproduceArgs,
    series: &str,
    code: &SurfaceCode,
    grid: &[f64],
    bias: Bias,
    index: u64,
) -> Result<Vec<BundleRow>> {
    let points = sweep(code, DecoderKind::Mwpm, grid, bias, a.trials, point_seed(a.seed, index))?;
    Ok(points.iter().map(|e| BundleRow::sim(series, e.rho, e.p_hat, e.ci_lo, e.ci_hi)).collect())
}

fn curve_rows(series: &str, f: impl Fn(f64) -> qsurf_core::Result<f64>) -> Result<Vec<BundleRow>> {
    curve_grid().into_iter().map(|rho| Ok(BundleRow::curve(series, rho, f(rho)?))).collect()
}

fn fig2(a: &ReproduceArgs) -> Result<Vec<BundleRow>> {
    let grid = [0.01, 0.015, 0.023, 0.035, 0.047, 0.07, 0.1];
    let mut rows = Vec::new();

    let c13 = build_surface_code(3, 3)?;
    let p13 = CodeParams::from_code(&c13);
    rows.extend(sim_rows(a, "[[13,1,3]] depolarizing MWPM", &c13, &grid, Bias::depolarizing(), 0)?);
    let reference = BetaVector::new(2, REF_BETAS_13.to_vec())?;
    rows.extend(curve_rows("[[13,1,3]] beta form, reference betas", |r| {
        logical_error_beta(13, p13.t, r, &reference)
    })?);
    let enumerated = enumerated_betas(CodeSpec { d_x: 3, d_z: 3 }, false, 6, a.budget)?;
    rows.extend(curve_rows("[[13,1,3]] beta form, enumerated betas", |r| {
        logical_error_beta(13, p13.t, r, &enumerated)
    })?);
    rows.extend(curve_rows("[[13,1,3]] asymptote", |r| {
        Ok(asymptotic_slope_approx(13, p13.t, r, Some(enumerated.beta(2))))
    })?);
    rows.extend(curve_rows("[[13,1,3]] bounded distance", |r| logical_error_bounded(13, p13.t, r))?);

    let c23 = build_surface_code(3, 5)?;
    let p23 = CodeParams::from_code(&c23);
    rows.extend(sim_rows(a, "[[23,1,3/5]] phase-flip MWPM", &c23, &grid, Bias::Infinite, 1)?);
    let reference = BetaVector::new(3, REF_BETAS_Z_23.to_vec())?;
    rows.extend(curve_rows("[[23,1,3/5]] beta-Z form, reference betas", |r| {
        logical_error_beta_z(23, p23.t_z, r, &reference)
    })?);
    let enumerated = enumerated_betas(CodeSpec { d_x: 3, d_z: 5 }, true, 7, a.budget)?;
    rows.extend(curve_rows("[[23,1,3/5]] beta-Z form, enumerated betas", |r| {
        logical_error_beta_z(23, p23.t_z, r, &enumerated)
    })?);
    rows.extend(curve_rows("[[23,1,3/5]] bounded distance", |r| logical_error_bounded(23, p23.t_z, r))?);
    Ok(rows)
}

fn fig3(a: &ReproduceArgs) -> Result<(Vec<BundleRow>, Vec<ThresholdResult>)> {
    let jobs = [
        ("[[13,1,3]] depolarizing", CodeSpec { d_x: 3, d_z: 3 }, false, 6),
        ("[[41,1,5]] depolarizing", CodeSpec { d_x: 5, d_z: 5 }, false, 3),
        ("[[23,1,3/5]] phase-flip", CodeSpec { d_x: 3, d_z: 5 }, true, 7),
    ];
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for (name, spec, phase_flip, max_weight) in jobs {
        let betas = enumerated_betas(spec, phase_flip, max_weight, a.budget)?;
        for gamma in [0.0, 1.0] {
            let r = compute_threshold(spec, phase_flip, gamma, betas.clone(), "enumerated with MWPM".into())?;
            if let Some(x) = r.exact {
                rows.push(BundleRow::threshold(format!("{name} gamma={gamma} exact"), x));
            }
            if let Some(x) = r.approx {
                rows.push(BundleRow::threshold(format!("{name} gamma={gamma} approx"), x));
            }
            results.push(r);
        }
        let p = results.last().expect("pushed above");
        let (n, t) = (p.n, p.t);
        rows.extend(curve_rows(name, |r| {
            if phase_flip {
                logical_error_beta_z(n, t, r, &betas)
            } else {
                logical_error_beta(n, t, r, &betas)
            }
        })?);
    }
    rows.extend(curve_rows("uncoded / 10", |r| Ok(r / 10.0))?);
    Ok((rows, results))
}

fn fig4(a: &ReproduceArgs) -> Result<Vec<BundleRow>> {
    let grid = [0.02, 0.04, 0.06, 0.08, 0.1];
    let shapes = [(3, 3), (5, 5), (3, 5), (3, 7)];
    let mut rows = Vec::new();
    let mut index = 0;
    for a_val in [1.0, 10.0] {
        for (dx, dz) in shapes {
            let code = build_surface_code(dx, dz)?;
            let series = format!("{} MWPM A={a_val}", code.label());
            rows.extend(sim_rows(a, &series, &code, &grid, Bias::Finite(a_val), index)?);
            index += 1;
        }
    }
    let c23 = build_surface_code(3, 5)?;
    let p = CodeParams::from_code(&c23);
    rows.extend(sim_rows(a, "[[23,1,3/5]] MWPM A=100", &c23, &grid, Bias::Finite(100.0), index)?);
    for a_val in [1.0, 10.0, 100.0] {
        let bias = Bias::Finite(a_val);
        rows.extend(curve_rows(&format!("[[23,1,3/5]] bound A={a_val}"), |r| {
            logical_error_alpha_form(p.n, p.e_g, p.e_z, r, bias)
        })?);
        rows.extend(curve_rows(&format!("[[23,1,3/5]] asymptote A={a_val}"), |r| {
            asymptotic_asym_approx(p.n, p.e_g, p.e_z, r, bias)
        })?);
    }
    Ok(rows)
}

fn fig5() -> Result<Vec<BundleRow>> {
    let grid = [0.02, 0.05, 0.1, 0.15, 0.2, 0.3];
    let css = build_surface_code(3, 3)?;
    let xzzx = build_xzzx_code(3, 3)?;
    let curves: [(&str, &SurfaceCode, DecoderKind); 3] = [
        ("surface MWPM", &css, DecoderKind::Mwpm),
        ("surface ML (exact)", &css, DecoderKind::Ml),
        ("XZZX ML (exact)", &xzzx, DecoderKind::Ml),
    ];
    let mut rows = Vec::new();
    for bias in [Bias::depolarizing(), Bias::Infinite] {
        for (name, code, kind) in curves {
            let series = format!("{name} A={bias}");
            for rho in grid {
                let ch = ChannelModel::from_bias(rho, bias)?;
                let dec = Decoder::new(code, kind, Some(&ch))?;
                rows.push(BundleRow::curve(series.clone(), rho, exact_logical_error_rate(code, &dec, &ch)?));
            }
        }
    }
    Ok(rows)
}
