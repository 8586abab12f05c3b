//! The six experiments. Each reads its section of the config, writes CSV
//! artifacts under `<out>/<id>/` and returns a [`ReportRecord`].

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use fracspec_core::fourier::{
    cantor_fourier, lq_annulus_diagnostics, mollifier_sum, product_measure_fourier, spectral_csv, BumpFunction,
    CantorTransform, RadialField, SpectralValue, Spectrum,
};
use fracspec_core::fractal::{
    build_level, cantor_minkowski_ratio, level_starts_f64, limit_neighborhood_volume, product_neighborhood_bounds,
    CantorParams, EtaRule, ProductSet,
};
use fracspec_core::geometry::{box_dimension_from_counts, box_dimension_estimate, CoverCount, PointCloud, ScaleSweep};
use fracspec_core::rational::{self, Rational};
use fracspec_core::tauberian::{
    annihilator_residual, circulant_rank, span_dimension_oracle, spherical_zero_radii, verdict, DimensionInput,
    GridFunction, ZeroData,
};

use crate::config::Config;
use crate::error::{CliError, Context};
use crate::report::{ArtifactWriter, ReportRecord};
use fracspec_verify::workloads::{designed_radii_grid, span_instance, task_rng};

pub const EXPERIMENTS: [&str; 6] = ["construct", "dim", "minkowski", "fourier", "mollify", "tauberian"];

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub out: PathBuf,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: None,
            out: PathBuf::from("out"),
            jobs: 1,
        }
    }
}

struct Ctx<'a> {
    config: &'a Config,
    seed: Option<u64>,
    record: ReportRecord,
    writer: ArtifactWriter,
}

impl Ctx<'_> {
    fn seed(&self, why: &str) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::Config(format!("{why} needs a seed (--seed or `seed =`)")))
    }
}

/// Run experiment `id`. The seed comes from `opts` or the config key `seed`.
pub fn run(id: &str, config: &Config, opts: &RunOptions) -> Result<ReportRecord, CliError> {
    if !EXPERIMENTS.contains(&id) {
        return Err(CliError::UnknownExperiment(id.to_string()));
    }
    let seed = match opts.seed {
        Some(s) => Some(s),
        None if config.get("seed").is_some() => Some(config.int_or("seed", 0u64)?),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let mut ctx = Ctx {
        config,
        seed,
        record: ReportRecord::new(id, config, seed),
        writer: ArtifactWriter::create(&opts.out, id)?,
    };
    pool.install(|| match id {
        "construct" => construct(&mut ctx),
        "dim" => dim(&mut ctx),
        "minkowski" => minkowski(&mut ctx),
        "fourier" => fourier(&mut ctx),
        "mollify" => mollify(&mut ctx),
        _ => tauberian(&mut ctx),
    })?;
    let Ctx { mut record, writer, .. } = ctx;
    record.wall_time_s = start.elapsed().as_secs_f64();
    writer.finish(record)
}

/// Cantor parameters from the `cantor.` section; middle-thirds by default.
/// `cantor.random = true` samples the offsets from the run seed.
fn cantor_params(ctx: &Ctx<'_>) -> Result<CantorParams, CliError> {
    let section = ctx.config.section("cantor");
    if section.is_empty() {
        return Ok(CantorParams::middle_thirds());
    }
    if ctx.config.bool_or("cantor.random", false)? {
        let n = ctx.config.int_or("cantor.N", 2usize)?;
        let eta = ctx.config.rational_or("cantor.eta", rational::ratio(1, 3))?;
        let rule = match ctx.config.str_or("cantor.rule", "constant") {
            "constant" => EtaRule::Constant,
            "tapered" | "paper_default" => EtaRule::Tapered,
            other => return Err(CliError::Config(format!("cantor.rule = {other:?} is not supported with random offsets"))),
        };
        let seed = ctx.seed("random Cantor offsets")?;
        return CantorParams::random(n, eta, rule, seed).context("sampling Cantor offsets");
    }
    let mut section = section;
    section.remove("random");
    CantorParams::from_map(&section)
        .context("reading cantor parameters")?
        .validated()
        .context("validating cantor parameters")
}

fn construct(ctx: &mut Ctx<'_>) -> Result<(), CliError> {
    let params = cantor_params(ctx)?;
    let j = ctx.config.int_or("construct.level", 3usize)?;
    let report = params.validate();
    let level = build_level(&params, j).context("building level")?;
    ctx.writer.write("level.csv", &level.to_csv())?;
    ctx.writer.write("params.txt", &params.to_text())?;
    let r = &mut ctx.record;
    r.metric("beta", report.beta_computed, "dimensionless, log N / log(1/eta)");
    r.metric("level", j, "recursion depth");
    r.metric("member_count", level.len(), "intervals");
    r.metric("member_length", rational::format(&level.member_length), "exact p/q");
    r.metric("measure", rational::format(&level.intervals().measure()), "Lebesgue, exact p/q");
    r.flag("params_valid", report.is_valid());
    r.flag(
        "member_count_law",
        level.len() as u128 == (params.n_maps as u128).pow(j as u32),
    );
    Ok(())
}

fn sweep_from(config: &Config, eps_max: f64, ratio: f64, count: usize) -> Result<ScaleSweep, CliError> {
    ScaleSweep::new(
        config.f64_or("sweep.eps_max", eps_max)?,
        config.f64_or("sweep.ratio", ratio)?,
        config.int_or("sweep.count", count)?,
    )
    .context("scale sweep")
}

fn dim(ctx: &mut Ctx<'_>) -> Result<(), CliError> {
    let params = cantor_params(ctx)?;
    let fold = ctx.config.int_or("dim.product", 1usize)?;
    // Planar greedy counts undercount once eps nears the sample spacing,
    // so the product defaults stop two generations above it.
    let (level_default, eps_max, count) = if fold == 2 { (7, 1.0 / 9.0, 4) } else { (10, 1.0 / 27.0, 8) };
    let sample_level = ctx.config.int_or("dim.sample_level", level_default)?;
    let sweep = sweep_from(ctx.config, eps_max, 1.0 / 3.0, count)?;
    let cloud = match fold {
        1 => PointCloud::from_1d(&level_starts_f64(&params, sample_level).context("sampling level")?),
        2 => ProductSet::new(build_level(&params, sample_level).context("building level")?, 2)
            .and_then(|p| p.corners()),
        _ => return Err(CliError::Config("dim.product must be 1 or 2".into())),
    }
    .context("sample cloud")?;
    let counts = sweep
        .scales()
        .par_iter()
        .map(|&eps| cloud.cover_count(eps).map(|c| (eps, c)))
        .collect::<Result<Vec<_>, _>>()
        .context("cover counts")?;
    let fit = box_dimension_from_counts(&counts, fold).context("dimension fit")?;
    let mut csv = String::from("eps,count\n");
    for (e, c) in &counts {
        let _ = writeln!(csv, "{e:?},{c}");
    }
    ctx.writer.write("counts.csv", &csv)?;
    let (lo, hi) = fit.interval(fold);
    let expected = fold as f64 * CantorParams::dimension(params.n_maps, &params.eta);
    let spacing = rational::to_f64(&params.scale(sample_level).context("sample spacing")?);
    let margin = if fold == 2 { rational::to_f64(&params.eta).powi(-2) } else { 1.0 };
    let resolved = sweep.scales().iter().all(|&e| e >= spacing * margin * (1.0 - 1e-12));
    let r = &mut ctx.record;
    r.flag("sample_resolves_scales", resolved);
    r.metric("slope", fit.slope, "box dimension estimate");
    r.metric("slope_stderr", fit.slope_stderr, "least-squares standard error");
    r.metric("ci", [lo, hi], "slope +/- 2 stderr, clipped to [0, n]");
    r.metric("expected", expected, "n * log N / log(1/eta)");
    r.metric("points", cloud.len(), "sample points");
    r.flag("within_0.05", (fit.slope - expected).abs() <= 0.05);
    Ok(())
}

fn minkowski(ctx: &mut Ctx<'_>) -> Result<(), CliError> {
    let params = cantor_params(ctx)?;
    let m_min = ctx.config.int_or("minkowski.m_min", 2usize)?;
    let m_max = ctx.config.int_or("minkowski.m_max", 12usize)?;
    let fold = ctx.config.int_or("minkowski.product", 1usize)?;
    if m_min == 0 || m_max < m_min {
        return Err(CliError::Config("need 1 <= minkowski.m_min <= minkowski.m_max".into()));
    }
    let true_beta = CantorParams::dimension(params.n_maps, &params.eta);
    let beta = ctx.config.f64_or("minkowski.beta", true_beta)?;
    let eta = rational::to_f64(&params.eta);
    let mut ratios = Vec::new();
    let (lo_bound, hi_bound) = if fold == 1 { (1.0, 3.0) } else { (1.0, 9.0) };
    let mut csv = String::new();
    match fold {
        1 => {
            csv.push_str("m,eps,volume,ratio_exact,ratio\n");
            for m in m_min..=m_max {
                let eps = rational::pow(&params.eta, m as u32);
                let vol = limit_neighborhood_volume(&params, &eps, m).context("limit volume")?;
                let (exact, ratio) = if beta == true_beta {
                    let q = cantor_minkowski_ratio(&params, m).context("exact ratio")?;
                    (rational::format(&q), rational::to_f64(&q))
                } else {
                    (String::new(), vol.high * eta.powi(m as i32).powf(beta - 1.0))
                };
                let _ = writeln!(
                    csv,
                    "{m},{},{},{exact},{ratio:?}",
                    rational::format(&eps),
                    vol.exact.clone().unwrap_or_else(|| format!("{:?}", vol.high))
                );
                ratios.push(ratio);
            }
        }
        2 => {
            csv.push_str("m,eps,ratio_low,ratio_high\n");
            for m in m_min..=m_max {
                let eps = eta.powi(m as i32);
                let (low, high) = product_neighborhood_bounds(&params, eps, 2, m + 2).context("product bounds")?;
                let scale = eps.powf(2.0 * beta - 2.0);
                let _ = writeln!(csv, "{m},{eps:?},{:?},{:?}", low * scale, high * scale);
                ratios.push(low * scale);
                ratios.push(high * scale);
            }
        }
        _ => return Err(CliError::Config("minkowski.product must be 1 or 2".into())),
    }
    ctx.writer.write("ratios.csv", &csv)?;
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let r = &mut ctx.record;
    r.metric("beta", beta, "exponent used in eps^(n*beta - n)");
    r.metric("ratio_min", min, "eps^(n beta - n) |K^n(eps)|");
    r.metric("ratio_max", max, "eps^(n beta - n) |K^n(eps)|");
    r.flag("ratios_in_range", min >= lo_bound && max <= hi_bound);
    Ok(())
}

fn fourier(ctx: &mut Ctx<'_>) -> Result<(), CliError> {
    let params = cantor_params(ctx)?;
    let level = ctx.config.int_or("fourier.level", 40usize)?;
    let xi_max = ctx.config.f64_or("fourier.xi_max", 100.0)?;
    let samples = ctx.config.int_or("fourier.samples", 1001usize)?;
    let qs = ctx.config.f64_list_or("fourier.q", &[3.0, 6.0])?;
    let j0 = ctx.config.int_or("fourier.j0", 4i32)?;
    let j1 = ctx.config.int_or("fourier.j1", 10i32)?;
    let grid2 = ctx.config.int_or("fourier.product_samples", 0usize)?;
    if samples < 2 {
        return Err(CliError::Config("fourier.samples must be at least 2".into()));
    }
    let t = CantorTransform::new(&params, level).context("transform")?;
    let xs: Vec<f64> = (0..samples)
        .map(|i| -xi_max + 2.0 * xi_max * i as f64 / (samples - 1) as f64)
        .collect();
    let rows: Vec<(Vec<f64>, SpectralValue)> = xs.par_iter().map(|&x| (vec![x], t.eval(x))).collect();
    ctx.writer.write("spectral.csv", &spectral_csv(&rows))?;
    if grid2 >= 2 {
        let pts: Vec<Vec<f64>> = (0..grid2 * grid2)
            .map(|k| {
                let c = |i: usize| -xi_max + 2.0 * xi_max * i as f64 / (grid2 - 1) as f64;
                vec![c(k / grid2), c(k % grid2)]
            })
            .collect();
        let rows = pts
            .par_iter()
            .map(|p| product_measure_fourier(&params, level, p).map(|v| (p.clone(), v)))
            .collect::<Result<Vec<_>, _>>()
            .context("product transform")?;
        ctx.writer.write("product_spectral.csv", &spectral_csv(&rows))?;
    }
    let modulus = |x: &[f64]| t.eval(x[0]).value.norm();
    let mut csv = String::from("q,j,integral\n");
    let mut verdicts = Vec::new();
    for &q in &qs {
        let rep = lq_annulus_diagnostics(Spectrum::Callable(&modulus), 1, q, j0, j1).context("annulus diagnostics")?;
        for o in &rep.octaves {
            let _ = writeln!(csv, "{q:?},{},{:?}", o.j, o.integral);
        }
        verdicts.push(serde_json::json!({ "q": q, "trend": rep.trend, "verdict": rep.verdict }));
    }
    ctx.writer.write("annulus.csv", &csv)?;
    let at_pi = cantor_fourier(&params, level, std::f64::consts::PI).context("transform")?;
    let r = &mut ctx.record;
    r.metric("abs_at_pi", at_pi.value.norm(), "|nu_hat(pi)|, nu_hat(0) = 1");
    r.metric("truncation_bound_at_pi", at_pi.error_bound, "|xi| * L_J");
    r.metric("annulus", verdicts, "octave trend of integral |nu_hat|^q over 2^j <= |xi| <= 2^(j+1)");
    r.metric("offsets", params.points.iter().map(rational::format).collect::<Vec<_>>(), "exact p/q");
    Ok(())
}

fn mollify(ctx: &mut Ctx<'_>) -> Result<(), CliError> {
    let c = ctx.config;
    let n = c.int_or("mollify.n", 2usize)?;
    let alpha = c.f64_or("mollify.alpha", 1.0)?;
    let k_min = c.int_or("mollify.k_min", 2i32)?;
    let k_max = c.int_or("mollify.k_max", 8i32)?;
    let j_min = c.int_or("mollify.j_min", -12i32)?;
    let j_max = c.int_or("mollify.j_max", 10i32)?;
    if k_max < k_min {
        return Err(CliError::Config("need mollify.k_min <= mollify.k_max".into()));
    }
    let eps: Vec<f64> = (k_min..=k_max).map(|k| 2f64.powi(-k)).collect();
    let outer = 2f64.powi(j_max + 1) / eps[eps.len() - 1];
    let field = match c.str_or("mollify.field", "bessel") {
        "bessel" if n == 2 => RadialField::bessel_surrogate(outer),
        "bessel" => return Err(CliError::Config("the bessel surrogate field is planar (mollify.n = 2)".into())),
        "power" => {
            let s = c.f64_or("mollify.exponent", 0.8)?;
            let p = c.f64_or("mollify.p", 2.0 * n as f64 / alpha)?;
            RadialField::new(n, p, 1.0, outer, move |r| r.powf(-s))
        }
        other => return Err(CliError::Config(format!("unknown mollify.field {other:?}"))),
    }
    .context("radial field")?;
    let chi = BumpFunction::new(n).context("bump function")?;
    let sweep = mollifier_sum(&field, &chi, alpha, &eps, j_min, j_max).context("mollifier sweep")?;
    ctx.writer.write("mollifier.csv", &sweep.to_csv())?;
    ctx.writer
        .write("summary.json", &serde_json::to_string_pretty(&sweep.summary_json()).expect("json"))?;
    let r = &mut ctx.record;
    r.metric("sums", &sweep.sums, "sum_j a_j b_j^eps per eps");
    r.metric("sum_ratio", sweep.flags.sum_ratio, "final / initial");
    r.metric("holder_constant", sweep.holder_constant, "C in b_j^eps <= C ||f||_p^2");
    r.flag("sum_ratio_le_0.1", sweep.flags.sum_ratio <= 0.1);
    r.flag("sums_non_increasing", sweep.flags.sums_non_increasing);
    r.flag("fixed_j_monotone", sweep.flags.fixed_j_monotone);
    r.flag("holder_bound", sweep.flags.bound_holds);
    Ok(())
}

fn tauberian(ctx: &mut Ctx<'_>) -> Result<(), CliError> {
    let m = ctx.config.int_or("tauberian.m", 16usize)?;
    let trials = ctx.config.int_or("tauberian.trials", 100usize)?;
    let grid = ctx.config.int_or("tauberian.radial_m", 128usize)?;
    let seed = ctx.seed("random span instances")?;
    if m < 2 {
        return Err(CliError::Config("tauberian.m must be at least 2".into()));
    }
    let rows = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (f, _) = span_instance(&mut task_rng(seed, t as u64), m);
            let g = GridFunction::from_real(m, 1, 1.0, &f.iter().map(|&v| v as f64).collect::<Vec<_>>())?;
            let oracle = span_dimension_oracle(&g, None)?;
            let residual = annihilator_residual(&g, None)?;
            Ok((t, oracle, circulant_rank(&f), residual.residual))
        })
        .collect::<Result<Vec<_>, fracspec_core::Error>>()
        .context("span trials")?;
    let mut csv = String::from("trial,m,oracle,rank,residual\n");
    for (t, o, k, res) in &rows {
        let _ = writeln!(csv, "{t},{m},{o},{k},{res:?}");
    }
    ctx.writer.write("span.csv", &csv)?;
    let matches = rows.iter().filter(|r| r.1 == r.2).count();

    // Radii round trip: level-4 middle-thirds points stretched over the lattice.
    let starts = level_starts_f64(&CantorParams::middle_thirds(), 4).context("designed radii")?;
    let span = grid as f64 * 0.35;
    let designed: Vec<f64> = starts.iter().map(|x| (grid as f64 * 0.1 + span * x).floor() + 0.5).collect();
    let f = designed_radii_grid(grid, &designed).context("designed grid")?;
    let found = spherical_zero_radii(&f, None, 1.0).context("spherical radii")?;
    let recalled = designed.iter().filter(|r| found.radii.contains(r)).count();
    let false_radii = found.radii.iter().filter(|r| !designed.contains(r)).count();
    let mut csv = String::from("radius,designed,found\n");
    let mut all: Vec<f64> = designed.iter().chain(&found.radii).cloned().collect();
    all.sort_by(f64::total_cmp);
    all.dedup();
    for r in &all {
        let _ = writeln!(csv, "{r:?},{},{}", designed.contains(r), found.radii.contains(r));
    }
    ctx.writer.write("radii.csv", &csv)?;

    // Verdicts: a finite radii set has dimension 0; the product Cantor zero
    // set gets its dimension from a box-counting fit.
    let radial = verdict(ZeroData::Radial(&found), DimensionInput::exact(0.0), 2).context("radial verdict")?;
    let level = build_level(&CantorParams::middle_thirds(), 7).context("product level")?;
    let cloud = ProductSet::new(level, 2).and_then(|p| p.corners()).context("product cloud")?;
    let fit = box_dimension_estimate(&cloud, &ScaleSweep::new(1.0 / 9.0, 1.0 / 3.0, 4).context("sweep")?)
        .context("product dimension")?;
    let zeros = fracspec_core::tauberian::ZeroSet {
        indices: vec![],
        signed: vec![],
        tol: found.tol,
        max_modulus: 0.0,
    };
    let full = verdict(ZeroData::Full(&zeros), DimensionInput::from_fit(&fit, 2), 2).context("full verdict")?;
    ctx.writer.write(
        "verdict.json",
        &serde_json::to_string_pretty(&serde_json::json!({ "radial": radial, "full": full })).expect("json"),
    )?;
    let r = &mut ctx.record;
    r.metric("span_trials", trials, "instances on Z_m");
    r.metric("span_matches", matches, "oracle == exact circulant rank");
    r.metric("radii_recall", recalled as f64 / designed.len() as f64, "fraction of designed radii found");
    r.metric("false_radii", false_radii, "found radii not designed");
    r.metric("product_alpha", fit.slope, "box dimension of K x K sample");
    r.flag("span_oracle_exact", matches == trials);
    r.flag("radii_recall_ge_0.9", recalled * 10 >= designed.len() * 9);
    r.flag("no_false_radii", false_radii == 0);
    Ok(())
}

/// Exact `|K(ε)|` of a level union, exposed for tests.
pub fn level_volume(params: &CantorParams, j: usize, eps: &Rational) -> Result<Rational, CliError> {
    build_level(params, j)
        .and_then(|l| l.intervals().neighborhood_volume(eps))
        .context("level volume")
}
