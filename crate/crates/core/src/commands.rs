//! Subcommand implementations behind the `cowalk` binary.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use crate::blochsolve::{spectrum_sweep, ClassifyThresholds, SpectrumRow, StateLabel};
use crate::config::{Defaults, Format, Overrides, RunConfig};
use crate::dynamics::{
    boundary_weight, composite_times, cone_speed, minor_diagonal, prepare_initial, walk_series,
    ConeFit, CorrelationMatrix, Propagator, Space, WalkFrame,
};
use crate::effective::{compare_bound_band, evolve_effective, EffectiveModel};
use crate::error::{Error, Result};
use crate::io::{self, fmt_f64};
use crate::lattice::{LatticeSpec, Statistics};
use crate::model::waveguide_layout;

/// What a command wrote, plus a one-line summary for the terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub message: String,
}

fn prepare_dir(cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out)?;
    Ok(())
}

fn thresholds(cfg: &RunConfig) -> ClassifyThresholds {
    ClassifyThresholds {
        tail: cfg.tail,
        ..ClassifyThresholds::default()
    }
}

pub fn run_spectrum(o: &Overrides) -> Result<RunSummary> {
    let cfg = RunConfig::resolve(
        o,
        Defaults {
            sites: 21,
            interaction: -4.0,
            statistics: Statistics::Boson,
            t_end: 4.0,
            n_samples: 41,
        },
    )?;
    let spec = cfg.spec()?;
    prepare_dir(&cfg)?;
    let table = spectrum_sweep(&spec, &thresholds(&cfg));
    let rows: Vec<SpectrumRow> = table
        .rows
        .iter()
        .map(|r| SpectrumRow {
            energy: cfg.energy_out(r.energy),
            ..*r
        })
        .collect();
    let path = match cfg.format {
        Format::Csv => {
            let p = cfg.out.join("spectrum.csv");
            io::write_spectrum_csv(&p, &rows)?;
            p
        }
        Format::Json => {
            let p = cfg.out.join("spectrum.json");
            io::write_json(&p, &rows)?;
            p
        }
    };
    let files = vec![path];
    io::write_meta(&cfg.out, "spectrum", &cfg, &files)?;
    let gap = table
        .band_gap()
        .map(|g| format!("{:.6}", cfg.energy_out(g)))
        .unwrap_or_else(|| "n/a".into());
    Ok(RunSummary {
        message: format!(
            "{} states, {} bound, {} ambiguous, band gap {gap}",
            rows.len(),
            table.count(StateLabel::Bound),
            table.count(StateLabel::Ambiguous)
        ),
        files,
    })
}

fn frames_json(frames: &[&CorrelationMatrix]) -> Vec<Vec<Vec<f64>>> {
    frames
        .iter()
        .map(|g| {
            let n = g.entries.nrows();
            (0..n).map(|a| (0..n).map(|b| g.entries[(a, b)]).collect()).collect()
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct WalkJson {
    space: Space,
    times: Vec<f64>,
    gamma: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Serialize)]
struct WalkRunMeta {
    statistics: Statistics,
    #[serde(rename = "V")]
    interaction: f64,
    coupling_ratio: f64,
    max_boundary_weight: f64,
}

fn float_tag(x: f64) -> String {
    format!("{x}")
}

/// Statistics and interactions a walk run covers: the flag values when set,
/// otherwise all statistics at `|V/2J|` in {0, 0.5, 40}.
fn walk_plan(o: &Overrides, hopping: f64) -> Vec<(Statistics, f64)> {
    let stats: Vec<Statistics> = match o.stats {
        Some(s) => vec![s.into()],
        None => Statistics::ALL.to_vec(),
    };
    let vs: Vec<f64> = match o.interaction {
        Some(v) => vec![v],
        // adding 0.0 turns -0.0 into 0.0 for the file names
        None => [0.0, 0.5, 40.0].iter().map(|r| -2.0 * hopping * r + 0.0).collect(),
    };
    stats
        .iter()
        .flat_map(|&s| vs.iter().map(move |&v| (s, v)))
        .collect()
}

pub fn run_walk(o: &Overrides) -> Result<RunSummary> {
    let base = RunConfig::resolve(
        o,
        Defaults {
            sites: 21,
            interaction: 0.0,
            statistics: Statistics::Boson,
            t_end: 4.0,
            n_samples: 41,
        },
    )?;
    prepare_dir(&base)?;
    let times = base.times();
    let mut files = Vec::new();
    let mut runs = Vec::new();
    for (stats, v) in walk_plan(o, base.hopping) {
        let spec = LatticeSpec::with_sites(base.sites, base.hopping, v, stats)?;
        let prop = Propagator::new(&spec);
        let (l1, l2) = base.initial;
        let initial = prepare_initial(prop.basis(), l1, l2)?;
        let start = (spec.site_index(l1)?, spec.site_index(l2)?);
        let frames: Vec<WalkFrame> = walk_series(&prop, &initial, &times)?;

        let mut worst: f64 = 0.0;
        for f in &frames {
            let w = boundary_weight(&f.position, start);
            worst = worst.max(w);
            if w > base.theta && !base.allow_boundary {
                return Err(Error::BoundaryContamination { time: f.time, weight: w });
            }
        }

        let stem = format!("walk_{}_V{}", stats.as_str(), float_tag(v));
        for space in [Space::Position, Space::Momentum] {
            let mats: Vec<&CorrelationMatrix> = frames
                .iter()
                .map(|f| match space {
                    Space::Position => &f.position,
                    Space::Momentum => &f.momentum,
                })
                .collect();
            let name = match space {
                Space::Position => "position",
                Space::Momentum => "momentum",
            };
            let path = match base.format {
                Format::Csv => {
                    let p = base.out.join(format!("{stem}_{name}.csv"));
                    io::write_correlation_csv(&p, space, &mats)?;
                    p
                }
                Format::Json => {
                    let p = base.out.join(format!("{stem}_{name}.json"));
                    let doc = WalkJson {
                        space,
                        times: times.clone(),
                        gamma: frames_json(&mats),
                    };
                    io::write_json(&p, &doc)?;
                    p
                }
            };
            files.push(path);
        }
        runs.push(WalkRunMeta {
            statistics: stats,
            interaction: v,
            coupling_ratio: spec.coupling_ratio(),
            max_boundary_weight: worst,
        });
    }

    #[derive(Serialize)]
    struct WalkMeta<'a> {
        #[serde(flatten)]
        config: &'a RunConfig,
        runs: &'a [WalkRunMeta],
    }
    io::write_meta(
        &base.out,
        "walk",
        &WalkMeta {
            config: &base,
            runs: &runs,
        },
        &files,
    )?;
    Ok(RunSummary {
        message: format!("{} runs, {} samples each", runs.len(), times.len()),
        files,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CowalkRun {
    pub statistics: Statistics,
    #[serde(rename = "Lt")]
    pub sites: usize,
    pub j_eff: f64,
    pub mu_eff: f64,
    pub speed: f64,
    pub effective_speed: f64,
    pub fit: ConeFit,
    /// Max over the window of the L1 distance between the bound-band
    /// projected `Gamma_{q,q+1}` and the effective composite distribution.
    pub l1_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CowalkReport {
    #[serde(rename = "J")]
    pub hopping: f64,
    #[serde(rename = "V")]
    pub interaction: f64,
    pub coupling_ratio: f64,
    pub theta: f64,
    pub runs: Vec<CowalkRun>,
    pub speed_ratio_boson_fermion: Option<f64>,
    pub fermion_hcb_relative_difference: Option<f64>,
}

/// Full and effective co-walking dynamics for one statistics.
pub fn cowalk_run(spec: &LatticeSpec, theta: f64, tail: f64, samples: usize) -> Result<CowalkRun> {
    let prop = Propagator::new(spec);
    let initial = prepare_initial(prop.basis(), 0, 1)?;
    let origin = spec.site_index(0)?;
    let times = composite_times(spec, samples)?;
    let states = prop.evolve_many(&initial, &times)?;
    let series: Vec<Vec<f64>> = states
        .iter()
        .map(|s| minor_diagonal(&crate::dynamics::correlation_position(s)))
        .collect();
    let fit = cone_speed(&times, &series, origin, theta)?;

    let model = EffectiveModel::new(spec)?;
    let eff = evolve_effective(&model, origin, &times);
    let effective_speed = cone_speed(&times, &eff, origin, theta)?.speed;

    // project onto the exact bound band before comparing
    let table = spectrum_sweep(spec, &ClassifyThresholds { tail, ..Default::default() });
    let bound: Vec<f64> = table
        .rows
        .iter()
        .filter(|r| r.label == StateLabel::Bound)
        .map(|r| r.energy)
        .collect();
    if bound.len() != spec.sites() {
        return Err(Error::NoBoundState {
            k: f64::NAN,
            v_abs: spec.interaction().abs(),
            jk_abs: 2.0 * spec.hopping(),
        });
    }
    let margin = 1e-9 * spec.interaction().abs().max(spec.hopping());
    let lo = bound.iter().copied().fold(f64::INFINITY, f64::min) - margin;
    let hi = bound.iter().copied().fold(f64::NEG_INFINITY, f64::max) + margin;
    let projected = prop.project_energy_window(&initial, lo, hi)?.normalized();
    let projected_states = prop.evolve_many(&projected, &times)?;
    let mut l1_distance: f64 = 0.0;
    for (psi, p_eff) in projected_states.iter().zip(&eff) {
        let md = minor_diagonal(&crate::dynamics::correlation_position(psi));
        let total: f64 = md.iter().sum();
        let d: f64 = md.iter().zip(p_eff).map(|(a, b)| (a / total - b).abs()).sum();
        l1_distance = l1_distance.max(d);
    }

    Ok(CowalkRun {
        statistics: spec.statistics(),
        sites: spec.sites(),
        j_eff: model.j_eff,
        mu_eff: model.mu_eff,
        speed: fit.speed,
        effective_speed,
        fit,
        l1_distance,
    })
}

pub fn run_cowalk(o: &Overrides) -> Result<RunSummary> {
    let cfg = RunConfig::resolve(
        o,
        Defaults {
            sites: 21,
            interaction: -80.0,
            statistics: Statistics::Boson,
            t_end: 4.0,
            n_samples: 801,
        },
    )?;
    prepare_dir(&cfg)?;
    let stats: Vec<Statistics> = match o.stats {
        Some(s) => vec![s.into()],
        None => Statistics::ALL.to_vec(),
    };
    let mut runs = Vec::new();
    for s in stats {
        // the faster boson front needs the larger ring by default
        let sites = o.sites.unwrap_or(if s == Statistics::Boson { 41 } else { 21 });
        let spec = LatticeSpec::with_sites(sites, cfg.hopping, cfg.interaction, s)?;
        runs.push(cowalk_run(&spec, cfg.theta, cfg.tail, cfg.n_samples)?);
    }
    let speed = |s: Statistics| runs.iter().find(|r| r.statistics == s).map(|r| r.speed);
    let report = CowalkReport {
        hopping: cfg.hopping,
        interaction: cfg.interaction,
        coupling_ratio: (cfg.interaction / (2.0 * cfg.hopping)).abs(),
        theta: cfg.theta,
        speed_ratio_boson_fermion: speed(Statistics::Boson)
            .zip(speed(Statistics::Fermion))
            .map(|(b, f)| b / f),
        fermion_hcb_relative_difference: speed(Statistics::Fermion)
            .zip(speed(Statistics::HardCoreBoson))
            .map(|(f, h)| (f - h).abs() / f),
        runs,
    };
    let path = cfg.out.join("cowalk.json");
    io::write_json(&path, &report)?;
    let files = vec![path];
    io::write_meta(&cfg.out, "cowalk", &cfg, &files)?;
    let message = match report.speed_ratio_boson_fermion {
        Some(r) => format!("speed ratio boson/fermion {r:.4}"),
        None => format!("speed {:.6}", report.runs[0].speed),
    };
    Ok(RunSummary { files, message })
}

pub fn run_effective(o: &Overrides) -> Result<RunSummary> {
    let cfg = RunConfig::resolve(
        o,
        Defaults {
            sites: 21,
            interaction: -80.0,
            statistics: Statistics::Boson,
            t_end: 130.0,
            n_samples: 131,
        },
    )?;
    let spec = cfg.spec()?;
    prepare_dir(&cfg)?;
    let model = EffectiveModel::new(&spec)?;
    let origin = spec.site_index(cfg.initial.0)?;
    let times = cfg.times();
    let probs = evolve_effective(&model, origin, &times);
    let comparison = compare_bound_band(&spec)?;
    let l = spec.half_width() as i64;

    let (dyn_path, spec_path) = match cfg.format {
        Format::Csv => {
            let dp = cfg.out.join("effective_dynamics.csv");
            io::write_csv(
                &dp,
                &["q", "t", "prob"],
                times.iter().zip(&probs).flat_map(|(&t, p)| {
                    p.iter()
                        .enumerate()
                        .map(move |(q, &x)| vec![(q as i64 - l).to_string(), fmt_f64(t), fmt_f64(x)])
                }),
            )?;
            let sp = cfg.out.join("effective_spectrum.csv");
            io::write_csv(
                &sp,
                &["K", "E_eff", "E_exact", "abs_err"],
                comparison.iter().map(|c| {
                    vec![
                        fmt_f64(c.momentum),
                        fmt_f64(cfg.energy_out(c.e_eff)),
                        fmt_f64(cfg.energy_out(c.e_exact)),
                        fmt_f64(cfg.energy_out(c.abs_err)),
                    ]
                }),
            )?;
            (dp, sp)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Dyn<'a> {
                times: &'a [f64],
                prob: &'a [Vec<f64>],
            }
            let dp = cfg.out.join("effective_dynamics.json");
            io::write_json(&dp, &Dyn { times: &times, prob: &probs })?;
            let sp = cfg.out.join("effective_spectrum.json");
            let rows: Vec<_> = comparison
                .iter()
                .map(|c| crate::effective::SpectrumComparison {
                    e_eff: cfg.energy_out(c.e_eff),
                    e_exact: cfg.energy_out(c.e_exact),
                    abs_err: cfg.energy_out(c.abs_err),
                    ..*c
                })
                .collect();
            io::write_json(&sp, &rows)?;
            (dp, sp)
        }
    };
    let files = vec![dyn_path, spec_path];

    #[derive(Serialize)]
    struct EffMeta<'a> {
        #[serde(flatten)]
        config: &'a RunConfig,
        j_eff: f64,
        mu_eff: f64,
    }
    io::write_meta(
        &cfg.out,
        "effective",
        &EffMeta {
            config: &cfg,
            j_eff: model.j_eff,
            mu_eff: model.mu_eff,
        },
        &files,
    )?;
    let worst = comparison.iter().map(|c| c.abs_err).fold(0.0, f64::max);
    Ok(RunSummary {
        message: format!(
            "J_eff {:.6}, mu_eff {:.6}, max |E_eff - E_exact| {worst:.3e}",
            model.j_eff, model.mu_eff
        ),
        files,
    })
}

pub fn run_export_waveguide(o: &Overrides) -> Result<RunSummary> {
    let cfg = RunConfig::resolve(
        o,
        Defaults {
            sites: 21,
            interaction: -1.972,
            statistics: Statistics::Boson,
            t_end: 4.0,
            n_samples: 41,
        },
    )?;
    let spec = cfg.spec()?;
    prepare_dir(&cfg)?;
    let layout = waveguide_layout(&spec);
    let files = match cfg.format {
        Format::Json => {
            let p = cfg.out.join("waveguide.json");
            io::write_json(&p, &layout)?;
            vec![p]
        }
        Format::Csv => {
            let sp = cfg.out.join("waveguide_sites.csv");
            io::write_csv(
                &sp,
                &["id", "l1", "l2", "detuning", "detuned"],
                layout.sites.iter().map(|s| {
                    vec![
                        s.id.to_string(),
                        s.l1.to_string(),
                        s.l2.to_string(),
                        fmt_f64(s.detuning),
                        s.detuned.to_string(),
                    ]
                }),
            )?;
            let ep = cfg.out.join("waveguide_edges.csv");
            io::write_csv(
                &ep,
                &["a", "b", "coupling"],
                layout
                    .edges
                    .iter()
                    .map(|e| vec![e.a.to_string(), e.b.to_string(), fmt_f64(e.coupling)]),
            )?;
            vec![sp, ep]
        }
    };
    io::write_meta(&cfg.out, "export-waveguide", &cfg, &files)?;
    Ok(RunSummary {
        message: format!(
            "{} sites ({} detuned), {} edges",
            layout.sites.len(),
            layout.sites.iter().filter(|s| s.detuned).count(),
            layout.edges.len()
        ),
        files,
    })
}
