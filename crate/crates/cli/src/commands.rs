use std::fmt::Write;
use std::path::Path;

use spectral_kcluster::cluster::{
    fast_cluster, greedy_cluster, kmeans_baseline, GreedyConfig, RadiusMode, Sampling,
};
use spectral_kcluster::metrics::{
    concentration_check, gap_report, partition_distance, strength_report, ConductanceMode,
    MAX_EXACT_LIMIT,
};
use spectral_kcluster::{
    compute_spectrum, embed, generate_planted, parse_edge_list, Graph, Partition, PlantedModel,
};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::files::{fmt_f64, path_key, Session};
use crate::manifest::RunManifest;
use crate::plot::render_spectrum_svg;
use crate::report::Report;

pub const MAX_K: usize = 50;
pub const MAX_N: usize = 1_000_000;

fn guard(k: usize, n: usize, force: bool) -> CliResult<()> {
    if force {
        return Ok(());
    }
    if k > MAX_K {
        return Err(CliError::usage(format!(
            "k = {k} exceeds {MAX_K}; pass --force to run anyway"
        )));
    }
    if n > MAX_N {
        return Err(CliError::usage(format!(
            "n = {n} exceeds {MAX_N}; pass --force to run anyway"
        )));
    }
    Ok(())
}

fn at(path: &Path) -> impl Fn(spectral_kcluster::Error) -> CliError + '_ {
    move |e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    }
}

fn load_graph(s: &mut Session, path: &Path) -> CliResult<Graph> {
    let bytes = s.read(path)?;
    parse_edge_list(&bytes[..]).map_err(at(path))
}

fn load_partition(s: &mut Session, path: &Path) -> CliResult<Partition> {
    let bytes = s.read(path)?;
    Partition::read_csv(&bytes[..]).map_err(at(path))
}

fn partition_bytes(p: &Partition) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    p.write_csv(&mut buf)?;
    Ok(buf)
}

fn json_bytes<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text.into_bytes()
}

fn parse_groups(text: &str) -> CliResult<Vec<Vec<usize>>> {
    text.split(';')
        .map(|group| {
            group
                .split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| {
                        CliError::usage(format!("bad block index {t:?} in --supergroups"))
                    })
                })
                .collect()
        })
        .collect()
}

fn solver_name(n: usize, solver: &SolverArgs) -> &'static str {
    if n <= solver.dense_cutoff {
        "dense"
    } else {
        "lanczos"
    }
}

fn generate(a: &GenerateArgs, s: &mut Session) -> CliResult<()> {
    let model = PlantedModel {
        block_sizes: a.blocks.clone(),
        p_in: a.p_in,
        p_mid: a.p_mid,
        p_out: a.p_out,
        supergroups: parse_groups(&a.supergroups)?,
        seed: a.seed,
    };
    model.validate()?;
    guard(0, model.n(), a.force)?;
    let (g, blocks) = generate_planted(&model)?;
    let mut buf = Vec::new();
    g.write_edge_list(&mut buf)?;
    s.write(&a.out, &buf)?;
    if let Some(path) = &a.blocks_out {
        s.write(path, &partition_bytes(&blocks)?)?;
    }
    if let Some(path) = &a.supergroups_out {
        s.write(path, &partition_bytes(&model.supergroup_partition()?)?)?;
    }
    s.resolve("n", g.n());
    s.resolve("edges", g.edge_count());
    Ok(())
}

fn spectrum(a: &SpectrumArgs, s: &mut Session) -> CliResult<()> {
    let g = load_graph(s, &a.graph)?;
    guard(a.k, g.n(), a.force)?;
    if a.k == 0 {
        return Err(CliError::usage("k must be at least 1"));
    }
    let pairs = (a.k + 1).min(g.n());
    let spec = compute_spectrum(&g, pairs, &a.solver.options())?;
    let mut csv = String::from("index,eigenvalue\n");
    for (i, &v) in spec.values().iter().enumerate() {
        let _ = writeln!(csv, "{},{}", i + 1, fmt_f64(v));
    }
    s.write(&a.out, csv.as_bytes())?;
    if let Some(path) = &a.plot {
        s.write(path, render_spectrum_svg(spec.values(), a.k)?.as_bytes())?;
    }
    s.resolve("pairs", pairs);
    s.resolve("solver", solver_name(g.n(), &a.solver));
    Ok(())
}

fn embed_cmd(a: &EmbedArgs, s: &mut Session) -> CliResult<()> {
    let g = load_graph(s, &a.graph)?;
    guard(a.k, g.n(), a.force)?;
    if a.k == 0 {
        return Err(CliError::usage("k must be at least 1"));
    }
    let spec = compute_spectrum(&g, a.k, &a.solver.options())?;
    let emb = embed(&g, &spec, a.k)?;
    let mut csv = String::from("vertex");
    for i in 1..=a.k {
        let _ = write!(csv, ",x{i}");
    }
    csv.push('\n');
    for u in 0..g.n() {
        csv.push_str(&u.to_string());
        for &x in emb.point(u) {
            csv.push(',');
            csv.push_str(&fmt_f64(x));
        }
        csv.push('\n');
    }
    s.write(&a.out, csv.as_bytes())?;
    s.resolve("solver", solver_name(g.n(), &a.solver));
    Ok(())
}

fn cluster(a: &ClusterArgs, s: &mut Session) -> CliResult<()> {
    if a.k < 2 {
        return Err(CliError::usage(format!(
            "k = {} but clustering needs k >= 2",
            a.k
        )));
    }
    if a.method == Method::Kmeans && a.trace.is_some() {
        return Err(CliError::usage(
            "--trace applies to the greedy and fast methods only",
        ));
    }
    let g = load_graph(s, &a.graph)?;
    guard(a.k, g.n(), a.force)?;
    let spec = compute_spectrum(&g, a.k, &a.solver.options())?;
    let emb = embed(&g, &spec, a.k)?;
    s.resolve("solver", solver_name(g.n(), &a.solver));

    let (partition, trace) = match a.method {
        Method::Kmeans => (kmeans_baseline(&emb, a.k, a.seed, a.kmeans_iter)?, None),
        Method::Greedy | Method::Fast => {
            let radius = match (a.radius, a.radius_scale) {
                (Some(r), _) => RadiusMode::Explicit(r),
                (None, Some(gamma)) => RadiusMode::Scaled(gamma),
                (None, None) => RadiusMode::Theoretical,
            };
            let sampling = match a.sampling {
                SamplingArg::Random => Sampling::Random,
                SamplingArg::Exhaustive => Sampling::Exhaustive,
            };
            let cfg = GreedyConfig::new(a.k)
                .with_radius(radius)
                .with_epsilon(a.epsilon)
                .with_seed(a.seed)
                .with_sampling(sampling);
            let (p, t) = if a.method == Method::Greedy {
                greedy_cluster(&g, &emb, &cfg)?
            } else {
                s.resolve("samples_per_round", cfg.sample_size(g.n()));
                fast_cluster(&g, &emb, &cfg)?
            };
            s.resolve("radius", t.radius);
            s.resolve("ball_radius", 2.0 * t.radius);
            (p, Some(t))
        }
    };
    s.write(&a.out, &partition_bytes(&partition)?)?;
    if let Some(t) = trace {
        if !t.empty_clusters.is_empty() {
            eprintln!(
                "warning: empty clusters {:?}; see the trace for the round that ran dry",
                t.empty_clusters
            );
        }
        s.resolve("empty_clusters", t.empty_clusters.clone());
        if let Some(path) = &a.trace {
            s.write(path, &json_bytes(&t.steps))?;
        }
    }
    Ok(())
}

fn evaluate(a: &EvaluateArgs, s: &mut Session) -> CliResult<()> {
    if a.exact_limit > MAX_EXACT_LIMIT {
        return Err(CliError::usage(format!(
            "--exact-limit is capped at {MAX_EXACT_LIMIT}"
        )));
    }
    let g = load_graph(s, &a.graph)?;
    let p = load_partition(s, &a.partition)?;
    if p.n() != g.n() {
        return Err(CliError::data(format!(
            "partition covers {} vertices but the graph has {}",
            p.n(),
            g.n()
        )));
    }
    let reference = match &a.reference {
        Some(path) => Some(load_partition(s, path)?),
        None => None,
    };
    let k = a.k.unwrap_or(p.k());
    if k == 0 {
        return Err(CliError::usage("k must be at least 1"));
    }
    guard(k, g.n(), a.force)?;
    s.resolve("k", k);
    s.resolve("solver", solver_name(g.n(), &a.solver));

    let strength = strength_report(
        &g,
        &p,
        ConductanceMode::Auto {
            exact_limit: a.exact_limit,
        },
    )
    .map_err(at(&a.partition))?;
    let pairs = (k + 1).min(g.n());
    let spec = compute_spectrum(&g, pairs, &a.solver.options())?;
    let gap = if k < g.n() {
        Some(gap_report(&spec, k, Some(&strength))?)
    } else {
        None
    };
    let concentration = if strength.alpha_in_lower > 0.0 {
        let emb = embed(&g, &spec, k)?;
        Some(concentration_check(
            &g,
            &emb,
            &p,
            &spec,
            strength.alpha_in_lower,
        )?)
    } else {
        None
    };
    let distance = match &reference {
        Some(r) => Some(partition_distance(&p, r)?),
        None => None,
    };
    let report = Report::new(
        g.n(),
        k,
        &strength,
        spec.values().to_vec(),
        gap,
        concentration,
        distance,
    );
    s.write(&a.out, &json_bytes(&report))?;
    Ok(())
}

/// Runs one recorded-able subcommand and writes its manifest.
fn run_recorded(command: &Command) -> CliResult<RunManifest> {
    let mut s = Session::default();
    let (out, seed) = match command {
        Command::Generate(a) => (generate(a, &mut s).map(|_| &a.out)?, Some(a.seed)),
        Command::Spectrum(a) => (spectrum(a, &mut s).map(|_| &a.out)?, None),
        Command::Embed(a) => (embed_cmd(a, &mut s).map(|_| &a.out)?, None),
        Command::Cluster(a) => {
            cluster(a, &mut s)?;
            let seed = (a.method != Method::Greedy).then_some(a.seed);
            (&a.out, seed)
        }
        Command::Evaluate(a) => (evaluate(a, &mut s).map(|_| &a.out)?, None),
        Command::Replay(_) => return Err(CliError::data("a manifest cannot record a replay")),
    };
    let manifest = RunManifest::new(command, seed, s);
    manifest.write_next_to(out)?;
    Ok(manifest)
}

fn replay(a: &ReplayArgs) -> CliResult<()> {
    let recorded = RunManifest::load(&a.manifest)?;
    recorded.check_inputs()?;
    let fresh = run_recorded(&recorded.params)?;
    for (path, digest) in &recorded.outputs {
        match fresh.outputs.get(path) {
            Some(d) if d == digest => {}
            _ => {
                return Err(CliError::data(format!(
                    "output {path} differs from the recorded run"
                )))
            }
        }
    }
    if fresh.outputs.len() != recorded.outputs.len() {
        let extra: Vec<_> = fresh
            .outputs
            .keys()
            .filter(|k| !recorded.outputs.contains_key(*k))
            .map(|k| path_key(Path::new(k)))
            .collect();
        return Err(CliError::data(format!(
            "replay wrote unrecorded outputs {extra:?}"
        )));
    }
    Ok(())
}

pub fn execute(command: &Command) -> CliResult<()> {
    match command {
        Command::Replay(a) => replay(a),
        other => run_recorded(other).map(|_| ()),
    }
}
