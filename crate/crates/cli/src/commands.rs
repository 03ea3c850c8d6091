use std::fs;
use std::path::{Path, PathBuf};

use alphacent::datasets::{self, data_dir, list_datasets};
use alphacent::{
    alpha_centrality_scores, alpha_centrality_unnormalized, detect_communities, dominant_eigenpair,
    eigenvector_centrality, load_edge_list, load_gml, purity, random_walk_proximity, rank_nodes,
    role_coordinates, sweep as run_sweep, to_edge_list, to_gml, CommunityConfig, Error, GraphF64,
    GroundTruth, Partition, Role, Scaling, ScoreAxis,
};
use log::info;
use serde::Serialize;

use crate::error::CliError;
use crate::output::{json, sig6, Table};
use crate::{
    AlphaArg, Axis, CommunitiesArgs, CommunityArgs, ConvertArgs, DatasetsArgs, Format,
    GraphFormatArg, InputArgs, PartitionSource, RankArgs, RolesArgs, ScalingArg, Scheme,
    SolverArgs, SpectrumArgs, SweepArgs,
};

/// Power-iteration settings for resolving `--alpha converged`.
const SPECTRUM_TOL: f64 = 1e-12;
const SPECTRUM_MAX_ITER: usize = 100_000;
/// `--alpha converged` evaluates at this multiple of `1/λ₁`, capped at 1.
const CONVERGED_FACTOR: f64 = 1.05;

struct Input {
    graph: GraphF64,
    truth: Option<GroundTruth>,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_input(args: &InputArgs) -> Result<Input, CliError> {
    let (mut graph, mut truth) = match (&args.dataset, &args.input) {
        (Some(name), _) => {
            let ds = datasets::load::<f64>(name)?;
            (ds.graph, Some(ds.truth))
        }
        (None, Some(path)) => {
            let text = read_file(path)?;
            let is_gml = path
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("gml"));
            let g = if is_gml {
                load_gml(&text)?
            } else {
                load_edge_list(&text, args.directed, args.weighted)?
            };
            (g, None)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --dataset or --input is required".into(),
            ))
        }
    };
    if let Some(path) = &args.labels {
        truth = Some(GroundTruth::parse(&read_file(path)?)?);
    }
    // A + Aᵀ of an undirected graph would only double every weight.
    if args.symmetrize && graph.is_directed() {
        graph = graph.symmetrize();
    }
    info!(
        "loaded graph: {} nodes, {} links, directed={}",
        graph.node_count(),
        graph.link_count(),
        graph.is_directed()
    );
    Ok(Input { graph, truth })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

fn inverse_lambda(g: &GraphF64) -> Result<f64, CliError> {
    let info = dominant_eigenpair(g, SPECTRUM_TOL, SPECTRUM_MAX_ITER)?;
    if !info.tolerance_met {
        return Err(Error::EigenNoConvergence {
            size: g.node_count(),
        }
        .into());
    }
    Ok(info.inverse_lambda())
}

fn resolve_alpha(alpha: AlphaArg, g: &GraphF64) -> Result<f64, CliError> {
    match alpha {
        AlphaArg::Value(a) => Ok(a),
        AlphaArg::Converged => {
            let a = (CONVERGED_FACTOR * inverse_lambda(g)?).min(1.0);
            info!("--alpha converged resolved to {a}");
            Ok(a)
        }
    }
}

fn scaling(arg: ScalingArg) -> Scaling {
    match arg {
        ScalingArg::Auto => Scaling::Auto,
        ScalingArg::Normalized => Scaling::Normalized,
        ScalingArg::Unnormalized => Scaling::Unnormalized,
    }
}

fn community_config(
    solver: &SolverArgs,
    c: &CommunityArgs,
) -> Result<CommunityConfig<f64>, CliError> {
    if c.rounding && c.scaling != ScalingArg::Unnormalized {
        return Err(CliError::Usage(
            "--rounding requires --scaling unnormalized".into(),
        ));
    }
    Ok(CommunityConfig {
        beta: solver.beta,
        scaling: scaling(c.scaling),
        rounding: c.rounding,
        tol: solver.tol,
        max_iter: solver.max_iter,
    })
}

fn score_axis(axis: Axis) -> ScoreAxis {
    match axis {
        Axis::Row => ScoreAxis::Row,
        Axis::Column => ScoreAxis::Column,
    }
}

fn scheme_name(s: Scheme) -> &'static str {
    match s {
        Scheme::Alpha => "alpha",
        Scheme::Katz => "katz",
        Scheme::RandomWalk => "random-walk",
        Scheme::Degree => "degree",
        Scheme::Eigenvector => "eigenvector",
    }
}

#[derive(Serialize)]
struct RankedNode<'a> {
    rank: usize,
    node: &'a str,
    score: f64,
}

#[derive(Serialize)]
struct RankReport<'a> {
    scheme: &'static str,
    alpha: Option<f64>,
    beta: Option<f64>,
    restart: Option<f64>,
    axis: ScoreAxis,
    iterations: Option<usize>,
    converged: Option<bool>,
    residual: Option<f64>,
    nodes: Vec<RankedNode<'a>>,
}

pub fn rank(args: RankArgs) -> Result<(), CliError> {
    let Input { graph: g, .. } = load_input(&args.input)?;
    let axis = score_axis(args.axis);
    let s = &args.solver;
    let mut report = RankReport {
        scheme: scheme_name(args.scheme),
        alpha: None,
        beta: None,
        restart: None,
        axis,
        iterations: None,
        converged: None,
        residual: None,
        nodes: Vec::new(),
    };
    let scores = match args.scheme {
        Scheme::Alpha => {
            let alpha = resolve_alpha(args.alpha, &g)?;
            let v = alpha_centrality_scores(&g, alpha, s.beta, axis, s.tol, s.max_iter)?;
            report.alpha = Some(alpha);
            report.beta = Some(s.beta);
            report.iterations = Some(v.iterations);
            report.converged = Some(v.converged);
            report.residual = Some(v.residual);
            v.scores
        }
        Scheme::Katz => {
            let alpha = resolve_alpha(args.alpha, &g)?;
            if alpha == 0.0 {
                return Err(CliError::Usage("Katz scores need alpha > 0".into()));
            }
            report.alpha = Some(alpha);
            let c = alpha_centrality_unnormalized(&g, alpha, alpha)?;
            match axis {
                ScoreAxis::Row => c.row_sums(),
                ScoreAxis::Column => c.col_sums(),
            }
        }
        Scheme::RandomWalk => {
            report.restart = Some(args.restart);
            let r = random_walk_proximity(&g, args.restart, s.tol, s.max_iter)?;
            match axis {
                ScoreAxis::Row => r.row_sums(),
                ScoreAxis::Column => r.col_sums(),
            }
        }
        Scheme::Degree => {
            let d = g.degree_summary();
            match axis {
                ScoreAxis::Row => d.out_degree,
                ScoreAxis::Column => d.in_degree,
            }
        }
        Scheme::Eigenvector => eigenvector_centrality(&g, s.tol, s.max_iter)?,
    };
    let order = rank_nodes(&scores, g.labels())?;
    report.nodes = order
        .iter()
        .enumerate()
        .map(|(r, &i)| RankedNode {
            rank: r + 1,
            node: g.label(i),
            score: scores[i],
        })
        .collect();
    let text = match args.out.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut t = Table::new(&["node", "score"])?;
            for n in &report.nodes {
                t.row([n.node.to_string(), sig6(n.score)])?;
            }
            t.finish()?
        }
    };
    emit(args.out.output.as_ref(), &text)
}

fn truth_purity(
    truth: Option<&GroundTruth>,
    g: &GraphF64,
    assignment: &[usize],
) -> Result<Option<f64>, CliError> {
    match truth {
        Some(t) => Ok(Some(purity(assignment, &t.resolve(g)?)?)),
        None => Ok(None),
    }
}

fn labels_of<'a>(g: &'a GraphF64, idx: &[usize]) -> Vec<&'a str> {
    idx.iter().map(|&i| g.label(i)).collect()
}

#[derive(Serialize)]
struct BisectionReport<'a> {
    first: Vec<&'a str>,
    second: Vec<&'a str>,
    delta_q: f64,
    eigenvalue: f64,
}

#[derive(Serialize)]
struct CommunityReport<'a> {
    alpha: f64,
    beta: f64,
    scaling: Scaling,
    q_value: f64,
    community_count: usize,
    purity: Option<f64>,
    communities: Vec<Vec<&'a str>>,
    history: Vec<BisectionReport<'a>>,
}

fn community_report<'a>(
    g: &'a GraphF64,
    p: &Partition<f64>,
    beta: f64,
    purity: Option<f64>,
) -> CommunityReport<'a> {
    CommunityReport {
        alpha: p.alpha,
        beta,
        scaling: p.scaling,
        q_value: p.q_value,
        community_count: p.community_count(),
        purity,
        communities: p.communities().iter().map(|c| labels_of(g, c)).collect(),
        history: p
            .history
            .iter()
            .map(|h| BisectionReport {
                first: labels_of(g, &h.first),
                second: labels_of(g, &h.second),
                delta_q: h.delta_q,
                eigenvalue: h.eigenvalue,
            })
            .collect(),
    }
}

pub fn communities(args: CommunitiesArgs) -> Result<(), CliError> {
    let Input { graph: g, truth } = load_input(&args.input)?;
    let config = community_config(&args.solver, &args.community)?;
    let alpha = resolve_alpha(args.alpha, &g)?;
    let p = detect_communities(&g, alpha, &config)?;
    let pur = truth_purity(truth.as_ref(), &g, &p.assignment)?;
    info!(
        "alpha={alpha}: {} communities, Q={}, purity={pur:?}",
        p.community_count(),
        p.q_value
    );
    let text = match args.out.format {
        Format::Json => json(&community_report(&g, &p, config.beta, pur))?,
        Format::Csv => {
            let mut t = Table::new(&["node", "community"])?;
            for (i, c) in p.assignment.iter().enumerate() {
                t.row([g.label(i).to_string(), c.to_string()])?;
            }
            t.finish()?
        }
    };
    emit(args.out.output.as_ref(), &text)
}

fn parse_num(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--range: invalid {what} `{s}`")))
}

/// `start:stop[:step]`, inclusive of `stop` up to rounding.
fn parse_range(spec: &str, default_step: f64) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let (start, stop, step) = match parts.as_slice() {
        [a, b] => (parse_num(a, "start")?, parse_num(b, "stop")?, default_step),
        [a, b, c] => (
            parse_num(a, "start")?,
            parse_num(b, "stop")?,
            parse_num(c, "step")?,
        ),
        _ => {
            return Err(CliError::Usage(format!(
                "--range expects start:stop[:step], got `{spec}`"
            )))
        }
    };
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Usage(format!(
            "--range step must be positive, got {step}"
        )));
    }
    if start.is_nan() || stop.is_nan() || start > stop {
        return Err(CliError::Usage(format!(
            "--range start {start} exceeds stop {stop}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}

fn check_alphas(alphas: &[f64]) -> Result<(), CliError> {
    if alphas.is_empty() {
        return Err(CliError::Usage("no alpha values given".into()));
    }
    match alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        Some(a) => Err(CliError::Usage(format!(
            "alpha must lie in [0, 1], got {a}"
        ))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct SweepRow<'a> {
    alpha: f64,
    group_count: usize,
    purity: Option<f64>,
    q_value: f64,
    scaling: Scaling,
    communities: Vec<Vec<&'a str>>,
}

pub fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let Input { graph: g, truth } = load_input(&args.input)?;
    let config = community_config(&args.solver, &args.community)?;
    let alphas = match (&args.alphas, &args.range) {
        (Some(list), _) => list.clone(),
        (None, Some(range)) => {
            let step = 1.0 / g.degree_summary().gershgorin_bound();
            parse_range(range, step)?
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --alphas or --range is required".into(),
            ))
        }
    };
    check_alphas(&alphas)?;
    let classes = truth.as_ref().map(|t| t.resolve(&g)).transpose()?;
    let records = run_sweep(&g, classes.as_deref(), &alphas, &config)?;
    if let Some(dir) = &args.scores_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for r in &records {
            let mut t = Table::new(&["node", "score"])?;
            for (i, s) in r.node_scores.iter().enumerate() {
                t.row([g.label(i).to_string(), sig6(*s)])?;
            }
            emit(
                Some(&dir.join(format!("scores_alpha_{}.csv", sig6(r.alpha)))),
                &t.finish()?,
            )?;
        }
    }
    let text = match args.out.format {
        Format::Json => {
            let rows: Vec<SweepRow> = records
                .iter()
                .map(|r| {
                    let p = Partition {
                        assignment: r.assignment.clone(),
                        q_value: r.q_value,
                        alpha: r.alpha,
                        scaling: r.scaling,
                        history: Vec::new(),
                    };
                    SweepRow {
                        alpha: r.alpha,
                        group_count: r.group_count,
                        purity: r.purity,
                        q_value: r.q_value,
                        scaling: r.scaling,
                        communities: p.communities().iter().map(|c| labels_of(&g, c)).collect(),
                    }
                })
                .collect();
            json(&rows)?
        }
        Format::Csv => {
            let mut t = Table::new(&["alpha", "groups", "purity", "q_value"])?;
            for r in &records {
                t.row([
                    sig6(r.alpha),
                    r.group_count.to_string(),
                    r.purity.map(sig6).unwrap_or_default(),
                    sig6(r.q_value),
                ])?;
            }
            t.finish()?
        }
    };
    emit(args.out.output.as_ref(), &text)
}

#[derive(Serialize)]
struct SpectrumReport {
    nodes: usize,
    links: usize,
    lambda1: f64,
    inverse_lambda1: f64,
    gershgorin_bound: f64,
    iterations: usize,
    residual: f64,
}

pub fn spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let Input { graph: g, .. } = load_input(&args.input)?;
    let info = dominant_eigenpair(&g, args.tol, args.max_iter)?;
    if !info.tolerance_met {
        return Err(Error::EigenNoConvergence {
            size: g.node_count(),
        }
        .into());
    }
    let report = SpectrumReport {
        nodes: g.node_count(),
        links: g.link_count(),
        lambda1: info.lambda1,
        inverse_lambda1: info.inverse_lambda(),
        gershgorin_bound: g.degree_summary().gershgorin_bound(),
        iterations: info.iterations,
        residual: info.residual,
    };
    let text = match args.out.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut t = Table::new(&[
                "nodes",
                "links",
                "lambda1",
                "inverse_lambda1",
                "gershgorin_bound",
            ])?;
            t.row([
                report.nodes.to_string(),
                report.links.to_string(),
                sig6(report.lambda1),
                sig6(report.inverse_lambda1),
                sig6(report.gershgorin_bound),
            ])?;
            t.finish()?
        }
    };
    emit(args.out.output.as_ref(), &text)
}

#[derive(Serialize)]
struct RoleRow<'a> {
    node: &'a str,
    community: usize,
    z: f64,
    p: f64,
    role: Role,
}

fn role_name(r: Role) -> &'static str {
    match r {
        Role::UltraPeripheral => "R1",
        Role::Peripheral => "R2",
        Role::NonHubConnector => "R3",
        Role::NonHubKinless => "R4",
        Role::ProvincialHub => "R5",
        Role::ConnectorHub => "R6",
        Role::KinlessHub => "R7",
    }
}

pub fn roles(args: RolesArgs) -> Result<(), CliError> {
    let Input { graph: g, truth } = load_input(&args.input)?;
    let assignment = match args.partition {
        PartitionSource::Detected => {
            let config = community_config(&args.solver, &args.community)?;
            let alpha = resolve_alpha(args.alpha, &g)?;
            detect_communities(&g, alpha, &config)?.assignment
        }
        PartitionSource::Truth => {
            let truth = truth.ok_or_else(|| {
                CliError::Usage("--partition truth needs ground-truth labels".into())
            })?;
            truth
                .resolve(&g)?
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    c.ok_or_else(|| {
                        CliError::Usage(format!(
                            "node `{}` is excluded from the ground truth; roles need a class for every node",
                            g.label(i)
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let rc = role_coordinates(&g, &assignment)?;
    let rows: Vec<RoleRow> = (0..g.node_count())
        .map(|i| RoleRow {
            node: g.label(i),
            community: assignment[i],
            z: rc.z[i],
            p: rc.p[i],
            role: rc.roles[i],
        })
        .collect();
    let text = match args.out.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut t = Table::new(&["node", "community", "z", "p", "role"])?;
            for r in &rows {
                t.row([
                    r.node.to_string(),
                    r.community.to_string(),
                    sig6(r.z),
                    sig6(r.p),
                    role_name(r.role).to_string(),
                ])?;
            }
            t.finish()?
        }
    };
    emit(args.out.output.as_ref(), &text)
}

pub fn convert(args: ConvertArgs) -> Result<(), CliError> {
    let Input { graph: g, .. } = load_input(&args.input)?;
    let text = match args.to {
        GraphFormatArg::Edges => to_edge_list(&g)?,
        GraphFormatArg::Gml => to_gml(&g),
    };
    emit(args.output.as_ref(), &text)
}

pub fn datasets(args: DatasetsArgs) -> Result<(), CliError> {
    let list = list_datasets(&data_dir());
    let text = match args.out.format {
        Format::Json => json(&list)?,
        Format::Csv => {
            let mut t = Table::new(&[
                "name",
                "installed",
                "nodes",
                "links",
                "labeled",
                "excluded",
                "provenance",
            ])?;
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            for d in &list {
                t.row([
                    d.name.to_string(),
                    d.installed.to_string(),
                    opt(d.nodes),
                    opt(d.links),
                    opt(d.labeled_nodes),
                    opt(d.excluded_nodes),
                    d.provenance.to_string(),
                ])?;
            }
            t.finish()?
        }
    };
    emit(args.out.output.as_ref(), &text)
}
