//! Seeded experiment sweeps over generated instances.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{FaultSet, Graph, Vertex, Weight};
use crate::greedy::{baseline_decompose, greedy_decompose, greedy_decompose_weighted};
use crate::instance::ReplacementInstance;
use crate::io::{instance_to_json, read_faults, read_graph};
use crate::oracle::verify_decomposition;
use crate::poly::{compute_subpaths_traced, compute_subpaths_weighted_traced, PolyOptions};
use crate::random::{grid_graph, random_graph, sample_instance, FaultModel, MAX_ATTEMPTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    Poly,
    Baseline,
    /// Shorthand for all three.
    All,
}

impl Algorithm {
    pub const CONCRETE: [Algorithm; 3] = [Algorithm::Greedy, Algorithm::Poly, Algorithm::Baseline];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Poly => "poly",
            Algorithm::Baseline => "baseline",
            Algorithm::All => "all",
        }
    }

    /// Largest subpath count the algorithm guarantees for `k`.
    pub fn bound(self, k: usize) -> usize {
        match self {
            Algorithm::Baseline => k + 1,
            _ => 8 * k + 1,
        }
    }

    /// Fault budget per subpath for `f` faults and parameter `k`.
    pub fn budget(self, f: usize, k: usize) -> usize {
        match self {
            Algorithm::Baseline => f - k,
            _ => f / k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Random { n_min: usize, n_max: usize, p: f64 },
    Grid { rows: usize, cols: usize },
    File { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum FaultSpec {
    Random { min: usize, max: usize },
    PathHitting { min: usize, max: usize },
    File { path: PathBuf },
}

/// Missing fields take their values from [`ExperimentConfig::default`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: usize,
    pub graph: GraphSpec,
    /// Draw integer lengths in `1..=max_weight`; unweighted when absent.
    pub max_weight: Option<Weight>,
    pub faults: FaultSpec,
    pub k_values: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub linear_scan: bool,
    pub endpoints: Option<(Vertex, Vertex)>,
}

impl Default for ExperimentConfig {
    /// 200 random unweighted trials on up to 40 vertices with up to 8 faults.
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 200,
            graph: GraphSpec::Random { n_min: 8, n_max: 40, p: 0.15 },
            max_weight: None,
            faults: FaultSpec::PathHitting { min: 1, max: 8 },
            k_values: vec![1, 2, 4],
            algorithms: vec![Algorithm::All],
            linear_scan: false,
            endpoints: None,
        }
    }
}

/// A configuration problem at a JSON path such as `graph.n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigIssue {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Parses and validates a configuration, reporting every problem found.
pub fn parse_config(text: &str) -> std::result::Result<ExperimentConfig, Vec<ConfigIssue>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        vec![ConfigIssue { path, message: e.into_inner().to_string() }]
    })?;
    let issues = config.validate();
    if issues.is_empty() {
        Ok(config)
    } else {
        Err(issues)
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Vec<ConfigIssue> {
        let mut issues = Vec::new();
        let mut push = |path: &str, message: String| issues.push(ConfigIssue { path: path.into(), message });
        match &self.graph {
            GraphSpec::Random { n_min, n_max, p } => {
                if *n_min < 2 {
                    push("graph.n_min", format!("{n_min} is below 2"));
                }
                if n_min > n_max {
                    push("graph.n_max", format!("{n_max} is below n_min = {n_min}"));
                }
                if !(0.0..=1.0).contains(p) {
                    push("graph.p", format!("{p} is not in [0, 1]"));
                }
            }
            GraphSpec::Grid { rows, cols } => {
                if rows * cols < 2 {
                    push("graph", format!("a {rows} x {cols} grid has fewer than two vertices"));
                }
            }
            GraphSpec::File { .. } => {}
        }
        if self.max_weight == Some(0) {
            push("max_weight", "must be at least 1".into());
        }
        if let FaultSpec::Random { min, max } | FaultSpec::PathHitting { min, max } = &self.faults {
            if min > max {
                push("faults.max", format!("{max} is below min = {min}"));
            }
        }
        if self.k_values.is_empty() {
            push("k_values", "must list at least one k".into());
        }
        for (i, &k) in self.k_values.iter().enumerate() {
            if k == 0 {
                push(&format!("k_values[{i}]"), "must be at least 1".into());
            }
        }
        if self.algorithms.is_empty() {
            push("algorithms", "must list at least one algorithm".into());
        }
        if let Some((s, t)) = self.endpoints {
            if s == t {
                push("endpoints", format!("s and t are both {s}"));
            }
        }
        issues
    }

    fn concrete_algorithms(&self) -> Vec<Algorithm> {
        let mut out: Vec<Algorithm> = self
            .algorithms
            .iter()
            .flat_map(|&a| if a == Algorithm::All { Algorithm::CONCRETE.to_vec() } else { vec![a] })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub digest: String,
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub path_hops: usize,
    pub weighted: bool,
    pub algorithm: String,
    pub k: usize,
    pub budget: usize,
    pub q: Option<usize>,
    pub max_fault_set: Option<usize>,
    pub bound: usize,
    pub verified: bool,
    pub within_bound: bool,
    pub error: Option<String>,
    /// Only filled when timing is requested, since it breaks reproducibility.
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedRun {
    pub trial: usize,
    pub algorithm: Option<String>,
    pub k: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub algorithm: String,
    pub k: usize,
    pub runs: usize,
    pub failures: usize,
    pub max_q: usize,
    pub mean_q: f64,
    /// Largest `q / bound` over the runs.
    pub max_margin: f64,
}

/// Greedy against poly on the trials where both ran at the same `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub k: usize,
    pub pairs: usize,
    pub greedy_fewer: usize,
    pub equal: usize,
    pub poly_fewer: usize,
    pub both_verified: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub trials: usize,
    pub all_verified: bool,
    pub records: Vec<TrialRecord>,
    pub skipped: Vec<SkippedRun>,
    pub aggregates: Vec<Aggregate>,
    pub comparison: Vec<Comparison>,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One CSV row per record.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).map_err(|e| Error::InvalidInput(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// SHA-256 of the instance's JSON form, in hex.
pub fn instance_digest(inst: &ReplacementInstance) -> String {
    let json = instance_to_json(inst).expect("instances serialize");
    hex::encode(Sha256::digest(json.as_bytes()))
}

/// Runs one algorithm and checks the result from first principles.
pub fn run_algorithm(
    inst: &ReplacementInstance,
    algorithm: Algorithm,
    k: usize,
    linear_scan: bool,
) -> Result<Decomposition> {
    let weighted = inst.graph().is_weighted();
    let f = inst.fault_count();
    if k == 0 || k > f {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={f}")));
    }
    let opts = PolyOptions { linear_scan };
    match (algorithm, weighted) {
        (Algorithm::Greedy, false) => greedy_decompose(inst, f / k),
        (Algorithm::Greedy, true) => greedy_decompose_weighted(inst, f / k),
        (Algorithm::Poly, false) => compute_subpaths_traced(inst, k, opts).map(|r| r.decomposition),
        (Algorithm::Poly, true) => compute_subpaths_weighted_traced(inst, k, opts).map(|r| r.decomposition),
        (Algorithm::Baseline, _) => baseline_decompose(inst, k, None),
        (Algorithm::All, _) => Err(Error::InvalidArgument("pick a single algorithm".into())),
    }
}

struct Sources {
    graph: Option<Graph>,
    faults: Option<FaultSet>,
}

fn load_sources(config: &ExperimentConfig) -> Result<Sources> {
    let graph = match &config.graph {
        GraphSpec::File { path } => Some(read_graph(path)?),
        _ => None,
    };
    let faults = match (&config.faults, &graph) {
        (FaultSpec::File { path }, Some(g)) => Some(read_faults(path, g)?),
        (FaultSpec::File { .. }, None) => {
            return Err(Error::InvalidInput("faults.model = file needs graph.model = file".into()))
        }
        _ => None,
    };
    Ok(Sources { graph, faults })
}

fn trial_instance(config: &ExperimentConfig, sources: &Sources, rng: &mut ChaCha8Rng) -> Result<ReplacementInstance> {
    let mut last_err = None;
    for _ in 0..MAX_ATTEMPTS {
        let g = match (&config.graph, &sources.graph) {
            (_, Some(g)) => g.clone(),
            (GraphSpec::Random { n_min, n_max, p }, None) => {
                let n = rng.gen_range(*n_min..=*n_max);
                random_graph(rng, n, *p, config.max_weight)?
            }
            (GraphSpec::Grid { rows, cols }, None) => grid_graph(rng, *rows, *cols, config.max_weight)?,
            (GraphSpec::File { .. }, None) => unreachable!("file graphs are loaded up front"),
        };
        let attempt = match (&config.faults, &sources.faults) {
            (_, Some(f)) => {
                let (s, t) = config
                    .endpoints
                    .ok_or_else(|| Error::InvalidInput("a fault file needs fixed endpoints".into()))?;
                ReplacementInstance::from_endpoints(g, f.clone(), s, t)
            }
            (FaultSpec::Random { min, max }, None) | (FaultSpec::PathHitting { min, max }, None) => {
                let model = match config.faults {
                    FaultSpec::Random { .. } => FaultModel::Uniform,
                    _ => FaultModel::PathHitting,
                };
                let count = rng.gen_range(*min..=*max).min(g.edge_count());
                sample_instance(rng, g, count, model, config.endpoints)
            }
            (FaultSpec::File { .. }, None) => unreachable!("fault files are loaded up front"),
        };
        match attempt {
            Ok(inst) => return Ok(inst),
            Err(e @ Error::InvalidInput(_)) | Err(e @ Error::Disconnected { .. }) | Err(e @ Error::InvalidArgument(_))
                if sources.graph.is_none() =>
            {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::InvalidInput("no instance".into())))
}

fn run_trial(
    config: &ExperimentConfig,
    sources: &Sources,
    algorithms: &[Algorithm],
    trial: usize,
    timing: bool,
) -> (Vec<TrialRecord>, Vec<SkippedRun>) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let inst = match trial_instance(config, sources, &mut rng) {
        Ok(inst) => inst,
        Err(e) => {
            let skip = SkippedRun { trial, algorithm: None, k: None, reason: e.to_string() };
            return (vec![], vec![skip]);
        }
    };
    let digest = instance_digest(&inst);
    let f = inst.fault_count();
    let weighted = inst.graph().is_weighted();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for &algorithm in algorithms {
        for &k in &config.k_values {
            let skip = |reason: String| SkippedRun { trial, algorithm: Some(algorithm.name().into()), k: Some(k), reason };
            if k > f {
                skipped.push(skip(format!("k = {k} exceeds |F| = {f}")));
                continue;
            }
            if algorithm == Algorithm::Baseline && weighted {
                skipped.push(skip("baseline runs on unweighted graphs only".into()));
                continue;
            }
            let budget = algorithm.budget(f, k);
            let bound = algorithm.bound(k);
            let start = Instant::now();
            let result = run_algorithm(&inst, algorithm, k, config.linear_scan);
            let wall_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            let (q, max_fault_set, verified, error) = match &result {
                Ok(d) => {
                    let report = verify_decomposition(&inst, d, budget);
                    let error = (!report.passed).then(|| {
                        report.failures().map(|(c, m)| format!("{c}: {m}")).collect::<Vec<_>>().join("; ")
                    });
                    (Some(d.q), Some(d.max_fault_set()), report.passed, error)
                }
                Err(e) => (None, None, false, Some(e.to_string())),
            };
            records.push(TrialRecord {
                trial,
                digest: digest.clone(),
                n: inst.graph().vertex_count(),
                m: inst.graph().edge_count(),
                f,
                path_hops: inst.last_index(),
                weighted,
                algorithm: algorithm.name().into(),
                k,
                budget,
                q,
                max_fault_set,
                bound,
                verified,
                within_bound: q.is_some_and(|q| q <= bound),
                error,
                wall_ms,
            });
        }
    }
    (records, skipped)
}

/// Runs every trial (in parallel) and assembles the report in trial order.
/// Output is a pure function of the configuration unless `timing` is set.
pub fn run_experiment(config: &ExperimentConfig, timing: bool) -> Result<RunReport> {
    let issues = config.validate();
    if !issues.is_empty() {
        let text = issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        return Err(Error::InvalidInput(text));
    }
    let sources = load_sources(config)?;
    let algorithms = config.concrete_algorithms();
    let per_trial: Vec<_> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, &sources, &algorithms, trial, timing))
        .collect();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (r, s) in per_trial {
        records.extend(r);
        skipped.extend(s);
    }
    let aggregates = aggregate(&records);
    let comparison = compare(&records);
    Ok(RunReport {
        seed: config.seed,
        trials: config.trials,
        all_verified: records.iter().all(|r| r.verified && r.within_bound),
        records,
        skipped,
        aggregates,
        comparison,
    })
}

fn aggregate(records: &[TrialRecord]) -> Vec<Aggregate> {
    let mut groups: BTreeMap<(String, usize), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.algorithm.clone(), r.k)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((algorithm, k), rs)| {
            let qs: Vec<usize> = rs.iter().filter_map(|r| r.q).collect();
            let max_margin = rs
                .iter()
                .filter_map(|r| r.q.map(|q| q as f64 / r.bound as f64))
                .fold(0.0, f64::max);
            Aggregate {
                algorithm,
                k,
                runs: rs.len(),
                failures: rs.iter().filter(|r| !(r.verified && r.within_bound)).count(),
                max_q: qs.iter().copied().max().unwrap_or(0),
                mean_q: if qs.is_empty() { 0.0 } else { qs.iter().sum::<usize>() as f64 / qs.len() as f64 },
                max_margin,
            }
        })
        .collect()
}

// Greedy and poly records of one (k, trial).
type Pair<'a> = (Option<&'a TrialRecord>, Option<&'a TrialRecord>);

fn compare(records: &[TrialRecord]) -> Vec<Comparison> {
    let mut by_key: BTreeMap<(usize, usize), Pair<'_>> = BTreeMap::new();
    for r in records {
        let slot = by_key.entry((r.k, r.trial)).or_default();
        match r.algorithm.as_str() {
            "greedy" => slot.0 = Some(r),
            "poly" => slot.1 = Some(r),
            _ => {}
        }
    }
    let mut out: BTreeMap<usize, Comparison> = BTreeMap::new();
    for ((k, _), pair) in by_key {
        let (Some(g), Some(p)) = pair else { continue };
        let c = out.entry(k).or_insert(Comparison { k, pairs: 0, greedy_fewer: 0, equal: 0, poly_fewer: 0, both_verified: 0 });
        c.pairs += 1;
        if g.verified && p.verified {
            c.both_verified += 1;
        }
        match (g.q, p.q) {
            (Some(a), Some(b)) if a < b => c.greedy_fewer += 1,
            (Some(a), Some(b)) if a > b => c.poly_fewer += 1,
            (Some(_), Some(_)) => c.equal += 1,
            _ => {}
        }
    }
    out.into_values().collect()
}
