//! Scenario files: JSON schema, validation, hashing and seeded generation.
//!
//! Process ids are 0-based. With `P` real processes and `N` nodes, ids
//! `0..P` are real and `P + j` is the virtual process pinned to `pins[j]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::app_model::{AppGraph, ProcessId, TrafficMatrix};
use crate::cost::Assignment;
use crate::error::{Error, Result};
use crate::migration::InertiaConfig;
use crate::topology::{HierarchicalTopology, NodeId, Topology, TreeTopology};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum TopologySpec {
    Tree {
        nodes: usize,
        edges: Vec<(u32, u32)>,
    },
    /// `edges` connect clusters; node `c * servers_per_cluster + s` is
    /// server `s` of cluster `c`.
    Hierarchical {
        clusters: usize,
        edges: Vec<(u32, u32)>,
        servers_per_cluster: usize,
    },
}

impl TopologySpec {
    pub fn node_count(&self) -> usize {
        match self {
            TopologySpec::Tree { nodes, .. } => *nodes,
            TopologySpec::Hierarchical {
                clusters,
                servers_per_cluster,
                ..
            } => clusters * servers_per_cluster,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessSpec {
    pub count: usize,
    pub exec_costs: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrafficEntry {
    pub from: u32,
    pub to: u32,
    pub bytes: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleEntry {
    pub round: u32,
    pub traffic: Vec<TrafficEntry>,
}

fn default_gamma() -> f64 {
    1.0
}

fn default_alpha() -> f64 {
    0.5
}

/// On-disk form of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub topology: TopologySpec,
    pub processes: ProcessSpec,
    /// Initial host of each real process.
    pub placement: Vec<u32>,
    /// Node of each virtual process; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pins: Option<Vec<u32>>,
    pub traffic: Vec<TrafficEntry>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub traffic_schedule: Vec<ScheduleEntry>,
    /// Per-node capacity in execution-cost units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacities: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A validated scenario ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub topology: Topology,
    pub app: AppGraph<i64>,
    pub assignment: Assignment,
    pub inertia: InertiaConfig,
    pub alpha: f64,
    pub schedule: BTreeMap<u32, TrafficMatrix<i64>>,
    pub capacities: Option<Vec<i64>>,
}

fn absorb<T>(res: Result<T>, problems: &mut Vec<String>) -> Option<T> {
    match res {
        Ok(v) => Some(v),
        Err(Error::Validation(list)) => {
            problems.extend(list);
            None
        }
        Err(e) => {
            problems.push(e.to_string());
            None
        }
    }
}

fn check_traffic(label: &str, entries: &[TrafficEntry], dim: usize, problems: &mut Vec<String>) -> bool {
    let before = problems.len();
    for (idx, e) in entries.iter().enumerate() {
        if e.from as usize >= dim || e.to as usize >= dim {
            problems.push(format!(
                "{label}[{idx}]: process id out of range 0..{dim} ({} -> {})",
                e.from, e.to
            ));
        }
        if e.bytes < 0 {
            problems.push(format!("{label}[{idx}]: negative traffic {} bytes", e.bytes));
        }
    }
    problems.len() == before
}

fn matrix(dim: usize, entries: &[TrafficEntry]) -> Result<TrafficMatrix<i64>> {
    TrafficMatrix::from_entries(
        dim,
        entries
            .iter()
            .map(|e| (ProcessId(e.from), ProcessId(e.to), e.bytes)),
    )
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Validates every part of `file`, reporting all problems at once.
    pub fn from_file(file: ScenarioFile) -> Result<Self> {
        let mut problems = Vec::new();

        let topology: Option<Topology> = match &file.topology {
            TopologySpec::Tree { nodes, edges } => {
                absorb(TreeTopology::new(*nodes, edges), &mut problems).map(Into::into)
            }
            TopologySpec::Hierarchical {
                clusters,
                edges,
                servers_per_cluster,
            } => absorb(
                TreeTopology::new(*clusters, edges)
                    .and_then(|t| HierarchicalTopology::new(t, *servers_per_cluster)),
                &mut problems,
            )
            .map(Into::into),
        };
        let n = file.topology.node_count();
        let p = file.processes.count;
        let dim = p + n;

        if file.processes.exec_costs.len() != p {
            problems.push(format!(
                "processes.count is {p} but {} exec_costs given",
                file.processes.exec_costs.len()
            ));
        }
        if file.placement.len() != p {
            problems.push(format!("placement lists {} hosts for {p} processes", file.placement.len()));
        }
        for (i, &h) in file.placement.iter().enumerate() {
            if h as usize >= n {
                problems.push(format!("placement of p{i} is unknown node n{h}"));
            }
        }
        let pins: Vec<NodeId> = match &file.pins {
            Some(pins) => pins.iter().map(|&x| NodeId(x)).collect(),
            None => (0..n as u32).map(NodeId).collect(),
        };
        if pins.len() != n {
            problems.push(format!("pins lists {} nodes, expected one per node ({n})", pins.len()));
        }
        if !(file.gamma >= 1.0 && file.gamma.is_finite()) {
            problems.push(format!("gamma must be a finite value >= 1, got {}", file.gamma));
        }
        if !(file.alpha > 0.0 && file.alpha < 1.0) {
            problems.push(format!("alpha must lie strictly between 0 and 1, got {}", file.alpha));
        }
        if let Some(caps) = &file.capacities {
            if caps.len() != n {
                problems.push(format!("{} capacities for {n} nodes", caps.len()));
            }
            if let Some((x, c)) = caps.iter().enumerate().find(|(_, c)| **c < 0) {
                problems.push(format!("capacity of n{x} is negative ({c})"));
            }
        }

        let mut app = None;
        if check_traffic("traffic", &file.traffic, dim, &mut problems)
            && file.processes.exec_costs.len() == p
            && pins.len() == n
        {
            let t = absorb(matrix(dim, &file.traffic), &mut problems);
            app = t.and_then(|t| {
                absorb(
                    AppGraph::with_pins(file.processes.exec_costs.clone(), pins.clone(), t),
                    &mut problems,
                )
            });
        }

        let mut schedule = BTreeMap::new();
        for (idx, entry) in file.traffic_schedule.iter().enumerate() {
            let label = format!("traffic_schedule[{idx}].traffic");
            if !check_traffic(&label, &entry.traffic, dim, &mut problems) {
                continue;
            }
            if schedule.contains_key(&entry.round) {
                problems.push(format!("traffic_schedule has two entries for round {}", entry.round));
                continue;
            }
            if let Some(m) = absorb(matrix(dim, &entry.traffic), &mut problems) {
                if let Some(app) = &app {
                    absorb(app.with_traffic(m.clone()), &mut problems);
                }
                schedule.insert(entry.round, m);
            }
        }

        let assignment = match (&app, &topology) {
            (Some(app), Some(topo)) if problems.is_empty() => {
                let hosts = file.placement.iter().map(|&h| NodeId(h)).collect();
                absorb(Assignment::new(app, topo, hosts), &mut problems)
            }
            _ => None,
        };
        let inertia = if problems.is_empty() {
            absorb(InertiaConfig::new(file.gamma), &mut problems)
        } else {
            None
        };

        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        Ok(Self {
            topology: topology.expect("validated"),
            app: app.expect("validated"),
            assignment: assignment.expect("validated"),
            inertia: inertia.expect("validated"),
            alpha: file.alpha,
            schedule,
            capacities: file.capacities.clone(),
            file,
        })
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        self.file.hash()
    }
}

impl ScenarioFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("scenario serializes");
        let digest = Sha256::digest(&canonical);
        let mut out = String::with_capacity(64);
        for b in digest {
            write!(out, "{b:02x}").expect("writing to a string");
        }
        out
    }
}

/// Parameters for random scenario generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    /// Tree nodes, or clusters when `servers_per_cluster` is set.
    pub nodes: usize,
    pub processes: usize,
    /// Probability that a given real-real or real-virtual pair talks.
    pub density: f64,
    pub seed: u64,
    pub max_bytes: i64,
    pub max_exec_cost: i64,
    pub servers_per_cluster: Option<usize>,
    /// Shuffle which node each virtual process is pinned to.
    pub random_pins: bool,
}

impl GenParams {
    pub fn new(nodes: usize, processes: usize, density: f64, seed: u64) -> Self {
        Self {
            nodes,
            processes,
            density,
            seed,
            max_bytes: 10,
            max_exec_cost: 5,
            servers_per_cluster: None,
            random_pins: true,
        }
    }

    /// Instance `seed` of a family: node and process counts drawn from the
    /// given ranges and a density in `[0.15, 0.7)`, all from `seed`.
    pub fn sampled(seed: u64, nodes: RangeInclusive<usize>, processes: RangeInclusive<usize>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let n = rng.gen_range(nodes);
        let p = rng.gen_range(processes);
        let density = rng.gen_range(0.15..0.7);
        Self::new(n, p, density, seed)
    }
}

/// Uniformly random labeled tree over `n` nodes via a Prüfer sequence.
pub fn random_tree_edges(n: usize, rng: &mut impl Rng) -> Vec<(u32, u32)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(n, &seq)
        }
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(u32, u32)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf.min(x) as u32, leaf.max(x) as u32));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    edges.push((a as u32, b as u32));
    edges
}

/// Random scenario, deterministic under `params.seed`.
pub fn generate(params: &GenParams) -> Result<ScenarioFile> {
    let mut problems = Vec::new();
    if params.nodes == 0 {
        problems.push("at least one node is required".to_string());
    }
    if params.processes == 0 {
        problems.push("at least one process is required".to_string());
    }
    if !(0.0..=1.0).contains(&params.density) {
        problems.push(format!("density must lie in [0, 1], got {}", params.density));
    }
    if params.max_bytes < 1 {
        problems.push("max_bytes must be at least 1".to_string());
    }
    if params.max_exec_cost < 1 {
        problems.push("max_exec_cost must be at least 1".to_string());
    }
    if params.servers_per_cluster == Some(0) {
        problems.push("servers_per_cluster must be at least 1".to_string());
    }
    if !problems.is_empty() {
        return Err(Error::Validation(problems));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let edges = random_tree_edges(params.nodes, &mut rng);
    let topology = match params.servers_per_cluster {
        None => TopologySpec::Tree {
            nodes: params.nodes,
            edges,
        },
        Some(m) => TopologySpec::Hierarchical {
            clusters: params.nodes,
            edges,
            servers_per_cluster: m,
        },
    };
    let n = topology.node_count();
    let p = params.processes;

    let exec_costs = (0..p).map(|_| rng.gen_range(1..=params.max_exec_cost)).collect();
    let placement = (0..p).map(|_| rng.gen_range(0..n as u32)).collect();
    let pins = if params.random_pins {
        let mut pins: Vec<u32> = (0..n as u32).collect();
        pins.shuffle(&mut rng);
        Some(pins)
    } else {
        None
    };
    let mut traffic = Vec::new();
    for i in 0..p {
        for k in i + 1..p + n {
            if rng.gen_bool(params.density) {
                traffic.push(TrafficEntry {
                    from: i as u32,
                    to: k as u32,
                    bytes: rng.gen_range(1..=params.max_bytes),
                });
            }
        }
    }

    Ok(ScenarioFile {
        topology,
        processes: ProcessSpec { count: p, exec_costs },
        placement,
        pins,
        traffic,
        alpha: default_alpha(),
        gamma: default_gamma(),
        traffic_schedule: Vec::new(),
        capacities: None,
        seed: Some(params.seed),
    })
}
