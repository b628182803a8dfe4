use std::collections::BTreeMap;

use crate::app_model::{AppGraph, ProcessId};
use crate::cost::Assignment;
use crate::error::Result;
use crate::migration::{build_mincut_graph, InertiaConfig, Mechanism, MigrationProposal, MinCutGraph};
use crate::scalar::Weight;
use crate::topology::{Direction, NodeId, Topology};

/// What a node knows about the processes it hosts.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalView<W> {
    pub node: NodeId,
    pub hosted: Vec<ProcessId>,
    /// Loads between pairs of hosted processes.
    pub local_pairs: Vec<(ProcessId, ProcessId, W)>,
    /// Per hosted process: load with the virtual process of this node.
    pub pinned_local: Vec<W>,
    /// Per hosted process: remote load aggregated by direction.
    pub external: Vec<BTreeMap<Direction, W>>,
}

#[derive(Debug, Clone)]
pub struct NodeAgent<W> {
    view: LocalView<W>,
}

impl<W: Weight> NodeAgent<W> {
    /// Captures the local view of `node` from a frozen snapshot.
    pub fn observe(node: NodeId, app: &AppGraph<W>, topo: &Topology, f: &Assignment) -> Self {
        let hosted = f.hosted(node);
        let mut local_pairs = Vec::new();
        let mut pinned_local = Vec::with_capacity(hosted.len());
        let mut external = Vec::with_capacity(hosted.len());
        for &i in &hosted {
            let mut pinned = W::zero();
            let mut by_direction: BTreeMap<Direction, W> = BTreeMap::new();
            for &(k, v) in app.partners(i) {
                let hk = f.host(k);
                match topo.direction(node, hk) {
                    None if app.is_real(k) => {
                        if k > i {
                            local_pairs.push((i, k, v));
                        }
                    }
                    None => pinned = pinned + v,
                    Some(dir) => {
                        let slot = by_direction.entry(dir).or_insert_with(W::zero);
                        *slot = *slot + v;
                    }
                }
            }
            pinned_local.push(pinned);
            external.push(by_direction);
        }
        Self {
            view: LocalView {
                node,
                hosted,
                local_pairs,
                pinned_local,
                external,
            },
        }
    }

    pub fn view(&self) -> &LocalView<W> {
        &self.view
    }

    pub fn node(&self) -> NodeId {
        self.view.node
    }

    /// Decision graph toward neighbor `d`, from the local view only.
    pub fn graph_toward(&self, topo: &Topology, d: NodeId) -> MinCutGraph<W> {
        let s = self.view.node;
        let terminal = self
            .view
            .external
            .iter()
            .zip(&self.view.pinned_local)
            .map(|(dirs, &pinned)| {
                let mut gain = W::zero();
                let mut loss = pinned;
                for (&dir, &v) in dirs {
                    let change = topo.direction_gain(s, d, dir);
                    let scaled = v * W::from_i32(change.abs()).expect("hop change fits weight");
                    if change > 0 {
                        gain = gain + scaled;
                    } else if change < 0 {
                        loss = loss + scaled;
                    }
                }
                (gain, loss)
            })
            .collect();
        MinCutGraph::from_parts(
            s,
            d,
            self.view.hosted.clone(),
            terminal,
            self.view.local_pairs.iter().copied(),
        )
    }

    /// One proposal per beneficial direction, ascending by destination.
    pub fn propose(
        &self,
        topo: &Topology,
        mechanism: Mechanism,
        inertia: &InertiaConfig,
    ) -> Vec<MigrationProposal<W>> {
        if self.view.hosted.is_empty() {
            return Vec::new();
        }
        propose_with(topo, self.view.node, mechanism, inertia, |d| {
            Ok(self.graph_toward(topo, d))
        })
        .expect("local graphs cannot fail")
    }
}

/// Same proposals computed from global state; used to check that agents
/// need nothing beyond their local view.
pub fn propose_from_global<W: Weight>(
    app: &AppGraph<W>,
    topo: &Topology,
    f: &Assignment,
    s: NodeId,
    mechanism: Mechanism,
    inertia: &InertiaConfig,
) -> Result<Vec<MigrationProposal<W>>> {
    if f.hosted(s).is_empty() {
        return Ok(Vec::new());
    }
    propose_with(topo, s, mechanism, inertia, |d| build_mincut_graph(app, topo, f, s, d))
}

// Hierarchical nodes try inter-cluster destinations first and fall back to
// intra-cluster ones only when none is beneficial.
fn propose_with<W: Weight>(
    topo: &Topology,
    s: NodeId,
    mechanism: Mechanism,
    inertia: &InertiaConfig,
    graph: impl Fn(NodeId) -> Result<MinCutGraph<W>>,
) -> Result<Vec<MigrationProposal<W>>> {
    let neighbors = topo.neighbors(s)?;
    let (inter, intra): (Vec<NodeId>, Vec<NodeId>) =
        neighbors.into_iter().partition(|&d| !topo.same_cluster(s, d));
    let mut out = Vec::new();
    for tier in [inter, intra] {
        for d in tier {
            if let Some(p) = graph(d)?.select(mechanism, inertia) {
                out.push(p);
            }
        }
        if !out.is_empty() {
            break;
        }
    }
    Ok(out)
}
