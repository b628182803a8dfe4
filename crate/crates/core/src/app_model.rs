//! Application graph: real processes, node-pinned virtual processes and
//! the traffic between them.
//!
//! Ids are zero-based. Real processes occupy `0..P`; the virtual process
//! standing in for a node occupies `P..P+N`. Traffic is stored sparsely as
//! directed volumes `c_ik`; the dense `(P+N)²` matrix is only a view.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Weight;
use crate::topology::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProcessId(pub u32);

impl ProcessId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ProcessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

/// Sparse square matrix of directed data volumes.
#[derive(Debug, Clone, PartialEq)]
pub struct TrafficMatrix<W> {
    dim: usize,
    entries: BTreeMap<(ProcessId, ProcessId), W>,
}

impl<W: Weight> TrafficMatrix<W> {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a matrix from `(from, to, volume)` triples; repeated pairs add up.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (ProcessId, ProcessId, W)>,
    ) -> Result<Self> {
        let mut m = Self::new(dim);
        for (i, k, v) in entries {
            m.add(i, k, v)?;
        }
        Ok(m)
    }

    pub fn add(&mut self, from: ProcessId, to: ProcessId, volume: W) -> Result<()> {
        if from.index() >= self.dim || to.index() >= self.dim {
            return Err(domain(format!(
                "traffic {from} -> {to} outside a {0}x{0} matrix",
                self.dim
            )));
        }
        if volume.is_negative() {
            return Err(domain(format!("negative traffic {from} -> {to}")));
        }
        let slot = self.entries.entry((from, to)).or_insert_with(W::zero);
        *slot = *slot + volume;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, from: ProcessId, to: ProcessId) -> W {
        self.entries.get(&(from, to)).copied().unwrap_or_else(W::zero)
    }

    /// Nonzero directed entries in ascending `(from, to)` order.
    pub fn iter(&self) -> impl Iterator<Item = (ProcessId, ProcessId, W)> + '_ {
        self.entries
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(i, k), &v)| (i, k, v))
    }

    pub fn dense(&self) -> Vec<Vec<W>> {
        let mut m = vec![vec![W::zero(); self.dim]; self.dim];
        for (i, k, v) in self.iter() {
            m[i.index()][k.index()] = v;
        }
        m
    }

    /// Rounds every entry half-up to the nearest integer of another
    /// weight type.
    pub fn rounded<V: Weight>(&self) -> TrafficMatrix<V> {
        let entries = self
            .entries
            .iter()
            .filter_map(|(&key, v)| {
                let x = v.to_f64()?;
                let r = (x + 0.5).floor();
                (r > 0.0).then(|| (key, V::from_f64(r).expect("rounded volume fits")))
            })
            .collect();
        TrafficMatrix {
            dim: self.dim,
            entries,
        }
    }
}

/// The application: `P` real processes, one virtual process per node,
/// directed traffic and per-process execution costs.
#[derive(Debug, Clone)]
pub struct AppGraph<W> {
    p: usize,
    n: usize,
    traffic: TrafficMatrix<W>,
    exec_cost: Vec<W>,
    virtual_pin: Vec<NodeId>,
    // symmetric loads c_ik + c_ki, sorted by partner id
    partners: Vec<Vec<(ProcessId, W)>>,
}

impl<W: Weight> AppGraph<W> {
    /// Virtual process `P + x` is pinned to node `x`.
    pub fn new(n_nodes: usize, exec_cost: Vec<W>, traffic: TrafficMatrix<W>) -> Result<Self> {
        let pins = (0..n_nodes as u32).map(NodeId).collect();
        Self::with_pins(exec_cost, pins, traffic)
    }

    /// `pins[j]` is the node of virtual process `P + j`; it must be a
    /// permutation of the nodes.
    pub fn with_pins(
        exec_cost: Vec<W>,
        pins: Vec<NodeId>,
        traffic: TrafficMatrix<W>,
    ) -> Result<Self> {
        let p = exec_cost.len();
        let n = pins.len();
        let mut problems = Vec::new();

        for (i, u) in exec_cost.iter().enumerate() {
            if !u.is_positive() {
                problems.push(format!("execution cost of p{i} must be positive, got {u}"));
            }
        }
        let mut seen = vec![false; n];
        for (j, pin) in pins.iter().enumerate() {
            match seen.get_mut(pin.index()) {
                Some(s) if !*s => *s = true,
                Some(_) => problems.push(format!("node {pin} pinned by more than one virtual process")),
                None => problems.push(format!("virtual process p{} pinned to unknown node {pin}", p + j)),
            }
        }
        if traffic.dim() != p + n {
            problems.push(format!(
                "traffic matrix is {0}x{0}, expected {1}x{1}",
                traffic.dim(),
                p + n
            ));
        }
        for (i, k, v) in traffic.iter() {
            if i == k {
                problems.push(format!("self traffic on {i}"));
            } else if i.index() >= p && k.index() >= p {
                problems.push(format!("traffic {i} -> {k} between two virtual processes"));
            }
            if v.is_negative() {
                problems.push(format!("negative traffic {i} -> {k}"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }

        let mut acc: Vec<BTreeMap<ProcessId, W>> = vec![BTreeMap::new(); p + n];
        for (i, k, v) in traffic.iter() {
            for (a, b) in [(i, k), (k, i)] {
                let slot = acc[a.index()].entry(b).or_insert_with(W::zero);
                *slot = *slot + v;
            }
        }
        let partners = acc.into_iter().map(|m| m.into_iter().collect()).collect();

        Ok(Self {
            p,
            n,
            traffic,
            exec_cost,
            virtual_pin: pins,
            partners,
        })
    }

    /// Same processes and pins, new traffic volumes.
    pub fn with_traffic(&self, traffic: TrafficMatrix<W>) -> Result<Self> {
        Self::with_pins(self.exec_cost.clone(), self.virtual_pin.clone(), traffic)
    }

    pub fn real_count(&self) -> usize {
        self.p
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Total number of processes, real and virtual.
    pub fn len(&self) -> usize {
        self.p + self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn real_processes(&self) -> impl Iterator<Item = ProcessId> {
        (0..self.p as u32).map(ProcessId)
    }

    pub fn is_real(&self, i: ProcessId) -> bool {
        i.index() < self.p
    }

    pub fn is_virtual(&self, i: ProcessId) -> bool {
        i.index() >= self.p && i.index() < self.p + self.n
    }

    pub fn check(&self, i: ProcessId) -> Result<()> {
        if i.index() < self.len() {
            Ok(())
        } else {
            Err(domain(format!("unknown process {i}")))
        }
    }

    pub fn check_real(&self, i: ProcessId) -> Result<()> {
        self.check(i)?;
        if self.is_real(i) {
            Ok(())
        } else {
            Err(domain(format!("{i} is virtual and never migrates")))
        }
    }

    pub fn traffic(&self) -> &TrafficMatrix<W> {
        &self.traffic
    }

    /// Directed volume `c_ik`.
    pub fn volume(&self, i: ProcessId, k: ProcessId) -> W {
        self.traffic.get(i, k)
    }

    /// Bidirectional exchange `c_ik + c_ki`.
    pub fn load(&self, i: ProcessId, k: ProcessId) -> Result<W> {
        self.check(i)?;
        self.check(k)?;
        if i == k {
            return Err(domain(format!("load of {i} with itself")));
        }
        Ok(self.pair_load(i, k))
    }

    pub(crate) fn pair_load(&self, i: ProcessId, k: ProcessId) -> W {
        let list = &self.partners[i.index()];
        match list.binary_search_by_key(&k, |&(id, _)| id) {
            Ok(pos) => list[pos].1,
            Err(_) => W::zero(),
        }
    }

    /// Every process with nonzero load to `i`, ascending, with that load.
    pub fn partners(&self, i: ProcessId) -> &[(ProcessId, W)] {
        &self.partners[i.index()]
    }

    /// `Σ_k load(i, k)` over all partners.
    pub fn total_external_load(&self, i: ProcessId) -> Result<W> {
        self.check(i)?;
        Ok(self.partners(i).iter().map(|&(_, v)| v).sum())
    }

    pub fn exec_cost(&self, i: ProcessId) -> W {
        self.exec_cost[i.index()]
    }

    pub fn exec_costs(&self) -> &[W] {
        &self.exec_cost
    }

    pub fn pins(&self) -> &[NodeId] {
        &self.virtual_pin
    }

    /// Node a virtual process is pinned to.
    pub fn pin_of(&self, v: ProcessId) -> Option<NodeId> {
        self.is_virtual(v).then(|| self.virtual_pin[v.index() - self.p])
    }

    /// The virtual process standing in for `node`.
    pub fn virtual_of(&self, node: NodeId) -> Option<ProcessId> {
        self.virtual_pin
            .iter()
            .position(|&x| x == node)
            .map(|j| ProcessId((self.p + j) as u32))
    }

    /// Whether two real processes exchange any data.
    pub fn adjacent(&self, i: ProcessId, k: ProcessId) -> bool {
        i != k && !self.pair_load(i, k).is_zero()
    }
}

/// Exponential smoothing of measured traffic:
/// `volume[t] = alpha * volume[t-1] + (1 - alpha) * measured[t]`.
#[derive(Debug, Clone)]
pub struct TrafficAverager<T> {
    alpha: T,
    volume: TrafficMatrix<T>,
}

impl<T: Weight> TrafficAverager<T> {
    pub fn new(alpha: T, initial: TrafficMatrix<T>) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::Config(format!(
                "averaging constant must lie strictly between 0 and 1, got {alpha}"
            )));
        }
        Ok(Self {
            alpha,
            volume: initial,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn volume(&self) -> &TrafficMatrix<T> {
        &self.volume
    }

    /// Folds one monitoring window into the average.
    pub fn update(&mut self, measured: &TrafficMatrix<T>) -> Result<()> {
        if measured.dim() != self.volume.dim() {
            return Err(domain(format!(
                "measured matrix is {0}x{0}, averager holds {1}x{1}",
                measured.dim(),
                self.volume.dim()
            )));
        }
        if let Some((i, k, _)) = measured.entries.iter().map(|(&(i, k), &v)| (i, k, v)).find(|e| e.2.is_negative()) {
            return Err(domain(format!("negative measured traffic {i} -> {k}")));
        }
        let keep = self.alpha;
        let fresh = T::one() - self.alpha;
        let mut keys: Vec<_> = self.volume.entries.keys().copied().collect();
        keys.extend(measured.entries.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            let old = self.volume.get(key.0, key.1);
            let new = keep * old + fresh * measured.get(key.0, key.1);
            self.volume.entries.insert(key, new);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn pid(i: u32) -> ProcessId {
        ProcessId(i)
    }

    fn two_process_app(c01: i64, c10: i64) -> AppGraph<i64> {
        let t = TrafficMatrix::from_entries(3, [(pid(0), pid(1), c01), (pid(1), pid(0), c10)]).unwrap();
        AppGraph::new(1, vec![1, 1], t).unwrap()
    }

    #[test]
    fn load_sums_both_directions() {
        assert_eq!(two_process_app(7, 0).load(pid(0), pid(1)).unwrap(), 7);
        assert_eq!(two_process_app(0, 0).load(pid(0), pid(1)).unwrap(), 0);
        assert_eq!(two_process_app(3, 4).load(pid(0), pid(1)).unwrap(), 7);
        let app = two_process_app(3, 4);
        assert!(app.load(pid(0), pid(0)).is_err());
        assert!(app.load(pid(0), pid(9)).is_err());
    }

    #[test]
    fn external_load_of_isolated_process_is_zero() {
        let app = AppGraph::new(2, vec![5i64], TrafficMatrix::new(3)).unwrap();
        assert_eq!(app.total_external_load(pid(0)).unwrap(), 0);
    }

    #[test]
    fn rejects_malformed_graphs() {
        // virtual-virtual traffic, self traffic and nonpositive cost together
        let t = TrafficMatrix::from_entries(4, [(pid(2), pid(3), 1i64), (pid(0), pid(0), 2)]).unwrap();
        match AppGraph::new(2, vec![0i64, 1], t) {
            Err(Error::Validation(p)) => assert_eq!(p.len(), 3, "{p:?}"),
            other => panic!("unexpected {other:?}"),
        }
        let err = AppGraph::with_pins(vec![1i64], vec![NodeId(0), NodeId(0)], TrafficMatrix::new(3));
        assert!(err.is_err());
        assert!(TrafficMatrix::from_entries(2, [(pid(0), pid(1), -1i64)]).is_err());
    }

    #[test]
    fn pins_map_both_ways() {
        let app = AppGraph::with_pins(vec![1i64], vec![NodeId(1), NodeId(0)], TrafficMatrix::new(3)).unwrap();
        assert_eq!(app.pin_of(pid(1)), Some(NodeId(1)));
        assert_eq!(app.pin_of(pid(0)), None);
        assert_eq!(app.virtual_of(NodeId(0)), Some(pid(2)));
        assert!(app.check_real(pid(1)).is_err());
    }

    #[test]
    fn averaging_examples() {
        let init = TrafficMatrix::from_entries(2, [(pid(0), pid(1), 10.0f64)]).unwrap();
        let mut avg = TrafficAverager::new(0.5, init).unwrap();
        avg.update(&TrafficMatrix::from_entries(2, [(pid(0), pid(1), 20.0)]).unwrap()).unwrap();
        assert_eq!(avg.volume().get(pid(0), pid(1)), 15.0);

        assert!(matches!(TrafficAverager::new(1.0f64, TrafficMatrix::new(2)), Err(Error::Config(_))));
        assert!(matches!(TrafficAverager::new(0.0f64, TrafficMatrix::new(2)), Err(Error::Config(_))));

        // exact with rationals: 0.9 * 0 + 0.1 * 10 = 1
        let mut avg = TrafficAverager::new(Ratio::new(9i64, 10), TrafficMatrix::new(2)).unwrap();
        avg.update(&TrafficMatrix::from_entries(2, [(pid(1), pid(0), Ratio::from_integer(10))]).unwrap()).unwrap();
        assert_eq!(avg.volume().get(pid(1), pid(0)), Ratio::from_integer(1));

        assert!(avg.update(&TrafficMatrix::new(3)).is_err());
    }

    #[test]
    fn rounding_is_half_up() {
        let m = TrafficMatrix::from_entries(
            3,
            [(pid(0), pid(1), 2.5f64), (pid(1), pid(0), 2.49), (pid(0), pid(2), 0.4)],
        )
        .unwrap();
        let r: TrafficMatrix<i64> = m.rounded();
        assert_eq!(r.get(pid(0), pid(1)), 3);
        assert_eq!(r.get(pid(1), pid(0)), 2);
        assert_eq!(r.iter().count(), 2);
    }
}
