//! Network models: a plain tree of nodes, or a tree of clusters whose
//! servers are fully connected.
//!
//! Every location that can host a process is a [`NodeId`]. In hierarchical
//! mode the ids are flattened as `cluster * servers_per_cluster + server`.
//! Hop distances and next-hop tables are precomputed at construction so all
//! queries are constant time.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// Where a remote partner is reached from a given node.
///
/// Node agents aggregate external traffic by direction, which is all they
/// need to evaluate moves toward any 1-hop destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Tree mode: the next hop toward the partner. Hierarchical mode: the
    /// exact server hosting the partner (own or adjacent cluster).
    Node(NodeId),
    /// Hierarchical mode: a partner beyond the given adjacent cluster.
    Cluster(u32),
}

/// An undirected tree over `0..n`.
#[derive(Debug, Clone)]
pub struct TreeTopology {
    n: usize,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
    dist: Vec<Vec<u32>>,
    // next[s][d]: neighbor of s on the path s -> d (s itself when s == d)
    next: Vec<Vec<u32>>,
}

impl TreeTopology {
    /// Builds and validates a tree. All violations are reported together;
    /// a cycle is named by its vertices.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut problems = Vec::new();
        if n == 0 {
            return Err(Error::Validation(vec!["topology has no nodes".into()]));
        }
        if edges.len() != n - 1 {
            problems.push(format!(
                "a tree over {n} nodes needs exactly {} edges, found {}",
                n - 1,
                edges.len()
            ));
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }

        for &(a, b) in edges {
            let (ua, ub) = (a as usize, b as usize);
            if ua >= n || ub >= n {
                problems.push(format!("edge ({a}, {b}) references a node outside 0..{n}"));
                continue;
            }
            if ua == ub {
                problems.push(format!("self-loop on node {a}"));
                continue;
            }
            let (ra, rb) = (find(&mut parent, ua), find(&mut parent, ub));
            if ra == rb {
                let mut cycle = path_in_forest(&adjacency, a, b);
                cycle.push(a);
                let names: Vec<String> = cycle.iter().map(|v| format!("n{v}")).collect();
                problems.push(format!("edges contain a cycle: {}", names.join(" -> ")));
                continue;
            }
            parent[ra] = rb;
            adjacency[ua].push(b);
            adjacency[ub].push(a);
        }

        if problems.is_empty() {
            let root = find(&mut parent, 0);
            if (1..n).any(|v| find(&mut parent, v) != root) {
                problems.push("edges do not connect all nodes".into());
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }

        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut dist = vec![vec![0; n]; n];
        let mut next = vec![vec![0; n]; n];
        for target in 0..n {
            // BFS from target: the BFS parent of s is s's next hop toward target.
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([target]);
            seen[target] = true;
            next[target][target] = target as u32;
            while let Some(u) = queue.pop_front() {
                for &v in &adjacency[u] {
                    let v = v as usize;
                    if !seen[v] {
                        seen[v] = true;
                        dist[v][target] = dist[u][target] + 1;
                        next[v][target] = u as u32;
                        queue.push_back(v);
                    }
                }
            }
        }

        Ok(Self {
            n,
            edges: edges.to_vec(),
            adjacency,
            dist,
            next,
        })
    }

    /// A path `0 - 1 - ... - (n-1)`.
    pub fn chain(n: usize) -> Result<Self> {
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges)
    }

    /// Node 0 connected to `leaves` leaf nodes.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<(u32, u32)> = (1..=leaves as u32).map(|v| (0, v)).collect();
        Self::new(leaves + 1, &edges)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn distance(&self, x: u32, y: u32) -> u32 {
        self.dist[x as usize][y as usize]
    }

    pub fn next_hop(&self, s: u32, d: u32) -> u32 {
        self.next[s as usize][d as usize]
    }

    pub fn adjacent(&self, x: u32) -> &[u32] {
        &self.adjacency[x as usize]
    }
}

// Vertices on the path a -> b in a forest (a and b known to be connected).
fn path_in_forest(adjacency: &[Vec<u32>], a: u32, b: u32) -> Vec<u32> {
    let n = adjacency.len();
    let mut prev = vec![u32::MAX; n];
    let mut queue = VecDeque::from([a]);
    prev[a as usize] = a;
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &v in &adjacency[u as usize] {
            if prev[v as usize] == u32::MAX {
                prev[v as usize] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = prev[cur as usize];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Clusters arranged as a tree, each holding `servers_per_cluster`
/// fully connected servers.
#[derive(Debug, Clone)]
pub struct HierarchicalTopology {
    clusters: TreeTopology,
    servers_per_cluster: usize,
}

impl HierarchicalTopology {
    pub fn new(clusters: TreeTopology, servers_per_cluster: usize) -> Result<Self> {
        if servers_per_cluster == 0 {
            return Err(Error::Validation(vec![
                "servers_per_cluster must be at least 1".into(),
            ]));
        }
        Ok(Self {
            clusters,
            servers_per_cluster,
        })
    }

    pub fn cluster_tree(&self) -> &TreeTopology {
        &self.clusters
    }

    pub fn servers_per_cluster(&self) -> usize {
        self.servers_per_cluster
    }

    pub fn cluster_of(&self, x: NodeId) -> u32 {
        x.0 / self.servers_per_cluster as u32
    }

    pub fn server(&self, cluster: u32, index: u32) -> NodeId {
        NodeId(cluster * self.servers_per_cluster as u32 + index)
    }

    fn distance(&self, x: NodeId, y: NodeId) -> u32 {
        if x == y {
            return 0;
        }
        let (cx, cy) = (self.cluster_of(x), self.cluster_of(y));
        if cx == cy {
            1
        } else {
            self.clusters.distance(cx, cy)
        }
    }
}

#[derive(Debug, Clone)]
pub enum Topology {
    Tree(TreeTopology),
    Hierarchical(HierarchicalTopology),
}

impl From<TreeTopology> for Topology {
    fn from(t: TreeTopology) -> Self {
        Topology::Tree(t)
    }
}

impl From<HierarchicalTopology> for Topology {
    fn from(t: HierarchicalTopology) -> Self {
        Topology::Hierarchical(t)
    }
}

impl Topology {
    /// Number of hosting locations (tree nodes or servers).
    pub fn node_count(&self) -> usize {
        match self {
            Topology::Tree(t) => t.len(),
            Topology::Hierarchical(h) => h.clusters.len() * h.servers_per_cluster,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count() as u32).map(NodeId)
    }

    pub fn is_tree(&self) -> bool {
        matches!(self, Topology::Tree(_))
    }

    pub fn check(&self, x: NodeId) -> Result<()> {
        if x.index() < self.node_count() {
            Ok(())
        } else {
            Err(domain(format!("unknown node {x}")))
        }
    }

    /// Hop distance; panics on ids outside the topology.
    pub(crate) fn h(&self, x: NodeId, y: NodeId) -> u32 {
        match self {
            Topology::Tree(t) => t.distance(x.0, y.0),
            Topology::Hierarchical(h) => h.distance(x, y),
        }
    }

    pub fn hop_distance(&self, x: NodeId, y: NodeId) -> Result<u32> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.h(x, y))
    }

    /// Whether `z` lies on the route between `x` and `y` (endpoints
    /// included). Always false for `x == y`: co-located partners never
    /// route through anything.
    pub fn on_path(&self, z: NodeId, x: NodeId, y: NodeId) -> Result<bool> {
        self.check(z)?;
        self.check(x)?;
        self.check(y)?;
        Ok(self.on_path_unchecked(z, x, y))
    }

    pub(crate) fn on_path_unchecked(&self, z: NodeId, x: NodeId, y: NodeId) -> bool {
        x != y && self.h(x, z) + self.h(z, y) == self.h(x, y)
    }

    /// All 1-hop destinations of `x`, ascending. In hierarchical mode these
    /// are the other servers of the cluster plus every server of the
    /// adjacent clusters.
    pub fn neighbors(&self, x: NodeId) -> Result<Vec<NodeId>> {
        self.check(x)?;
        Ok(self.neighbors_unchecked(x))
    }

    pub(crate) fn neighbors_unchecked(&self, x: NodeId) -> Vec<NodeId> {
        match self {
            Topology::Tree(t) => t.adjacent(x.0).iter().map(|&v| NodeId(v)).collect(),
            Topology::Hierarchical(_) => self.nodes().filter(|&y| self.h(x, y) == 1).collect(),
        }
    }

    /// The neighbor of `s` on the route toward `d`. Hierarchical mode only
    /// answers within a cluster; across clusters use the cluster tree.
    pub fn next_hop(&self, s: NodeId, d: NodeId) -> Result<NodeId> {
        self.check(s)?;
        self.check(d)?;
        if s == d {
            return Err(domain(format!("next_hop needs distinct nodes, got {s} twice")));
        }
        match self {
            Topology::Tree(t) => Ok(NodeId(t.next_hop(s.0, d.0))),
            Topology::Hierarchical(h) => {
                if h.cluster_of(s) == h.cluster_of(d) {
                    Ok(d)
                } else {
                    Err(domain(
                        "next_hop across clusters is defined on the cluster tree",
                    ))
                }
            }
        }
    }

    /// Direction from `from` toward a partner hosted at `to`; `None` when
    /// co-located.
    pub fn direction(&self, from: NodeId, to: NodeId) -> Option<Direction> {
        if from == to {
            return None;
        }
        Some(match self {
            Topology::Tree(t) => Direction::Node(NodeId(t.next_hop(from.0, to.0))),
            Topology::Hierarchical(h) => {
                let (cf, ct) = (h.cluster_of(from), h.cluster_of(to));
                if cf == ct || h.clusters.distance(cf, ct) == 1 {
                    Direction::Node(to)
                } else {
                    Direction::Cluster(h.clusters.next_hop(cf, ct))
                }
            }
        })
    }

    /// Change in hop distance to a partner in direction `dir` when moving
    /// from `s` to the 1-hop destination `d`: positive means closer.
    pub fn direction_gain(&self, s: NodeId, d: NodeId, dir: Direction) -> i32 {
        match (self, dir) {
            (Topology::Tree(_), Direction::Node(n)) => {
                if n == d {
                    1
                } else {
                    -1
                }
            }
            (Topology::Hierarchical(_), Direction::Node(x)) => {
                self.h(s, x) as i32 - self.h(d, x) as i32
            }
            (Topology::Hierarchical(h), Direction::Cluster(c)) => {
                let cd = h.cluster_of(d);
                if cd == h.cluster_of(s) {
                    0
                } else if cd == c {
                    1
                } else {
                    -1
                }
            }
            (Topology::Tree(_), Direction::Cluster(_)) => {
                unreachable!("tree topologies never produce cluster directions")
            }
        }
    }

    /// Cluster index of a node; every tree node is its own cluster.
    pub fn cluster_of(&self, x: NodeId) -> u32 {
        match self {
            Topology::Tree(_) => x.0,
            Topology::Hierarchical(h) => h.cluster_of(x),
        }
    }

    pub fn same_cluster(&self, x: NodeId, y: NodeId) -> bool {
        self.cluster_of(x) == self.cluster_of(y)
    }

    pub fn as_tree(&self) -> Option<&TreeTopology> {
        match self {
            Topology::Tree(t) => Some(t),
            Topology::Hierarchical(_) => None,
        }
    }

    pub fn as_hierarchical(&self) -> Option<&HierarchicalTopology> {
        match self {
            Topology::Tree(_) => None,
            Topology::Hierarchical(h) => Some(h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u32) -> NodeId {
        NodeId(x)
    }

    #[test]
    fn chain_distances_and_next_hops() {
        let t: Topology = TreeTopology::chain(4).unwrap().into();
        assert_eq!(t.hop_distance(n(0), n(0)).unwrap(), 0);
        assert_eq!(t.hop_distance(n(0), n(3)).unwrap(), 3);
        assert_eq!(t.next_hop(n(0), n(3)).unwrap(), n(1));
        assert_eq!(t.next_hop(n(2), n(3)).unwrap(), n(3));
        assert!(t.next_hop(n(1), n(1)).is_err());
        assert!(t.on_path(n(1), n(0), n(2)).unwrap());
        assert!(!t.on_path(n(3), n(0), n(2)).unwrap());
        assert!(!t.on_path(n(1), n(1), n(1)).unwrap());
    }

    #[test]
    fn star_neighbors() {
        let t: Topology = TreeTopology::star(4).unwrap().into();
        assert_eq!(t.neighbors(n(3)).unwrap(), vec![n(0)]);
        assert_eq!(t.neighbors(n(0)).unwrap().len(), 4);
        assert!(t.neighbors(n(9)).is_err());
        assert!(t.hop_distance(n(0), n(5)).is_err());
    }

    #[test]
    fn rejects_cycles_and_names_them() {
        let err = TreeTopology::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("cycle"), "{msg}");
        assert!(msg.contains("n2") && msg.contains("n0") && msg.contains("n1"), "{msg}");
    }

    #[test]
    fn reports_every_problem() {
        let err = TreeTopology::new(4, &[(0, 0), (1, 7)]).unwrap_err();
        match err {
            Error::Validation(problems) => assert_eq!(problems.len(), 3, "{problems:?}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(TreeTopology::new(4, &[(0, 1), (2, 3), (0, 1)]).is_err());
    }

    #[test]
    fn disconnected_forest_rejected() {
        // right edge count, but a cycle leaves node 3 unreachable
        let err = TreeTopology::new(4, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert!(err.to_string().contains("cycle"));
    }

    #[test]
    fn hierarchical_distances() {
        let clusters = TreeTopology::chain(3).unwrap();
        let t: Topology = HierarchicalTopology::new(clusters, 3).unwrap().into();
        assert_eq!(t.node_count(), 9);
        // server 0 of cluster 0 sees its two peers plus all servers of cluster 1
        let nb = t.neighbors(n(0)).unwrap();
        assert_eq!(nb, vec![n(1), n(2), n(3), n(4), n(5)]);
        let intra: Vec<_> = nb.iter().filter(|&&y| t.same_cluster(y, n(0))).collect();
        assert_eq!(intra.len(), 2);
        assert_eq!(t.hop_distance(n(0), n(1)).unwrap(), 1);
        assert_eq!(t.hop_distance(n(0), n(8)).unwrap(), 2);
        assert_eq!(t.next_hop(n(0), n(2)).unwrap(), n(2));
        assert!(t.next_hop(n(0), n(8)).is_err());
        assert!(HierarchicalTopology::new(TreeTopology::chain(1).unwrap(), 0).is_err());
    }

    #[test]
    fn direction_gain_matches_distance_change() {
        let clusters = TreeTopology::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let t: Topology = HierarchicalTopology::new(clusters, 2).unwrap().into();
        for s in t.nodes() {
            for d in t.neighbors_unchecked(s) {
                for y in t.nodes() {
                    if let Some(dir) = t.direction(s, y) {
                        let expected = t.h(s, y) as i32 - t.h(d, y) as i32;
                        assert_eq!(t.direction_gain(s, d, dir), expected, "{s} {d} {y}");
                    }
                }
            }
        }
    }
}
