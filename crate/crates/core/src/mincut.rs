//! Exact s-t minimum cut on small undirected graphs via shortest
//! augmenting paths (Edmonds-Karp).

use std::collections::VecDeque;

use crate::error::{domain, Result};
use crate::scalar::Weight;

#[derive(Debug, Clone)]
pub struct FlowNetwork<W> {
    vertices: usize,
    source: usize,
    sink: usize,
    edges: Vec<(usize, usize, W)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinCut<W> {
    /// Capacity of the cut, equal to the maximum flow.
    pub value: W,
    /// Vertices not reachable from the source in the final residual graph,
    /// ascending.
    pub sink_side: Vec<usize>,
}

impl<W: Weight> FlowNetwork<W> {
    pub fn new(vertices: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= vertices || sink >= vertices {
            return Err(domain("terminal outside the vertex set"));
        }
        if source == sink {
            return Err(domain("source and sink must differ"));
        }
        Ok(Self {
            vertices,
            source,
            sink,
            edges: Vec::new(),
        })
    }

    /// Adds an undirected edge.
    pub fn add_edge(&mut self, u: usize, v: usize, capacity: W) -> Result<()> {
        if u >= self.vertices || v >= self.vertices {
            return Err(domain(format!("edge ({u}, {v}) outside the vertex set")));
        }
        if u == v {
            return Err(domain(format!("self-loop on vertex {u}")));
        }
        if capacity.is_negative() {
            return Err(domain(format!("negative capacity on edge ({u}, {v})")));
        }
        self.edges.push((u, v, capacity));
        Ok(())
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[(usize, usize, W)] {
        &self.edges
    }

    /// Capacity crossing from `side`'s complement into `side`.
    pub fn cut_capacity(&self, sink_side: &[usize]) -> W {
        let mut inside = vec![false; self.vertices];
        for &v in sink_side {
            inside[v] = true;
        }
        self.edges
            .iter()
            .filter(|&&(u, v, _)| inside[u] != inside[v])
            .map(|&(_, _, c)| c)
            .sum()
    }
}

pub fn min_cut<W: Weight>(net: &FlowNetwork<W>) -> MinCut<W> {
    let n = net.vertices;
    // arcs come in pairs: 2e is u->v, 2e+1 is v->u, both with the edge capacity
    let mut head = Vec::with_capacity(net.edges.len() * 2);
    let mut residual = Vec::with_capacity(net.edges.len() * 2);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v, c) in &net.edges {
        out[u].push(head.len());
        head.push(v);
        residual.push(c);
        out[v].push(head.len());
        head.push(u);
        residual.push(c);
    }

    let mut flow = W::zero();
    loop {
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[net.source] = true;
        let mut queue = VecDeque::from([net.source]);
        while let Some(u) = queue.pop_front() {
            if u == net.sink {
                break;
            }
            for &a in &out[u] {
                let v = head[a];
                if !seen[v] && residual[a].is_positive() {
                    seen[v] = true;
                    via[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !seen[net.sink] {
            let sink_side = (0..n).filter(|&v| !seen[v]).collect();
            return MinCut {
                value: flow,
                sink_side,
            };
        }

        let mut bottleneck = None;
        let mut v = net.sink;
        while v != net.source {
            let a = via[v];
            bottleneck = Some(match bottleneck {
                None => residual[a],
                Some(b) if residual[a] < b => residual[a],
                Some(b) => b,
            });
            v = head[a ^ 1];
        }
        let delta = bottleneck.expect("path has at least one arc");
        let mut v = net.sink;
        while v != net.source {
            let a = via[v];
            residual[a] = residual[a] - delta;
            residual[a ^ 1] = residual[a ^ 1] + delta;
            v = head[a ^ 1];
        }
        flow = flow + delta;
    }
}
