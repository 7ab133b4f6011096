//! Feasibility of edge weights with interval constraints on vertex degrees.
//!
//! Given a simple graph on a handful of vertices and bounds
//! `lower[v] <= Σ_{e ∋ v} w_e <= upper[v]`, finds nonnegative weights `w` or
//! reports that none exist. Non-bipartite graphs go through the bipartite
//! double cover; the bipartite problem is a circulation with lower bounds,
//! solved by Edmonds–Karp. Only additions, subtractions and minima touch the
//! data, so integral inputs give exact answers.

use std::collections::VecDeque;

struct Network {
    // (to, capacity, reverse edge index)
    adj: Vec<Vec<(usize, f64, usize)>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Returns the position of the forward edge in `adj[from]`.
    fn add_edge(&mut self, from: usize, to: usize, cap: f64) -> usize {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push((to, cap, rev_from));
        self.adj[to].push((from, 0.0, rev_to));
        rev_to
    }

    /// Max flow with at most `budget` augmenting paths. Returns `(flow, paths)`.
    fn max_flow(&mut self, source: usize, sink: usize, eps: f64, budget: usize) -> (f64, usize) {
        let mut total = 0.0;
        let mut paths = 0;
        while paths < budget {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
            let mut queue = VecDeque::from([source]);
            let mut seen = vec![false; self.adj.len()];
            seen[source] = true;
            while let Some(v) = queue.pop_front() {
                if v == sink {
                    break;
                }
                for (k, &(to, cap, _)) in self.adj[v].iter().enumerate() {
                    if !seen[to] && cap > eps {
                        seen[to] = true;
                        prev[to] = Some((v, k));
                        queue.push_back(to);
                    }
                }
            }
            if !seen[sink] {
                break;
            }
            let mut bottleneck = f64::INFINITY;
            let mut v = sink;
            while let Some((u, k)) = prev[v] {
                bottleneck = bottleneck.min(self.adj[u][k].1);
                v = u;
            }
            let mut v = sink;
            while let Some((u, k)) = prev[v] {
                self.adj[u][k].1 -= bottleneck;
                let (to, _, rev) = self.adj[u][k];
                self.adj[to][rev].1 += bottleneck;
                v = u;
            }
            total += bottleneck;
            paths += 1;
        }
        (total, paths)
    }

    fn residual(&self, from: usize, pos: usize) -> f64 {
        self.adj[from][pos].1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum FlowOutcome {
    Feasible { weights: Vec<f64>, paths: usize },
    Infeasible { shortfall: f64, paths: usize },
    BudgetExhausted { paths: usize },
}

/// Bipartite instance: edges go from left vertex `l` to right vertex `r`.
fn bipartite(
    left: &[(f64, f64)],
    right: &[(f64, f64)],
    edges: &[(usize, usize)],
    eps: f64,
    slack: f64,
    budget: usize,
) -> FlowOutcome {
    let (nl, nr) = (left.len(), right.len());
    let source = nl + nr;
    let sink = source + 1;
    let super_source = sink + 1;
    let super_sink = super_source + 1;
    let mut net = Network::new(super_sink + 1);

    let big: f64 = 1.0 + left.iter().chain(right).map(|&(_, hi)| hi).sum::<f64>();
    let mut excess = vec![0.0; super_source];
    let bounded = |net: &mut Network, excess: &mut Vec<f64>, from: usize, to: usize, (lo, hi): (f64, f64)| {
        net.add_edge(from, to, (hi - lo).max(0.0));
        excess[to] += lo;
        excess[from] -= lo;
    };
    for (v, &bounds) in left.iter().enumerate() {
        bounded(&mut net, &mut excess, source, v, bounds);
    }
    for (v, &bounds) in right.iter().enumerate() {
        bounded(&mut net, &mut excess, nl + v, sink, bounds);
    }
    let edge_pos: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(l, r)| (l, net.add_edge(l, nl + r, big)))
        .collect();
    net.add_edge(sink, source, big);

    let mut demand = 0.0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0.0 {
            net.add_edge(super_source, v, e);
            demand += e;
        } else if e < 0.0 {
            net.add_edge(v, super_sink, -e);
        }
    }
    let (flow, paths) = net.max_flow(super_source, super_sink, eps, budget);
    let shortfall = demand - flow;
    if shortfall <= slack {
        // edges carry no lower bound, so their flow is what left the edge's capacity
        let weights = edge_pos
            .iter()
            .map(|&(l, pos)| (big - net.residual(l, pos)).max(0.0))
            .collect();
        FlowOutcome::Feasible { weights, paths }
    } else if paths >= budget {
        FlowOutcome::BudgetExhausted { paths }
    } else {
        FlowOutcome::Infeasible { shortfall, paths }
    }
}

/// Weights on the undirected `edges` with every degree inside `bounds[v]`.
pub(crate) fn degree_interval_weights(
    bounds: &[(f64, f64)],
    edges: &[(usize, usize)],
    eps: f64,
    slack: f64,
    budget: usize,
) -> FlowOutcome {
    // double cover: each undirected edge {u, v} becomes u'→v'' and v'→u''
    let directed: Vec<(usize, usize)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    match bipartite(bounds, bounds, &directed, eps, slack, budget) {
        FlowOutcome::Feasible { weights, paths } => {
            let averaged = weights.chunks(2).map(|w| 0.5 * (w[0] + w[1])).collect();
            FlowOutcome::Feasible {
                weights: averaged,
                paths,
            }
        }
        other => other,
    }
}
