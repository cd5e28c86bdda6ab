//! Min-cost flow and vertex-disjoint path routing.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Residual network; arc `2i` is the forward arc of edge `i`, `2i + 1` its
/// reverse.
#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let id = self.arcs.len() / 2;
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap, cost });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc {
            to: u,
            cap: 0,
            cost: -cost,
        });
        id
    }

    /// Flow currently on edge `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[2 * id + 1].cap
    }

    /// Successive shortest paths (Bellman-Ford queue) from `s` to `t`, at
    /// most `limit` units. Returns `(flow, cost)`.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let n = self.adj.len();
        let (mut flow, mut cost) = (0, 0);
        while flow < limit {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            let mut queued = vec![false; n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                queued[u] = false;
                for &a in &self.adj[u] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[u] + arc.cost;
                        via[arc.to] = a;
                        if !queued[arc.to] {
                            queued[arc.to] = true;
                            queue.push_back(arc.to);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let a = via[v];
                push = push.min(self.arcs[a].cap);
                v = self.arcs[a ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.arcs[a].cap -= push;
                self.arcs[a ^ 1].cap += push;
                v = self.arcs[a ^ 1].to;
            }
            flow += push;
            cost += push * dist[t];
        }
        (flow, cost)
    }

    /// Maximum flow (costs ignored).
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.adj.len();
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.adj[u] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && !seen[arc.to] {
                        seen[arc.to] = true;
                        via[arc.to] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let a = via[v];
                push = push.min(self.arcs[a].cap);
                v = self.arcs[a ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.arcs[a].cap -= push;
                self.arcs[a ^ 1].cap += push;
                v = self.arcs[a ^ 1].to;
            }
            flow += push;
        }
        flow
    }
}

/// `p` vertex-disjoint paths from `sources` to `sinks` along `arcs`
/// (directed), with the fewest vertices in total when `shortest` is set.
/// Vertices flagged in `blocked` are unusable.
pub fn disjoint_paths(
    n: usize,
    arcs: &[(usize, usize)],
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    blocked: &[bool],
    shortest: bool,
) -> Option<Vec<Vec<usize>>> {
    let src = 2 * n;
    let snk = 2 * n + 1;
    let mut net = FlowNetwork::new(2 * n + 2);
    let mut arc_ids = Vec::with_capacity(arcs.len());
    let cost = i64::from(shortest);
    for v in 0..n {
        if !blocked[v] {
            net.add_edge(2 * v, 2 * v + 1, 1, cost);
        }
    }
    for &(u, v) in arcs {
        if !blocked[u] && !blocked[v] {
            arc_ids.push((net.add_edge(2 * u + 1, 2 * v, 1, 0), u, v));
        }
    }
    for &s in sources {
        if !blocked[s] {
            net.add_edge(src, 2 * s, 1, 0);
        }
    }
    for &t in sinks {
        if !blocked[t] {
            net.add_edge(2 * t + 1, snk, 1, 0);
        }
    }
    let flow = if shortest {
        net.min_cost_flow(src, snk, p as i64).0
    } else {
        net.max_flow(src, snk, p as i64)
    };
    if flow < p as i64 {
        return None;
    }
    let mut next = vec![usize::MAX; n];
    for &(id, u, v) in &arc_ids {
        if net.flow(id) > 0 {
            next[u] = v;
        }
    }
    let mut is_sink = vec![false; n];
    for &t in sinks {
        is_sink[t] = true;
    }
    let mut has_pred = vec![false; n];
    for v in 0..n {
        if next[v] != usize::MAX {
            has_pred[next[v]] = true;
        }
    }
    // A path starts at a source whose split arc carries flow.
    let mut paths = Vec::new();
    for &s in sources {
        if blocked[s] {
            continue;
        }
        let used = next[s] != usize::MAX || (is_sink[s] && carries(&net, n, s));
        if !used || has_pred[s] {
            continue;
        }
        let mut path = vec![s];
        let mut v = s;
        while !(is_sink[v] && ends_here(&net, n, v, snk)) {
            v = next[v];
            if v == usize::MAX || path.len() > n {
                return None;
            }
            path.push(v);
        }
        paths.push(path);
    }
    (paths.len() == p).then_some(paths)
}

fn carries(net: &FlowNetwork, _n: usize, v: usize) -> bool {
    net.adj[2 * v]
        .iter()
        .any(|&a| a % 2 == 0 && net.arcs[a].to == 2 * v + 1 && net.arcs[a].cap == 0)
}

fn ends_here(net: &FlowNetwork, _n: usize, v: usize, snk: usize) -> bool {
    net.adj[2 * v + 1]
        .iter()
        .any(|&a| a % 2 == 0 && net.arcs[a].to == snk && net.arcs[a].cap == 0)
}

/// Undirected wrapper around [`disjoint_paths`].
pub fn disjoint_paths_undirected(
    graph: &crate::graph::ColoredWeightedGraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    blocked: &[bool],
    shortest: bool,
) -> Option<Vec<Vec<usize>>> {
    let arcs: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    disjoint_paths(graph.n(), &arcs, sources, sinks, p, blocked, shortest)
}
