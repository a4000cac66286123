//! Positive dependency analysis: the mutual-independence precondition of the
//! module union operator.
//!
//! An edge `a -> b` records that some rule with head `a` has `b` in its
//! positive body; the edge carries the identifier of the module owning the
//! rule. Two modules are mutually independent when no positive cycle mixes
//! edges from both. Cycles confined to one module are permitted, and negative
//! dependencies are ignored entirely.

use std::collections::{BTreeMap, BTreeSet};

use crate::atom::Atom;
use crate::module::ProgramModule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepEdge {
    pub from: Atom,
    pub to: Atom,
    pub origin: String,
}

#[derive(Debug, Clone, Default)]
pub struct DependencyGraph {
    nodes: BTreeSet<Atom>,
    edges: Vec<DepEdge>,
}

impl DependencyGraph {
    pub fn nodes(&self) -> &BTreeSet<Atom> {
        &self.nodes
    }

    pub fn edges(&self) -> &[DepEdge] {
        &self.edges
    }

    fn push_edge(&mut self, from: Atom, to: Atom, origin: &str) {
        let edge = DepEdge { from, to, origin: origin.to_string() };
        if !self.edges.contains(&edge) {
            self.edges.push(edge);
        }
    }

    /// A positive cycle using edges from at least two distinct origins,
    /// reported as the ordered atom list `a1 -> a2 -> ... -> a1` (first atom
    /// not repeated at the end). `None` when every cycle is single-origin.
    pub fn cross_origin_cycle(&self) -> Option<Vec<Atom>> {
        let nodes: Vec<&Atom> = self.nodes.iter().collect();
        let index: BTreeMap<&Atom, usize> =
            nodes.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let n = nodes.len();
        let mut succ: Vec<Vec<(usize, &str)>> = vec![Vec::new(); n];
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            let u = index[&e.from];
            let v = index[&e.to];
            succ[u].push((v, e.origin.as_str()));
            pred[v].push(u);
        }

        let components = kosaraju(n, &succ, &pred);
        let mut component_of = vec![0usize; n];
        for (c, members) in components.iter().enumerate() {
            for &m in members {
                component_of[m] = c;
            }
        }

        for (c, members) in components.iter().enumerate() {
            let mut origins: BTreeSet<&str> = BTreeSet::new();
            let mut internal: Vec<(usize, usize, &str)> = Vec::new();
            for &u in members {
                for &(v, origin) in &succ[u] {
                    if component_of[v] == c {
                        origins.insert(origin);
                        internal.push((u, v, origin));
                    }
                }
            }
            if origins.len() < 2 {
                continue;
            }
            // Build a witness: edge e1 of one origin, edge e2 of another,
            // connected by paths inside the component.
            let first_origin = *origins.iter().next().unwrap();
            let e1 = internal.iter().find(|(_, _, o)| *o == first_origin).unwrap();
            let e2 = internal.iter().find(|(_, _, o)| *o != first_origin).unwrap();
            let members_set: BTreeSet<usize> = members.iter().copied().collect();
            let p1 = path_within(e1.1, e2.0, &succ, &members_set);
            let p2 = path_within(e2.1, e1.0, &succ, &members_set);
            let mut cycle_nodes = vec![e1.0];
            cycle_nodes.extend(p1);
            cycle_nodes.extend(p2.into_iter().skip_while(|&x| x == e2.0));
            // Trim an accidental repeat of the start.
            if cycle_nodes.len() > 1 && cycle_nodes.last() == cycle_nodes.first() {
                cycle_nodes.pop();
            }
            return Some(cycle_nodes.into_iter().map(|i| nodes[i].clone()).collect());
        }
        None
    }
}

/// BFS path from `start` to `goal` staying inside `allowed`; returns the node
/// sequence beginning at `start`. Both endpoints lie in one SCC, so a path
/// always exists.
fn path_within(
    start: usize,
    goal: usize,
    succ: &[Vec<(usize, &str)>],
    allowed: &BTreeSet<usize>,
) -> Vec<usize> {
    if start == goal {
        return vec![start];
    }
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([start]);
    let mut seen = BTreeSet::from([start]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &succ[u] {
            if allowed.contains(&v) && seen.insert(v) {
                prev.insert(v, u);
                if v == goal {
                    let mut path = vec![goal];
                    let mut cur = goal;
                    while cur != start {
                        cur = prev[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(v);
            }
        }
    }
    unreachable!("endpoints share a strongly connected component");
}

/// Kosaraju's strongly connected components over adjacency lists.
fn kosaraju(n: usize, succ: &[Vec<(usize, &str)>], pred: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        // Iterative post-order DFS.
        let mut stack = vec![(start, 0usize)];
        visited[start] = true;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < succ[u].len() {
                let v = succ[u][*i].0;
                *i += 1;
                if !visited[v] {
                    visited[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut components = Vec::new();
    for &root in order.iter().rev() {
        if component[root] != usize::MAX {
            continue;
        }
        let c = components.len();
        let mut members = vec![root];
        component[root] = c;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in &pred[u] {
                if component[v] == usize::MAX {
                    component[v] = c;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        components.push(members);
    }
    components
}

/// Builds the labelled positive dependency graph of a module list: one edge
/// per (head atom, positive body atom) pair per rule, choice heads included.
pub fn build_positive_graph<'a>(
    modules: impl IntoIterator<Item = (&'a str, &'a ProgramModule)>,
) -> DependencyGraph {
    let mut graph = DependencyGraph::default();
    for (id, module) in modules {
        graph.nodes.extend(module.all_atoms());
        for rule in module.rules().rules() {
            for head in rule.head() {
                for body in rule.body_pos() {
                    graph.push_edge(head.clone(), body.clone(), id);
                }
            }
        }
    }
    graph
}

/// True when the combined positive dependency graph has no cycle mixing
/// edges from the two modules.
pub fn mutually_independent(p1: &ProgramModule, p2: &ProgramModule) -> bool {
    cross_module_cycle(p1, p2).is_none()
}

/// The witness form of [`mutually_independent`].
pub fn cross_module_cycle(p1: &ProgramModule, p2: &ProgramModule) -> Option<Vec<Atom>> {
    build_positive_graph([("left", p1), ("right", p2)]).cross_origin_cycle()
}

/// Atoms lying on a positive cycle of the module's own rules. Output
/// renaming severs such cycles (heads are renamed, bodies are not), so
/// model-recovery arguments only apply to atoms outside this set.
pub fn self_supporting_atoms(module: &ProgramModule) -> BTreeSet<Atom> {
    let graph = build_positive_graph([("self", module)]);
    let mut succ: BTreeMap<&Atom, Vec<&Atom>> = BTreeMap::new();
    for e in graph.edges() {
        succ.entry(&e.from).or_default().push(&e.to);
    }
    let mut out = BTreeSet::new();
    for start in graph.nodes() {
        // DFS from each successor of `start`, looking for a way back.
        let mut stack: Vec<&Atom> = succ.get(start).cloned().unwrap_or_default();
        let mut seen: BTreeSet<&Atom> = BTreeSet::new();
        while let Some(node) = stack.pop() {
            if node == start {
                out.insert(start.clone());
                break;
            }
            if seen.insert(node) {
                if let Some(next) = succ.get(node) {
                    stack.extend(next.iter().copied());
                }
            }
        }
    }
    out
}
