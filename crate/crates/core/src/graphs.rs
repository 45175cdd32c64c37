//! Simple graphs, their edge ideals, and the combinatorial test for the
//! torsion-free property of the edge ideal inside its Jacobian ideal.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aluffi::{aluffi_torsion_free, AluffiVerdict};
use crate::error::{Error, Result};
use crate::ideals::{cover::min_hitting_set, jacobian_ideal_with_height, jacobian_matrix, Ideal};
use crate::polyring::{Monomial, Polynomial, RingContext};
use crate::scalar::Rational;

/// A finite simple graph on vertices `1..=n`, stored as neighbor bitmasks
/// indexed from zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidArgument(format!("{n} vertices, expected 1..=64")));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds the edge `{a, b}` (1-based); repeated edges are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return Err(Error::InvalidArgument(format!("edge {a} {b} outside 1..={}", self.n)));
        }
        if a == b {
            return Err(Error::InvalidArgument(format!("loop at vertex {a}")));
        }
        self.adj[a - 1] |= 1 << (b - 1);
        self.adj[b - 1] |= 1 << (a - 1);
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, 1-based, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a] >> b & 1 == 1 {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && a <= self.n && b <= self.n && self.adj[a - 1] >> (b - 1) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        mask_to_vertices(self.adj[v - 1])
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in mask_to_vertices(frontier) {
                next |= self.adj[v - 1];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    fn mask(&self, set: &[usize]) -> u64 {
        set.iter().fold(0, |m, &v| m | 1 << (v - 1))
    }

    fn neighborhood_mask(&self, set: u64) -> u64 {
        let mut out = 0;
        for v in mask_to_vertices(set) {
            out |= self.adj[v - 1];
        }
        out
    }

    fn is_independent_mask(&self, set: u64) -> bool {
        mask_to_vertices(set).iter().all(|&v| self.adj[v - 1] & set == 0)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.is_independent_mask(self.mask(set))
    }

    /// Reads the file format: the vertex count on the first line, then one
    /// `i j` edge per line. Blank lines and `#` comments are skipped.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
        let first = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n: usize = first.parse().map_err(|_| Error::Parse(format!("bad vertex count {first:?}")))?;
        let mut g = Self::new(n)?;
        for line in lines {
            let nums: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad edge line {line:?}")));
            if nums.len() != 2 {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            }
            g.add_edge(parse(nums[0])?, parse(nums[1])?)?;
        }
        Ok(g)
    }

    pub fn to_file(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (a, b) in self.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    /// The canonical relabeling: the smallest edge mask over all vertex
    /// permutations (only for up to 8 vertices).
    fn canonical_mask(&self, perms: &[Vec<usize>]) -> u64 {
        let pairs = pair_index(self.n);
        let edges = self.edges();
        perms.iter().map(|p| edges.iter().fold(0u64, |m, &(a, b)| m | 1 << pairs[p[a - 1]][p[b - 1]])).min().unwrap_or(0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; {:?})", self.n, self.edges())
    }
}

fn mask_to_vertices(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v + 1);
        m &= m - 1;
    }
    out
}

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; n]; n];
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            idx[a][b] = k;
            idx[b][a] = k;
            k += 1;
        }
    }
    idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Named graph families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    /// A center joined to `n - 1` leaves.
    Star(usize),
    CompleteMultipartite(Vec<usize>),
    /// `K_n` minus the disjoint edges `{1,2}, {3,4}, ...`.
    CompleteMinusMatching(usize, usize),
}

impl FromStr for Family {
    type Err = Error;

    /// `complete:5`, `cycle:5`, `path:6`, `star:6`, `multipartite:2,2,2`,
    /// `kmm:6,3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad graph family {s:?}"));
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args.split(',').map(|a| a.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
        let one = || if nums.len() == 1 { Ok(nums[0]) } else { Err(bad()) };
        match kind.trim() {
            "complete" | "k" => Ok(Family::Complete(one()?)),
            "cycle" | "c" => Ok(Family::Cycle(one()?)),
            "path" | "p" => Ok(Family::Path(one()?)),
            "star" => Ok(Family::Star(one()?)),
            "multipartite" | "kpart" => Ok(Family::CompleteMultipartite(nums)),
            "kmm" if nums.len() == 2 => Ok(Family::CompleteMinusMatching(nums[0], nums[1])),
            _ => Err(bad()),
        }
    }
}

pub fn family_generator(kind: &Family) -> Result<Graph> {
    let invalid = |msg: &str| Err(Error::InvalidArgument(format!("{kind:?}: {msg}")));
    match kind {
        Family::Complete(n) => {
            if *n < 1 {
                return invalid("needs a vertex");
            }
            let mut g = Graph::new(*n)?;
            for a in 1..=*n {
                for b in a + 1..=*n {
                    g.add_edge(a, b)?;
                }
            }
            Ok(g)
        }
        Family::Cycle(n) => {
            if *n < 3 {
                return invalid("cycles need at least 3 vertices");
            }
            let edges: Vec<(usize, usize)> = (1..=*n).map(|a| (a, a % n + 1)).collect();
            Graph::from_edges(*n, &edges)
        }
        Family::Path(n) => {
            if *n < 1 {
                return invalid("needs a vertex");
            }
            let edges: Vec<(usize, usize)> = (1..*n).map(|a| (a, a + 1)).collect();
            Graph::from_edges(*n, &edges)
        }
        Family::Star(n) => {
            if *n < 2 {
                return invalid("stars need at least 2 vertices");
            }
            let edges: Vec<(usize, usize)> = (2..=*n).map(|a| (1, a)).collect();
            Graph::from_edges(*n, &edges)
        }
        Family::CompleteMultipartite(parts) => {
            if parts.is_empty() || parts.contains(&0) {
                return invalid("parts must be nonempty");
            }
            let n: usize = parts.iter().sum();
            let mut part_of = Vec::with_capacity(n);
            for (k, &p) in parts.iter().enumerate() {
                part_of.extend(std::iter::repeat(k).take(p));
            }
            let mut g = Graph::new(n)?;
            for a in 0..n {
                for b in a + 1..n {
                    if part_of[a] != part_of[b] {
                        g.add_edge(a + 1, b + 1)?;
                    }
                }
            }
            Ok(g)
        }
        Family::CompleteMinusMatching(n, k) => {
            if 2 * k > *n {
                return invalid("matching larger than the vertex set allows");
            }
            let mut g = family_generator(&Family::Complete(*n))?;
            for i in 0..*k {
                let (a, b) = (2 * i, 2 * i + 1);
                g.adj[a] &= !(1 << b);
                g.adj[b] &= !(1 << a);
            }
            Ok(g)
        }
    }
}

/// A graph given either as a family string or as file contents.
pub fn parse_graph(source: &str) -> Result<Graph> {
    if source.contains(':') && !source.trim_start().starts_with(|c: char| c.is_ascii_digit()) {
        family_generator(&source.parse()?)
    } else {
        Graph::parse_file(source)
    }
}

fn require_edges(g: &Graph) -> Result<()> {
    if g.num_edges() == 0 {
        return Err(Error::InvalidArgument("the graph has no edges".into()));
    }
    Ok(())
}

/// The ring `Q[x1, ..., xn]` of a graph.
pub fn graph_ring(g: &Graph) -> std::sync::Arc<RingContext> {
    RingContext::indexed("x", g.num_vertices())
}

/// `(x_a x_b : {a, b} an edge)`.
pub fn edge_ideal(g: &Graph) -> Result<Ideal<Rational>> {
    require_edges(g)?;
    let ring = graph_ring(g);
    let n = g.num_vertices();
    let mons = g.edges().into_iter().map(|(a, b)| Monomial::var(n, a - 1).mul(&Monomial::var(n, b - 1)));
    Ok(Ideal::from_monomials(&ring, mons.collect::<Vec<_>>()))
}

/// Size of a smallest vertex cover, which is the height of the edge ideal.
pub fn vertex_cover_number(g: &Graph) -> Result<usize> {
    require_edges(g)?;
    let edges: Vec<Vec<usize>> = g.edges().into_iter().map(|(a, b)| vec![a - 1, b - 1]).collect();
    Ok(min_hitting_set(g.num_vertices(), &edges).len())
}

/// `N(S)`: the vertices adjacent to some vertex of `S`.
pub fn neighborhood(g: &Graph, set: &[usize]) -> Result<Vec<usize>> {
    if let Some(&v) = set.iter().find(|&&v| v == 0 || v > g.num_vertices()) {
        return Err(Error::InvalidArgument(format!("vertex {v} outside 1..={}", g.num_vertices())));
    }
    Ok(mask_to_vertices(g.neighborhood_mask(g.mask(set))))
}

/// Whether the degree-`r` monomial `mon` is a product of `r` entries of the
/// Jacobian matrix in distinct rows and columns: `r` distinct edges
/// `{u_k, v_k}` with distinct `v_k` and `mon = u_1 ... u_r`.
pub fn is_r_transversal(g: &Graph, mon: &Monomial, r: usize) -> Result<bool> {
    if mon.degree() as usize != r {
        return Err(Error::InvalidArgument(format!("monomial of degree {}, expected {r}", mon.degree())));
    }
    if mon.exponents().len() != g.num_vertices() {
        return Err(Error::LengthMismatch(mon.exponents().len(), g.num_vertices()));
    }
    let mut copies = Vec::with_capacity(r);
    for v in mon.support() {
        if (mon.exp(v) as usize) > g.degree(v + 1) {
            return Ok(false);
        }
        copies.extend(std::iter::repeat(v).take(mon.exp(v) as usize));
    }
    // rows[v] = the partner u chosen for row v
    let mut rows: Vec<Option<usize>> = vec![None; g.num_vertices()];
    fn assign(g: &Graph, copies: &[usize], k: usize, rows: &mut Vec<Option<usize>>) -> bool {
        if k == copies.len() {
            return true;
        }
        let u = copies[k];
        for v in mask_to_vertices(g.adj[u]).into_iter().map(|v| v - 1) {
            // the row must be free and the edge {u, v} unused from the other side
            if rows[v].is_some() || rows[u] == Some(v) {
                continue;
            }
            rows[v] = Some(u);
            if assign(g, copies, k + 1, rows) {
                return true;
            }
            rows[v] = None;
        }
        false
    }
    Ok(assign(g, &copies, 0, &mut rows))
}

/// Adjacent `x1, x2` and a nonempty `S` with `S ∪ {x1}` and `S ∪ {x2}`
/// independent and `|N(S)| = r - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness34 {
    pub x1: usize,
    pub x2: usize,
    pub s: Vec<usize>,
}

impl fmt::Display for Witness34 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(|v| format!("v{v}")).collect();
        write!(f, "(v{}, v{}, {{{}}})", self.x1, self.x2, s.join(", "))
    }
}

/// Re-checks both conditions of a witness.
pub fn check_witness34(g: &Graph, w: &Witness34) -> Result<bool> {
    let r = vertex_cover_number(g)?;
    if w.s.is_empty() || !g.is_adjacent(w.x1, w.x2) || w.s.contains(&w.x1) || w.s.contains(&w.x2) {
        return Ok(false);
    }
    let mut a = w.s.clone();
    a.push(w.x1);
    let mut b = w.s.clone();
    b.push(w.x2);
    Ok(g.is_independent(&a) && g.is_independent(&b) && neighborhood(g, &w.s)?.len() == r - 1)
}

/// Searches edges in order, then independent sets `S` by increasing size.
/// A set with `|N(S)| > r - 1` is not extended, since `N` only grows.
pub fn theorem34_witness(g: &Graph) -> Result<Option<Witness34>> {
    let r = vertex_cover_number(g)?;
    if r <= 1 {
        return Err(Error::Hypothesis(format!("cover number {r}, expected at least 2")));
    }
    let target = (r - 1) as u32;
    for (a, b) in g.edges() {
        for (x1, x2) in [(a, b), (b, a)] {
            let blocked = g.adj[x1 - 1] | g.adj[x2 - 1] | 1 << (x1 - 1) | 1 << (x2 - 1);
            let allowed: Vec<usize> = (1..=g.n).filter(|v| blocked >> (v - 1) & 1 == 0).collect();
            for size in 1..=allowed.len() {
                if let Some(s) = find_set(g, &allowed, 0, size, 0, target) {
                    return Ok(Some(Witness34 { x1, x2, s: mask_to_vertices(s) }));
                }
            }
        }
    }
    Ok(None)
}

fn find_set(g: &Graph, allowed: &[usize], start: usize, left: usize, set: u64, target: u32) -> Option<u64> {
    if left == 0 {
        return (g.neighborhood_mask(set).count_ones() == target).then_some(set);
    }
    for k in start..allowed.len() {
        let v = allowed[k];
        let bit = 1u64 << (v - 1);
        if g.adj[v - 1] & set != 0 {
            continue;
        }
        let next = set | bit;
        if g.neighborhood_mask(next).count_ones() > target {
            continue;
        }
        if let Some(s) = find_set(g, allowed, k + 1, left - 1, next, target) {
            return Some(s);
        }
    }
    None
}

/// The combinatorial verdict: stars are not torsion-free, otherwise the
/// graph is torsion-free exactly when no witness exists.
pub fn is_graph_atf(g: &Graph) -> Result<bool> {
    let r = vertex_cover_number(g)?;
    if r == 1 {
        return Ok(false);
    }
    Ok(theorem34_witness(g)?.is_none())
}

/// The edge ideal, its height and its Jacobian ideal.
pub fn graph_pair(g: &Graph) -> Result<(Ideal<Rational>, usize, Ideal<Rational>)> {
    let j = edge_ideal(g)?;
    let r = vertex_cover_number(g)?;
    let i = jacobian_ideal_with_height(&j, r)?;
    Ok((j, r, i))
}

/// The algebraic verdict for the edge ideal inside its Jacobian ideal.
pub fn graph_oracle(g: &Graph, max_t: Option<u32>, certify: bool) -> Result<AluffiVerdict<Rational>> {
    let (j, _, i) = graph_pair(g)?;
    aluffi_torsion_free(&j, &i, max_t, certify)
}

/// Streams every `r`-minor of the Jacobian matrix of the edge ideal and
/// returns the largest number of terms seen.
pub fn max_minor_terms(g: &Graph) -> Result<usize> {
    let j = edge_ideal(g)?;
    let r = vertex_cover_number(g)?;
    let theta = jacobian_matrix(j.ring(), j.generators())?;
    let mut most = 0;
    let _ = theta.for_each_minor(r, None, |_, _, p: &Polynomial<Rational>| {
        most = most.max(p.num_terms());
        ControlFlow::<()>::Continue(())
    })?;
    Ok(most)
}

/// Connected graphs on `1..=max_n` vertices, one per isomorphism class,
/// grown by attaching a new vertex to every nonempty subset of the vertices
/// of a smaller connected graph.
pub fn connected_graphs(max_n: usize) -> Result<Vec<Graph>> {
    if max_n > 8 {
        return Err(Error::InvalidArgument(format!("{max_n} vertices is too many for exhaustive enumeration")));
    }
    let mut out = Vec::new();
    if max_n == 0 {
        return Ok(out);
    }
    let mut level = vec![Graph::new(1)?];
    out.extend(level.iter().cloned());
    for n in 2..=max_n {
        let perms = permutations(n);
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for subset in 1u64..(1 << (n - 1)) {
                let mut h = Graph::new(n)?;
                for (a, b) in g.edges() {
                    h.add_edge(a, b)?;
                }
                for v in mask_to_vertices(subset) {
                    h.add_edge(v, n)?;
                }
                if seen.insert(h.canonical_mask(&perms)) {
                    next.push(h);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> Graph {
        family_generator(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn families() {
        assert_eq!(fam("cycle:5").edges(), vec![(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(fam("complete:4").num_edges(), 6);
        let g = fam("kmm:6,3");
        assert_eq!(g.num_edges(), 15 - 3);
        assert!(!g.is_adjacent(1, 2) && !g.is_adjacent(3, 4) && !g.is_adjacent(5, 6));
        assert!(family_generator(&Family::CompleteMinusMatching(3, 2)).is_err());
        assert_eq!(fam("multipartite:2,2,2").num_edges(), 12);
    }

    #[test]
    fn covers_and_neighborhoods() {
        assert_eq!(vertex_cover_number(&fam("complete:4")).unwrap(), 3);
        assert_eq!(vertex_cover_number(&fam("cycle:6")).unwrap(), 3);
        assert_eq!(vertex_cover_number(&fam("star:5")).unwrap(), 1);
        assert_eq!(neighborhood(&fam("cycle:6"), &[4]).unwrap(), vec![3, 5]);
        assert_eq!(neighborhood(&fam("cycle:6"), &[]).unwrap(), Vec::<usize>::new());
        assert_eq!(neighborhood(&fam("complete:4"), &[1]).unwrap(), vec![2, 3, 4]);
        assert!(vertex_cover_number(&Graph::new(3).unwrap()).is_err());
    }

    #[test]
    fn transversals() {
        let g = fam("cycle:5");
        let m = Monomial::from_slice(&[1, 0, 0, 2, 0]);
        assert!(is_r_transversal(&g, &m, 3).unwrap());
        // x4^3 needs three edges at v4
        assert!(!is_r_transversal(&g, &Monomial::from_slice(&[0, 0, 0, 3, 0]), 3).unwrap());
        // one edge cannot serve both of its rows
        let e = Graph::from_edges(2, &[(1, 2)]).unwrap();
        assert!(!is_r_transversal(&e, &Monomial::from_slice(&[1, 1]), 2).unwrap());
        assert!(is_r_transversal(&g, &m, 2).is_err());
    }

    #[test]
    fn witnesses() {
        let w = theorem34_witness(&fam("cycle:6")).unwrap().unwrap();
        assert_eq!(w, Witness34 { x1: 1, x2: 2, s: vec![4] });
        assert!(check_witness34(&fam("cycle:6"), &w).unwrap());
        assert!(theorem34_witness(&fam("complete:5")).unwrap().is_none());
        assert!(theorem34_witness(&fam("kmm:4,2")).unwrap().is_none());
        assert!(theorem34_witness(&fam("star:4")).is_err());
    }

    #[test]
    fn verdicts() {
        assert!(is_graph_atf(&fam("multipartite:2,2,2")).unwrap());
        assert!(!is_graph_atf(&fam("path:6")).unwrap());
        assert!(is_graph_atf(&fam("cycle:4")).unwrap());
        assert!(!is_graph_atf(&fam("cycle:5")).unwrap());
        assert!(!is_graph_atf(&fam("star:6")).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(6).unwrap().iter().filter(|g| g.num_vertices() == n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn file_round_trip() {
        let g = fam("cycle:5");
        assert_eq!(Graph::parse_file(&g.to_file()).unwrap(), g);
        assert_eq!(parse_graph("3\n1 2\n2 3\n").unwrap().num_edges(), 2);
        assert!(Graph::parse_file("2\n1 1\n").is_err());
    }
}
