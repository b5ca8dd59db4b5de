//! Simple undirected graphs, the PACE `.gr` and edge-list readers, and the
//! family generators used to build test corpora.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("invalid family: {0}")]
    Family(String),
}

/// A simple undirected graph on the vertices `0..n`.
///
/// Edges are stored once each as `(u, v)` with `u < v`, sorted. The value is
/// immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub component_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            list.push(e);
        }
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Self {
            n,
            edges: list,
            adj,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// Neighbourhood bitmasks, one `u64` per vertex. Only valid for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }

    /// Connected components of the graph with the vertices flagged in
    /// `removed` deleted. Components are listed in order of their smallest
    /// vertex; each component is sorted.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        debug_assert_eq!(removed.len(), self.n);
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&vec![false; self.n])
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n: self.n,
            m: self.m(),
            max_degree: self.max_degree(),
            component_count: self.component_count(),
        }
    }

    /// Removes one edge. Used by monotonicity checks.
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let e = (u.min(v), u.max(v));
        Graph::new(self.n, self.edges.iter().copied().filter(|&f| f != e))
            .expect("subgraph of a valid graph is valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("union of valid graphs is valid")
    }

    /// Serializes in PACE `.gr` format (1-indexed).
    pub fn to_pace_gr(&self) -> String {
        let mut s = format!("p tw {} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

/// Parses the PACE `.gr` format: `c` comment lines, one `p tw <n> <m>`
/// header, then `m` lines of 1-indexed `u v` pairs.
pub fn parse_pace_gr(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: &str| GraphError::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "p" {
            if header.is_some() {
                return Err(err("second header line"));
            }
            if toks.len() != 4 || toks[1] != "tw" {
                return Err(err("expected header `p tw <n> <m>`"));
            }
            let n = toks[2].parse().map_err(|_| err("bad vertex count"))?;
            let m = toks[3].parse().map_err(|_| err("bad edge count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err("edge line before header"));
        };
        if toks.len() != 2 {
            return Err(err("expected `<u> <v>`"));
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&toks) {
            let x: usize = tok.parse().map_err(|_| err("non-integer vertex"))?;
            if x == 0 || x > n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
            *slot = x - 1;
        }
        edges.push((ends[0], ends[1]));
    }
    let (n, m) = header.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing `p tw` header".into(),
    })?;
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Graph::new(n, edges)
}

/// Parses a 0-indexed edge list, one `u v` pair per line. A line holding a
/// single integer fixes the vertex count (it must come first); otherwise `n`
/// is the largest label plus one. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut explicit_n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| GraphError::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| err(&format!("non-integer token `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match nums.as_slice() {
            [n] if explicit_n.is_none() && edges.is_empty() => explicit_n = Some(*n),
            [u, v] => edges.push((*u, *v)),
            _ => return Err(err("expected `u v`")),
        }
    }
    let n =
        explicit_n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::new(n, edges)
}

/// Generator families. Labelings:
/// * `CompleteBipartite(p, q)`: side A is `0..p`, side B is `p..p+q`.
/// * `Path(n)`, `Cycle(n)`: consecutive labels are adjacent.
/// * `Grid(r, c)`: cell `(i, j)` is vertex `i * c + j`.
/// * `Gnp { n, p, seed }`: pairs `(u, v)`, `u < v`, are visited in
///   lexicographic order; each draws one SplitMix64 output `x` (state seeded
///   directly with `seed`) and the edge is kept iff `(x >> 11) * 2^-53 < p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Cycle(usize),
    Grid(usize, usize),
    Gnp { n: usize, p: f64, seed: u64 },
}

impl Family {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        let bad = |msg: &str| Err(GraphError::Family(format!("{self}: {msg}")));
        let edges: Vec<(usize, usize)> = match *self {
            Family::Complete(n) => {
                if n < 1 {
                    return bad("size must be >= 1");
                }
                (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect()
            }
            Family::CompleteBipartite(p, q) => {
                if p < 1 || q < 1 {
                    return bad("sides must be >= 1");
                }
                (0..p)
                    .flat_map(|u| (p..p + q).map(move |v| (u, v)))
                    .collect()
            }
            Family::Path(n) => {
                if n < 1 {
                    return bad("size must be >= 1");
                }
                (1..n).map(|v| (v - 1, v)).collect()
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return bad("cycle needs n >= 3");
                }
                (0..n).map(|v| (v, (v + 1) % n)).collect()
            }
            Family::Grid(r, c) => {
                if r < 1 || c < 1 {
                    return bad("dimensions must be >= 1");
                }
                let mut e = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        let v = i * c + j;
                        if j + 1 < c {
                            e.push((v, v + 1));
                        }
                        if i + 1 < r {
                            e.push((v, v + c));
                        }
                    }
                }
                e
            }
            Family::Gnp { n, p, seed } => {
                if n < 1 {
                    return bad("size must be >= 1");
                }
                if !(0.0..=1.0).contains(&p) {
                    return bad("probability must lie in [0, 1]");
                }
                let mut rng = SplitMix64::seed_from_u64(seed);
                let mut e = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if unit_f64(rng.next_u64()) < p {
                            e.push((u, v));
                        }
                    }
                }
                e
            }
        };
        Graph::new(self.order(), edges)
    }

    /// Vertex count of the generated graph.
    pub fn order(&self) -> usize {
        match *self {
            Family::Complete(n) | Family::Path(n) | Family::Cycle(n) => n,
            Family::CompleteBipartite(p, q) => p + q,
            Family::Grid(r, c) => r * c,
            Family::Gnp { n, .. } => n,
        }
    }
}

fn unit_f64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(p, q) => write!(f, "complete_bipartite:{p},{q}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Grid(r, c) => write!(f, "grid:{r},{c}"),
            Family::Gnp { n, p, seed } => write!(f, "gnp:{n},{p},{seed}"),
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    /// Parses the `name:args` descriptor syntax, e.g. `complete_bipartite:3,5`
    /// or `gnp:10,0.3,7`. A `gnp` descriptor without a seed uses seed 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Family(format!("cannot parse descriptor `{s}`"));
        let (name, args) = s.split_once(':').ok_or_else(bad)?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<usize, GraphError> {
            args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad)
        };
        let arity = |k: usize| if args.len() == k { Ok(()) } else { Err(bad()) };
        match name.trim() {
            "complete" => arity(1).and(Ok(Family::Complete(int(0)?))),
            "complete_bipartite" => arity(2).and(Ok(Family::CompleteBipartite(int(0)?, int(1)?))),
            "path" => arity(1).and(Ok(Family::Path(int(0)?))),
            "cycle" => arity(1).and(Ok(Family::Cycle(int(0)?))),
            "grid" => arity(2).and(Ok(Family::Grid(int(0)?, int(1)?))),
            "gnp" => {
                if args.len() != 2 && args.len() != 3 {
                    return Err(bad());
                }
                let p = args[1].parse().map_err(|_| bad())?;
                let seed = match args.get(2) {
                    Some(a) => a.parse().map_err(|_| bad())?,
                    None => 0,
                };
                Ok(Family::Gnp {
                    n: int(0)?,
                    p,
                    seed,
                })
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().to_vec()
    }

    #[test]
    fn pace_examples() {
        let g = parse_pace_gr("p tw 2 1\n1 2").unwrap();
        assert_eq!((g.n(), edges(&g)), (2, vec![(0, 1)]));
        let g = parse_pace_gr("p tw 3 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
        let g = parse_pace_gr("c triangle\np tw 3 3\n1 2\n2 3\n1 3").unwrap();
        assert!(g.is_complete());
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn pace_errors() {
        assert!(matches!(
            parse_pace_gr("p td 2 1\n1 2"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            parse_pace_gr("1 2"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            parse_pace_gr("p tw 3 2\n1 2"),
            Err(GraphError::EdgeCountMismatch {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_pace_gr("p tw 2 1\n1 3"),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_pace_gr("p tw 2 1\n0 1"),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert_eq!(parse_pace_gr("p tw 2 1\n2 2"), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            parse_pace_gr("p tw 2 2\n1 2\n2 1"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), edges(&g)), (3, vec![(0, 1), (1, 2)]));
        assert_eq!(parse_edge_list("").unwrap().n(), 0);
        assert_eq!(
            parse_edge_list("0 1\n0 1"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(parse_edge_list("1 1"), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        let g = parse_edge_list("5\n0 1").unwrap();
        assert_eq!(g.n(), 5);
    }

    #[test]
    fn generators() {
        let k4 = Family::Complete(4).generate().unwrap();
        assert_eq!((k4.m(), k4.max_degree()), (6, 3));
        let k35 = Family::CompleteBipartite(3, 5).generate().unwrap();
        assert_eq!((k35.m(), k35.max_degree()), (15, 5));
        assert!(k35.has_edge(0, 3) && !k35.has_edge(0, 1) && !k35.has_edge(3, 4));
        let grid = Family::Grid(3, 4).generate().unwrap();
        assert_eq!(grid.m(), 3 * 3 + 4 * 2);
        assert_eq!(Family::Cycle(5).generate().unwrap().m(), 5);
        assert!(Family::Cycle(2).generate().is_err());
        assert!(Family::Complete(0).generate().is_err());
        assert!(Family::Gnp {
            n: 4,
            p: 1.5,
            seed: 0
        }
        .generate()
        .is_err());
    }

    fn splitmix_reference(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    #[test]
    fn rng_matches_reference_splitmix() {
        let mut rng = SplitMix64::seed_from_u64(1_234_567);
        let known = [
            6_457_827_717_110_365_317u64,
            3_203_168_211_198_807_973,
            9_817_491_932_198_370_423,
            4_593_380_528_125_082_431,
            16_408_922_859_458_223_821,
        ];
        for k in known {
            assert_eq!(rng.next_u64(), k);
        }
        for seed in [0u64, 1, 42, u64::MAX] {
            let mut rng = SplitMix64::seed_from_u64(seed);
            let mut state = seed;
            for _ in 0..100 {
                assert_eq!(rng.next_u64(), splitmix_reference(&mut state));
            }
        }
    }

    #[test]
    fn gnp_edges_follow_the_stream() {
        // pairs in lexicographic order, one draw each
        let (n, p, seed) = (7, 0.35, 11);
        let g = Family::Gnp { n, p, seed }.generate().unwrap();
        let mut state = seed;
        let mut expected = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let x = splitmix_reference(&mut state);
                if ((x >> 11) as f64 / (1u64 << 53) as f64) < p {
                    expected.push((u, v));
                }
            }
        }
        assert_eq!(g.edges(), &expected[..]);
    }

    #[test]
    fn gnp_is_deterministic() {
        let f = Family::Gnp {
            n: 10,
            p: 0.3,
            seed: 7,
        };
        assert_eq!(f.generate().unwrap(), f.generate().unwrap());
        let full = Family::Gnp {
            n: 6,
            p: 1.0,
            seed: 3,
        }
        .generate()
        .unwrap();
        assert!(full.is_complete());
        let empty = Family::Gnp {
            n: 6,
            p: 0.0,
            seed: 3,
        }
        .generate()
        .unwrap();
        assert_eq!(empty.m(), 0);
    }

    #[test]
    fn stats_examples() {
        let k35 = Family::CompleteBipartite(3, 5).generate().unwrap();
        assert_eq!(
            k35.stats(),
            GraphStats {
                n: 8,
                m: 15,
                max_degree: 5,
                component_count: 1
            }
        );
        assert_eq!(
            Graph::edgeless(3).stats(),
            GraphStats {
                n: 3,
                m: 0,
                max_degree: 0,
                component_count: 3
            }
        );
        let p3 = Family::Path(3).generate().unwrap();
        let k2 = Family::Complete(2).generate().unwrap();
        assert_eq!(
            p3.disjoint_union(&k2).stats(),
            GraphStats {
                n: 5,
                m: 3,
                max_degree: 2,
                component_count: 2
            }
        );
    }

    #[test]
    fn descriptors_round_trip() {
        for s in [
            "complete:4",
            "complete_bipartite:3,5",
            "path:6",
            "cycle:5",
            "grid:3,4",
            "gnp:10,0.3,7",
        ] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("complete:".parse::<Family>().is_err());
        assert!("grid:3".parse::<Family>().is_err());
        assert!("torus:3,3".parse::<Family>().is_err());
    }
}
