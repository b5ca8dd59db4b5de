//! Tree decompositions: validation against a graph and the PACE `.td`
//! text format.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    /// Sorted vertex sets.
    pub bags: Vec<Vec<usize>>,
    /// Unordered pairs of bag indices.
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Self { bags, tree_edges }
    }

    /// The trivial decomposition: one bag holding every vertex.
    pub fn single_bag(n: usize) -> Self {
        Self {
            bags: vec![(0..n).collect()],
            tree_edges: Vec::new(),
        }
    }

    /// Largest bag size minus one; `-1` when there are no non-empty bags.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    /// Bag adjacency lists.
    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// PACE `.td` text; bag ids and vertices are 1-indexed.
    pub fn to_pace_td(&self, n: usize) -> String {
        let max_bag = self.bags.iter().map(Vec::len).max().unwrap_or(0);
        let mut s = format!("s td {} {} {}\n", self.bags.len(), max_bag, n);
        for (i, bag) in self.bags.iter().enumerate() {
            write!(s, "b {}", i + 1).unwrap();
            for v in bag {
                write!(s, " {}", v + 1).unwrap();
            }
            s.push('\n');
        }
        for &(a, b) in &self.tree_edges {
            writeln!(s, "{} {}", a + 1, b + 1).unwrap();
        }
        s
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `s td` header")]
    MissingHeader,
    #[error("header declares {declared} bags, found {found}")]
    BagCount { declared: usize, found: usize },
}

/// Parses PACE `.td` text. Returns the decomposition (0-indexed) and the
/// vertex count declared in the header.
pub fn parse_pace_td(text: &str) -> Result<(TreeDecomposition, usize), TdParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: &str| TdParseError::Syntax {
            line: line_no,
            msg: msg.to_string(),
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| err(&format!("non-integer token `{t}`")))
        };
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(err("expected `s td <bags> <max bag size> <n>`"));
                }
                if header.is_some() {
                    return Err(err("second header line"));
                }
                let nb = num(toks[2])?;
                header = Some((nb, num(toks[4])?));
                bags = vec![None; nb];
            }
            "b" => {
                let (nb, n) = header.ok_or(TdParseError::MissingHeader)?;
                if toks.len() < 2 {
                    return Err(err("bag line without id"));
                }
                let id = num(toks[1])?;
                if id == 0 || id > nb {
                    return Err(err("bag id out of range"));
                }
                if bags[id - 1].is_some() {
                    return Err(err("bag listed twice"));
                }
                let mut bag = Vec::new();
                for t in &toks[2..] {
                    let v = num(t)?;
                    if v == 0 || v > n {
                        return Err(err("vertex out of range"));
                    }
                    bag.push(v - 1);
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                let (nb, _) = header.ok_or(TdParseError::MissingHeader)?;
                if toks.len() != 2 {
                    return Err(err("expected tree edge `<i> <j>`"));
                }
                let (a, b) = (num(toks[0])?, num(toks[1])?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(err("tree edge references unknown bag"));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (nb, n) = header.ok_or(TdParseError::MissingHeader)?;
    let found = bags.iter().filter(|b| b.is_some()).count();
    if found != nb {
        return Err(TdParseError::BagCount {
            declared: nb,
            found,
        });
    }
    let bags = bags.into_iter().map(Option::unwrap).collect();
    Ok((TreeDecomposition::new(bags, edges), n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    /// First counterexample found, when the check failed.
    pub witness: Option<String>,
}

impl Check {
    fn ok() -> Self {
        Self {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        Self {
            passed: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdValidation {
    pub vertex_coverage: Check,
    pub edge_coverage: Check,
    pub coherence: Check,
    pub is_tree: Check,
    pub width: i64,
}

impl TdValidation {
    pub fn is_valid(&self) -> bool {
        self.vertex_coverage.passed
            && self.edge_coverage.passed
            && self.coherence.passed
            && self.is_tree.passed
    }

    pub fn failures(&self) -> Vec<(&'static str, &str)> {
        [
            ("vertex_coverage", &self.vertex_coverage),
            ("edge_coverage", &self.edge_coverage),
            ("coherence", &self.coherence),
            ("tree", &self.is_tree),
        ]
        .into_iter()
        .filter(|(_, c)| !c.passed)
        .map(|(k, c)| (k, c.witness.as_deref().unwrap_or("")))
        .collect()
    }
}

/// Checks the four tree-decomposition conditions independently.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> TdValidation {
    let n = g.n();
    let nb = td.bags.len();

    let vertex_coverage = 'vc: {
        let mut seen = vec![false; n];
        for (i, bag) in td.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    break 'vc Check::fail(format!("bag {i} contains vertex {v} outside 0..{n}"));
                }
                seen[v] = true;
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Check::fail(format!("vertex {v} is in no bag")),
            None => Check::ok(),
        }
    };

    let edge_coverage = match g.edges().iter().find(|&&(u, v)| {
        !td.bags
            .iter()
            .any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok())
    }) {
        Some(&(u, v)) => Check::fail(format!("edge {{{u}, {v}}} is in no bag")),
        None => Check::ok(),
    };

    let is_tree = 'tree: {
        if nb == 0 {
            break 'tree if n == 0 {
                Check::ok()
            } else {
                Check::fail("no bags".into())
            };
        }
        if let Some(&(a, b)) = td
            .tree_edges
            .iter()
            .find(|&&(a, b)| a >= nb || b >= nb || a == b)
        {
            break 'tree Check::fail(format!("invalid tree edge ({a}, {b})"));
        }
        if td.tree_edges.len() != nb - 1 {
            break 'tree Check::fail(format!("{} tree edges for {nb} bags", td.tree_edges.len()));
        }
        let mut uf = UnionFind::new(nb);
        for &(a, b) in &td.tree_edges {
            uf.union(a, b);
        }
        match (1..nb).find(|&i| uf.find(i) != uf.find(0)) {
            Some(i) => Check::fail(format!("bag {i} is disconnected from bag 0")),
            None => Check::ok(),
        }
    };

    let coherence = 'coh: {
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut member = vec![Vec::new(); nb];
        for (i, bag) in td.bags.iter().enumerate() {
            for &v in bag.iter().filter(|&&v| v < n) {
                holders[v].push(i);
            }
            member[i] = bag.clone();
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.len() <= 1 {
                continue;
            }
            let mut uf = UnionFind::new(nb);
            for &(a, b) in td.tree_edges.iter().filter(|&&(a, b)| a < nb && b < nb) {
                if member[a].binary_search(&v).is_ok() && member[b].binary_search(&v).is_ok() {
                    uf.union(a, b);
                }
            }
            if let Some(&h) = hs.iter().find(|&&h| uf.find(h) != uf.find(hs[0])) {
                break 'coh Check::fail(format!(
                    "bags holding vertex {v} are not connected (bag {} vs bag {h})",
                    hs[0]
                ));
            }
        }
        Check::ok()
    };

    TdValidation {
        vertex_coverage,
        edge_coverage,
        coherence,
        is_tree,
        width: td.width(),
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
