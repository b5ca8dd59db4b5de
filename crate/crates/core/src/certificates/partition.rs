//! Balanced separators from tree decompositions and the three-way split of
//! the remaining components.

use serde::{Deserialize, Serialize};

use super::CertificateError;
use crate::exact::{validate_td, TreeDecomposition};
use crate::graph::Graph;

/// `(S, U1, U2, U3)`: a partition of `V` in which no edge joins two
/// different `Ui` and each `Ui` holds at most `(n - |S|) / 2` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedPartition {
    pub separator: Vec<usize>,
    pub parts: [Vec<usize>; 3],
}

impl BalancedPartition {
    pub fn order(&self) -> usize {
        self.separator.len() + self.parts.iter().map(Vec::len).sum::<usize>()
    }

    pub fn part_sizes(&self) -> [usize; 3] {
        [
            self.parts[0].len(),
            self.parts[1].len(),
            self.parts[2].len(),
        ]
    }

    /// Checks every invariant against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CertificateError> {
        let n = g.n();
        let bad = |msg: String| Err(CertificateError::InvalidPartition(msg));
        // 0 = S, 1..=3 = U1..U3
        let mut label = vec![usize::MAX; n];
        let sets = std::iter::once(&self.separator).chain(self.parts.iter());
        for (k, set) in sets.enumerate() {
            for &v in set {
                if v >= n {
                    return bad(format!("vertex {v} out of range"));
                }
                if label[v] != usize::MAX {
                    return bad(format!("vertex {v} appears twice"));
                }
                label[v] = k;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
            return bad(format!("vertex {v} is in no set"));
        }
        let rest = n - self.separator.len();
        for (i, part) in self.parts.iter().enumerate() {
            if 2 * part.len() > rest {
                return bad(format!(
                    "U{} has {} vertices, cap is {rest}/2",
                    i + 1,
                    part.len()
                ));
            }
        }
        for &(u, v) in g.edges() {
            let (lu, lv) = (label[u], label[v]);
            if lu != 0 && lv != 0 && lu != lv {
                return bad(format!("edge {{{u}, {v}}} joins U{lu} and U{lv}"));
            }
        }
        Ok(())
    }
}

fn removed_mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        mask[v] = true;
    }
    mask
}

/// Bags reachable from `start` without passing through `blocked`.
fn subtree_holds(
    tree: &[Vec<usize>],
    bags: &[Vec<usize>],
    start: usize,
    blocked: usize,
    vertex: usize,
) -> bool {
    let mut seen = vec![false; tree.len()];
    seen[blocked] = true;
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(t) = stack.pop() {
        if bags[t].binary_search(&vertex).is_ok() {
            return true;
        }
        for &w in &tree[t] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn is_balanced(g: &Graph, sep: &[usize]) -> bool {
    let rest = g.n() - sep.len();
    g.components_without(&removed_mask(g.n(), sep))
        .iter()
        .all(|c| 2 * c.len() <= rest)
}

/// Walks the decomposition from bag 0 toward the heavy side until the
/// current bag `S` leaves no component of `G - S` larger than
/// `(n - |S|) / 2`.
///
/// The walk can stall between two adjacent bags when no bag is balanced
/// (P3 with bags {0,1}, {1,2} is the smallest case). It then falls back to
/// the smallest balanced subset of a single bag, ties broken by bag index
/// and then lexicographically. Either way `S` lies inside one bag, so
/// `|S| <= width + 1`.
pub fn balanced_separator(
    g: &Graph,
    td: &TreeDecomposition,
) -> Result<Vec<usize>, CertificateError> {
    let report = validate_td(g, td);
    if !report.is_valid() {
        let why = report
            .failures()
            .iter()
            .map(|(k, w)| format!("{k}: {w}"))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(CertificateError::InvalidDecomposition(why));
    }
    let n = g.n();
    if td.bags.is_empty() {
        return Ok(Vec::new());
    }
    let tree = td.tree_adjacency();
    let mut visited = vec![false; td.bags.len()];
    let mut current = 0;
    loop {
        visited[current] = true;
        let sep = &td.bags[current];
        let rest = n - sep.len();
        let comps = g.components_without(&removed_mask(n, sep));
        let Some(heavy) = comps.iter().find(|c| 2 * c.len() > rest) else {
            return Ok(sep.clone());
        };
        match tree[current]
            .iter()
            .copied()
            .find(|&t| subtree_holds(&tree, &td.bags, t, current, heavy[0]))
        {
            Some(next) if !visited[next] => current = next,
            _ => break,
        }
    }
    smallest_balanced_subset(g, td).ok_or(CertificateError::NoBalancedSeparator)
}

fn smallest_balanced_subset(g: &Graph, td: &TreeDecomposition) -> Option<Vec<usize>> {
    let widest = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    for size in 0..=widest {
        for bag in td.bags.iter().filter(|b| b.len() >= size) {
            let mut found = None;
            for_each_combination(bag.len(), size, &mut |idx| {
                let sep: Vec<usize> = idx.iter().map(|&i| bag[i]).collect();
                if is_balanced(g, &sep) {
                    found = Some(sep);
                    return true;
                }
                false
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Visits `k`-subsets of `0..n` in lexicographic order until `f` returns true.
fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Largest-first, least-loaded assignment; ties go to the lowest bin.
/// Returns the bin of each item in input order.
pub fn greedy_bins(sizes: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&i, &j| sizes[j].cmp(&sizes[i]));
    let mut loads = [0usize; 3];
    let mut bins = vec![0; sizes.len()];
    for i in order {
        let b = (0..3).min_by_key(|&b| loads[b]).unwrap();
        loads[b] += sizes[i];
        bins[i] = b;
    }
    bins
}

/// Exhaustive search for a three-bin assignment with every load `<= cap`.
pub fn exhaustive_bins(sizes: &[usize], cap: usize) -> Option<Vec<usize>> {
    fn go(
        order: &[usize],
        sizes: &[usize],
        cap: usize,
        loads: &mut [usize; 3],
        bins: &mut [usize],
    ) -> bool {
        let Some((&i, tail)) = order.split_first() else {
            return true;
        };
        for b in 0..3 {
            // bins with equal load are interchangeable
            if (0..b).any(|e| loads[e] == loads[b]) || loads[b] + sizes[i] > cap {
                continue;
            }
            loads[b] += sizes[i];
            bins[i] = b;
            if go(tail, sizes, cap, loads, bins) {
                return true;
            }
            loads[b] -= sizes[i];
        }
        false
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&i, &j| sizes[j].cmp(&sizes[i]));
    let mut bins = vec![0; sizes.len()];
    go(&order, sizes, cap, &mut [0; 3], &mut bins).then_some(bins)
}

fn loads(sizes: &[usize], bins: &[usize]) -> [usize; 3] {
    let mut l = [0; 3];
    for (s, &b) in sizes.iter().zip(bins) {
        l[b] += s;
    }
    l
}

/// Splits the components of `G - S` into three groups of at most
/// `(n - |S|) / 2` vertices each.
pub fn three_partition(
    g: &Graph,
    separator: &[usize],
) -> Result<BalancedPartition, CertificateError> {
    let n = g.n();
    if let Some(&v) = separator.iter().find(|&&v| v >= n) {
        return Err(CertificateError::InvalidPartition(format!(
            "separator vertex {v} out of range"
        )));
    }
    let mut sep = separator.to_vec();
    sep.sort_unstable();
    sep.dedup();
    let rest = n - sep.len();
    let comps = g.components_without(&removed_mask(n, &sep));
    if let Some(c) = comps.iter().find(|c| 2 * c.len() > rest) {
        return Err(CertificateError::OversizedComponent {
            size: c.len(),
            remaining: rest,
        });
    }
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let cap = rest / 2;
    let mut bins = greedy_bins(&sizes);
    if loads(&sizes, &bins).iter().any(|&l| l > cap) {
        bins = exhaustive_bins(&sizes, cap).ok_or(CertificateError::NoBalancedAssignment)?;
    }
    let mut parts: [Vec<usize>; 3] = Default::default();
    for (comp, &b) in comps.iter().zip(&bins) {
        parts[b].extend_from_slice(comp);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    Ok(BalancedPartition {
        separator: sep,
        parts,
    })
}
