//! Exact treewidth for small graphs.
//!
//! Subset dynamic programming over elimination orderings:
//!
//! ```text
//! TW(empty) = -inf
//! TW(S)     = min over v in S of max(TW(S - v), q(S - v, v))
//! ```
//!
//! where `q(S, v)` counts the vertices outside `S + v` reachable from `v`
//! through paths whose interior lies in `S`. `tw(G) = TW(V)`. States are
//! bitmasks, so the oracle is capped at [`MAX_ORACLE_LIMIT`] vertices.

mod decomposition;

use thiserror::Error;

use crate::graph::{Family, Graph};

pub use decomposition::{
    parse_pace_td, validate_td, Check, TdParseError, TdValidation, TreeDecomposition,
};

pub const DEFAULT_ORACLE_LIMIT: usize = 20;
pub const MAX_ORACLE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("oracle limit {0} exceeds the hard cap {MAX_ORACLE_LIMIT}")]
    LimitTooHigh(usize),
    #[error("no closed form for {0}")]
    NoClosedForm(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub width: usize,
    pub decomposition: TreeDecomposition,
    /// First eliminated vertex first.
    pub elimination_order: Vec<usize>,
}

/// Vertices outside `set + v` reachable from `v` through `set`.
fn reach_outside(adj: &[u64], set: u64, v: usize) -> u64 {
    let mut visited = 1u64 << v;
    let mut out = 0u64;
    let mut stack = visited;
    while stack != 0 {
        let u = stack.trailing_zeros() as usize;
        stack &= stack - 1;
        let fresh = adj[u] & !visited;
        visited |= fresh;
        out |= fresh & !set;
        stack |= fresh & set;
    }
    out
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

/// Exact treewidth with a decomposition of that width. Refuses graphs with
/// more than `limit` vertices.
pub fn exact_tw(g: &Graph, limit: usize) -> Result<ExactResult, ExactError> {
    if limit > MAX_ORACLE_LIMIT {
        return Err(ExactError::LimitTooHigh(limit));
    }
    let n = g.n();
    if n == 0 {
        return Err(ExactError::Empty);
    }
    if n > limit {
        return Err(ExactError::TooLarge { n, limit });
    }
    let adj = g.adjacency_masks();
    let full = (1u64 << n) - 1;
    // tw[S]; -1 stands in for -inf at the empty set
    let mut tw = vec![0i8; 1usize << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut best = i8::MAX;
        for v in bits(s) {
            let rest = s & !(1 << v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            let q = reach_outside(&adj, rest, v).count_ones() as i8;
            let val = prev.max(q);
            if val < best {
                best = val;
            }
        }
        tw[s as usize] = best;
    }
    let width = tw[full as usize] as usize;

    // Walk back from V, taking the lowest-index vertex that attains the minimum.
    let mut reversed = Vec::with_capacity(n);
    let mut neighbourhoods = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = tw[s as usize];
        let (v, q) = bits(s)
            .find_map(|v| {
                let rest = s & !(1 << v);
                let q = reach_outside(&adj, rest, v);
                (tw[rest as usize].max(q.count_ones() as i8) == target).then_some((v, q))
            })
            .expect("DP table is consistent");
        reversed.push(v);
        neighbourhoods.push(q);
        s &= !(1 << v);
    }
    reversed.reverse();
    neighbourhoods.reverse();
    let elimination_order = reversed;

    let decomposition = decomposition_from_order(n, &elimination_order, &neighbourhoods);
    debug_assert_eq!(decomposition.width(), width as i64);
    Ok(ExactResult {
        width,
        decomposition,
        elimination_order,
    })
}

/// Bag `i` is `order[i]` plus its neighbourhood at elimination time. Bag `i`
/// hangs off the bag of the earliest-eliminated vertex in that neighbourhood;
/// bags with an empty neighbourhood are chained together.
fn decomposition_from_order(
    n: usize,
    order: &[usize],
    neighbourhoods: &[u64],
) -> TreeDecomposition {
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = Vec::new();
    for (i, (&v, &q)) in order.iter().zip(neighbourhoods).enumerate() {
        let mut bag: Vec<usize> = bits(q).collect();
        bag.push(v);
        bags.push(bag);
        match bits(q).map(|w| position[w]).min() {
            Some(parent) => edges.push((i, parent)),
            None => roots.push(i),
        }
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    TreeDecomposition::new(bags, edges)
}

/// Known treewidth of the generator families. A `1 x c` grid is a path.
pub fn closed_form_tw(family: &Family) -> Result<usize, ExactError> {
    let bad = || ExactError::NoClosedForm(family.to_string());
    match *family {
        Family::Complete(n) if n >= 1 => Ok(n - 1),
        Family::CompleteBipartite(p, q) if p >= 1 && q >= 1 => Ok(p.min(q)),
        Family::Path(n) if n >= 1 => Ok(usize::from(n >= 2)),
        Family::Cycle(n) if n >= 3 => Ok(2),
        Family::Grid(r, c) if r >= 2 && c >= 2 => Ok(r.min(c)),
        Family::Grid(r, c) if r >= 1 && c >= 1 => closed_form_tw(&Family::Path(r * c)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Width of the best elimination ordering, by trying every permutation.
    pub(crate) fn brute_force_tw(g: &Graph) -> usize {
        fn go(adj: &mut Vec<u64>, remaining: u64, width: usize, best: &mut usize) {
            if remaining == 0 {
                *best = (*best).min(width);
                return;
            }
            if width >= *best {
                return;
            }
            let mut rem = remaining;
            while rem != 0 {
                let v = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                let nb = adj[v] & remaining & !(1 << v);
                let saved = adj.clone();
                let mut m = nb;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    adj[u] |= nb & !(1 << u);
                }
                go(
                    adj,
                    remaining & !(1 << v),
                    width.max(nb.count_ones() as usize),
                    best,
                );
                *adj = saved;
            }
        }
        let mut adj = g.adjacency_masks();
        let mut best = usize::MAX;
        go(&mut adj, (1u64 << g.n()) - 1, 0, &mut best);
        best
    }

    fn tw_of(f: Family) -> usize {
        exact_tw(&f.generate().unwrap(), DEFAULT_ORACLE_LIMIT)
            .unwrap()
            .width
    }

    #[test]
    fn reach_outside_examples() {
        // path 0-1-2-3: from 0 through {1}, reach {2}
        let g = Family::Path(4).generate().unwrap();
        let adj = g.adjacency_masks();
        assert_eq!(reach_outside(&adj, 0b0010, 0), 0b0100);
        assert_eq!(reach_outside(&adj, 0b0110, 0), 0b1000);
        assert_eq!(reach_outside(&adj, 0, 1), 0b0101);
    }

    #[test]
    fn small_widths() {
        assert_eq!(tw_of(Family::Complete(4)), 3);
        assert_eq!(tw_of(Family::Cycle(5)), 2);
        assert_eq!(tw_of(Family::Path(6)), 1);
        assert_eq!(tw_of(Family::Grid(3, 3)), 3);
        assert_eq!(tw_of(Family::Complete(1)), 0);
        assert_eq!(exact_tw(&Graph::edgeless(5), 20).unwrap().width, 0);
    }

    #[test]
    fn brute_force_agrees_on_examples() {
        assert_eq!(brute_force_tw(&Family::Cycle(5).generate().unwrap()), 2);
        assert_eq!(brute_force_tw(&Family::Grid(3, 3).generate().unwrap()), 3);
    }

    #[test]
    fn refuses_large_graphs() {
        let g = Family::Path(21).generate().unwrap();
        assert_eq!(
            exact_tw(&g, 20),
            Err(ExactError::TooLarge { n: 21, limit: 20 })
        );
        assert_eq!(exact_tw(&g, 25), Err(ExactError::LimitTooHigh(25)));
        assert_eq!(exact_tw(&Graph::edgeless(0), 20), Err(ExactError::Empty));
    }

    #[test]
    fn decomposition_is_valid_and_deterministic() {
        for f in [
            Family::Grid(3, 4),
            Family::CompleteBipartite(3, 5),
            Family::Gnp {
                n: 11,
                p: 0.3,
                seed: 5,
            },
        ] {
            let g = f.generate().unwrap();
            let r = exact_tw(&g, 20).unwrap();
            let v = validate_td(&g, &r.decomposition);
            assert!(v.is_valid(), "{f}: {v:?}");
            assert_eq!(v.width, r.width as i64);
            assert_eq!(r, exact_tw(&g, 20).unwrap());
            let mut sorted = r.elimination_order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..g.n()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn disconnected_graph_decomposition_is_a_tree() {
        let g = Family::Cycle(4)
            .generate()
            .unwrap()
            .disjoint_union(&Family::Complete(3).generate().unwrap());
        let r = exact_tw(&g, 20).unwrap();
        assert_eq!(r.width, 2);
        assert!(validate_td(&g, &r.decomposition).is_valid());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_tw(&Family::CompleteBipartite(3, 5)), Ok(3));
        assert_eq!(closed_form_tw(&Family::Complete(5)), Ok(4));
        assert_eq!(closed_form_tw(&Family::Grid(3, 4)), Ok(3));
        assert_eq!(tw_of(Family::Grid(3, 4)), 3);
        assert_eq!(closed_form_tw(&Family::Grid(1, 5)), Ok(1));
        assert_eq!(closed_form_tw(&Family::Path(1)), Ok(0));
        assert!(closed_form_tw(&Family::Cycle(2)).is_err());
        assert!(closed_form_tw(&Family::Gnp {
            n: 5,
            p: 0.5,
            seed: 1
        })
        .is_err());
    }
}
