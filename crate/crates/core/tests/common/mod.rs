#![allow(dead_code)]

use sptw::{Family, Graph};

/// Every generator instance with at most `max_n` vertices (gnp excluded).
pub fn family_corpus(max_n: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(Family::Complete(n));
        out.push(Family::Path(n));
        if n >= 3 {
            out.push(Family::Cycle(n));
        }
    }
    for p in 1..max_n {
        for q in p..=max_n - p {
            out.push(Family::CompleteBipartite(p, q));
        }
    }
    for r in 2..=max_n {
        for c in r..=max_n / r {
            out.push(Family::Grid(r, c));
        }
    }
    out
}

/// `count` seeded gnp descriptors with `n` cycling through `4..=max_n`.
pub fn gnp_corpus(count: u64, max_n: usize) -> Vec<Family> {
    let probs = [0.2, 0.3, 0.4, 0.5, 0.7];
    (0..count)
        .map(|i| Family::Gnp {
            n: 4 + (i as usize % (max_n - 3)),
            p: probs[(i / 7) as usize % probs.len()],
            seed: 1000 + i,
        })
        .collect()
}

/// Families plus gnp graphs with at most `max_n` vertices, generated.
pub fn mixed_corpus(max_n: usize, gnp_count: u64) -> Vec<(String, Graph)> {
    family_corpus(max_n)
        .into_iter()
        .chain(gnp_corpus(gnp_count, max_n))
        .map(|f| (f.to_string(), f.generate().unwrap()))
        .collect()
}

/// Every labelled graph on `n` vertices, as an edge bitmask over the pairs
/// `(u, v)`, `u < v`, in lexicographic order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        Graph::new(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .unwrap()
    })
}

/// Component count by union-find, independent of the library's search.
pub fn union_find_components(g: &Graph) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    (0..g.n()).filter(|&v| find(&mut parent, v) == v).count()
}
