//! Exact maximum clique by branch and bound with a greedy-coloring bound.

/// A fixed-size bit set over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// An undirected simple graph as adjacency bit sets.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BitSet::new(n); n],
        }
    }

    /// Takes ownership of precomputed rows; the caller guarantees symmetry
    /// and an empty diagonal.
    pub fn from_rows(adj: Vec<BitSet>) -> Self {
        Graph { adj }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }
}

struct Search<'a> {
    graph: &'a Graph,
    best: usize,
    target: usize,
}

impl Search<'_> {
    /// Greedy coloring of `cands` in order; returns the vertices regrouped by
    /// color class together with each vertex's color number (1-based).
    fn color(&self, cands: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let n = self.graph.vertex_count();
        let mut classes: Vec<(BitSet, Vec<usize>)> = Vec::new();
        for &v in cands {
            let row = &self.graph.adj[v];
            match classes.iter_mut().find(|(set, _)| !set.intersects(row)) {
                Some((set, members)) => {
                    set.insert(v);
                    members.push(v);
                }
                None => {
                    let mut set = BitSet::new(n);
                    set.insert(v);
                    classes.push((set, vec![v]));
                }
            }
        }
        let mut order = Vec::with_capacity(cands.len());
        let mut colors = Vec::with_capacity(cands.len());
        for (k, (_, members)) in classes.into_iter().enumerate() {
            for v in members {
                order.push(v);
                colors.push(k + 1);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, size: usize, cands: &[usize]) {
        let (order, colors) = self.color(cands);
        for i in (0..order.len()).rev() {
            if size + colors[i] <= self.best || self.best >= self.target {
                return;
            }
            let v = order[i];
            let next: Vec<usize> = order[..i]
                .iter()
                .copied()
                .filter(|&u| self.graph.has_edge(v, u))
                .collect();
            if next.is_empty() {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(size + 1, &next);
            }
        }
    }
}

/// Size of a maximum clique.
///
/// `known_lower` is a size already attained elsewhere and `known_upper` a
/// proven bound; the search stops as soon as it reaches the upper bound, and
/// returns at least `known_lower`.
pub fn max_clique_size(graph: &Graph, known_lower: usize, known_upper: usize) -> usize {
    let mut vertices: Vec<usize> = (0..graph.vertex_count()).collect();
    vertices.sort_by_key(|&v| std::cmp::Reverse(graph.degree(v)));
    let mut search = Search {
        graph,
        best: known_lower,
        target: known_upper,
    };
    if !vertices.is_empty() && search.best < search.target {
        search.expand(0, &vertices);
    }
    search.best
}
