//! Spanning subtrees of complete graphs.
//!
//! Enumeration decodes Prüfer sequences in lexicographic order, which yields
//! every spanning tree exactly once and gives a canonical, reproducible
//! ordering. Every decoded tree still passes an independent union-find
//! validity check, guarding the decoder itself.

use crate::error::{Error, Result};
use crate::graph::{CompleteGraph, Contraction, Edge, EdgeImage};

/// Enumeration is bounded here; 9 vertices already means 9^7 = 4,782,969
/// trees. Larger graphs are served by the determinant evaluator instead.
pub const MAX_ENUM_VERTICES: usize = 9;

/// A spanning subtree of a complete graph: `n - 1` edges touching all `n`
/// vertices, connected and acyclic. Edges are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    graph: CompleteGraph,
    edges: Vec<Edge>,
}

impl SpanningTree {
    /// Validates the tree property with union-find; independent from the
    /// Prüfer decoder that normally produces trees.
    pub fn new(graph: CompleteGraph, mut edges: Vec<Edge>) -> Result<SpanningTree> {
        let n = graph.vertex_count();
        if edges.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "a spanning tree of K_{n} has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for e in &edges {
            if !graph.contains(*e) {
                return Err(Error::InvalidEdge(format!("{e} not in K_{n}")));
            }
            let (a, b) = (find(&mut parent, e.lo()), find(&mut parent, e.hi()));
            if a == b {
                return Err(Error::InvalidInput(format!("edge {e} closes a cycle")));
            }
            parent[a] = b;
        }
        // n-1 cycle-free edges on n vertices are automatically connected.
        edges.sort();
        Ok(SpanningTree { graph, edges })
    }

    pub fn graph(&self) -> CompleteGraph {
        self.graph
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Number of tree edges incident to `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    /// Relabel vertices by a permutation, producing the image tree.
    pub fn permute(&self, sigma: &[usize]) -> Result<SpanningTree> {
        if sigma.len() != self.graph.vertex_count() {
            return Err(Error::Bounds("permutation length mismatch".into()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(sigma[e.lo()], sigma[e.hi()]))
            .collect::<Result<Vec<_>>>()?;
        SpanningTree::new(self.graph, edges)
    }
}

/// Lazy enumerator over all spanning trees of `K_n`, in the order induced by
/// lexicographically increasing Prüfer sequences.
pub struct TreeEnumerator {
    graph: CompleteGraph,
    // Odometer over {0..n-1}^(n-2); None once exhausted.
    sequence: Option<Vec<usize>>,
    emitted_trivial: bool,
}

impl TreeEnumerator {
    fn new(graph: CompleteGraph) -> TreeEnumerator {
        let n = graph.vertex_count();
        let sequence = if n >= 3 { Some(vec![0; n - 2]) } else { None };
        TreeEnumerator { graph, sequence, emitted_trivial: false }
    }
}

impl Iterator for TreeEnumerator {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        let n = self.graph.vertex_count();
        if n <= 2 {
            if self.emitted_trivial {
                return None;
            }
            self.emitted_trivial = true;
            let edges = if n == 2 { vec![Edge::new(0, 1).unwrap()] } else { Vec::new() };
            return Some(SpanningTree { graph: self.graph, edges });
        }
        let seq = self.sequence.as_mut()?;
        let tree = decode_pruefer(self.graph, seq);
        // Advance the odometer, most significant digit first.
        let mut pos = seq.len();
        loop {
            if pos == 0 {
                self.sequence = None;
                break;
            }
            pos -= 1;
            if seq[pos] + 1 < n {
                seq[pos] += 1;
                for digit in seq[pos + 1..].iter_mut() {
                    *digit = 0;
                }
                break;
            }
        }
        Some(tree)
    }
}

/// Decode a Prüfer sequence into its spanning tree. The sequence/tree
/// correspondence is a bijection, so lexicographic sequences enumerate all
/// trees without repetition.
fn decode_pruefer(graph: CompleteGraph, seq: &[usize]) -> SpanningTree {
    let n = graph.vertex_count();
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &a in seq {
        degree[a] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let leaf = degree
            .iter()
            .position(|&d| d == 1)
            .expect("a leaf always remains while decoding");
        edges.push(Edge::new(leaf, a).expect("leaf never equals its attachment"));
        degree[leaf] = 0;
        degree[a] -= 1;
    }
    let mut remaining = degree.iter().enumerate().filter(|(_, &d)| d == 1);
    let u = remaining.next().expect("two vertices remain").0;
    let v = remaining.next().expect("two vertices remain").0;
    edges.push(Edge::new(u, v).expect("remaining vertices are distinct"));
    edges.sort();
    SpanningTree { graph, edges }
}

/// Enumerate every spanning tree of `K_n` exactly once. There are `n^(n-2)`
/// of them (with the single empty tree for `n = 1`).
pub fn enumerate_trees(n: usize) -> Result<TreeEnumerator> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(Error::Bounds(format!(
            "tree enumeration supports 1..={MAX_ENUM_VERTICES} vertices, got {n}"
        )));
    }
    Ok(TreeEnumerator::new(CompleteGraph::new(n)?))
}

/// The trees containing a fixed edge, in enumeration order.
pub fn trees_through_edge(
    n: usize,
    e: Edge,
) -> Result<impl Iterator<Item = SpanningTree>> {
    if n < 2 {
        return Err(Error::Bounds("need at least two vertices for an edge".into()));
    }
    let graph = CompleteGraph::new(n)?;
    if !graph.contains(e) {
        return Err(Error::InvalidEdge(format!("{e} not in K_{n}")));
    }
    Ok(enumerate_trees(n)?.filter(move |t| t.contains(e)))
}

/// Image of a tree containing the contracted edge: contract that edge and
/// keep the images of the rest. The result is again a spanning tree.
pub fn contract_tree(c: &Contraction, t: &SpanningTree) -> Result<SpanningTree> {
    if t.graph() != c.source() {
        return Err(Error::GraphMismatch(format!(
            "tree lives on K_{}, contraction starts from K_{}",
            t.graph().vertex_count(),
            c.source().vertex_count()
        )));
    }
    if !t.contains(c.contracted_edge()) {
        return Err(Error::InvalidInput(format!(
            "tree does not contain the contracted edge {}",
            c.contracted_edge()
        )));
    }
    let mut edges = Vec::with_capacity(t.edges().len() - 1);
    for e in t.edges() {
        match c.edge_image(*e)? {
            EdgeImage::Collapsed => {}
            EdgeImage::Edge(f) => edges.push(f),
        }
    }
    SpanningTree::new(c.target(), edges)
        .map_err(|err| Error::InvariantBreach(format!("contracted image is not a tree: {err}")))
}

/// All preimages of a target tree under tree contraction: choose one of the
/// two lifts for every tree edge at the special vertex, take the unique lift
/// elsewhere, and add the contracted edge. The fiber has `2^valence` trees,
/// valence taken at the special vertex.
pub fn tree_fiber(c: &Contraction, t: &SpanningTree) -> Result<Vec<SpanningTree>> {
    if t.graph() != c.target() {
        return Err(Error::GraphMismatch(format!(
            "tree lives on K_{}, contraction lands in K_{}",
            t.graph().vertex_count(),
            c.target().vertex_count()
        )));
    }
    let mut choices: Vec<Vec<Edge>> = Vec::with_capacity(t.edges().len());
    for f in t.edges() {
        choices.push(c.edge_preimages(*f)?);
    }
    let mut fiber = vec![vec![c.contracted_edge()]];
    for lifts in &choices {
        let mut next = Vec::with_capacity(fiber.len() * lifts.len());
        for partial in &fiber {
            for lift in lifts {
                let mut grown = partial.clone();
                grown.push(*lift);
                next.push(grown);
            }
        }
        fiber = next;
    }
    fiber
        .into_iter()
        .map(|edges| {
            SpanningTree::new(c.source(), edges).map_err(|err| {
                Error::InvariantBreach(format!("lifted edge set is not a tree: {err}"))
            })
        })
        .collect()
}
