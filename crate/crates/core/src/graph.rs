//! The complete graph on `n` labeled vertices, its edge set, free modules of
//! edge vectors over a coefficient ring, and edge-contraction maps with their
//! pushforward on edge vectors.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

/// Construction-time cap on vertex counts. Edge counts stay tiny below this;
/// spanning-tree enumeration enforces its own tighter bound.
pub const MAX_VERTICES: usize = 12;

/// The complete graph on vertices `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompleteGraph {
    n: usize,
}

/// An unordered pair of distinct vertices, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Edge> {
        if a == b {
            return Err(Error::InvalidEdge(format!("loop at vertex {a}")));
        }
        Ok(Edge { lo: a.min(b), hi: a.max(b) })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn touches(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint other than `v`; `v` must bound the edge.
    pub fn other(&self, v: usize) -> usize {
        debug_assert!(self.touches(v));
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl CompleteGraph {
    pub fn new(n: usize) -> Result<CompleteGraph> {
        if n == 0 {
            return Err(Error::Bounds("a complete graph needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::Bounds(format!(
                "vertex count {n} exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        Ok(CompleteGraph { n })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn contains(&self, e: Edge) -> bool {
        e.hi < self.n
    }

    /// All edges in lexicographic order: {0,1}, {0,2}, ..., {n-2,n-1}.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| Edge { lo: i, hi: j }))
    }

    /// Position of `e` in lexicographic order.
    pub fn edge_index(&self, e: Edge) -> Result<usize> {
        if !self.contains(e) {
            return Err(Error::InvalidEdge(format!("{e} not in K_{}", self.n)));
        }
        let (i, j) = (e.lo, e.hi);
        Ok(i * self.n - i * (i + 1) / 2 + (j - i - 1))
    }

    pub fn edge_at(&self, idx: usize) -> Result<Edge> {
        self.edges()
            .nth(idx)
            .ok_or_else(|| Error::Bounds(format!("edge index {idx} out of range")))
    }
}

/// An element of the free module with one coefficient per edge of a complete
/// graph, stored densely in lexicographic edge order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeVector {
    graph: CompleteGraph,
    ring: Ring,
    coeffs: Vec<RingElement>,
}

impl EdgeVector {
    pub fn zero(graph: CompleteGraph, ring: Ring) -> EdgeVector {
        let coeffs = vec![ring.zero(); graph.edge_count()];
        EdgeVector { graph, ring, coeffs }
    }

    /// Build from explicit (edge, value) entries; omitted edges are zero and
    /// duplicate edges are rejected.
    pub fn from_entries(
        graph: CompleteGraph,
        ring: Ring,
        entries: &[(Edge, RingElement)],
    ) -> Result<EdgeVector> {
        let mut v = EdgeVector::zero(graph, ring);
        let mut seen = vec![false; graph.edge_count()];
        for (e, value) in entries {
            let idx = graph.edge_index(*e)?;
            if seen[idx] {
                return Err(Error::InvalidInput(format!("duplicate coefficient for edge {e}")));
            }
            seen[idx] = true;
            v.ring.validate(value)?;
            v.coeffs[idx] = value.clone();
        }
        Ok(v)
    }

    /// Build with one coefficient per edge in lexicographic order.
    pub fn from_fn<F>(graph: CompleteGraph, ring: Ring, mut f: F) -> Result<EdgeVector>
    where
        F: FnMut(Edge) -> RingElement,
    {
        let mut coeffs = Vec::with_capacity(graph.edge_count());
        for e in graph.edges() {
            let value = f(e);
            ring.validate(&value)?;
            coeffs.push(value);
        }
        Ok(EdgeVector { graph, ring, coeffs })
    }

    pub fn graph(&self) -> CompleteGraph {
        self.graph
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeff(&self, e: Edge) -> Result<&RingElement> {
        Ok(&self.coeffs[self.graph.edge_index(e)?])
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn check_compatible(&self, other: &EdgeVector) -> Result<()> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch(format!(
                "K_{} vs K_{}",
                self.graph.n, other.graph.n
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.spec(),
                other.ring.spec()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &EdgeVector) -> Result<EdgeVector> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeVector { graph: self.graph, ring: self.ring.clone(), coeffs })
    }

    pub fn scale(&self, r: &RingElement) -> Result<EdgeVector> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| self.ring.mul(r, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeVector { graph: self.graph, ring: self.ring.clone(), coeffs })
    }

    /// The vector `self + 1_e0`: bump the coefficient of `e0` by the unit.
    pub fn plus_unit(&self, e0: Edge) -> Result<EdgeVector> {
        let idx = self.graph.edge_index(e0)?;
        let mut out = self.clone();
        out.coeffs[idx] = self.ring.add(&out.coeffs[idx], &self.ring.one())?;
        Ok(out)
    }

    /// Relabel vertices by the permutation `sigma` (vertex `v` becomes
    /// `sigma[v]`); the coefficient of `e` moves to the image edge.
    pub fn permute(&self, sigma: &[usize]) -> Result<EdgeVector> {
        let n = self.graph.n;
        if sigma.len() != n {
            return Err(Error::Bounds(format!("permutation length {} != {n}", sigma.len())));
        }
        let mut seen = vec![false; n];
        for &img in sigma {
            if img >= n || seen[img] {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            seen[img] = true;
        }
        let mut out = EdgeVector::zero(self.graph, self.ring.clone());
        for e in self.graph.edges() {
            let image = Edge::new(sigma[e.lo], sigma[e.hi])?;
            let idx = self.graph.edge_index(image)?;
            out.coeffs[idx] = self.coeff(e)?.clone();
        }
        Ok(out)
    }

    pub fn from_int_fn<F>(graph: CompleteGraph, ring: Ring, mut f: F) -> Result<EdgeVector>
    where
        F: FnMut(Edge) -> BigInt,
    {
        EdgeVector::from_fn(graph, ring.clone(), |e| ring.from_bigint(&f(e)))
    }
}

/// Image of an edge under a contraction: either an edge of the smaller graph
/// or the collapsed marker for the contracted edge itself. A distinct marker
/// keeps the pushforward from misrouting the contracted coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeImage {
    Collapsed,
    Edge(Edge),
}

/// The contraction of one edge of a complete graph, with the canonical
/// relabeling: the merged vertex takes the lower endpoint's label and every
/// vertex above the higher endpoint shifts down by one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    source: CompleteGraph,
    target: CompleteGraph,
    contracted: Edge,
    vertex_map: Vec<usize>,
    special: usize,
}

impl Contraction {
    /// Contract `e0` in the complete graph on `source_vertices` vertices.
    pub fn new(source_vertices: usize, e0: Edge) -> Result<Contraction> {
        let source = CompleteGraph::new(source_vertices)?;
        if source_vertices < 2 {
            return Err(Error::Bounds("contraction needs at least two vertices".into()));
        }
        if !source.contains(e0) {
            return Err(Error::InvalidEdge(format!("{e0} not in K_{source_vertices}")));
        }
        let target = CompleteGraph::new(source_vertices - 1)?;
        let vertex_map: Vec<usize> = (0..source_vertices)
            .map(|v| {
                if v == e0.hi {
                    e0.lo
                } else if v > e0.hi {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        let special = e0.lo;
        Ok(Contraction { source, target, contracted: e0, vertex_map, special })
    }

    pub fn source(&self) -> CompleteGraph {
        self.source
    }

    pub fn target(&self) -> CompleteGraph {
        self.target
    }

    pub fn contracted_edge(&self) -> Edge {
        self.contracted
    }

    /// The unique target vertex with a two-point fiber.
    pub fn special_vertex(&self) -> usize {
        self.special
    }

    pub fn map_vertex(&self, v: usize) -> Result<usize> {
        self.vertex_map
            .get(v)
            .copied()
            .ok_or_else(|| Error::Bounds(format!("vertex {v} out of range")))
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_image(&self, e: Edge) -> Result<EdgeImage> {
        if !self.source.contains(e) {
            return Err(Error::InvalidEdge(format!(
                "{e} not in K_{}",
                self.source.vertex_count()
            )));
        }
        if e == self.contracted {
            return Ok(EdgeImage::Collapsed);
        }
        let image = Edge::new(self.vertex_map[e.lo], self.vertex_map[e.hi])
            .expect("only the contracted edge collapses");
        Ok(EdgeImage::Edge(image))
    }

    /// The one or two source edges mapping onto `f`; two exactly when the
    /// special vertex bounds `f`.
    pub fn edge_preimages(&self, f: Edge) -> Result<Vec<Edge>> {
        if !self.target.contains(f) {
            return Err(Error::InvalidEdge(format!(
                "{f} not in K_{}",
                self.target.vertex_count()
            )));
        }
        let fiber = |v: usize| -> Vec<usize> {
            (0..self.source.vertex_count())
                .filter(|&u| self.vertex_map[u] == v)
                .collect()
        };
        let mut out = Vec::new();
        for &u in &fiber(f.lo) {
            for &w in &fiber(f.hi) {
                out.push(Edge::new(u, w).expect("fibers of distinct vertices are disjoint"));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Pushforward on edge vectors: the coefficient of a target edge is the
    /// sum of the source coefficients over its preimages, and the contracted
    /// edge's coefficient is discarded.
    pub fn pushforward(&self, a: &EdgeVector) -> Result<EdgeVector> {
        if a.graph() != self.source {
            return Err(Error::GraphMismatch(format!(
                "vector lives on K_{}, contraction starts from K_{}",
                a.graph().vertex_count(),
                self.source.vertex_count()
            )));
        }
        let ring = a.ring().clone();
        let mut out = EdgeVector::zero(self.target, ring.clone());
        for e in self.source.edges() {
            match self.edge_image(e)? {
                EdgeImage::Collapsed => {}
                EdgeImage::Edge(f) => {
                    let idx = self.target.edge_index(f)?;
                    out.coeffs[idx] = ring.add(&out.coeffs[idx], a.coeff(e)?)?;
                }
            }
        }
        Ok(out)
    }
}
