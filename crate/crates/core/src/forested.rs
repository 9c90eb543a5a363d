//! The forested form: the multiaffine form on edge vectors given by summing,
//! over all spanning trees, the product of the tree's edge coefficients.
//!
//! Two independent evaluators are provided. The tree-sum evaluator follows
//! the definition literally and is the oracle; the determinant evaluator
//! expands the reduced weighted Laplacian by a division-free subset recursion
//! (weighted matrix-tree), staying exact over any commutative ring, including
//! ones without exact division such as Z/4.

use crate::error::{Error, Result};
use crate::graph::{Contraction, Edge, EdgeVector};
use crate::ring::RingElement;
use crate::trees::{enumerate_trees, SpanningTree, MAX_ENUM_VERTICES};

/// How to evaluate the forested form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluator {
    /// Literal sum over enumerated spanning trees; bounded by the tree
    /// enumeration limit.
    TreeSum,
    /// Determinant of the reduced weighted Laplacian; works for every
    /// constructible graph size.
    Determinant,
}

/// Product of a vector's coefficients over the edges of one spanning tree;
/// the empty product (one-vertex graph) is the ring unit.
pub fn tree_monomial(t: &SpanningTree, a: &EdgeVector) -> Result<RingElement> {
    if t.graph() != a.graph() {
        return Err(Error::GraphMismatch(format!(
            "tree on K_{}, vector on K_{}",
            t.graph().vertex_count(),
            a.graph().vertex_count()
        )));
    }
    let ring = a.ring();
    let mut acc = ring.one();
    for e in t.edges() {
        acc = ring.mul(&acc, a.coeff(*e)?)?;
    }
    Ok(acc)
}

/// Evaluate the forested form of an edge vector with the chosen evaluator.
/// The two evaluators agree exactly wherever both are defined.
pub fn forested_form(a: &EdgeVector, evaluator: Evaluator) -> Result<RingElement> {
    match evaluator {
        Evaluator::TreeSum => tree_sum(a),
        Evaluator::Determinant => laplacian_determinant(a),
    }
}

/// Evaluate with the determinant route, which covers every constructible
/// graph size.
pub fn forested_form_auto(a: &EdgeVector) -> Result<RingElement> {
    laplacian_determinant(a)
}

fn tree_sum(a: &EdgeVector) -> Result<RingElement> {
    let n = a.graph().vertex_count();
    if n > MAX_ENUM_VERTICES {
        return Err(Error::Bounds(format!(
            "tree-sum evaluation supports up to {MAX_ENUM_VERTICES} vertices, got {n}"
        )));
    }
    let ring = a.ring();
    let mut total = ring.zero();
    for t in enumerate_trees(n)? {
        total = ring.add(&total, &tree_monomial(&t, a)?)?;
    }
    Ok(total)
}

/// Reduced weighted Laplacian determinant: off-diagonal entries are the
/// negated edge coefficients, diagonal entries the row sums, with the row
/// and column of vertex 0 deleted.
fn laplacian_determinant(a: &EdgeVector) -> Result<RingElement> {
    let n = a.graph().vertex_count();
    let ring = a.ring();
    if n == 1 {
        return Ok(ring.one());
    }
    let size = n - 1;
    let mut matrix: Vec<Vec<RingElement>> = vec![vec![ring.zero(); size]; size];
    for i in 1..n {
        let mut diag = ring.zero();
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = a.coeff(Edge::new(i, j)?)?;
            diag = ring.add(&diag, w)?;
            if j >= 1 {
                matrix[i - 1][j - 1] = ring.neg(w)?;
            }
        }
        matrix[i - 1][i - 1] = diag;
    }
    det_division_free(a, matrix)
}

/// Division-free determinant by Laplace expansion with memoization over
/// column subsets: det(rows 0..k-1, cols S) expands along its last row.
/// O(m * 2^m) ring operations, fine for m <= 11.
fn det_division_free(a: &EdgeVector, matrix: Vec<Vec<RingElement>>) -> Result<RingElement> {
    let ring = a.ring();
    let m = matrix.len();
    if m == 0 {
        return Ok(ring.one());
    }
    let full: usize = (1 << m) - 1;
    let mut minors: Vec<Option<RingElement>> = vec![None; full + 1];
    minors[0] = Some(ring.one());
    for subset in 1..=full {
        let k = subset.count_ones() as usize;
        let row = k - 1;
        let mut acc = ring.zero();
        let mut position = 0;
        for col in 0..m {
            if subset & (1 << col) == 0 {
                continue;
            }
            let smaller = minors[subset & !(1 << col)]
                .as_ref()
                .expect("subsets are filled in increasing order");
            let term = ring.mul(&matrix[row][col], smaller)?;
            acc = if (row + position).is_multiple_of(2) {
                ring.add(&acc, &term)?
            } else {
                ring.sub(&acc, &term)?
            };
            position += 1;
        }
        minors[subset] = Some(acc);
    }
    Ok(minors[full].take().expect("full subset computed"))
}

/// Both sides of the contraction identity for the forested form, evaluated
/// exactly: bumping one edge coefficient by the unit changes the form by the
/// forested form of the pushforward along that edge's contraction.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub lhs: RingElement,
    pub rhs: RingElement,
    pub holds: bool,
}

pub fn contraction_identity_check(
    a: &EdgeVector,
    e0: Edge,
    evaluator: Evaluator,
) -> Result<IdentityCheck> {
    let ring = a.ring().clone();
    let bumped = a.plus_unit(e0)?;
    let lhs = ring.sub(
        &forested_form(&bumped, evaluator)?,
        &forested_form(a, evaluator)?,
    )?;
    let contraction = Contraction::new(a.graph().vertex_count(), e0)?;
    let pushed = contraction.pushforward(a)?;
    let rhs = forested_form(&pushed, evaluator)?;
    let holds = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, holds })
}
