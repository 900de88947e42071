//! Cost matrices, tours and modular index arithmetic.
//!
//! Tours are always analysed in *canonical position space*: the tour visits
//! positions `0, 1, …, n-1, 0` and every index computation is modulo `n`.
//! Node positions therefore live in `[0, n)` and the helpers [`mod_add`] /
//! [`mod_sub`] implement the `⊕` / `⊖` arithmetic used throughout.

use thiserror::Error;

/// Errors raised while constructing or combining model values.
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("instance must have at least {min} nodes, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("cost matrix is not symmetric at ({u},{v}): {a} vs {b}")]
    Asymmetric { u: usize, v: usize, a: f64, b: f64 },
    #[error("cost ({u},{v}) = {value} is not a finite non-negative number")]
    BadCost { u: usize, v: usize, value: f64 },
    #[error("tour of length {tour} does not match instance with {instance} nodes")]
    DimensionMismatch { tour: usize, instance: usize },
    #[error("tour is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
}

/// Whether every cost in a matrix is an exactly representable integer.
///
/// Integer-valued instances admit exact `f64` arithmetic for every quantity
/// this crate computes (sums and differences of at most a few matrix entries),
/// so equality tests against the oracle can be exact. Floating instances get
/// an epsilon-based improvement threshold in the driver instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    ExactInteger,
    Floating,
}

/// Read access to a symmetric cost structure over `n` nodes.
///
/// Engines are generic over this trait so they can run on a plain
/// [`CostMatrix`], on a tour-relabelled view, or on a rotated view without
/// copying any data.
pub trait Costs {
    fn n(&self) -> usize;
    /// Cost of the edge `{u, v}`, `u != v`, both in `[0, n)`.
    fn cost(&self, u: usize, v: usize) -> f64;
}

/// Dense symmetric cost matrix with non-negative finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    values: Vec<f64>,
    kind: ValueKind,
}

impl CostMatrix {
    /// Minimum number of nodes a matrix can hold.
    pub const MIN_NODES: usize = 3;

    /// Build a matrix by evaluating `f(u, v)` for every pair `u < v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, ModelError> {
        if n < Self::MIN_NODES {
            return Err(ModelError::TooSmall {
                min: Self::MIN_NODES,
                got: n,
            });
        }
        let mut values = vec![0.0; n * n];
        for u in 0..n {
            for v in (u + 1)..n {
                let c = f(u, v);
                if !c.is_finite() || c < 0.0 {
                    return Err(ModelError::BadCost { u, v, value: c });
                }
                values[u * n + v] = c;
                values[v * n + u] = c;
            }
        }
        let kind = if values.iter().all(|c| c.fract() == 0.0) {
            ValueKind::ExactInteger
        } else {
            ValueKind::Floating
        };
        Ok(CostMatrix { n, values, kind })
    }

    /// Build a matrix from full rows, validating symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, ModelError> {
        let n = rows.len();
        if n < Self::MIN_NODES {
            return Err(ModelError::TooSmall {
                min: Self::MIN_NODES,
                got: n,
            });
        }
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ModelError::DimensionMismatch {
                    tour: row.len(),
                    instance: n,
                });
            }
            for (v, &value) in row.iter().enumerate() {
                if u != v && (value - rows[v][u]).abs() != 0.0 {
                    return Err(ModelError::Asymmetric {
                        u,
                        v,
                        a: value,
                        b: rows[v][u],
                    });
                }
            }
        }
        Self::from_fn(n, |u, v| rows[u][v])
    }

    /// Matrix with every off-diagonal entry equal to `value`.
    pub fn uniform(n: usize, value: f64) -> Result<Self, ModelError> {
        Self::from_fn(n, |_, _| value)
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }
}

impl Costs for CostMatrix {
    fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn cost(&self, u: usize, v: usize) -> f64 {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.values[u * self.n + v]
    }
}

impl<C: Costs + ?Sized> Costs for &C {
    fn n(&self) -> usize {
        (**self).n()
    }

    #[inline]
    fn cost(&self, u: usize, v: usize) -> f64 {
        (**self).cost(u, v)
    }
}

/// `(x + t) mod n`.
#[inline]
pub fn mod_add(x: usize, t: usize, n: usize) -> usize {
    debug_assert!(x < n);
    (x + t) % n
}

/// `(x - t) mod n`, wrapping below zero.
#[inline]
pub fn mod_sub(x: usize, t: usize, n: usize) -> usize {
    debug_assert!(x < n);
    (x + n - t % n) % n
}

/// A Hamiltonian tour stored as the visiting order of node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    /// The canonical tour `0 → 1 → ⋯ → n-1 → 0`.
    pub fn canonical(n: usize) -> Tour {
        Tour {
            order: (0..n).collect(),
        }
    }

    /// Wrap an explicit visiting order, validating it is a permutation.
    pub fn new(order: Vec<usize>) -> Result<Tour, ModelError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &x in &order {
            if x >= n || seen[x] {
                return Err(ModelError::NotAPermutation { n });
            }
            seen[x] = true;
        }
        Ok(Tour { order })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Node visited at position `p`.
    pub fn node_at(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    /// The `n` undirected tour edges as `(order[p], order[p⊕1])` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |p| (self.order[p], self.order[mod_add(p, 1, n)]))
    }
}

/// Total cost of a tour under a matrix of matching dimension.
pub fn tour_length(tour: &Tour, costs: &CostMatrix) -> Result<f64, ModelError> {
    if tour.len() != costs.n() {
        return Err(ModelError::DimensionMismatch {
            tour: tour.len(),
            instance: costs.n(),
        });
    }
    Ok(tour.edges().map(|(u, v)| costs.cost(u, v)).sum())
}
