//! Exact integer matrices: Laplacians, incidence matrices, edge Laplacians.
//!
//! Every constructor here is exact integer arithmetic; nothing rounds. The
//! half-integer edge Laplacian on arcs is kept as an integer matrix with an
//! explicit denominator so downstream spectral code never touches rationals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense symmetric matrix with `i64` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSymMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntSymMatrix {
    pub fn zero(dim: usize) -> IntSymMatrix {
        IntSymMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    /// Builds from explicit rows, checking squareness and symmetry.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntSymMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {dim}x{dim} matrix",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        let m = IntSymMatrix { dim, entries };
        for i in 0..dim {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::DimensionMismatch(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.dim + j] = v;
        self.entries[j * self.dim + i] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// Exact rank over the integers (Bareiss fraction-free elimination).
    pub fn rank(&self) -> usize {
        bareiss_rank(&self.entries, self.dim, self.dim)
    }

    /// Entries as `f64` scaled by `1/denom`.
    pub fn to_f64_scaled(&self, denom: f64) -> Vec<f64> {
        self.entries.iter().map(|&e| e as f64 / denom).collect()
    }
}

/// Dense rectangular matrix with `i64` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    /// `M Mᵀ`, symmetric `rows x rows`.
    pub fn gram_rows(&self) -> IntSymMatrix {
        let mut out = IntSymMatrix::zero(self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let mut s = 0i64;
                for k in 0..self.cols {
                    s += self.get(i, k) * self.get(j, k);
                }
                out.set_sym(i, j, s);
            }
        }
        out
    }

    /// `Mᵀ M`, symmetric `cols x cols`.
    pub fn gram_cols(&self) -> IntSymMatrix {
        let mut out = IntSymMatrix::zero(self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let mut s = 0i64;
                for k in 0..self.rows {
                    s += self.get(k, i) * self.get(k, j);
                }
                out.set_sym(i, j, s);
            }
        }
        out
    }

    /// Exact rank over the integers.
    pub fn rank(&self) -> usize {
        bareiss_rank(&self.entries, self.rows, self.cols)
    }
}

/// Bareiss fraction-free elimination over `BigInt`; returns the rank.
fn bareiss_rank(entries: &[i64], rows: usize, cols: usize) -> usize {
    let mut a: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
    let idx = |i: usize, j: usize| i * cols + j;
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // find pivot in column c at or below row r
        let pivot = (r..rows).find(|&i| !a[idx(i, c)].is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..cols {
                a.swap(idx(p, j), idx(r, j));
            }
        }
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let v = (&a[idx(r, c)] * &a[idx(i, j)] - &a[idx(i, c)] * &a[idx(r, j)]) / &prev;
                a[idx(i, j)] = v;
            }
            a[idx(i, c)] = BigInt::zero();
        }
        prev = a[idx(r, c)].clone();
        debug_assert!(prev.is_positive() || prev.is_negative());
        r += 1;
        rank += 1;
    }
    rank
}

/// Symmetric matrix with an explicit scalar denominator: value = `mat/denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSymMatrix {
    pub mat: IntSymMatrix,
    pub denom: i64,
}

impl ScaledSymMatrix {
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Exact rational coefficients of `det(xI - mat/denom)`, ascending:
    /// `c_k = b_k / denom^(dim-k)` where `b` is the integer characteristic
    /// polynomial of `mat`.
    pub fn charpoly_rational(&self) -> Vec<num_rational::BigRational> {
        let b = super::charpoly::charpoly(&self.mat);
        let dim = self.dim();
        let d = BigInt::from(self.denom);
        b.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                num_rational::BigRational::new(c.clone(), d.pow((dim - k) as u32))
            })
            .collect()
    }
}

/// The Laplacian `L = D - A`.
pub fn laplacian(g: &Graph) -> IntSymMatrix {
    let mut m = IntSymMatrix::zero(g.n());
    for (v, d) in g.degrees().into_iter().enumerate() {
        m.set_sym(v, v, d as i64);
    }
    for &(u, v) in g.edges() {
        m.set_sym(u, v, -1);
    }
    m
}

/// The signless Laplacian `L⁺ = D + A`.
pub fn signless_laplacian(g: &Graph) -> IntSymMatrix {
    let mut m = laplacian(g);
    for &(u, v) in g.edges() {
        m.set_sym(u, v, 1);
    }
    m
}

/// Per-edge orientation: `source_is_lower[e]` says whether the smaller
/// endpoint of edge `e` (in graph edge order) is the source.
pub type Orientation = Vec<bool>;

/// Oriented incidence matrix `M_F` (`n x m`): column `e` holds `+1` at the
/// source and `-1` at the sink of edge `e`. For every orientation,
/// `M_F M_Fᵀ` equals the Laplacian exactly.
pub fn oriented_incidence(g: &Graph, orientation: &Orientation) -> IntMatrix {
    assert_eq!(orientation.len(), g.m(), "one orientation bit per edge");
    let mut m = IntMatrix::zero(g.n(), g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (src, snk) = if orientation[e] { (u, v) } else { (v, u) };
        m.set(src, e, 1);
        m.set(snk, e, -1);
    }
    m
}

/// Arc order used throughout: for each edge `{u,v}` with `u < v`, the arc
/// `(u,v)` comes first, then `(v,u)`, edges in graph order. Arc `2e` is the
/// forward arc of edge `e` and arc `2e+1` the reverse.
pub fn arc_list(g: &Graph) -> Vec<(usize, usize)> {
    let mut arcs = Vec::with_capacity(2 * g.m());
    for &(u, v) in g.edges() {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    arcs
}

/// Directed incidence matrix `M̄` of the symmetric digraph (`n x 2m`): the
/// column of arc `(u,v)` is `a_u - a_v`. Satisfies `½ M̄M̄ᵀ = L` exactly.
/// Rejects graphs with isolated vertices.
pub fn directed_incidence(g: &Graph) -> Result<IntMatrix> {
    if let Some(v) = g.first_isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    let mut m = IntMatrix::zero(g.n(), 2 * g.m());
    for (a, (src, snk)) in arc_list(g).into_iter().enumerate() {
        m.set(src, a, 1);
        m.set(snk, a, -1);
    }
    Ok(m)
}

/// Edge Laplacian in the oriented (`m x m`) form, `M_Fᵀ M_F`.
pub fn edge_laplacian_oriented(g: &Graph, orientation: &Orientation) -> IntSymMatrix {
    oriented_incidence(g, orientation).gram_cols()
}

/// Edge Laplacian on the arc space (`2m x 2m`), `½ M̄ᵀM̄`, kept as the integer
/// matrix `M̄ᵀM̄` with denominator 2.
pub fn edge_laplacian_arcs(g: &Graph) -> Result<ScaledSymMatrix> {
    let m = directed_incidence(g)?;
    Ok(ScaledSymMatrix {
        mat: m.gram_cols(),
        denom: 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, pairs).unwrap()
    }

    #[test]
    fn laplacian_worked_example() {
        let l = laplacian(&g(3, &[(1, 2), (1, 3)]));
        assert_eq!(
            l,
            IntSymMatrix::from_rows(&[
                vec![2, -1, -1],
                vec![-1, 1, 0],
                vec![-1, 0, 1]
            ])
            .unwrap()
        );
        assert_eq!(laplacian(&g(2, &[])), IntSymMatrix::zero(2));
        let k2 = laplacian(&g(2, &[(1, 2)]));
        assert_eq!(k2, IntSymMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap());
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let l = laplacian(&g(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 5)]));
        for i in 0..5 {
            assert_eq!(l.row(i).iter().sum::<i64>(), 0);
        }
        assert_eq!(l.trace(), 12);
    }

    #[test]
    fn signless_laplacian_examples() {
        let s = signless_laplacian(&g(3, &[(1, 2), (1, 3)]));
        assert_eq!(
            s,
            IntSymMatrix::from_rows(&[vec![2, 1, 1], vec![1, 1, 0], vec![1, 0, 1]]).unwrap()
        );
        assert_eq!(signless_laplacian(&g(2, &[])), IntSymMatrix::zero(2));
        assert_eq!(
            signless_laplacian(&g(2, &[(1, 2)])),
            IntSymMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap()
        );
    }

    #[test]
    fn oriented_incidence_reproduces_laplacian() {
        let p3 = g(3, &[(1, 2), (1, 3)]);
        // both small-endpoint-as-source and the flipped orientations
        for orient in [vec![true, true], vec![false, true], vec![false, false]] {
            let m = oriented_incidence(&p3, &orient);
            assert_eq!(m.gram_rows(), laplacian(&p3));
        }
        let k2 = g(2, &[(1, 2)]);
        let m = oriented_incidence(&k2, &vec![true]);
        assert_eq!((m.get(0, 0), m.get(1, 0)), (1, -1));
    }

    #[test]
    fn directed_incidence_product_is_twice_laplacian() {
        let k2 = g(2, &[(1, 2)]);
        let m = directed_incidence(&k2).unwrap();
        assert_eq!(m.cols(), 2);
        assert_eq!((m.get(0, 0), m.get(1, 0)), (1, -1));
        assert_eq!((m.get(0, 1), m.get(1, 1)), (-1, 1));
        let gram = m.gram_rows();
        let l = laplacian(&k2);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(gram.get(i, j), 2 * l.get(i, j));
            }
        }
    }

    #[test]
    fn directed_incidence_rejects_isolated() {
        assert_eq!(
            directed_incidence(&g(3, &[(1, 2)])),
            Err(Error::IsolatedVertex(3))
        );
    }

    #[test]
    fn ranks() {
        let p3 = g(3, &[(1, 2), (1, 3)]);
        assert_eq!(laplacian(&p3).rank(), 2);
        let m = directed_incidence(&p3).unwrap();
        assert_eq!(m.rank(), 2); // n - w = 3 - 1
        let two_comp = g(6, &[(1, 2), (2, 3), (4, 5), (5, 6)]);
        assert_eq!(
            directed_incidence(&two_comp).unwrap().rank(),
            6 - two_comp.components().w
        );
    }

    #[test]
    fn scaled_charpoly_is_rational_exact() {
        // K2 arc edge-Laplacian: (1/2)[[2,-2],[-2,2]] has charpoly x^2 - 2x
        let k2 = g(2, &[(1, 2)]);
        let arcs = edge_laplacian_arcs(&k2).unwrap();
        let coeffs = arcs.charpoly_rational();
        use num_rational::BigRational;
        let r = |x: i64| BigRational::from(BigInt::from(x));
        assert_eq!(coeffs, vec![r(0), r(-2), r(1)]);
    }

    #[test]
    fn edge_laplacian_shapes() {
        let tri = g(3, &[(1, 2), (1, 3), (2, 3)]);
        let el = edge_laplacian_oriented(&tri, &vec![true; 3]);
        assert_eq!(el.dim(), 3);
        let ela = edge_laplacian_arcs(&tri).unwrap();
        assert_eq!(ela.dim(), 6);
        assert_eq!(ela.denom, 2);
        // trace of ½M̄ᵀM̄ equals trace of L (= 2m)
        assert_eq!(ela.mat.trace(), 2 * laplacian(&tri).trace());
    }
}
