//! Exact characteristic polynomials of integer symmetric matrices.
//!
//! Faddeev–LeVerrier over exact integers: the trace divisions by `k` are
//! exact in ℤ because the running coefficients are (signed) elementary
//! symmetric functions of the eigenvalues. A fixed-width `i128` path covers
//! every desk-scale graph matrix (`dim <= 16`, bounded row sums); anything
//! larger falls back to `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntSymMatrix;

/// Monic characteristic polynomial with exact integer coefficients, stored in
/// ascending degree order (`coeffs[k]` multiplies `x^k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> CharPoly {
        assert!(!coeffs.is_empty() && coeffs.last().unwrap().is_one(), "monic");
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Sum of roots, `-coeffs[n-1]`.
    pub fn root_sum(&self) -> BigInt {
        if self.degree() == 0 {
            BigInt::zero()
        } else {
            -self.coeffs[self.degree() - 1].clone()
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplicity of the root 0 (number of trailing zero coefficients).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// The polynomial with all factors of `x` removed.
    pub fn strip_zero_roots(&self) -> CharPoly {
        let z = self.zero_root_multiplicity();
        CharPoly {
            coeffs: self.coeffs[z..].to_vec(),
        }
    }

    /// Canonical text form: coefficients as decimal integers, ascending
    /// degree, comma-separated. Used as the exact cospectrality key.
    pub fn serialize(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn deserialize(s: &str) -> Option<CharPoly> {
        let coeffs: Option<Vec<BigInt>> = s.split(',').map(|p| p.trim().parse().ok()).collect();
        let coeffs = coeffs?;
        if coeffs.is_empty() || !coeffs.last().unwrap().is_one() {
            return None;
        }
        Some(CharPoly { coeffs })
    }
}

/// Exact characteristic polynomial of a symmetric integer matrix.
pub fn charpoly(m: &IntSymMatrix) -> CharPoly {
    if let Some(fast) = charpoly_i128(m) {
        return CharPoly {
            coeffs: fast.into_iter().map(BigInt::from).collect(),
        };
    }
    let n = m.dim();
    let a: Vec<BigInt> = m.entries().iter().map(|&e| BigInt::from(e)).collect();
    CharPoly {
        coeffs: flv_bigint(&a, n),
    }
}

/// `i128` fast path; `None` when the conservative overflow gate fails.
/// Coefficients are returned ascending, like [`CharPoly::coeffs`].
pub fn charpoly_i128(m: &IntSymMatrix) -> Option<Vec<i128>> {
    let n = m.dim();
    if n > 16 {
        return None;
    }
    let max_row_sum = (0..n)
        .map(|i| m.row(i).iter().map(|e| e.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    // Intermediate values are bounded by R^n * 2^n with R the largest row
    // absolute sum; R <= 40 at n <= 16 keeps every product far inside i128.
    if max_row_sum > 40 {
        return None;
    }
    let a: Vec<i128> = m.entries().iter().map(|&e| e as i128).collect();
    Some(flv_i128(&a, n))
}

macro_rules! flv_impl {
    ($name:ident, $t:ty, $from:expr) => {
        fn $name(a: &[$t], n: usize) -> Vec<$t> {
            let zero = <$t>::zero();
            let one = <$t>::one();
            if n == 0 {
                return vec![one];
            }
            // coefficients descending while building: c[0] = 1 (for x^n)
            let mut c: Vec<$t> = vec![zero.clone(); n + 1];
            c[0] = one.clone();
            // M_1 = I
            let mut mk: Vec<$t> = vec![zero.clone(); n * n];
            for i in 0..n {
                mk[i * n + i] = one.clone();
            }
            let mut am: Vec<$t> = vec![zero.clone(); n * n];
            for k in 1..=n {
                // am = a * mk
                for x in am.iter_mut() {
                    *x = zero.clone();
                }
                for i in 0..n {
                    for l in 0..n {
                        let aval = &a[i * n + l];
                        if *aval == zero {
                            continue;
                        }
                        for j in 0..n {
                            am[i * n + j] += aval.clone() * mk[l * n + j].clone();
                        }
                    }
                }
                let mut tr = zero.clone();
                for i in 0..n {
                    tr += am[i * n + i].clone();
                }
                let kk = $from(k as i64);
                debug_assert!((tr.clone() % kk.clone()).is_zero());
                let ck = -(tr / kk);
                c[k] = ck.clone();
                if k < n {
                    std::mem::swap(&mut mk, &mut am);
                    for i in 0..n {
                        mk[i * n + i] += ck.clone();
                    }
                }
            }
            // reverse to ascending order
            c.reverse();
            c
        }
    };
}

flv_impl!(flv_bigint, BigInt, BigInt::from);
flv_impl!(flv_i128, i128, |k: i64| k as i128);

/// Exact test that two scaled matrices (values `A/da`, `B/db`) have the same
/// nonzero eigenvalue multiset, given their integer characteristic
/// polynomials. Works entirely in integer arithmetic.
pub fn nonzero_spectra_match(pa: &CharPoly, da: i64, pb: &CharPoly, db: i64) -> bool {
    let qa = pa.strip_zero_roots();
    let qb = pb.strip_zero_roots();
    let d = qa.degree();
    if qb.degree() != d {
        return false;
    }
    // Roots of qa are da * s_i; compare {s_i} with {t_j} via
    // qa[k] * da^k * db^d == qb[k] * db^k * da^d for all k.
    let da = BigInt::from(da);
    let db = BigInt::from(db);
    let dad = da.pow(d as u32);
    let dbd = db.pow(d as u32);
    let mut pa_k = BigInt::one();
    let mut pb_k = BigInt::one();
    for k in 0..=d {
        if &qa.coeffs()[k] * &pa_k * &dbd != &qb.coeffs()[k] * &pb_k * &dad {
            return false;
        }
        pa_k *= &da;
        pb_k *= &db;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::spectral::matrix::{edge_laplacian_arcs, edge_laplacian_oriented, laplacian};

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, pairs).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn worked_example_charpoly() {
        // det(xI - L) for the 3-vertex path: x^3 - 4x^2 + 3x
        let p = charpoly(&laplacian(&g(3, &[(1, 2), (1, 3)])));
        assert_eq!(p.coeffs(), &ints(&[0, 3, -4, 1])[..]);
        assert_eq!(p.zero_root_multiplicity(), 1);
        assert_eq!(p.root_sum(), BigInt::from(4));
    }

    #[test]
    fn zero_matrix_charpoly() {
        let p = charpoly(&IntSymMatrix::zero(2));
        assert_eq!(p.coeffs(), &ints(&[0, 0, 1])[..]);
    }

    #[test]
    fn k4_charpoly() {
        // L(K4) spectrum {0, 4, 4, 4}: x^4 - 12x^3 + 48x^2 - 64x
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let p = charpoly(&laplacian(&k4));
        assert_eq!(p.coeffs(), &ints(&[0, -64, 48, -12, 1])[..]);
    }

    #[test]
    fn i128_path_matches_bigint_on_wide_entries() {
        // force the BigInt path with a large entry and compare on a small one
        let m = IntSymMatrix::from_rows(&[vec![100, -3], vec![-3, 7]]).unwrap();
        assert!(charpoly_i128(&m).is_none());
        let p = charpoly(&m);
        // det = 700 - 9 = 691, trace = 107
        assert_eq!(p.coeffs(), &ints(&[691, -107, 1])[..]);

        let small = laplacian(&g(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]));
        let fast = charpoly_i128(&small).unwrap();
        let slow: Vec<BigInt> = flv_bigint(
            &small
                .entries()
                .iter()
                .map(|&e| BigInt::from(e))
                .collect::<Vec<_>>(),
            5,
        );
        assert_eq!(fast.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), slow);
    }

    #[test]
    fn serialize_round_trip() {
        let p = charpoly(&laplacian(&g(4, &[(1, 2), (2, 3), (3, 4)])));
        let s = p.serialize();
        assert_eq!(CharPoly::deserialize(&s).unwrap(), p);
    }

    #[test]
    fn edge_laplacians_share_nonzero_spectrum_with_laplacian() {
        for pairs in [
            vec![(1, 2), (1, 3)],
            vec![(1, 2), (1, 3), (2, 3)],
            vec![(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)],
        ] {
            let n = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap();
            let gr = g(n, &pairs);
            let pl = charpoly(&laplacian(&gr));
            let pe = charpoly(&edge_laplacian_oriented(&gr, &vec![true; gr.m()]));
            assert!(nonzero_spectra_match(&pl, 1, &pe, 1));
            let arcs = edge_laplacian_arcs(&gr).unwrap();
            let pa = charpoly(&arcs.mat);
            assert!(nonzero_spectra_match(&pl, 1, &pa, arcs.denom));
            // kernel dimensions: m - n + w for the oriented form,
            // 2m - (n - w) for the arc form
            let w = gr.components().w;
            assert_eq!(pe.zero_root_multiplicity(), gr.m() + w - n);
            assert_eq!(pa.zero_root_multiplicity(), 2 * gr.m() - (n - w));
        }
    }

    #[test]
    fn triangle_edge_laplacian_kernel_is_cycle_space() {
        let tri = g(3, &[(1, 2), (1, 3), (2, 3)]);
        let pe = charpoly(&edge_laplacian_oriented(&tri, &vec![true; 3]));
        assert_eq!(pe.zero_root_multiplicity(), 1);
    }
}
