//! Bipartite pure states built from graphs, their partial traces, Schmidt
//! data, local-unitary equivalence, and edge-state mixtures.
//!
//! The incidence state of a graph lives in (vertex space) ⊗ (arc space) and
//! has every amplitude equal to an integer multiple of 1/√2. Those states are
//! stored exactly (the integer multiples), so both partial traces come out as
//! exact rational matrices and the identities
//! `tr_E(ψψ†) = L` and `tr_V(ψψ†) = ½M̄ᵀM̄` can be checked with zero
//! tolerance. Generic states and mixtures fall back to `f64`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{
    charpoly, jacobi_eigenvalues, laplacian, CharPoly, IntSymMatrix,
};

/// Whether amplitudes are stored as defined (norm² = 2m) or rescaled to a
/// unit vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormConvention {
    Raw,
    Unit,
}

#[derive(Clone, Debug)]
enum AmpData {
    /// Amplitude = entry / √2, exact.
    Sqrt2(Vec<i64>),
    Float(Vec<f64>),
}

/// A bipartite vector over (vertex space, dimension `dim_v`) ⊗ (arc space,
/// dimension `dim_e`), indexed `v * dim_e + arc` with the arc order of
/// [`crate::spectral::arc_list`].
#[derive(Clone, Debug)]
pub struct PureState {
    dim_v: usize,
    dim_e: usize,
    amps: AmpData,
    norm_convention: NormConvention,
}

impl PureState {
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn norm_convention(&self) -> NormConvention {
        self.norm_convention
    }

    pub fn amplitude(&self, v: usize, arc: usize) -> f64 {
        let i = v * self.dim_e + arc;
        match &self.amps {
            AmpData::Sqrt2(k) => k[i] as f64 / std::f64::consts::SQRT_2,
            AmpData::Float(a) => a[i],
        }
    }

    /// Integer multiple of 1/√2 at `(v, arc)`, when stored exactly.
    pub fn amplitude_sqrt2(&self, v: usize, arc: usize) -> Option<i64> {
        match &self.amps {
            AmpData::Sqrt2(k) => Some(k[v * self.dim_e + arc]),
            AmpData::Float(_) => None,
        }
    }

    pub fn norm_squared(&self) -> f64 {
        match &self.amps {
            AmpData::Sqrt2(k) => k.iter().map(|&x| (x * x) as f64).sum::<f64>() / 2.0,
            AmpData::Float(a) => a.iter().map(|&x| x * x).sum(),
        }
    }

    /// Exact squared norm for exactly-stored states.
    pub fn norm_squared_exact(&self) -> Option<BigRational> {
        match &self.amps {
            AmpData::Sqrt2(k) => {
                let s: i64 = k.iter().map(|&x| x * x).sum();
                Some(BigRational::new(BigInt::from(s), BigInt::from(2)))
            }
            AmpData::Float(_) => None,
        }
    }

    /// The unit-norm version of this state (floating amplitudes).
    pub fn normalized(&self) -> PureState {
        let norm = self.norm_squared().sqrt();
        let amps: Vec<f64> = (0..self.dim_v * self.dim_e)
            .map(|i| {
                let (v, a) = (i / self.dim_e, i % self.dim_e);
                self.amplitude(v, a) / norm
            })
            .collect();
        PureState {
            dim_v: self.dim_v,
            dim_e: self.dim_e,
            amps: AmpData::Float(amps),
            norm_convention: NormConvention::Unit,
        }
    }
}

fn incidence_state(g: &Graph, signed: bool) -> Result<PureState> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(v) = g.first_isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    let n = g.n();
    let dim_e = 2 * g.m();
    let mut k = vec![0i64; n * dim_e];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (fwd, rev) = (2 * e, 2 * e + 1);
        if signed {
            // (a_u - a_v) ⊗ (d_uv - d_vu), scaled by 1/√2
            k[u * dim_e + fwd] = 1;
            k[u * dim_e + rev] = -1;
            k[v * dim_e + fwd] = -1;
            k[v * dim_e + rev] = 1;
        } else {
            // (a_u + a_v)/√2 ⊗ (d_uv + d_vu), overall scale 1/√2 per slot
            k[u * dim_e + fwd] = 1;
            k[u * dim_e + rev] = 1;
            k[v * dim_e + fwd] = 1;
            k[v * dim_e + rev] = 1;
        }
    }
    Ok(PureState {
        dim_v: n,
        dim_e,
        amps: AmpData::Sqrt2(k),
        norm_convention: NormConvention::Raw,
    })
}

/// The incidence vector ψ_G = (1/√2) Σ_{uv∈E} (a_u − a_v) ⊗ (d_uv − d_vu),
/// raw normalization (‖ψ‖² = 2m). Rejects empty graphs and graphs with
/// isolated vertices.
pub fn incidence_vector(g: &Graph) -> Result<PureState> {
    incidence_state(g, true)
}

/// The signless companion φ_G = Σ_{uv∈E} ς_uv ⊗ (d_uv + d_vu) with
/// ς_uv = (a_u + a_v)/√2; ‖φ‖² = 2m.
pub fn signless_incidence_vector(g: &Graph) -> Result<PureState> {
    incidence_state(g, false)
}

/// A real symmetric density-like operator. `exact` carries the entries as
/// rationals whenever the state they came from was stored exactly; the `f64`
/// entries are then single roundings of those rationals.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<f64>,
    trace_value: f64,
    exact: Option<Vec<BigRational>>,
}

impl DensityMatrix {
    fn from_exact(dim: usize, exact: Vec<BigRational>) -> DensityMatrix {
        let entries: Vec<f64> = exact.iter().map(|r| r.to_f64().unwrap()).collect();
        let trace_value = (0..dim)
            .map(|i| exact[i * dim + i].clone())
            .sum::<BigRational>()
            .to_f64()
            .unwrap();
        DensityMatrix {
            dim,
            entries,
            trace_value,
            exact: Some(exact),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace_value(&self) -> f64 {
        self.trace_value
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn exact_entries(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    /// Exact entrywise equality with `mat / denom`. Requires the exact
    /// representation; zero tolerance.
    pub fn equals_int_scaled(&self, mat: &IntSymMatrix, denom: i64) -> bool {
        let Some(exact) = &self.exact else {
            return false;
        };
        if self.dim != mat.dim() {
            return false;
        }
        let d = BigInt::from(denom);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = BigRational::new(BigInt::from(mat.get(i, j)), d.clone());
                if exact[i * self.dim + j] != want {
                    return false;
                }
            }
        }
        true
    }

    /// Exact entrywise equality of two exactly-represented operators.
    pub fn equals_exact(&self, other: &DensityMatrix) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => self.dim == other.dim && a == b,
            _ => false,
        }
    }

    /// Eigenvalues, ascending (floating).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut a = self.entries.clone();
        jacobi_eigenvalues(&mut a, self.dim)
    }
}

/// Partial trace over the arc factor: the `dim_v x dim_v` operator
/// `tr_E(ss†)`. Exact for exactly-stored states.
pub fn partial_trace_e(s: &PureState) -> DensityMatrix {
    match &s.amps {
        AmpData::Sqrt2(k) => {
            let (nv, ne) = (s.dim_v, s.dim_e);
            let mut twice = vec![0i64; nv * nv];
            for i in 0..nv {
                for j in i..nv {
                    let mut acc = 0i64;
                    for a in 0..ne {
                        acc += k[i * ne + a] * k[j * ne + a];
                    }
                    twice[i * nv + j] = acc;
                    twice[j * nv + i] = acc;
                }
            }
            let exact: Vec<BigRational> = twice
                .iter()
                .map(|&t| BigRational::new(BigInt::from(t), BigInt::from(2)))
                .collect();
            DensityMatrix::from_exact(nv, exact)
        }
        AmpData::Float(amp) => {
            let (nv, ne) = (s.dim_v, s.dim_e);
            let mut entries = vec![0.0; nv * nv];
            for i in 0..nv {
                for j in i..nv {
                    let mut acc = 0.0;
                    for a in 0..ne {
                        acc += amp[i * ne + a] * amp[j * ne + a];
                    }
                    entries[i * nv + j] = acc;
                    entries[j * nv + i] = acc;
                }
            }
            let trace_value = (0..nv).map(|i| entries[i * nv + i]).sum();
            DensityMatrix {
                dim: nv,
                entries,
                trace_value,
                exact: None,
            }
        }
    }
}

/// Partial trace over the vertex factor: the `dim_e x dim_e` operator
/// `tr_V(ss†)`. Exact for exactly-stored states.
pub fn partial_trace_v(s: &PureState) -> DensityMatrix {
    match &s.amps {
        AmpData::Sqrt2(k) => {
            let (nv, ne) = (s.dim_v, s.dim_e);
            let mut twice = vec![0i64; ne * ne];
            for a in 0..ne {
                for b in a..ne {
                    let mut acc = 0i64;
                    for v in 0..nv {
                        acc += k[v * ne + a] * k[v * ne + b];
                    }
                    twice[a * ne + b] = acc;
                    twice[b * ne + a] = acc;
                }
            }
            let exact: Vec<BigRational> = twice
                .iter()
                .map(|&t| BigRational::new(BigInt::from(t), BigInt::from(2)))
                .collect();
            DensityMatrix::from_exact(ne, exact)
        }
        AmpData::Float(amp) => {
            let (nv, ne) = (s.dim_v, s.dim_e);
            let mut entries = vec![0.0; ne * ne];
            for a in 0..ne {
                for b in a..ne {
                    let mut acc = 0.0;
                    for v in 0..nv {
                        acc += amp[v * ne + a] * amp[v * ne + b];
                    }
                    entries[a * ne + b] = acc;
                    entries[b * ne + a] = acc;
                }
            }
            let trace_value = (0..ne).map(|i| entries[i * ne + i]).sum();
            DensityMatrix {
                dim: ne,
                entries,
                trace_value,
                exact: None,
            }
        }
    }
}

/// Schmidt coefficients (descending, above tolerance) and rank.
#[derive(Clone, Debug)]
pub struct SchmidtData {
    pub coefficients: Vec<f64>,
    pub rank: usize,
}

/// Schmidt decomposition data of a bipartite state: the coefficients are the
/// singular values of the `dim_v x dim_e` reshaping (equivalently the square
/// roots of the eigenvalues of `tr_E(ss†)`), computed by one-sided Jacobi so
/// that zero coefficients come out at machine-epsilon scale rather than at
/// the sqrt(eps) scale a Gram-matrix route would produce.
pub fn schmidt(s: &PureState, tolerance: f64) -> Result<SchmidtData> {
    assert!(tolerance > 0.0);
    // columns over the smaller factor, entries over the larger one
    let transpose = s.dim_v > s.dim_e;
    let (rows, cols) = if transpose {
        (s.dim_v, s.dim_e)
    } else {
        (s.dim_e, s.dim_v)
    };
    let mut a: Vec<Vec<f64>> = (0..cols)
        .map(|c| {
            (0..rows)
                .map(|r| {
                    if transpose {
                        s.amplitude(r, c)
                    } else {
                        s.amplitude(c, r)
                    }
                })
                .collect()
        })
        .collect();
    one_sided_jacobi(&mut a)?;
    let mut coefficients: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt())
        .filter(|&c| c > tolerance)
        .collect();
    coefficients.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = coefficients.len();
    Ok(SchmidtData { coefficients, rank })
}

/// Orthogonalizes the columns in place; afterwards the column norms are the
/// singular values.
fn one_sided_jacobi(a: &mut [Vec<f64>]) -> Result<()> {
    let cols = a.len();
    if cols <= 1 {
        return Ok(());
    }
    let scale = a
        .iter()
        .flat_map(|c| c.iter())
        .fold(0.0f64, |m, &x| m.max(x.abs()))
        .max(1e-300);
    let tol = 1e-15 * scale * scale;
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (mut app, mut aqq, mut apq) = (0.0, 0.0, 0.0);
                for r in 0..a[p].len() {
                    app += a[p][r] * a[p][r];
                    aqq += a[q][r] * a[q][r];
                    apq += a[p][r] * a[q][r];
                }
                if apq.abs() <= tol * 1e-2 || apq.abs() <= 1e-15 * (app * aqq).sqrt() {
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for r in 0..a[p].len() {
                    let xp = a[p][r];
                    let xq = a[q][r];
                    a[p][r] = c * xp - s * xq;
                    a[q][r] = s * xp + c * xq;
                }
                rotated = true;
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NoConvergence)
}

/// [`schmidt`] with the default scale-relative cutoff `1e-10 * largest`.
pub fn schmidt_auto(s: &PureState) -> Result<SchmidtData> {
    let all = schmidt(s, 1e-300)?;
    let largest = all.coefficients.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return Ok(SchmidtData {
            coefficients: Vec::new(),
            rank: 0,
        });
    }
    schmidt(s, 1e-10 * largest)
}

/// Exact Schmidt rank of ψ_G, computed as the integer rank of the Laplacian
/// (no floating SVD involved). Equals `n - w(G)`.
pub fn schmidt_rank(g: &Graph) -> Result<usize> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(v) = g.first_isolated_vertex() {
        return Err(Error::IsolatedVertex(v));
    }
    Ok(laplacian(g).rank())
}

/// Local-unitary equivalence of the incidence vectors of two graphs with the
/// same vertex and edge counts: decided by exact Laplacian cospectrality.
pub fn lu_equivalent(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.m() != h.m() {
        return Err(Error::DimensionMismatch(format!(
            "lu-equivalence needs matching dimensions: ({}, {}) vs ({}, {})",
            g.n(),
            g.m(),
            h.n(),
            h.m()
        )));
    }
    Ok(laplacian_charpoly(g) == laplacian_charpoly(h))
}

fn laplacian_charpoly(g: &Graph) -> CharPoly {
    charpoly(&laplacian(g))
}

/// Mixture weight: exact nonnegative rational or floating.
#[derive(Clone, Copy, Debug)]
pub enum Weight {
    Ratio(u32, u32),
    Float(f64),
}

impl Weight {
    fn as_f64(&self) -> f64 {
        match *self {
            Weight::Ratio(p, q) => p as f64 / q as f64,
            Weight::Float(x) => x,
        }
    }

    fn as_ratio(&self) -> Option<BigRational> {
        match *self {
            Weight::Ratio(p, q) => Some(BigRational::new(BigInt::from(p), BigInt::from(q))),
            Weight::Float(_) => None,
        }
    }
}

/// Amplitudes of a two-vertex edge state: either the exact uniform
/// `(sign_u, sign_v)/√2` form or arbitrary floating amplitudes.
#[derive(Clone, Copy, Debug)]
pub enum EdgeAmps {
    InvSqrt2 { sign_u: i8, sign_v: i8 },
    Float { amp_u: f64, amp_v: f64 },
}

#[derive(Clone, Debug)]
struct EnsembleEntry {
    weight: Weight,
    u: usize,
    v: usize,
    amps: EdgeAmps,
}

/// A statistical mixture of edge states: weights ω_e summing to 1, each state
/// a unit vector supported on the two endpoints of an edge.
#[derive(Clone, Debug, Default)]
pub struct EdgeStateEnsemble {
    entries: Vec<EnsembleEntry>,
}

impl EdgeStateEnsemble {
    pub fn new() -> EdgeStateEnsemble {
        EdgeStateEnsemble::default()
    }

    /// Adds `(weight, edge {u1,v1} 1-based, amplitudes)`; the edge-state must
    /// be unit norm (|amp_u|² + |amp_v|² = 1 within 1e-12).
    pub fn push(&mut self, weight: Weight, u1: usize, v1: usize, amps: EdgeAmps) -> Result<()> {
        if u1 == v1 {
            return Err(Error::LoopEdge(u1));
        }
        if u1 < 1 {
            return Err(Error::OutOfRange(u1, usize::MAX));
        }
        if v1 < 1 {
            return Err(Error::OutOfRange(v1, usize::MAX));
        }
        match amps {
            EdgeAmps::InvSqrt2 { sign_u, sign_v } => {
                if sign_u.abs() != 1 || sign_v.abs() != 1 {
                    return Err(Error::WeightError(0.0));
                }
            }
            EdgeAmps::Float { amp_u, amp_v } => {
                let norm2 = amp_u * amp_u + amp_v * amp_v;
                if (norm2 - 1.0).abs() > 1e-12 {
                    return Err(Error::WeightError(norm2 - 1.0));
                }
            }
        }
        self.entries.push(EnsembleEntry {
            weight,
            u: u1 - 1,
            v: v1 - 1,
            amps,
        });
        Ok(())
    }

    /// The uniform signed ensemble of a graph: ω_e = 1/m, amplitudes
    /// `(+1, -1)/√2` on each edge (sign + on the smaller endpoint).
    pub fn uniform_signed(g: &Graph) -> Result<EdgeStateEnsemble> {
        Self::uniform(g, -1)
    }

    /// The uniform unsigned ensemble: ω_e = 1/m, amplitudes `(+1, +1)/√2`.
    pub fn uniform_unsigned(g: &Graph) -> Result<EdgeStateEnsemble> {
        Self::uniform(g, 1)
    }

    fn uniform(g: &Graph, sign_v: i8) -> Result<EdgeStateEnsemble> {
        if g.m() == 0 {
            return Err(Error::EmptyGraph);
        }
        let m = g.m() as u32;
        let mut ens = EdgeStateEnsemble::new();
        for &(u, v) in g.edges() {
            ens.push(
                Weight::Ratio(1, m),
                u + 1,
                v + 1,
                EdgeAmps::InvSqrt2 {
                    sign_u: 1,
                    sign_v,
                },
            )?;
        }
        Ok(ens)
    }
}

/// The density operator ρ = Σ_e ω_e |e⟩⟨e| on an `n`-dimensional vertex
/// space. Exact when every weight is rational and every edge state uniform.
pub fn mixture_density(ens: &EdgeStateEnsemble, n: usize) -> Result<DensityMatrix> {
    for e in &ens.entries {
        if e.u >= n {
            return Err(Error::OutOfRange(e.u + 1, n));
        }
        if e.v >= n {
            return Err(Error::OutOfRange(e.v + 1, n));
        }
    }
    let all_exact = ens.entries.iter().all(|e| {
        matches!(e.weight, Weight::Ratio(_, _)) && matches!(e.amps, EdgeAmps::InvSqrt2 { .. })
    });
    if all_exact {
        let mut total = BigRational::zero();
        let mut exact = vec![BigRational::zero(); n * n];
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for e in &ens.entries {
            let w = e.weight.as_ratio().unwrap();
            total += &w;
            let EdgeAmps::InvSqrt2 { sign_u, sign_v } = e.amps else {
                unreachable!()
            };
            let wu = &w * &half;
            exact[e.u * n + e.u] += &wu;
            exact[e.v * n + e.v] += &wu;
            let cross = &wu * BigRational::from(BigInt::from((sign_u * sign_v) as i64));
            exact[e.u * n + e.v] += &cross;
            exact[e.v * n + e.u] += &cross;
        }
        if total != BigRational::one() {
            let off = (total - BigRational::one()).to_f64().unwrap_or(f64::NAN);
            return Err(Error::WeightError(off));
        }
        return Ok(DensityMatrix::from_exact(n, exact));
    }
    let total: f64 = ens.entries.iter().map(|e| e.weight.as_f64()).sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightError(total - 1.0));
    }
    let mut entries = vec![0.0; n * n];
    for e in &ens.entries {
        let w = e.weight.as_f64();
        let (au, av) = match e.amps {
            EdgeAmps::InvSqrt2 { sign_u, sign_v } => (
                sign_u as f64 / std::f64::consts::SQRT_2,
                sign_v as f64 / std::f64::consts::SQRT_2,
            ),
            EdgeAmps::Float { amp_u, amp_v } => (amp_u, amp_v),
        };
        entries[e.u * n + e.u] += w * au * au;
        entries[e.v * n + e.v] += w * av * av;
        entries[e.u * n + e.v] += w * au * av;
        entries[e.v * n + e.u] += w * au * av;
    }
    let trace_value = (0..n).map(|i| entries[i * n + i]).sum();
    Ok(DensityMatrix {
        dim: n,
        entries,
        trace_value,
        exact: None,
    })
}

/// The normalized Laplacian ρ_G = L(G)/(2m) as an exact density matrix;
/// equals the uniform signed mixture and `tr_E(ψψ†)/2m`.
pub fn normalized_laplacian_density(g: &Graph) -> Result<DensityMatrix> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let l = laplacian(g);
    let n = g.n();
    let denom = BigInt::from(2 * g.m() as i64);
    let exact: Vec<BigRational> = (0..n * n)
        .map(|i| BigRational::new(BigInt::from(l.entries()[i]), denom.clone()))
        .collect();
    Ok(DensityMatrix::from_exact(n, exact))
}
