//! Von Neumann entropy of normalized graph Laplacians, the un-normalized
//! companion, and exact/high-precision entropy fingerprints.
//!
//! For a graph with integral Laplacian spectrum the entropy is a rational
//! combination of logarithms of primes,
//! `S = ln(2m) - (1/2m) Σ λ ln λ = Σ_p c_p ln p`, and since `{ln p}` is
//! linearly independent over the rationals, equality of the coefficient maps
//! is a sound and complete test for equal entropy. Non-integral spectra get a
//! high-precision decimal value instead (default 60 digits), computed from
//! the exact isolated roots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::highprec::{with_ln_eval, Dec, LnEval};
use crate::spectral::{charpoly, laplacian, spectrum, Eigenvalue, Spectrum};

/// Default number of decimal digits carried by numeric fingerprints.
pub const DEFAULT_PRECISION: u32 = 60;
/// Guard digits used internally above the requested precision.
const GUARD: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FingerprintKind {
    /// Integral spectrum: exact prime-log coefficient map present.
    Exact,
    /// Non-integral spectrum: decimal value only.
    Numeric,
}

/// Exact or high-precision representation of an entropy value.
#[derive(Clone, Debug)]
pub struct EntropyFingerprint {
    pub kind: FingerprintKind,
    /// `prime -> c_p` in lowest terms, present iff `kind == Exact`;
    /// the value is `Σ c_p ln p`.
    pub exact: Option<BTreeMap<u64, BigRational>>,
    numeric: Dec,
    pub precision_digits: u32,
}

/// Outcome of an entropy comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyMatch {
    EqualExact,
    EqualToDigits(u32),
    Different,
}

impl EntropyFingerprint {
    /// Decimal value at the stored precision.
    pub fn numeric(&self) -> &Dec {
        &self.numeric
    }

    pub fn numeric_f64(&self) -> f64 {
        self.numeric.to_f64()
    }

    /// Canonical serialization of the exact map, e.g. `2:3/5;3:-1/5;5:1`.
    pub fn exact_key(&self) -> Option<String> {
        self.exact.as_ref().map(|map| {
            map.iter()
                .map(|(p, c)| format!("{p}:{}", format_ratio(c)))
                .collect::<Vec<_>>()
                .join(";")
        })
    }

    /// Canonical one-line form, e.g.
    /// `exact: 2:3/5; 3:-1/5; 5:1 | numeric(60): 1.805...`.
    pub fn canonical_text(&self) -> String {
        let numeric = format!(
            "numeric({}): {}",
            self.precision_digits,
            self.numeric.to_string_digits(self.precision_digits)
        );
        match self.exact_key() {
            Some(key) => format!("exact: {} | {}", key.replace(';', "; "), numeric),
            None => numeric,
        }
    }

    /// Exact equality of two Exact-kind fingerprints.
    pub fn equals_exact(&self, other: &EntropyFingerprint) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

fn format_ratio(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut v = 0;
            while n % p == 0 {
                n /= p;
                v += 1;
            }
            out.push((p, v));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Builds the exact map for `S = ln(2m) - (1/2m) Σ λ ln λ` from an integral
/// spectrum: `c_p = v_p(2m) - (1/2m) Σ λ v_p(λ)`.
fn exact_map_normalized(two_m: u64, lambdas: &[u64]) -> BTreeMap<u64, BigRational> {
    let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (p, v) in prime_factors(two_m) {
        map.insert(p, BigRational::from(BigInt::from(v)));
    }
    let denom = BigInt::from(two_m);
    for &l in lambdas {
        if l <= 1 {
            continue;
        }
        for (p, v) in prime_factors(l) {
            let contrib = BigRational::new(
                -BigInt::from(l) * BigInt::from(v),
                denom.clone(),
            );
            *map.entry(p).or_insert_with(BigRational::zero) += contrib;
        }
    }
    map.retain(|_, c| !c.is_zero());
    map
}

/// Builds the exact map for `Ŝ = -Σ λ ln λ`: `c_p = -Σ λ v_p(λ)`.
fn exact_map_unnormalized(lambdas: &[u64]) -> BTreeMap<u64, BigRational> {
    let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
    for &l in lambdas {
        if l <= 1 {
            continue;
        }
        for (p, v) in prime_factors(l) {
            let contrib = BigRational::from(-BigInt::from(l) * BigInt::from(v));
            *map.entry(p).or_insert_with(BigRational::zero) += contrib;
        }
    }
    map.retain(|_, c| !c.is_zero());
    map
}

/// Evaluates `Σ c_p ln p` at the evaluator's working precision.
pub fn eval_exact_map(map: &BTreeMap<u64, BigRational>, ln: &mut LnEval) -> Dec {
    let mut acc = Dec::zero(ln.prec());
    for (&p, c) in map {
        acc = acc.add(&ln.ln_u64(p).mul_ratio(c));
    }
    acc
}

/// Numeric `Ŝ = -Σ λ ln λ` from an exact spectrum (any kind of roots).
fn eval_unnormalized_numeric(spec: &Spectrum, ln: &mut LnEval) -> Dec {
    let prec = ln.prec();
    let mut acc = Dec::zero(prec);
    for e in &spec.eigenvalues {
        match e {
            Eigenvalue::Exact(k) => {
                if k > &BigInt::from(1u32) {
                    let ku = k.to_u64().expect("eigenvalue fits u64");
                    let term = ln.ln_u64(ku).mul_ratio(&BigRational::from(k.clone()));
                    acc = acc.sub(&term);
                }
                // λ = 0 contributes nothing (0 ln 0 = 0); λ = 1 has ln 1 = 0
            }
            Eigenvalue::Isolated(r) => {
                let x = r.to_dec(prec);
                let term = ln.ln_dec(&x).mul(&x);
                acc = acc.sub(&term);
            }
        }
    }
    acc
}

fn fingerprint_from_spectrum(
    spec: &Spectrum,
    two_m: u64,
    normalized: bool,
    digits: u32,
) -> EntropyFingerprint {
    let work = digits + GUARD;
    with_ln_eval(work, |ln| fingerprint_inner(spec, two_m, normalized, digits, ln))
}

fn fingerprint_inner(
    spec: &Spectrum,
    two_m: u64,
    normalized: bool,
    digits: u32,
    ln: &mut LnEval,
) -> EntropyFingerprint {
    if spec.is_integral {
        let lambdas: Vec<u64> = spec
            .exact_values()
            .unwrap()
            .iter()
            .map(|v| v.to_u64().expect("nonnegative eigenvalue"))
            .collect();
        let map = if normalized {
            exact_map_normalized(two_m, &lambdas)
        } else {
            exact_map_unnormalized(&lambdas)
        };
        let numeric = eval_exact_map(&map, ln).truncate(digits);
        return EntropyFingerprint {
            kind: FingerprintKind::Exact,
            exact: Some(map),
            numeric,
            precision_digits: digits,
        };
    }
    let s_hat = eval_unnormalized_numeric(spec, ln);
    let numeric = if normalized {
        // S = ln(2m) + Ŝ/(2m)
        ln.ln_u64(two_m)
            .add(&s_hat.div_small(two_m as i64))
            .truncate(digits)
    } else {
        s_hat.truncate(digits)
    };
    EntropyFingerprint {
        kind: FingerprintKind::Numeric,
        exact: None,
        numeric,
        precision_digits: digits,
    }
}

/// Von Neumann entropy `S(ρ_G)` of the normalized Laplacian `L/(2m)`, at the
/// default precision.
pub fn von_neumann_entropy(g: &Graph) -> Result<EntropyFingerprint> {
    von_neumann_entropy_with_precision(g, DEFAULT_PRECISION)
}

pub fn von_neumann_entropy_with_precision(g: &Graph, digits: u32) -> Result<EntropyFingerprint> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let spec = spectrum(&charpoly(&laplacian(g)));
    Ok(fingerprint_from_spectrum(
        &spec,
        2 * g.m() as u64,
        true,
        digits,
    ))
}

/// Un-normalized entropy `Ŝ(G) = -Σ_{λ∈Sp(G)} λ ln λ`, at the default
/// precision. Zero for the empty graph.
pub fn unnormalized_entropy(g: &Graph) -> EntropyFingerprint {
    unnormalized_entropy_with_precision(g, DEFAULT_PRECISION)
}

pub fn unnormalized_entropy_with_precision(g: &Graph, digits: u32) -> EntropyFingerprint {
    if g.m() == 0 {
        return EntropyFingerprint {
            kind: FingerprintKind::Exact,
            exact: Some(BTreeMap::new()),
            numeric: Dec::zero(digits),
            precision_digits: digits,
        };
    }
    let spec = spectrum(&charpoly(&laplacian(g)));
    fingerprint_from_spectrum(&spec, 2 * g.m() as u64, false, digits)
}

/// Hashable bucket key: the canonical exact serialization when available,
/// otherwise the decimal value truncated to `quantization` digits.
pub fn entropy_key(f: &EntropyFingerprint, quantization: u32) -> String {
    assert!(quantization <= f.precision_digits);
    match f.exact_key() {
        Some(k) => k,
        None => f.numeric.to_string_digits(quantization),
    }
}

/// Compares two fingerprints: exact map equality when both are Exact,
/// otherwise numeric comparison at `digits` (different when the values differ
/// by more than `10^(-digits+2)`).
pub fn compare_fingerprints(
    a: &EntropyFingerprint,
    b: &EntropyFingerprint,
    digits: u32,
) -> EntropyMatch {
    if let (Some(_), Some(_)) = (&a.exact, &b.exact) {
        return if a.equals_exact(b) {
            EntropyMatch::EqualExact
        } else {
            EntropyMatch::Different
        };
    }
    let prec = a.precision_digits.min(b.precision_digits);
    assert!(digits <= prec, "comparison digits exceed stored precision");
    let av = a.numeric.truncate(prec);
    let bv = b.numeric.truncate(prec);
    let matching = av.matching_digits(&bv);
    if matching + 2 >= digits {
        EntropyMatch::EqualToDigits(matching.min(digits))
    } else {
        EntropyMatch::Different
    }
}

/// Whether two graphs are coentropic, compared at `digits` decimal digits
/// (`digits >= 10`). Exactly cospectral graphs are `EqualExact` outright
/// (identical spectra have identical entropy, no numerics needed); otherwise
/// exact fingerprint maps decide when both spectra are integral, and the
/// decimal values are compared at `digits` when not.
pub fn compare_entropy(g: &Graph, h: &Graph, digits: u32) -> Result<EntropyMatch> {
    assert!(digits >= 10);
    if g.m() >= 1 && charpoly(&laplacian(g)) == charpoly(&laplacian(h)) {
        return Ok(EntropyMatch::EqualExact);
    }
    let fa = von_neumann_entropy_with_precision(g, digits + GUARD)?;
    let fb = von_neumann_entropy_with_precision(h, digits + GUARD)?;
    Ok(compare_fingerprints(&fa, &fb, digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, pairs).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    // independently computed: 2 ln 2 - (3/4) ln 3
    const S_P3: &str = "0.562335144618808350288030315224458857665382350353448419440339268";

    #[test]
    fn entropy_of_k2_is_zero() {
        // spectrum {0,2}, 2m = 2, ρ eigenvalues {0,1}: a pure state
        let f = von_neumann_entropy(&g(2, &[(1, 2)])).unwrap();
        assert_eq!(f.kind, FingerprintKind::Exact);
        assert!(f.exact.as_ref().unwrap().is_empty());
        assert!(f.numeric().is_zero());
    }

    #[test]
    fn entropy_of_p3_closed_form() {
        // ρ eigenvalues {0, 1/4, 3/4}: S = 2 ln 2 - (3/4) ln 3
        let f = von_neumann_entropy(&g(3, &[(1, 2), (1, 3)])).unwrap();
        let map = f.exact.as_ref().unwrap();
        assert_eq!(map.get(&2), Some(&ratio(2, 1)));
        assert_eq!(map.get(&3), Some(&ratio(-3, 4)));
        assert_eq!(map.len(), 2);
        assert!((f.numeric_f64() - 0.5623351446188083).abs() < 1e-14);
        assert!(f.canonical_text().starts_with("exact: 2:2; 3:-3/4 | numeric(60): 0.5623351446"));
        // agree with the reference value to nearly full precision
        let want: String = S_P3.chars().take(52).collect();
        assert!(f.numeric().to_string_digits(50).starts_with(&want));
    }

    #[test]
    fn entropy_of_complete_graphs_is_log_n_minus_one() {
        // K_n: ρ eigenvalues {0, 1/(n-1) x (n-1)}: S = ln(n-1)
        for n in [3usize, 4, 5, 6] {
            let mut pairs = Vec::new();
            for u in 1..=n {
                for v in (u + 1)..=n {
                    pairs.push((u, v));
                }
            }
            let f = von_neumann_entropy(&g(n, &pairs)).unwrap();
            let expect = ((n - 1) as f64).ln();
            assert!((f.numeric_f64() - expect).abs() < 1e-12, "K{n}");
            // the exact map must be exactly the factorization of n-1
            let map = f.exact.as_ref().unwrap();
            let rebuilt: f64 = map
                .iter()
                .map(|(&p, c)| c.to_f64().unwrap() * (p as f64).ln())
                .sum();
            assert!((rebuilt - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn unnormalized_entropy_examples() {
        // K2: single λ = 2, Ŝ = -2 ln 2
        let f = unnormalized_entropy(&g(2, &[(1, 2)]));
        assert_eq!(f.exact.as_ref().unwrap().get(&2), Some(&ratio(-2, 1)));
        // empty graph: zero
        let f0 = unnormalized_entropy(&g(3, &[]));
        assert!(f0.numeric().is_zero());
        assert!(f0.exact.as_ref().unwrap().is_empty());
    }

    #[test]
    fn normalization_identity() {
        // S = ln(2m) + Ŝ/(2m) as exact rational identity on the maps
        let gr = g(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]); // C4: spectrum {0,2,2,4}
        let s = von_neumann_entropy(&gr).unwrap();
        let s_hat = unnormalized_entropy(&gr);
        let two_m = 2 * gr.m() as u64;
        let mut lhs = s.exact.clone().unwrap();
        // subtract v_p(2m) and multiply by 2m: should equal the Ŝ map
        for (p, v) in prime_factors(two_m) {
            *lhs.entry(p).or_insert_with(BigRational::zero) -=
                BigRational::from(BigInt::from(v));
        }
        for c in lhs.values_mut() {
            *c *= BigRational::from(BigInt::from(two_m));
        }
        lhs.retain(|_, c| !c.is_zero());
        assert_eq!(lhs, s_hat.exact.unwrap());
    }

    #[test]
    fn numeric_kind_for_irrational_spectrum() {
        let p4 = g(4, &[(1, 2), (2, 3), (3, 4)]);
        let f = von_neumann_entropy(&p4).unwrap();
        assert_eq!(f.kind, FingerprintKind::Numeric);
        assert!(f.exact.is_none());
        // sanity against direct f64 computation
        let two_m = 6.0;
        let eigs = [0.0, 2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        let expect: f64 = eigs
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| {
                let p = l / two_m;
                -p * p.ln()
            })
            .sum();
        assert!((f.numeric_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn entropy_keys_and_comparison() {
        let a = g(3, &[(1, 2), (1, 3)]);
        let f = von_neumann_entropy(&a).unwrap();
        assert_eq!(entropy_key(&f, 50), "2:2;3:-3/4");
        assert_eq!(compare_entropy(&a, &a, 50).unwrap(), EntropyMatch::EqualExact);
        // K2 vs K3: 0 vs ln 2
        let k2 = g(2, &[(1, 2)]);
        let k3 = g(3, &[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(compare_entropy(&k2, &k3, 50).unwrap(), EntropyMatch::Different);
        // isomorphic relabelings are EqualExact
        let b = a.permuted(&[2, 0, 1]);
        assert_eq!(compare_entropy(&a, &b, 50).unwrap(), EntropyMatch::EqualExact);
    }

    #[test]
    fn exact_map_example_key_format() {
        let mut map = BTreeMap::new();
        map.insert(2u64, ratio(3, 5));
        map.insert(3u64, ratio(-1, 5));
        map.insert(5u64, ratio(1, 1));
        let mut ln = LnEval::new(40);
        let numeric = eval_exact_map(&map, &mut ln).truncate(30);
        let f = EntropyFingerprint {
            kind: FingerprintKind::Exact,
            exact: Some(map),
            numeric,
            precision_digits: 30,
        };
        assert_eq!(entropy_key(&f, 20), "2:3/5;3:-1/5;5:1");
        // ln 5 + (3/5) ln 2 - (1/5) ln 3 = 1.80560376303644562197...
        assert!(f
            .numeric()
            .to_string_digits(20)
            .starts_with("1.8056037630364456219"));
    }

    #[test]
    fn numeric_entropy_full_precision_p4() {
        // P4 entropy at 60 digits: cross-checked via the identity
        // S = ln 6 + Ŝ/6 evaluated at higher precision
        let p4 = g(4, &[(1, 2), (2, 3), (3, 4)]);
        let f60 = von_neumann_entropy(&p4).unwrap();
        let f80 = von_neumann_entropy_with_precision(&p4, 80).unwrap();
        let a = f60.numeric().clone();
        let b = f80.numeric().truncate(60);
        assert!(a.matching_digits(&b) >= 57);
    }
}
