//! Batch verification suites for the three structural propositions, run over
//! every isomorphism class up to a vertex bound. Used by the `check-props`
//! CLI command; the acceptance tests exercise the same identities with their
//! own independent loops.

use crate::canon::enumerate_graphs;
use crate::error::Result;
use crate::graph::Graph;
use crate::quantum::{
    incidence_vector, lu_equivalent, partial_trace_e, partial_trace_v, schmidt_auto,
    schmidt_rank,
};
use crate::spectral::{charpoly, edge_laplacian_arcs, laplacian, spectrum, Eigenvalue};

#[derive(Clone, Debug)]
pub struct PropCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Runs the partial-trace, Schmidt-rank, and LU-equivalence suites over all
/// isomorphism classes with at most `max_n` vertices.
pub fn run_proposition_suites(max_n: usize) -> Result<Vec<PropCheck>> {
    let mut out = Vec::new();
    out.push(partial_trace_suite(max_n)?);
    out.push(schmidt_suite(max_n)?);
    out.push(lu_suite(max_n.min(6))?);
    Ok(out)
}

/// `tr_E(ψψ†) = L` and `tr_V(ψψ†) = ½M̄ᵀM̄`, exact, for every class without
/// isolated vertices.
fn partial_trace_suite(max_n: usize) -> Result<PropCheck> {
    let mut checked = 0usize;
    for n in 1..=max_n {
        for g in enumerate_graphs(n, false)? {
            if g.m() == 0 || g.has_isolated_vertex() {
                continue;
            }
            let psi = incidence_vector(&g)?;
            let l = laplacian(&g);
            if !partial_trace_e(&psi).equals_int_scaled(&l, 1) {
                return Ok(fail("partial-trace identities", &g, "tr_E(psi psi') != L"));
            }
            let arcs = edge_laplacian_arcs(&g)?;
            if !partial_trace_v(&psi).equals_int_scaled(&arcs.mat, arcs.denom) {
                return Ok(fail(
                    "partial-trace identities",
                    &g,
                    "tr_V(psi psi') != (1/2) M'M",
                ));
            }
            checked += 1;
        }
    }
    Ok(pass(
        "partial-trace identities",
        format!("{checked} graphs, exact equality"),
    ))
}

/// Schmidt rank = n - w, exact, and floating Schmidt coefficients squared
/// match the exact nonzero Laplacian spectrum to 1e-8.
fn schmidt_suite(max_n: usize) -> Result<PropCheck> {
    let mut checked = 0usize;
    for n in 1..=max_n {
        for g in enumerate_graphs(n, false)? {
            if g.m() == 0 || g.has_isolated_vertex() {
                continue;
            }
            let w = g.components().w;
            if schmidt_rank(&g)? != n - w {
                return Ok(fail("schmidt rank", &g, "rank != n - w"));
            }
            let sd = schmidt_auto(&incidence_vector(&g)?)?;
            if sd.rank != n - w {
                return Ok(fail("schmidt rank", &g, "floating rank != n - w"));
            }
            let spec = spectrum(&charpoly(&laplacian(&g)));
            let mut nonzero: Vec<f64> = spec
                .eigenvalues
                .iter()
                .filter(|e| !matches!(e, Eigenvalue::Exact(k) if *k == 0.into()))
                .map(|e| e.approx_f64())
                .collect();
            nonzero.sort_by(|a, b| b.partial_cmp(a).unwrap());
            if nonzero.len() != sd.coefficients.len() {
                return Ok(fail("schmidt rank", &g, "coefficient count mismatch"));
            }
            for (c, l) in sd.coefficients.iter().zip(nonzero.iter()) {
                if (c * c - l).abs() > 1e-8 {
                    return Ok(fail("schmidt rank", &g, "coefficients^2 != spectrum"));
                }
            }
            checked += 1;
        }
    }
    Ok(pass("schmidt rank", format!("{checked} graphs")))
}

/// LU-equivalence coincides with exact cospectrality on every same-(n, m)
/// pair, exhaustively.
fn lu_suite(max_n: usize) -> Result<PropCheck> {
    let mut pairs = 0usize;
    for n in 1..=max_n {
        let graphs: Vec<Graph> = enumerate_graphs(n, false)?.collect();
        for i in 0..graphs.len() {
            for j in (i + 1)..graphs.len() {
                let (a, b) = (&graphs[i], &graphs[j]);
                if a.m() != b.m() {
                    continue;
                }
                let lu = lu_equivalent(a, b)?;
                let cospectral = charpoly(&laplacian(a)) == charpoly(&laplacian(b));
                if lu != cospectral {
                    return Ok(fail("lu-equivalence", a, "lu != cospectrality"));
                }
                pairs += 1;
            }
        }
        // relabelings are always LU-equivalent
        for g in &graphs {
            let perm: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
            if !lu_equivalent(g, &g.permuted(&perm))? {
                return Ok(fail("lu-equivalence", g, "relabeling not LU-equivalent"));
            }
        }
    }
    Ok(pass("lu-equivalence", format!("{pairs} same-(n,m) pairs")))
}

fn pass(name: &str, detail: String) -> PropCheck {
    PropCheck {
        name: name.into(),
        passed: true,
        detail,
    }
}

fn fail(name: &str, g: &Graph, what: &str) -> PropCheck {
    PropCheck {
        name: name.into(),
        passed: false,
        detail: format!("{what} on {}", g.edge_list_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_up_to_five_vertices() {
        let checks = run_proposition_suites(5).unwrap();
        assert_eq!(checks.len(), 3);
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
