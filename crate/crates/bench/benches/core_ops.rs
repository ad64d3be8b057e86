//! Benchmarks for the operations that dominate large scans: canonical
//! labeling, enumeration, exact characteristic polynomials, floating
//! eigenvalues, entropy fingerprints, and the graph6 codec.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use coentropy::canon::{canonical_form, enumerate_forms};
use coentropy::entropy::von_neumann_entropy_with_precision;
use coentropy::graph::Graph;
use coentropy::spectral::{charpoly, eig_double, laplacian};

/// Deterministic sample of 10-vertex graphs with mixed densities.
fn sample_graphs() -> Vec<Graph> {
    let mut graphs = Vec::new();
    let mut state = 0x243f_6a88_85a3_08d3u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for density in [3u64, 7, 11] {
        for _ in 0..16 {
            let mut edges = Vec::new();
            for u in 0..10usize {
                for v in (u + 1)..10 {
                    if next() % 16 < density {
                        edges.push((u + 1, v + 1));
                    }
                }
            }
            graphs.push(Graph::from_edge_list(10, &edges).unwrap());
        }
    }
    graphs
}

fn bench_canonical_form(c: &mut Criterion) {
    let graphs = sample_graphs();
    c.bench_function("canonical_form/n10", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(canonical_form(g).unwrap());
            }
        })
    });
}

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate/n7", |b| {
        b.iter(|| black_box(enumerate_forms(7, false).unwrap().len()))
    });
}

fn bench_charpoly(c: &mut Criterion) {
    let ms: Vec<_> = sample_graphs().iter().map(laplacian).collect();
    c.bench_function("charpoly/n10", |b| {
        b.iter(|| {
            for m in &ms {
                black_box(charpoly(m));
            }
        })
    });
}

fn bench_eig_double(c: &mut Criterion) {
    let ms: Vec<_> = sample_graphs().iter().map(laplacian).collect();
    c.bench_function("eig_double/n10", |b| {
        b.iter(|| {
            for m in &ms {
                black_box(eig_double(m).unwrap());
            }
        })
    });
}

fn bench_entropy(c: &mut Criterion) {
    let g = Graph::parse_edge_list(
        "{{1, 8}, {1, 9}, {2, 8}, {2, 9}, {3, 8}, {3, 9}, {4, 8}, {4, 9}, \
         {5, 8}, {5, 9}, {6, 8}, {6, 9}, {7, 8}, {7, 9}, {8, 9}}",
        Some(9),
    )
    .unwrap();
    c.bench_function("entropy_fingerprint/n9_60digits", |b| {
        b.iter(|| black_box(von_neumann_entropy_with_precision(&g, 60).unwrap()))
    });
}

fn bench_graph6(c: &mut Criterion) {
    let lines: Vec<String> = sample_graphs()
        .iter()
        .map(|g| g.graph6_encode().unwrap())
        .collect();
    c.bench_function("graph6_roundtrip/n10", |b| {
        b.iter(|| {
            for l in &lines {
                let g = Graph::graph6_decode(l).unwrap();
                black_box(g.graph6_encode().unwrap());
            }
        })
    });
}

criterion_group!(
    benches,
    bench_canonical_form,
    bench_enumerate,
    bench_charpoly,
    bench_eig_double,
    bench_entropy,
    bench_graph6
);
criterion_main!(benches);
