use coentropy::canon::{canonical_form, enumerate_forms};
use std::time::Instant;

fn main() {
    // parents: all 9-vertex classes; candidates: children with every subset
    let t = Instant::now();
    let parents = enumerate_forms(9, false).unwrap();
    println!("9-vertex enumeration: {:?} ({} classes)", t.elapsed(), parents.len());

    // sample parents across the list, all 512 subsets each
    let t = Instant::now();
    let mut count = 0u64;
    let mut acc = 0u128;
    for (i, p) in parents.iter().enumerate() {
        if i % 200 != 0 {
            continue;
        }
        let g = p.to_graph();
        let mut edges0: Vec<(usize, usize)> = g.edges().to_vec();
        for subset in 0u32..512 {
            let mut edges = edges0.clone();
            for u in 0..9 {
                if subset >> u & 1 == 1 {
                    edges.push((u, 9));
                }
            }
            let child = coentropy::graph::Graph::from_edge_list(
                10,
                &edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect::<Vec<_>>(),
            )
            .unwrap();
            acc ^= canonical_form(&child).unwrap().bits();
            count += 1;
        }
        edges0.clear();
    }
    let el = t.elapsed();
    println!(
        "canonicalized {} candidates in {:?} ({:.2} us each); checksum {}",
        count,
        el,
        el.as_secs_f64() * 1e6 / count as f64,
        acc
    );
}
