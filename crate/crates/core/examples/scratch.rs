use coentropy::search::{find_coentropic_pairs, GraphClass, SearchConfig};
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let forms = coentropy::canon::enumerate_forms(10, false).unwrap();
    eprintln!("n=10 enumeration alone: {} classes in {:.1}s", forms.len(), t.elapsed().as_secs_f64());
    drop(forms);
    for class in [GraphClass::Connected, GraphClass::All] {
        let t = Instant::now();
        let mut cfg = SearchConfig::new(10);
        cfg.graph_class = class;
        cfg.verbose = true;
        let r = find_coentropic_pairs(&cfg).unwrap();
        println!(
            "n=10 class={class}: scanned={} cospectral_classes={} pairs={} (eq_m={}, uneq_m={}) near={} in {:.1}s",
            r.graphs_scanned, r.cospectral_classes_found, r.coentropic_pairs.len(),
            r.pairs_with_equal_edges, r.pairs_with_unequal_edges, r.near_misses.len(),
            t.elapsed().as_secs_f64()
        );
        for p in &r.coentropic_pairs {
            println!("  {} {} m={:?} {}", p.g6_a, p.g6_b, p.m, p.match_kind);
        }
    }
}
