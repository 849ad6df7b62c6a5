#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;

use cayley_sigraph::{Marking, Sign, Sigraph};

/// Builds a sigraph from arbitrary triples, dropping loops and repeated pairs.
pub fn sigraph_from_triples(n: usize, triples: &[(usize, usize, bool)]) -> Sigraph {
    let mut seen = std::collections::HashSet::new();
    let edges: Vec<_> = triples
        .iter()
        .filter(|&&(a, b, _)| a != b && seen.insert((a.min(b), a.max(b))))
        .map(|&(a, b, neg)| (a, b, Sign::from_positive(!neg)))
        .collect();
    Sigraph::new(n, edges).unwrap()
}

pub fn arb_sigraph(max_vertices: usize) -> impl Strategy<Value = Sigraph> {
    (1..=max_vertices).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, any::<bool>()), 0..=2 * n)
            .prop_map(move |t| sigraph_from_triples(n, &t))
    })
}

pub fn random_marking(rng: &mut impl Rng, n: usize) -> Marking {
    Marking(
        (0..n)
            .map(|_| Sign::from_positive(rng.gen_bool(0.5)))
            .collect(),
    )
}

/// Random sigraph on `n` vertices with edge probability `density` and
/// negative-edge probability `negative`.
pub fn random_sigraph(rng: &mut impl Rng, n: usize, density: f64, negative: f64) -> Sigraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((a, b, Sign::from_positive(!rng.gen_bool(negative))));
            }
        }
    }
    Sigraph::new(n, edges).unwrap()
}
