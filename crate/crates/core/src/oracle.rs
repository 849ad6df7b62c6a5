//! Exhaustive ground-truth searches.
//!
//! Everything here is exponential in the vertex count and guarded by an
//! explicit size gate: inputs above the gate are refused with
//! [`Error::SizeGate`], never truncated.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::sigraph::{Cycle, Sign, Sigraph};

/// Cycles are reported as [`Cycle`] values in canonical form.
pub type SimpleCycle = Cycle;

pub const DEFAULT_CYCLE_LIMIT: usize = 12;
pub const DEFAULT_MARKING_LIMIT: usize = 16;

fn gate(g: &Sigraph, limit: usize) -> Result<()> {
    if g.vertex_count() > limit {
        Err(Error::SizeGate {
            vertices: g.vertex_count(),
            limit,
        })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every simple cycle of `g` exactly once, in canonical form.
///
/// Each cycle is found from its smallest vertex `r` by a depth-first search
/// over vertices greater than `r`, and is reported only in the direction whose
/// second vertex is smaller than its last. Order: by root, then by DFS in
/// ascending neighbor order.
pub fn visit_simple_cycles<B>(
    g: &Sigraph,
    max_vertices: usize,
    mut visit: impl FnMut(&Cycle) -> ControlFlow<B>,
) -> Result<Option<B>> {
    gate(g, max_vertices)?;
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut path: Vec<usize> = Vec::with_capacity(n);
    let mut signs: Vec<Sign> = Vec::with_capacity(n);
    // Per path vertex: position in its incidence list.
    let mut cursor: Vec<usize> = Vec::with_capacity(n);

    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        cursor.push(0);

        while let Some(&x) = path.last() {
            let depth = path.len() - 1;
            let incs = g.incidences(x);
            if cursor[depth] == incs.len() {
                on_path[x] = false;
                path.pop();
                cursor.pop();
                signs.pop();
                continue;
            }
            let inc = incs[cursor[depth]];
            cursor[depth] += 1;
            let w = inc.neighbor;
            let sign = g.edges()[inc.edge].sign;
            if w == root {
                if path.len() >= 3 && path[1] < x {
                    let mut cycle_signs = signs.clone();
                    cycle_signs.push(sign);
                    let cycle = Cycle {
                        vertices: path.clone(),
                        signs: cycle_signs,
                    };
                    if let ControlFlow::Break(b) = visit(&cycle) {
                        return Ok(Some(b));
                    }
                }
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                signs.push(sign);
                cursor.push(0);
            }
        }
    }
    Ok(None)
}

pub fn enumerate_simple_cycles(g: &Sigraph, max_vertices: usize) -> Result<Vec<SimpleCycle>> {
    let mut out = Vec::new();
    visit_simple_cycles::<()>(g, max_vertices, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// First cycle satisfying `pred`, if any.
pub fn find_cycle(
    g: &Sigraph,
    max_vertices: usize,
    pred: impl Fn(&Cycle) -> bool,
) -> Result<Option<Cycle>> {
    visit_simple_cycles(g, max_vertices, |c| {
        if pred(c) {
            ControlFlow::Break(c.clone())
        } else {
            ControlFlow::Continue(())
        }
    })
}

/// `true` iff every simple cycle has an even number of negative edges.
pub fn balance_by_cycles(g: &Sigraph, max_vertices: usize) -> Result<bool> {
    Ok(find_cycle(g, max_vertices, |c| c.negative_count() % 2 == 1)?.is_none())
}

/// `true` iff no simple cycle has exactly one negative edge.
pub fn clusterability_by_cycles(g: &Sigraph, max_vertices: usize) -> Result<bool> {
    Ok(find_cycle(g, max_vertices, |c| c.negative_count() == 1)?.is_none())
}

/// Tries all `2^|V|` markings for one where every negative edge has both ends
/// marked negative and no positive edge does.
pub fn sign_compat_exhaustive(g: &Sigraph, max_vertices: usize) -> Result<bool> {
    gate(g, max_vertices)?;
    let n = g.vertex_count();
    if n >= usize::BITS as usize {
        return Err(Error::SizeGate {
            vertices: n,
            limit: usize::BITS as usize - 1,
        });
    }
    let found = (0usize..1 << n).any(|mask| {
        let negative = |v: usize| mask >> v & 1 == 1;
        g.edges().iter().all(|e| {
            let both = negative(e.a) && negative(e.b);
            both == e.sign.is_negative()
        })
    });
    Ok(found)
}

/// Lengths of the maximal circular runs of negative edges of a
/// heterogeneous cycle, in order starting after the first positive edge.
pub fn negative_sections(c: &Cycle) -> Result<Vec<usize>> {
    if !c.is_heterogeneous() {
        return Err(Error::NotApplicable(
            "negative sections are only defined for heterogeneous cycles",
        ));
    }
    let k = c.signs.len();
    let first_positive = c.signs.iter().position(|s| s.is_positive()).unwrap();
    let mut sections = Vec::new();
    let mut run = 0;
    for i in 1..=k {
        if c.signs[(first_positive + i) % k].is_negative() {
            run += 1;
        } else if run > 0 {
            sections.push(run);
            run = 0;
        }
    }
    Ok(sections)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use Sign::{Negative as N, Positive as P};

    fn complete(n: usize, sign: Sign) -> Sigraph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, sign)));
        Sigraph::new(n, edges).unwrap()
    }

    fn cycle_graph(signs: &[Sign]) -> Sigraph {
        let k = signs.len();
        Sigraph::new(k, (0..k).map(|i| (i, (i + 1) % k, signs[i]))).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn hexagon_has_one_cycle() {
        let cycles = enumerate_simple_cycles(&cycle_graph(&[P; 6]), 12).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn k4_has_seven_cycles() {
        let cycles = enumerate_simple_cycles(&complete(4, P), 12).unwrap();
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
        assert_eq!(cycles.len(), 7);
    }

    #[test]
    fn tree_has_no_cycles() {
        let tree = Sigraph::new(5, [(0, 1, N), (0, 2, P), (2, 3, N), (2, 4, P)]).unwrap();
        assert!(enumerate_simple_cycles(&tree, 12).unwrap().is_empty());
        assert!(balance_by_cycles(&tree, 12).unwrap());
        assert!(clusterability_by_cycles(&tree, 12).unwrap());
    }

    #[test]
    fn complete_graph_counts_match_closed_form() {
        for n in 3..=7u64 {
            let expected: u64 = (3..=n)
                .map(|k| binom(n, k) * (1..k).product::<u64>() / 2)
                .sum();
            let cycles = enumerate_simple_cycles(&complete(n as usize, P), 12).unwrap();
            assert_eq!(cycles.len() as u64, expected, "K{n}");
            let distinct: HashSet<_> = cycles.iter().collect();
            assert_eq!(distinct.len(), cycles.len());
            assert!(cycles.iter().all(|c| *c == c.canonical()));
        }
    }

    #[test]
    fn size_gate_refuses() {
        let g = cycle_graph(&[P; 13]);
        assert_eq!(
            enumerate_simple_cycles(&g, 12),
            Err(Error::SizeGate {
                vertices: 13,
                limit: 12
            })
        );
        assert!(balance_by_cycles(&g, 12).is_err());
        assert!(sign_compat_exhaustive(&complete(17, P), 16).is_err());
    }

    #[test]
    fn cycle_predicates() {
        let tri = cycle_graph(&[P, P, N]);
        assert!(!balance_by_cycles(&tri, 12).unwrap());
        assert!(!clusterability_by_cycles(&tri, 12).unwrap());
        let hex = cycle_graph(&[N; 6]);
        assert!(clusterability_by_cycles(&hex, 12).unwrap());
        assert!(balance_by_cycles(&hex, 12).unwrap());
    }

    #[test]
    fn exhaustive_compatibility() {
        let s1 = Sigraph::new(4, [(0, 1, N), (1, 2, P), (2, 3, N)]).unwrap();
        assert!(!sign_compat_exhaustive(&s1, 16).unwrap());
        let single = Sigraph::new(2, [(0, 1, N)]).unwrap();
        assert!(sign_compat_exhaustive(&single, 16).unwrap());
        assert!(sign_compat_exhaustive(&complete(5, P), 16).unwrap());
    }

    #[test]
    fn sections() {
        let c = |signs: &[Sign]| Cycle {
            vertices: (0..signs.len()).collect(),
            signs: signs.to_vec(),
        };
        assert_eq!(negative_sections(&c(&[P, P, N, N, P, P])).unwrap(), vec![2]);
        assert_eq!(negative_sections(&c(&[N, P, N, P])).unwrap(), vec![1, 1]);
        // wraps around the closing edge
        assert_eq!(negative_sections(&c(&[N, P, P, N, N])).unwrap(), vec![3]);
        assert!(matches!(
            negative_sections(&c(&[P, P, P])),
            Err(Error::NotApplicable(_))
        ));
        assert!(negative_sections(&c(&[N, N, N])).is_err());
    }
}
