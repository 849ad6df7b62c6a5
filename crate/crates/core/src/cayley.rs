//! Signed Cayley graphs on `Z_p x Z_n` with connection set `units(p) x units(n)`.
//!
//! Vertex `(u, v)` has index `u * n + v`. An edge is positive when at least
//! one endpoint, read as a group element, lies in the connection set, and
//! negative otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, units, FactoredInteger};
use crate::error::{Error, Result};
use crate::sigraph::{Sign, Sigraph};

/// Validated parameters of `Z_p x Z_n` with `p` prime and `p | n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub p: u64,
    pub n: u64,
    pub n_factors: FactoredInteger,
}

pub fn validate_spec(p: u64, n: u64) -> Result<GroupSpec> {
    GroupSpec::new(p, n)
}

impl GroupSpec {
    pub fn new(p: u64, n: u64) -> Result<GroupSpec> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if n == 0 || !n.is_multiple_of(p) {
            return Err(Error::DivisibilityViolation { p, n });
        }
        Ok(GroupSpec {
            p,
            n,
            n_factors: factorize(n)?,
        })
    }

    pub fn order(&self) -> u64 {
        self.p * self.n
    }

    /// `true` when 2 is among the prime factors of `n`.
    pub fn has_factor_two(&self) -> bool {
        self.n_factors.has_prime(2)
    }

    pub fn vertex_index(&self, w: Vertex) -> usize {
        (w.u * self.n + w.v) as usize
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        let i = index as u64;
        Vertex {
            u: i / self.n,
            v: i % self.n,
        }
    }

    pub fn add(&self, x: Vertex, y: Vertex) -> Vertex {
        Vertex {
            u: (x.u + y.u) % self.p,
            v: (x.v + y.v) % self.n,
        }
    }

    pub fn neg(&self, x: Vertex) -> Vertex {
        Vertex {
            u: (self.p - x.u) % self.p,
            v: (self.n - x.v) % self.n,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.order() as usize).map(|i| self.vertex(i))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{} x Z_{}", self.p, self.n)
    }
}

/// A group element `(u, v)` of `Z_p x Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub u: u64,
    pub v: u64,
}

impl Vertex {
    pub const fn new(u: u64, v: u64) -> Vertex {
        Vertex { u, v }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    pub members: Vec<Vertex>,
    membership: Vec<bool>,
}

impl ConnectionSet {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Membership by vertex index.
    pub fn contains_index(&self, index: usize) -> bool {
        self.membership[index]
    }

    pub fn contains(&self, spec: &GroupSpec, w: Vertex) -> bool {
        w.u < spec.p && w.v < spec.n && self.membership[spec.vertex_index(w)]
    }
}

pub fn connection_set(spec: &GroupSpec) -> ConnectionSet {
    let first = units(spec.p).expect("p is prime, hence at least 2");
    let second = units(spec.n).expect("n is a multiple of a prime");
    let mut membership = vec![false; spec.order() as usize];
    let mut members = Vec::with_capacity(first.len() * second.len());
    for &u in &first.members {
        for &v in &second.members {
            let w = Vertex { u, v };
            membership[spec.vertex_index(w)] = true;
            members.push(w);
        }
    }
    ConnectionSet {
        members,
        membership,
    }
}

pub fn build_sigraph(spec: &GroupSpec) -> Sigraph {
    let phi = connection_set(spec);
    let order = spec.order() as usize;
    let mut edges = Vec::with_capacity(order * phi.size() / 2);
    for x in spec.vertices() {
        let i = spec.vertex_index(x);
        for &s in &phi.members {
            let j = spec.vertex_index(spec.add(x, s));
            assert_ne!(i, j, "connection set contains the identity");
            // Each undirected edge is met once from each endpoint since -s is also in the set.
            if i < j {
                let sign = Sign::from_positive(phi.contains_index(i) || phi.contains_index(j));
                edges.push((i, j, sign));
            }
        }
    }
    let labels = spec.vertices().map(|w| w.to_string()).collect();
    Sigraph::new(order, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("Cayley graph of a symmetric set is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert_eq!(validate_spec(2, 6).unwrap().order(), 12);
        assert_eq!(validate_spec(3, 3).unwrap().order(), 9);
        assert_eq!(validate_spec(4, 8), Err(Error::InvalidPrime(4)));
        assert_eq!(validate_spec(1, 8), Err(Error::InvalidPrime(1)));
        assert_eq!(
            validate_spec(3, 8),
            Err(Error::DivisibilityViolation { p: 3, n: 8 })
        );
        assert!(validate_spec(3, 0).is_err());
    }

    #[test]
    fn connection_set_examples() {
        let spec = validate_spec(2, 6).unwrap();
        assert_eq!(
            connection_set(&spec).members,
            vec![Vertex::new(1, 1), Vertex::new(1, 5)]
        );
        let spec = validate_spec(3, 3).unwrap();
        assert_eq!(
            connection_set(&spec).members,
            vec![
                Vertex::new(1, 1),
                Vertex::new(1, 2),
                Vertex::new(2, 1),
                Vertex::new(2, 2)
            ]
        );
        assert_eq!(connection_set(&validate_spec(3, 15).unwrap()).size(), 16);
    }

    #[test]
    fn connection_set_is_symmetric_without_identity() {
        for (p, n) in [(2, 12), (3, 15), (5, 20), (7, 14)] {
            let spec = validate_spec(p, n).unwrap();
            let phi = connection_set(&spec);
            assert!(!phi.contains(&spec, Vertex::new(0, 0)));
            for &s in &phi.members {
                assert!(phi.contains(&spec, spec.neg(s)));
            }
        }
    }

    #[test]
    fn smallest_instance_is_two_signed_edges() {
        let g = build_sigraph(&validate_spec(2, 2).unwrap());
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 2);
        // (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3
        assert_eq!(g.edge_between(0, 3).unwrap().sign, Sign::Positive);
        assert_eq!(g.edge_between(1, 2).unwrap().sign, Sign::Negative);
    }

    #[test]
    fn figure_instances_have_expected_sizes() {
        let g = build_sigraph(&validate_spec(2, 6).unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 12));
        assert_eq!(g.edge_counts().positive, 4);

        let g = build_sigraph(&validate_spec(3, 3).unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 18));
        assert_eq!(g.edge_counts().negative, 4);
        assert_eq!(g.label(1), "(0,1)");
    }

    #[test]
    fn vertex_index_round_trip() {
        let spec = validate_spec(5, 15).unwrap();
        for i in 0..spec.order() as usize {
            assert_eq!(spec.vertex_index(spec.vertex(i)), i);
        }
    }
}
