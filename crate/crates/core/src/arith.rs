//! Factorization, unit sets modulo `n`, and runs of consecutive non-units.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredInteger {
    pub value: u64,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    pub fn has_prime(&self, q: u64) -> bool {
        self.factors.iter().any(|&(f, _)| f == q)
    }

    pub fn exponent_of(&self, q: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(f, _)| f == q)
            .map_or(0, |&(_, e)| e)
    }

    /// Euler's totient via `n * prod(1 - 1/q)`.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .fold(self.value, |acc, &(q, _)| acc / q * (q - 1))
    }

    /// `true` iff the value is a power of exactly one prime.
    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// `true` iff the value is a product of distinct primes.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

pub fn is_prime(value: u64) -> bool {
    if value < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= value {
        if value.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization.
pub fn factorize(value: u64) -> Result<FactoredInteger> {
    if value < 2 {
        return Err(Error::InvalidInput(format!(
            "cannot factorize {value}: value must be at least 2"
        )));
    }
    let mut rest = value;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInteger { value, factors })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The residues in `[1, modulus)` coprime to `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSet {
    pub modulus: u64,
    pub members: Vec<u64>,
}

impl UnitSet {
    pub fn contains(&self, residue: u64) -> bool {
        self.members.binary_search(&residue).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn units(modulus: u64) -> Result<UnitSet> {
    if modulus < 2 {
        return Err(Error::InvalidInput(format!(
            "unit set modulus must be at least 2 (got {modulus})"
        )));
    }
    let members = (1..modulus).filter(|&l| gcd(l, modulus) == 1).collect();
    Ok(UnitSet { modulus, members })
}

/// A maximal block of consecutive non-units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub start: u64,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub modulus: u64,
    /// Longest run length, 0 when every residue is a unit.
    pub lambda: u64,
    /// Starts of the runs whose length equals `lambda`.
    pub run_starts: Vec<u64>,
    pub all_runs: Vec<Run>,
}

impl RunReport {
    pub fn maximal_run_count(&self) -> usize {
        self.run_starts.len()
    }
}

/// Scans residues `1..modulus` for maximal runs of integers sharing a prime
/// factor with `modulus`. Residue 0 is not scanned.
pub fn nonunit_runs(modulus: u64) -> Result<RunReport> {
    if modulus < 2 {
        return Err(Error::InvalidInput(format!(
            "run modulus must be at least 2 (got {modulus})"
        )));
    }
    let mut all_runs = Vec::new();
    let mut current: Option<Run> = None;
    for x in 1..modulus {
        if gcd(x, modulus) != 1 {
            match current.as_mut() {
                Some(run) => run.length += 1,
                None => {
                    current = Some(Run {
                        start: x,
                        length: 1,
                    })
                }
            }
        } else if let Some(run) = current.take() {
            all_runs.push(run);
        }
    }
    all_runs.extend(current);

    let lambda = all_runs.iter().map(|r| r.length).max().unwrap_or(0);
    let run_starts = all_runs
        .iter()
        .filter(|r| lambda > 0 && r.length == lambda)
        .map(|r| r.start)
        .collect();
    Ok(RunReport {
        modulus,
        lambda,
        run_starts,
        all_runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(45).unwrap().factors, vec![(3, 2), (5, 1)]);
        assert_eq!(factorize(7).unwrap().factors, vec![(7, 1)]);
        assert!(matches!(factorize(1), Err(Error::InvalidInput(_))));
        assert!(matches!(factorize(0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn factorization_multiplies_back() {
        for v in 2..2000u64 {
            let f = factorize(v).unwrap();
            let prod: u64 = f.factors.iter().map(|&(q, e)| q.pow(e)).product();
            assert_eq!(prod, v);
            assert!(f.primes().all(is_prime));
            assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn units_examples() {
        assert_eq!(units(2).unwrap().members, vec![1]);
        assert_eq!(units(6).unwrap().members, vec![1, 5]);
        assert_eq!(units(9).unwrap().members, vec![1, 2, 4, 5, 7, 8]);
        assert!(units(1).is_err());
    }

    #[test]
    fn unit_count_matches_totient_and_negation_closure() {
        for n in 2..=500u64 {
            let u = units(n).unwrap();
            assert_eq!(u.len() as u64, factorize(n).unwrap().totient(), "n = {n}");
            if n >= 3 {
                assert!(u.members.iter().all(|&l| u.contains(n - l)), "n = {n}");
            }
        }
    }

    #[test]
    fn runs_of_fifteen() {
        let r = nonunit_runs(15).unwrap();
        assert_eq!(r.lambda, 2);
        assert_eq!(r.run_starts, vec![5, 9]);
        let runs: Vec<(u64, u64)> = r.all_runs.iter().map(|r| (r.start, r.length)).collect();
        assert_eq!(runs, vec![(3, 1), (5, 2), (9, 2), (12, 1)]);
    }

    #[test]
    fn runs_of_six_and_prime() {
        let r = nonunit_runs(6).unwrap();
        assert_eq!(r.lambda, 3);
        assert_eq!(r.run_starts, vec![2]);
        assert_eq!(
            r.all_runs,
            vec![Run {
                start: 2,
                length: 3
            }]
        );

        let r = nonunit_runs(7).unwrap();
        assert_eq!(r.lambda, 0);
        assert!(r.all_runs.is_empty());
        assert!(r.run_starts.is_empty());
        assert!(nonunit_runs(1).is_err());
    }

    #[test]
    fn runs_are_maximal_and_nonunit() {
        for n in 2..=300u64 {
            let r = nonunit_runs(n).unwrap();
            for run in &r.all_runs {
                for x in run.start..run.start + run.length {
                    assert_ne!(gcd(x, n), 1);
                }
                if run.start > 1 {
                    assert_eq!(gcd(run.start - 1, n), 1);
                }
                let after = run.start + run.length;
                if after < n {
                    assert_eq!(gcd(after, n), 1);
                }
            }
            let max = r.all_runs.iter().map(|r| r.length).max().unwrap_or(0);
            assert_eq!(r.lambda, max);
        }
    }

    #[test]
    fn two_odd_primes_give_two_longest_runs_of_two() {
        let odd_primes: Vec<u64> = (3..500).filter(|&q| is_prime(q)).collect();
        for (i, &p) in odd_primes.iter().enumerate() {
            for &q in &odd_primes[i + 1..] {
                if p * q > 500 {
                    break;
                }
                let r = nonunit_runs(p * q).unwrap();
                assert_eq!(r.lambda, 2, "pq = {}", p * q);
                assert_eq!(r.maximal_run_count(), 2, "pq = {}", p * q);
            }
        }
    }
}
