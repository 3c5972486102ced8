//! Exact minimum-basis oracle: iterative deepening over subset size with
//! depth-first search and suffix-coverage pruning. This is the independent
//! oracle that every constructive bound in the crate is checked against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sumset::{is_k_basis, k_sum_membership, ElementSet, SumCertificate};

/// Domain the basis is drawn from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "N", alias = "NaturalNumbers")]
    NaturalNumbers,
    #[serde(rename = "Z", alias = "Integers")]
    Integers,
    #[serde(rename = "Q", alias = "ScaledRationals")]
    ScaledRationals,
}

/// The triple whose minimum k-basis size is sought.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BasisInstance {
    #[serde(rename = "A")]
    pub a: ElementSet,
    pub k: u32,
    pub domain: Domain,
}

impl BasisInstance {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInstance("k must be >= 1".into()));
        }
        let ok = match self.domain {
            Domain::NaturalNumbers => self
                .a
                .iter()
                .all(|x| x.is_integer() && !x.is_negative()),
            Domain::Integers => self.a.iter().all(Rational::is_integer),
            Domain::ScaledRationals => true,
        };
        if !ok {
            return Err(Error::InvalidInstance(format!(
                "elements of A do not lie in the domain {:?}",
                self.domain
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Exactness {
    ProvenSufficient,
    HeuristicWindow,
}

/// Finite candidate pool the solver searches over.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundSet {
    pub elements: ElementSet,
    pub exactness: Exactness,
}

/// Ground set guaranteed (over ℕ) or heuristically chosen (over ℤ) to
/// contain an optimal basis. Over ℕ every part of a sum of non-negative
/// elements equaling a ∈ A is at most max(A), so {0, …, max(A)} suffices.
pub fn default_ground_set(instance: &BasisInstance, window_multiplier: u32) -> Result<GroundSet> {
    instance.validate()?;
    if instance.a.is_empty() {
        return Err(Error::InvalidInstance("A is empty".into()));
    }
    match instance.domain {
        Domain::NaturalNumbers => {
            let max = instance.a.max().expect("nonempty").to_integer().expect("integral");
            Ok(GroundSet {
                elements: int_range(&BigInt::from(0), &max),
                exactness: Exactness::ProvenSufficient,
            })
        }
        Domain::Integers | Domain::ScaledRationals => {
            let max_abs = instance
                .a
                .iter()
                .map(|x| x.abs().to_integer().expect("integral"))
                .max()
                .expect("nonempty");
            let w = max_abs * window_multiplier;
            Ok(GroundSet {
                elements: int_range(&-&w, &w),
                exactness: Exactness::HeuristicWindow,
            })
        }
    }
}

fn int_range(lo: &BigInt, hi: &BigInt) -> ElementSet {
    let mut elems = Vec::new();
    let mut v = lo.clone();
    while &v <= hi {
        elems.push(Rational::from_int(v.clone()));
        v += BigInt::one();
    }
    ElementSet::new(elems)
}

/// Outcome of an exact search: the minimum size, the lexicographically
/// smallest witness of that size, and one certificate per covered element.
#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    #[serde(rename = "size")]
    pub optimal_size: usize,
    #[serde(rename = "basis")]
    pub witness: ElementSet,
    pub exact: bool,
    pub certificates: BTreeMap<String, SumCertificate>,
    #[serde(rename = "nodes")]
    pub nodes_explored: u64,
}

/// Minimum |B| with B ⊆ ground and A ⊆ kB, by iterative deepening on |B|.
/// The witness returned is the lexicographically smallest optimal one.
pub fn min_basis(
    instance: &BasisInstance,
    ground: &GroundSet,
    node_budget: Option<u64>,
) -> Result<SolveResult> {
    instance.validate()?;
    let a = &instance.a;
    let k = instance.k;
    let g = ground.elements.as_slice();

    if a.is_empty() {
        return Ok(SolveResult {
            optimal_size: 0,
            witness: ElementSet::empty(),
            exact: ground.exactness == Exactness::ProvenSufficient,
            certificates: BTreeMap::new(),
            nodes_explored: 0,
        });
    }

    // If even the whole ground set fails to cover A there is nothing to find.
    let (ground_covers, _) = is_k_basis(&ground.elements, a, k)?;
    if !ground_covers {
        return Err(Error::InvalidInstance(
            "ground set does not cover A; no basis exists within it".into(),
        ));
    }
    let upper_bound = g.len();

    let mut nodes: u64 = 0;
    for size in 1..=g.len() {
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        if let Some(witness) =
            dfs(g, a, k, size, 0, &mut chosen, &mut nodes, node_budget, upper_bound)?
        {
            let witness = ElementSet::new(witness.iter().map(|&i| g[i].clone()));
            let (ok, map) = is_k_basis(&witness, a, k)?;
            debug_assert!(ok);
            let certificates = map
                .into_iter()
                .map(|(t, c)| (t.to_string(), c.expect("covered")))
                .collect();
            return Ok(SolveResult {
                optimal_size: size,
                witness,
                exact: ground.exactness == Exactness::ProvenSufficient,
                certificates,
                nodes_explored: nodes,
            });
        }
    }
    unreachable!("full ground set covers A, so some size must succeed");
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &[Rational],
    a: &ElementSet,
    k: u32,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: Option<u64>,
    upper_bound: usize,
) -> Result<Option<Vec<usize>>> {
    *nodes += 1;
    if let Some(b) = budget {
        if *nodes > b {
            return Err(Error::ResourceLimit {
                budget: b,
                nodes: *nodes,
                best_upper_bound: Some(upper_bound),
            });
        }
    }
    if chosen.len() == size {
        let set = ElementSet::new(chosen.iter().map(|&i| g[i].clone()));
        let (ok, _) = is_k_basis(&set, a, k)?;
        return Ok(ok.then(|| chosen.clone()));
    }
    // Prune: an uncovered a whose every certificate needs an element outside
    // chosen ∪ g[start..] kills the whole branch.
    let pool = ElementSet::new(
        chosen
            .iter()
            .map(|&i| g[i].clone())
            .chain(g[start..].iter().cloned()),
    );
    for target in a.iter() {
        if k_sum_membership(target, &pool, k)?.is_none() {
            return Ok(None);
        }
    }
    let remaining = size - chosen.len();
    // elements are taken in increasing index order, so the first hit is the
    // lexicographically smallest witness of this size
    for i in start..=g.len().saturating_sub(remaining) {
        chosen.push(i);
        if let Some(found) = dfs(g, a, k, size, i + 1, chosen, nodes, budget, upper_bound)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

/// Convenience wrapper: build the default ground set, then solve. For
/// `ScaledRationals` the instance is scaled by the lcm of denominators to an
/// integer window first; the result is rescaled and tagged inexact.
pub fn ell_over_domain(
    a: &ElementSet,
    k: u32,
    domain: Domain,
    window_multiplier: u32,
    node_budget: Option<u64>,
) -> Result<SolveResult> {
    match domain {
        Domain::NaturalNumbers | Domain::Integers => {
            let instance = BasisInstance {
                a: a.clone(),
                k,
                domain,
            };
            let ground = default_ground_set(&instance, window_multiplier)?;
            min_basis(&instance, &ground, node_budget)
        }
        Domain::ScaledRationals => {
            let lcm = a
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denominator()));
            let scale = Rational::from_int(lcm);
            let scaled = a.scale(&scale);
            let instance = BasisInstance {
                a: scaled,
                k,
                domain: Domain::ScaledRationals,
            };
            let ground = default_ground_set(&instance, window_multiplier)?;
            let result = min_basis(&instance, &ground, node_budget)?;
            let inv = scale.recip().expect("lcm > 0");
            let witness = result.witness.scale(&inv);
            let (ok, map) = is_k_basis(&witness, a, k)?;
            debug_assert!(ok);
            Ok(SolveResult {
                optimal_size: result.optimal_size,
                witness,
                exact: false,
                certificates: map
                    .into_iter()
                    .map(|(t, c)| (t.to_string(), c.expect("covered")))
                    .collect(),
                nodes_explored: result.nodes_explored,
            })
        }
    }
}

/// Naive reference enumeration used by tests: try all subsets of the ground
/// set in increasing size (and lexicographic order within a size).
pub fn naive_min_basis(
    a: &ElementSet,
    ground: &ElementSet,
    k: u32,
) -> Result<Option<(usize, ElementSet)>> {
    let g = ground.as_slice();
    if a.is_empty() {
        return Ok(Some((0, ElementSet::empty())));
    }
    for size in 1..=g.len() {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            let set = ElementSet::new(indices.iter().map(|&i| g[i].clone()));
            if is_k_basis(&set, a, k)?.0 {
                return Ok(Some((size, set)));
            }
            if !next_combination(&mut indices, g.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `idx` to the next size-|idx| combination of {0, …, n−1} in
/// lexicographic order; false when exhausted.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat_instance(a: &[i64], k: u32) -> BasisInstance {
        BasisInstance {
            a: ElementSet::from_ints(a.iter().copied()),
            k,
            domain: Domain::NaturalNumbers,
        }
    }

    #[test]
    fn default_ground_examples() {
        let g = default_ground_set(&nat_instance(&[0, 8, 12, 20, 32], 2), 2).unwrap();
        assert_eq!(g.elements, ElementSet::from_ints(0..=32));
        assert_eq!(g.exactness, Exactness::ProvenSufficient);

        let g = default_ground_set(&nat_instance(&[5], 3), 2).unwrap();
        assert_eq!(g.elements, ElementSet::from_ints(0..=5));

        let inst = BasisInstance {
            a: ElementSet::from_ints([4]),
            k: 2,
            domain: Domain::Integers,
        };
        let g = default_ground_set(&inst, 2).unwrap();
        assert_eq!(g.elements, ElementSet::from_ints(-8..=8));
        assert_eq!(g.exactness, Exactness::HeuristicWindow);

        assert!(default_ground_set(&nat_instance(&[], 2), 2).is_err());
    }

    #[test]
    fn min_basis_small() {
        // exhaustive over all 7 nonempty subsets of {0,1,2}: size 2 optimum
        let inst = nat_instance(&[0, 1, 2], 2);
        let ground = default_ground_set(&inst, 2).unwrap();
        let r = min_basis(&inst, &ground, None).unwrap();
        assert_eq!(r.optimal_size, 2);
        assert_eq!(r.witness, ElementSet::from_ints([0, 1]));
        assert!(r.exact);

        let inst = nat_instance(&[0], 2);
        let ground = default_ground_set(&inst, 2).unwrap();
        let r = min_basis(&inst, &ground, None).unwrap();
        assert_eq!(r.optimal_size, 1);
        assert_eq!(r.witness, ElementSet::from_ints([0]));
    }

    #[test]
    fn ell_over_integers() {
        // size 1 requires 2b = 1, impossible over Z
        let r = ell_over_domain(&ElementSet::from_ints([1]), 2, Domain::Integers, 2, None).unwrap();
        assert_eq!(r.optimal_size, 2);
        assert!(!r.exact);

        // 1 + 1 = 2
        let r = ell_over_domain(&ElementSet::from_ints([2]), 2, Domain::Integers, 2, None).unwrap();
        assert_eq!(r.optimal_size, 1);
        assert_eq!(r.witness, ElementSet::from_ints([1]));
    }

    #[test]
    fn budget_exhaustion_reports_upper_bound() {
        let inst = nat_instance(&[0, 8, 12, 20, 32], 2);
        let ground = default_ground_set(&inst, 2).unwrap();
        let err = min_basis(&inst, &ground, Some(5)).unwrap_err();
        assert!(matches!(
            err,
            Error::ResourceLimit {
                best_upper_bound: Some(33),
                ..
            }
        ));
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let inst = nat_instance(&[0, 2, 3, 5, 6], 2);
        let ground = default_ground_set(&inst, 2).unwrap();
        let r = min_basis(&inst, &ground, None).unwrap();
        let (size, _) = naive_min_basis(&inst.a, &ground.elements, 2)
            .unwrap()
            .unwrap();
        assert_eq!(r.optimal_size, size);
    }

    #[test]
    fn instance_json_round_trip() {
        let json = r#"{"k":2,"domain":"N","A":["0","8","12","20","32"]}"#;
        let inst: BasisInstance = serde_json::from_str(json).unwrap();
        assert_eq!(inst.k, 2);
        assert_eq!(inst.domain, Domain::NaturalNumbers);
        assert_eq!(inst.a, ElementSet::from_ints([0, 8, 12, 20, 32]));
    }
}
