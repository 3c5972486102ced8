//! The vector-model side: covering-condition verifier over ℚ^n, coordinate
//! subspace extraction, a fixed counterexample regression for the
//! integer-solvability gap, and a grid probe for the 2n covering conjecture.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

pub type RationalVector = Vec<Rational>;

/// k sets B_0, …, B_{k−1} of rational n-vectors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VectorFamily {
    pub n: usize,
    pub k: usize,
    pub parts: Vec<Vec<RationalVector>>,
}

impl VectorFamily {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidInput("k must be >= 2".into()));
        }
        if self.parts.len() != self.k {
            return Err(Error::InvalidInput(format!(
                "expected {} parts, got {}",
                self.k,
                self.parts.len()
            )));
        }
        for part in &self.parts {
            if part.iter().any(|v| v.len() != self.n) {
                return Err(Error::InvalidInput("vector dimension mismatch".into()));
            }
        }
        Ok(())
    }
}

/// Δ_i = ⌊(i_1 + ⋯ + i_k)/k⌋ for a tuple of k indices in {0, …, k−1}.
pub fn delta_offset(indices: &[usize]) -> usize {
    let k = indices.len();
    indices.iter().sum::<usize>() / k
}

/// Witness that one target vector is hit by the shifted union.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoverWitness {
    pub indices: Vec<usize>,
    pub summands: Vec<RationalVector>,
    pub delta: usize,
}

fn vec_add(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn standard_basis(n: usize, i: usize) -> RationalVector {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// All k-multisets of standard basis vectors, summed: the targets kC.
pub fn k_fold_basis_targets(n: usize, k: usize) -> Vec<RationalVector> {
    let mut targets = Vec::new();
    let mut counts = vec![0usize; n];
    fn rec(n: usize, k: usize, start: usize, counts: &mut Vec<usize>, out: &mut Vec<RationalVector>) {
        if k == 0 {
            out.push(
                counts
                    .iter()
                    .map(|&c| Rational::from(c as i64))
                    .collect(),
            );
            return;
        }
        for i in start..n {
            counts[i] += 1;
            rec(n, k - 1, i, counts, out);
            counts[i] -= 1;
        }
    }
    rec(n, k, 0, &mut counts, &mut targets);
    targets
}

/// Checks kC ⊆ ⋃ { B_{i_1} + ⋯ + B_{i_k} + Δ_i·𝟙 : Σi_j ≡ 1 (mod k) },
/// returning the overall verdict and one witness (or absence) per target.
pub fn check_vector_cover(
    f: &VectorFamily,
) -> Result<(bool, BTreeMap<RationalVector, Option<CoverWitness>>)> {
    f.validate()?;
    let tuples = admissible_tuples(f.k);
    let mut report = BTreeMap::new();
    let mut all = true;
    for target in k_fold_basis_targets(f.n, f.k) {
        let witness = find_witness(f, &tuples, &target);
        all &= witness.is_some();
        report.insert(target, witness);
    }
    Ok((all, report))
}

/// All index tuples (i_1, …, i_k) ∈ {0, …, k−1}^k with Σ i_j ≡ 1 (mod k).
fn admissible_tuples(k: usize) -> Vec<Vec<usize>> {
    let mut tuples = Vec::new();
    let mut cur = vec![0usize; k];
    loop {
        if cur.iter().sum::<usize>() % k == 1 {
            tuples.push(cur.clone());
        }
        // odometer over base-k digits
        let mut pos = k;
        loop {
            if pos == 0 {
                return tuples;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < k {
                break;
            }
            cur[pos] = 0;
        }
    }
}

fn find_witness(
    f: &VectorFamily,
    tuples: &[Vec<usize>],
    target: &[Rational],
) -> Option<CoverWitness> {
    for tuple in tuples {
        let delta = delta_offset(tuple);
        let shift = Rational::from(delta as i64);
        let goal: RationalVector = target.iter().map(|t| t - &shift).collect();
        let mut summands: Vec<RationalVector> = Vec::with_capacity(f.k);
        if pick(f, tuple, 0, &goal, &mut summands) {
            return Some(CoverWitness {
                indices: tuple.clone(),
                summands,
                delta,
            });
        }
    }
    None
}

fn pick(
    f: &VectorFamily,
    tuple: &[usize],
    pos: usize,
    remaining: &[Rational],
    summands: &mut Vec<RationalVector>,
) -> bool {
    if pos == tuple.len() {
        return remaining.iter().all(Rational::is_zero);
    }
    for v in &f.parts[tuple[pos]] {
        let rest: RationalVector = remaining.iter().zip(v).map(|(r, x)| r - x).collect();
        summands.push(v.clone());
        if pick(f, tuple, pos + 1, &rest, summands) {
            return true;
        }
        summands.pop();
    }
    false
}

/// A subspace spanned by a subset of the standard basis vectors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoordinateSubspace {
    pub indices: Vec<usize>,
}

/// For V = span(spanning) ⊆ ℚ^n of codimension d, a coordinate subspace W
/// with dim W = d and W ∩ V = {0}: describe V by d independent equations
/// (a kernel basis of the spanning matrix), reduce them to echelon form,
/// and take the pivot coordinates.
pub fn coord_subspace(spanning: &[RationalVector], n: usize) -> Result<CoordinateSubspace> {
    if spanning.iter().any(|v| v.len() != n) {
        return Err(Error::InvalidInput("vector dimension mismatch".into()));
    }
    if spanning.is_empty() {
        return Ok(CoordinateSubspace {
            indices: (0..n).collect(),
        });
    }
    let m = RationalMatrix::from_rows(spanning)?;
    let equations = m.kernel_basis();
    if equations.is_empty() {
        return Ok(CoordinateSubspace { indices: vec![] });
    }
    let eq_matrix = RationalMatrix::from_rows(&equations)?;
    let (_, pivots) = eq_matrix.row_echelon();
    Ok(CoordinateSubspace { indices: pivots })
}

/// Fixed regression on a family of linear systems: with the three
/// systems 2x = c_1, 2x = c_2, 2x = c_1 + c_2 over the box c ∈ {−4,…,4}²,
/// (a) every c is handled by at least one system over ℤ, while
/// (b) no single system handles every c.
pub fn lemma2_counterexample_check() -> bool {
    let two = RationalMatrix::from_rows(&[vec![Rational::from(2)]]).expect("1x1");
    let solvable_over_z = |rhs: i64| -> bool {
        match two.solve(&[Rational::from(rhs)]).expect("well-formed") {
            Some(x) => x[0].is_integer(),
            None => false,
        }
    };
    let box_range = -4..=4i64;
    let mut each_single_fails = [false; 3];
    for c1 in box_range.clone() {
        for c2 in box_range.clone() {
            let rhs = [c1, c2, c1 + c2];
            if !rhs.iter().any(|&m| solvable_over_z(m)) {
                return false; // the union must cover Z^2
            }
            for (i, &m) in rhs.iter().enumerate() {
                if !solvable_over_z(m) {
                    each_single_fails[i] = true;
                }
            }
        }
    }
    each_single_fails.iter().all(|&f| f)
}

/// Outcome of the grid probe: a covering family if one was found, plus the
/// searched grid and budget accounting.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeOutcome {
    pub family: Option<VectorFamily>,
    pub budget_exhausted: bool,
    pub nodes: u64,
    pub grid_values: Vec<Rational>,
    pub grid_vectors: usize,
}

/// Grid of canonical rationals p/q with 1 ≤ q ≤ denom_bound and
/// |p/q| ≤ coord_bound.
pub fn coordinate_grid(coord_bound: u32, denom_bound: u32) -> Vec<Rational> {
    let mut vals = std::collections::BTreeSet::new();
    for q in 1..=denom_bound as i64 {
        let top = coord_bound as i64 * q;
        for p in -top..=top {
            vals.insert(Rational::reduce(p, q).expect("q > 0"));
        }
    }
    vals.into_iter().collect()
}

/// Searches the finite grid for B_0, B_1 ⊆ grid^n with |B_0| = s_0,
/// |B_1| = s_1 and B_0 + B_1 ⊇ {e_i + e_j : i ≤ j}. B_0 candidates are
/// enumerated lexicographically; for each, B_1 reduces to an exact cover
/// over the at most s_0·C(n+1,2) translates that can hit a target.
pub fn conjecture1_probe(
    n: usize,
    sizes: (usize, usize),
    coord_bound: u32,
    denom_bound: u32,
    budget: u64,
) -> Result<ProbeOutcome> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be >= 2".into()));
    }
    let (s0, s1) = sizes;
    if s0 == 0 || s1 == 0 {
        return Err(Error::InvalidParameter("sizes must be positive".into()));
    }
    let grid_values = coordinate_grid(coord_bound, denom_bound);
    let g = grid_values.len();
    let grid_vectors = g.pow(n as u32);

    let targets: Vec<RationalVector> = (0..n)
        .flat_map(|i| {
            (i..n).map(move |j| vec_add(&standard_basis(n, i), &standard_basis(n, j)))
        })
        .collect();

    // counting prune: s0 * s1 pairwise sums cannot cover more targets
    if s0 * s1 < targets.len() {
        return Ok(ProbeOutcome {
            family: None,
            budget_exhausted: false,
            nodes: 0,
            grid_values,
            grid_vectors,
        });
    }

    let vector_at = |idx: usize| -> RationalVector {
        let mut rem = idx;
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(grid_values[rem % g].clone());
            rem /= g;
        }
        v.reverse();
        v
    };
    let in_grid = |v: &RationalVector| v.iter().all(|x| grid_values.binary_search(x).is_ok());

    let mut nodes: u64 = 0;
    let mut b0_indices: Vec<usize> = (0..s0).collect();
    loop {
        nodes += 1;
        if nodes > budget {
            return Ok(ProbeOutcome {
                family: None,
                budget_exhausted: true,
                nodes,
                grid_values,
                grid_vectors,
            });
        }
        let b0: Vec<RationalVector> = b0_indices.iter().map(|&i| vector_at(i)).collect();
        // candidates for B_1: translates t − b0 that stay on the grid
        let mut pool: Vec<RationalVector> = Vec::new();
        let mut allowed: Vec<Vec<usize>> = Vec::with_capacity(targets.len());
        for t in &targets {
            let mut hits = Vec::new();
            for b in &b0 {
                let cand: RationalVector = t.iter().zip(b).map(|(x, y)| x - y).collect();
                if in_grid(&cand) {
                    let pos = match pool.iter().position(|p| p == &cand) {
                        Some(p) => p,
                        None => {
                            pool.push(cand);
                            pool.len() - 1
                        }
                    };
                    if !hits.contains(&pos) {
                        hits.push(pos);
                    }
                }
            }
            hits.sort_unstable();
            allowed.push(hits);
        }
        if allowed.iter().all(|h| !h.is_empty()) {
            if let Some(cover) = min_cover(&allowed, pool.len(), s1) {
                let mut b1: Vec<RationalVector> =
                    cover.iter().map(|&i| pool[i].clone()).collect();
                // pad to exactly s1 with unused grid vectors
                let mut pad = 0usize;
                while b1.len() < s1 && pad < grid_vectors {
                    let v = vector_at(pad);
                    if !b1.contains(&v) {
                        b1.push(v);
                    }
                    pad += 1;
                }
                let family = VectorFamily {
                    n,
                    k: 2,
                    parts: vec![b0, b1],
                };
                // dual-route confirmation through the generic verifier
                let (covered, _) = check_vector_cover(&family)?;
                if covered {
                    return Ok(ProbeOutcome {
                        family: Some(family),
                        budget_exhausted: false,
                        nodes,
                        grid_values,
                        grid_vectors,
                    });
                }
            }
        }
        if !crate::solver::next_combination(&mut b0_indices, grid_vectors) {
            return Ok(ProbeOutcome {
                family: None,
                budget_exhausted: false,
                nodes,
                grid_values,
                grid_vectors,
            });
        }
    }
}

/// Exact set cover by brute force over subsets of the candidate pool, sizes
/// 1..=max_size, lexicographic order. Pool sizes here are tiny.
fn min_cover(allowed: &[Vec<usize>], pool: usize, max_size: usize) -> Option<Vec<usize>> {
    for size in 1..=max_size.min(pool) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if allowed
                .iter()
                .all(|hits| hits.iter().any(|h| idx.contains(h)))
            {
                return Some(idx);
            }
            if !crate::solver::next_combination(&mut idx, pool) {
                break;
            }
        }
    }
    None
}
