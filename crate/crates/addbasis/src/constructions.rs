//! Constructive upper bounds: floor/ceiling rounding of a rational basis,
//! the dyadic 2-basis for signed integer bases, and the higher-order
//! pipeline (AP approximation, small/large scale covers, and the recursion
//! combining them).

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sumset::ElementSet;

/// C = {⌊b⌋ : b ∈ B} ∪ {⌈b⌉ : b ∈ B}. |C| ≤ 2|B|, and kB ∩ ℤ ⊆ kC:
/// changing floors to ceilings one summand at a time moves the sum in unit
/// steps across the target.
pub fn round_to_integer_basis(b: &ElementSet) -> ElementSet {
    ElementSet::new(b.iter().flat_map(|x| {
        let (f, c) = x.floor_ceil();
        [Rational::from_int(f), Rational::from_int(c)]
    }))
}

fn floor_log2(n: usize) -> u32 {
    debug_assert!(n >= 1);
    usize::BITS - 1 - n.leading_zeros()
}

/// B⁺ = (B ∩ ℕ) ∪ ⋃_j B_j over dyadic levels j = 0 … ⌊log₂ n⌋, where the
/// levels bucket index pairs (r, s) with s = 2^j⌊2^{−j}r⌋ or r = 2^j⌈2^{−j}s⌉
/// over the sorted distinct magnitudes x_1 < … < x_n of B. Then
/// (B+B) ∩ ℕ ⊆ B⁺+B⁺ and |B⁺| ≤ n + 2n(1 + ⌊log₂ n⌋).
pub fn dyadic_two_basis(b: &ElementSet) -> Result<ElementSet> {
    if b.is_empty() {
        return Err(Error::InvalidInput("basis is empty".into()));
    }
    let mags = ElementSet::new(b.iter().map(Rational::abs));
    let x = mags.as_slice(); // x[0] < ... < x[n-1], 1-based in the formulas
    let n = x.len();
    let mut out: BTreeSet<Rational> =
        b.iter().filter(|v| !v.is_negative()).cloned().collect();
    for j in 0..=floor_log2(n) {
        let p = 1usize << j;
        for r in 1..=n {
            let s = p * (r / p);
            if (1..=r).contains(&s) {
                out.insert(&x[r - 1] - &x[s - 1]);
            }
        }
        for s in 1..=n {
            let r = p * s.div_ceil(p);
            if r <= n && s <= r {
                out.insert(&x[r - 1] - &x[s - 1]);
            }
        }
    }
    Ok(ElementSet::new(out))
}

/// Size bound asserted for `dyadic_two_basis` at n ≥ 2: 3n + 2n·log₂n.
pub fn dyadic_size_bound(n: usize) -> f64 {
    3.0 * n as f64 + 2.0 * n as f64 * (n as f64).log2()
}

/// AP approximation of a vector 0 ≤ x_1 < … < x_n = 1: x_i = y_i·L + z_i
/// with y_i ∈ ℕ, |z_i| ≤ L/C, z_1 = z_n and L ≥ C^(−n−1).
#[derive(Clone, Debug)]
pub struct ApDecomposition {
    /// Step size L of the approximating progression.
    pub step: Rational,
    pub y: Vec<BigInt>,
    pub z: Vec<Rational>,
    /// Accuracy parameter C.
    pub accuracy: u32,
}

impl ApDecomposition {
    /// Re-checks every invariant against the original vector.
    pub fn check(&self, x: &[Rational]) -> Result<()> {
        let n = x.len();
        if self.y.len() != n || self.z.len() != n {
            return Err(Error::ConstructionFailure("length mismatch".into()));
        }
        let c = Rational::from(self.accuracy as i64);
        let tol = &self.step / &c;
        for (i, xi) in x.iter().enumerate() {
            let recomposed = &Rational::from_int(self.y[i].clone()) * &self.step + &self.z[i];
            if &recomposed != xi {
                return Err(Error::ConstructionFailure(format!(
                    "x_{} != y_{}*L + z_{}",
                    i + 1,
                    i + 1,
                    i + 1
                )));
            }
            if self.z[i].abs() > tol {
                return Err(Error::ConstructionFailure(format!("|z_{}| > L/C", i + 1)));
            }
            if self.y[i].is_negative() {
                return Err(Error::ConstructionFailure(format!("y_{} < 0", i + 1)));
            }
        }
        if self.z[0] != self.z[n - 1] {
            return Err(Error::ConstructionFailure("z_1 != z_n".into()));
        }
        let c_big = BigInt::from(self.accuracy);
        let lower = Rational::reduce(BigInt::one(), c_big.pow(n as u32 + 1))?;
        if self.step < lower {
            return Err(Error::ConstructionFailure("L < C^(-n-1)".into()));
        }
        Ok(())
    }
}

/// Pigeonhole search for the approximating AP: walk λ through multiples of
/// α = 1/(x_n − x_1), mapping each λ to the box (⌊C·{λx_i}⌋)_i of side 1/C;
/// the first box collision yields the step size. A collision is forced
/// within C^n + 1 multiples, which gives L ≥ C^(−n−1).
pub fn find_ap_approximation(x: &[Rational], accuracy: u32) -> Result<ApDecomposition> {
    let n = x.len();
    let c = accuracy;
    if c < 2 {
        return Err(Error::InvalidInput("accuracy C must be >= 2".into()));
    }
    if n < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("x must be strictly increasing".into()));
    }
    if x[0].is_negative() {
        return Err(Error::InvalidInput("x_1 must be >= 0".into()));
    }
    if x[n - 1] != Rational::one() {
        return Err(Error::InvalidInput("x_n must equal 1".into()));
    }
    let c_rat = Rational::from(c as i64);
    let slack = Rational::one() - &Rational::one() / &c_rat;
    if x[0] > slack {
        return Err(Error::InvalidInput("x_1 must be <= 1 - 1/C".into()));
    }

    let alpha = (&x[n - 1] - &x[0]).recip().expect("x_n > x_1");
    // fractional increments of λ·x_i per step of α
    let incr: Vec<Rational> = x.iter().map(|xi| (&alpha * xi).fractional_part()).collect();
    let mut fracs: Vec<Rational> = vec![Rational::zero(); n];

    let steps = BigInt::from(c).pow(n as u32); // C^n boxes, C^n + 1 probes
    let mut seen: HashMap<Vec<BigInt>, BigInt> = HashMap::new();
    let mut j = BigInt::zero();
    let collision = loop {
        let boxed: Vec<BigInt> = fracs.iter().map(|f| (&c_rat * f).floor()).collect();
        if let Some(j0) = seen.get(&boxed) {
            break &j - j0;
        }
        seen.insert(boxed, j.clone());
        if j == steps {
            return Err(Error::ConstructionFailure(
                "pigeonhole loop found no collision".into(),
            ));
        }
        for (f, inc) in fracs.iter_mut().zip(&incr) {
            *f = (&*f + inc).fractional_part();
        }
        j += BigInt::one();
    };

    let lambda = &Rational::from_int(collision) * &alpha;
    let step = lambda.recip().expect("collision gap > 0");
    let y: Vec<BigInt> = x
        .iter()
        .map(|xi| (xi / &step).round_half_even())
        .collect();
    let z: Vec<Rational> = x
        .iter()
        .zip(&y)
        .map(|(xi, yi)| xi - &(&Rational::from_int(yi.clone()) * &step))
        .collect();
    let d = ApDecomposition {
        step,
        y,
        z,
        accuracy: c,
    };
    d.check(x)?;
    Ok(d)
}

/// B' = {|z_i|}: for C > 2k, every element of k(B ∪ −B) with absolute value
/// below L/2 lies in k(B' ∪ −B').
pub fn small_scale_reduction(d: &ApDecomposition) -> ElementSet {
    ElementSet::new(d.z.iter().map(Rational::abs))
}

/// Smallest m ≥ 0 with 2^m ≥ r.
fn ceil_log2(r: &Rational) -> u32 {
    let mut m = 0;
    let mut p = Rational::one();
    let two = Rational::from(2);
    while &p < r {
        p = &p * &two;
        m += 1;
    }
    m
}

/// Dyadic quantization cover for the large elements: X = ⋃_m X_m over
/// m = 0 … ⌈log₂(3k/L)⌉ with
/// X_m = { x_i − (⌊2^m x_i⌋ − p)/2^m : i, 0 ≤ p ≤ k−1 }
///     ∪ { ⌈2^m x_i⌉/2^m − x_i : i },
/// intersected with the non-negatives. Every element of k(B ∪ −B) that is
/// ≥ L/2 lies in kX, and |X| ≤ n(k+1)(⌈log₂(3k/L)⌉ + 1).
pub fn large_scale_cover(x: &[Rational], step: &Rational, k: u32) -> Result<ElementSet> {
    let n = x.len();
    if k < 2 {
        return Err(Error::InvalidInput("k must be >= 2".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("x is empty".into()));
    }
    if step <= &Rational::zero() || step > &Rational::one() {
        return Err(Error::InvalidInput("need 0 < L <= 1".into()));
    }
    if x.windows(2).any(|w| w[0] >= w[1]) || x[0].is_negative() {
        return Err(Error::InvalidInput(
            "x must be strictly increasing and non-negative".into(),
        ));
    }
    if x[n - 1] != Rational::one() {
        return Err(Error::InvalidInput("x_n must equal 1".into()));
    }

    let three_k = Rational::from(3 * k as i64);
    let m_max = ceil_log2(&(&three_k / step));
    let mut out = BTreeSet::new();
    for m in 0..=m_max {
        let pow = Rational::from_int(BigInt::one() << m);
        for xi in x {
            let scaled = &pow * xi;
            let floor = Rational::from_int(scaled.floor());
            let ceil = Rational::from_int(scaled.ceil());
            for p in 0..k {
                let q = &floor - &Rational::from(p as i64);
                out.insert(xi - &(&q / &pow));
            }
            out.insert(&(&ceil / &pow) - xi);
        }
    }
    Ok(ElementSet::new(out).filter(|v| !v.is_negative()))
}

/// Dyadic level count used in `large_scale_cover` for the given (k, L).
pub fn large_scale_levels(step: &Rational, k: u32) -> u32 {
    ceil_log2(&(&Rational::from(3 * k as i64) / step))
}

/// Recursion producing X ⊆ ℝ≥0 with (k(B ∪ −B)) ∩ ℝ≥0 ⊆ kX, for a
/// non-negative rational B and k ≥ 2, with C = 3k. Each round covers the
/// elements at the scale of the approximating AP and recurses on the
/// remainder magnitudes, which the z_1 = z_n collision keeps below n.
pub fn higher_order_nonneg_basis(b: &ElementSet, k: u32) -> Result<ElementSet> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be >= 2".into()));
    }
    if b.is_empty() {
        return Err(Error::InvalidInput("basis is empty".into()));
    }
    if b.min().expect("nonempty").is_negative() {
        return Err(Error::InvalidInput("basis must be non-negative".into()));
    }
    let c = 3 * k;
    let scale = b.max().expect("nonempty").clone();
    if scale.is_zero() {
        // B ⊆ {0}
        return Ok(ElementSet::new([Rational::zero()]));
    }
    if b.len() == 1 {
        // {0, x_1} covers every (2j−k)·x_1 ≥ 0
        return Ok(ElementSet::new([Rational::zero(), scale]));
    }

    // normalize so x_n = 1
    let inv = scale.recip().expect("nonzero");
    let x = b.scale(&inv);
    let xs = x.as_slice();
    let c_rat = Rational::from(c as i64);
    let threshold = Rational::one() - &Rational::one() / &c_rat;

    let (cover, remainders) = if xs[0] >= threshold {
        // all y_i = 1 at step L = 1; the remainders x_i − 1 feed the next round
        let cover = large_scale_cover(xs, &Rational::one(), k)?;
        let rem = ElementSet::new(xs.iter().map(|xi| (xi - &Rational::one()).abs()));
        (cover, rem)
    } else {
        let d = find_ap_approximation(xs, c)?;
        let cover = large_scale_cover(xs, &d.step, k)?;
        (cover, small_scale_reduction(&d))
    };
    let rest = higher_order_nonneg_basis(&remainders, k)?;
    Ok(cover.union(&rest).scale(&scale))
}

/// Size target asserted for `higher_order_nonneg_basis`: 2n³·k·log₂k.
pub fn higher_order_size_bound(n: usize, k: u32) -> f64 {
    2.0 * (n as f64).powi(3) * k as f64 * (k as f64).log2()
}

/// Given a k-basis B ⊆ ℤ of A ⊆ ℕ (verified), produce a k-basis of A over
/// ℕ: run the non-negative recursion on the magnitudes of B, then round
/// every output element to both its floor and its ceiling.
pub fn natural_k_basis(a: &ElementSet, b: &ElementSet, k: u32) -> Result<ElementSet> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be >= 2".into()));
    }
    for target in a.iter() {
        if crate::sumset::k_sum_membership(target, b, k)?.is_none() {
            return Err(Error::InvalidWitness {
                element: target.to_string(),
                k,
            });
        }
    }
    let mags = ElementSet::new(b.iter().map(Rational::abs));
    let x = higher_order_nonneg_basis(&mags, k)?;
    Ok(round_to_integer_basis(&x))
}
