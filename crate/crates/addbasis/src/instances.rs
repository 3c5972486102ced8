//! Seeded, deterministic generators for the instance families used in tests
//! and sweeps.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sumset::ElementSet;

/// The power-family instance: C = {±base^r : 1 ≤ r ≤ n} and
/// A = (C + C) ∩ ℕ. C witnesses a 2-basis of A of size 2n over ℤ.
pub fn gen_power_family(n: usize, base: u32) -> Result<(ElementSet, ElementSet)> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if base < 2 {
        return Err(Error::InvalidParameter("base must be >= 2".into()));
    }
    let c = ElementSet::new((1..=n as u32).flat_map(|r| {
        let p = BigInt::from(base).pow(r);
        [Rational::from_int(p.clone()), Rational::from_int(-p)]
    }));
    let a = c.k_fold_sumset(2)?.filter(|v| !v.is_negative());
    Ok((c, a))
}

/// n distinct rationals drawn uniformly (without replacement) from the
/// canonical grid {p/q : 1 ≤ q ≤ denom_bound, |p/q| ≤ magnitude_bound}.
pub fn gen_random_rational_basis(
    n: usize,
    denom_bound: u32,
    magnitude_bound: u32,
    seed: u64,
) -> Result<ElementSet> {
    if denom_bound < 1 || magnitude_bound < 1 {
        return Err(Error::InvalidParameter("bounds must be >= 1".into()));
    }
    let grid = crate::vector_model::coordinate_grid(magnitude_bound, denom_bound);
    if grid.len() < n {
        return Err(Error::InvalidParameter(format!(
            "grid of {} values cannot yield {} distinct elements",
            grid.len(),
            n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..grid.len()).collect();
    indices.shuffle(&mut rng);
    Ok(ElementSet::new(
        indices[..n].iter().map(|&i| grid[i].clone()),
    ))
}

/// n distinct positive magnitudes in 1..=magnitude_bound, each carrying a
/// nonempty subset of signs {+, −}.
pub fn gen_random_signed_integer_basis(
    n: usize,
    magnitude_bound: u32,
    seed: u64,
) -> Result<ElementSet> {
    if (magnitude_bound as usize) < n {
        return Err(Error::InvalidParameter(format!(
            "magnitude bound {magnitude_bound} cannot yield {n} distinct magnitudes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut magnitudes: Vec<u32> = (1..=magnitude_bound).collect();
    magnitudes.shuffle(&mut rng);
    let mut elems = Vec::new();
    for &m in &magnitudes[..n] {
        let m = Rational::from(m as i64);
        match rng.gen_range(0..3) {
            0 => elems.push(m),
            1 => elems.push(-m),
            _ => {
                elems.push(m.clone());
                elems.push(-m);
            }
        }
    }
    Ok(ElementSet::new(elems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn power_family_examples() {
        let (c, a) = gen_power_family(1, 4).unwrap();
        assert_eq!(c, ElementSet::from_ints([-4, 4]));
        assert_eq!(a, ElementSet::from_ints([0, 8]));

        let (c, a) = gen_power_family(2, 4).unwrap();
        assert_eq!(c, ElementSet::from_ints([-16, -4, 4, 16]));
        assert_eq!(a, ElementSet::from_ints([0, 8, 12, 20, 32]));

        let (c, a) = gen_power_family(2, 2).unwrap();
        assert_eq!(c, ElementSet::from_ints([-4, -2, 2, 4]));
        assert_eq!(a, ElementSet::from_ints([0, 2, 4, 6, 8]));
    }

    #[test]
    fn power_family_contains_differences() {
        // A ⊇ {x_r − x_t : t < r} when the magnitudes grow fast enough
        let n = 4;
        let (_, a) = gen_power_family(n, 4).unwrap();
        for r in 1..=n as u32 {
            for t in 1..r {
                let d = rat(4, 1).numerator().pow(r) - rat(4, 1).numerator().pow(t);
                assert!(a.contains(&Rational::from_int(d)));
            }
        }
        assert_eq!(a.min().unwrap(), &Rational::zero());
        assert_eq!(a.max().unwrap(), &rat(2 * 4i64.pow(n as u32), 1));
    }

    #[test]
    fn random_rational_basis_contract() {
        let b1 = gen_random_rational_basis(6, 5, 3, 42).unwrap();
        let b2 = gen_random_rational_basis(6, 5, 3, 42).unwrap();
        assert_eq!(b1, b2); // determinism per seed
        assert_eq!(b1.len(), 6);
        let b3 = gen_random_rational_basis(6, 5, 3, 43).unwrap();
        assert_ne!(b1, b3);
        for x in b1.iter() {
            assert!(x.abs() <= rat(3, 1));
        }
        // grid too small
        assert!(gen_random_rational_basis(100, 1, 1, 0).is_err());
    }

    #[test]
    fn random_signed_basis_contract() {
        let b1 = gen_random_signed_integer_basis(4, 10, 7).unwrap();
        let b2 = gen_random_signed_integer_basis(4, 10, 7).unwrap();
        assert_eq!(b1, b2);
        // exactly 4 distinct magnitudes, each present with at least one sign
        let mags = ElementSet::new(b1.iter().map(Rational::abs));
        assert_eq!(mags.len(), 4);
        assert!(mags.iter().all(|m| m > &Rational::zero()));
        assert!(gen_random_signed_integer_basis(5, 4, 0).is_err());
    }
}
