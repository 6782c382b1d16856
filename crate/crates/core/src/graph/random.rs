use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::{Error, Result};

const MAX_PAIRING_ATTEMPTS: usize = 100_000;

/// Random 3-regular graph from the pairing model; whole pairings are
/// rejected until the result is simple.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "random cubic graphs need an even n >= 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
    for _ in 0..MAX_PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::new(n, pairs) {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no simple pairing found for n = {n}"
    )))
}

/// Erdős–Rényi `G(n, p)`; pairs are visited in lexicographic order.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "p must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_is_regular_and_deterministic() {
        for seed in 0..5 {
            let g = random_cubic(50, seed).unwrap();
            assert_eq!(g.m(), 75);
            assert!((0..50).all(|v| g.degree(v) == 3));
            assert_eq!(g, random_cubic(50, seed).unwrap());
        }
        assert!(matches!(
            random_cubic(7, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            random_cubic(2, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn gnp_density() {
        let mean: f64 = (0..20)
            .map(|s| random_gnp(80, 0.05, s).unwrap().m() as f64)
            .sum::<f64>()
            / 20.0;
        // p * C(80, 2) = 158
        assert!((mean - 158.0).abs() < 15.0, "mean {mean}");
        assert_eq!(
            random_gnp(30, 0.2, 9).unwrap(),
            random_gnp(30, 0.2, 9).unwrap()
        );
        assert!(random_gnp(5, 1.5, 0).is_err());
    }
}
