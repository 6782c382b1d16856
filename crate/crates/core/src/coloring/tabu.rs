use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{greedy_total_coloring, TotalColoring};
use crate::graph::Graph;

/// Tabu search for a proper total coloring with `k` colors.
///
/// Minimizes the number of conflicting element pairs by recoloring one
/// conflicting element per step; a move back to a recently left color is
/// forbidden for a tenure that grows with the number of conflicts. Returns
/// `None` if no proper coloring was reached within `max_steps`.
pub fn tabu_total_coloring(
    g: &Graph,
    k: usize,
    max_steps: usize,
    seed: u64,
) -> Option<TotalColoring> {
    let n = g.num_elements();
    if n == 0 {
        return TotalColoring::new(g, Vec::new()).ok();
    }
    if k == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| g.element_neighbors(i)).collect();
    let mut color: Vec<usize> = greedy_total_coloring(g)
        .colors()
        .iter()
        .map(|&c| if c < k { c } else { rng.gen_range(0..k) })
        .collect();
    // gamma[i * k + c]: neighbors of i currently colored c
    let mut gamma = vec![0usize; n * k];
    for i in 0..n {
        for &j in &nbrs[i] {
            gamma[i * k + color[j]] += 1;
        }
    }
    let mut conflicts: usize = (0..n).map(|i| gamma[i * k + color[i]]).sum::<usize>() / 2;
    let mut best = conflicts;
    let mut tabu = vec![0usize; n * k];
    let mut moves: Vec<(usize, usize)> = Vec::new();
    for step in 1..=max_steps {
        if conflicts == 0 {
            break;
        }
        let mut best_delta = i64::MAX;
        moves.clear();
        let mut conflicting = 0usize;
        for i in 0..n {
            let own = gamma[i * k + color[i]];
            if own == 0 {
                continue;
            }
            conflicting += 1;
            for c in 0..k {
                if c == color[i] {
                    continue;
                }
                let delta = gamma[i * k + c] as i64 - own as i64;
                let allowed = tabu[i * k + c] < step || (conflicts as i64 + delta) < best as i64;
                if !allowed || delta > best_delta {
                    continue;
                }
                if delta < best_delta {
                    best_delta = delta;
                    moves.clear();
                }
                moves.push((i, c));
            }
        }
        if moves.is_empty() {
            continue;
        }
        let (i, c) = moves[rng.gen_range(0..moves.len())];
        let old = color[i];
        for &j in &nbrs[i] {
            gamma[j * k + old] -= 1;
            gamma[j * k + c] += 1;
        }
        color[i] = c;
        conflicts = (conflicts as i64 + best_delta) as usize;
        best = best.min(conflicts);
        tabu[i * k + old] = step + rng.gen_range(0..10) + conflicting * 3 / 5;
    }
    if conflicts > 0 {
        return None;
    }
    Some(TotalColoring::new(g, color).expect("zero conflicts"))
}
