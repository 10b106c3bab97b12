use alloc::vec::Vec;

use super::word::{CycleWord, TspInstance};

/// An undirected Hamiltonian cycle with both of its directed encodings.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedCycle {
    /// Tour from city 0 in the direction whose second city is smaller.
    pub tour: Vec<usize>,
    pub cost: f64,
    /// Directed words: the tour as listed, then reversed.
    pub words: Vec<CycleWord>,
}

/// Every Hamiltonian cycle of an instance, cheapest first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BruteForce {
    pub cycles: Vec<RankedCycle>,
}

impl BruteForce {
    pub fn best(&self) -> Option<&RankedCycle> {
        self.cycles.first()
    }

    pub fn directed_count(&self) -> usize {
        self.cycles.iter().map(|c| c.words.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Rank (0-based) of the undirected cycle that `word` encodes.
    pub fn rank_of(&self, word: &CycleWord) -> Option<usize> {
        self.cycles.iter().position(|c| c.words.contains(word))
    }
}

/// Enumerates tours fixing city 0 first, keeping only roads that exist, and
/// groups each tour with its reverse. An instance without a Hamiltonian cycle
/// yields an empty result.
pub fn brute_force_best(inst: &TspInstance) -> BruteForce {
    let n = inst.cities();
    let mut tours: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut path = alloc::vec![0usize];
    let mut used = alloc::vec![false; n];
    used[0] = true;
    dfs(inst, &mut path, &mut used, 0.0, &mut tours);
    let mut cycles: Vec<RankedCycle> = Vec::new();
    for (tour, cost) in tours {
        // Each undirected cycle shows up twice; keep the orientation whose
        // second city is smaller than its last.
        if tour[1] > tour[n - 1] {
            continue;
        }
        let mut rev = alloc::vec![0usize];
        rev.extend(tour[1..].iter().rev());
        let fwd_word = inst.word_for_tour(&tour).expect("tour uses existing roads");
        let rev_word = inst.word_for_tour(&rev).expect("tour uses existing roads");
        cycles.push(RankedCycle { tour, cost, words: alloc::vec![fwd_word, rev_word] });
    }
    cycles.sort_by(|a, b| a.cost.total_cmp(&b.cost).then_with(|| a.tour.cmp(&b.tour)));
    BruteForce { cycles }
}

fn dfs(
    inst: &TspInstance,
    path: &mut Vec<usize>,
    used: &mut Vec<bool>,
    cost: f64,
    out: &mut Vec<(Vec<usize>, f64)>,
) {
    let n = inst.cities();
    let last = *path.last().expect("path starts at 0");
    if path.len() == n {
        if inst.graph().has_edge(last, 0) {
            out.push((path.clone(), cost + inst.graph().cost(last, 0)));
        }
        return;
    }
    for &next in inst.lists().get(last) {
        if used[next] {
            continue;
        }
        used[next] = true;
        path.push(next);
        dfs(inst, path, used, cost + inst.graph().cost(last, next), out);
        path.pop();
        used[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::TspGraph;

    #[test]
    fn triangle_has_one_cycle_two_directions() {
        let inst = TspInstance::new(TspGraph::complete(3, |i, j| (i + j) as f64).unwrap()).unwrap();
        let bf = brute_force_best(&inst);
        assert_eq!(bf.cycles.len(), 1);
        assert_eq!(bf.directed_count(), 2);
        assert_eq!(bf.best().unwrap().cost, 6.0);
    }

    #[test]
    fn k4_has_three_cycles_six_directions() {
        let inst = TspInstance::new(TspGraph::complete(4, |i, j| (1 << (i + j)) as f64).unwrap()).unwrap();
        let bf = brute_force_best(&inst);
        assert_eq!(bf.cycles.len(), 3);
        assert_eq!(bf.directed_count(), 6);
        for c in &bf.cycles {
            for w in &c.words {
                assert!(inst.is_single_cycle(w));
                assert_eq!(inst.cost(w).unwrap(), c.cost);
            }
        }
        assert!(bf.cycles.windows(2).all(|w| w[0].cost <= w[1].cost));
    }

    #[test]
    fn no_cycle_gives_empty_result() {
        // Two triangles joined by a single bridge vertex pair: no tour.
        let g = TspGraph::from_edges(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (3, 4, 1.0), (4, 5, 1.0), (5, 3, 1.0), (2, 3, 1.0)],
        )
        .unwrap();
        let inst = TspInstance::new(g).unwrap();
        let bf = brute_force_best(&inst);
        assert!(bf.is_empty() && bf.best().is_none());
    }
}
