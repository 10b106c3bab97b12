use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{ceil_log2, proper_divisors};

use super::graph::{AdjacencyLists, TspGraph};

/// Register widths for an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Encoding {
    /// `N`.
    pub cities: usize,
    /// `m`: bits per choice slice.
    pub choice_bits: usize,
    /// `n = ⌈log₂ N⌉`: bits of a city index.
    pub index_bits: usize,
}

impl Encoding {
    pub fn new(cities: usize, choice_bits: usize) -> Encoding {
        Encoding {
            cities,
            choice_bits,
            index_bits: ceil_log2(cities).max(1),
        }
    }

    /// Smallest `m` covering the largest neighbour list.
    pub fn for_lists(lists: &AdjacencyLists) -> Encoding {
        Encoding::new(lists.cities(), ceil_log2(lists.max_degree()).max(1))
    }

    /// Width of the cycle register, `m·N`.
    pub fn search_qubits(&self) -> usize {
        self.cities * self.choice_bits
    }
}

/// One choice per city.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleWord {
    choices: Vec<u32>,
}

impl CycleWord {
    pub fn new(choices: Vec<u32>) -> CycleWord {
        CycleWord { choices }
    }

    /// Splits an `m·N`-bit value into `N` slices, city 0 lowest.
    pub fn from_value(value: u64, cities: usize, choice_bits: usize) -> CycleWord {
        let mask = (1u64 << choice_bits) - 1;
        CycleWord {
            choices: (0..cities)
                .map(|i| ((value >> (i * choice_bits)) & mask) as u32)
                .collect(),
        }
    }

    pub fn value(&self, choice_bits: usize) -> u64 {
        self.choices
            .iter()
            .enumerate()
            .fold(0, |v, (i, &c)| v | ((c as u64) << (i * choice_bits)))
    }

    pub fn choices(&self) -> &[u32] {
        &self.choices
    }

    pub fn choice(&self, city: usize) -> u32 {
        self.choices[city]
    }
}

/// Graph, neighbour lists and register widths bundled together.
#[derive(Clone, Debug, PartialEq)]
pub struct TspInstance {
    graph: TspGraph,
    lists: AdjacencyLists,
    encoding: Encoding,
}

impl TspInstance {
    /// Uses the narrowest choice slices that fit the neighbour lists.
    pub fn new(graph: TspGraph) -> Result<TspInstance> {
        let lists = AdjacencyLists::build(&graph)?;
        let encoding = Encoding::for_lists(&lists);
        Ok(TspInstance { graph, lists, encoding })
    }

    /// Uses `choice_bits` bits per city; must cover every neighbour list.
    pub fn with_choice_bits(graph: TspGraph, choice_bits: usize) -> Result<TspInstance> {
        let lists = AdjacencyLists::build(&graph)?;
        if lists.max_degree() > 1 << choice_bits {
            return Err(Error::InvalidDegree { cities: graph.cities(), degree: lists.max_degree() });
        }
        let encoding = Encoding::new(graph.cities(), choice_bits);
        Ok(TspInstance { graph, lists, encoding })
    }

    pub fn graph(&self) -> &TspGraph {
        &self.graph
    }

    pub fn lists(&self) -> &AdjacencyLists {
        &self.lists
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn cities(&self) -> usize {
        self.graph.cities()
    }

    pub fn word(&self, value: u64) -> CycleWord {
        CycleWord::from_value(value, self.cities(), self.encoding.choice_bits)
    }

    pub fn value(&self, word: &CycleWord) -> u64 {
        word.value(self.encoding.choice_bits)
    }

    pub fn decode_successor(&self, word: &CycleWord, city: usize) -> Result<usize> {
        let choice = word.choice(city);
        self.lists
            .successor(city, choice)
            .ok_or(Error::ChoiceOutOfRange { city, choice })
    }

    /// Successor of every city, or the first out-of-range choice.
    pub fn successors(&self, word: &CycleWord) -> Result<Vec<usize>> {
        (0..self.cities()).map(|i| self.decode_successor(word, i)).collect()
    }

    /// Sum of road costs `i → succ(i)` over all cities.
    pub fn cost(&self, word: &CycleWord) -> Result<f64> {
        let succ = self.successors(word)?;
        Ok(succ.iter().enumerate().map(|(i, &j)| self.graph.cost(i, j)).sum())
    }

    /// `I_0 = 0, I_1, …, I_N` following successors from city 0. A city whose
    /// choice is out of range stays put, which can never produce a valid
    /// cycle.
    pub fn walk(&self, word: &CycleWord) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.cities() + 1);
        let mut cur = 0;
        path.push(cur);
        for _ in 0..self.cities() {
            cur = self.lists.successor(cur, word.choice(cur)).unwrap_or(cur);
            path.push(cur);
        }
        path
    }

    /// Valid iff `I_k ≠ 0` for `1 ≤ k < N` and `I_N = 0`.
    pub fn is_hamiltonian_theorem1(&self, word: &CycleWord) -> bool {
        let path = self.walk(word);
        let n = self.cities();
        path[1..n].iter().all(|&c| c != 0) && path[n] == 0
    }

    /// Valid iff `I_j ≠ 0` for every proper divisor `j` of `N` and `I_N = 0`.
    pub fn is_hamiltonian_theorem2(&self, word: &CycleWord) -> bool {
        let path = self.walk(word);
        let n = self.cities();
        proper_divisors(n).iter().all(|&j| path[j] != 0) && path[n] == 0
    }

    /// Reference test: the successor map is a permutation made of one cycle.
    pub fn is_single_cycle(&self, word: &CycleWord) -> bool {
        let Ok(succ) = self.successors(word) else {
            return false;
        };
        let mut seen = alloc::vec![false; succ.len()];
        let mut cur = 0;
        for _ in 0..succ.len() {
            if seen[cur] {
                return false;
            }
            seen[cur] = true;
            cur = succ[cur];
        }
        cur == 0 && seen.iter().all(|&s| s)
    }

    /// Tour starting at city 0 (without repeating it), if the word is valid.
    pub fn tour(&self, word: &CycleWord) -> Option<Vec<usize>> {
        if !self.is_hamiltonian_theorem1(word) {
            return None;
        }
        let mut path = self.walk(word);
        path.pop();
        Some(path)
    }

    /// Word encoding `tour` (a permutation of all cities starting at 0).
    pub fn word_for_tour(&self, tour: &[usize]) -> Result<CycleWord> {
        let n = self.cities();
        if tour.len() != n || tour.first() != Some(&0) {
            return Err(Error::InvalidArgument("tour must list every city once, starting at 0"));
        }
        let mut choices = alloc::vec![u32::MAX; n];
        for k in 0..n {
            let (a, b) = (tour[k], tour[(k + 1) % n]);
            if a >= n || choices[a] != u32::MAX {
                return Err(Error::InvalidArgument("tour must list every city once, starting at 0"));
            }
            choices[a] = self.lists.choice_for(a, b).ok_or(Error::NoHamiltonianCycle)?;
        }
        Ok(CycleWord::new(choices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k6() -> TspInstance {
        TspInstance::new(TspGraph::complete(6, |i, j| (i * 7 + j) as f64).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_word_decodes_to_tour() {
        let inst = k6();
        assert_eq!(inst.encoding().choice_bits, 3);
        let w = CycleWord::new(alloc::vec![2, 3, 1, 4, 0, 2]);
        assert_eq!(inst.tour(&w).unwrap(), [0, 3, 5, 2, 1, 4]);
        assert!(inst.is_hamiltonian_theorem2(&w));
        assert_eq!(inst.word_for_tour(&[0, 3, 5, 2, 1, 4]).unwrap(), w);
    }

    #[test]
    fn value_round_trip() {
        let inst = k6();
        for v in [0u64, 1, 0o123456, (1 << 18) - 1] {
            assert_eq!(inst.value(&inst.word(v)), v);
        }
    }

    #[test]
    fn out_of_range_choice_is_invalid() {
        let inst = TspInstance::new(TspGraph::complete(4, |_, _| 1.0).unwrap()).unwrap();
        // Lists have 3 entries; choice 3 is padding.
        let w = CycleWord::new(alloc::vec![3, 0, 0, 0]);
        assert!(!inst.is_hamiltonian_theorem1(&w));
        assert!(!inst.is_hamiltonian_theorem2(&w));
        assert_eq!(inst.cost(&w), Err(Error::ChoiceOutOfRange { city: 0, choice: 3 }));
    }

    #[test]
    fn two_subtours_rejected() {
        let inst = k6();
        // 0→1→2→0 and 3→4→5→3.
        let tour_pairs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let mut c = alloc::vec![0u32; 6];
        for (a, b) in tour_pairs {
            c[a] = inst.lists().choice_for(a, b).unwrap();
        }
        let w = CycleWord::new(c);
        assert!(!inst.is_hamiltonian_theorem1(&w));
        assert!(!inst.is_hamiltonian_theorem2(&w));
        assert!(!inst.is_single_cycle(&w));
    }
}
