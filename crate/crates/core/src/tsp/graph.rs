use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Undirected weighted graph on cities `0..N`. Missing roads cost infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct TspGraph {
    cities: usize,
    costs: Vec<f64>,
    coordinates: Option<Vec<[f64; 2]>>,
}

impl TspGraph {
    /// Builds a graph from a row-major `N × N` cost matrix. The diagonal is
    /// ignored; off-diagonal entries must be symmetric and either finite and
    /// non-negative or `+∞` (no road).
    pub fn from_matrix(cities: usize, costs: Vec<f64>) -> Result<TspGraph> {
        if cities < 3 {
            return Err(Error::InvalidGraph(format!("a tour needs at least 3 cities, got {cities}")));
        }
        if costs.len() != cities * cities {
            return Err(Error::InvalidGraph(format!(
                "cost matrix has {} entries, expected {}",
                costs.len(),
                cities * cities
            )));
        }
        let mut costs = costs;
        for i in 0..cities {
            costs[i * cities + i] = f64::INFINITY;
            for j in 0..cities {
                let c = costs[i * cities + j];
                if i != j && (c.is_nan() || c < 0.0 || c == f64::NEG_INFINITY) {
                    return Err(Error::InvalidGraph(format!("bad cost {c} on road {i}-{j}")));
                }
                if c != costs[j * cities + i] {
                    return Err(Error::InvalidGraph(format!("cost matrix is not symmetric at {i}-{j}")));
                }
            }
        }
        Ok(TspGraph { cities, costs, coordinates: None })
    }

    /// Builds a graph from an undirected edge list.
    pub fn from_edges(cities: usize, edges: &[(usize, usize, f64)]) -> Result<TspGraph> {
        let mut m = alloc::vec![f64::INFINITY; cities * cities];
        for &(i, j, c) in edges {
            if i >= cities || j >= cities {
                return Err(Error::InvalidGraph(format!("road {i}-{j} names a missing city")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at city {i}")));
            }
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidGraph(format!("bad cost {c} on road {i}-{j}")));
            }
            if m[i * cities + j].is_finite() {
                return Err(Error::InvalidGraph(format!("road {i}-{j} listed twice")));
            }
            m[i * cities + j] = c;
            m[j * cities + i] = c;
        }
        TspGraph::from_matrix(cities, m)
    }

    /// Complete graph with costs from `f(i, j)` for `i < j`.
    pub fn complete(cities: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<TspGraph> {
        let mut edges = Vec::new();
        for i in 0..cities {
            for j in i + 1..cities {
                edges.push((i, j, f(i, j)));
            }
        }
        TspGraph::from_edges(cities, &edges)
    }

    pub fn with_coordinates(mut self, coordinates: Vec<[f64; 2]>) -> Result<TspGraph> {
        if coordinates.len() != self.cities {
            return Err(Error::InvalidGraph(format!(
                "{} coordinates for {} cities",
                coordinates.len(),
                self.cities
            )));
        }
        self.coordinates = Some(coordinates);
        Ok(self)
    }

    pub fn cities(&self) -> usize {
        self.cities
    }

    pub fn cost(&self, i: usize, j: usize) -> f64 {
        self.costs[i * self.cities + j]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.cost(i, j).is_finite()
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.cities).filter(|&j| self.has_edge(i, j)).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.cities).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Undirected edges `(i, j, cost)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.cities {
            for j in i + 1..self.cities {
                if self.has_edge(i, j) {
                    out.push((i, j, self.cost(i, j)));
                }
            }
        }
        out
    }

    /// Largest finite road cost.
    pub fn max_cost(&self) -> f64 {
        self.edges().iter().map(|e| e.2).fold(0.0, f64::max)
    }

    pub fn coordinates(&self) -> Option<&[[f64; 2]]> {
        self.coordinates.as_deref()
    }
}

/// Sorted neighbour list `P_i` for every city.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyLists {
    lists: Vec<Vec<usize>>,
}

impl AdjacencyLists {
    /// Requires every city to have at least two roads.
    pub fn build(graph: &TspGraph) -> Result<AdjacencyLists> {
        let lists: Vec<Vec<usize>> = (0..graph.cities())
            .map(|i| (0..graph.cities()).filter(|&j| graph.has_edge(i, j)).collect())
            .collect();
        for (city, l) in lists.iter().enumerate() {
            if l.len() < 2 {
                return Err(Error::DegreeTooSmall { city, degree: l.len() });
            }
        }
        Ok(AdjacencyLists { lists })
    }

    pub fn cities(&self) -> usize {
        self.lists.len()
    }

    pub fn get(&self, city: usize) -> &[usize] {
        &self.lists[city]
    }

    pub fn max_degree(&self) -> usize {
        self.lists.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Successor of `city` under `choice`, if the choice is in range.
    pub fn successor(&self, city: usize, choice: u32) -> Option<usize> {
        self.lists[city].get(choice as usize).copied()
    }

    /// Index of `next` in `city`'s list.
    pub fn choice_for(&self, city: usize, next: usize) -> Option<u32> {
        self.lists[city].iter().position(|&j| j == next).map(|p| p as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_lists_skip_self() {
        let g = TspGraph::complete(6, |i, j| (i + j) as f64).unwrap();
        let l = AdjacencyLists::build(&g).unwrap();
        assert_eq!(l.get(0), [1, 2, 3, 4, 5]);
        assert_eq!(l.get(3), [0, 1, 2, 4, 5]);
        assert_eq!(g.edges().len(), 15);
        assert_eq!(g.max_degree(), 5);
    }

    #[test]
    fn degree_one_city_rejected() {
        let g = TspGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(AdjacencyLists::build(&g), Err(Error::DegreeTooSmall { city: 3, degree: 1 }));
    }

    #[test]
    fn invalid_graphs() {
        assert!(TspGraph::from_edges(2, &[(0, 1, 1.0)]).is_err());
        assert!(TspGraph::from_edges(3, &[(0, 0, 1.0)]).is_err());
        assert!(TspGraph::from_edges(3, &[(0, 1, -1.0)]).is_err());
        assert!(TspGraph::from_edges(3, &[(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        let mut m = alloc::vec![1.0; 9];
        m[1] = 2.0;
        assert!(TspGraph::from_matrix(3, m).is_err());
    }
}
