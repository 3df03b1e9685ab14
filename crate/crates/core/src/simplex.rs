//! Primal network simplex for the balanced transportation problem.
//!
//! The basis is a spanning tree of the bipartite graph rows ∪ columns with
//! `m + k − 1` cells. The initial tree comes from the north-west corner rule;
//! pivots use Dantzig's rule (first most negative reduced cost in row-major
//! order) and fall back to Bland's rule after a run of degenerate pivots,
//! which rules out cycling.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Optimal basic solution with the dual potentials `u_i + v_j ≤ c_ij`.
#[derive(Clone, Debug)]
pub(crate) struct BasicSolution {
    pub flow: Vec<f64>,
    pub row_potential: Vec<f64>,
    pub col_potential: Vec<f64>,
}

struct Tree {
    rows: usize,
    cols: usize,
    basic: Vec<bool>,
    flow: Vec<f64>,
}

impl Tree {
    fn north_west(supply: &[f64], demand: &[f64]) -> Tree {
        let (rows, cols) = (supply.len(), demand.len());
        let mut a = supply.to_vec();
        let mut b = demand.to_vec();
        let mut basic = vec![false; rows * cols];
        let mut flow = vec![0.0; rows * cols];
        let (mut i, mut j) = (0, 0);
        loop {
            let x = a[i].min(b[j]).max(0.0);
            let row_exhausted = a[i] <= b[j];
            flow[i * cols + j] = x;
            basic[i * cols + j] = true;
            a[i] -= x;
            b[j] -= x;
            if i + 1 == rows && j + 1 == cols {
                break;
            }
            if i + 1 == rows {
                j += 1;
            } else if j + 1 == cols || row_exhausted {
                i += 1;
            } else {
                j += 1;
            }
        }
        Tree {
            rows,
            cols,
            basic,
            flow,
        }
    }

    /// Adjacency of the basis tree; nodes `0..rows` are rows, the rest columns.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.rows + self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.basic[i * self.cols + j] {
                    adj[i].push(self.rows + j);
                    adj[self.rows + j].push(i);
                }
            }
        }
        adj
    }

    fn potentials(&self, cost: &[f64], adj: &[Vec<usize>]) -> (Vec<f64>, Vec<f64>) {
        let mut pot = vec![f64::NAN; self.rows + self.cols];
        pot[0] = 0.0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            for &next in &adj[node] {
                if !pot[next].is_nan() {
                    continue;
                }
                let (i, j) = if node < self.rows {
                    (node, next - self.rows)
                } else {
                    (next, node - self.rows)
                };
                let c = cost[i * self.cols + j];
                pot[next] = c - pot[node];
                queue.push_back(next);
            }
        }
        let cols = pot.split_off(self.rows);
        (pot, cols)
    }

    /// Cells on the tree path from column `j` back to row `i`, in order.
    fn path(&self, adj: &[Vec<usize>], i: usize, j: usize) -> Vec<usize> {
        let n = self.rows + self.cols;
        let mut parent = vec![usize::MAX; n];
        parent[i] = i;
        let mut queue = VecDeque::from([i]);
        while let Some(node) = queue.pop_front() {
            if node == self.rows + j {
                break;
            }
            for &next in &adj[node] {
                if parent[next] == usize::MAX {
                    parent[next] = node;
                    queue.push_back(next);
                }
            }
        }
        let mut cells = Vec::new();
        let mut node = self.rows + j;
        while node != i {
            let prev = parent[node];
            let cell = if node < self.rows {
                node * self.cols + (prev - self.rows)
            } else {
                prev * self.cols + (node - self.rows)
            };
            cells.push(cell);
            node = prev;
        }
        cells
    }
}

/// Solves `min Σ c_ij x_ij` subject to row sums `supply`, column sums `demand`, `x ≥ 0`.
///
/// `cost` is row-major `supply.len() × demand.len()`. Totals must agree up to
/// rounding; any residual imbalance lands in the last basic cell.
pub(crate) fn solve(supply: &[f64], demand: &[f64], cost: &[f64]) -> Result<BasicSolution> {
    let (rows, cols) = (supply.len(), demand.len());
    debug_assert_eq!(cost.len(), rows * cols);
    if rows == 0 || cols == 0 {
        return Err(Error::Solver("empty transportation problem".into()));
    }
    let scale = cost.iter().fold(1.0f64, |acc, c| acc.max(c.abs()));
    let eps = 1e-13 * scale;
    let mut tree = Tree::north_west(supply, demand);

    let max_iter = 10_000 + 50 * rows * cols;
    let bland_after = 20 * (rows + cols);
    let mut degenerate_run = 0usize;
    let mut use_bland = false;

    for _ in 0..max_iter {
        let adj = tree.adjacency();
        let (u, v) = tree.potentials(cost, &adj);

        let mut entering = None;
        let mut best = -eps;
        'scan: for i in 0..rows {
            for j in 0..cols {
                let cell = i * cols + j;
                if tree.basic[cell] {
                    continue;
                }
                let reduced = cost[cell] - u[i] - v[j];
                if reduced < best {
                    entering = Some((i, j));
                    if use_bland {
                        break 'scan;
                    }
                    best = reduced;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            return Ok(BasicSolution {
                flow: tree.flow,
                row_potential: u,
                col_potential: v,
            });
        };

        let path = tree.path(&adj, ei, ej);
        // Path cells alternate −, +, −, … starting next to the entering column.
        let mut theta = f64::INFINITY;
        let mut leaving = usize::MAX;
        for (k, &cell) in path.iter().enumerate() {
            if k % 2 == 0 {
                let f = tree.flow[cell];
                if f < theta || (f == theta && cell < leaving) {
                    theta = f;
                    leaving = cell;
                }
            }
        }
        for (k, &cell) in path.iter().enumerate() {
            if k % 2 == 0 {
                tree.flow[cell] -= theta;
            } else {
                tree.flow[cell] += theta;
            }
        }
        let entering_cell = ei * cols + ej;
        tree.flow[entering_cell] = theta;
        tree.flow[leaving] = 0.0;
        tree.basic[leaving] = false;
        tree.basic[entering_cell] = true;

        if theta == 0.0 {
            degenerate_run += 1;
            if degenerate_run > bland_after {
                use_bland = true;
            }
        } else {
            degenerate_run = 0;
        }
    }
    Err(Error::Solver("network simplex iteration limit reached".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn objective(flow: &[f64], cost: &[f64]) -> f64 {
        flow.iter().zip(cost).map(|(f, c)| f * c).sum()
    }

    #[test]
    fn assignment_picks_cheaper_diagonal() {
        let cost = [1.0, 10.0, 10.0, 1.0];
        let sol = solve(&[0.5, 0.5], &[0.5, 0.5], &cost).unwrap();
        assert_eq!(sol.flow, vec![0.5, 0.0, 0.0, 0.5]);

        let cost = [10.0, 1.0, 1.0, 10.0];
        let sol = solve(&[0.5, 0.5], &[0.5, 0.5], &cost).unwrap();
        assert_eq!(sol.flow, vec![0.0, 0.5, 0.5, 0.0]);
    }

    #[test]
    fn textbook_instance() {
        // supplies 20, 30, 25; demands 10, 10, 35, 20; optimum 675 (scipy linprog)
        let cost = [
            8.0, 6.0, 10.0, 9.0, //
            9.0, 12.0, 13.0, 7.0, //
            14.0, 9.0, 16.0, 5.0,
        ];
        let sol = solve(&[20.0, 30.0, 25.0], &[10.0, 10.0, 35.0, 20.0], &cost).unwrap();
        let value = objective(&sol.flow, &cost);
        let dual: f64 = [20.0, 30.0, 25.0]
            .iter()
            .zip(&sol.row_potential)
            .map(|(a, u)| a * u)
            .sum::<f64>()
            + [10.0, 10.0, 35.0, 20.0]
                .iter()
                .zip(&sol.col_potential)
                .map(|(b, v)| b * v)
                .sum::<f64>();
        assert!((value - dual).abs() < 1e-9);
        for i in 0..3 {
            for j in 0..4 {
                assert!(sol.row_potential[i] + sol.col_potential[j] <= cost[i * 4 + j] + 1e-9);
            }
        }
        assert!((value - 675.0).abs() < 1e-9, "value {value}");
    }

    #[test]
    fn degenerate_equal_supplies() {
        let n = 6;
        let mut cost = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                cost[i * n + j] = ((i as f64) - (j as f64)).powi(2);
            }
        }
        let w = vec![1.0 / n as f64; n];
        let sol = solve(&w, &w, &cost).unwrap();
        assert!(objective(&sol.flow, &cost).abs() < 1e-15);
    }

    #[test]
    fn single_cell() {
        let sol = solve(&[2.0], &[2.0], &[3.0]).unwrap();
        assert_eq!(sol.flow, vec![2.0]);
    }
}
