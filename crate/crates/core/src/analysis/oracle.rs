//! Exact geometric references: Euclidean minimum spanning trees and raster
//! (weighted) Voronoi labelings.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("at least one point is required")]
    Empty,
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("site weights must be positive and finite (site {0})")]
    BadWeight(usize),
    #[error("{sites} sites but {weights} weights")]
    WeightCount { sites: usize, weights: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanningTree {
    /// Edges as `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub total_length: f64,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Exact Euclidean MST by Prim's greedy growth over the complete graph.
pub fn mst_oracle(points: &[[f64; 2]]) -> Result<SpanningTree, OracleError> {
    let n = points.len();
    if n == 0 {
        return Err(OracleError::Empty);
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(OracleError::Duplicate(i, j));
            }
        }
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    in_tree[0] = true;
    for j in 1..n {
        best[j] = (dist(points[0], points[j]), 0);
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut total_length = 0.0;
    for _ in 1..n {
        let (next, &(d, parent)) = best
            .iter()
            .enumerate()
            .filter(|(j, _)| !in_tree[*j])
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
            .expect("a vertex remains");
        in_tree[next] = true;
        total_length += d;
        edges.push((parent.min(next), parent.max(next)));
        for j in 0..n {
            if !in_tree[j] {
                let dj = dist(points[next], points[j]);
                if dj < best[j].0 {
                    best[j] = (dj, next);
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(SpanningTree { edges, total_length })
}

/// Per-cell nearest-site labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelGrid {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<usize>,
}

impl LabelGrid {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.labels[y * self.width + x]
    }

    /// Cells with a 4-neighbour carrying a different label.
    pub fn boundary(&self) -> Vec<bool> {
        let (w, h) = (self.width, self.height);
        let mut out = vec![false; w * h];
        for y in 0..h {
            for x in 0..w {
                let l = self.get(x, y);
                out[y * w + x] = (x > 0 && self.get(x - 1, y) != l)
                    || (x + 1 < w && self.get(x + 1, y) != l)
                    || (y > 0 && self.get(x, y - 1) != l)
                    || (y + 1 < h && self.get(x, y + 1) != l);
            }
        }
        out
    }
}

/// Labels each cell centre with the site minimising `distance / weight`;
/// ties go to the lowest index. Equal weights give the classical diagram.
pub fn weighted_voronoi_oracle(
    sites: &[[f64; 2]],
    weights: &[f64],
    width: usize,
    height: usize,
) -> Result<LabelGrid, OracleError> {
    if sites.is_empty() {
        return Err(OracleError::Empty);
    }
    if sites.len() != weights.len() {
        return Err(OracleError::WeightCount {
            sites: sites.len(),
            weights: weights.len(),
        });
    }
    if let Some(i) = weights.iter().position(|w| !(*w > 0.0 && w.is_finite())) {
        return Err(OracleError::BadWeight(i));
    }
    let mut labels = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let c = [x as f64 + 0.5, y as f64 + 0.5];
            let mut best = (f64::INFINITY, 0);
            for (i, (&s, &w)) in sites.iter().zip(weights).enumerate() {
                let d = dist(c, s) / w;
                if d < best.0 {
                    best = (d, i);
                }
            }
            labels.push(best.1);
        }
    }
    Ok(LabelGrid { width, height, labels })
}

pub fn voronoi_oracle(sites: &[[f64; 2]], width: usize, height: usize) -> Result<LabelGrid, OracleError> {
    weighted_voronoi_oracle(sites, &vec![1.0; sites.len()], width, height)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let t = mst_oracle(&[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        assert_eq!(t.edges, vec![(0, 1)]);
        assert_eq!(t.total_length, 5.0);
    }

    #[test]
    fn unit_square() {
        let t = mst_oracle(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(t.edges.len(), 3);
        assert!((t.total_length - 3.0).abs() < 1e-12);
    }

    #[test]
    fn collinear() {
        let t = mst_oracle(&[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]).unwrap();
        assert_eq!(t.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(t.total_length, 3.0);
    }

    #[test]
    fn single_point_and_errors() {
        let t = mst_oracle(&[[2.0, 2.0]]).unwrap();
        assert!(t.edges.is_empty());
        assert_eq!(t.total_length, 0.0);
        assert_eq!(mst_oracle(&[]), Err(OracleError::Empty));
        assert_eq!(
            mst_oracle(&[[1.0, 1.0], [2.0, 2.0], [1.0, 1.0]]),
            Err(OracleError::Duplicate(0, 2))
        );
    }

    #[test]
    fn single_site_owns_everything() {
        let g = voronoi_oracle(&[[3.0, 3.0]], 10, 8).unwrap();
        assert!(g.labels.iter().all(|&l| l == 0));
        assert!(g.boundary().iter().all(|b| !b));
    }

    #[test]
    fn equal_weights_split_on_the_bisector() {
        let g = voronoi_oracle(&[[10.0, 10.0], [30.0, 10.0]], 40, 20).unwrap();
        for y in 0..20 {
            for x in 0..40 {
                assert_eq!(g.get(x, y), if x < 20 { 0 } else { 1 }, "({x},{y})");
            }
        }
    }

    #[test]
    fn weighted_boundary_is_the_apollonius_circle() {
        let sites = [[20.0, 30.0], [40.0, 30.0]];
        let g = weighted_voronoi_oracle(&sites, &[2.0, 1.0], 60, 60).unwrap();
        for y in 0..60 {
            for x in 0..60 {
                let c = [x as f64 + 0.5, y as f64 + 0.5];
                let inside = dist(c, sites[1]) < dist(c, sites[0]) / 2.0;
                assert_eq!(g.get(x, y) == 1, inside, "({x},{y})");
            }
        }
        // Circle d1 = 2 d2 around site 1 spans x in (33.33, 60) on the axis.
        assert_eq!(g.get(58, 30), 1);
        assert_eq!(g.get(33, 30), 1);
        assert_eq!(g.get(32, 30), 0);
    }

    #[test]
    fn weight_errors() {
        assert_eq!(weighted_voronoi_oracle(&[], &[], 4, 4), Err(OracleError::Empty));
        assert_eq!(
            weighted_voronoi_oracle(&[[1.0, 1.0]], &[0.0], 4, 4),
            Err(OracleError::BadWeight(0))
        );
    }
}
