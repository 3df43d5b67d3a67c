use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::mask::BinaryMask;
use super::skeleton::{skeleton_length, skeletonize};
use crate::stimuli::StimulusSource;

const N8: [(i64, i64); 8] = [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];
const N4: [(i64, i64); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];

/// Labels 8-connected foreground components. Returns per-cell labels
/// (`0` = background, components numbered from 1) and the component count.
pub fn label_components(mask: &BinaryMask) -> (Vec<u32>, usize) {
    flood_labels(mask, true, &N8)
}

fn flood_labels(mask: &BinaryMask, foreground: bool, nbrs: &[(i64, i64)]) -> (Vec<u32>, usize) {
    let (w, h) = (mask.width(), mask.height());
    let mut labels = vec![0u32; w * h];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..w * h {
        if mask.bits()[start] != foreground || labels[start] != 0 {
            continue;
        }
        next += 1;
        labels[start] = next;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            let (x, y) = ((i % w) as i64, (i / w) as i64);
            for (dx, dy) in nbrs {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if mask.bits()[j] == foreground && labels[j] == 0 {
                    labels[j] = next;
                    queue.push_back(j);
                }
            }
        }
    }
    (labels, next as usize)
}

/// Background components (4-connected) that do not touch the lattice border.
pub fn count_holes(mask: &BinaryMask) -> usize {
    let (w, h) = (mask.width(), mask.height());
    let (labels, n) = flood_labels(mask, false, &N4);
    let mut touches = vec![false; n + 1];
    for y in 0..h {
        for x in 0..w {
            if x == 0 || y == 0 || x == w - 1 || y == h - 1 {
                touches[labels[y * w + x] as usize] = true;
            }
        }
    }
    (1..=n).filter(|&l| !touches[l]).count()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkNode {
    pub id: String,
    pub position: [f64; 2],
    /// Whether any coverage cell of the source is set in the mask.
    pub attached: bool,
    /// Mask component holding the node, if attached.
    pub component: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkGraph {
    pub nodes: Vec<NetworkNode>,
    /// Components that contain at least one attached node.
    pub connected_components: usize,
    /// All foreground components of the mask.
    pub mask_components: usize,
    pub holes: usize,
    pub skeleton_length: f64,
}

impl NetworkGraph {
    /// Every node attached and all of them in a single component.
    pub fn all_nodes_connected(&self) -> bool {
        !self.nodes.is_empty() && self.nodes.iter().all(|n| n.attached) && self.connected_components == 1
    }

    /// Connected over its nodes and free of cycles.
    pub fn is_tree(&self) -> bool {
        self.all_nodes_connected() && self.holes == 0
    }
}

pub fn topology(mask: &BinaryMask, sources: &[StimulusSource]) -> NetworkGraph {
    let (w, h) = (mask.width(), mask.height());
    let (labels, mask_components) = label_components(mask);
    let mut nodes = Vec::with_capacity(sources.len());
    for s in sources {
        let component = s
            .footprint
            .coverage_cells(s.center, w, h)
            .into_iter()
            .map(|(x, y)| labels[y * w + x])
            .filter(|&l| l != 0)
            .min();
        nodes.push(NetworkNode {
            id: s.id.clone(),
            position: s.center,
            attached: component.is_some(),
            component,
        });
    }
    // A footprint can straddle two components; merge by counting the
    // distinct components touched by any node footprint.
    let mut touched: Vec<u32> = sources
        .iter()
        .flat_map(|s| s.footprint.coverage_cells(s.center, w, h))
        .map(|(x, y)| labels[y * w + x])
        .filter(|&l| l != 0)
        .collect();
    touched.sort_unstable();
    touched.dedup();
    NetworkGraph {
        nodes,
        connected_components: touched.len(),
        mask_components,
        holes: count_holes(mask),
        skeleton_length: skeleton_length(&skeletonize(mask)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stimuli::SourceKind;

    fn disk(w: usize, h: usize, cx: f64, cy: f64, r: f64) -> BinaryMask {
        BinaryMask::from_fn(w, h, |x, y| {
            let (dx, dy) = (x as f64 + 0.5 - cx, y as f64 + 0.5 - cy);
            dx * dx + dy * dy <= r * r
        })
    }

    fn ring(w: usize, h: usize, cx: f64, cy: f64, r_in: f64, r_out: f64) -> BinaryMask {
        BinaryMask::from_fn(w, h, |x, y| {
            let (dx, dy) = (x as f64 + 0.5 - cx, y as f64 + 0.5 - cy);
            let d2 = dx * dx + dy * dy;
            d2 <= r_out * r_out && d2 > r_in * r_in
        })
    }

    fn src(id: &str, x: f64, y: f64) -> StimulusSource {
        StimulusSource::new(id, SourceKind::Attractant, [x, y], 1.0)
    }

    #[test]
    fn solid_disk_holding_all_sources() {
        let m = disk(40, 40, 20.0, 20.0, 12.0);
        let g = topology(&m, &[src("a", 15.0, 20.0), src("b", 25.0, 22.0), src("c", 20.0, 12.0)]);
        assert_eq!(g.connected_components, 1);
        assert_eq!(g.holes, 0);
        assert!(g.is_tree());
    }

    #[test]
    fn annuli_count_holes() {
        assert_eq!(count_holes(&ring(40, 40, 20.0, 20.0, 5.0, 9.0)), 1);
        assert_eq!(count_holes(&disk(40, 40, 20.0, 20.0, 9.0)), 0);
        let mut nested = ring(60, 60, 30.0, 30.0, 4.0, 8.0);
        let outer = ring(60, 60, 30.0, 30.0, 14.0, 20.0);
        for y in 0..60 {
            for x in 0..60 {
                if outer.get(x, y) {
                    nested.set(x, y, true);
                }
            }
        }
        assert_eq!(count_holes(&nested), 2);
        // Background touching the border is not a hole.
        let u = BinaryMask::from_ascii(&["#...#", "#...#", "#####"]);
        assert_eq!(count_holes(&u), 0);
    }

    #[test]
    fn separate_blobs_with_sources() {
        let mut m = disk(60, 30, 12.0, 15.0, 6.0);
        let other = disk(60, 30, 45.0, 15.0, 6.0);
        for y in 0..30 {
            for x in 0..60 {
                if other.get(x, y) {
                    m.set(x, y, true);
                }
            }
        }
        let g = topology(&m, &[src("a", 12.0, 15.0), src("b", 45.0, 15.0), src("c", 30.0, 5.0)]);
        assert_eq!(g.connected_components, 2);
        assert_eq!(g.mask_components, 2);
        assert!(!g.nodes[2].attached);
        assert!(!g.all_nodes_connected());
    }

    #[test]
    fn diagonal_contact_is_connected() {
        let m = BinaryMask::from_ascii(&["#..", ".#.", "..#"]);
        assert_eq!(label_components(&m).1, 1);
    }
}
