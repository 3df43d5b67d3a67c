use serde::{Deserialize, Serialize};

use crate::swarm::OccupancyGrid;

/// One bit per lattice cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::new(width, height);
        for y in 0..height {
            for x in 0..width {
                m.bits[y * width + x] = f(x, y);
            }
        }
        m
    }

    /// Builds a mask from rows of text where `#` is set.
    pub fn from_ascii(rows: &[&str]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        Self::from_fn(width, height, |x, y| rows[y].as_bytes()[x] == b'#')
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    /// Out-of-bounds reads are clear.
    #[inline]
    pub fn get_signed(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height && self.get(x as usize, y as usize)
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Sets every cell within Chebyshev distance `radius` of a set cell.
    pub fn dilate(&self, radius: usize) -> BinaryMask {
        let counts = self.window_counts(radius);
        BinaryMask {
            width: self.width,
            height: self.height,
            bits: counts.into_iter().map(|c| c > 0).collect(),
        }
    }

    /// Keeps cells whose whole `(2r+1)` square lies inside the mask; cells
    /// beyond the lattice count as set.
    pub fn erode(&self, radius: usize) -> BinaryMask {
        let inverted = BinaryMask {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|b| !b).collect(),
        };
        let counts = inverted.window_counts(radius);
        BinaryMask {
            width: self.width,
            height: self.height,
            bits: counts.into_iter().map(|c| c == 0).collect(),
        }
    }

    /// Morphological closing: dilation followed by erosion, computed on a
    /// zero-padded copy so nothing is added along the lattice border.
    pub fn close(&self, radius: usize) -> BinaryMask {
        if radius == 0 {
            return self.clone();
        }
        let (w, h) = (self.width, self.height);
        let padded = BinaryMask::from_fn(w + 2 * radius, h + 2 * radius, |x, y| {
            x >= radius && y >= radius && x < w + radius && y < h + radius && self.get(x - radius, y - radius)
        });
        let closed = padded.dilate(radius).erode(radius);
        BinaryMask::from_fn(w, h, |x, y| closed.get(x + radius, y + radius))
    }

    /// Number of set cells in the clipped square of the given radius around
    /// every cell, via a summed-area table.
    fn window_counts(&self, radius: usize) -> Vec<u32> {
        let (w, h) = (self.width, self.height);
        let mut sat = vec![0u32; (w + 1) * (h + 1)];
        for y in 0..h {
            let mut row = 0u32;
            for x in 0..w {
                row += self.bits[y * w + x] as u32;
                sat[(y + 1) * (w + 1) + x + 1] = sat[y * (w + 1) + x + 1] + row;
            }
        }
        let mut out = vec![0u32; w * h];
        for y in 0..h {
            let (y0, y1) = (y.saturating_sub(radius), (y + radius + 1).min(h));
            for x in 0..w {
                let (x0, x1) = (x.saturating_sub(radius), (x + radius + 1).min(w));
                out[y * w + x] =
                    sat[y1 * (w + 1) + x1] + sat[y0 * (w + 1) + x0] - sat[y0 * (w + 1) + x1] - sat[y1 * (w + 1) + x0];
            }
        }
        out
    }
}

/// Cell set iff it holds an agent.
pub fn occupancy_mask(occupancy: &OccupancyGrid) -> BinaryMask {
    BinaryMask::from_fn(occupancy.width(), occupancy.height(), |x, y| occupancy.is_occupied(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occupancy_bits() {
        let mut occ = OccupancyGrid::new(6, 5);
        assert_eq!(occupancy_mask(&occ).count(), 0);
        occ.place(2, 3, 0);
        let m = occupancy_mask(&occ);
        assert_eq!(m.count(), 1);
        assert!(m.get(2, 3));
        for i in 0..4 {
            occ.place(i, 0, 10 + i as u64);
        }
        assert_eq!(occupancy_mask(&occ).count(), 5);
    }

    #[test]
    fn closing_fills_gaps_between_neighbours() {
        let m = BinaryMask::from_ascii(&[
            "..........",
            ".#.#.#.#..",
            "..........",
            ".#.#.#.#..",
            "..........",
        ]);
        let c = m.close(1);
        assert!(m.is_subset_of(&c));
        for x in 1..=7 {
            assert!(c.get(x, 1) && c.get(x, 2) && c.get(x, 3));
        }
        assert!(!c.get(0, 0));
        assert!(!c.get(8, 2));
    }

    #[test]
    fn dilate_and_erode_are_dual_on_interior_blobs() {
        let m = BinaryMask::from_fn(20, 20, |x, y| (5..12).contains(&x) && (6..10).contains(&y));
        assert_eq!(m.dilate(2).erode(2), m);
        assert_eq!(m.erode(1).count(), 5 * 2);
    }
}
