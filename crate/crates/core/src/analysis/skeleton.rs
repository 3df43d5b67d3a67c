//! Zhang-Suen thinning.
//!
//! Each sub-iteration marks candidates on a snapshot as in the classic
//! algorithm, then removes them in raster order while re-checking that the
//! pixel is still a non-end point with a single run of foreground
//! neighbours. The re-check keeps 2x2 blocks and similar configurations from
//! vanishing, so 8-connected components are preserved.

use super::mask::BinaryMask;

/// Neighbours P2..P9: N, NE, E, SE, S, SW, W, NW.
const RING: [(i64, i64); 8] = [(0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1)];

fn neighbours(mask: &BinaryMask, x: usize, y: usize) -> [bool; 8] {
    let mut p = [false; 8];
    for (k, (dx, dy)) in RING.iter().enumerate() {
        p[k] = mask.get_signed(x as i64 + dx, y as i64 + dy);
    }
    p
}

fn transitions(p: &[bool; 8]) -> usize {
    (0..8).filter(|&i| !p[i] && p[(i + 1) % 8]).count()
}

fn removable(p: &[bool; 8]) -> bool {
    let b = p.iter().filter(|&&v| v).count();
    (2..=6).contains(&b) && transitions(p) == 1
}

pub fn skeletonize(mask: &BinaryMask) -> BinaryMask {
    let mut img = mask.clone();
    let (w, h) = (img.width(), img.height());
    let mut candidates = Vec::new();
    loop {
        let mut changed = false;
        for pass in 0..2 {
            candidates.clear();
            for y in 0..h {
                for x in 0..w {
                    if !img.get(x, y) {
                        continue;
                    }
                    let p = neighbours(&img, x, y);
                    if !removable(&p) {
                        continue;
                    }
                    // p[0]=N(P2) p[2]=E(P4) p[4]=S(P6) p[6]=W(P8)
                    let ok = if pass == 0 {
                        !(p[0] && p[2] && p[4]) && !(p[2] && p[4] && p[6])
                    } else {
                        !(p[0] && p[2] && p[6]) && !(p[0] && p[4] && p[6])
                    };
                    if ok {
                        candidates.push((x, y));
                    }
                }
            }
            for &(x, y) in &candidates {
                if removable(&neighbours(&img, x, y)) {
                    img.set(x, y, false);
                    changed = true;
                }
            }
        }
        if !changed {
            return img;
        }
    }
}

/// Digital length: orthogonal links count 1, diagonal links √2. A diagonal
/// link is skipped when an orthogonal path through a shared neighbour
/// already joins the two pixels.
pub fn skeleton_length(skeleton: &BinaryMask) -> f64 {
    let (w, h) = (skeleton.width() as i64, skeleton.height() as i64);
    let mut length = 0.0;
    for y in 0..h {
        for x in 0..w {
            if !skeleton.get_signed(x, y) {
                continue;
            }
            // Count each link once: look only right/down.
            if skeleton.get_signed(x + 1, y) {
                length += 1.0;
            }
            if skeleton.get_signed(x, y + 1) {
                length += 1.0;
            }
            for dx in [-1, 1] {
                if skeleton.get_signed(x + dx, y + 1)
                    && !skeleton.get_signed(x + dx, y)
                    && !skeleton.get_signed(x, y + 1)
                {
                    length += std::f64::consts::SQRT_2;
                }
            }
        }
    }
    length
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::topology::label_components;
    use proptest::prelude::*;

    #[test]
    fn single_pixel_survives() {
        let m = BinaryMask::from_ascii(&["...", ".#.", "..."]);
        assert_eq!(skeletonize(&m), m);
    }

    #[test]
    fn bar_thins_to_a_line() {
        let m = BinaryMask::from_fn(30, 9, |x, y| (5..25).contains(&x) && (3..6).contains(&y));
        let s = skeletonize(&m);
        assert!(s.is_subset_of(&m));
        for x in 0..30 {
            let col = (0..9).filter(|&y| s.get(x, y)).count();
            assert!(col <= 1, "column {x} has {col} pixels");
        }
        let n = s.count() as i64;
        assert!((n - 20).abs() <= 2, "skeleton has {n} pixels");
        assert_eq!(label_components(&s).1, 1);
    }

    #[test]
    fn two_blobs_stay_two() {
        let m = BinaryMask::from_fn(30, 20, |x, y| {
            ((2..9).contains(&x) && (2..9).contains(&y)) || ((15..27).contains(&x) && (10..16).contains(&y))
        });
        let s = skeletonize(&m);
        assert_eq!(label_components(&s).1, 2);
    }

    #[test]
    fn square_block_keeps_a_pixel() {
        let m = BinaryMask::from_ascii(&["....", ".##.", ".##.", "...."]);
        let s = skeletonize(&m);
        assert!(s.count() >= 1);
        assert_eq!(label_components(&s).1, 1);
    }

    #[test]
    fn lengths() {
        let line = BinaryMask::from_fn(12, 3, |x, y| y == 1 && x < 10);
        assert_eq!(skeleton_length(&line), 9.0);
        let diag = BinaryMask::from_fn(6, 6, |x, y| x == y);
        assert!((skeleton_length(&diag) - 5.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
        // An L corner: the diagonal shortcut is not double counted.
        let corner = BinaryMask::from_ascii(&["##", ".#"]);
        assert_eq!(skeleton_length(&corner), 2.0);
    }

    proptest! {
        #[test]
        fn thinning_preserves_components(bits in proptest::collection::vec(proptest::bool::weighted(0.55), 18 * 14)) {
            let m = BinaryMask::from_fn(18, 14, |x, y| bits[y * 18 + x]);
            let s = skeletonize(&m);
            prop_assert!(s.is_subset_of(&m));
            prop_assert_eq!(label_components(&s).1, label_components(&m).1);
        }
    }
}
