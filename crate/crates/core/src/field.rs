//! The concentration lattice shared by agents and stimuli.
//!
//! Agents deposit trail into it, sources project attractant (positive) or
//! repellent (negative) values into it, and every step it is smoothed by a
//! kernel-mean filter followed by multiplicative decay.

use serde::{Deserialize, Serialize};

/// How cells outside the lattice behave during diffusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Out-of-bounds neighbours contribute zero; mass leaks across the border.
    #[default]
    Absorbing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionParams {
    /// Side of the square averaging window; odd and at least 3.
    pub kernel: usize,
    /// Fraction of concentration lost per step, in `[0, 1)`.
    pub decay: f64,
    pub boundary: Boundary,
}

impl Default for DiffusionParams {
    fn default() -> Self {
        Self {
            kernel: 3,
            decay: 0.1,
            boundary: Boundary::Absorbing,
        }
    }
}

impl DiffusionParams {
    pub fn is_valid(&self) -> bool {
        self.kernel >= 3 && self.kernel % 2 == 1 && (0.0..1.0).contains(&self.decay)
    }
}

/// Real-valued concentration per lattice cell, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrailField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl TrailField {
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "lattice dimensions must be positive");
        Self {
            width,
            height,
            values: vec![0.0; width * height],
        }
    }

    pub fn from_values(width: usize, height: usize, values: Vec<f64>) -> Self {
        assert!(width > 0 && height > 0, "lattice dimensions must be positive");
        assert_eq!(values.len(), width * height, "value count must match dimensions");
        Self {
            width,
            height,
            values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[self.index(x, y)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: f64) {
        let i = self.index(x, y);
        self.values[i] = value;
    }

    #[inline]
    pub fn add(&mut self, x: usize, y: usize, amount: f64) {
        let i = self.index(x, y);
        self.values[i] += amount;
    }

    /// Maps a continuous coordinate to its cell, or `None` when it falls
    /// outside the lattice.
    #[inline]
    pub fn cell_of(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        cell_of(self.width, self.height, x, y)
    }

    /// Adds `amount` to the cell containing `(x, y)`.
    ///
    /// Panics if the coordinate is outside the lattice; callers own that check.
    pub fn deposit(&mut self, x: f64, y: f64, amount: f64) {
        let (cx, cy) = self
            .cell_of(x, y)
            .unwrap_or_else(|| panic!("deposit at ({x}, {y}) is outside the lattice"));
        self.add(cx, cy, amount);
    }

    /// Reads the cell at `sensor_offset` cells from `(x, y)` along
    /// `heading + angle_offset` (degrees). Off-lattice sensors read zero.
    pub fn sample_sensor(
        &self,
        x: f64,
        y: f64,
        heading: f64,
        angle_offset: f64,
        sensor_offset: f64,
    ) -> f64 {
        let (sin, cos) = (heading + angle_offset).to_radians().sin_cos();
        match self.cell_of(x + sensor_offset * cos, y + sensor_offset * sin) {
            Some((cx, cy)) => self.get(cx, cy),
            None => 0.0,
        }
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// One diffusion step: kernel-mean with zero padding, then decay.
    ///
    /// Reads only `self`; the result is written into a fresh buffer.
    pub fn diffuse(&self, params: &DiffusionParams) -> TrailField {
        let mut out = TrailField::new(self.width, self.height);
        self.diffuse_into(params, &mut out, &mut Vec::new());
        out
    }

    /// Same as [`TrailField::diffuse`] but reuses caller-owned buffers.
    pub fn diffuse_into(&self, params: &DiffusionParams, out: &mut TrailField, scratch: &mut Vec<f64>) {
        let (w, h) = (self.width, self.height);
        assert_eq!((out.width, out.height), (w, h));
        let r = params.kernel / 2;
        let scale = (1.0 - params.decay) / (params.kernel * params.kernel) as f64;

        // Horizontal window sums.
        scratch.clear();
        scratch.resize(w * h, 0.0);
        for y in 0..h {
            let row = &self.values[y * w..(y + 1) * w];
            let dst = &mut scratch[y * w..(y + 1) * w];
            for (x, d) in dst.iter_mut().enumerate() {
                let lo = x.saturating_sub(r);
                let hi = (x + r).min(w - 1);
                *d = row[lo..=hi].iter().sum();
            }
        }
        // Vertical window sums of the horizontal sums.
        for y in 0..h {
            let lo = y.saturating_sub(r);
            let hi = (y + r).min(h - 1);
            for x in 0..w {
                let mut s = 0.0;
                for yy in lo..=hi {
                    s += scratch[yy * w + x];
                }
                out.values[y * w + x] = s * scale;
            }
        }
    }
}

#[inline]
pub(crate) fn cell_of(width: usize, height: usize, x: f64, y: f64) -> Option<(usize, usize)> {
    if !(x >= 0.0 && y >= 0.0) {
        return None;
    }
    let (fx, fy) = (x.floor(), y.floor());
    if fx >= width as f64 || fy >= height as f64 {
        return None;
    }
    Some((fx as usize, fy as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn no_decay() -> DiffusionParams {
        DiffusionParams {
            decay: 0.0,
            ..DiffusionParams::default()
        }
    }

    #[test]
    fn zero_field_is_a_fixed_point() {
        let f = TrailField::new(16, 12);
        assert_eq!(f.diffuse(&DiffusionParams::default()), f);
    }

    #[test]
    fn impulse_spreads_evenly_over_its_neighbourhood() {
        let mut f = TrailField::new(11, 11);
        f.set(5, 5, 9.0);
        let d = f.diffuse(&no_decay());
        for y in 0..11 {
            for x in 0..11 {
                let expected = if (4..=6).contains(&x) && (4..=6).contains(&y) { 1.0 } else { 0.0 };
                assert_eq!(d.get(x, y), expected, "cell ({x},{y})");
            }
        }
    }

    #[test]
    fn uniform_interior_decays() {
        let f = TrailField::from_values(20, 20, vec![4.0; 400]);
        let d = f.diffuse(&DiffusionParams::default());
        for y in 1..19 {
            for x in 1..19 {
                assert!((d.get(x, y) - 3.6).abs() < 1e-12);
            }
        }
        // Corners lose the 5 out-of-bounds neighbours.
        assert!((d.get(0, 0) - 4.0 * 4.0 / 9.0 * 0.9).abs() < 1e-12);
    }

    #[test]
    fn wider_kernel_averages_more_cells() {
        let mut f = TrailField::new(15, 15);
        f.set(7, 7, 25.0);
        let p = DiffusionParams {
            kernel: 5,
            decay: 0.0,
            ..Default::default()
        };
        let d = f.diffuse(&p);
        assert_eq!(d.get(5, 9), 1.0);
        assert_eq!(d.get(4, 7), 0.0);
        assert!((d.total() - 25.0).abs() < 1e-12);
    }

    #[test]
    fn deposit_uses_floor_and_accumulates() {
        let mut f = TrailField::new(8, 8);
        f.deposit(3.0, 3.0, 5.0);
        assert_eq!(f.get(3, 3), 5.0);
        f.deposit(3.9, 3.1, 5.0);
        assert_eq!(f.get(3, 3), 10.0);
        assert_eq!(f.total(), 10.0);
    }

    #[test]
    #[should_panic(expected = "outside the lattice")]
    fn deposit_out_of_bounds_panics() {
        TrailField::new(4, 4).deposit(4.0, 0.0, 1.0);
    }

    #[test]
    fn sensor_placement() {
        let mut f = TrailField::new(32, 32);
        f.set(19, 10, 7.0);
        f.set(10, 10, 2.0);
        assert_eq!(f.sample_sensor(10.5, 10.5, 0.0, 0.0, 9.0), 7.0);
        // 90 degrees points along +y.
        f.set(10, 19, 3.0);
        assert_eq!(f.sample_sensor(10.5, 10.5, 45.0, 45.0, 9.0), 3.0);
        assert_eq!(f.sample_sensor(10.5, 10.5, 123.0, -17.0, 0.0), 2.0);
        assert_eq!(f.sample_sensor(30.5, 10.5, 0.0, 0.0, 9.0), 0.0);
        assert_eq!(f.sample_sensor(1.5, 1.5, 180.0, 0.0, 9.0), 0.0);
    }

    #[test]
    fn totals() {
        assert_eq!(TrailField::new(3, 3).total(), 0.0);
        let mut f = TrailField::new(3, 3);
        f.set(1, 2, 7.5);
        assert_eq!(f.total(), 7.5);
        assert_eq!(TrailField::from_values(2, 2, vec![1.0, 2.0, 3.0, 4.0]).total(), 10.0);
    }

    #[test]
    fn decay_validation() {
        assert!(DiffusionParams::default().is_valid());
        let bad = |kernel, decay| DiffusionParams {
            kernel,
            decay,
            boundary: Boundary::Absorbing,
        };
        assert!(!bad(4, 0.1).is_valid());
        assert!(!bad(1, 0.1).is_valid());
        assert!(!bad(3, 1.0).is_valid());
        assert!(!bad(3, -0.1).is_valid());
    }

    fn interior_field() -> impl Strategy<Value = TrailField> {
        (3usize..20, 3usize..20)
            .prop_flat_map(|(w, h)| {
                (Just(w), Just(h), proptest::collection::vec(-100.0f64..100.0, w * h))
            })
            .prop_map(|(w, h, mut v)| {
                for y in 0..h {
                    for x in 0..w {
                        if x == 0 || y == 0 || x == w - 1 || y == h - 1 {
                            v[y * w + x] = 0.0;
                        }
                    }
                }
                TrailField::from_values(w, h, v)
            })
    }

    proptest! {
        #[test]
        fn mass_scales_by_one_minus_decay(f in interior_field(), decay in 0.0f64..0.99) {
            let p = DiffusionParams { decay, ..Default::default() };
            let before = f.total();
            let after = f.diffuse(&p).total();
            let scale = f.values().iter().map(|v| v.abs()).sum::<f64>().max(1.0);
            prop_assert!((after - (1.0 - decay) * before).abs() <= 1e-9 * scale);
        }

        #[test]
        fn diffusion_is_linear(
            f in proptest::collection::vec(-50.0f64..50.0, 64),
            g in proptest::collection::vec(-50.0f64..50.0, 64),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
        ) {
            let p = DiffusionParams::default();
            let ff = TrailField::from_values(8, 8, f.clone());
            let gg = TrailField::from_values(8, 8, g.clone());
            let combo: Vec<f64> = f.iter().zip(&g).map(|(x, y)| a * x + b * y).collect();
            let lhs = TrailField::from_values(8, 8, combo).diffuse(&p);
            let (df, dg) = (ff.diffuse(&p), gg.diffuse(&p));
            for i in 0..64 {
                let rhs = a * df.values()[i] + b * dg.values()[i];
                prop_assert!((lhs.values()[i] - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            }
        }

        #[test]
        fn diffusion_never_expands(v in proptest::collection::vec(-1e3f64..1e3, 100)) {
            let f = TrailField::from_values(10, 10, v);
            let d = f.diffuse(&DiffusionParams { decay: 0.0, ..Default::default() });
            prop_assert!(d.max_abs() <= f.max_abs() + 1e-12);
            prop_assert!(d.is_finite());
        }
    }
}
