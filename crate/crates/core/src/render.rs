//! PGM frames and CSV time series.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::analysis::MetricsRecord;
use crate::field::TrailField;
use crate::swarm::OccupancyGrid;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// Stretch each frame's own min..max over the grey range.
    PerFrame,
    /// Map a fixed `[low, high]` range; values outside are clamped.
    Fixed { low: f64, high: f64 },
}

/// Maps field values to grey levels; stronger concentration is darker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameMapping {
    pub normalization: Normalization,
}

impl Default for FrameMapping {
    fn default() -> Self {
        Self {
            normalization: Normalization::PerFrame,
        }
    }
}

impl FrameMapping {
    pub fn fixed(low: f64, high: f64) -> Self {
        Self {
            normalization: Normalization::Fixed { low, high },
        }
    }

    /// Grey level for `value` given the frame's range. A degenerate range
    /// renders white.
    pub fn intensity(&self, value: f64, frame_min: f64, frame_max: f64) -> u8 {
        let (lo, hi) = match self.normalization {
            Normalization::PerFrame => (frame_min, frame_max),
            Normalization::Fixed { low, high } => (low, high),
        };
        if !(hi > lo) {
            return 255;
        }
        let t = ((hi - value.clamp(lo, hi)) / (hi - lo)).clamp(0.0, 1.0);
        (t * 255.0).round() as u8
    }
}

fn pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

pub fn encode_field_frame(field: &TrailField, mapping: &FrameMapping) -> Vec<u8> {
    let (lo, hi) = (field.min(), field.max());
    let pixels: Vec<u8> = field.values().iter().map(|&v| mapping.intensity(v, lo, hi)).collect();
    pgm(field.width(), field.height(), &pixels)
}

pub fn encode_agent_frame(occupancy: &OccupancyGrid) -> Vec<u8> {
    let (w, h) = (occupancy.width(), occupancy.height());
    let mut pixels = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            pixels.push(if occupancy.is_occupied(x, y) { 0 } else { 255 });
        }
    }
    pgm(w, h, &pixels)
}

pub fn write_field_frame(field: &TrailField, path: &Path, mapping: &FrameMapping) -> io::Result<()> {
    std::fs::write(path, encode_field_frame(field, mapping))
}

pub fn write_agent_frame(occupancy: &OccupancyGrid, path: &Path) -> io::Result<()> {
    std::fs::write(path, encode_agent_frame(occupancy))
}

/// `frame_{kind}_{step:08}.pgm`
pub fn frame_name(kind: &str, step: u64) -> String {
    format!("frame_{kind}_{step:08}.pgm")
}

/// Decodes a binary PGM written by this module.
pub fn read_pgm(bytes: &[u8]) -> Option<(usize, usize, Vec<u8>)> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return None;
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).ok()?.to_string());
    }
    pos += 1;
    if fields[0] != "P5" || fields[3] != "255" {
        return None;
    }
    let (w, h): (usize, usize) = (fields[1].parse().ok()?, fields[2].parse().ok()?);
    let pixels = bytes.get(pos..pos + w * h)?.to_vec();
    Some((w, h, pixels))
}

/// Nine significant digits, plain decimal notation.
pub fn format_decimal(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

/// CSV with a fixed column order: step, population, coverage, centroid,
/// field statistics, then `<id>_coverage` and `<id>_suppressed` per source.
/// Sources absent at a step leave their cells empty.
pub fn metrics_csv(history: &[MetricsRecord], source_ids: &[String]) -> String {
    let mut out = String::from("step,population,coverage,centroid_x,centroid_y,field_min,field_max,field_total");
    for id in source_ids {
        let _ = write!(out, ",{id}_coverage,{id}_suppressed");
    }
    out.push('\n');
    for r in history {
        let (cx, cy) = match r.centroid {
            Some([x, y]) => (format_decimal(x), format_decimal(y)),
            None => (String::new(), String::new()),
        };
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.step,
            r.population,
            format_decimal(r.coverage),
            cx,
            cy,
            format_decimal(r.field_min),
            format_decimal(r.field_max),
            format_decimal(r.field_total)
        );
        for id in source_ids {
            match r.source(id) {
                Some(s) => {
                    let _ = write!(out, ",{},{}", format_decimal(s.coverage), s.suppressed as u8);
                }
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn write_metrics_csv(history: &[MetricsRecord], source_ids: &[String], path: &Path) -> io::Result<()> {
    std::fs::write(path, metrics_csv(history, source_ids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::SourceState;

    fn pixels(bytes: &[u8]) -> Vec<u8> {
        read_pgm(bytes).unwrap().2
    }

    #[test]
    fn field_frames() {
        let constant = TrailField::from_values(3, 2, vec![4.0; 6]);
        let img = encode_field_frame(&constant, &FrameMapping::default());
        assert!(img.starts_with(b"P5\n3 2\n255\n"));
        assert_eq!(pixels(&img), vec![255; 6]);

        let two = TrailField::from_values(2, 1, vec![0.0, 10.0]);
        assert_eq!(pixels(&encode_field_frame(&two, &FrameMapping::default())), vec![255, 0]);

        let fixed = FrameMapping::fixed(0.0, 20.0);
        assert_eq!(pixels(&encode_field_frame(&two, &fixed)), vec![255, 128]);
        let over = TrailField::from_values(2, 1, vec![-5.0, 50.0]);
        assert_eq!(pixels(&encode_field_frame(&over, &fixed)), vec![255, 0]);
    }

    #[test]
    fn agent_frames() {
        let mut occ = OccupancyGrid::new(4, 4);
        assert_eq!(pixels(&encode_agent_frame(&occ)), vec![255; 16]);
        let mut id = 0;
        for y in 0..4 {
            for x in 0..4 {
                if (x + y) % 2 == 0 {
                    occ.place(x, y, id);
                    id += 1;
                }
            }
        }
        let img = pixels(&encode_agent_frame(&occ));
        for y in 0..4 {
            for x in 0..4 {
                assert_eq!(img[y * 4 + x], if (x + y) % 2 == 0 { 0 } else { 255 });
            }
        }
        for y in 0..4 {
            for x in 0..4 {
                if !occ.is_occupied(x, y) {
                    occ.place(x, y, id);
                    id += 1;
                }
            }
        }
        assert_eq!(pixels(&encode_agent_frame(&occ)), vec![0; 16]);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(0.0), "0");
        assert_eq!(format_decimal(10.0), "10");
        assert_eq!(format_decimal(1.0 / 3.0), "0.333333333");
        assert_eq!(format_decimal(123456.789012), "123456.789");
        assert_eq!(format_decimal(-2.5e-7), "-0.00000025");
    }

    #[test]
    fn csv_layout() {
        let ids = vec!["a".to_string(), "b".to_string()];
        assert_eq!(
            metrics_csv(&[], &ids),
            "step,population,coverage,centroid_x,centroid_y,field_min,field_max,field_total,a_coverage,a_suppressed,b_coverage,b_suppressed\n"
        );
        let rec = MetricsRecord {
            step: 7,
            population: 2,
            coverage: 0.5,
            centroid: Some([1.25, 2.0]),
            field_min: -1.0,
            field_max: 3.0,
            field_total: 2.0,
            sources: vec![SourceState {
                id: "a".into(),
                coverage: 1.0 / 9.0,
                suppressed: true,
                centroid_distance: None,
            }],
        };
        let csv = metrics_csv(&[rec], &ids);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "7,2,0.5,1.25,2,-1,3,2,0.111111111,1,,");
    }
}
