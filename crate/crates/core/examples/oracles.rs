//! The exact references on their own: a minimum spanning tree and classical
//! and weighted Voronoi labellings, with the weighted one drawn as ASCII.
//!
//! cargo run --release --example oracles

use plasmodium::analysis::{mst_oracle, voronoi_oracle, weighted_voronoi_oracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points = [[5.0, 5.0], [30.0, 8.0], [18.0, 20.0], [50.0, 22.0], [40.0, 4.0]];
    let tree = mst_oracle(&points)?;
    println!("MST edges {:?}, length {:.2}", tree.edges, tree.total_length);

    let (w, h) = (60, 24);
    let equal = voronoi_oracle(&points, w, h)?;
    let weighted = weighted_voronoi_oracle(&points, &[1.0, 1.0, 3.0, 1.0, 1.0], w, h)?;
    let moved = (0..h)
        .flat_map(|y| (0..w).map(move |x| (x, y)))
        .filter(|&(x, y)| equal.get(x, y) != weighted.get(x, y))
        .count();
    println!("tripling site 2's weight relabels {moved} of {} cells", w * h);
    for y in 0..h {
        let row: String = (0..w)
            .map(|x| {
                let site = points.iter().position(|p| p[0] as usize == x && p[1] as usize == y);
                match site {
                    Some(i) => char::from(b'A' + i as u8),
                    None => char::from(b'a' + weighted.get(x, y) as u8),
                }
            })
            .collect();
        println!("{row}");
    }
    Ok(())
}
