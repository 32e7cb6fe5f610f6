//! Zigzag census of the bipyramids and the Platonic solids.

use trizig::generators::{bipyramid, platonic, Platonic};
use trizig::zigzag::enumerate_zigzags;

fn main() -> trizig::Result<()> {
    for n in 3..=12 {
        let zs = enumerate_zigzags(&bipyramid(n)?)?;
        let lens: Vec<usize> = zs.iter().map(|z| z.len()).collect();
        println!("BP_{n:<2} {} zigzag(s), lengths {lens:?}", zs.len());
    }
    for s in [Platonic::Tetrahedron, Platonic::Octahedron, Platonic::Icosahedron] {
        let zs = enumerate_zigzags(&platonic(s)?)?;
        println!("{s:<12} {} zigzags of length {}", zs.len(), zs[0].len());
    }
    Ok(())
}
