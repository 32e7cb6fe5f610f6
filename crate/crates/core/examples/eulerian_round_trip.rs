//! Reduce a homogeneous triangulation to its directed Eulerian embedding and
//! cone it back.

use trizig::eulerian::{extract_directed_embedding, triangulate_embedding};
use trizig::generators::{bipyramid, bipyramid_canonical_zorientation};

fn main() -> trizig::Result<()> {
    let t = bipyramid(5)?;
    let tau = bipyramid_canonical_zorientation(5)?;
    let d = extract_directed_embedding(&t, &tau)?;
    print!("{}", d.to_eul());

    let (back, tau2) = triangulate_embedding(&d)?;
    println!("same faces: {}", back.face_set() == t.face_set());
    println!("orientation: {}", tau2.bit_string());
    Ok(())
}
