//! Build the z-knotted homogeneous triangulation of a labeled tree.

use trizig::tree::{tree_build, validate_tree, TreeSpec};

fn main() -> trizig::Result<()> {
    let spec = TreeSpec::new()
        .node("r", 5)
        .node("x", 4)
        .node("y", 6)
        .node("z", 8)
        .edge("r", "x")
        .edge("r", "y")
        .edge("y", "z");
    println!("valid: {}", validate_tree(&spec).is_valid());

    let (t, tau, log) = tree_build(&spec)?;
    print!("{log}");
    println!("{} vertices, {} edges, {} faces", t.vertex_count(), t.edge_count(), t.face_count());
    println!("orientation {}", tau.bit_string());

    // an even root is rejected
    let bad = TreeSpec::new().node("r", 4);
    println!("{}", tree_build(&bad).unwrap_err());
    Ok(())
}
