//! Every z-orientation of BP_4 and BP_6, with the face types it produces.

use trizig::generators::bipyramid;
use trizig::zigzag::{all_z_orientations, classify, is_homogeneous, Type};

fn main() -> trizig::Result<()> {
    for n in [4, 6] {
        let t = bipyramid(n)?;
        for tau in all_z_orientations(&t)? {
            let c = classify(&t, &tau)?;
            println!(
                "BP_{n} bits {}: {} faces type I, {} type II, homogeneous {}",
                tau.bit_string(),
                c.count_faces(Type::I),
                c.count_faces(Type::II),
                is_homogeneous(&t, &tau)?
            );
        }
    }
    Ok(())
}
