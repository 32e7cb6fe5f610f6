//! DOT for BP_3, plain and with type II edges directed.

use trizig::cli::export_dot;
use trizig::generators::{bipyramid, bipyramid_canonical_zorientation};
use trizig::zigzag::classify;

fn main() -> trizig::Result<()> {
    let t = bipyramid(3)?;
    print!("{}", export_dot(&t, None));
    let c = classify(&t, &bipyramid_canonical_zorientation(3)?)?;
    print!("{}", export_dot(&t, Some(&c)));
    Ok(())
}
