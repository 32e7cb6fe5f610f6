//! Glue BP_4 into BP_3 along the base pairs at vertex 2.

use trizig::generators::{bipyramid, bipyramid_canonical_zorientation};
use trizig::surgery::{check_compatibility, glue, resolve_host_site, resolve_site, Operand, SpecialPair};
use trizig::zigzag::ZOrientation;

fn main() -> trizig::Result<()> {
    let load = |n, prefix| -> trizig::Result<_> {
        let t = bipyramid(n)?.prefixed(prefix)?;
        let tau = ZOrientation::from_zigzags(&t, bipyramid_canonical_zorientation(n)?.zigzags())?;
        Ok((t, tau))
    };
    let (ht, htau) = load(3, "L.")?;
    let (pt, ptau) = load(4, "R.")?;

    let host = resolve_host_site(&ht, &htau, &SpecialPair::from_names(&ht, "L.1", "L.2", "L.3")?)?;
    let pair = SpecialPair::from_names(&pt, "R.1", "R.2", "R.3")?;
    let mut piece = resolve_site(&pt, &ptau, &pair)?;
    if !check_compatibility(&host, &piece) {
        piece = resolve_site(&pt, &ptau, &pair.swapped())?;
    }

    let out = glue(
        Operand { t: &ht, tau: &htau, site: &host },
        Operand { t: &pt, tau: &ptau, site: &piece },
    )?;
    print!("{}", out.report);
    println!("zigzag: {}", out.predicted.render(&out.triangulation));
    Ok(())
}
