use std::io::Write;

use super::HypersurfacePatch;

/// Writes the slice `u2 = t2` of the sampling box as a quad mesh, projected
/// onto the ambient coordinates `proj`.
pub fn write_obj<W: Write>(
    patch: &HypersurfacePatch,
    name: &str,
    n: [usize; 2],
    t2: f64,
    proj: [usize; 3],
    mut w: W,
) -> std::io::Result<()> {
    let [(a, b), (c, d), _] = patch.domain;
    writeln!(w, "# slice u2 = {t2}, projection onto coordinates {} {} {}", proj[0], proj[1], proj[2])?;
    writeln!(w, "o {name}")?;
    for i in 0..n[0] {
        let s = a + (b - a) * i as f64 / (n[0] - 1) as f64;
        for j in 0..n[1] {
            let t = c + (d - c) * j as f64 / (n[1] - 1) as f64;
            let p = patch.point([s, t, t2]);
            writeln!(w, "v {} {} {}", p[proj[0]], p[proj[1]], p[proj[2]])?;
        }
    }
    for i in 0..n[0] - 1 {
        for j in 0..n[1] - 1 {
            let k = i * n[1] + j + 1;
            writeln!(w, "f {} {} {} {}", k, k + n[1], k + n[1] + 1, k + 1)?;
        }
    }
    Ok(())
}
