//! Nef cones of Hilbert schemes of points on Hirzebruch and elliptic surfaces.
//!
//! `cargo run --example nef_cone_toy -- hirzebruch 2 3`

use bmwalls::nefcone::{nef_cone, rank_one_sweep, FiberedSurface};

fn main() -> bmwalls::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind = args.first().map_or("hirzebruch", String::as_str);
    let e: i64 = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let n: i64 = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(3);
    let fs = match kind {
        "elliptic" => FiberedSurface::elliptic(e)?,
        _ => FiberedSurface::hirzebruch(e)?,
    };
    let cone = nef_cone(&fs, n)?;
    println!("Nef({}^[{n}]) is spanned by", fs.surface().name());
    for g in &cone.generators {
        println!("  {g}");
    }
    let b = &cone.balanced;
    println!("balanced frame: lambda = {}, u = {}, Gieseker wall C = {}", b.lambda, b.u, b.center);
    println!("(u^2 + 2n/g) 9/8 = {} < C^2 = {}", cone.certificate.bound, cone.certificate.center_sq);
    let sweep = rank_one_sweep(&fs, n, 10)?;
    println!("rank-one sweep: {} destabilizers, {} outside the Gieseker wall", sweep.checked, sweep.violations.len());
    Ok(())
}
