//! Writes the wall diagram of `I_n` on the projective plane to an SVG file.
//!
//! `cargo run --example plot_svg -- walls.svg`

use bmwalls::io::{parse_job, run, Command};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "walls.svg".into());
    let job = parse_job("[character]\nn = 5\n[search]\nmax_rank = 2\nc1_bound = 4\n[output]\nformat = svg\n")?;
    std::fs::write(&path, run(Command::Plot, &job)?)?;
    println!("wrote {path}");
    Ok(())
}
