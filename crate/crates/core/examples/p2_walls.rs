//! Potential walls of the ideal sheaf of `n` points on the projective plane.
//!
//! `cargo run --example p2_walls -- 4`

use bmwalls::stability::Frame;
use bmwalls::walls::{enumerate_walls, SearchBounds};
use bmwalls::{ChernCharacter, Divisor, Surface};

fn main() -> bmwalls::Result<()> {
    let n: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let frame = Frame::untwisted(Surface::projective_plane(), Divisor::from_ints(&[1]))?;
    let ch = ChernCharacter::ideal_of_points(1, n);
    let bounds = SearchBounds { max_rank: 2, c1_bound: 4, ..SearchBounds::default() };
    for w in enumerate_walls(&ch, &frame, &bounds)? {
        let line = w.sq_line();
        println!(
            "C = {:>6}  R^2 = {:>6}  (s, q) line: slope {}, intercept {}  via {}",
            w.center,
            w.radius_sq,
            line.slope,
            line.intercept,
            w.chp()
        );
    }
    Ok(())
}
