//! Walls on a K3 surface in the twisted model, next to the untwisted ones.

use bmwalls::bayer_macri::k3_line_bundle;
use bmwalls::stability::Frame;
use bmwalls::walls::{enumerate_walls_in, wall_of_pair, SearchBounds, WallModel};
use bmwalls::{ChernCharacter, Divisor, Surface};

fn main() -> bmwalls::Result<()> {
    let frame = Frame::untwisted(Surface::k3_rank_one(2)?, Divisor::from_ints(&[1]))?;
    let ch = ChernCharacter::ideal_of_points(1, 3);
    let bounds = SearchBounds { max_rank: 2, ..SearchBounds::default() };
    for w in enumerate_walls_in(&ch, &frame, &bounds, WallModel::TwistedK3)? {
        let plain = wall_of_pair(&ch, w.chp(), &frame)?;
        println!(
            "C = {:>5}  R^2 twisted = {:>5}  untwisted = {:>5}  divisor {}",
            w.center,
            w.radius_sq,
            plain.radius_sq,
            k3_line_bundle(&ch, &w)?
        );
    }
    Ok(())
}
