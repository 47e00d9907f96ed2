//! Bayer–Macrì decompositions in dimensions zero, one and two.

use bmwalls::bayer_macri::{decompose_dim0, decompose_dim1, decompose_dim2, global_line_bundle_dim2, relation_checks};
use bmwalls::rational::q;
use bmwalls::stability::Frame;
use bmwalls::walls::wall_of_pair;
use bmwalls::{ChernCharacter, Divisor, Surface};

fn main() -> bmwalls::Result<()> {
    let frame = Frame::untwisted(Surface::projective_plane(), Divisor::from_ints(&[1]))?;
    let ch = |r, c, d| ChernCharacter::new(r, Divisor::from_ints(&[c]), d);

    let d0 = decompose_dim0(&ChernCharacter::points(1, 3), &frame.point(q(0, 1), q(1, 1))?)?;
    println!("points:  {}  ({})", d0.expr, d0.vector);

    let d1 = decompose_dim1(&ch(0, 1, q(1, 2)), &ch(1, -1, q(0, 1)), &frame)?;
    println!("curves:  {}  (closed form {})", d1.expr, d1.simplified);

    let i2 = ChernCharacter::ideal_of_points(1, 2);
    let d2 = decompose_dim2(&i2, &frame.point(q(-1, 1), q(1, 1))?)?;
    println!("sheaves: {}  = {}  (mu = {})", d2.expr, d2.expr.to_picard(&frame), d2.mu);

    let wall = wall_of_pair(&i2, &ch(1, -1, q(1, 2)), &frame)?;
    let global = global_line_bundle_dim2(&i2, &wall)?;
    println!("on the wall C = {}: {}  = {}", wall.center, global, global.to_picard(&frame));
    println!("relations at the apex hold: {}", relation_checks(&wall, &wall.center)?.passed());
    Ok(())
}
