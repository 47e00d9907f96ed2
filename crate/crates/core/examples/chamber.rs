//! Chamber labels along a vertical line through the projective-plane walls.

use bmwalls::rational::q;
use bmwalls::stability::{chamber_classify, Frame};
use bmwalls::walls::{enumerate_walls, SearchBounds};
use bmwalls::{ChernCharacter, Divisor, Surface};

fn main() -> bmwalls::Result<()> {
    let frame = Frame::untwisted(Surface::projective_plane(), Divisor::from_ints(&[1]))?;
    let ch = ChernCharacter::ideal_of_points(1, 3);
    let walls = enumerate_walls(&ch, &frame, &SearchBounds { max_rank: 2, ..SearchBounds::default() })?;
    for (s, t) in
        [(q(-5, 2), q(1, 4)), (q(-3, 1), q(1, 1)), (q(-3, 1), q(3, 1)), (q(1, 1), q(1, 1)), (q(-1, 1), q(1, 1))]
    {
        let p = frame.point(s.clone(), t.clone())?;
        println!("(s, t) = ({s}, {t}): {}", chamber_classify(&ch, &p, &walls).label());
    }
    Ok(())
}
