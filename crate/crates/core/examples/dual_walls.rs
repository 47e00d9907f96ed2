//! A wall and its derived dual in the mirrored frame `(H, -gamma, u)`.

use bmwalls::nefcone::{toy_frame, FiberedSurface};
use bmwalls::rational::q;
use bmwalls::walls::dual_wall_check;
use bmwalls::{ChernCharacter, Divisor};

fn main() -> bmwalls::Result<()> {
    let fs = FiberedSurface::hirzebruch(2)?;
    let frame = toy_frame(&fs, &q(1, 2), &q(1, 2))?;
    let ch = ChernCharacter::ideal_of_points(2, 2);
    let chp = ChernCharacter::new(1, Divisor::from_ints(&[-1, 0]), q(-1, 1));
    let rep = dual_wall_check(&ch, &chp, &frame)?;
    println!("original: {}", rep.original);
    println!("dual:     {}", rep.dual);
    println!("C -> -C {}, D -> D {}, R -> R {}", rep.center_negated, rep.d_preserved, rep.radius_preserved);
    Ok(())
}
