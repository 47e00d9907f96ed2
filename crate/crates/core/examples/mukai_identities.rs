//! Mukai vectors, the asymmetric Mukai pairing and `Z = <Omega_Z, v>`.

use bmwalls::rational::q;
use bmwalls::stability::{central_charge, omega_vector, Frame};
use bmwalls::{ChernCharacter, Divisor, Surface};

fn main() -> bmwalls::Result<()> {
    let sigma = Surface::hirzebruch(1)?;
    let a = ChernCharacter::new(1, Divisor::from_ints(&[0, -1]), q(0, 1));
    let b = ChernCharacter::ideal_of_points(2, 3);
    let (va, vb) = (sigma.mukai_vector(&a), sigma.mukai_vector(&b));
    println!("v(O(-F))   = {va}");
    println!("v(I_3)     = {vb}");
    println!("<va, vb>   = {}", sigma.mukai_pairing(&va, &vb));
    println!("<vb, va>   = {}", sigma.mukai_pairing(&vb, &va));
    println!("chi(a, b)  = {}", sigma.euler_pairing(&a, &b));

    let frame = Frame::untwisted(Surface::projective_plane(), Divisor::from_ints(&[1]))?;
    let p = frame.point(q(-5, 2), q(3, 2))?;
    let i2 = ChernCharacter::ideal_of_points(1, 2);
    let omega = omega_vector(&p);
    let v = frame.surface().mukai_vector(&i2);
    println!("Z(I_2)         = {}", central_charge(&i2, &p));
    println!("<Omega_Z, v>   = {}", omega.pair(frame.surface(), &v));
    println!("<Omega, Omega> = {}", omega.self_pairing(frame.surface()));
    Ok(())
}
