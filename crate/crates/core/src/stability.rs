//! Central charges on a frame `(H, gamma, u)`, the characteristic vectors
//! `Omega_Z` and `Omega_Zhat`, Bridgeland slopes, the GL2 normalisation and
//! the chamber labels of the large volume limit.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, qi, sqrt_exact, Q};
use crate::surface::{ChernCharacter, Divisor, MukaiVector, Surface};
use crate::walls::WallRecord;

/// A frame `(H, gamma, u)`: an ample class `H`, a class `gamma` orthogonal to it
/// and a twist `u >= 0`. Stability conditions on the frame are
/// `sigma_{s,t} = sigma_{tH, sH + u gamma}`.
///
/// Ampleness of `H` is the caller's responsibility; only `H^2 > 0` is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    surface: Surface,
    h: Divisor,
    gamma: Divisor,
    u: Q,
    g: Q,
    d: Q,
}

impl Frame {
    pub fn new(surface: Surface, h: Divisor, gamma: Divisor, u: Q) -> Result<Self> {
        surface.check(&h)?;
        surface.check(&gamma)?;
        let g = surface.dot(&h, &h);
        if !g.is_positive() {
            return Err(Error::Validation(format!("H^2 = {g} must be positive for an ample class")));
        }
        let hg = surface.dot(&h, &gamma);
        if !hg.is_zero() {
            return Err(Error::Validation(format!(
                "Hodge orthogonality violated: H.gamma = {hg}, a frame needs gamma in H-perp"
            )));
        }
        let d = -surface.dot(&gamma, &gamma);
        if d.is_negative() {
            return Err(Error::Validation(format!("Hodge index violated: gamma^2 = {} > 0 for gamma in H-perp", -&d)));
        }
        if d.is_zero() != gamma.is_zero() {
            return Err(Error::Validation("Hodge index violated: gamma^2 = 0 forces gamma = 0".into()));
        }
        if u.is_negative() {
            return Err(Error::Validation(format!("u = {u} must be non-negative")));
        }
        if gamma.is_zero() && !u.is_zero() {
            return Err(Error::Validation("u must be 0 when gamma = 0".into()));
        }
        Ok(Frame { surface, h, gamma, u, g, d })
    }

    /// The frame `(H, 0, 0)`.
    pub fn untwisted(surface: Surface, h: Divisor) -> Result<Self> {
        let gamma = surface.zero_divisor();
        Frame::new(surface, h, gamma, Q::zero())
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn h(&self) -> &Divisor {
        &self.h
    }

    pub fn gamma(&self) -> &Divisor {
        &self.gamma
    }

    pub fn u(&self) -> &Q {
        &self.u
    }

    /// `g = H^2`.
    pub fn g(&self) -> &Q {
        &self.g
    }

    /// `d = -gamma^2`.
    pub fn d(&self) -> &Q {
        &self.d
    }

    /// The frame `(H, -gamma, u)` on which the derived dual lives.
    pub fn mirrored(&self) -> Frame {
        Frame { gamma: -&self.gamma, ..self.clone() }
    }

    /// Coordinates `(y1, y2)` of the projection of `c` onto `span(H, gamma)`,
    /// `c = y1 H + y2 gamma + delta` with `delta` orthogonal to both.
    pub fn coords(&self, c: &Divisor) -> (Q, Q) {
        let y1 = self.surface.dot(&self.h, c) / &self.g;
        let y2 = if self.d.is_zero() { Q::zero() } else { -self.surface.dot(&self.gamma, c) / &self.d };
        (y1, y2)
    }

    pub fn point(&self, s: Q, t: Q) -> Result<StabilityPoint<'_>> {
        StabilityPoint::new(self, s, t)
    }

    /// `beta = sH + u gamma`.
    pub fn beta_at(&self, s: &Q) -> Divisor {
        &self.h.scale(s) + &self.gamma.scale(&self.u)
    }
}

/// A point `(s, t)`, `t > 0`, on the half-plane of a frame.
#[derive(Debug, Clone)]
pub struct StabilityPoint<'a> {
    frame: &'a Frame,
    s: Q,
    t: Q,
}

impl<'a> StabilityPoint<'a> {
    pub fn new(frame: &'a Frame, s: Q, t: Q) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidInput(format!("t = {t} must be positive")));
        }
        Ok(StabilityPoint { frame, s, t })
    }

    pub fn frame(&self) -> &'a Frame {
        self.frame
    }

    pub fn surface(&self) -> &'a Surface {
        &self.frame.surface
    }

    pub fn s(&self) -> &Q {
        &self.s
    }

    pub fn t(&self) -> &Q {
        &self.t
    }

    /// `omega = tH`.
    pub fn omega(&self) -> Divisor {
        self.frame.h.scale(&self.t)
    }

    /// `beta = sH + u gamma`.
    pub fn beta(&self) -> Divisor {
        self.frame.beta_at(&self.s)
    }

    /// `alpha = beta - K_S / 2`.
    pub fn alpha(&self) -> Divisor {
        &self.beta() - &self.surface().canonical().scale(&q(1, 2))
    }
}

/// An exact complex number with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: Q,
    pub im: Q,
}

impl ComplexRational {
    pub fn new(re: Q, im: Q) -> Self {
        ComplexRational { re, im }
    }

    pub fn scale(&self, k: &Q) -> Self {
        ComplexRational::new(&self.re * k, &self.im * k)
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

/// A complex Mukai vector `re + i im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicVector {
    pub re: MukaiVector,
    pub im: MukaiVector,
}

impl CharacteristicVector {
    /// `<self, v>`, complex-linear in the first slot.
    pub fn pair(&self, surface: &Surface, v: &MukaiVector) -> ComplexRational {
        ComplexRational::new(surface.mukai_pairing(&self.re, v), surface.mukai_pairing(&self.im, v))
    }

    /// The bilinear (not Hermitian) self-pairing `<Omega, Omega>`.
    pub fn self_pairing(&self, surface: &Surface) -> ComplexRational {
        let (a, b) = (&self.re, &self.im);
        ComplexRational::new(
            surface.mukai_pairing(a, a) - surface.mukai_pairing(b, b),
            surface.mukai_pairing(a, b) + surface.mukai_pairing(b, a),
        )
    }
}

/// Real part and `Im / t` of a central charge. Both depend on `t` only
/// through `t^2`, so they stay rational on walls whose radius is irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeParts {
    pub re: Q,
    pub im_over_t: Q,
}

fn charge_parts_raw(c0: &Q, c1: &Divisor, c2: &Q, frame: &Frame, s: &Q, t_sq: &Q) -> ChargeParts {
    let surface = &frame.surface;
    let beta = frame.beta_at(s);
    let beta_sq = s * s * &frame.g - &frame.u * &frame.u * &frame.d;
    let omega_sq = t_sq * &frame.g;
    let re = -c2 + surface.dot(&beta, c1) - c0 * (beta_sq - omega_sq) * q(1, 2);
    let im_over_t = surface.dot(&frame.h, c1) - c0 * s * &frame.g;
    ChargeParts { re, im_over_t }
}

/// `Re Z` and `Im Z / t` of `Z_{tH, sH + u gamma}(ch)` at `(s, t^2)`.
pub fn central_charge_parts(ch: &ChernCharacter, frame: &Frame, s: &Q, t_sq: &Q) -> ChargeParts {
    charge_parts_raw(&ch.ch0, &ch.ch1, &ch.ch2, frame, s, t_sq)
}

/// Twisted analogue of [`central_charge_parts`] for `Zhat`.
pub fn twisted_central_charge_parts(ch: &ChernCharacter, frame: &Frame, s: &Q, t_sq: &Q) -> ChargeParts {
    let v = frame.surface.mukai_vector(ch);
    charge_parts_raw(&v.v0, &v.v1, &v.v2, frame, s, t_sq)
}

/// `Z_{omega,beta}(ch) = -int e^{-(beta + i omega)} ch`.
pub fn central_charge(ch: &ChernCharacter, p: &StabilityPoint<'_>) -> ComplexRational {
    let parts = central_charge_parts(ch, p.frame, &p.s, &(&p.t * &p.t));
    ComplexRational::new(parts.re, parts.im_over_t * &p.t)
}

/// `Zhat_{omega,beta}(ch) = -int e^{-(beta + i omega)} ch sqrt(td S)`.
pub fn twisted_central_charge(ch: &ChernCharacter, p: &StabilityPoint<'_>) -> ComplexRational {
    let parts = twisted_central_charge_parts(ch, p.frame, &p.s, &(&p.t * &p.t));
    ComplexRational::new(parts.re, parts.im_over_t * &p.t)
}

/// The vector `Omega_Z` with `Z(ch) = <Omega_Z, v(ch)>`.
pub fn omega_vector(p: &StabilityPoint<'_>) -> CharacteristicVector {
    let surface = p.surface();
    let k = surface.canonical();
    let b = &p.beta() - &k.scale(&q(3, 4));
    let omega = p.omega();
    let half = q(1, 2);
    let re2 = -surface.dot(&omega, &omega) * &half + surface.dot(&b, &b) * &half
        - (surface.chi_o() - surface.k_squared() * q(1, 8)) * &half;
    let im2 = surface.dot(&b, &omega);
    CharacteristicVector { re: MukaiVector::new(qi(1), b, re2), im: MukaiVector::new(Q::zero(), omega, im2) }
}

/// The vector `Omega_Zhat = exp(beta - K_S/2 + i omega)`, truncated at degree two.
pub fn omega_hat_vector(p: &StabilityPoint<'_>) -> CharacteristicVector {
    let surface = p.surface();
    let a = p.alpha();
    let omega = p.omega();
    let re2 = (surface.dot(&a, &a) - surface.dot(&omega, &omega)) * q(1, 2);
    let im2 = surface.dot(&a, &omega);
    CharacteristicVector { re: MukaiVector::new(qi(1), a, re2), im: MukaiVector::new(Q::zero(), omega, im2) }
}

/// A Bridgeland slope; `+infinity` is ordered above every rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Q),
    PlusInfinity,
}

impl Slope {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Slope::Finite(x) => Some(x),
            Slope::PlusInfinity => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => write!(f, "{x}"),
            Slope::PlusInfinity => write!(f, "+inf"),
        }
    }
}

/// `mu = -Re Z / Im Z`, or `+infinity` when `Im Z = 0`.
pub fn slope_of(z: &ComplexRational) -> Slope {
    if z.im.is_zero() {
        Slope::PlusInfinity
    } else {
        Slope::Finite(-&z.re / &z.im)
    }
}

pub fn bridgeland_slope(ch: &ChernCharacter, p: &StabilityPoint<'_>) -> Slope {
    slope_of(&central_charge(ch, p))
}

/// Mumford slope `H.ch_1 / ch_0`, `+infinity` for torsion classes.
pub fn mumford_slope(ch: &ChernCharacter, frame: &Frame) -> Slope {
    if ch.ch0.is_zero() {
        Slope::PlusInfinity
    } else {
        Slope::Finite(frame.surface.dot(&frame.h, &ch.ch1) / &ch.ch0)
    }
}

/// `Z'` from the right action of `[[1, 0], [-s/t, 1/t]]`:
/// `Re Z' = Re Z - (s/t) Im Z`, `Im Z' = Im Z / t`.
pub fn gl2_normalized_charge(ch: &ChernCharacter, p: &StabilityPoint<'_>) -> ComplexRational {
    let z = central_charge(ch, p);
    let ratio = &p.s / &p.t;
    ComplexRational::new(&z.re - &ratio * &z.im, &z.im / &p.t)
}

/// `Re Z(a) Im Z(b) - Re Z(b) Im Z(a)`; zero exactly on the potential wall of `a` and `b`.
pub fn wall_defect(za: &ComplexRational, zb: &ComplexRational) -> Q {
    &za.re * &zb.im - &zb.re * &za.im
}

/// `(s, t) -> (s, q)` with `q = (s^2 + t^2) / 2`.
pub fn st_to_sq(s: &Q, t: &Q) -> Result<(Q, Q)> {
    if !t.is_positive() {
        return Err(Error::InvalidInput(format!("t = {t} must be positive")));
    }
    Ok((s.clone(), (s * s + t * t) * q(1, 2)))
}

/// Inverse of [`st_to_sq`] when `2q - s^2` is a positive rational square.
pub fn sq_to_st(s: &Q, q_val: &Q) -> Option<Q> {
    let t_sq = qi(2) * q_val - s * s;
    if !t_sq.is_positive() {
        return None;
    }
    sqrt_exact(&t_sq)
}

/// Chamber labels of a point relative to a character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    /// `ch = (0, 0, n)`: no walls at all.
    Trivial,
    /// Torsion character with `ch_1.H > 0`, above every wall.
    Simpson,
    /// `ch_0 > 0`, left of the vertical line `s = s_0`, outside every wall.
    Gieseker,
    /// `ch_0 > 0` on `s = s_0`.
    Uhlenbeck,
    /// `ch_0 < 0`, right of `s = s_0`, outside every wall.
    DualGieseker,
    /// `ch_0 < 0` on `s = s_0`.
    DualUhlenbeck,
    /// On or inside one of the supplied walls.
    Interior,
    /// `Z(ch)` is not in the upper half-plane at this point.
    Invalid,
}

impl Chamber {
    pub fn label(&self) -> &'static str {
        match self {
            Chamber::Trivial => "TC",
            Chamber::Simpson => "SC",
            Chamber::Gieseker => "GC",
            Chamber::Uhlenbeck => "UW",
            Chamber::DualGieseker => "DGC",
            Chamber::DualUhlenbeck => "DUW",
            Chamber::Interior => "INTERIOR",
            Chamber::Invalid => "INVALID",
        }
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies `p` relative to `ch` and a bounded wall set (normally the
/// output of [`crate::walls::enumerate_walls`]). `Gieseker` and `Simpson`
/// mean "outside every supplied wall"; walls beyond the search bound are
/// not seen.
pub fn chamber_classify(ch: &ChernCharacter, p: &StabilityPoint<'_>, walls: &[WallRecord]) -> Chamber {
    if ch.ch0.is_zero() && ch.ch1.is_zero() {
        return if ch.ch2.is_positive() { Chamber::Trivial } else { Chamber::Invalid };
    }
    let frame = p.frame;
    let z = central_charge(ch, p);
    if z.im.is_negative() {
        return Chamber::Invalid;
    }
    if z.im.is_zero() {
        return if ch.ch0.is_positive() {
            Chamber::Uhlenbeck
        } else if ch.ch0.is_negative() {
            Chamber::DualUhlenbeck
        } else {
            Chamber::Invalid
        };
    }
    let t_sq = &p.t * &p.t;
    if walls.iter().any(|w| w.contains_closed(&p.s, &t_sq)) {
        return Chamber::Interior;
    }
    let _ = frame;
    if ch.ch0.is_positive() {
        Chamber::Gieseker
    } else if ch.ch0.is_negative() {
        Chamber::DualGieseker
    } else {
        Chamber::Simpson
    }
}
