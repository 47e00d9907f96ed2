//! The Bayer–Macrì vector `w_sigma`, the perpendicular vectors `m`, `w`, `u`
//! and `t`, and the decompositions of the nef class in dimensions 0, 1, 2.
//!
//! Divisor classes on the moduli space are formal: [`DivisorExpr`] holds
//! coefficients over symbols such as `H~`, `K~`, `B0`, `S` and `T` and is
//! compared up to a positive scalar.
//!
//! Sign conventions for positive rank: `L~ = -theta(m(L, ch))` and
//! `B0 = -theta(u(ch))`. For negative rank the tilde of a divisor is taken
//! through the derived dual, `L~ = theta(m(L, -ch*))`, which flips the sign
//! of the `H~` and `gamma~` terms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{gcd_all, is_integer, lcm_denominators, q, qi, Q};
use crate::stability::{
    central_charge, central_charge_parts, omega_vector, twisted_central_charge_parts, Frame, StabilityPoint,
};
use crate::surface::{ChernCharacter, Divisor, MukaiVector, Surface};
use crate::walls::{wall_in_model, wall_of_pair, FrameCoords, WallModel, WallRecord};

/// A formal symbol of a divisor class on the moduli space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    HTilde,
    GammaTilde,
    /// Tilde of a named class, e.g. a Picard generator.
    Gen(String),
    KTilde,
    S,
    T,
    B0,
    B,
}

impl Sym {
    fn priority(&self) -> u8 {
        match self {
            Sym::B0 => 0,
            Sym::B => 1,
            Sym::S => 2,
            Sym::T => 3,
            Sym::HTilde => 4,
            Sym::GammaTilde => 5,
            Sym::Gen(_) => 6,
            Sym::KTilde => 7,
        }
    }

    /// Magnitude the leading coefficient is scaled to in the normal form.
    fn unit(&self) -> Q {
        match self {
            Sym::B => q(1, 2),
            _ => qi(1),
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::HTilde => f.write_str("H~"),
            Sym::GammaTilde => f.write_str("gamma~"),
            Sym::Gen(name) if name.contains(['+', '-']) => write!(f, "({name})~"),
            Sym::Gen(name) => write!(f, "{name}~"),
            Sym::KTilde => f.write_str("K~"),
            Sym::S => f.write_str("S"),
            Sym::T => f.write_str("T"),
            Sym::B0 => f.write_str("B0"),
            Sym::B => f.write_str("B"),
        }
    }
}

/// A rational combination of [`Sym`]s; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DivisorExpr {
    terms: BTreeMap<Sym, Q>,
}

impl DivisorExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Sym, Q)>) -> Self {
        let mut e = DivisorExpr::new();
        for (s, c) in terms {
            e.add_term(s, &c);
        }
        e
    }

    pub fn add_term(&mut self, sym: Sym, coeff: &Q) {
        let entry = self.terms.entry(sym.clone()).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&sym);
        }
    }

    pub fn with(mut self, sym: Sym, coeff: Q) -> Self {
        self.add_term(sym, &coeff);
        self
    }

    pub fn coeff(&self, sym: &Sym) -> Q {
        self.terms.get(sym).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Sym, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Q) -> Self {
        DivisorExpr::from_terms(self.terms.iter().map(|(s, c)| (s.clone(), c * k)))
    }

    pub fn add(&self, other: &DivisorExpr) -> Self {
        let mut e = self.clone();
        for (s, c) in &other.terms {
            e.add_term(s.clone(), c);
        }
        e
    }

    pub fn sub(&self, other: &DivisorExpr) -> Self {
        self.add(&other.scale(&qi(-1)))
    }

    /// Representative of the positive-scalar class: the leading symbol
    /// (`B0`, `B`, `S`, `T`, `H~`, `gamma~`, generators, `K~`) gets
    /// coefficient `+-1` (`+-1/2` for `B`).
    pub fn normalized(&self) -> Self {
        match self.terms.iter().min_by_key(|(s, _)| s.priority()) {
            None => self.clone(),
            Some((s, c)) => self.scale(&(s.unit() / c.abs())),
        }
    }

    /// Equality up to a positive rational scalar.
    pub fn equiv(&self, other: &DivisorExpr) -> bool {
        self.normalized() == other.normalized()
    }

    /// Rewrites `H~`, `gamma~` and `K~` as combinations of the tildes of the
    /// surface's Picard generators, using linearity of `L -> L~`.
    pub fn to_picard(&self, frame: &Frame) -> Self {
        let surface = frame.surface();
        let mut out = DivisorExpr::new();
        for (sym, c) in &self.terms {
            let class = match sym {
                Sym::HTilde => Some(frame.h()),
                Sym::GammaTilde => Some(frame.gamma()),
                Sym::KTilde => Some(surface.canonical()),
                _ => None,
            };
            match class {
                Some(d) => {
                    for (name, x) in surface.generators().iter().zip(d.coords()) {
                        out.add_term(Sym::Gen(name.clone()), &(c * x));
                    }
                }
                None => out.add_term(sym.clone(), c),
            }
        }
        out
    }
}

impl fmt::Display for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (sym, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{mag} {sym}")?;
            }
        }
        Ok(())
    }
}

/// `w_sigma = Im Z(ch) Re Omega_Z - Re Z(ch) Im Omega_Z`, a vector in `v(ch)^perp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSigma {
    pub vector: MukaiVector,
    pub s: Q,
    pub t: Q,
    pub ch: ChernCharacter,
}

pub fn w_sigma(ch: &ChernCharacter, p: &StabilityPoint<'_>) -> WSigma {
    let z = central_charge(ch, p);
    let om = omega_vector(p);
    let vector = &om.re.scale(&z.im) - &om.im.scale(&z.re);
    WSigma { vector, s: p.s().clone(), t: p.t().clone(), ch: ch.clone() }
}

fn slope_part(ch: &ChernCharacter) -> Result<()> {
    if ch.ch0.is_zero() {
        Err(Error::ZeroRank("this vector needs ch_0 != 0"))
    } else {
        Ok(())
    }
}

/// `m(L, ch) = (0, L, (ch_1/ch_0 - 3/4 K).L)`.
pub fn m_vector(l: &Divisor, ch: &ChernCharacter, surface: &Surface) -> Result<MukaiVector> {
    slope_part(ch)?;
    surface.check(l)?;
    let a = &ch.ch1.scale(&(Q::one() / &ch.ch0)) - &surface.canonical().scale(&q(3, 4));
    Ok(MukaiVector::new(Q::zero(), l.clone(), surface.dot(&a, l)))
}

/// `w(ch) = (1, -3/4 K, -ch_2/ch_0 - chi(O)/2 + 11/32 K^2)`.
pub fn w_vector(ch: &ChernCharacter, surface: &Surface) -> Result<MukaiVector> {
    slope_part(ch)?;
    let v2 = -&ch.ch2 / &ch.ch0 - surface.chi_o() * q(1, 2) + surface.k_squared() * q(11, 32);
    Ok(MukaiVector::new(qi(1), surface.canonical().scale(&q(-3, 4)), v2))
}

/// `u(ch) = w(ch) + m(K/2, ch)`.
pub fn u_vector(ch: &ChernCharacter, surface: &Surface) -> Result<MukaiVector> {
    let half_k = surface.canonical().scale(&q(1, 2));
    Ok(&w_vector(ch, surface)? + &m_vector(&half_k, ch, surface)?)
}

/// `(0, 0, -1)`, the limit of `w_sigma` as `t -> infinity` for torsion characters.
pub fn point_vector(surface: &Surface) -> MukaiVector {
    MukaiVector::new(Q::zero(), surface.zero_divisor(), qi(-1))
}

fn t_vector_at_center(center: &Q, frame: &Frame) -> MukaiVector {
    let surface = frame.surface();
    let k = surface.canonical();
    let b = frame.beta_at(center);
    let v2 = -surface.dot(&k.scale(&q(3, 4)), &b) - surface.chi_o() * q(1, 2) + surface.k_squared() * q(11, 32);
    MukaiVector::new(qi(1), &b - &k.scale(&q(3, 4)), v2)
}

/// `t(ch, ch') = (1, CH + u gamma - 3/4 K, -3/4 K.(CH + u gamma) - chi(O)/2 + 11/32 K^2)`.
pub fn t_vector(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame) -> Result<MukaiVector> {
    let w = wall_of_pair(ch, chp, frame)?;
    Ok(t_vector_at_center(&w.center, frame))
}

/// Nef class for `ch = (0, 0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dim0Decomposition {
    /// `(0, H, (sH - 3/4 K).H)`.
    pub vector: MukaiVector,
    /// `H~`, where for points `L~ = theta(0, L, -3/4 K.L)`; the `s`-dependent
    /// part of `vector` is a multiple of `v`, which `theta` kills.
    pub expr: DivisorExpr,
}

pub fn decompose_dim0(ch: &ChernCharacter, p: &StabilityPoint<'_>) -> Result<Dim0Decomposition> {
    if !(ch.ch0.is_zero() && ch.ch1.is_zero() && ch.ch2.is_positive()) {
        return Err(Error::WrongShape(format!("expected (0, 0, n) with n > 0, got {ch}")));
    }
    let surface = p.surface();
    let h = p.frame().h();
    let a = &p.frame().h().scale(p.s()) - &surface.canonical().scale(&q(3, 4));
    let vector = MukaiVector::new(Q::zero(), h.clone(), surface.dot(&a, h));
    Ok(Dim0Decomposition { vector, expr: DivisorExpr::new().with(Sym::HTilde, qi(1)) })
}

/// Dimension-one decomposition `coefficient * S - T` on the wall `W(ch, ch')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dim1Decomposition {
    pub center: Q,
    /// `g/2 D + d/2 u^2` (with the twisted `D` in K3 mode).
    pub coefficient: Q,
    /// `(chi - g C c1 + u d c2) / r`, with `chi -> chi + r` in K3 mode.
    pub simplified: Q,
    pub t: MukaiVector,
    pub expr: DivisorExpr,
}

pub fn decompose_dim1(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame) -> Result<Dim1Decomposition> {
    decompose_dim1_in(ch, chp, frame, WallModel::Untwisted)
}

pub fn decompose_dim1_in(
    ch: &ChernCharacter,
    chp: &ChernCharacter,
    frame: &Frame,
    model: WallModel,
) -> Result<Dim1Decomposition> {
    let a = FrameCoords::of(ch, frame);
    if !a.rank.is_zero() || !a.c1.is_positive() {
        return Err(Error::WrongShape(format!("expected ch_0 = 0 and ch_1.H > 0, got {ch}")));
    }
    if chp.ch0.is_zero() {
        return Err(Error::ZeroRank("the destabilizer needs ch'_0 != 0"));
    }
    let wall = wall_in_model(ch, chp, frame, model)?;
    dim1_from_wall(&wall)
}

fn dim1_from_wall(wall: &WallRecord) -> Result<Dim1Decomposition> {
    let frame = &wall.frame;
    let b = FrameCoords::of(wall.chp(), frame);
    if b.rank.is_zero() {
        return Err(Error::ZeroRank("the destabilizer needs ch'_0 != 0"));
    }
    let (g, d, u) = (frame.g(), frame.d(), frame.u());
    let half = q(1, 2);
    let coefficient = g * &half * wall.effective_d() + d * &half * u * u;
    let chi = match wall.model {
        WallModel::Untwisted => b.chi.clone(),
        WallModel::TwistedK3 => &b.chi + &b.rank,
    };
    let simplified = (chi - g * &wall.center * &b.c1 + u * d * &b.c2) / &b.rank;
    let expr = DivisorExpr::new().with(Sym::S, coefficient.clone()).with(Sym::T, qi(-1));
    Ok(Dim1Decomposition {
        center: wall.center.clone(),
        coefficient,
        simplified,
        t: t_vector_at_center(&wall.center, frame),
        expr,
    })
}

/// Dimension-two decomposition at a point with `Im Z(ch) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dim2Decomposition {
    pub mu: Q,
    pub m_omega: MukaiVector,
    pub m_beta: MukaiVector,
    pub w: MukaiVector,
    pub m_alpha: MukaiVector,
    pub u: MukaiVector,
    /// `mu m(omega) + m(beta) + w`.
    pub beta_form: MukaiVector,
    /// `mu m(omega) + m(alpha) + u`.
    pub alpha_form: MukaiVector,
    /// The `k > 0` with `w_sigma = k * beta_form`; equals `Im Z(ch)`.
    pub scalar: Q,
    pub expr: DivisorExpr,
}

fn dim2_terms(ch0_positive: bool, h_coeff: Q, u: &Q) -> DivisorExpr {
    let sign = if ch0_positive { qi(-1) } else { qi(1) };
    DivisorExpr::new()
        .with(Sym::HTilde, &sign * h_coeff)
        .with(Sym::GammaTilde, &sign * u)
        .with(Sym::KTilde, q(1, 2))
        .with(Sym::B0, qi(-1))
}

pub fn decompose_dim2(ch: &ChernCharacter, p: &StabilityPoint<'_>) -> Result<Dim2Decomposition> {
    if ch.ch0.is_zero() {
        return Err(Error::WrongShape(format!("expected ch_0 != 0, got {ch}")));
    }
    let surface = p.surface();
    let z = central_charge(ch, p);
    if !z.im.is_positive() {
        return Err(Error::NotUpperHalfPlane(z.im.to_string()));
    }
    let mu = -&z.re / &z.im;
    let m_omega = m_vector(&p.omega(), ch, surface)?;
    let m_beta = m_vector(&p.beta(), ch, surface)?;
    let m_alpha = m_vector(&p.alpha(), ch, surface)?;
    let w = w_vector(ch, surface)?;
    let u = u_vector(ch, surface)?;
    let beta_form = &(&m_omega.scale(&mu) + &m_beta) + &w;
    let alpha_form = &(&m_omega.scale(&mu) + &m_alpha) + &u;
    let ws = w_sigma(ch, p).vector;
    let scalar = ws
        .positive_multiple_of(&beta_form)
        .ok_or_else(|| Error::InvalidInput("w_sigma is not a positive multiple of the decomposition".into()))?;
    let h_coeff = &mu * p.t() + p.s();
    let expr = dim2_terms(ch.ch0.is_positive(), h_coeff, p.frame().u());
    Ok(Dim2Decomposition { mu, m_omega, m_beta, w, m_alpha, u, beta_form, alpha_form, scalar, expr })
}

/// Checks condition (C): `ch_0 > 0`, Bogomolov type and
/// `gcd(ch_0, ch_1.H, ch_2 - ch_1.K/2) = 1` with `H` made primitive and integral.
pub fn condition_c(ch: &ChernCharacter, frame: &Frame) -> Result<()> {
    let surface = frame.surface();
    if !ch.ch0.is_positive() {
        return Err(Error::ConditionCViolated(format!("ch_0 = {} is not positive", ch.ch0)));
    }
    if !surface.is_bogomolov(ch) {
        return Err(Error::ConditionCViolated(format!(
            "not of Bogomolov type: discriminant {}",
            surface.bogomolov_discriminant(ch)
        )));
    }
    let h = primitive_integral(frame.h());
    let vals =
        [ch.ch0.clone(), surface.dot(&ch.ch1, &h), &ch.ch2 - surface.dot(&ch.ch1, surface.canonical()) * q(1, 2)];
    if let Some(bad) = vals.iter().find(|v| !is_integer(v)) {
        return Err(Error::ConditionCViolated(format!("gcd data must be integral, got {bad}")));
    }
    let ints: Vec<BigInt> = vals.iter().map(|v| v.to_integer()).collect();
    let g = gcd_all(&ints);
    if !g.is_one() {
        return Err(Error::ConditionCViolated(format!(
            "gcd(ch_0, ch_1.H, ch_2 - ch_1.K/2) = gcd({}, {}, {}) = {g}",
            ints[0], ints[1], ints[2]
        )));
    }
    Ok(())
}

fn primitive_integral(h: &Divisor) -> Divisor {
    let l = Q::from(lcm_denominators(h.coords()));
    let scaled: Vec<BigInt> = h.coords().iter().map(|c| (c * &l).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Divisor::new(scaled.into_iter().map(|v| Q::from(v / &g)).collect())
}

/// The nef class `-C H~ - u gamma~ + K~/2 - B0` attached to a wall of a positive-rank `ch`.
pub fn global_line_bundle_dim2(ch: &ChernCharacter, wall: &WallRecord) -> Result<DivisorExpr> {
    condition_c(ch, &wall.frame)?;
    global_line_bundle_dim2_unchecked(ch, wall)
}

/// As [`global_line_bundle_dim2`] without the condition (C) check.
pub fn global_line_bundle_dim2_unchecked(ch: &ChernCharacter, wall: &WallRecord) -> Result<DivisorExpr> {
    if !ch.ch0.is_positive() {
        return Err(Error::WrongShape(format!("expected ch_0 > 0, got {ch}")));
    }
    Ok(dim2_terms(true, wall.center.clone(), wall.frame.u()))
}

/// Twisted K3 version: `-C H~ - u gamma~ - B0` for positive rank, `coefficient S - T` in dimension one.
pub fn k3_line_bundle(ch: &ChernCharacter, wall: &WallRecord) -> Result<DivisorExpr> {
    if !wall.frame.surface().is_k3() {
        return Err(Error::NotK3);
    }
    if ch.ch0.is_zero() {
        return Ok(dim1_from_wall(wall)?.expr);
    }
    let sign = if ch.ch0.is_positive() { qi(-1) } else { qi(1) };
    Ok(DivisorExpr::new()
        .with(Sym::HTilde, &sign * &wall.center)
        .with(Sym::GammaTilde, &sign * wall.frame.u())
        .with(Sym::B0, qi(-1)))
}

/// The divisor of any nonempty wall, following the rank of `ch`:
/// `coefficient S - T` for torsion classes, the dimension-two formula
/// otherwise (with the derived-dual convention for negative rank).
pub fn wall_divisor(wall: &WallRecord) -> Result<DivisorExpr> {
    let ch = &wall.ch;
    if wall.model == WallModel::TwistedK3 {
        return k3_line_bundle(ch, wall);
    }
    if ch.ch0.is_zero() {
        return Ok(dim1_from_wall(wall)?.expr);
    }
    Ok(dim2_terms(ch.ch0.is_positive(), wall.center.clone(), wall.frame.u()))
}

fn is_p2(surface: &Surface) -> bool {
    surface.rank() == 1
        && surface.intersection_matrix()[0][0] == 1
        && surface.canonical() == &Divisor::from_ints(&[-3])
        && surface.chi_o() == qi(1)
}

/// `-(C + 3/2) H~ - B0` on the projective plane.
pub fn abch_p2(ch: &ChernCharacter, chp: &ChernCharacter, surface: &Surface) -> Result<DivisorExpr> {
    if !is_p2(surface) {
        return Err(Error::WrongSurface(format!("expected the projective plane, got {}", surface.name())));
    }
    let frame = Frame::untwisted(surface.clone(), Divisor::from_ints(&[1]))?;
    condition_c(ch, &frame)?;
    let wall = wall_of_pair(ch, chp, &frame)?;
    Ok(DivisorExpr::new().with(Sym::HTilde, -(&wall.center + q(3, 2))).with(Sym::B0, qi(-1)))
}

/// Whether a global Bayer–Macrì map is known to exist for `ch` on this surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalMapKnown {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for GlobalMapKnown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GlobalMapKnown::Yes => "yes",
            GlobalMapKnown::No => "no",
            GlobalMapKnown::Unknown => "unknown",
        })
    }
}

/// `yes` on K3 surfaces and for primitive positive-rank classes on the
/// projective plane, `no` for non-primitive classes there, `unknown` elsewhere.
pub fn global_map_known(ch: &ChernCharacter, frame: &Frame) -> GlobalMapKnown {
    let surface = frame.surface();
    if surface.is_k3() {
        GlobalMapKnown::Yes
    } else if is_p2(surface) && ch.ch0.is_positive() {
        match condition_c(ch, frame) {
            Ok(()) => GlobalMapKnown::Yes,
            Err(_) => GlobalMapKnown::No,
        }
    } else {
        GlobalMapKnown::Unknown
    }
}

/// Outcome of [`relation_checks`] at one point of a wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub s: Q,
    pub t_sq: Q,
    /// `mu t + s`, to be compared with `C`.
    pub mu_t_plus_s: Q,
    /// `mu omega + beta = C H + u gamma`.
    pub relation1: bool,
    /// `beta.(mu omega + beta) - (omega^2 + beta^2)/2 = -(g/2) D - (d/2) u^2`.
    pub relation2: bool,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.relation1 && self.relation2
    }
}

/// Evaluates both wall relations at the point of `wall` above `s`.
///
/// Only `t^2` enters, so the check is exact even when `t` is irrational.
pub fn relation_checks(wall: &WallRecord, s: &Q) -> Result<RelationReport> {
    let t_sq = wall.t_sq_at(s).ok_or_else(|| Error::InvalidInput(format!("s = {s} is not above the wall")))?;
    let frame = &wall.frame;
    let parts = match wall.model {
        WallModel::Untwisted => central_charge_parts(&wall.ch, frame, s, &t_sq),
        WallModel::TwistedK3 => twisted_central_charge_parts(&wall.ch, frame, s, &t_sq),
    };
    if parts.im_over_t.is_zero() {
        return Err(Error::NotUpperHalfPlane("0".into()));
    }
    let mu_t_plus_s = -&parts.re / &parts.im_over_t + s;
    let (g, d, u) = (frame.g(), frame.d(), frame.u());
    let half = q(1, 2);
    let lhs = s * g * &mu_t_plus_s - u * u * d - (&t_sq * g + s * s * g - u * u * d) * &half;
    let rhs = -(g * &half * wall.effective_d()) - d * &half * u * u;
    Ok(RelationReport { s: s.clone(), relation1: mu_t_plus_s == wall.center, relation2: lhs == rhs, mu_t_plus_s, t_sq })
}
