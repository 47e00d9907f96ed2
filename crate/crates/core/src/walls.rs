//! Potential walls `W(ch, ch')` on a frame: centers, the constant `D`, the
//! invariants `F` and `F'`, the `(s, q)` semi-line model, derived duality,
//! twisted K3 walls and bounded destabilizer enumeration.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};
use crate::stability::{central_charge_parts, twisted_central_charge_parts, ChargeParts, Frame};
use crate::surface::{ChernCharacter, Divisor};

/// Which central charge the wall is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WallModel {
    /// `Z_{omega, beta}`.
    Untwisted,
    /// `Zhat_{omega, beta}` on a K3 surface; radii grow by `2 / H^2`.
    TwistedK3,
}

impl WallModel {
    pub fn label(&self) -> &'static str {
        match self {
            WallModel::Untwisted => "untwisted",
            WallModel::TwistedK3 => "twisted-k3",
        }
    }
}

impl fmt::Display for WallModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A potential wall `(s - C)^2 + t^2 = radius_sq`.
///
/// `d` is always the untwisted constant; in [`WallModel::TwistedK3`] the
/// radius is `C^2 + D + 2/g`. Coincident walls from several destabilizers
/// share one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallRecord {
    pub ch: ChernCharacter,
    pub destabilizers: Vec<ChernCharacter>,
    pub frame: Frame,
    pub center: Q,
    pub d: Q,
    pub radius_sq: Q,
    pub model: WallModel,
}

/// Frame coordinates of a character: `(rank, H-coordinate, gamma-coordinate, ch_2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameCoords {
    pub rank: Q,
    pub c1: Q,
    pub c2: Q,
    pub chi: Q,
}

impl FrameCoords {
    pub fn of(ch: &ChernCharacter, frame: &Frame) -> Self {
        let (c1, c2) = frame.coords(&ch.ch1);
        FrameCoords { rank: ch.ch0.clone(), c1, c2, chi: ch.ch2.clone() }
    }
}

/// The `(s, q)` semi-line `q = slope * s + intercept` on `q > s^2 / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqLine {
    pub slope: Q,
    pub intercept: Q,
    /// Common point of all walls of `ch` when `ch_0 != 0`.
    pub pivot: Option<(Q, Q)>,
}

impl SqLine {
    pub fn eval(&self, s: &Q) -> Q {
        &self.slope * s + &self.intercept
    }

    pub fn contains(&self, s: &Q, q_val: &Q) -> bool {
        &self.eval(s) == q_val
    }
}

fn twist_shift(frame: &Frame, model: WallModel) -> Q {
    match model {
        WallModel::Untwisted => Q::zero(),
        WallModel::TwistedK3 => qi(2) / frame.g(),
    }
}

fn center_and_d(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame) -> Result<(Q, Q)> {
    let a = FrameCoords::of(ch, frame);
    let b = FrameCoords::of(chp, frame);
    let (g, d, u) = (frame.g(), frame.d(), frame.u());
    let (x, y1, y2, z) = (&a.rank, &a.c1, &a.c2, &a.chi);
    let (r, c1, c2, chi) = (&b.rank, &b.c1, &b.c2, &b.chi);
    let den = g * (x * c1 - r * y1);
    if den.is_zero() {
        return Err(Error::DegenerateWall);
    }
    let ud = u * d;
    let c_num = x * chi - r * z + &ud * (x * c2 - r * y2);
    let u2d = u * &ud;
    let two = qi(2);
    let d_num =
        &two * z * c1 - &two * c2 * &ud * y1 - x * &u2d * c1 + &two * y2 * &ud * c1 - &two * chi * y1 + r * &u2d * y1;
    Ok((c_num / &den, d_num / den))
}

/// The wall of `ch` and `ch'` for `Z_{omega,beta}`.
pub fn wall_of_pair(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame) -> Result<WallRecord> {
    build_wall(ch, chp, frame, WallModel::Untwisted)
}

/// The wall of `ch` and `ch'` for the twisted charge on a K3 surface.
pub fn k3_wall_of_pair(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame) -> Result<WallRecord> {
    if !frame.surface().is_k3() {
        return Err(Error::NotK3);
    }
    build_wall(ch, chp, frame, WallModel::TwistedK3)
}

/// Dispatches on `model`.
pub fn wall_in_model(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame, model: WallModel) -> Result<WallRecord> {
    match model {
        WallModel::Untwisted => wall_of_pair(ch, chp, frame),
        WallModel::TwistedK3 => k3_wall_of_pair(ch, chp, frame),
    }
}

fn build_wall(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame, model: WallModel) -> Result<WallRecord> {
    frame.surface().check(&ch.ch1)?;
    frame.surface().check(&chp.ch1)?;
    let (center, d) = center_and_d(ch, chp, frame)?;
    let radius_sq = &center * &center + &d + twist_shift(frame, model);
    Ok(WallRecord {
        ch: ch.clone(),
        destabilizers: vec![chp.clone()],
        frame: frame.clone(),
        center,
        d,
        radius_sq,
        model,
    })
}

fn f_form(x: &Q, y1: &Q, y2: &Q, z: &Q, frame: &Frame) -> Q {
    let (g, d, u) = (frame.g(), frame.d(), frame.u());
    let shift = u - y2 / x;
    d / g * &shift * &shift + (y1 * y1 * g - y2 * y2 * d - qi(2) * x * z) / (x * x * g)
}

/// `F(ch) = (d/g)(u - y2/x)^2 + (y1^2 g - y2^2 d - 2xz) / (x^2 g)`; independent of `ch'`.
pub fn f_invariant(ch: &ChernCharacter, frame: &Frame) -> Result<Q> {
    let a = FrameCoords::of(ch, frame);
    if a.rank.is_zero() {
        return Err(Error::ZeroRank("F(ch) needs ch_0 != 0"));
    }
    Ok(f_form(&a.rank, &a.c1, &a.c2, &a.chi, frame))
}

/// `F'(ch')`, the same expression in the destabilizer's coordinates `(r, c1, c2, chi)`.
pub fn fprime_invariant(chp: &ChernCharacter, frame: &Frame) -> Result<Q> {
    let b = FrameCoords::of(chp, frame);
    if b.rank.is_zero() {
        return Err(Error::ZeroRank("F'(ch') needs ch'_0 != 0"));
    }
    Ok(f_form(&b.rank, &b.c1, &b.c2, &b.chi, frame))
}

/// Residuals of the two linear `D`-`C` relations, each zero when the relation holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcResiduals {
    /// `D + (2 y1/x) C - (ud(2 y2 - ux) + 2z)/(gx)`, present when `x != 0`.
    pub raw: Option<Q>,
    /// `D + (2 y1/x) C - (y1^2/x^2 - F)`, present when `x != 0`.
    pub via_f: Option<Q>,
    /// `D + (2 c1/r) C - (c1^2/r^2 - F')`, present when `r != 0`.
    pub via_fprime: Option<Q>,
}

impl DcResiduals {
    pub fn all_zero(&self) -> bool {
        [&self.raw, &self.via_f, &self.via_fprime].iter().all(|r| r.as_ref().is_none_or(Zero::is_zero))
    }
}

impl WallRecord {
    /// The first destabilizer.
    pub fn chp(&self) -> &ChernCharacter {
        &self.destabilizers[0]
    }

    /// `radius_sq <= 0`: no point of the upper half-plane lies on the wall.
    pub fn is_empty(&self) -> bool {
        !self.radius_sq.is_positive()
    }

    /// `D + 2/g` in twisted mode, `D` otherwise, so that `radius_sq = C^2 + effective_d`.
    pub fn effective_d(&self) -> Q {
        &self.d + twist_shift(&self.frame, self.model)
    }

    /// `t^2` of the wall point above `s`, if it lies in the upper half-plane.
    pub fn t_sq_at(&self, s: &Q) -> Option<Q> {
        let ds = s - &self.center;
        let t_sq = &self.radius_sq - &ds * &ds;
        t_sq.is_positive().then_some(t_sq)
    }

    /// `(s - C)^2 + t^2 <= R^2` for a nonempty wall.
    pub fn contains_closed(&self, s: &Q, t_sq: &Q) -> bool {
        if self.is_empty() {
            return false;
        }
        let ds = s - &self.center;
        &ds * &ds + t_sq <= self.radius_sq
    }

    pub fn sq_line(&self) -> SqLine {
        let shift = twist_shift(&self.frame, self.model) * q(1, 2);
        let intercept = &self.d * q(1, 2) + &shift;
        let pivot = f_invariant(&self.ch, &self.frame).ok().map(|f| {
            let a = FrameCoords::of(&self.ch, &self.frame);
            let s0 = &a.c1 / &a.rank;
            let q0 = (&s0 * &s0 - f) * q(1, 2) + &shift;
            (s0, q0)
        });
        SqLine { slope: self.center.clone(), intercept, pivot }
    }

    /// Charge parts of `ch` and the first destabilizer at `(s, t^2)` for this wall's model.
    pub fn charges_at(&self, s: &Q, t_sq: &Q) -> (ChargeParts, ChargeParts) {
        let f = match self.model {
            WallModel::Untwisted => central_charge_parts,
            WallModel::TwistedK3 => twisted_central_charge_parts,
        };
        (f(&self.ch, &self.frame, s, t_sq), f(self.chp(), &self.frame, s, t_sq))
    }

    /// `Re Z(ch) Im Z(ch') - Re Z(ch') Im Z(ch)` divided by `t`, at `(s, t^2)`.
    pub fn slope_defect_at(&self, s: &Q, t_sq: &Q) -> Q {
        let (a, b) = self.charges_at(s, t_sq);
        &a.re * &b.im_over_t - &b.re * &a.im_over_t
    }

    /// Checks both `D`-`C` relations that apply to this wall.
    pub fn dc_residuals(&self) -> DcResiduals {
        let frame = &self.frame;
        let a = FrameCoords::of(&self.ch, frame);
        let b = FrameCoords::of(self.chp(), frame);
        let (g, d, u) = (frame.g(), frame.d(), frame.u());
        let two = qi(2);
        let (mut raw, mut via_f, mut via_fprime) = (None, None, None);
        if !a.rank.is_zero() {
            let x = &a.rank;
            let lin = &self.d + &two * &a.c1 / x * &self.center;
            let r1 = (u * d * (&two * &a.c2 - u * x) + &two * &a.chi) / (g * x);
            raw = Some(&lin - r1);
            let f = f_form(x, &a.c1, &a.c2, &a.chi, frame);
            via_f = Some(&lin - (&a.c1 * &a.c1 / (x * x) - f));
        }
        if !b.rank.is_zero() {
            let r = &b.rank;
            let lin = &self.d + &two * &b.c1 / r * &self.center;
            let f = f_form(r, &b.c1, &b.c2, &b.chi, frame);
            via_fprime = Some(lin - (&b.c1 * &b.c1 / (r * r) - f));
        }
        DcResiduals { raw, via_f, via_fprime }
    }
}

impl fmt::Display for WallRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "W(ch={}, ch'={}) C={} D={} R^2={} [{}]",
            self.ch,
            self.chp(),
            self.center,
            self.d,
            self.radius_sq,
            self.model
        )
    }
}

/// Slope of every wall line of a torsion character `(0, ch_1, ch_2)`: `C = (z + d u y2)/(g y1)`.
pub fn torsion_wall_slope(ch: &ChernCharacter, frame: &Frame) -> Result<Q> {
    let a = FrameCoords::of(ch, frame);
    if !a.rank.is_zero() {
        return Err(Error::WrongShape(format!("expected ch_0 = 0, got {}", a.rank)));
    }
    if a.c1.is_zero() {
        return Err(Error::DegenerateWall);
    }
    Ok((&a.chi + frame.d() * frame.u() * &a.c2) / (frame.g() * &a.c1))
}

/// True when the two walls do not meet in the open upper half-plane.
pub fn walls_nested(a: &WallRecord, b: &WallRecord) -> bool {
    if a.center == b.center {
        return a.radius_sq != b.radius_sq || a.is_empty();
    }
    let (da, db) = (a.effective_d(), b.effective_d());
    let s_star = (db - da) / (qi(2) * (&a.center - &b.center));
    a.t_sq_at(&s_star).is_none()
}

/// Outcome of [`dual_wall_check`].
#[derive(Debug, Clone)]
pub struct DualWallReport {
    pub original: WallRecord,
    pub dual: WallRecord,
    pub center_negated: bool,
    pub d_preserved: bool,
    pub radius_preserved: bool,
}

impl DualWallReport {
    pub fn passed(&self) -> bool {
        self.center_negated && self.d_preserved && self.radius_preserved
    }
}

/// Compares `W(ch, ch')` with `W(-ch*, -ch'*)` in the mirrored frame `(H, -gamma, u)`.
pub fn dual_wall_check(ch: &ChernCharacter, chp: &ChernCharacter, frame: &Frame) -> Result<DualWallReport> {
    dual_wall_check_in(ch, chp, frame, WallModel::Untwisted)
}

pub fn dual_wall_check_in(
    ch: &ChernCharacter,
    chp: &ChernCharacter,
    frame: &Frame,
    model: WallModel,
) -> Result<DualWallReport> {
    let original = wall_in_model(ch, chp, frame, model)?;
    let dual = wall_in_model(&ch.derived_dual(), &chp.derived_dual(), &frame.mirrored(), model)?;
    Ok(DualWallReport {
        center_negated: dual.center == -&original.center,
        d_preserved: dual.d == original.d,
        radius_preserved: dual.radius_sq == original.radius_sq,
        original,
        dual,
    })
}

/// Bounds of the destabilizer grid searched by [`enumerate_walls`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// `1 <= |ch'_0| <= max_rank`, with the sign of `ch_0` (positive for torsion `ch`).
    pub max_rank: u32,
    /// Each Picard coordinate of `ch'_1` lies in `[-c1_bound, c1_bound]`.
    pub c1_bound: u32,
    /// `ch'_2` ranges over `(1/chi_denom) Z`.
    pub chi_denom: u32,
    /// `0 <= ch'_1^2 - 2 ch'_0 ch'_2 <= 2 |ch'_0| max_length`.
    pub max_length: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_rank: 1, c1_bound: 3, chi_denom: 2, max_length: 3 }
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max-rank={} c1-bound={} chi-denom={} max-length={}",
            self.max_rank, self.c1_bound, self.chi_denom, self.max_length
        )
    }
}

fn picard_grid(rank: usize, bound: i64) -> Vec<Divisor> {
    let range: Vec<i64> = (-bound..=bound).collect();
    match rank {
        1 => range.iter().map(|&a| Divisor::from_ints(&[a])).collect(),
        _ => range.iter().flat_map(|&a| range.iter().map(move |&b| Divisor::from_ints(&[a, b]))).collect(),
    }
}

fn ceil_q(x: &Q) -> Q {
    x.ceil()
}

fn floor_q(x: &Q) -> Q {
    x.floor()
}

fn candidate_walls(
    ch: &ChernCharacter,
    r: i64,
    c1: &Divisor,
    frame: &Frame,
    bounds: &SearchBounds,
    model: WallModel,
) -> Vec<WallRecord> {
    let surface = frame.surface();
    let rq = qi(r);
    let c1_sq = surface.dot(c1, c1);
    let denom = qi(bounds.chi_denom as i64);
    // disc = c1^2 - 2 r ch2 in [0, 2|r| L]  <=>  ch2 between c1^2/(2r) and (c1^2 - 2|r|L)/(2r)
    let e1 = &c1_sq / (qi(2) * &rq);
    let e2 = (&c1_sq - qi(2) * rq.abs() * qi(bounds.max_length as i64)) / (qi(2) * &rq);
    let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
    let k_lo = ceil_q(&(&lo * &denom)).to_integer();
    let k_hi = floor_q(&(&hi * &denom)).to_integer();
    let mut out = Vec::new();
    let mut k = k_lo;
    while k <= k_hi {
        let ch2 = Q::from(k.clone()) / &denom;
        k += 1;
        let chp = ChernCharacter { ch0: rq.clone(), ch1: c1.clone(), ch2 };
        let Ok(w) = wall_in_model(ch, &chp, frame, model) else { continue };
        if w.is_empty() {
            continue;
        }
        let quotient = ch - &chp;
        if !admissible_factor(surface, &chp) || !admissible_factor(surface, &quotient) {
            continue;
        }
        let im_sub = central_charge_parts(&chp, frame, &w.center, &Q::zero()).im_over_t;
        let im_ch = central_charge_parts(ch, frame, &w.center, &Q::zero()).im_over_t;
        if im_sub.is_positive() && im_sub <= im_ch {
            out.push(w);
        }
    }
    out
}

/// Bogomolov type for factors of nonzero rank. Torsion factors are exempt,
/// since a sheaf on a curve of negative self-intersection violates it;
/// for them only `ch_2 >= 0` is required when `ch_1 = 0`.
fn admissible_factor(surface: &crate::surface::Surface, c: &ChernCharacter) -> bool {
    if !c.ch0.is_zero() {
        surface.is_bogomolov(c)
    } else if c.ch1.is_zero() {
        !c.ch2.is_negative()
    } else {
        true
    }
}

fn cmp_ch(a: &ChernCharacter, b: &ChernCharacter) -> Ordering {
    (&a.ch0, a.ch1.coords(), &a.ch2).cmp(&(&b.ch0, b.ch1.coords(), &b.ch2))
}

/// Searches the destabilizer grid for nonempty potential walls of `ch`.
///
/// Survivors have both `ch'` and `ch - ch'` of Bogomolov type (when of
/// nonzero rank) and
/// `0 < Im Z(ch') <= Im Z(ch)` above the wall's center. Walls with equal
/// `(C, radius_sq)` are merged; the list is sorted by decreasing radius,
/// then by center. Every wall is only a potential wall.
pub fn enumerate_walls(ch: &ChernCharacter, frame: &Frame, bounds: &SearchBounds) -> Result<Vec<WallRecord>> {
    enumerate_walls_in(ch, frame, bounds, WallModel::Untwisted)
}

pub fn enumerate_walls_in(
    ch: &ChernCharacter,
    frame: &Frame,
    bounds: &SearchBounds,
    model: WallModel,
) -> Result<Vec<WallRecord>> {
    if model == WallModel::TwistedK3 && !frame.surface().is_k3() {
        return Err(Error::NotK3);
    }
    frame.surface().check(&ch.ch1)?;
    if bounds.max_rank == 0 || bounds.chi_denom == 0 {
        return Err(Error::EmptySearch);
    }
    if ch.ch0.is_zero() && ch.ch1.is_zero() {
        return Ok(Vec::new());
    }
    let sign: i64 = if ch.ch0.is_negative() { -1 } else { 1 };
    let grid = picard_grid(frame.surface().rank(), bounds.c1_bound as i64);
    let jobs: Vec<(i64, &Divisor)> =
        (1..=bounds.max_rank as i64).flat_map(|r| grid.iter().map(move |c1| (sign * r, c1))).collect();
    let mut found: Vec<WallRecord> =
        jobs.par_iter().flat_map_iter(|(r, c1)| candidate_walls(ch, *r, c1, frame, bounds, model)).collect();
    found.sort_by(|a, b| {
        b.radius_sq.cmp(&a.radius_sq).then_with(|| a.center.cmp(&b.center)).then_with(|| cmp_ch(a.chp(), b.chp()))
    });
    let mut merged: Vec<WallRecord> = Vec::new();
    for w in found {
        match merged.last_mut() {
            Some(last) if last.center == w.center && last.radius_sq == w.radius_sq => {
                last.destabilizers.extend(w.destabilizers);
            }
            _ => merged.push(w),
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Surface;

    fn p2_frame() -> Frame {
        Frame::untwisted(Surface::projective_plane(), Divisor::from_ints(&[1])).unwrap()
    }

    fn ch(ch0: i64, ch1: &[i64], ch2: Q) -> ChernCharacter {
        ChernCharacter::new(ch0, Divisor::from_ints(ch1), ch2)
    }

    fn toy_frame_e2() -> Frame {
        let s = Surface::hirzebruch(2).unwrap();
        Frame::new(s, Divisor::new(vec![q(1, 2), q(3, 2)]), Divisor::new(vec![q(-1, 2), q(1, 2)]), q(1, 2)).unwrap()
    }

    #[test]
    fn p2_pair_examples() {
        let f = p2_frame();
        let i2 = ChernCharacter::ideal_of_points(1, 2);
        let w = wall_of_pair(&i2, &ch(1, &[-1], q(1, 2)), &f).unwrap();
        assert_eq!((w.center.clone(), w.d.clone(), w.radius_sq.clone()), (q(-5, 2), qi(-4), q(9, 4)));
        let w = wall_of_pair(&i2, &ch(1, &[-1], q(-1, 2)), &f).unwrap();
        assert_eq!((w.center.clone(), w.d.clone()), (q(-3, 2), qi(-4)));
        assert!(w.is_empty());
        assert_eq!(wall_of_pair(&i2, &ch(2, &[0], qi(1)), &f), Err(Error::DegenerateWall));
    }

    #[test]
    fn toy_pair_example() {
        let w = wall_of_pair(&ChernCharacter::ideal_of_points(2, 2), &ch(1, &[0, -1], qi(0)), &toy_frame_e2()).unwrap();
        assert_eq!(w.center, q(-7, 2));
    }

    #[test]
    fn f_examples() {
        let f = p2_frame();
        for n in 1..6 {
            assert_eq!(f_invariant(&ChernCharacter::ideal_of_points(1, n), &f).unwrap(), qi(2 * n));
        }
        assert_eq!(f_invariant(&ChernCharacter::points(1, 1), &f), Err(Error::ZeroRank("F(ch) needs ch_0 != 0")));
        // Sigma_2, lambda = 1/2, u = 1/2: F = (d/g) u^2 + 2n/g = 1/4 + 4
        let t = toy_frame_e2();
        assert_eq!(f_invariant(&ChernCharacter::ideal_of_points(2, 2), &t).unwrap(), q(17, 4));
    }

    #[test]
    fn sq_line_examples() {
        let f = p2_frame();
        let w = wall_of_pair(&ChernCharacter::ideal_of_points(1, 2), &ch(1, &[-1], q(1, 2)), &f).unwrap();
        let line = w.sq_line();
        assert_eq!((line.slope.clone(), line.intercept.clone()), (q(-5, 2), qi(-2)));
        assert_eq!(line.pivot, Some((qi(0), qi(-2))));
        let torsion = ch(0, &[1], q(1, 2));
        assert_eq!(torsion_wall_slope(&torsion, &f).unwrap(), q(1, 2));
        for c in [ch(1, &[0], qi(0)), ch(1, &[-1], qi(0)), ch(2, &[-1], q(-3, 2))] {
            let w = wall_of_pair(&torsion, &c, &f).unwrap();
            assert_eq!(w.center, q(1, 2));
            assert!(w.sq_line().pivot.is_none());
        }
    }

    #[test]
    fn dual_example() {
        let rep = dual_wall_check(&ChernCharacter::ideal_of_points(1, 2), &ch(1, &[-1], q(1, 2)), &p2_frame()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.dual.center, q(5, 2));
        assert_eq!(rep.dual.d, qi(-4));
    }

    #[test]
    fn k3_shift() {
        let k3 = Surface::k3_rank_one(2).unwrap();
        let f = Frame::untwisted(k3, Divisor::from_ints(&[1])).unwrap();
        let c = ChernCharacter::ideal_of_points(1, 1);
        let cp = ch(1, &[-1], qi(0));
        let a = wall_of_pair(&c, &cp, &f).unwrap();
        let b = k3_wall_of_pair(&c, &cp, &f).unwrap();
        assert_eq!((&a.center, &a.d), (&b.center, &b.d));
        assert_eq!(&b.radius_sq - &a.radius_sq, qi(1));
        assert_eq!(k3_wall_of_pair(&c, &cp, &p2_frame()).unwrap_err(), Error::NotK3);
    }

    #[test]
    fn enumerate_p2_two_points() {
        let walls =
            enumerate_walls(&ChernCharacter::ideal_of_points(1, 2), &p2_frame(), &SearchBounds::default()).unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].center, q(-5, 2));
        assert_eq!(walls[0].radius_sq, q(9, 4));
        assert_eq!(walls[0].destabilizers, vec![ch(1, &[-1], q(1, 2))]);
    }

    #[test]
    fn enumerate_trivial_and_empty() {
        let f = p2_frame();
        assert!(enumerate_walls(&ChernCharacter::points(1, 3), &f, &SearchBounds::default()).unwrap().is_empty());
        let none = SearchBounds { max_rank: 0, ..SearchBounds::default() };
        assert_eq!(enumerate_walls(&ChernCharacter::ideal_of_points(1, 2), &f, &none).unwrap_err(), Error::EmptySearch);
    }

    #[test]
    fn enumerate_toy_outermost_pair() {
        let walls =
            enumerate_walls(&ChernCharacter::ideal_of_points(2, 2), &toy_frame_e2(), &SearchBounds::default()).unwrap();
        let top = &walls[0];
        assert_eq!(top.center, q(-7, 2));
        assert_eq!(top.destabilizers, vec![ch(1, &[-1, 0], qi(-1)), ch(1, &[0, -1], qi(0))]);
    }

    #[test]
    fn on_wall_and_relations() {
        let f = p2_frame();
        let w = wall_of_pair(&ChernCharacter::ideal_of_points(1, 3), &ch(1, &[-1], q(1, 2)), &f).unwrap();
        assert!(w.dc_residuals().all_zero());
        for s in [q(-7, 2), q(-3, 1), q(-9, 2)] {
            if let Some(t_sq) = w.t_sq_at(&s) {
                assert!(w.slope_defect_at(&s, &t_sq).is_zero());
            }
        }
    }
}
