//! Nef cones of Hilbert schemes of points on fibered surfaces with a section.
//!
//! The surfaces are Hirzebruch surfaces `Sigma_e` and elliptic surfaces
//! `S_e`, with basis `(E, F)`: `E^2 = -e`, `E.F = 1`, `F^2 = 0`. Frames are
//! the one-parameter family
//! `H = lambda (E + eF) + (1 - lambda) F`, `gamma = -lambda (E + eF) + (1 - lambda + e lambda) F`.
//!
//! Divisors on `S^[n]` are reported in the basis `(E+eF)~`, `F~`, `B`,
//! with `B0 = B/2` for the ideal sheaf character `(1, 0, -n)`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bayer_macri::{global_line_bundle_dim2, DivisorExpr, Sym};
use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};
use crate::stability::{central_charge_parts, Frame};
use crate::surface::{ChernCharacter, Divisor, Surface};
use crate::walls::{wall_of_pair, WallRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberedKind {
    Hirzebruch,
    Elliptic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedSurface {
    kind: FiberedKind,
    e: i64,
    surface: Surface,
}

impl FiberedSurface {
    /// `Sigma_e`, `e >= 0`, with `K = -2(E + eF) + (e - 2)F`.
    pub fn hirzebruch(e: i64) -> Result<Self> {
        Ok(FiberedSurface { kind: FiberedKind::Hirzebruch, e, surface: Surface::hirzebruch(e)? })
    }

    /// `S_e`, `e >= 2`, with `K = (e - 2)F`.
    pub fn elliptic(e: i64) -> Result<Self> {
        Ok(FiberedSurface { kind: FiberedKind::Elliptic, e, surface: Surface::elliptic(e)? })
    }

    pub fn kind(&self) -> FiberedKind {
        self.kind
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    /// The symbol of `(E+eF)~`.
    pub fn section_sym(&self) -> Sym {
        match self.e {
            0 => Sym::Gen("E".into()),
            1 => Sym::Gen("E+F".into()),
            e => Sym::Gen(format!("E+{e}F")),
        }
    }

    pub fn fiber_sym(&self) -> Sym {
        Sym::Gen("F".into())
    }

    /// Rewrites an expression over `E~`, `F~`, `B0` as one over `(E+eF)~`, `F~`, `B`.
    pub fn to_toy_basis(&self, picard: &DivisorExpr) -> DivisorExpr {
        let a = picard.coeff(&Sym::Gen("E".into()));
        let b = picard.coeff(&Sym::Gen("F".into()));
        let mut out = DivisorExpr::new().with(self.section_sym(), a.clone()).with(self.fiber_sym(), b - a * qi(self.e));
        for (sym, c) in picard.terms() {
            match sym {
                Sym::Gen(name) if name == "E" || name == "F" => {}
                Sym::B0 => out.add_term(Sym::B, &(c * q(1, 2))),
                other => out.add_term(other.clone(), c),
            }
        }
        out
    }

    fn ideal(&self, n: i64) -> ChernCharacter {
        ChernCharacter::ideal_of_points(2, n)
    }
}

/// The frame `(H, gamma, u)` at `lambda`.
pub fn toy_frame(fs: &FiberedSurface, lambda: &Q, u: &Q) -> Result<Frame> {
    if !lambda.is_positive() || lambda >= &Q::one() {
        return Err(Error::OutOfRange(format!("lambda = {lambda} must lie in (0, 1)")));
    }
    if u.is_negative() {
        return Err(Error::OutOfRange(format!("u = {u} must be non-negative")));
    }
    let e = qi(fs.e);
    let one = Q::one();
    let h = Divisor::new(vec![lambda.clone(), lambda * &e + &one - lambda]);
    let gamma = Divisor::new(vec![-lambda, one - lambda]);
    let frame = Frame::new(fs.surface.clone(), h, gamma, u.clone())?;
    debug_assert_eq!(frame.g(), frame.d());
    Ok(frame)
}

/// The two rank-one destabilizers `(1, -F, 0)` and `(1, -E, -e/2)` that can give the Gieseker wall.
pub fn gieseker_candidates(fs: &FiberedSurface, n: i64) -> Result<[ChernCharacter; 2]> {
    check_n(n)?;
    Ok([
        ChernCharacter::new(1, Divisor::from_ints(&[0, -1]), Q::zero()),
        ChernCharacter::new(1, Divisor::from_ints(&[-1, 0]), q(-fs.e, 2)),
    ])
}

fn check_n(n: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be at least 2")));
    }
    Ok(())
}

fn candidate_wall(fs: &FiberedSurface, n: i64, lambda: &Q, u: &Q, chp: &ChernCharacter) -> Result<WallRecord> {
    let frame = toy_frame(fs, lambda, u)?;
    wall_of_pair(&fs.ideal(n), chp, &frame)
}

/// The nef class `-C H~ - u gamma~ + K~/2 - B0` of the wall `W((1,0,-n), ch')`
/// in the basis `(E+eF)~`, `F~`, `B`.
pub fn candidate_line_bundle(
    fs: &FiberedSurface,
    n: i64,
    lambda: &Q,
    u: &Q,
    chp: &ChernCharacter,
) -> Result<DivisorExpr> {
    let wall = candidate_wall(fs, n, lambda, u, chp)?;
    let expr = global_line_bundle_dim2(&wall.ch, &wall)?;
    Ok(fs.to_toy_basis(&expr.to_picard(&wall.frame)))
}

/// Which end of the frame family a limit is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaEnd {
    Zero,
    One,
}

fn lagrange_at(xs: &[Q], ys: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = yi.clone();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                term = term * (x - xj) / (xi - xj);
            }
        }
        acc += term;
    }
    acc
}

/// Direction of [`candidate_line_bundle`] as `lambda -> 0+` or `1-` at fixed `u`.
///
/// Coefficients times `lambda (1 - lambda)` are polynomials of degree at
/// most three for both Gieseker candidates; they are interpolated exactly
/// on four sample points, checked on a fifth, and evaluated at the end.
pub fn limit_direction(
    fs: &FiberedSurface,
    n: i64,
    u: &Q,
    chp: &ChernCharacter,
    end: LambdaEnd,
) -> Result<DivisorExpr> {
    let xs: Vec<Q> = (1..=5).map(|k| q(k, 6)).collect();
    let exprs = xs
        .iter()
        .map(|l| Ok(candidate_line_bundle(fs, n, l, u, chp)?.scale(&(l * (Q::one() - l)))))
        .collect::<Result<Vec<_>>>()?;
    let mut syms: Vec<Sym> = exprs.iter().flat_map(|e| e.terms().map(|(s, _)| s.clone())).collect();
    syms.sort();
    syms.dedup();
    let x_end = match end {
        LambdaEnd::Zero => Q::zero(),
        LambdaEnd::One => Q::one(),
    };
    let mut out = DivisorExpr::new();
    for sym in syms {
        let ys: Vec<Q> = exprs.iter().map(|e| e.coeff(&sym)).collect();
        if lagrange_at(&xs[..4], &ys[..4], &xs[4]) != ys[4] {
            return Err(Error::NoSolution(format!(
                "coefficient of {sym} is not a cubic after clearing lambda (1 - lambda)"
            )));
        }
        out.add_term(sym, &lagrange_at(&xs[..4], &ys[..4], &x_end));
    }
    if out.is_zero() {
        return Err(Error::NoSolution("limit direction vanishes".into()));
    }
    Ok(out.normalized())
}

/// Output of [`solve_balanced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedFrame {
    pub lambda: Q,
    pub u: Q,
    /// Common center of both candidate walls.
    pub center: Q,
    pub g: Q,
}

fn affine_root(f0: &Q, f1: &Q) -> Option<Q> {
    // f(x) = f0 + (f1 - f0) x
    let slope = f1 - f0;
    (!slope.is_zero()).then(|| -f0 / slope)
}

/// For fixed `lambda`, the `u` at which both candidate centers agree.
///
/// The coincidence locus is a curve in `(lambda, u)`; see [`solve_balanced`].
pub fn coincidence_u(fs: &FiberedSurface, n: i64, lambda: &Q) -> Result<Q> {
    let [c1, c2] = gieseker_candidates(fs, n)?;
    let diff = |u: &Q| -> Result<Q> {
        Ok(candidate_wall(fs, n, lambda, u, &c1)?.center - candidate_wall(fs, n, lambda, u, &c2)?.center)
    };
    affine_root(&diff(&Q::zero())?, &diff(&Q::one())?)
        .ok_or_else(|| Error::NoSolution(format!("candidate centers are parallel in u at lambda = {lambda}")))
}

/// Solves for the frame on which both Gieseker candidates give the same wall
/// and `H` is balanced, `H.E = H.F`.
///
/// Equal centers alone cut out a curve `u(lambda)`; along it the third nef
/// generator does not move, and the balance condition selects `lambda = 1/2`,
/// `u = e/(e+2)`.
pub fn solve_balanced(fs: &FiberedSurface, n: i64) -> Result<BalancedFrame> {
    check_n(n)?;
    let s = &fs.surface;
    let (e_cls, f_cls) = (Divisor::from_ints(&[1, 0]), Divisor::from_ints(&[0, 1]));
    let balance = |l: &Q| {
        let e = qi(fs.e);
        let h = Divisor::new(vec![l.clone(), l * &e + Q::one() - l]);
        s.dot(&h, &e_cls) - s.dot(&h, &f_cls)
    };
    let lambda = affine_root(&balance(&Q::zero()), &balance(&Q::one()))
        .ok_or_else(|| Error::NoSolution("H.E - H.F does not depend on lambda".into()))?;
    let u = coincidence_u(fs, n, &lambda)?;
    if u.is_negative() {
        return Err(Error::NoSolution(format!("balanced frame needs u = {u} < 0")));
    }
    let [c1, c2] = gieseker_candidates(fs, n)?;
    let w1 = candidate_wall(fs, n, &lambda, &u, &c1)?;
    let w2 = candidate_wall(fs, n, &lambda, &u, &c2)?;
    if w1.center != w2.center {
        return Err(Error::NoSolution("candidate centers differ at the solved frame".into()));
    }
    Ok(BalancedFrame { g: w1.frame.g().clone(), lambda, u, center: w1.center })
}

/// Exact check that higher-rank walls lie strictly inside the Gieseker wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherRankReport {
    pub frame: BalancedFrame,
    /// `u^2 + 2n/g`.
    pub base: Q,
    /// `(u^2 + 2n/g) 9/8`.
    pub bound: Q,
    /// `C^2` of the Gieseker wall.
    pub center_sq: Q,
    pub holds: bool,
    /// `(k, (u^2 + 2n/g)(2k-1)^2 / ((2k-1)^2 - 1))` for `k = 2..=k_max`.
    pub per_rank: Vec<(u32, Q)>,
}

pub fn higher_rank_bound_check(fs: &FiberedSurface, n: i64, k_max: u32) -> Result<HigherRankReport> {
    let frame = solve_balanced(fs, n)?;
    let base = &frame.u * &frame.u + qi(2 * n) / &frame.g;
    let bound = &base * q(9, 8);
    let center_sq = &frame.center * &frame.center;
    let per_rank = (2..=k_max)
        .map(|k| {
            let m = qi((2 * k as i64 - 1).pow(2));
            (k, &base * &m / (&m - qi(1)))
        })
        .collect();
    Ok(HigherRankReport { holds: bound < center_sq, base, bound, center_sq, per_rank, frame })
}

/// Result of sweeping rank-one destabilizers `(1, -(mF + kE), L^2/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub center: Q,
    pub checked: usize,
    /// Nonempty walls with `|C'| >= |C|` other than the two candidates.
    pub violations: Vec<(i64, i64, Q)>,
    /// Largest `|C'|` among the nonempty competitors.
    pub max_competitor: Option<(i64, i64, Q)>,
}

fn in_heart_on_wall(w: &WallRecord) -> bool {
    let im = |c: &ChernCharacter| central_charge_parts(c, &w.frame, &w.center, &Q::zero()).im_over_t;
    let sub = im(w.chp());
    sub.is_positive() && sub <= im(&w.ch)
}

/// Checks every `(m, k)` in `[0, bound]^2 \ {(0,0)}` at the balanced frame.
///
/// A competitor counts only if it is a nonempty wall on which `O(L)` can be
/// a subobject: `0 < Im Z(O(L)) <= Im Z(I_Z)` above its center.
pub fn rank_one_sweep(fs: &FiberedSurface, n: i64, bound: i64) -> Result<SweepReport> {
    let bal = solve_balanced(fs, n)?;
    let frame = toy_frame(fs, &bal.lambda, &bal.u)?;
    let ch = fs.ideal(n);
    let cands = gieseker_candidates(fs, n)?;
    let pairs: Vec<(i64, i64)> =
        (0..=bound).flat_map(|m| (0..=bound).map(move |k| (m, k))).filter(|&(m, k)| (m, k) != (0, 0)).collect();
    let walls: Vec<(i64, i64, Option<Q>)> = pairs
        .par_iter()
        .map(|&(m, k)| {
            let l = Divisor::from_ints(&[-k, -m]);
            let l_sq = fs.surface.dot(&l, &l);
            let chp = ChernCharacter { ch0: Q::one(), ch1: l, ch2: l_sq * q(1, 2) };
            if cands.contains(&chp) {
                return (m, k, None);
            }
            match wall_of_pair(&ch, &chp, &frame) {
                Ok(w) if !w.is_empty() && in_heart_on_wall(&w) => (m, k, Some(w.center.abs())),
                _ => (m, k, None),
            }
        })
        .collect();
    let target = bal.center.abs();
    let violations = walls
        .iter()
        .filter_map(|(m, k, c)| c.as_ref().filter(|c| **c >= target).map(|c| (*m, *k, c.clone())))
        .collect();
    let max_competitor =
        walls.iter().filter_map(|(m, k, c)| c.as_ref().map(|c| (*m, *k, c.clone()))).max_by(|a, b| a.2.cmp(&b.2));
    Ok(SweepReport { center: bal.center, checked: pairs.len(), violations, max_competitor })
}

/// The three generators of the nef cone of `S^[n]` and their certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefCone {
    pub generators: [DivisorExpr; 3],
    pub balanced: BalancedFrame,
    pub certificate: HigherRankReport,
}

/// Computes the nef cone: the limits `lambda -> 0+, 1-` of the two candidate
/// classes give `F~` and `(E+eF)~`; the common Gieseker wall at the balanced
/// frame gives the third generator.
pub fn nef_cone(fs: &FiberedSurface, n: i64) -> Result<NefCone> {
    let certificate = higher_rank_bound_check(fs, n, 6)?;
    if !certificate.holds {
        return Err(Error::NoSolution("higher-rank walls are not dominated".into()));
    }
    let bal = certificate.frame.clone();
    let [c1, c2] = gieseker_candidates(fs, n)?;
    let section = limit_direction(fs, n, &bal.u, &c2, LambdaEnd::One)?;
    let fiber = limit_direction(fs, n, &bal.u, &c1, LambdaEnd::Zero)?;
    let third = candidate_line_bundle(fs, n, &bal.lambda, &bal.u, &c1)?;
    if third != candidate_line_bundle(fs, n, &bal.lambda, &bal.u, &c2)? {
        return Err(Error::NoSolution("candidate classes differ on the common wall".into()));
    }
    Ok(NefCone { generators: [section, fiber, third], balanced: bal, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(e: i64) -> FiberedSurface {
        FiberedSurface::hirzebruch(e).unwrap()
    }

    #[test]
    fn frames() {
        let f = toy_frame(&sigma(2), &q(1, 2), &q(1, 2)).unwrap();
        assert_eq!((f.g(), f.d()), (&qi(1), &qi(1)));
        let f = toy_frame(&sigma(0), &q(1, 2), &qi(0)).unwrap();
        assert_eq!(f.g(), &q(1, 2));
        assert!(matches!(toy_frame(&sigma(2), &qi(0), &qi(0)), Err(Error::OutOfRange(_))));
        assert!(matches!(toy_frame(&sigma(2), &qi(1), &qi(0)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn balanced_examples() {
        let b = solve_balanced(&sigma(2), 2).unwrap();
        assert_eq!((b.lambda, b.u, b.center), (q(1, 2), q(1, 2), q(-7, 2)));
        let b = solve_balanced(&sigma(0), 2).unwrap();
        assert_eq!((b.lambda, b.u), (q(1, 2), qi(0)));
        let b = solve_balanced(&sigma(4), 3).unwrap();
        assert_eq!((b.lambda, b.u, b.center), (q(1, 2), q(2, 3), qi(-6) + q(2, 3)));
    }

    #[test]
    fn candidate_formula() {
        let fs = sigma(3);
        let (n, lambda, u) = (4, q(1, 3), q(1, 5));
        let [c1, _] = gieseker_candidates(&fs, n).unwrap();
        let got = candidate_line_bundle(&fs, n, &lambda, &u, &c1).unwrap();
        let one = Q::one();
        let f_coeff = qi(n) * (&one - &lambda) / &lambda - &u * (qi(2) * (&one - &lambda) + qi(3) * &lambda);
        // K~/2 = -(E+3F)~ + 1/2 F~ on Sigma_3
        let expected = DivisorExpr::new()
            .with(fs.section_sym(), qi(n) - qi(1))
            .with(fs.fiber_sym(), f_coeff + q(1, 2))
            .with(Sym::B, q(-1, 2));
        assert_eq!(got, expected);
    }

    #[test]
    fn limits() {
        let fs = sigma(2);
        let [c1, c2] = gieseker_candidates(&fs, 2).unwrap();
        let f = limit_direction(&fs, 2, &q(1, 2), &c1, LambdaEnd::Zero).unwrap();
        assert_eq!(f, DivisorExpr::new().with(fs.fiber_sym(), qi(1)));
        let s = limit_direction(&fs, 2, &q(1, 2), &c2, LambdaEnd::One).unwrap();
        assert_eq!(s, DivisorExpr::new().with(fs.section_sym(), qi(1)));
    }

    #[test]
    fn third_generator_constant_along_coincidence_curve() {
        let fs = sigma(2);
        let n = 3;
        let [c1, c2] = gieseker_candidates(&fs, n).unwrap();
        let reference = candidate_line_bundle(&fs, n, &q(1, 2), &q(1, 2), &c1).unwrap();
        for lambda in [q(2, 5), q(1, 2), q(3, 5)] {
            let u = coincidence_u(&fs, n, &lambda).unwrap();
            if u.is_negative() {
                continue;
            }
            let a = candidate_line_bundle(&fs, n, &lambda, &u, &c1).unwrap();
            let b = candidate_line_bundle(&fs, n, &lambda, &u, &c2).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, reference);
        }
    }

    #[test]
    fn higher_rank_examples() {
        let r = higher_rank_bound_check(&sigma(2), 2, 5).unwrap();
        assert_eq!((r.bound.clone(), r.center_sq.clone()), (q(153, 32), q(49, 4)));
        assert!(r.holds);
        assert!(r.per_rank.windows(2).all(|w| w[0].1 > w[1].1 && w[1].1 > r.base));
        let r = higher_rank_bound_check(&sigma(0), 2, 2).unwrap();
        assert_eq!((r.bound, r.center_sq), (qi(9), qi(16)));
    }

    #[test]
    fn nef_cone_examples() {
        let fs = sigma(2);
        let cone = nef_cone(&fs, 2).unwrap();
        let third = DivisorExpr::new().with(fs.section_sym(), qi(1)).with(fs.fiber_sym(), qi(1)).with(Sym::B, q(-1, 2));
        assert_eq!(cone.generators[2], third);
        assert_eq!(cone.generators[2].to_string(), "(E+2F)~ + F~ - 1/2 B");

        let fs = FiberedSurface::elliptic(2).unwrap();
        let cone = nef_cone(&fs, 2).unwrap();
        assert_eq!(cone.generators[2].to_string(), "2 (E+2F)~ + F~ - 1/2 B");

        let fs = sigma(0);
        let cone = nef_cone(&fs, 3).unwrap();
        assert_eq!(cone.generators[0].to_string(), "E~");
        assert_eq!(cone.generators[2].to_string(), "2 E~ + 2 F~ - 1/2 B");
    }

    #[test]
    fn sweep_small() {
        let r = rank_one_sweep(&sigma(2), 2, 4).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.checked, 24);
    }
}
