//! Fixtures shared by the integration suites: surface presets, frames and
//! small exact-rational samples, built from plain integers so that both
//! proptest strategies and seeded RNG loops can drive them.

#![allow(dead_code)]

use bmwalls::nefcone::{toy_frame, FiberedSurface};
use bmwalls::rational::{q, qi};
use bmwalls::stability::Frame;
use bmwalls::{ChernCharacter, Divisor, Surface, Q};
use rand::Rng;

/// Number of frame families returned by [`frame_of`].
pub const FAMILIES: usize = 12;

/// Frame family `idx`, with `lambda = k/6` and twist `u` where they apply.
///
/// 0: P2; 1..=5: Sigma_0..Sigma_4; 6..=8: elliptic e = 2..4;
/// 9, 10: rank one K3 with `H^2 = 2, 4`; 11: K3 with form `diag(2, -2)`.
pub fn frame_of(idx: usize, k: i64, u: &Q) -> Frame {
    let lambda = q(k.clamp(1, 5), 6);
    match idx {
        0 => Frame::untwisted(Surface::projective_plane(), Divisor::from_ints(&[1])).unwrap(),
        1..=5 => toy_frame(&FiberedSurface::hirzebruch(idx as i64 - 1).unwrap(), &lambda, u).unwrap(),
        6..=8 => toy_frame(&FiberedSurface::elliptic(idx as i64 - 4).unwrap(), &lambda, u).unwrap(),
        9 | 10 => {
            Frame::untwisted(Surface::k3_rank_one(2 * (idx as i64 - 8)).unwrap(), Divisor::from_ints(&[1])).unwrap()
        }
        _ => {
            let s = Surface::k3(vec![vec![2, 0], vec![0, -2]]).unwrap();
            Frame::new(s, Divisor::from_ints(&[1, 0]), Divisor::from_ints(&[0, 1]), u.clone()).unwrap()
        }
    }
}

pub fn is_k3_family(idx: usize) -> bool {
    idx >= 9
}

/// Every preset surface, one per family.
pub fn preset_surfaces() -> Vec<Surface> {
    (0..FAMILIES).map(|i| frame_of(i, 3, &Q::from_integer(0.into())).surface().clone()).collect()
}

/// `(ch0, [a, b], ch2_halves / 2)`, truncated to the surface rank.
pub fn character(surface: &Surface, ch0: i64, c: [i64; 2], ch2_halves: i64) -> ChernCharacter {
    let coords: Vec<i64> = c.iter().take(surface.rank()).copied().collect();
    ChernCharacter::new(ch0, Divisor::from_ints(&coords), q(ch2_halves, 2))
}

/// A seeded sampler over the same integer ranges as the proptest strategies.
pub struct Sampler<R: Rng> {
    pub rng: R,
}

impl<R: Rng> Sampler<R> {
    pub fn rational(&mut self, num: i64, den: i64) -> Q {
        q(self.rng.gen_range(-num..=num), self.rng.gen_range(1..=den))
    }

    pub fn positive(&mut self, num: i64, den: i64) -> Q {
        q(self.rng.gen_range(1..=num), self.rng.gen_range(1..=den))
    }

    pub fn nonneg(&mut self, num: i64, den: i64) -> Q {
        q(self.rng.gen_range(0..=num), self.rng.gen_range(1..=den))
    }

    pub fn frame(&mut self) -> (usize, Frame) {
        let idx = self.rng.gen_range(0..FAMILIES);
        let k = self.rng.gen_range(1..=5);
        let u = self.nonneg(6, 4);
        (idx, frame_of(idx, k, &u))
    }

    pub fn frame_in(&mut self, families: &[usize]) -> (usize, Frame) {
        let idx = families[self.rng.gen_range(0..families.len())];
        let k = self.rng.gen_range(1..=5);
        let u = self.nonneg(6, 4);
        (idx, frame_of(idx, k, &u))
    }

    pub fn character(&mut self, surface: &Surface, ranks: std::ops::RangeInclusive<i64>) -> ChernCharacter {
        let ch0 = self.rng.gen_range(ranks);
        let c = [self.rng.gen_range(-4..=4), self.rng.gen_range(-4..=4)];
        character(surface, ch0, c, self.rng.gen_range(-12..=12))
    }

    pub fn point(&mut self) -> (Q, Q) {
        (self.rational(30, 6), self.positive(20, 6))
    }
}

pub fn zero() -> Q {
    qi(0)
}
