//! Numerical intersection theory on a Neron-Severi lattice of rank one or two,
//! together with Chern characters, Mukai vectors and the Mukai pairing.
//!
//! Every quantity is an exact rational. A [`Surface`] carries the integral
//! intersection matrix in a declared Picard basis, the canonical class and
//! `chi(O_S)`; everything else (K_S^2, ch_2(S), the Todd class) is derived.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};

/// A rational divisor class, in coordinates of the surface's Picard basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    coords: Vec<Q>,
}

impl Divisor {
    pub fn new(coords: Vec<Q>) -> Self {
        Divisor { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Divisor::new(coords.iter().map(|&c| qi(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Divisor::new(vec![Q::zero(); rank])
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Q) -> Divisor {
        Divisor::new(self.coords.iter().map(|c| c * k).collect())
    }
}

impl Divisor {
    /// Coordinates separated by ", " without parentheses.
    pub fn flat(&self) -> String {
        self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.flat())
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        debug_assert_eq!(self.rank(), rhs.rank());
        Divisor::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        debug_assert_eq!(self.rank(), rhs.rank());
        Divisor::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl Mul<&Divisor> for &Q {
    type Output = Divisor;
    fn mul(self, rhs: &Divisor) -> Divisor {
        rhs.scale(self)
    }
}

/// A smooth projective surface, modelled by its numerical invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surface {
    name: String,
    generators: Vec<String>,
    intersection: Vec<Vec<i64>>,
    canonical: Divisor,
    chi_o: i64,
}

impl Surface {
    /// Builds a surface from explicit lattice data.
    ///
    /// The intersection matrix must be square of size 1 or 2, symmetric and
    /// non-degenerate; the canonical class must have matching length.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        intersection: Vec<Vec<i64>>,
        canonical: Divisor,
        chi_o: i64,
    ) -> Result<Self> {
        let rank = intersection.len();
        if !(1..=2).contains(&rank) {
            return Err(Error::InvalidInput(format!("Picard rank must be 1 or 2, got {rank}")));
        }
        if intersection.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidInput("intersection matrix is not square".into()));
        }
        if rank == 2 && intersection[0][1] != intersection[1][0] {
            return Err(Error::InvalidInput("intersection matrix is not symmetric".into()));
        }
        let det = if rank == 1 {
            intersection[0][0]
        } else {
            intersection[0][0] * intersection[1][1] - intersection[0][1] * intersection[1][0]
        };
        if det == 0 {
            return Err(Error::InvalidInput("intersection matrix is degenerate".into()));
        }
        if generators.len() != rank {
            return Err(Error::InvalidInput(format!("expected {rank} generator names, got {}", generators.len())));
        }
        if canonical.rank() != rank {
            return Err(Error::InvalidInput(format!(
                "canonical class has {} coordinates, lattice rank is {rank}",
                canonical.rank()
            )));
        }
        Ok(Surface { name: name.into(), generators, intersection, canonical, chi_o })
    }

    /// The projective plane: `H^2 = 1`, `K = -3H`, `chi(O) = 1`.
    pub fn projective_plane() -> Self {
        Surface::new("P2", vec!["H".into()], vec![vec![1]], Divisor::from_ints(&[-3]), 1).expect("preset is valid")
    }

    /// Hirzebruch surface `Sigma_e` in the basis (E, F) of the negative section and the fiber.
    pub fn hirzebruch(e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::OutOfRange(format!("Hirzebruch surfaces need e >= 0, got {e}")));
        }
        // K = -2(E + eF) + (e - 2)F = -2E - (e + 2)F
        Surface::new(
            format!("Sigma_{e}"),
            vec!["E".into(), "F".into()],
            vec![vec![-e, 1], vec![1, 0]],
            Divisor::from_ints(&[-2, -(e + 2)]),
            1,
        )
    }

    /// Elliptic surface `S_e` over P^1 with a section E of self-intersection `-e`:
    /// `K = (e - 2)F` and `chi(O) = e`.
    pub fn elliptic(e: i64) -> Result<Self> {
        if e < 2 {
            return Err(Error::OutOfRange(format!("elliptic surfaces need e >= 2, got {e}")));
        }
        Surface::new(
            format!("S_{e}"),
            vec!["E".into(), "F".into()],
            vec![vec![-e, 1], vec![1, 0]],
            Divisor::from_ints(&[0, e - 2]),
            e,
        )
    }

    /// A K3 surface with the given intersection form on its (rank <= 2) Picard lattice.
    pub fn k3(intersection: Vec<Vec<i64>>) -> Result<Self> {
        let rank = intersection.len();
        let generators = (1..=rank).map(|i| if rank == 1 { "H".to_string() } else { format!("L{i}") }).collect();
        let s = Surface::new("K3", generators, intersection, Divisor::zero(rank), 2)?;
        if rank == 1 && s.intersection[0][0] % 2 != 0 {
            return Err(Error::InvalidInput("the K3 lattice is even, H^2 must be even".into()));
        }
        if rank == 2 && (s.intersection[0][0] % 2 != 0 || s.intersection[1][1] % 2 != 0) {
            return Err(Error::InvalidInput("the K3 lattice is even".into()));
        }
        Ok(s)
    }

    /// Picard rank one K3 surface with `H^2 = h2`.
    pub fn k3_rank_one(h2: i64) -> Result<Self> {
        if h2 <= 0 {
            return Err(Error::InvalidInput("H^2 must be positive".into()));
        }
        Surface::k3(vec![vec![h2]])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.intersection.len()
    }

    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.intersection
    }

    pub fn canonical(&self) -> &Divisor {
        &self.canonical
    }

    pub fn chi_o(&self) -> Q {
        qi(self.chi_o)
    }

    /// Checks that a divisor lives on this lattice.
    pub fn check(&self, d: &Divisor) -> Result<()> {
        if d.rank() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "divisor has {} coordinates, lattice rank is {}",
                d.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Intersection number `a^T M b`.
    pub fn intersect(&self, a: &Divisor, b: &Divisor) -> Result<Q> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.dot(a, b))
    }

    /// Intersection number without the dimension check; callers guarantee matching ranks.
    pub(crate) fn dot(&self, a: &Divisor, b: &Divisor) -> Q {
        debug_assert_eq!(a.rank(), self.rank());
        debug_assert_eq!(b.rank(), self.rank());
        let mut acc = Q::zero();
        for (i, row) in self.intersection.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m != 0 {
                    acc += &a.coords[i] * &b.coords[j] * qi(m);
                }
            }
        }
        acc
    }

    pub fn k_squared(&self) -> Q {
        self.dot(&self.canonical, &self.canonical)
    }

    /// `ch_2(S)`, derived from Noether's formula: `-ch_2(S)/12 = chi(O_S) - K_S^2/8`.
    pub fn ch2_surface(&self) -> Q {
        qi(-12) * (self.chi_o() - self.k_squared() * q(1, 8))
    }

    pub fn is_k3(&self) -> bool {
        self.canonical.is_zero() && self.chi_o == 2
    }

    pub fn zero_divisor(&self) -> Divisor {
        Divisor::zero(self.rank())
    }

    /// `v(ch) = ch * sqrt(td S)`.
    pub fn mukai_vector(&self, ch: &ChernCharacter) -> MukaiVector {
        let k = &self.canonical;
        let v1 = &ch.ch1 - &k.scale(&(&ch.ch0 * q(1, 4)));
        let v2 =
            &ch.ch2 - self.dot(&ch.ch1, k) * q(1, 4) + &ch.ch0 * q(1, 2) * (self.chi_o() - self.k_squared() * q(1, 16));
        MukaiVector::new(ch.ch0.clone(), v1, v2)
    }

    /// The Mukai pairing
    /// `<w, v> = w1.v1 - w0 (v2 - v1.K/2) - v0 (w2 + w1.K/2) - w0 v0 K^2 / 8`.
    ///
    /// The pairing is symmetric only when `K_S = 0`; in general
    /// `<w, v> - <v, w> = w0 (v1.K) - v0 (w1.K)`.
    pub fn mukai_pairing(&self, w: &MukaiVector, v: &MukaiVector) -> Q {
        let k = &self.canonical;
        let half = q(1, 2);
        self.dot(&w.v1, &v.v1)
            - &w.v0 * (&v.v2 - self.dot(&v.v1, k) * &half)
            - &v.v0 * (&w.v2 + self.dot(&w.v1, k) * &half)
            - &w.v0 * &v.v0 * self.k_squared() * q(1, 8)
    }

    /// `chi(F, E) = -<v(F), v(E)>`.
    pub fn euler_pairing(&self, ch_f: &ChernCharacter, ch_e: &ChernCharacter) -> Q {
        -self.mukai_pairing(&self.mukai_vector(ch_f), &self.mukai_vector(ch_e))
    }

    /// `ch_1^2 - 2 ch_0 ch_2`.
    pub fn bogomolov_discriminant(&self, ch: &ChernCharacter) -> Q {
        self.dot(&ch.ch1, &ch.ch1) - qi(2) * &ch.ch0 * &ch.ch2
    }

    pub fn is_bogomolov(&self, ch: &ChernCharacter) -> bool {
        !self.bogomolov_discriminant(ch).is_negative()
    }
}

/// A numerical Chern character `(ch_0, ch_1, ch_2)`; `ch_0` is integral.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    pub ch0: Q,
    pub ch1: Divisor,
    pub ch2: Q,
}

impl ChernCharacter {
    pub fn new(ch0: i64, ch1: Divisor, ch2: Q) -> Self {
        ChernCharacter { ch0: qi(ch0), ch1, ch2 }
    }

    /// Builds a character with a rational `ch_0`; rejects non-integral ranks.
    pub fn try_from_parts(ch0: Q, ch1: Divisor, ch2: Q) -> Result<Self> {
        if !crate::rational::is_integer(&ch0) {
            return Err(Error::InvalidInput(format!("ch_0 must be an integer, got {ch0}")));
        }
        Ok(ChernCharacter { ch0, ch1, ch2 })
    }

    /// The class `(0, 0, n)` of a length-`n` zero-dimensional sheaf.
    pub fn points(rank: usize, n: i64) -> Self {
        ChernCharacter::new(0, Divisor::zero(rank), qi(n))
    }

    /// `(1, 0, -n)`, the ideal sheaf of `n` points.
    pub fn ideal_of_points(rank: usize, n: i64) -> Self {
        ChernCharacter::new(1, Divisor::zero(rank), qi(-n))
    }

    /// `(a0, a1, a2) -> (a0, -a1, a2)`.
    pub fn mukai_dual(&self) -> Self {
        ChernCharacter { ch0: self.ch0.clone(), ch1: -&self.ch1, ch2: self.ch2.clone() }
    }

    /// `ch -> -ch^* = (-ch_0, ch_1, -ch_2)`, the character of `RHom(-, O_S)[1]`.
    pub fn derived_dual(&self) -> Self {
        ChernCharacter { ch0: -&self.ch0, ch1: self.ch1.clone(), ch2: -&self.ch2 }
    }

    pub fn is_zero(&self) -> bool {
        self.ch0.is_zero() && self.ch1.is_zero() && self.ch2.is_zero()
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter { ch0: &self.ch0 + &rhs.ch0, ch1: &self.ch1 + &rhs.ch1, ch2: &self.ch2 + &rhs.ch2 }
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter { ch0: &self.ch0 - &rhs.ch0, ch1: &self.ch1 - &rhs.ch1, ch2: &self.ch2 - &rhs.ch2 }
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        ChernCharacter { ch0: -&self.ch0, ch1: -&self.ch1, ch2: -&self.ch2 }
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ch0, self.ch1.flat(), self.ch2)
    }
}

/// A rational Mukai vector `(v0, v1, v2)` in `H*_alg(S, Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MukaiVector {
    pub v0: Q,
    pub v1: Divisor,
    pub v2: Q,
}

impl MukaiVector {
    pub fn new(v0: Q, v1: Divisor, v2: Q) -> Self {
        MukaiVector { v0, v1, v2 }
    }

    pub fn zero(rank: usize) -> Self {
        MukaiVector::new(Q::zero(), Divisor::zero(rank), Q::zero())
    }

    pub fn mukai_dual(&self) -> Self {
        MukaiVector::new(self.v0.clone(), -&self.v1, self.v2.clone())
    }

    pub fn scale(&self, k: &Q) -> Self {
        MukaiVector::new(&self.v0 * k, self.v1.scale(k), &self.v2 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.v0.is_zero() && self.v1.is_zero() && self.v2.is_zero()
    }

    fn components(&self) -> Vec<&Q> {
        std::iter::once(&self.v0).chain(self.v1.coords()).chain(std::iter::once(&self.v2)).collect()
    }

    /// Returns `k > 0` with `self = k * other`, decided by exact cross-multiplication.
    pub fn positive_multiple_of(&self, other: &MukaiVector) -> Option<Q> {
        let a = self.components();
        let b = other.components();
        if a.len() != b.len() {
            return None;
        }
        let pivot = b.iter().position(|x| !x.is_zero())?;
        let k = a[pivot] / b[pivot];
        if !k.is_positive() {
            return None;
        }
        for i in 0..a.len() {
            if a[i] * b[pivot] != a[pivot] * b[i] {
                return None;
            }
        }
        Some(k)
    }

    /// True when `self` is a (possibly zero or negative) rational multiple of `other`.
    pub fn is_multiple_of(&self, other: &MukaiVector) -> bool {
        let a = self.components();
        let b = other.components();
        match b.iter().position(|x| !x.is_zero()) {
            None => self.is_zero(),
            Some(p) => (0..a.len()).all(|i| a[i] * b[p] == a[p] * b[i]),
        }
    }
}

impl Add for &MukaiVector {
    type Output = MukaiVector;
    fn add(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector::new(&self.v0 + &rhs.v0, &self.v1 + &rhs.v1, &self.v2 + &rhs.v2)
    }
}

impl Sub for &MukaiVector {
    type Output = MukaiVector;
    fn sub(self, rhs: &MukaiVector) -> MukaiVector {
        MukaiVector::new(&self.v0 - &rhs.v0, &self.v1 - &rhs.v1, &self.v2 - &rhs.v2)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v0, self.v1.flat(), self.v2)
    }
}
