//! Exact wall-and-chamber computations for Bridgeland stability on surfaces
//! of Picard rank at most two.
//!
//! * [`surface`]: intersection lattice, Chern characters, Mukai vectors and pairing.
//! * [`stability`]: frames, central charges, slopes and chamber labels.
//! * [`walls`]: potential walls, their `(s, q)` lines and bounded enumeration.
//! * [`bayer_macri`]: the vector `w_sigma` and nef divisor decompositions.
//! * [`nefcone`]: nef cones of Hilbert schemes of points on fibered surfaces.
//! * [`io`]: job files, command dispatch and CSV / JSON / SVG output.
//!
//! All arithmetic is exact over `BigRational`.
//!
//! ```
//! use bmwalls::stability::Frame;
//! use bmwalls::walls::{enumerate_walls, SearchBounds};
//! use bmwalls::{ChernCharacter, Divisor, Surface};
//!
//! let frame = Frame::untwisted(Surface::projective_plane(), Divisor::from_ints(&[1]))?;
//! let ideal = ChernCharacter::ideal_of_points(1, 2);
//! let walls = enumerate_walls(&ideal, &frame, &SearchBounds::default())?;
//! assert_eq!(walls[0].center.to_string(), "-5/2");
//! assert_eq!(walls[0].radius_sq.to_string(), "9/4");
//! # Ok::<(), bmwalls::Error>(())
//! ```

pub mod bayer_macri;
pub mod error;
pub mod io;
pub mod nefcone;
pub mod rational;
pub mod stability;
pub mod surface;
pub mod walls;

pub use error::{Error, Result};
pub use rational::Q;
pub use surface::{ChernCharacter, Divisor, MukaiVector, Surface};
