//! Bumpless pipe dreams, Schubert polynomials computed from them, and bijections
//! realising Monk's rule for single and double Schubert polynomials.
//!
//! * [`perm`]: permutations, lengths and Bruhat covers.
//! * [`grid`]: tiles, validation, the Rothe BPD and exhaustive enumeration.
//! * [`poly`] and [`schubert`]: exact polynomials, BPD sums and the divided-difference oracle.
//! * [`monk`]: droop moves, the insertion algorithms and the Monk bijection.
//! * [`decorated`]: blank labels `x` / `-y` and the double-Schubert bijection.
//! * [`text`]: the plain-text diagram format.
//! * [`verify`]: exhaustive and sampled checks over `S_n`.

pub mod decorated;
pub mod grid;
pub mod monk;
pub mod perm;
pub mod poly;
pub mod schubert;
pub mod text;
pub mod verify;

pub use grid::{AlmostBpd, Bpd, Diagram, Grid, GridError, Pos, Tile};
pub use perm::Permutation;
pub use poly::Poly;
