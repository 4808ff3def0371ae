//! Exact arithmetic for Jacobian elliptic fibrations over Q(t): Kodaira
//! fibers, base change, Mordell–Weil heights, and fibers over rational
//! points.

pub mod basechange;
pub mod demo;
pub mod error;
pub mod factor;
pub mod field;
pub mod fp;
pub mod kodaira;
pub mod linalg;
pub mod local;
pub mod mordell_weil;
pub mod parse;
pub mod place;
pub mod poly;
pub mod quadext;
pub mod quadorigin;
pub mod rankjump;
pub mod rational;
pub mod ratfunc;
pub mod surface;
pub mod tate;
pub mod twist;
pub mod weierstrass;

pub use error::{Error, Result};
pub use factor::{poly_factor, Factorization};
pub use field::Field;
pub use fp::{factor_mod_p, FpPoly};
pub use kodaira::KodairaType;
pub use place::Place;
pub use poly::Poly;
pub use rational::Rat;
pub use ratfunc::RatFunc;
pub use surface::{classify, fiber_configuration, FiberConfig, SurfaceInfo};
pub use weierstrass::{Point, Transform, WeierstrassModel};
