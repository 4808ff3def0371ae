//! Kodaira fiber types, their component tables, and height correction terms.
//!
//! Simple-component labels: 0 is always the identity component.
//! * `I_n`: 0..n, numbered cyclically around the polygon.
//! * `III`, `III*`: 0, 1.   `IV`, `IV*`: 0, 1, 2.
//! * `I_n*`: 0 and 1 are the two near components (both meet the end of the
//!   chain next to the identity), 2 and 3 the two far components.
//! * `I0`, `II`, `II*`: only the identity component is simple.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat, ratio, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`; `I(0)` is a smooth fiber.
    I(u32),
    II,
    III,
    IV,
    /// `I_n*`
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

/// Finite abelian group of simple components (geometric).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentGroup {
    Trivial,
    Cyclic(u32),
    /// Z/2 x Z/2
    Klein,
}

impl ComponentGroup {
    pub fn order(&self) -> u32 {
        match self {
            ComponentGroup::Trivial => 1,
            ComponentGroup::Cyclic(n) => *n,
            ComponentGroup::Klein => 4,
        }
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentGroup::Trivial => f.write_str("0"),
            ComponentGroup::Cyclic(n) => write!(f, "Z/{n}"),
            ComponentGroup::Klein => f.write_str("Z/2xZ/2"),
        }
    }
}

impl KodairaType {
    pub const SMOOTH: KodairaType = KodairaType::I(0);

    pub fn is_smooth(&self) -> bool {
        *self == KodairaType::I(0)
    }

    /// Euler number of the fiber.
    pub fn euler(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn components(&self) -> u32 {
        match *self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// False exactly for the types with a component of multiplicity >= 2.
    pub fn is_reduced(&self) -> bool {
        !matches!(
            self,
            KodairaType::IStar(_) | KodairaType::IVStar | KodairaType::IIIStar | KodairaType::IIStar
        )
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, KodairaType::I(n) if *n > 0)
    }

    pub fn component_group(&self) -> ComponentGroup {
        match *self {
            KodairaType::I(0) | KodairaType::I(1) | KodairaType::II | KodairaType::IIStar => {
                ComponentGroup::Trivial
            }
            KodairaType::I(n) => ComponentGroup::Cyclic(n),
            KodairaType::III | KodairaType::IIIStar => ComponentGroup::Cyclic(2),
            KodairaType::IV | KodairaType::IVStar => ComponentGroup::Cyclic(3),
            KodairaType::IStar(n) if n % 2 == 0 => ComponentGroup::Klein,
            KodairaType::IStar(_) => ComponentGroup::Cyclic(4),
        }
    }

    pub fn simple_components(&self) -> u32 {
        self.component_group().order()
    }

    /// Orbits of non-identity components under the symmetries of the
    /// fiber's dual graph that fix the identity component.
    pub fn symmetric_orbits(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n / 2,
            KodairaType::II => 0,
            KodairaType::III | KodairaType::IV => 1,
            KodairaType::IStar(0) => 2,
            KodairaType::IStar(n) => n + 3,
            KodairaType::IVStar => 4,
            KodairaType::IIIStar => 7,
            KodairaType::IIStar => 8,
        }
    }

    /// Local height correction `contr_v(P, Q)` for sections meeting the
    /// simple components `i` and `j`.
    pub fn contribution(&self, i: usize, j: usize) -> Result<Rat> {
        let m = self.simple_components() as usize;
        for idx in [i, j] {
            if idx >= m {
                return Err(Error::BadComponent { kodaira: *self, index: idx });
            }
        }
        if i == 0 || j == 0 {
            return Ok(Rat::zero());
        }
        let (i, j) = (i.min(j), i.max(j));
        Ok(match *self {
            KodairaType::I(n) => ratio((i * (n as usize - j)) as i64, n as i64),
            KodairaType::III => ratio(1, 2),
            KodairaType::IIIStar => ratio(3, 2),
            KodairaType::IV => {
                if i == j {
                    ratio(2, 3)
                } else {
                    ratio(1, 3)
                }
            }
            KodairaType::IVStar => {
                if i == j {
                    ratio(4, 3)
                } else {
                    ratio(2, 3)
                }
            }
            KodairaType::IStar(n) => {
                let quarter = ratio(n as i64, 4);
                match (i, j) {
                    (1, 1) => rat(1),
                    (1, _) => ratio(1, 2),
                    (a, b) if a == b => rat(1) + quarter,
                    _ => ratio(1, 2) + quarter,
                }
            }
            KodairaType::II | KodairaType::IIStar => unreachable!("no non-identity simple components"),
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown Kodaira type \"{s}\""));
        let (body, star) = match s.strip_suffix('*') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let t = match (body, star) {
            ("II", false) => KodairaType::II,
            ("III", false) => KodairaType::III,
            ("IV", false) => KodairaType::IV,
            ("II", true) => KodairaType::IIStar,
            ("III", true) => KodairaType::IIIStar,
            ("IV", true) => KodairaType::IVStar,
            _ => {
                let digits = body
                    .strip_prefix("I_")
                    .or_else(|| body.strip_prefix('I'))
                    .ok_or_else(bad)?;
                if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let n: u32 = digits.parse().map_err(|_| bad())?;
                if star {
                    KodairaType::IStar(n)
                } else {
                    KodairaType::I(n)
                }
            }
        };
        Ok(t)
    }
}

/// Kodaira type from the valuations of `c4`, `c6`, `Δ` of a minimal model,
/// valid when the residue characteristic is 0 (or at least 5).
pub fn kodaira_from_valuations(vc4: Option<i64>, vc6: Option<i64>, vdisc: i64) -> KodairaType {
    let big = i64::MAX / 4;
    let (vc4, vc6) = (vc4.unwrap_or(big), vc6.unwrap_or(big));
    if vdisc == 0 {
        return KodairaType::I(0);
    }
    if vc4 == 0 {
        return KodairaType::I(vdisc as u32);
    }
    if vc4 == 2 && vc6 == 3 && vdisc > 6 {
        return KodairaType::IStar(vdisc as u32 - 6);
    }
    match vdisc {
        2 => KodairaType::II,
        3 => KodairaType::III,
        4 => KodairaType::IV,
        6 => KodairaType::IStar(0),
        8 => KodairaType::IVStar,
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        _ => unreachable!("impossible valuations for a minimal model in characteristic 0"),
    }
}
