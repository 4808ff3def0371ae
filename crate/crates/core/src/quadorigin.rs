//! Can a given fiber configuration arise from a rational elliptic surface by
//! a quadratic base change?
//!
//! A degree-2 self-map of P^1 has exactly two branch points. Fibers above
//! them transform by `transform_type(_, 2)`; every other downstairs fiber
//! appears twice upstairs unchanged.

use std::collections::BTreeMap;
use std::fmt;

use crate::basechange::transform_type;
use crate::error::{Error, Result};
use crate::kodaira::KodairaType;

/// Parse `"2*III* + I6*"`, `"6*I4"`, `"I2, I2, I4"`.
pub fn parse_multiset(src: &str) -> Result<Vec<KodairaType>> {
    let mut out = Vec::new();
    for term in src.split(['+', ',']) {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::BadInput(format!("empty term in '{src}'")));
        }
        let (count, name) = match term.split_once('*') {
            Some((c, rest)) if !c.is_empty() && c.trim().chars().all(|ch| ch.is_ascii_digit()) => {
                let n: usize = c.trim().parse().map_err(|_| Error::BadInput(term.to_string()))?;
                (n, rest.trim())
            }
            _ => (1, term),
        };
        let t: KodairaType = name
            .parse()
            .map_err(|_| Error::BadInput(format!("unknown fiber type '{name}'")))?;
        if t == KodairaType::I(0) {
            return Err(Error::BadInput("smooth fibers are not listed".into()));
        }
        if count == 0 {
            return Err(Error::BadInput(format!("zero multiplicity in '{term}'")));
        }
        out.extend(std::iter::repeat_n(t, count));
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Downstairs fibers at the two branch points (`I0` if smooth).
    pub ramified: [KodairaType; 2],
    /// Downstairs fibers away from the branch points.
    pub unramified: Vec<KodairaType>,
}

impl Witness {
    pub fn downstairs(&self) -> Vec<KodairaType> {
        let mut v: Vec<KodairaType> = self
            .ramified
            .iter()
            .copied()
            .filter(|t| *t != KodairaType::I(0))
            .chain(self.unramified.iter().copied())
            .collect();
        v.sort();
        v
    }

    /// Upstairs multiset produced by this witness.
    pub fn pullback(&self) -> Vec<KodairaType> {
        let mut v = Vec::new();
        for r in self.ramified {
            let t = transform_type(r, 2).expect("index 2 is supported");
            if t != KodairaType::I(0) {
                v.push(t);
            }
        }
        for &u in &self.unramified {
            v.push(u);
            v.push(u);
        }
        v.sort();
        v
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.ramified.iter().map(|t| format!("{t}(ram)")).collect();
        parts.extend(self.unramified.iter().map(|t| t.to_string()));
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadOrigin {
    Possible(Witness),
    Impossible(Vec<String>),
}

fn euler_sum(v: &[KodairaType]) -> u32 {
    v.iter().map(|t| t.euler()).sum()
}

/// Types that a rational elliptic surface never carries.
fn forbidden_downstairs(t: KodairaType) -> bool {
    t.euler() > 12 || t.components() > 9 || matches!(t, KodairaType::IStar(n) if n >= 5)
}

fn feasible_downstairs(d: &[KodairaType], partial: bool) -> bool {
    let e = euler_sum(d);
    let rank: u32 = d.iter().map(|t| t.components() - 1).sum();
    let euler_ok = if partial { e <= 12 } else { e == 12 };
    euler_ok && rank <= 8 && !d.iter().any(|&t| forbidden_downstairs(t))
}

/// Downstairs types usable at a branch point, with their upstairs image.
fn ramified_candidates(up: &BTreeMap<KodairaType, usize>) -> Vec<(KodairaType, KodairaType)> {
    use KodairaType::*;
    let mut base = vec![I(0), II, III, IV, IStar(0), IVStar, IIIStar, IIStar];
    for &t in up.keys() {
        match t {
            I(n) if n % 2 == 0 => {
                base.push(I(n / 2));
                base.push(IStar(n / 2));
            }
            _ => {}
        }
    }
    base.sort();
    base.dedup();
    base.into_iter()
        .filter_map(|r| {
            let img = transform_type(r, 2).ok()?;
            (img == I(0) || up.contains_key(&img)).then_some((r, img))
        })
        .collect()
}

fn in_ramified_image(t: KodairaType) -> bool {
    use KodairaType::*;
    match t {
        I(n) => n % 2 == 0,
        IV | IStar(0) | IVStar => true,
        _ => false,
    }
}

pub fn quadratic_origin_check(upstairs: &[KodairaType], partial: bool) -> Result<QuadOrigin> {
    if upstairs.contains(&KodairaType::I(0)) {
        return Err(Error::BadInput("smooth fibers are not listed".into()));
    }
    let total = euler_sum(upstairs);
    if !partial && total != 24 {
        return Err(Error::BadInput(format!(
            "Euler sum is {total}, not 24; pass the partial flag for incomplete lists"
        )));
    }
    let mut up: BTreeMap<KodairaType, usize> = BTreeMap::new();
    for &t in upstairs {
        *up.entry(t).or_insert(0) += 1;
    }
    let cands = ramified_candidates(&up);
    for (i, &(r1, i1)) in cands.iter().enumerate() {
        for &(r2, i2) in &cands[i..] {
            let mut rest = up.clone();
            let mut ok = true;
            for img in [i1, i2] {
                if img == KodairaType::I(0) {
                    continue;
                }
                match rest.get_mut(&img) {
                    Some(c) if *c > 0 => *c -= 1,
                    _ => ok = false,
                }
            }
            if !ok || rest.values().any(|c| c % 2 == 1) {
                continue;
            }
            let unramified: Vec<KodairaType> = rest
                .iter()
                .flat_map(|(&t, &c)| std::iter::repeat_n(t, c / 2))
                .collect();
            let w = Witness { ramified: [r1, r2], unramified };
            if feasible_downstairs(&w.downstairs(), partial) {
                return Ok(QuadOrigin::Possible(w));
            }
        }
    }
    let mut reasons = Vec::new();
    for (&t, &c) in &up {
        if !in_ramified_image(t) {
            if c % 2 == 1 {
                reasons.push(format!(
                    "{t} is not in the ramified image and occurs an odd number of times"
                ));
            }
            if forbidden_downstairs(t) {
                reasons.push(format!(
                    "a rational elliptic surface can never have fibers of type {t}"
                ));
            }
        }
    }
    if reasons.is_empty() {
        reasons.push(
            "no downstairs configuration with two branch points reproduces the fibers".into(),
        );
    }
    Ok(QuadOrigin::Impossible(reasons))
}

#[cfg(test)]
mod tests {
    use super::*;
    use KodairaType::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_multiset("2*III* + I6*").unwrap(), vec![IStar(6), IIIStar, IIIStar]);
        assert_eq!(parse_multiset("6*I4").unwrap(), vec![I(4); 6]);
        assert!(parse_multiset("2*I4 + ").is_err());
        assert!(parse_multiset("X7").is_err());
    }

    #[test]
    fn six_i4() {
        let r = quadratic_origin_check(&parse_multiset("6*I4").unwrap(), false).unwrap();
        let QuadOrigin::Possible(w) = r else { panic!("expected a witness") };
        assert_eq!(w.to_string(), "I2(ram), I2(ram), I4, I4");
        assert_eq!(w.pullback(), vec![I(4); 6]);
    }

    #[test]
    fn partial_lists() {
        let r = quadratic_origin_check(&parse_multiset("2*III* + I6*").unwrap(), true).unwrap();
        let QuadOrigin::Impossible(reasons) = r else { panic!() };
        assert!(reasons.iter().any(|s| s.contains("can never have fibers of type I6*")));
        let r = quadratic_origin_check(&parse_multiset("III* + I18").unwrap(), true).unwrap();
        let QuadOrigin::Impossible(reasons) = r else { panic!() };
        assert_eq!(
            reasons,
            vec!["III* is not in the ramified image and occurs an odd number of times".to_string()]
        );
        assert!(matches!(
            quadratic_origin_check(&parse_multiset("III* + I18").unwrap(), false),
            Err(Error::BadInput(_))
        ));
    }
}
