use std::fmt;

use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SplitKind {
    Inert,
    Ramified,
    /// 1 or 2; index 1 belongs to the smaller root of the minimal polynomial mod l.
    Split(u8),
}

/// Name of a prime ideal of O_E: "(2)", "l5", "l11_1".
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PrimeLabel {
    pub ell: u64,
    pub kind: SplitKind,
}

impl PrimeLabel {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad prime label {s:?}"));
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let ell = inner.parse().map_err(|_| bad())?;
            return Ok(PrimeLabel {
                ell,
                kind: SplitKind::Inert,
            });
        }
        let rest = s.strip_prefix('l').ok_or_else(bad)?;
        match rest.split_once('_') {
            Some((ell, idx)) => {
                let idx: u8 = idx.parse().map_err(|_| bad())?;
                if idx != 1 && idx != 2 {
                    return Err(bad());
                }
                Ok(PrimeLabel {
                    ell: ell.parse().map_err(|_| bad())?,
                    kind: SplitKind::Split(idx),
                })
            }
            None => Ok(PrimeLabel {
                ell: rest.parse().map_err(|_| bad())?,
                kind: SplitKind::Ramified,
            }),
        }
    }

    /// The other prime above the same split l; identity otherwise.
    pub fn swapped(&self) -> Self {
        match self.kind {
            SplitKind::Split(i) => PrimeLabel {
                ell: self.ell,
                kind: SplitKind::Split(3 - i),
            },
            _ => *self,
        }
    }

    /// Absolute norm of the prime.
    pub fn norm(&self) -> u64 {
        match self.kind {
            SplitKind::Inert => self.ell * self.ell,
            _ => self.ell,
        }
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SplitKind::Inert => write!(f, "({})", self.ell),
            SplitKind::Ramified => write!(f, "l{}", self.ell),
            SplitKind::Split(i) => write!(f, "l{}_{}", self.ell, i),
        }
    }
}

/// A labelled factorization of an ideal, kept sorted by label.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Factorization(Vec<(PrimeLabel, u32)>);

impl Factorization {
    pub fn new(mut parts: Vec<(PrimeLabel, u32)>) -> Self {
        parts.retain(|&(_, e)| e > 0);
        parts.sort();
        let mut merged: Vec<(PrimeLabel, u32)> = Vec::new();
        for (l, e) in parts {
            match merged.last_mut() {
                Some((m, f)) if *m == l => *f += e,
                _ => merged.push((l, e)),
            }
        }
        Factorization(merged)
    }

    pub fn unit() -> Self {
        Factorization(Vec::new())
    }

    pub fn parts(&self) -> &[(PrimeLabel, u32)] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, l: &PrimeLabel) -> u32 {
        self.0
            .iter()
            .find(|(m, _)| m == l)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn norm(&self) -> u64 {
        self.0.iter().map(|(l, e)| l.norm().pow(*e)).product()
    }

    /// Same factorization with the two primes above `ell` exchanged.
    pub fn swap_ell(&self, ell: u64) -> Self {
        Factorization::new(
            self.0
                .iter()
                .map(|&(l, e)| if l.ell == ell { (l.swapped(), e) } else { (l, e) })
                .collect(),
        )
    }

    /// Residue characteristics carrying a split prime.
    pub fn split_ells(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .0
            .iter()
            .filter(|(l, _)| matches!(l.kind, SplitKind::Split(_)))
            .map(|(l, _)| l.ell)
            .collect();
        v.dedup();
        v
    }

    /// self divides other.
    pub fn divides(&self, other: &Factorization) -> bool {
        self.0.iter().all(|(l, e)| other.exponent(l) >= *e)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "(1)" {
            return Ok(Factorization::unit());
        }
        let mut parts = Vec::new();
        for piece in s.split('*') {
            let (lab, e) = match piece.split_once('^') {
                Some((l, e)) => (
                    l,
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?,
                ),
                None => (piece, 1),
            };
            parts.push((PrimeLabel::parse(lab)?, e));
        }
        Ok(Factorization::new(parts))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(1)");
        }
        for (i, (l, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for s in ["(2)", "l5", "l11_1", "l109_2"] {
            assert_eq!(PrimeLabel::parse(s).unwrap().to_string(), s);
        }
        assert!(PrimeLabel::parse("l11_3").is_err());
        assert!(PrimeLabel::parse("q7").is_err());
    }

    #[test]
    fn factorization_parsing_is_order_free() {
        let a = Factorization::parse("(2)*l11_2*l11_1").unwrap();
        let b = Factorization::parse("l11_1*(2)*l11_2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(2)*l11_1*l11_2");
        let c = Factorization::parse("(2)^3*l5").unwrap();
        assert_eq!(c.exponent(&PrimeLabel::parse("(2)").unwrap()), 3);
        assert_eq!(c.norm(), 4u64.pow(3) * 5);
        assert!(Factorization::parse("(1)").unwrap().is_unit());
        let s = Factorization::parse("(3)*l11_2").unwrap().swap_ell(11);
        assert_eq!(s.to_string(), "(3)*l11_1");
    }
}
