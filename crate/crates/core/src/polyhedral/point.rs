use super::rat::{fmt_rat, parse_rat, Rat};
use crate::error::{Error, Result};
use std::fmt;

/// A coordinate of `T = [-inf, inf)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Bottom,
    Finite(Rat),
}

/// Point of the tropical affine space `T^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedPoint {
    pub coords: Vec<Coord>,
}

impl ExtendedPoint {
    pub fn finite(coords: Vec<Rat>) -> Self {
        ExtendedPoint { coords: coords.into_iter().map(Coord::Finite).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    /// Indices of the coordinates equal to `-inf`.
    pub fn sedentarity(&self) -> Vec<usize> {
        sedentarity(self)
    }

    /// Finite coordinates as a full-length vector, with 0 at bottom entries.
    pub fn finite_part(&self) -> Vec<Rat> {
        self.coords
            .iter()
            .map(|c| match c {
                Coord::Finite(x) => x.clone(),
                Coord::Bottom => Rat::default(),
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords
            .iter()
            .map(|c| match c {
                Coord::Finite(x) => fmt_rat(x),
                Coord::Bottom => "-inf".to_string(),
            })
            .collect()
    }

    pub fn parse(items: &[String]) -> Result<Self> {
        let coords = items
            .iter()
            .map(|s| {
                let t = s.trim();
                if t == "-inf" || t.eq_ignore_ascii_case("bottom") {
                    Ok(Coord::Bottom)
                } else {
                    parse_rat(t).map(Coord::Finite).ok_or_else(|| Error::Malformed(format!("bad coordinate {s:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtendedPoint { coords })
    }
}

pub fn sedentarity(p: &ExtendedPoint) -> Vec<usize> {
    p.coords.iter().enumerate().filter(|(_, c)| **c == Coord::Bottom).map(|(i, _)| i).collect()
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::rat::rat;

    #[test]
    fn sedentarity_examples() {
        let p = ExtendedPoint { coords: vec![Coord::Finite(rat(3)), Coord::Bottom] };
        assert_eq!(p.sedentarity(), vec![1]);
        assert!(ExtendedPoint::finite(vec![rat(0), rat(0)]).sedentarity().is_empty());
        let q = ExtendedPoint { coords: vec![Coord::Bottom, Coord::Bottom] };
        assert_eq!(q.sedentarity(), vec![0, 1]);
    }
}
