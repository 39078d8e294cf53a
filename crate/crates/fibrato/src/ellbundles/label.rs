use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::EllError;

/// Element of `Z^(free) ⊕ (Z/2)^2 ⊕ (Z/3)^2`: the degree-0 part of a divisor
/// class on an elliptic curve, measured against the origin `[0]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointLabel {
    free: BTreeMap<String, i64>,
    /// Bitmask: `L1 = 1`, `L2 = 2`, `L3 = 3`.
    two: u8,
    three: [u8; 2],
}

/// `M1..M8` as elements of `(Z/3)^2`; `M(i+4) = -M(i)`.
const THREE: [[u8; 2]; 8] = [[1, 0], [0, 1], [1, 1], [1, 2], [2, 0], [0, 2], [2, 2], [2, 1]];

impl PointLabel {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(name: &str) -> Self {
        let mut l = Self::zero();
        l.free.insert(name.to_string(), 1);
        l
    }

    /// `L_i`, `i ∈ 1..=3`.
    pub fn two_torsion(i: usize) -> Self {
        assert!((1..=3).contains(&i), "L index out of range");
        PointLabel { two: i as u8, ..Self::zero() }
    }

    /// `M_i`, `i ∈ 1..=8`.
    pub fn three_torsion(i: usize) -> Self {
        assert!((1..=8).contains(&i), "M index out of range");
        PointLabel { three: THREE[i - 1], ..Self::zero() }
    }

    /// All nine elements of the 3-torsion subgroup, starting with zero.
    pub fn all_three_torsion() -> Vec<Self> {
        std::iter::once(Self::zero()).chain((1..=8).map(Self::three_torsion)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.two == 0 && self.three == [0, 0]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut free = self.free.clone();
        for (k, v) in &other.free {
            let e = free.entry(k.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                free.remove(k);
            }
        }
        PointLabel {
            free,
            two: self.two ^ other.two,
            three: [(self.three[0] + other.three[0]) % 3, (self.three[1] + other.three[1]) % 3],
        }
    }

    pub fn scale(&self, n: i64) -> Self {
        let free = if n == 0 {
            BTreeMap::new()
        } else {
            self.free.iter().map(|(k, v)| (k.clone(), v * n)).collect()
        };
        let m2 = n.rem_euclid(2) as u8;
        let m3 = n.rem_euclid(3) as u8;
        PointLabel {
            free,
            two: self.two * m2,
            three: [self.three[0] * m3 % 3, self.three[1] * m3 % 3],
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Some `x` with `3x = self`, if one exists in this group.
    pub fn divide_by_three(&self) -> Option<Self> {
        if self.three != [0, 0] || self.free.values().any(|v| v % 3 != 0) {
            return None;
        }
        Some(PointLabel {
            free: self.free.iter().map(|(k, v)| (k.clone(), v / 3)).collect(),
            two: self.two,
            three: [0, 0],
        })
    }

    pub fn is_two_torsion(&self) -> bool {
        self.free.is_empty() && self.three == [0, 0]
    }

    pub fn is_three_torsion(&self) -> bool {
        self.free.is_empty() && self.two == 0
    }

    pub fn parse(s: &str) -> Result<Self, EllError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(EllError::Parse("empty label".into()));
        }
        let mut out = Self::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let tok = &body[..end];
            rest = &body[end..];
            let digits = tok.chars().take_while(|c| c.is_ascii_digit()).count();
            let coeff: i64 = if digits == 0 {
                1
            } else {
                tok[..digits].parse().map_err(|_| EllError::Parse(format!("bad coefficient in {s:?}")))?
            };
            let name = &tok[digits..];
            let term = match name {
                "" if digits > 0 && coeff == 0 => Self::zero(),
                "" => return Err(EllError::Parse(format!("bare number in label {s:?}"))),
                n if n.starts_with('L') && n[1..].parse::<usize>().is_ok_and(|i| (1..=3).contains(&i)) => {
                    Self::two_torsion(n[1..].parse().unwrap())
                }
                n if n.starts_with('M') && n[1..].parse::<usize>().is_ok_and(|i| (1..=8).contains(&i)) => {
                    Self::three_torsion(n[1..].parse().unwrap())
                }
                n if n.chars().next().is_some_and(|c| c.is_ascii_lowercase())
                    && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') =>
                {
                    Self::free(n)
                }
                n => return Err(EllError::Parse(format!("unknown label term {n:?}"))),
            };
            out = out.add(&term.scale(sign * coeff));
        }
        Ok(out)
    }
}

impl PointLabel {
    fn three_index(&self) -> usize {
        THREE.iter().position(|&x| x == self.three).map_or(0, |i| i + 1)
    }
}

impl Ord for PointLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.free, self.two, self.three_index()).cmp(&(&other.free, other.two, other.three_index()))
    }
}

impl PartialOrd for PointLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for PointLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = self.free.iter().map(|(k, &v)| (v, k.clone())).collect();
        if self.two != 0 {
            terms.push((1, format!("L{}", self.two)));
        }
        if let Some(i) = THREE.iter().position(|&x| x == self.three) {
            terms.push((1, format!("M{}", i + 1)));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (v, name)) in terms.iter().enumerate() {
            let sign = if *v < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = v.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_orders() {
        for i in 1..=3 {
            assert!(PointLabel::two_torsion(i).scale(2).is_zero());
        }
        for i in 1..=8 {
            let m = PointLabel::three_torsion(i);
            assert!(m.scale(3).is_zero());
            assert!(!m.is_zero());
            assert_eq!(m.neg(), PointLabel::three_torsion((i + 3) % 8 + 1));
        }
        let s = (1..=3).fold(PointLabel::zero(), |a, i| a.add(&PointLabel::two_torsion(i)));
        assert!(s.is_zero());
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "t", "-2t+u", "t+L1", "-t+M3", "L2+M8", "3u-t+L3+M5"] {
            let l = PointLabel::parse(s).unwrap();
            assert_eq!(PointLabel::parse(&l.to_string()).unwrap(), l);
        }
        assert_eq!(PointLabel::parse("t - t").unwrap(), PointLabel::zero());
        assert_eq!(PointLabel::parse("L1+L1").unwrap().to_string(), "0");
        assert!(PointLabel::parse("L4").is_err());
        assert!(PointLabel::parse("T").is_err());
    }

    #[test]
    fn division_by_three() {
        let l = PointLabel::parse("3t+L1").unwrap();
        let x = l.divide_by_three().unwrap();
        assert_eq!(x.scale(3), l);
        assert!(PointLabel::parse("2t").unwrap().divide_by_three().is_none());
        assert!(PointLabel::parse("M1").unwrap().divide_by_three().is_none());
    }
}
