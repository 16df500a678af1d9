//! Labels for the irreducible modules of the orbifold `V_L^+` and of `M(1)^+`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `Plus` for even `n`.
    pub fn parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An irreducible `V_L^+`-module.
///
/// `Lambda(r)` is `V_{lambda_r + L}` with `lambda_r = r alpha / 2k`; a label obtained
/// from [`ModuleLabel::normalize`] always has `1 <= r <= k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleLabel {
    UPlus,
    UMinus,
    Lambda(i64),
    HalfPlus,
    HalfMinus,
    Tw(u8, Sign),
}

impl ModuleLabel {
    /// All `k + 7` labels in canonical order.
    pub fn all(k: u32) -> Vec<ModuleLabel> {
        let mut out = vec![ModuleLabel::UPlus, ModuleLabel::UMinus];
        out.extend((1..k as i64).map(ModuleLabel::Lambda));
        out.extend([
            ModuleLabel::HalfPlus,
            ModuleLabel::HalfMinus,
            ModuleLabel::Tw(1, Sign::Plus),
            ModuleLabel::Tw(1, Sign::Minus),
            ModuleLabel::Tw(2, Sign::Plus),
            ModuleLabel::Tw(2, Sign::Minus),
        ]);
        out
    }

    /// Reduce `Lambda(r)` to `1 <= r <= k-1` using `r ~ r + 2k ~ -r`. Raw `r` in `L`
    /// or in `alpha/2 + L` is rejected because those cosets split into two modules.
    pub fn normalize(self, k: u32) -> Result<ModuleLabel> {
        match self {
            ModuleLabel::Lambda(r) => {
                let n = 2 * k as i64;
                let mut t = r.rem_euclid(n);
                if t > k as i64 {
                    t = n - t;
                }
                if t == 0 || t == k as i64 {
                    let coset = if t == 0 { "L (use V+ or V-)" } else { "alpha/2 + L (use Va+ or Va-)" };
                    return Err(Error::LabelMismatch {
                        label: self.to_string(),
                        k,
                        reason: format!("lambda_{r} lies in {coset}"),
                    });
                }
                Ok(ModuleLabel::Lambda(t))
            }
            ModuleLabel::Tw(i, _) if i != 1 && i != 2 => Err(Error::BadLabel(self.to_string())),
            other => Ok(other),
        }
    }

    pub fn is_twisted(self) -> bool {
        matches!(self, ModuleLabel::Tw(..))
    }

    /// Index of the `L`-coset `lambda_r + L` carrying the module (untwisted only),
    /// as a representative in `0..=k`.
    pub fn coset(self, k: u32) -> Option<i64> {
        match self {
            ModuleLabel::UPlus | ModuleLabel::UMinus => Some(0),
            ModuleLabel::Lambda(r) => Some(r),
            ModuleLabel::HalfPlus | ModuleLabel::HalfMinus => Some(k as i64),
            ModuleLabel::Tw(..) => None,
        }
    }

    /// theta-eigenvalue sign for the labels defined as eigenspaces.
    pub fn sign(self) -> Option<Sign> {
        match self {
            ModuleLabel::UPlus | ModuleLabel::HalfPlus => Some(Sign::Plus),
            ModuleLabel::UMinus | ModuleLabel::HalfMinus => Some(Sign::Minus),
            ModuleLabel::Tw(_, s) => Some(s),
            ModuleLabel::Lambda(_) => None,
        }
    }

    /// Contragredient module: self-dual for even `k`; for odd `k` the half-lattice
    /// pair and the two twisted sectors are swapped.
    pub fn contragredient(self, k: u32) -> ModuleLabel {
        if k.is_multiple_of(2) {
            return self;
        }
        match self {
            ModuleLabel::HalfPlus => ModuleLabel::HalfMinus,
            ModuleLabel::HalfMinus => ModuleLabel::HalfPlus,
            ModuleLabel::Tw(i, s) => ModuleLabel::Tw(3 - i, s),
            other => other,
        }
    }

    /// Conformal weight of the top level.
    pub fn top_weight(self, k: u32) -> Q {
        let k = k as i64;
        match self {
            ModuleLabel::UPlus => Q::zero(),
            ModuleLabel::UMinus => Q::from_integer(1),
            ModuleLabel::Lambda(r) => Q::new(r * r, 4 * k),
            ModuleLabel::HalfPlus | ModuleLabel::HalfMinus => Q::new(k, 4),
            ModuleLabel::Tw(_, Sign::Plus) => Q::new(1, 16),
            ModuleLabel::Tw(_, Sign::Minus) => Q::new(9, 16),
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::UPlus => write!(f, "V+"),
            ModuleLabel::UMinus => write!(f, "V-"),
            ModuleLabel::Lambda(r) => write!(f, "Vl{r}"),
            ModuleLabel::HalfPlus => write!(f, "Va+"),
            ModuleLabel::HalfMinus => write!(f, "Va-"),
            ModuleLabel::Tw(i, s) => write!(f, "VT{i}{}", s.symbol()),
        }
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses the CLI spelling `V+ V- Vl<r> Va+ Va- VT1+ VT1- VT2+ VT2-`.
/// `Vl<r>` is returned raw; call [`ModuleLabel::normalize`] before use.
impl FromStr for ModuleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLabel(s.to_string());
        Ok(match s {
            "V+" => ModuleLabel::UPlus,
            "V-" => ModuleLabel::UMinus,
            "Va+" => ModuleLabel::HalfPlus,
            "Va-" => ModuleLabel::HalfMinus,
            "VT1+" => ModuleLabel::Tw(1, Sign::Plus),
            "VT1-" => ModuleLabel::Tw(1, Sign::Minus),
            "VT2+" => ModuleLabel::Tw(2, Sign::Plus),
            "VT2-" => ModuleLabel::Tw(2, Sign::Minus),
            _ => {
                let rest = s.strip_prefix("Vl").ok_or_else(bad)?;
                ModuleLabel::Lambda(rest.parse::<i64>().map_err(|_| bad())?)
            }
        })
    }
}

/// An irreducible `M(1)^+`-module. `Lam(x)` is `M(1, x alpha)` with `x > 0`
/// (the class of `lambda` up to sign, i.e. its norm).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum M1Label {
    Plus,
    Minus,
    Lam(Q),
    TwPlus,
    TwMinus,
}

impl M1Label {
    /// `M(1, x alpha)` for any nonzero `x`.
    pub fn lam(x: Q) -> M1Label {
        assert!(!x.is_zero(), "M(1, 0) is not of this family");
        M1Label::Lam(x.abs())
    }
}

impl fmt::Display for M1Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            M1Label::Plus => write!(f, "M+"),
            M1Label::Minus => write!(f, "M-"),
            M1Label::TwPlus => write!(f, "Mt+"),
            M1Label::TwMinus => write!(f, "Mt-"),
            M1Label::Lam(x) => {
                let (p, q) = (*x.numer(), *x.denom());
                let num = if p == 1 { "a".to_string() } else { format!("{p}a") };
                if q == 1 {
                    write!(f, "M({num})")
                } else {
                    write!(f, "M({num}/{q})")
                }
            }
        }
    }
}

impl Serialize for M1Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_count() {
        for k in 1..=6 {
            assert_eq!(ModuleLabel::all(k).len(), k as usize + 7);
        }
    }

    #[test]
    fn parse_round_trip() {
        for k in 1..=5 {
            for l in ModuleLabel::all(k) {
                assert_eq!(l.to_string().parse::<ModuleLabel>().unwrap(), l);
            }
        }
        assert!("VT3+".parse::<ModuleLabel>().is_err());
        assert!("W".parse::<ModuleLabel>().is_err());
    }

    #[test]
    fn lambda_normalization() {
        assert_eq!(ModuleLabel::Lambda(5).normalize(3).unwrap(), ModuleLabel::Lambda(1));
        assert_eq!(ModuleLabel::Lambda(-1).normalize(3).unwrap(), ModuleLabel::Lambda(1));
        assert_eq!(ModuleLabel::Lambda(4).normalize(3).unwrap(), ModuleLabel::Lambda(2));
        assert!(ModuleLabel::Lambda(6).normalize(3).is_err());
        assert!(ModuleLabel::Lambda(3).normalize(3).is_err());
        assert!(ModuleLabel::Lambda(1).normalize(1).is_err());
    }

    #[test]
    fn contragredient_is_involution() {
        for k in 1..=6 {
            for l in ModuleLabel::all(k) {
                assert_eq!(l.contragredient(k).contragredient(k), l);
            }
        }
        assert_eq!(ModuleLabel::HalfPlus.contragredient(1), ModuleLabel::HalfMinus);
        assert_eq!(ModuleLabel::Tw(1, Sign::Plus).contragredient(2), ModuleLabel::Tw(1, Sign::Plus));
    }

    #[test]
    fn m1_display() {
        assert_eq!(M1Label::lam(Q::new(-3, 2)).to_string(), "M(3a/2)");
        assert_eq!(M1Label::lam(Q::new(1, 2)).to_string(), "M(a/2)");
        assert_eq!(M1Label::lam(Q::from_integer(2)).to_string(), "M(2a)");
    }
}
