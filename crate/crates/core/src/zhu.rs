//! Zhu-algebra products and the actions of `omega`, `J`, `E` on top levels.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{Basis, TVector, UVector};
use crate::intertwiners::{top_vector, ModVec};
use crate::label::ModuleLabel;
use crate::scalar::{Scalar, Q};
use crate::twisted::twisted_mode;
use crate::untwisted::{binomial, e_vector, j_vector, omega, vertex_series_unchecked};

/// The generators of `A(V_L^+)` whose top-level actions separate the irreducibles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ZhuGen {
    Omega,
    J,
    E,
}

impl ZhuGen {
    pub const ALL: [ZhuGen; 3] = [ZhuGen::Omega, ZhuGen::J, ZhuGen::E];

    pub fn vector(self, k: u32) -> UVector {
        match self {
            ZhuGen::Omega => omega(k),
            ZhuGen::J => j_vector(k),
            ZhuGen::E => e_vector(k),
        }
    }
}

impl fmt::Display for ZhuGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZhuGen::Omega => "omega",
            ZhuGen::J => "J",
            ZhuGen::E => "E",
        })
    }
}

fn integer_weight(a: &UVector) -> Result<i64> {
    let w = a
        .homogeneous_weight()
        .ok_or_else(|| Error::Domain("a must be homogeneous".into()))?;
    if !w.is_integer() {
        return Err(Error::Domain(format!("a has non-integral weight {w}")));
    }
    Ok(w.to_integer())
}

/// `Res_z (1 + z)^{wt a} z^{-1-shift} Y(a, z) b = sum_i binom(wt a, i) a_{i-shift} b`.
fn residue_product(a: &UVector, b: &UVector, shift: i64, cutoff: Q) -> Result<UVector> {
    let n = integer_weight(a)?;
    let k = a.k();
    let wb = b.max_weight().unwrap_or_else(Q::zero);
    let cutoff = cutoff.max(Q::from_integer(n + shift) + wb);
    let s = vertex_series_unchecked(a, b, cutoff);
    let mut out = UVector::zero(k);
    for i in 0..=n {
        // a_m is the coefficient of z^{-m-1}
        let m = i - shift;
        if let Some(x) = s.get(&Q::from_integer(-m - 1)) {
            out.add_scaled(x, &Scalar::from_rational(binomial(n, i as u32)));
        }
    }
    Ok(out)
}

/// `a o b = Res_z (1+z)^{wt a} / z^2 Y(a, z) b`.
pub fn zhu_circ(a: &UVector, b: &UVector, cutoff: Q) -> Result<UVector> {
    residue_product(a, b, 2, cutoff)
}

/// `a * b = Res_z (1+z)^{wt a} / z Y(a, z) b`.
pub fn zhu_star(a: &UVector, b: &UVector, cutoff: Q) -> Result<UVector> {
    residue_product(a, b, 1, cutoff)
}

/// `o(a) v = a_{wt a - 1} v`, extended linearly over the homogeneous parts of `a`.
pub fn o_action(a: &UVector, v: &ModVec) -> Result<ModVec> {
    let k = a.k();
    let wv = v.max_weight().unwrap_or_else(Q::zero);
    let mut parts: std::collections::BTreeMap<Q, UVector> = std::collections::BTreeMap::new();
    for (b, c) in a.terms() {
        parts
            .entry(b.weight(k))
            .or_insert_with(|| UVector::zero(k))
            .add_term(b.clone(), c);
    }
    match v {
        ModVec::U(x) => {
            let mut out = UVector::zero(k);
            for (w, part) in &parts {
                let s = vertex_series_unchecked(part, x, wv);
                if let Some(y) = s.get(&-*w) {
                    out.add_assign(y);
                }
            }
            Ok(ModVec::U(out))
        }
        ModVec::T(x) => {
            let mut out = TVector::zero(k);
            for (w, part) in &parts {
                out.add_assign(&twisted_mode(part, *w - Q::one(), x, wv)?);
            }
            Ok(ModVec::T(out))
        }
    }
}

/// The top level of an irreducible module: its weight and a basis.
#[derive(Debug, Clone)]
pub struct TopLevel {
    pub label: ModuleLabel,
    pub weight: Q,
    pub basis: Vec<ModVec>,
}

pub fn top_level(label: ModuleLabel, k: u32) -> Result<TopLevel> {
    let label = label.normalize(k)?;
    let mut basis = vec![top_vector(label, k)];
    if k == 1 && label == ModuleLabel::UMinus {
        basis.push(ModVec::U(UVector::lattice(1, 2).minus(&UVector::lattice(1, -2))));
    }
    Ok(TopLevel {
        label,
        weight: label.top_weight(k),
        basis,
    })
}

/// The scalar by which `o(a)` acts on the one-dimensional top level of `label`.
pub fn top_action(a: ZhuGen, label: ModuleLabel, k: u32) -> Result<Scalar> {
    let label = label.normalize(k)?;
    if k == 1 && label == ModuleLabel::UMinus {
        return Err(Error::Unsupported(
            "the top level of V- is two-dimensional for k = 1".into(),
        ));
    }
    let v = top_vector(label, k);
    let image = o_action(&a.vector(k), &v)?;
    let ratio = match (&image, &v) {
        (ModVec::U(x), ModVec::U(y)) => x.ratio_to(y),
        (ModVec::T(x), ModVec::T(y)) => x.ratio_to(y),
        _ => None,
    };
    ratio.ok_or_else(|| Error::Domain(format!("o({a}) does not preserve the top line of {label}")))
}

/// Computed `(omega, J, E)` actions for one label; `None` where the action is not a scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct ZhuRow {
    pub label: ModuleLabel,
    pub values: Option<[Scalar; 3]>,
}

pub fn zhu_table(k: u32) -> Result<Vec<ZhuRow>> {
    use rayon::prelude::*;
    ModuleLabel::all(k)
        .into_par_iter()
        .map(|label| {
            let values = match top_action(ZhuGen::Omega, label, k) {
                Err(Error::Unsupported(_)) => None,
                Err(e) => return Err(e),
                Ok(w) => Some([w, top_action(ZhuGen::J, label, k)?, top_action(ZhuGen::E, label, k)?]),
            };
            Ok(ZhuRow { label, values })
        })
        .collect()
}

/// Which reading of the `J` entry of the half-lattice columns to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfJ {
    /// As printed: `k^4/4 - k^2/4`.
    Printed,
    /// `k^2/4 - k/4`, the `lambda_r` formula at `r = k`.
    Corrected,
}

/// The published table of top-level actions, as exact scalars.
pub fn reference_row(label: ModuleLabel, k: u32, half_j: HalfJ) -> Result<[Scalar; 3]> {
    let kk = k as i64;
    let q = Scalar::from_q;
    let two = |e: i64| Scalar::two_pow(k, Q::from_integer(e));
    let half_j = match half_j {
        HalfJ::Printed => Q::new(kk.pow(4), 4) - Q::new(kk * kk, 4),
        HalfJ::Corrected => Q::new(kk * kk, 4) - Q::new(kk, 4),
    };
    use crate::label::Sign::*;
    Ok(match label.normalize(k)? {
        ModuleLabel::UPlus => [q(Q::zero()), q(Q::zero()), q(Q::zero())],
        ModuleLabel::UMinus => [q(Q::one()), q(Q::from_integer(-6)), q(Q::zero())],
        ModuleLabel::Lambda(r) => {
            let w = Q::new(r * r, 4 * kk);
            let x = Q::new(r * r, 2 * kk);
            [q(w), q(x * x - w), q(Q::zero())]
        }
        ModuleLabel::HalfPlus => [q(Q::new(kk, 4)), q(half_j), q(Q::one())],
        ModuleLabel::HalfMinus => [q(Q::new(kk, 4)), q(half_j), q(-Q::one())],
        ModuleLabel::Tw(i, s) => {
            let sector = if i == 1 { 1 } else { -1 };
            match s {
                Plus => [q(Q::new(1, 16)), q(Q::new(3, 128)), two(1 - 2 * kk)?.scale_q(Q::from_integer(sector))],
                Minus => [
                    q(Q::new(9, 16)),
                    q(Q::new(-45, 128)),
                    two(1 - 2 * kk)?.scale_q(Q::from_integer(-sector * (4 * kk - 1))),
                ],
            }
        }
    })
}

/// The label whose top-level data is `(omega, J, (-1)^k E)` of `label`: the
/// contragredient as identified from the computed actions.
pub fn contragredient_from_actions(label: ModuleLabel, k: u32, rows: &[ZhuRow]) -> Option<ModuleLabel> {
    let own = rows.iter().find(|r| r.label == label)?.values.clone()?;
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let want = [own[0].clone(), own[1].clone(), own[2].scale_q(Q::from_integer(sign))];
    let hits: Vec<ModuleLabel> = rows
        .iter()
        .filter(|r| r.values.as_ref() == Some(&want))
        .map(|r| r.label)
        .collect();
    match hits.as_slice() {
        [one] => Some(*one),
        _ => None,
    }
}
