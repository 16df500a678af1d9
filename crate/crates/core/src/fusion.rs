//! Fusion rules as data: the `M(1)^+` rules, decompositions of `V_L^+`-modules into
//! `M(1)^+`-modules, the restriction upper bound, and the `V_L^+` table obtained by
//! closing the generating tables under the fusion-rule symmetries.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intertwiners::{construction_for, symmetry_orbit};
use crate::label::{M1Label, ModuleLabel, Sign};
use crate::scalar::Q;

use ModuleLabel::{HalfMinus, HalfPlus, Lambda, Tw, UMinus, UPlus};
use Sign::{Minus, Plus};

pub type Triple = [ModuleLabel; 3];

/// `N_{M N}^L` for irreducible `M(1)^+`-modules.
pub fn m1_fusion(m: M1Label, n: M1Label, l: M1Label) -> u8 {
    use M1Label::*;
    let hit = match m {
        Plus => n == l,
        Minus => matches!(
            (n, l),
            (Plus, Minus) | (Minus, Plus) | (TwPlus, TwMinus) | (TwMinus, TwPlus)
        ) || matches!((n, l), (Lam(x), Lam(y)) if x == y),
        Lam(x) => match (n, l) {
            (Plus | Minus, Lam(y)) | (Lam(y), Plus | Minus) => x == y,
            (Lam(y), Lam(z)) => z == (x + y).abs() || z == (x - y).abs(),
            (TwPlus | TwMinus, TwPlus | TwMinus) => true,
            _ => false,
        },
        TwPlus => matches!(
            (n, l),
            (Plus, TwPlus) | (Minus, TwMinus) | (TwPlus, Plus) | (TwMinus, Minus)
                | (Lam(_), TwPlus | TwMinus)
                | (TwPlus | TwMinus, Lam(_))
        ),
        TwMinus => matches!(
            (n, l),
            (Plus, TwMinus) | (Minus, TwPlus) | (TwPlus, Minus) | (TwMinus, Plus)
                | (Lam(_), TwPlus | TwMinus)
                | (TwPlus | TwMinus, Lam(_))
        ),
    };
    hit as u8
}

/// One `M(1)^+`-summand of a `V_L^+`-module. `shift` is the `m` in `lambda + m alpha`
/// for the lattice-type summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub module: M1Label,
    pub shift: Option<i64>,
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.module)
    }
}

/// The `M(1)^+`-decomposition of `label`, with the infinite families cut to
/// `|m| <= window` (`0 <= m <= window` for the one-sided ones).
pub fn decompose(label: ModuleLabel, k: u32, window: i64) -> Result<Vec<Constituent>> {
    let kk = k as i64;
    let lam = |x: Q, m: i64| Constituent {
        module: M1Label::lam(x),
        shift: Some(m),
    };
    let plain = |module| Constituent { module, shift: None };
    Ok(match label.normalize(k)? {
        UPlus | UMinus => {
            let head = if label == UPlus { M1Label::Plus } else { M1Label::Minus };
            let mut out = vec![plain(head)];
            out.extend((1..=window).map(|m| lam(Q::from_integer(m), m)));
            out
        }
        Lambda(r) => (-window..=window).map(|m| lam(Q::new(r, 2 * kk) + Q::from_integer(m), m)).collect(),
        HalfPlus | HalfMinus => (0..=window).map(|m| lam(Q::new(1, 2) + Q::from_integer(m), m)).collect(),
        Tw(_, Plus) => vec![plain(M1Label::TwPlus)],
        Tw(_, Minus) => vec![plain(M1Label::TwMinus)],
    })
}

/// Window for the first two entries of [`upper_bound`]. Beyond it the norms of
/// `lambda_r + m alpha` only grow, so no new matches with a fixed first summand appear.
pub fn source_window(k: u32) -> i64 {
    2 * k as i64 + 2
}

/// Window for the third entry: wide enough to contain every `|x +- y|` reachable
/// from the source windows.
pub fn target_window(k: u32) -> i64 {
    4 * k as i64 + 8
}

/// `min_{M in W1, N in W2} sum_{L in W3} N_{M N}^L` over `M(1)^+`-summands.
pub fn upper_bound(w1: ModuleLabel, w2: ModuleLabel, w3: ModuleLabel, k: u32) -> Result<u32> {
    let a = decompose(w1, k, source_window(k))?;
    let b = decompose(w2, k, source_window(k))?;
    let c = decompose(w3, k, target_window(k))?;
    let mut best = u32::MAX;
    for m in &a {
        for n in &b {
            let s: u32 = c.iter().map(|l| m1_fusion(m.module, n.module, l.module) as u32).sum();
            best = best.min(s);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// `(-1)^{r + delta_ij + 1} = 1`.
pub fn quasi_admissible(r: i64, i: u8, j: u8) -> bool {
    (r + (i == j) as i64 + 1).rem_euclid(2) == 0
}

/// The untwisted labels `V_{lambda_t + L}` names for raw `t`: both eigenmodules when
/// the coset splits.
fn coset_labels(t: i64, k: u32) -> Vec<ModuleLabel> {
    let n = 2 * k as i64;
    let r = t.rem_euclid(n);
    if r == 0 {
        vec![UPlus, UMinus]
    } else if r == k as i64 {
        vec![HalfPlus, HalfMinus]
    } else {
        vec![Lambda(t).normalize(k).expect("coset is neither L nor alpha/2 + L")]
    }
}

fn u(s: Sign) -> ModuleLabel {
    if s == Plus {
        UPlus
    } else {
        UMinus
    }
}

fn half(s: Sign) -> ModuleLabel {
    if s == Plus {
        HalfPlus
    } else {
        HalfMinus
    }
}

const SIGNS: [Sign; 2] = [Plus, Minus];

/// How to read the first pair of case (v) of the untwisted table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UntwistedReading {
    /// `(V^+-, V_{lambda_r})`, the reading consistent with the rest of the statement.
    Corrected,
    /// `(V^+-, V^+-)` as printed.
    Literal,
}

/// The untwisted generating table: every triple of untwisted labels with value 1.
pub fn untwisted_seed(k: u32, reading: UntwistedReading) -> BTreeSet<Triple> {
    let kk = k as i64;
    let d = |w: ModuleLabel| w.contragredient(k);
    let mut out = BTreeSet::new();
    let untwisted: Vec<ModuleLabel> = ModuleLabel::all(k).into_iter().filter(|w| !w.is_twisted()).collect();
    // (i)
    for &w in &untwisted {
        out.insert([UPlus, w, w]);
    }
    // (ii)
    for s in SIGNS {
        out.insert([UMinus, u(s), u(s.flip())]);
        out.insert([UMinus, half(s), half(s.flip())]);
    }
    for r in 1..kk {
        out.insert([UMinus, Lambda(r), Lambda(r)]);
    }
    // (iii), (iv)
    for (w1, flip) in [(HalfPlus, false), (HalfMinus, true)] {
        for s in SIGNS {
            let t = if flip { s.flip() } else { s };
            out.insert([w1, u(s), half(t)]);
            out.insert([w1, d(half(s)), u(t)]);
        }
        for r in 1..kk {
            out.insert([w1, Lambda(r), Lambda(kk - r)]);
        }
    }
    // (v)
    for r in 1..kk {
        let w1 = Lambda(r);
        for s in SIGNS {
            match reading {
                UntwistedReading::Corrected => out.insert([w1, u(s), w1]),
                UntwistedReading::Literal => out.insert([w1, u(s), u(s)]),
            };
            out.insert([w1, half(s), Lambda(kk - r)]);
            out.insert([w1, Lambda(kk - r), half(s)]);
        }
        for s in 1..kk {
            for t in [r + s, r - s] {
                for w3 in coset_labels(t, k) {
                    out.insert([w1, Lambda(s), w3]);
                }
            }
        }
    }
    out
}

/// The pairs `(W2, W3)` with value 1 for `W1 = (V^{T_i, sigma})'`, as listed in the
/// twisted generating table.
fn twisted_rows(k: u32, i: u8, sigma: Sign) -> Vec<(ModuleLabel, ModuleLabel)> {
    let d = |w: ModuleLabel| w.contragredient(k);
    let kk = k as i64;
    let tw = |j: u8, s: Sign| Tw(j, s);
    // the sign relating the Va and VT entries: flips with sigma and again in sector 2
    let va_sign = |e: Sign| {
        let mut t = if sigma == Plus { e } else { e.flip() };
        if i == 2 {
            t = t.flip();
        }
        t
    };
    let mut out = Vec::new();
    for e in SIGNS {
        let same = if sigma == Plus { e } else { e.flip() };
        out.push((u(e), d(tw(i, same))));
        out.push((tw(i, e), u(same)));
        out.push((half(e), tw(i, va_sign(e))));
        out.push((d(tw(i, e)), d(half(va_sign(e)))));
    }
    for r in 1..kk {
        let j = if r % 2 == 0 { i } else { 3 - i };
        for e in SIGNS {
            out.push((Lambda(r), d(tw(j, e))));
            out.push((tw(j, e), Lambda(r)));
        }
    }
    out
}

/// The twisted generating table: every triple with twisted first entry and value 1.
pub fn twisted_seed(k: u32) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for i in [1u8, 2] {
        for sigma in SIGNS {
            let w1 = Tw(i, sigma).contragredient(k);
            for (w2, w3) in twisted_rows(k, i, sigma) {
                out.insert([w1, w2, w3]);
            }
        }
    }
    out
}

/// The main theorem's list, transcribed case by case (including its repeated pair
/// in case (v)), for comparison against the closure.
pub fn transcribed_table(k: u32) -> BTreeSet<Triple> {
    let kk = k as i64;
    let d = |w: ModuleLabel| w.contragredient(k);
    let mut out = BTreeSet::new();
    let all = ModuleLabel::all(k);
    // (i)
    for &w in &all {
        out.insert([UPlus, w, w]);
    }
    // (ii)
    for s in SIGNS {
        out.insert([UMinus, u(s), u(s.flip())]);
        out.insert([UMinus, half(s), half(s.flip())]);
        out.insert([UMinus, Tw(1, s), Tw(1, s.flip())]);
        out.insert([UMinus, Tw(2, s), Tw(2, s.flip())]);
    }
    for r in 1..kk {
        out.insert([UMinus, Lambda(r), Lambda(r)]);
    }
    // (iii), (iv)
    for (w1, flip) in [(HalfPlus, false), (HalfMinus, true)] {
        for s in SIGNS {
            let t = if flip { s.flip() } else { s };
            out.insert([w1, u(s), half(t)]);
            out.insert([w1, d(half(s)), u(t)]);
            out.insert([w1, d(Tw(1, s)), Tw(1, t)]);
            out.insert([w1, d(Tw(2, s)), Tw(2, t.flip())]);
        }
        for r in 1..kk {
            out.insert([w1, Lambda(r), Lambda(kk - r)]);
        }
    }
    // (v)
    for r in 1..kk {
        let w1 = Lambda(r);
        for s in SIGNS {
            out.insert([w1, u(s), w1]);
            out.insert([w1, u(s), w1]);
            out.insert([w1, half(s), Lambda(kk - r)]);
            out.insert([w1, Lambda(kk - r), half(s)]);
        }
        for s in 1..kk {
            for t in [r + s, r - s] {
                for w3 in coset_labels(t, k) {
                    out.insert([w1, Lambda(s), w3]);
                }
            }
        }
        let pairs: &[(u8, u8)] = if r % 2 == 0 { &[(1, 1), (2, 2)] } else { &[(1, 2), (2, 1)] };
        for &(i, j) in pairs {
            for s in SIGNS {
                out.insert([w1, Tw(i, s), Tw(j, s)]);
                out.insert([w1, Tw(i, s), Tw(j, s.flip())]);
            }
        }
    }
    // (vi) - (ix)
    out.extend(twisted_seed(k));
    out
}

/// The 0/1 table on all `(k+7)^3` label triples.
#[derive(Debug, Clone)]
pub struct FusionTable {
    k: u32,
    labels: Vec<ModuleLabel>,
    index: HashMap<ModuleLabel, usize>,
    values: Vec<u8>,
}

fn triple_name(t: &Triple) -> String {
    format!("({}, {}, {})", t[0], t[1], t[2])
}

impl FusionTable {
    /// Close the generating tables under the symmetries, check that the result is a
    /// consistent complete table, and check it against the transcribed theorem.
    pub fn build(k: u32) -> Result<FusionTable> {
        let t = Self::closure(k, UntwistedReading::Corrected)?;
        let expected = transcribed_table(k);
        for (idx, &v) in t.values.iter().enumerate() {
            let tr = t.triple_at(idx);
            let listed = expected.contains(&tr) as u8;
            if v != listed {
                return Err(Error::Inconsistent {
                    triple: triple_name(&tr),
                    detail: format!("closure gives {v} but the transcribed theorem gives {listed}"),
                });
            }
        }
        Ok(t)
    }

    /// The fixed point of the generating tables under `(W1,W2,W3) -> (W2,W1,W3)` and
    /// `(W1,W2,W3) -> (W1,W3',W2')`.
    pub fn closure(k: u32, reading: UntwistedReading) -> Result<FusionTable> {
        let labels = ModuleLabel::all(k);
        let index: HashMap<ModuleLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let n = labels.len();
        let mut values: Vec<Option<u8>> = vec![None; n * n * n];
        let pos = |t: &Triple| index[&t[0]] * n * n + index[&t[1]] * n + index[&t[2]];
        let unt = untwisted_seed(k, reading);
        let tw = twisted_seed(k);
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    let t = [*a, *b, *c];
                    if !a.is_twisted() && !b.is_twisted() && !c.is_twisted() {
                        values[pos(&t)] = Some(unt.contains(&t) as u8);
                    } else if a.is_twisted() {
                        values[pos(&t)] = Some(tw.contains(&t) as u8);
                    }
                }
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for a in &labels {
                for b in &labels {
                    for c in &labels {
                        let t = [*a, *b, *c];
                        let Some(v) = values[pos(&t)] else { continue };
                        for img in [[*b, *a, *c], [*a, c.contragredient(k), b.contragredient(k)]] {
                            match values[pos(&img)] {
                                None => {
                                    values[pos(&img)] = Some(v);
                                    changed = true;
                                }
                                Some(w) if w != v => {
                                    return Err(Error::Inconsistent {
                                        triple: triple_name(&t),
                                        detail: format!("value {v} but its symmetry image {} has {w}", triple_name(&img)),
                                    });
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            let t = [labels[i / (n * n)], labels[(i / n) % n], labels[i % n]];
            out.push(v.ok_or_else(|| Error::Inconsistent {
                triple: triple_name(&t),
                detail: "not determined by the generating tables".into(),
            })?);
        }
        Ok(FusionTable {
            k,
            labels,
            index,
            values: out,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn labels(&self) -> &[ModuleLabel] {
        &self.labels
    }

    fn triple_at(&self, idx: usize) -> Triple {
        let n = self.labels.len();
        [self.labels[idx / (n * n)], self.labels[(idx / n) % n], self.labels[idx % n]]
    }

    /// `N_{W1 W2}^{W3}`; labels are normalized first.
    pub fn fusion(&self, w1: ModuleLabel, w2: ModuleLabel, w3: ModuleLabel) -> Result<u8> {
        let n = self.labels.len();
        let i = |w: ModuleLabel| -> Result<usize> {
            let w = w.normalize(self.k)?;
            self.index.get(&w).copied().ok_or_else(|| Error::LabelMismatch {
                label: w.to_string(),
                k: self.k,
                reason: "no such module".into(),
            })
        };
        Ok(self.values[i(w1)? * n * n + i(w2)? * n + i(w3)?])
    }

    /// Every triple with its value, in label order.
    pub fn entries(&self) -> impl Iterator<Item = (Triple, u8)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (self.triple_at(i), *v))
    }
}

/// Names of the explicit constructions behind a nonzero value: the operator used for
/// the triple itself, or for the symmetry image it is derived from.
pub fn witness_names(k: u32, t: Triple) -> Vec<String> {
    symmetry_orbit(k, t)
        .into_iter()
        .find_map(|img| {
            construction_for(k, img).map(|s| {
                if img == t {
                    vec![s.name()]
                } else {
                    vec![format!("{} on {}", s.name(), triple_name(&img))]
                }
            })
        })
        .unwrap_or_default()
}

/// Triples with value 0 whose restriction bound is positive.
pub fn bound_blind_zeros(table: &FusionTable) -> Result<Vec<Triple>> {
    let k = table.k();
    let mut out = Vec::new();
    for (t, v) in table.entries() {
        if v == 0 && upper_bound(t[0], t[1], t[2], k)? > 0 {
            out.push(t);
        }
    }
    Ok(out)
}

/// A norm class `x` with `M(1, x alpha)` in the decomposition of `label`.
pub fn contains_class(label: ModuleLabel, k: u32, x: Q) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let window = (x.abs().ceil().to_integer() + 1).max(1);
    Ok(decompose(label, k, window)?.iter().any(|c| c.module == M1Label::lam(x)))
}
