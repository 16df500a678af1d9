//! Fock spaces: `M(1) (x) C[L°]` (untwisted) and `M(1)(theta) (x) T` (twisted).
//!
//! Heisenberg modes are those of `alpha` itself, with `[alpha(m), alpha(n)] = 2k m
//! delta_{m+n,0}`. Lattice points are integers `r` standing for `lambda_r = r alpha/2k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::label::{M1Label, ModuleLabel, Sign};
use crate::scalar::{Scalar, Q};

/// Sorted (descending) multiset of positive integers.
fn insert_desc(parts: &[u32], n: u32) -> Vec<u32> {
    let pos = parts.iter().position(|&p| p < n).unwrap_or(parts.len());
    let mut out = Vec::with_capacity(parts.len() + 1);
    out.extend_from_slice(&parts[..pos]);
    out.push(n);
    out.extend_from_slice(&parts[pos..]);
    out
}

/// Remove one copy of `n`, returning the multiplicity it had.
fn remove_one(parts: &[u32], n: u32) -> Option<(Vec<u32>, u32)> {
    let count = parts.iter().filter(|&&p| p == n).count() as u32;
    if count == 0 {
        return None;
    }
    let pos = parts.iter().position(|&p| p == n).unwrap();
    let mut out = parts.to_vec();
    out.remove(pos);
    Some((out, count))
}

/// All partitions of `n` into parts from `allowed`, each as a descending list.
fn partitions_with(n: u32, max_part: u32, allowed: &dyn Fn(u32) -> bool) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        if !allowed(first) {
            continue;
        }
        for mut rest in partitions_with(n - first, first, allowed) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn fmt_modes(f: &mut fmt::Formatter<'_>, parts: &[u32], half: bool) -> fmt::Result {
    let mut i = 0;
    while i < parts.len() {
        let p = parts[i];
        let mut j = i;
        while j < parts.len() && parts[j] == p {
            j += 1;
        }
        if half {
            write!(f, "a(-{p}/2)")?;
        } else {
            write!(f, "a(-{p})")?;
        }
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

/// Untwisted mode degrees `n_1 >= n_2 >= ... >= 1`, for `alpha(-n_1)...alpha(-n_l)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn with(&self, n: u32) -> Self {
        Partition(insert_desc(&self.0, n))
    }

    pub fn without(&self, n: u32) -> Option<(Self, u32)> {
        remove_one(&self.0, n).map(|(p, c)| (Partition(p), c))
    }

    /// Every partition of `n`.
    pub fn all_of(n: u32) -> Vec<Partition> {
        partitions_with(n, n, &|_| true).into_iter().map(Partition).collect()
    }
}

/// Twisted mode degrees in `1/2 + N`, stored doubled (so every entry is odd).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfPartition(Vec<u32>);

impl HalfPartition {
    /// Build from doubled parts; each must be odd.
    pub fn from_doubled(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p % 2 == 1), "twisted modes are half-odd");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        HalfPartition(parts)
    }

    pub fn empty() -> Self {
        HalfPartition(Vec::new())
    }

    pub fn doubled_parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> Q {
        Q::new(self.0.iter().sum::<u32>() as i64, 2)
    }

    pub fn with(&self, doubled: u32) -> Self {
        HalfPartition(insert_desc(&self.0, doubled))
    }

    pub fn without(&self, doubled: u32) -> Option<(Self, u32)> {
        remove_one(&self.0, doubled).map(|(p, c)| (HalfPartition(p), c))
    }

    /// Every half-odd partition of `n` (which must lie in `N/2`).
    pub fn all_of(n: Q) -> Vec<HalfPartition> {
        let doubled = n * Q::from_integer(2);
        if !doubled.is_integer() || doubled < Q::zero() {
            return Vec::new();
        }
        let d = doubled.to_integer() as u32;
        partitions_with(d, d, &|p| p % 2 == 1)
            .into_iter()
            .map(HalfPartition)
            .collect()
    }
}

/// Which copy of the twisted Fock space a vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    /// `M(1)(theta)` alone.
    Bare,
    /// `M(1)(theta) (x) t_1`, where `e_alpha` acts as `1`.
    T1,
    /// `M(1)(theta) (x) t_2`, where `e_alpha` acts as `-1`.
    T2,
}

impl Sector {
    pub fn from_index(i: u8) -> Sector {
        match i {
            1 => Sector::T1,
            2 => Sector::T2,
            _ => panic!("sector index must be 1 or 2"),
        }
    }

    pub fn index(self) -> Option<u8> {
        match self {
            Sector::Bare => None,
            Sector::T1 => Some(1),
            Sector::T2 => Some(2),
        }
    }
}

/// A graded basis element.
pub trait Basis: Clone + Ord + fmt::Display + fmt::Debug + Send + Sync {
    fn weight(&self, k: u32) -> Q;
    /// `theta` on this element: the image and the sign.
    fn theta(&self) -> (Self, i64);
}

/// `alpha(-n_1)...alpha(-n_l) e_{lambda_r}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UBasis {
    pub parts: Partition,
    pub r: i64,
}

impl UBasis {
    pub fn new(parts: Partition, r: i64) -> Self {
        UBasis { parts, r }
    }

    pub fn lattice(r: i64) -> Self {
        UBasis {
            parts: Partition::empty(),
            r,
        }
    }
}

impl Basis for UBasis {
    fn weight(&self, k: u32) -> Q {
        Q::from_integer(self.parts.size() as i64) + Q::new(self.r * self.r, 4 * k as i64)
    }

    fn theta(&self) -> (Self, i64) {
        let sign = if self.parts.len().is_multiple_of(2) { 1 } else { -1 };
        (
            UBasis {
                parts: self.parts.clone(),
                r: -self.r,
            },
            sign,
        )
    }
}

impl fmt::Display for UBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_modes(f, self.parts.parts(), false)?;
        if !self.parts.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "e[{}]", self.r)
    }
}

/// `alpha(-n_1)...alpha(-n_l) 1_tw (x) t_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TBasis {
    pub parts: HalfPartition,
    pub sector: Sector,
}

impl TBasis {
    pub fn new(parts: HalfPartition, sector: Sector) -> Self {
        TBasis { parts, sector }
    }

    pub fn vacuum(sector: Sector) -> Self {
        TBasis {
            parts: HalfPartition::empty(),
            sector,
        }
    }
}

impl Basis for TBasis {
    fn weight(&self, _k: u32) -> Q {
        self.parts.size() + Q::new(1, 16)
    }

    fn theta(&self) -> (Self, i64) {
        let sign = if self.parts.len().is_multiple_of(2) { 1 } else { -1 };
        (self.clone(), sign)
    }
}

impl fmt::Display for TBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_modes(f, self.parts.doubled_parts(), true)?;
        if !self.parts.is_empty() {
            write!(f, " ")?;
        }
        match self.sector.index() {
            Some(i) => write!(f, "1tw[{i}]"),
            None => write!(f, "1tw"),
        }
    }
}

/// A finite linear combination of basis elements, for a fixed `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector<B: Basis> {
    k: u32,
    terms: BTreeMap<B, Scalar>,
}

pub type UVector = Vector<UBasis>;
pub type TVector = Vector<TBasis>;

impl<B: Basis> Vector<B> {
    pub fn zero(k: u32) -> Self {
        Vector {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(k: u32, b: B) -> Self {
        let mut v = Self::zero(k);
        v.terms.insert(b, Scalar::one());
        v
    }

    pub fn from_terms(k: u32, terms: impl IntoIterator<Item = (B, Scalar)>) -> Self {
        let mut v = Self::zero(k);
        for (b, c) in terms {
            v.add_term(b, &c);
        }
        v
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: B, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), &(x * c));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.k);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_q(&self, q: Q) -> Self {
        self.scale(&Scalar::from_q(q))
    }

    /// Apply `f` termwise: each basis element maps to a vector, scaled by its coefficient.
    pub fn map_terms<C: Basis>(&self, mut f: impl FnMut(&B) -> Vector<C>) -> Vector<C> {
        let mut out = Vector::zero(self.k);
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        Vector {
            k: self.k,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn theta(&self) -> Self {
        let mut out = Self::zero(self.k);
        for (b, c) in &self.terms {
            let (img, sign) = b.theta();
            out.add_term(img, &c.scale_q(Q::from_integer(sign)));
        }
        out
    }

    /// `(v + sign * theta(v)) / 2`.
    pub fn project_eigen(&self, sign: Sign) -> Self {
        let th = self.theta().scale_q(Q::from_integer(sign.as_i64()));
        self.plus(&th).scale_q(Q::new(1, 2))
    }

    pub fn max_weight(&self) -> Option<Q> {
        self.terms.keys().map(|b| b.weight(self.k)).max()
    }

    pub fn min_weight(&self) -> Option<Q> {
        self.terms.keys().map(|b| b.weight(self.k)).min()
    }

    /// The weight-`w` component.
    pub fn component(&self, w: Q) -> Self {
        let k = self.k;
        self.filter(|b| b.weight(k) == w)
    }

    /// Components of weight at most `cutoff`.
    pub fn truncate(&self, cutoff: Q) -> Self {
        let k = self.k;
        self.filter(|b| b.weight(k) <= cutoff)
    }

    /// `Some(w)` if every term has weight `w`.
    pub fn homogeneous_weight(&self) -> Option<Q> {
        let w = self.min_weight()?;
        (self.max_weight() == Some(w)).then_some(w)
    }

    /// The scalar `c` with `self = c * other`, if there is one.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (b0, c0) = other.terms.iter().next()?;
        let x = self.terms.get(b0)?;
        // c = x / c0; c0 is rational for every vector we build this way
        let inv = c0.as_rational().filter(|q| !q.is_zero())?;
        let c = x.scale(&(num_rational::BigRational::one() / inv));
        (other.scale(&c) == *self).then_some(c)
    }
}

impl<B: Basis> fmt::Display for Vector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| (a.weight(self.k), *a).cmp(&(b.weight(self.k), *b)));
        for (i, (b, c)) in sorted.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.terms().count() > 1 {
                write!(f, "({c}) {b}")?;
            } else {
                write!(f, "{c} {b}")?;
            }
        }
        Ok(())
    }
}

impl<B: Basis> fmt::Debug for Vector<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The action of a Heisenberg mode `alpha(n)`.
pub trait HeisAct: Sized {
    fn heis_act(&self, n: Q) -> Result<Self>;
}

impl UVector {
    /// `e_{lambda_r}`.
    pub fn lattice(k: u32, r: i64) -> Self {
        Self::basis(k, UBasis::lattice(r))
    }

    /// `alpha(n)` for integer `n`.
    pub fn alpha(&self, n: i64) -> Self {
        let k = self.k;
        self.map_terms(|b| {
            if n < 0 {
                Vector::basis(k, UBasis::new(b.parts.with((-n) as u32), b.r))
            } else if n == 0 {
                Vector::basis(k, b.clone()).scale(&Scalar::from_int(b.r))
            } else {
                match b.parts.without(n as u32) {
                    Some((rest, count)) => Vector::basis(k, UBasis::new(rest, b.r))
                        .scale(&Scalar::from_int(2 * k as i64 * n * count as i64)),
                    None => Vector::zero(k),
                }
            }
        })
    }

    /// Multiply each lattice index by the shift `r -> r + dr` (the group-algebra
    /// element `e_{lambda_dr}`).
    pub fn shift(&self, dr: i64) -> Self {
        Self::from_terms(
            self.k,
            self.terms
                .iter()
                .map(|(b, c)| (UBasis::new(b.parts.clone(), b.r + dr), c.clone())),
        )
    }
}

impl HeisAct for UVector {
    fn heis_act(&self, n: Q) -> Result<Self> {
        if !n.is_integer() {
            return Err(Error::InvalidMode(format!(
                "alpha({n}) on an untwisted vector: modes must be integers"
            )));
        }
        Ok(self.alpha(n.to_integer()))
    }
}

impl TVector {
    pub fn vacuum(k: u32, sector: Sector) -> Self {
        Self::basis(k, TBasis::vacuum(sector))
    }

    /// `alpha(n2 / 2)` for odd `n2`.
    pub fn alpha_half(&self, n2: i64) -> Self {
        assert!(n2 % 2 != 0, "twisted modes are half-odd");
        let k = self.k;
        self.map_terms(|b| {
            if n2 < 0 {
                Vector::basis(k, TBasis::new(b.parts.with((-n2) as u32), b.sector))
            } else {
                match b.parts.without(n2 as u32) {
                    // [alpha(n), alpha(-n)] = 2k n = k * n2
                    Some((rest, count)) => Vector::basis(k, TBasis::new(rest, b.sector))
                        .scale(&Scalar::from_int(k as i64 * n2 * count as i64)),
                    None => Vector::zero(k),
                }
            }
        })
    }

    pub fn with_sector(&self, sector: Sector) -> Self {
        Self::from_terms(
            self.k,
            self.terms
                .iter()
                .map(|(b, c)| (TBasis::new(b.parts.clone(), sector), c.clone())),
        )
    }
}

impl HeisAct for TVector {
    fn heis_act(&self, n: Q) -> Result<Self> {
        let n2 = n * Q::from_integer(2);
        if !n2.is_integer() || n2.to_integer() % 2 == 0 {
            return Err(Error::InvalidMode(format!(
                "alpha({n}) on a twisted vector: modes must lie in 1/2 + Z"
            )));
        }
        Ok(self.alpha_half(n2.to_integer()))
    }
}

/// Untwisted basis elements of weight `w` at lattice index `r`.
pub fn untwisted_basis(k: u32, r: i64, w: Q) -> Vec<UBasis> {
    let n = w - Q::new(r * r, 4 * k as i64);
    if !n.is_integer() || n < Q::zero() {
        return Vec::new();
    }
    Partition::all_of(n.to_integer() as u32)
        .into_iter()
        .map(|p| UBasis::new(p, r))
        .collect()
}

/// Twisted basis elements of weight `w` in `sector`.
pub fn twisted_basis(w: Q, sector: Sector) -> Vec<TBasis> {
    HalfPartition::all_of(w - Q::new(1, 16))
        .into_iter()
        .map(|p| TBasis::new(p, sector))
        .collect()
}

/// Lattice indices `r = r0 + 2km` whose `e_{lambda_r}` has weight at most `w`.
fn coset_points(k: u32, r0: i64, w: Q) -> Vec<i64> {
    let n = 2 * k as i64;
    let mut out = Vec::new();
    let mut m = 0i64;
    loop {
        let mut any = false;
        for r in [r0 + n * m, r0 - n * m] {
            if Q::new(r * r, 4 * k as i64) <= w {
                any = true;
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        if !any {
            break;
        }
        m += 1;
    }
    out.sort_unstable();
    out
}

/// Dimension of the weight-`w` subspace of an irreducible `V_L^+`-module, by
/// enumerating a basis of the ambient Fock space and counting nonzero
/// theta-projections of orbit representatives.
pub fn graded_dim(label: ModuleLabel, k: u32, w: Q) -> Result<u64> {
    let label = label.normalize(k)?;
    let count_eigen = |reps: Vec<UBasis>, sign: Sign| -> u64 {
        reps.into_iter()
            .filter(|b| !UVector::basis(k, b.clone()).project_eigen(sign).is_zero())
            .count() as u64
    };
    Ok(match label {
        ModuleLabel::UPlus | ModuleLabel::UMinus | ModuleLabel::HalfPlus | ModuleLabel::HalfMinus => {
            let r0 = label.coset(k).unwrap();
            let reps: Vec<UBasis> = coset_points(k, r0, w)
                .into_iter()
                .filter(|&r| r >= 0)
                .flat_map(|r| untwisted_basis(k, r, w))
                .collect();
            count_eigen(reps, label.sign().unwrap())
        }
        ModuleLabel::Lambda(r0) => coset_points(k, r0, w)
            .into_iter()
            .map(|r| untwisted_basis(k, r, w).len() as u64)
            .sum(),
        ModuleLabel::Tw(i, sign) => twisted_basis(w, Sector::from_index(i))
            .into_iter()
            .filter(|b| {
                !TVector::basis(k, b.clone())
                    .project_eigen(sign)
                    .is_zero()
            })
            .count() as u64,
    })
}

/// Number of partitions of `n` into parts from `parts`, split by parity of the
/// number of parts: `(even, odd)`. Generating-function DP, independent of the
/// explicit enumeration above.
fn partition_counts_by_parity(n: u32, parts: impl Iterator<Item = u32>) -> (u64, u64) {
    let n = n as usize;
    let mut even = vec![0u64; n + 1];
    let mut odd = vec![0u64; n + 1];
    even[0] = 1;
    for p in parts {
        let p = p as usize;
        if p == 0 || p > n {
            continue;
        }
        // unbounded multiplicity: each extra copy flips the parity
        for s in p..=n {
            let (e, o) = (even[s - p], odd[s - p]);
            even[s] += o;
            odd[s] += e;
        }
    }
    (even[n], odd[n])
}

/// Dimension of the weight-`w` subspace of an irreducible `M(1)^+`-module.
pub fn m1_graded_dim(label: M1Label, k: u32, w: Q) -> u64 {
    let int_part = |x: Q| -> Option<u32> {
        (x.is_integer() && x >= Q::zero()).then(|| x.to_integer() as u32)
    };
    match label {
        M1Label::Plus | M1Label::Minus => match int_part(w) {
            Some(n) => {
                let (e, o) = partition_counts_by_parity(n, 1..=n);
                if label == M1Label::Plus { e } else { o }
            }
            None => 0,
        },
        M1Label::Lam(x) => match int_part(w - x * x * Q::from_integer(k as i64)) {
            Some(n) => {
                let (e, o) = partition_counts_by_parity(n, 1..=n);
                e + o
            }
            None => 0,
        },
        M1Label::TwPlus | M1Label::TwMinus => {
            match int_part((w - Q::new(1, 16)) * Q::from_integer(2)) {
                Some(n2) => {
                    let (e, o) = partition_counts_by_parity(n2, (1..=n2).step_by(2));
                    if label == M1Label::TwPlus { e } else { o }
                }
                None => 0,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(parts: &[u32], r: i64) -> UBasis {
        UBasis::new(Partition::new(parts.to_vec()), r)
    }

    #[test]
    fn heisenberg_examples() {
        for k in 1..=4u32 {
            let v = UVector::basis(k, u(&[1], 0));
            assert_eq!(v.alpha(1), UVector::lattice(k, 0).scale_q(Q::from_integer(2 * k as i64)));
            let ea = UVector::lattice(k, 2 * k as i64);
            assert_eq!(ea.alpha(0), ea.scale_q(Q::from_integer(2 * k as i64)));
            let t = TVector::vacuum(k, Sector::Bare).alpha_half(-1);
            assert_eq!(t.alpha_half(1), TVector::vacuum(k, Sector::Bare).scale_q(Q::from_integer(k as i64)));
        }
        assert!(TVector::vacuum(1, Sector::T1).heis_act(Q::zero()).is_err());
        assert!(UVector::lattice(1, 0).heis_act(Q::new(1, 2)).is_err());
    }

    #[test]
    fn theta_examples() {
        let k = 2;
        let v = UVector::basis(k, u(&[1], 4));
        assert_eq!(v.theta(), UVector::basis(k, u(&[1], -4)).scale_q(Q::from_integer(-1)));
        assert_eq!(v.theta().theta(), v);
        let t = TVector::basis(k, TBasis::new(HalfPartition::from_doubled(vec![1, 3]), Sector::Bare));
        assert_eq!(t.theta(), t);
    }

    #[test]
    fn projections() {
        let k = 3;
        let e = UVector::lattice(k, 6);
        let expect = e.plus(&UVector::lattice(k, -6)).scale_q(Q::new(1, 2));
        assert_eq!(e.project_eigen(Sign::Plus), expect);
        assert!(UVector::lattice(k, 0).project_eigen(Sign::Minus).is_zero());
        assert!(UVector::basis(k, u(&[2], 0)).project_eigen(Sign::Plus).is_zero());
    }

    #[test]
    fn graded_dim_examples() {
        for k in 1..=3 {
            assert_eq!(graded_dim(ModuleLabel::UPlus, k, Q::zero()).unwrap(), 1);
            assert_eq!(graded_dim(ModuleLabel::Tw(1, Sign::Plus), k, Q::new(1, 16)).unwrap(), 1);
        }
        assert_eq!(graded_dim(ModuleLabel::UMinus, 2, Q::from_integer(1)).unwrap(), 1);
        // k = 1 adds e_alpha - e_-alpha at weight 1
        assert_eq!(graded_dim(ModuleLabel::UMinus, 1, Q::from_integer(1)).unwrap(), 2);
    }

    #[test]
    fn partition_counts() {
        let p: Vec<u64> = (0..10)
            .map(|n| {
                let (e, o) = partition_counts_by_parity(n, 1..=n);
                e + o
            })
            .collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        for n in 0..12 {
            assert_eq!(Partition::all_of(n).len() as u64, p.get(n as usize).copied().unwrap_or_else(|| {
                let (e, o) = partition_counts_by_parity(n, 1..=n);
                e + o
            }));
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(u(&[1, 1, 3], 2).to_string(), "a(-3)a(-1)^2 e[2]");
        assert_eq!(u(&[], -1).to_string(), "e[-1]");
        let t = TBasis::new(HalfPartition::from_doubled(vec![1, 1, 3]), Sector::T2);
        assert_eq!(t.to_string(), "a(-3/2)a(-1/2)^2 1tw[2]");
        assert_eq!(TBasis::vacuum(Sector::Bare).to_string(), "1tw");
    }
}
