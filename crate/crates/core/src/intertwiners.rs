//! Explicit intertwining operators among `V_L^+`-modules: `Y_{r,s} = Y° o pi_{lambda_r}`,
//! the theta-composed variant, the twisted operator `Y~ = Y^theta (x) psi_lambda`, and
//! checks built on them.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{Sector, TBasis, TVector, UBasis, UVector};
use crate::label::ModuleLabel;
use crate::scalar::{Scalar, Q};
use crate::twisted::{tilde_series, twisted_series, twisted_top};
use crate::untwisted::{basis_up_to, vertex_series_unchecked, ZSeries};

/// `pi_{lambda_r}`: multiplies a term at lattice index `s` by `zeta^{rs}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseOp {
    pub r: i64,
}

impl PhaseOp {
    pub fn new(r: i64) -> Self {
        PhaseOp { r }
    }

    pub fn apply(&self, v: &UVector) -> UVector {
        let k = v.k();
        UVector::from_terms(
            k,
            v.terms()
                .map(|(b, c)| (b.clone(), c * &Scalar::zeta_pow(k, self.r * b.r))),
        )
    }

    pub fn then(&self, other: &PhaseOp) -> PhaseOp {
        PhaseOp::new(self.r + other.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// The module vertex operator (`u` in `V_L`).
    Module,
    /// `Y_{r,s}(u, z) = Y°(u, z) pi_{lambda_r}` on `V_{lambda_s + L}`.
    Yrs,
    /// `(Y_{r,-s} o theta)(u, z) v = Y_{r,-s}(u, z) theta(v)`.
    YrsTheta,
    /// `Y~(u, z) = Y^theta(u, z) (x) psi_{lambda_r}` on `V^T`.
    Tilde,
    /// `Y~(u, z) theta(v)`.
    TildeTheta,
}

/// Which operator to evaluate, with its lattice parameters and (when it came from
/// the fusion engine) the module type it realizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwinerSpec {
    pub kind: Kind,
    pub r: i64,
    pub s: i64,
    pub types: Option<[ModuleLabel; 3]>,
}

impl IntertwinerSpec {
    pub fn raw(kind: Kind, r: i64, s: i64) -> Self {
        IntertwinerSpec {
            kind,
            r,
            s,
            types: None,
        }
    }

    pub fn with_types(mut self, types: [ModuleLabel; 3]) -> Self {
        self.types = Some(types);
        self
    }

    pub fn name(&self) -> String {
        match self.kind {
            Kind::Module => "Y".to_string(),
            Kind::Yrs => format!("Y_{{{},{}}}", self.r, self.s),
            Kind::YrsTheta => format!("Y_{{{},{}}}.theta", self.r, -self.s),
            Kind::Tilde => format!("Ytilde_{{{}}}", self.r),
            Kind::TildeTheta => format!("Ytilde_{{{}}}.theta", self.r),
        }
    }
}

impl fmt::Display for IntertwinerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some([a, b, c]) = self.types {
            write!(f, " of type ({a}, {b}, {c})")?;
        }
        Ok(())
    }
}

/// A vector in an untwisted or a twisted module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModVec {
    U(UVector),
    T(TVector),
}

impl ModVec {
    pub fn is_zero(&self) -> bool {
        match self {
            ModVec::U(v) => v.is_zero(),
            ModVec::T(v) => v.is_zero(),
        }
    }

    pub fn max_weight(&self) -> Option<Q> {
        match self {
            ModVec::U(v) => v.max_weight(),
            ModVec::T(v) => v.max_weight(),
        }
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModVec::U(v) => write!(f, "{v}"),
            ModVec::T(v) => write!(f, "{v}"),
        }
    }
}

/// `Y(u, z) v` keyed by z-exponent.
#[derive(Debug, Clone)]
pub enum Series {
    U(ZSeries<UBasis>),
    T(ZSeries<TBasis>),
}

impl Series {
    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<Q> {
        match self {
            Series::U(s) => s.keys().copied().collect(),
            Series::T(s) => s.keys().copied().collect(),
        }
    }

    pub fn get(&self, e: Q) -> Option<ModVec> {
        match self {
            Series::U(s) => s.get(&e).cloned().map(ModVec::U),
            Series::T(s) => s.get(&e).cloned().map(ModVec::T),
        }
    }

    /// Apply `f` to every coefficient, dropping those that become zero.
    pub fn map(&self, fu: impl Fn(&UVector) -> UVector, ft: impl Fn(&TVector) -> TVector) -> Series {
        match self {
            Series::U(s) => Series::U(
                s.iter()
                    .map(|(e, v)| (*e, fu(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            ),
            Series::T(s) => Series::T(
                s.iter()
                    .map(|(e, v)| (*e, ft(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            ),
        }
    }
}

fn lattice_classes(v: &UVector, n: i64) -> BTreeSet<i64> {
    v.terms().map(|(b, _)| b.r.rem_euclid(n)).collect()
}

fn require_coset(what: &str, v: &UVector, r: i64) -> Result<()> {
    let n = 2 * v.k() as i64;
    let classes = lattice_classes(v, n);
    if classes.iter().any(|&c| c != r.rem_euclid(n)) {
        return Err(Error::Domain(format!("{what} does not lie in V_(lambda_{r} + L)")));
    }
    Ok(())
}

fn want_u<'a>(v: &'a ModVec, what: &str) -> Result<&'a UVector> {
    match v {
        ModVec::U(x) => Ok(x),
        ModVec::T(_) => Err(Error::Domain(format!("{what} must be an untwisted vector"))),
    }
}

fn want_t<'a>(v: &'a ModVec, what: &str) -> Result<&'a TVector> {
    match v {
        ModVec::T(x) => Ok(x),
        ModVec::U(_) => Err(Error::Domain(format!("{what} must be a twisted vector"))),
    }
}

/// Every mode of the operator applied to `(u, v)`, with output weight at most `cutoff`.
pub fn intertwiner_series(spec: &IntertwinerSpec, u: &UVector, v: &ModVec, cutoff: Q) -> Result<Series> {
    if let Some(w) = v.max_weight() {
        if cutoff < w {
            return Err(Error::Domain(format!("cutoff {cutoff} is below the input weight {w}")));
        }
    }
    let phase = PhaseOp::new(spec.r);
    match spec.kind {
        Kind::Module => {
            require_coset("u", u, 0)?;
            match v {
                ModVec::U(x) => Ok(Series::U(vertex_series_unchecked(u, x, cutoff))),
                ModVec::T(x) => Ok(Series::T(twisted_series(u, x, cutoff)?)),
            }
        }
        Kind::Yrs => {
            require_coset("u", u, spec.r)?;
            let x = want_u(v, "v")?;
            require_coset("v", x, spec.s)?;
            Ok(Series::U(vertex_series_unchecked(u, &phase.apply(x), cutoff)))
        }
        Kind::YrsTheta => {
            require_coset("u", u, spec.r)?;
            let x = want_u(v, "v")?;
            require_coset("v", x, spec.s)?;
            Ok(Series::U(vertex_series_unchecked(u, &phase.apply(&x.theta()), cutoff)))
        }
        Kind::Tilde | Kind::TildeTheta => {
            require_coset("u", u, spec.r)?;
            let x = want_t(v, "v")?;
            let x = if spec.kind == Kind::TildeTheta { x.theta() } else { x.clone() };
            Ok(Series::T(tilde_series(u, &x, cutoff)?))
        }
    }
}

/// `u_m v`: the coefficient of `z^{-m-1}`.
pub fn intertwiner_mode(spec: &IntertwinerSpec, u: &UVector, m: Q, v: &ModVec, cutoff: Q) -> Result<ModVec> {
    let s = intertwiner_series(spec, u, v, cutoff)?;
    let e = -m - Q::one();
    Ok(s.get(e).unwrap_or_else(|| match v {
        ModVec::U(x) => ModVec::U(UVector::zero(x.k())),
        ModVec::T(x) => ModVec::T(TVector::zero(x.k())),
    }))
}

/// The first nonzero coefficient `(exponent, vector)` among terms of output weight
/// at most `wt u + wt v + cutoff`.
pub fn first_nonzero(spec: &IntertwinerSpec, u: &UVector, v: &ModVec, cutoff: Q) -> Result<Option<(Q, ModVec)>> {
    let base = u.max_weight().unwrap_or_else(Q::zero) + v.max_weight().unwrap_or_else(Q::zero);
    let s = intertwiner_series(spec, u, v, base + cutoff)?;
    Ok(s.exponents().first().and_then(|e| s.get(*e).map(|x| (*e, x))))
}

/// True iff some mode of the operator on `(u, v)` is nonzero within the window.
pub fn nonvanishing_witness(spec: &IntertwinerSpec, u: &UVector, v: &ModVec, cutoff: Q) -> Result<bool> {
    Ok(first_nonzero(spec, u, v, cutoff)?.is_some())
}

/// The generating vector of the top level of an irreducible module.
pub fn top_vector(label: ModuleLabel, k: u32) -> ModVec {
    let kk = k as i64;
    match label {
        ModuleLabel::UPlus => ModVec::U(UVector::lattice(k, 0)),
        ModuleLabel::UMinus => ModVec::U(UVector::lattice(k, 0).alpha(-1)),
        ModuleLabel::Lambda(r) => ModVec::U(UVector::lattice(k, r)),
        ModuleLabel::HalfPlus => ModVec::U(UVector::lattice(k, kk).plus(&UVector::lattice(k, -kk))),
        ModuleLabel::HalfMinus => ModVec::U(UVector::lattice(k, kk).minus(&UVector::lattice(k, -kk))),
        ModuleLabel::Tw(i, s) => ModVec::T(twisted_top(k, i, s)),
    }
}

/// Project onto the module `label`: the matching coset or sector, then the theta
/// eigenspace when the label is one.
pub fn project_onto(label: ModuleLabel, v: &ModVec) -> ModVec {
    match v {
        ModVec::U(x) => {
            let k = x.k();
            let n = 2 * k as i64;
            let keep = match label.coset(k) {
                Some(c) => x.filter(|b| {
                    let t = b.r.rem_euclid(n);
                    t == c.rem_euclid(n) || t == (-c).rem_euclid(n)
                }),
                None => UVector::zero(k),
            };
            ModVec::U(match label.sign() {
                Some(s) if !label.is_twisted() => keep.project_eigen(s),
                _ => keep,
            })
        }
        ModVec::T(x) => ModVec::T(match label {
            ModuleLabel::Tw(i, s) => x.filter(|b| b.sector == Sector::from_index(i)).project_eigen(s),
            _ => TVector::zero(x.k()),
        }),
    }
}

/// The explicit construction realizing a type with untwisted first entry, if any.
pub fn construction_for(k: u32, types: [ModuleLabel; 3]) -> Option<IntertwinerSpec> {
    let [w1, w2, w3] = types;
    let n = 2 * k as i64;
    let c1 = w1.coset(k)?;
    let same = |a: i64, b: i64| (a - b).rem_euclid(n) == 0 || (a + b).rem_euclid(n) == 0;
    let spec = match (w2.coset(k), w3.coset(k)) {
        (Some(c2), Some(c3)) => {
            if c1 == 0 && same(c2, c3) {
                IntertwinerSpec::raw(Kind::Module, 0, c2)
            } else if same(c1 + c2, c3) {
                IntertwinerSpec::raw(Kind::Yrs, c1, c2)
            } else if same(c1 - c2, c3) {
                IntertwinerSpec::raw(Kind::YrsTheta, c1, c2)
            } else {
                return None;
            }
        }
        (None, None) => {
            if c1 == 0 {
                IntertwinerSpec::raw(Kind::Module, 0, 0)
            } else {
                IntertwinerSpec::raw(Kind::Tilde, c1, 0)
            }
        }
        _ => return None,
    };
    Some(spec.with_types(types))
}

/// The images of a triple under the fusion-rule symmetries
/// `(W1, W2, W3) -> (W2, W1, W3)` and `(W1, W2, W3) -> (W1, W3', W2')`.
pub fn symmetry_orbit(k: u32, t: [ModuleLabel; 3]) -> Vec<[ModuleLabel; 3]> {
    let mut seen = vec![t];
    let mut i = 0;
    while i < seen.len() {
        let [a, b, c] = seen[i];
        for next in [[b, a, c], [a, c.contragredient(k), b.contragredient(k)]] {
            if !seen.contains(&next) {
                seen.push(next);
            }
        }
        i += 1;
    }
    seen
}

/// Evidence that an explicit operator of a given type is nonzero on top vectors.
#[derive(Debug, Clone)]
pub struct Witness {
    /// The triple the operator was evaluated on (a symmetry image of the query when
    /// the query has a twisted first entry).
    pub evaluated: [ModuleLabel; 3],
    pub spec: IntertwinerSpec,
    /// First nonzero coefficient after projecting onto the third module.
    pub image: Option<(Q, ModVec)>,
}

impl Witness {
    pub fn nonzero(&self) -> bool {
        self.image.is_some()
    }
}

/// Evaluate the explicit construction for a triple (or for the first image under the
/// fusion symmetries that has one) on top vectors, projected onto the third module.
/// `Ok(None)` means no explicit construction applies.
pub fn witness_for_triple(k: u32, types: [ModuleLabel; 3], cutoff: Q) -> Result<Option<Witness>> {
    let types = [types[0].normalize(k)?, types[1].normalize(k)?, types[2].normalize(k)?];
    let Some((evaluated, spec)) = symmetry_orbit(k, types)
        .into_iter()
        .find_map(|t| construction_for(k, t).map(|s| (t, s)))
    else {
        return Ok(None);
    };
    let ModVec::U(u) = top_vector(evaluated[0], k) else {
        unreachable!("constructions have an untwisted first entry")
    };
    let v = top_vector(evaluated[1], k);
    let base = u.max_weight().unwrap_or_else(Q::zero) + v.max_weight().unwrap_or_else(Q::zero);
    // grow the window until something survives the projection
    let mut window = Q::zero();
    let image = loop {
        let s = intertwiner_series(&spec, &u, &v, base + window)?;
        let hit = s
            .exponents()
            .into_iter()
            .find_map(|e| {
                let p = project_onto(evaluated[2], &s.get(e)?);
                (!p.is_zero()).then_some((e, p))
            });
        if hit.is_some() || window >= cutoff {
            break hit;
        }
        window = (window + Q::one()).min(cutoff);
    };
    Ok(Some(Witness { evaluated, spec, image }))
}

/// `y-tilde(n) w = d phi^{-1}(alpha(n) phi(w))` at `d = 1`, on `V_{alpha/2+L}^+[0]`, where
/// `phi` keeps the `e_{alpha/2}` part and `phi^{-1}(x) = x + theta(x)`.
fn h_tilde(n: i64, w: &UVector) -> UVector {
    let k = w.k() as i64;
    let phi = w.filter(|b| b.r == k);
    let x = phi.alpha(n);
    x.plus(&x.theta())
}

/// Outcome of the linear constraint on `d`.
#[derive(Debug, Clone)]
pub struct P31Report {
    /// `[E_{k-1}, h~(0)] (e + e')` at `d = 1`.
    pub lhs_first: UVector,
    /// `[E_k, h~(-1)] (e + e')` at `d = 1`.
    pub lhs_second: UVector,
    /// Both brackets equal the same multiple of `F~(k-1)(e + e')`, so
    /// `d (lhs_second - lhs_first) = 0`; `d` is forced to vanish iff this is nonzero.
    pub forces_zero: bool,
}

/// Build the one-parameter ansatz for an intertwiner of type `(V_L^-, V_{alpha/2+L}^+,
/// V_{alpha/2+L}^+)` and decide whether the commutator relations force `d = 0`.
pub fn p31_report(k: u32, cutoff: Q) -> Result<P31Report> {
    let kk = k as i64;
    let e = crate::untwisted::e_vector(k);
    let v = UVector::lattice(k, kk).plus(&UVector::lattice(k, -kk));
    let cutoff = cutoff.max(Q::new(kk, 4) + Q::one());
    let mode = |m: i64, x: &UVector| -> Result<UVector> {
        crate::untwisted::vertex_mode(&e, Q::from_integer(m), x, cutoff)
    };
    // the ansatz lives on the weight-graded piece [0]; keep only that coset part
    let bracket = |m: i64, n: i64| -> Result<UVector> {
        let a = mode(m, &h_tilde(n, &v))?;
        let ev = mode(m, &v)?;
        let b = if ev.is_zero() { ev } else { h_tilde(n, &ev) };
        Ok(a.minus(&b))
    };
    let first = bracket(kk - 1, 0)?;
    let second = bracket(kk, -1)?;
    let forces_zero = !second.minus(&first).is_zero();
    Ok(P31Report {
        lhs_first: first,
        lhs_second: second,
        forces_zero,
    })
}

/// True iff the relations force the ansatz constant `d` to vanish.
pub fn verify_p31(k: u32, cutoff: Q) -> bool {
    p31_report(k, cutoff).map(|r| r.forces_zero).unwrap_or(false)
}

/// Checks, coefficient by coefficient up to `cutoff`, the commutator form of the
/// Jacobi identity for `Y_{r,s}` against `a` in `V_L^+`:
/// `a_m Y(u, z) v - Y(u, z) a_m v = sum_i binom(m, i) z^{m-i} Y(a_i u, z) v`,
/// for all basis `u` in `V_{lambda_r+L}` and `v` in `V_{lambda_s+L}` of weight at most `input_wt`.
pub fn jacobi_residue_check(k: u32, r: i64, s: i64, a: &UVector, m: i64, input_wt: Q, cutoff: Q) -> bool {
    let Some(wt_a) = a.homogeneous_weight() else {
        return false;
    };
    let n = 2 * k as i64;
    let spec = IntertwinerSpec::raw(Kind::Yrs, r, s);
    let mq = Q::from_integer(m);
    let drop = mq + Q::one() - wt_a;
    let big = cutoff + drop.max(Q::zero());
    let basis: Vec<UBasis> = basis_up_to(k, input_wt);
    let us: Vec<&UBasis> = basis.iter().filter(|b| (b.r - r).rem_euclid(n) == 0).collect();
    let vs: Vec<&UBasis> = basis.iter().filter(|b| (b.r - s).rem_euclid(n) == 0).collect();
    let series = |u: &UVector, v: &UVector, c: Q| -> ZSeries<UBasis> {
        match intertwiner_series(&spec, u, &ModVec::U(v.clone()), c.max(v.max_weight().unwrap_or_else(Q::zero))) {
            Ok(Series::U(x)) => x,
            _ => ZSeries::new(),
        }
    };
    let act = |x: &UVector, c: Q| -> UVector {
        let out = vertex_series_unchecked(a, x, c);
        out.get(&(-mq - Q::one())).cloned().unwrap_or_else(|| UVector::zero(k))
    };
    us.iter().all(|ub| {
        let u = UVector::basis(k, (*ub).clone());
        // a_i u for i >= 0: the coefficients of z^{-i-1}
        let au = vertex_series_unchecked(a, &u, wt_a + u.max_weight().unwrap());
        let au: Vec<(i64, UVector)> = au
            .iter()
            .filter(|(e, _)| e.is_integer() && **e <= -Q::one())
            .map(|(e, x)| (-e.to_integer() - 1, x.clone()))
            .collect();
        vs.iter().all(|vb| {
            let v = UVector::basis(k, (*vb).clone());
            let yv = series(&u, &v, big);
            let av = act(&v, v.max_weight().unwrap() + wt_a);
            let yav = if av.is_zero() { ZSeries::new() } else { series(&u, &av, cutoff) };
            let rhs_parts: Vec<(i64, ZSeries<UBasis>)> = au
                .iter()
                .map(|(i, x)| (*i, series(x, &v, cutoff)))
                .collect();
            let mut exps: BTreeSet<Q> = yv.keys().copied().collect();
            exps.extend(yav.keys().copied());
            for (i, p) in &rhs_parts {
                exps.extend(p.keys().map(|e| *e + mq - Q::from_integer(*i)));
            }
            exps.into_iter().all(|e| {
                let zero = UVector::zero(k);
                let w = yv.get(&e).unwrap_or(&zero);
                let lhs = act(w, big).minus(yav.get(&e).unwrap_or(&zero)).truncate(cutoff);
                let mut rhs = UVector::zero(k);
                for (i, p) in &rhs_parts {
                    if let Some(x) = p.get(&(e - mq + Q::from_integer(*i))) {
                        let c = crate::untwisted::binomial(m, *i as u32);
                        rhs.add_scaled(x, &Scalar::from_rational(c));
                    }
                }
                lhs == rhs.truncate(cutoff)
            })
        })
    })
}
