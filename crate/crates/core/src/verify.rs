//! Named verification suites. Each returns one [`Check`] per item; a suite passes
//! iff no item fails.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{graded_dim, m1_graded_dim, UVector};
use crate::fusion::{
    bound_blind_zeros, decompose, quasi_admissible, upper_bound, FusionTable, UntwistedReading,
};
use crate::intertwiners::{jacobi_residue_check, p31_report, witness_for_triple};
use crate::label::{ModuleLabel, Sign};
use crate::scalar::Q;
use crate::twisted::{
    delta_coeff, psi_map, theta_conjugation_check, twisted_commutator_check, PsiMap,
};
use crate::untwisted::{binomial_q, commutator_check, e_vector, omega, p_coeff, vertex_mode};
use crate::zhu::{contragredient_from_actions, reference_row, zhu_table, HalfJ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skip,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((ok, d)) => Check::new(name, ok, d),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Identities,
    Closure,
    Bounds,
    Decomp,
    Delta,
    Psi,
    P31,
    Jacobi,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Table1,
        Suite::Identities,
        Suite::Closure,
        Suite::Bounds,
        Suite::Decomp,
        Suite::Delta,
        Suite::Psi,
        Suite::P31,
        Suite::Jacobi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Identities => "identities",
            Suite::Closure => "closure",
            Suite::Bounds => "bounds",
            Suite::Decomp => "decomp",
            Suite::Delta => "delta",
            Suite::Psi => "psi",
            Suite::P31 => "p31",
            Suite::Jacobi => "jacobi",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite `{s}`")))
    }
}

/// Parameters shared by the suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub k: u32,
    pub cutoff: Q,
    pub order: usize,
    /// Seed for the randomized items.
    pub seed: u64,
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Vec<Check> {
    match suite {
        Suite::Table1 => table1(cfg.k),
        Suite::Identities => identities(cfg.k),
        Suite::Closure => closure(cfg.k),
        Suite::Bounds => bounds(cfg.k),
        Suite::Decomp => decomp(cfg.k, Q::from_integer(10)),
        Suite::Delta => delta(cfg.order),
        Suite::Psi => psi(cfg.k),
        Suite::P31 => p31(cfg.k, cfg.cutoff),
        Suite::Jacobi => jacobi(cfg.k, cfg.cutoff, cfg.seed),
    }
}

/// Computed top-level actions against the published table.
pub fn table1(k: u32) -> Vec<Check> {
    let rows = match zhu_table(k) {
        Ok(r) => r,
        Err(e) => return vec![Check::new("zhu table", false, format!("error: {e}"))],
    };
    let mut out = Vec::new();
    for row in &rows {
        let name = format!("{} (omega, J, E)", row.label);
        let Some(got) = &row.values else {
            out.push(Check::skip(name, "top level is two-dimensional; no scalar action"));
            continue;
        };
        let want = match reference_row(row.label, k, HalfJ::Corrected) {
            Ok(w) => w,
            Err(e) => {
                out.push(Check::new(name, false, format!("error: {e}")));
                continue;
            }
        };
        let mut detail = format!("{}, {}, {}", got[0], got[1], got[2]);
        if let Ok(printed) = reference_row(row.label, k, HalfJ::Printed) {
            if printed[1] != want[1] {
                detail.push_str(&format!("; printed J entry {} disagrees, matches k^2/4 - k/4", printed[1]));
            }
        }
        out.push(Check::new(name, *got == want, detail));
    }
    for row in &rows {
        let dual = row.label.contragredient(k);
        let found = contragredient_from_actions(row.label, k, &rows);
        let name = format!("contragredient of {}", row.label);
        match found {
            Some(d) => out.push(Check::new(name, d == dual, format!("{d}"))),
            None if row.values.is_none() => out.push(Check::skip(name, "no scalar actions")),
            None => out.push(Check::new(name, false, "no unique match among the computed rows")),
        }
    }
    out
}

fn half_lattice(k: u32) -> (UVector, UVector) {
    let kk = k as i64;
    let (p, m) = (UVector::lattice(k, kk), UVector::lattice(k, -kk));
    (p.plus(&m), p.alpha(-1).minus(&m.alpha(-1)))
}

/// The identities used in the vanishing argument on `V_{alpha/2+L}`.
pub fn identities(k: u32) -> Vec<Check> {
    let kk = k as i64;
    let e = e_vector(k);
    let (v, w) = half_lattice(k);
    let top = Q::new(kk, 4);
    let mut out = Vec::new();
    out.push(Check::from_result(
        "E_{k-1}(e_{a/2} + e_{-a/2}) = e_{a/2} + e_{-a/2}",
        vertex_mode(&e, Q::from_integer(kk - 1), &v, top).map(|x| (x == v, x.to_string())),
    ));
    out.push(Check::from_result(
        "E_k(a(-1)e_{a/2} - a(-1)e_{-a/2}) = 2k (e_{a/2} + e_{-a/2})",
        vertex_mode(&e, Q::from_integer(kk), &w, top + Q::one())
            .map(|x| (x == v.scale_q(Q::from_integer(2 * kk)), x.to_string())),
    ));
    let expect = p_coeff(Sign::Plus, (kk - 1) as u32, &UVector::lattice(k, kk))
        .plus(&p_coeff(Sign::Minus, (kk - 1) as u32, &UVector::lattice(k, -kk)));
    out.push(Check::from_result(
        "E_0(e_{a/2} + e_{-a/2}) = p_{k-1}(a)e_{a/2} + p_{k-1}(-a)e_{-a/2}",
        vertex_mode(&e, Q::zero(), &v, top + Q::from_integer(kk - 1)).map(|x| (x == expect, x.to_string())),
    ));
    out
}

/// Closure of the generating tables, the symmetries and the structural properties.
pub fn closure(k: u32) -> Vec<Check> {
    let table = match FusionTable::build(k) {
        Ok(t) => t,
        Err(e) => return vec![Check::new("closure", false, e.to_string())],
    };
    let n = table.labels().len();
    let mut out = vec![Check::new(
        "closure is consistent and equals the transcribed theorem",
        true,
        format!("{} triples", n * n * n),
    )];
    let f = |a, b, c| table.fusion(a, b, c).unwrap();
    let mut sym_bad = Vec::new();
    let mut id_bad = Vec::new();
    let mut parity_bad = Vec::new();
    let mut qa_bad = Vec::new();
    for (t, v) in table.entries() {
        let [a, b, c] = t;
        if f(b, a, c) != v || f(a, c.contragredient(k), b.contragredient(k)) != v {
            sym_bad.push(t);
        }
        if a == ModuleLabel::UPlus && v != (b == c) as u8 {
            id_bad.push(t);
        }
        let twisted = t.iter().filter(|x| x.is_twisted()).count();
        if (twisted == 1 || twisted == 3) && v != 0 {
            parity_bad.push(t);
        }
        if let (ModuleLabel::Lambda(r), ModuleLabel::Tw(i, _), ModuleLabel::Tw(j, _)) = (a, b, c) {
            if v == 1 && !quasi_admissible(r, i, j) {
                qa_bad.push(t);
            }
        }
    }
    let show = |bad: &[[ModuleLabel; 3]]| match bad.first() {
        None => "ok".to_string(),
        Some([a, b, c]) => format!("{} offending, first ({a}, {b}, {c})", bad.len()),
    };
    out.push(Check::new("symmetries N(1,2,3) = N(2,1,3) = N(1,3',2')", sym_bad.is_empty(), show(&sym_bad)));
    out.push(Check::new("identity row N(V+, W, X) = [W = X]", id_bad.is_empty(), show(&id_bad)));
    out.push(Check::new("one or three twisted entries give 0", parity_bad.is_empty(), show(&parity_bad)));
    out.push(Check::new("nonzero (Vl_r, VT_i, VT_j) are quasi-admissible", qa_bad.is_empty(), show(&qa_bad)));
    if k >= 2 {
        let literal = FusionTable::closure(k, UntwistedReading::Literal);
        out.push(Check::new(
            "printed pair (V+-, V+-) in the untwisted table is inconsistent",
            literal.is_err(),
            match literal {
                Err(e) => e.to_string(),
                Ok(_) => "closure unexpectedly consistent".into(),
            },
        ));
    }
    out
}

/// `fusion <= upper_bound`, and the zeros the bound cannot see.
pub fn bounds(k: u32) -> Vec<Check> {
    let table = match FusionTable::build(k) {
        Ok(t) => t,
        Err(e) => return vec![Check::new("build", false, e.to_string())],
    };
    let entries: Vec<_> = table.entries().collect();
    let results: Vec<Result<([ModuleLabel; 3], u8, u32)>> = entries
        .par_iter()
        .map(|(t, v)| Ok((*t, *v, upper_bound(t[0], t[1], t[2], k)?)))
        .collect();
    let mut unsound = Vec::new();
    for r in &results {
        match r {
            Ok((t, v, b)) if (*v as u32) > *b => unsound.push(*t),
            Ok(_) => {}
            Err(e) => return vec![Check::new("bound", false, e.to_string())],
        }
    }
    let mut out = vec![Check::new(
        "fusion <= upper bound on every triple",
        unsound.is_empty(),
        format!("{} triples, {} violations", entries.len(), unsound.len()),
    )];
    for s in [Sign::Plus, Sign::Minus] {
        let h = if s == Sign::Plus { ModuleLabel::HalfPlus } else { ModuleLabel::HalfMinus };
        let v = table.fusion(ModuleLabel::UMinus, h, h).unwrap();
        let b = upper_bound(ModuleLabel::UMinus, h, h, k).unwrap_or(0);
        out.push(Check::new(
            format!("(V-, {h}, {h}) is a zero the bound misses"),
            v == 0 && b >= 1,
            format!("fusion {v}, bound {b}"),
        ));
    }
    if let Ok(z) = bound_blind_zeros(&table) {
        out.push(Check::new("bound-blind zeros in the whole table", true, format!("{}", z.len())));
    }
    out
}

/// Characters: each graded piece against the sum over the `M(1)^+`-summands.
pub fn decomp(k: u32, extra: Q) -> Vec<Check> {
    ModuleLabel::all(k)
        .into_par_iter()
        .map(|label| {
            let top = label.top_weight(k);
            let end = top + extra;
            let window = (end / Q::from_integer(k as i64)).ceil().to_integer() + 2;
            let parts = match decompose(label, k, window) {
                Ok(p) => p,
                Err(e) => return Check::new(label.to_string(), false, e.to_string()),
            };
            let mut w = top;
            let mut bad = None;
            let mut count = 0;
            while w <= end {
                let lhs = graded_dim(label, k, w).unwrap_or(u64::MAX);
                let rhs: u64 = parts.iter().map(|c| m1_graded_dim(c.module, k, w)).sum();
                if lhs != rhs && bad.is_none() {
                    bad = Some(format!("weight {w}: {lhs} vs {rhs}"));
                }
                count += 1;
                w += Q::one();
            }
            Check::new(
                format!("{label} graded dimensions"),
                bad.is_none(),
                bad.unwrap_or_else(|| format!("{count} weights from {top}")),
            )
        })
        .collect()
}

/// `c_mn` from the log-derivative recursion `h x g_x = -x h_x` with
/// `h = ((1+x)^(1/2) + (1+y)^(1/2)) / 2` and `g = -log h`.
pub fn delta_oracle(order: usize) -> Vec<Vec<BigRational>> {
    let h = |m: usize, n: usize| -> BigRational {
        match (m, n) {
            (0, 0) => BigRational::one(),
            (m, 0) => binomial_q(Q::new(1, 2), m as u32) / BigRational::from_integer(BigInt::from(2)),
            (0, n) => binomial_q(Q::new(1, 2), n as u32) / BigRational::from_integer(BigInt::from(2)),
            _ => BigRational::zero(),
        }
    };
    let mut c = vec![vec![BigRational::zero(); order + 1]; order + 1];
    for total in 1..=order {
        for m in 0..=total {
            let n = total - m;
            // use the x-derivative when m > 0, otherwise the y-derivative
            let use_x = m > 0;
            let deg = BigRational::from_integer(BigInt::from(if use_x { m } else { n }));
            let mut acc = -(&deg * h(m, n));
            for a in 0..=m {
                for b in 0..=n {
                    if (a, b) == (m, n) {
                        continue;
                    }
                    let hh = h(m - a, n - b);
                    if hh.is_zero() || c[a][b].is_zero() {
                        continue;
                    }
                    acc -= hh * BigRational::from_integer(BigInt::from(if use_x { a } else { b })) * &c[a][b];
                }
            }
            c[m][n] = acc / deg;
        }
    }
    c
}

pub fn delta(order: usize) -> Vec<Check> {
    let oracle = delta_oracle(order);
    let mut bad = Vec::new();
    for m in 0..=order {
        for n in 0..=(order - m) {
            let got = delta_coeff(m, n);
            if got != oracle[m][n] || got != delta_coeff(n, m) {
                bad.push(format!("c_{m}{n} = {got} vs {}", oracle[m][n]));
            }
        }
    }
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    vec![
        Check::new(
            format!("c_mn against the recursion oracle, m + n <= {order}"),
            bad.is_empty(),
            bad.first().cloned().unwrap_or_else(|| "all equal and symmetric".into()),
        ),
        Check::new("c_00 = 0", delta_coeff(0, 0).is_zero() && oracle[0][0].is_zero(), delta_coeff(0, 0).to_string()),
        Check::new(
            "c_01 = c_10 = -1/4",
            delta_coeff(0, 1) == q(-1, 4) && delta_coeff(1, 0) == q(-1, 4) && oracle[1][0] == q(-1, 4),
            delta_coeff(1, 0).to_string(),
        ),
        Check::new("c_11 = 1/16", delta_coeff(1, 1) == q(1, 16) && oracle[1][1] == q(1, 16), delta_coeff(1, 1).to_string()),
    ]
}

/// The relations among `e_beta` and `psi_lambda` on `T`.
pub fn psi(k: u32) -> Vec<Check> {
    let kk = k as i64;
    let n = 2 * kk;
    let mut bad = Vec::new();
    let mut count = 0;
    for j in -3..=3i64 {
        let e = PsiMap::e_alpha_pow(j);
        for r in -6 * kk..=6 * kk {
            let p = psi_map(k, r);
            let sign = if (j * r).rem_euclid(2) == 0 { 1 } else { -1 };
            let a = e.compose(&p);
            let b = p.compose(&e).scale(sign);
            let c = psi_map(k, r + n * j);
            count += 1;
            if a != b || a != c {
                bad.push(format!("beta = {j} alpha, r = {r}"));
            }
        }
    }
    let mut even_ok = true;
    let mut half_ok = true;
    for m in -3..=3i64 {
        even_ok &= psi_map(k, -n * m) == psi_map(k, n * m);
        let r = kk + n * m;
        half_ok &= psi_map(k, -r) == PsiMap::e_alpha_pow(-1).compose(&psi_map(k, r));
    }
    vec![
        Check::new(
            "e_beta psi_l = (-1)^<beta,l> psi_l e_beta = psi_(l+beta)",
            bad.is_empty(),
            bad.first().cloned().unwrap_or_else(|| format!("{count} cases")),
        ),
        Check::new("psi_(-m alpha) = psi_(m alpha)", even_ok, "|m| <= 3"),
        Check::new("psi_(-(alpha/2 + m alpha)) = e_(-alpha) psi_(alpha/2 + m alpha)", half_ok, "|m| <= 3"),
        Check::new("psi_0 = id", psi_map(k, 0) == PsiMap::identity(), ""),
        Check::new("psi_alpha = diag(1, -1)", psi_map(k, n).matrix() == [[1, 0], [0, -1]], ""),
    ]
}

pub fn p31(k: u32, cutoff: Q) -> Vec<Check> {
    vec![Check::from_result(
        "the relations force d = 0 for (V-, Va+, Va+)",
        p31_report(k, cutoff).map(|r| {
            (
                r.forces_zero,
                format!("[E_(k-1), h~(0)] = {}; [E_k, h~(-1)] = {}", r.lhs_first, r.lhs_second),
            )
        }),
    )]
}

type Job = Box<dyn Fn() -> bool + Send + Sync>;

/// Commutator and conjugation identities, mode by mode up to `cutoff`.
pub fn jacobi(k: u32, cutoff: Q, seed: u64) -> Vec<Check> {
    let kk = k as i64;
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for beta in [0, 2 * kk, -2 * kk, 1] {
        let u = UVector::lattice(k, beta);
        jobs.push((
            format!("[a(m), Y(e[{beta}], z)] = {beta} z^m Y(e[{beta}], z), |m| <= 2"),
            Box::new(move || (-2..=2).all(|m| commutator_check(m, &u, cutoff))),
        ));
    }
    for r in [-2, -1, 1, 2 * kk] {
        let u = UVector::lattice(k, r);
        jobs.push((
            format!("[a(m), Y^theta(e[{r}], z)] = {r} z^m Y^theta(e[{r}], z), |m| <= 3/2"),
            Box::new(move || [-3, -1, 1, 3].into_iter().all(|m2| twisted_commutator_check(m2, &u, cutoff))),
        ));
    }
    for (name, u) in [
        ("e[1]", UVector::lattice(k, 1)),
        ("omega", omega(k)),
        ("a(-1)e[2k]", UVector::lattice(k, 2 * kk).alpha(-1)),
    ] {
        jobs.push((
            format!("theta Y^theta({name}, z) theta = Y^theta(theta {name}, z)"),
            Box::new(move || theta_conjugation_check(&u, cutoff)),
        ));
    }
    for (r, s) in [(1, 1), (1, 2), (2, 3)] {
        for (name, a) in [("omega", omega(k)), ("E", e_vector(k))] {
            jobs.push((
                format!("Jacobi residue for Y_({r},{s}) against {name}, m = 0..2"),
                Box::new(move || (0..=2).all(|m| jacobi_residue_check(k, r, s, &a, m, Q::one(), cutoff))),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<(i64, i64)> = (0..4)
        .map(|_| (rng.gen_range(-4 * kk..=4 * kk), rng.gen_range(-3..=3)))
        .collect();
    jobs.push((
        format!("random commutators (lattice point, mode) {sample:?}, seed {seed}"),
        Box::new(move || {
            sample.iter().all(|&(beta, m)| {
                let u = UVector::lattice(k, beta);
                commutator_check(m, &u, cutoff) && twisted_commutator_check(2 * m + 1, &u, cutoff)
            })
        }),
    ));
    jobs.into_par_iter()
        .map(|(name, f)| {
            let ok = f();
            Check::new(name, ok, format!("cutoff {cutoff}"))
        })
        .collect()
}

/// Nonvanishing of the explicit constructions for every triple with value 1, and
/// vanishing after projection for every triple with value 0 they apply to.
pub fn witnesses(k: u32, cutoff: Q) -> Vec<Check> {
    let table = match FusionTable::build(k) {
        Ok(t) => t,
        Err(e) => return vec![Check::new("build", false, e.to_string())],
    };
    let entries: Vec<_> = table.entries().collect();
    let results: Vec<_> = entries
        .par_iter()
        .map(|(t, v)| (*t, *v, witness_for_triple(k, *t, cutoff)))
        .collect();
    let mut ones = (0, 0, Vec::new());
    let mut zeros = (0, 0, Vec::new());
    for (t, v, w) in results {
        let name = format!("({}, {}, {})", t[0], t[1], t[2]);
        match (v, w) {
            (_, Err(e)) => return vec![Check::new(name, false, e.to_string())],
            (1, Ok(Some(w))) if w.nonzero() => ones.0 += 1,
            (1, Ok(Some(_))) => ones.2.push(name),
            (1, Ok(None)) => ones.1 += 1,
            (_, Ok(Some(w))) if w.nonzero() => zeros.2.push(name),
            (_, Ok(Some(_))) => zeros.0 += 1,
            (_, Ok(None)) => zeros.1 += 1,
        }
    }
    vec![
        Check::new(
            "value 1: explicit operator nonzero on top vectors",
            ones.2.is_empty() && ones.1 == 0,
            format!("{} nonzero, {} vanishing {:?}, {} uncovered", ones.0, ones.2.len(), ones.2, ones.1),
        ),
        Check::new(
            "value 0: projected operator vanishes on top vectors",
            zeros.2.is_empty(),
            format!("{} vanish, {} do not {:?}, {} uncovered", zeros.0, zeros.2.len(), zeros.2, zeros.1),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_for_small_k() {
        for k in 1..=2u32 {
            let cfg = SuiteConfig { k, cutoff: Q::from_integer(3), order: 8, seed: 0 };
            for s in Suite::ALL {
                let r = run(s, &cfg);
                assert!(!r.is_empty());
                let bad: Vec<_> = r.iter().filter(|c| c.status == Status::Fail).collect();
                assert!(bad.is_empty(), "k={k} {}: {bad:?}", s.name());
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Usage(_))));
    }

    #[test]
    fn oracle_low_order() {
        let c = delta_oracle(3);
        let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(c[1][0], q(-1, 4));
        assert_eq!(c[2][0], q(3, 32));
        assert_eq!(c[1][1], q(1, 16));
    }

    #[test]
    fn table1_flags_printed_j_entry() {
        let r = table1(3);
        assert!(r.iter().any(|c| c.detail.contains("printed J entry")));
    }
}
