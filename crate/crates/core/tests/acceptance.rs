//! Acceptance run: one PASS/FAIL line per criterion, then a nonzero exit if any failed.
//! Built with `harness = false` so the lines always reach the test log.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use orbifold_voa::fusion::{upper_bound, FusionTable};
use orbifold_voa::intertwiners::{verify_p31, witness_for_triple};
use orbifold_voa::twisted::delta_coeff;
use orbifold_voa::verify::{self, all_passed, Check, Status};
use orbifold_voa::zhu::zhu_table;
use orbifold_voa::{ModuleLabel, Scalar, Sign, Q};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn first_failure(checks: &[Check]) -> String {
    checks
        .iter()
        .find(|c| c.status == Status::Fail)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .unwrap_or_default()
}

fn suite_over(ks: &[u32], f: impl Fn(u32) -> Vec<Check>) -> Outcome {
    let mut items = 0;
    for &k in ks {
        let r = f(k);
        items += r.len();
        if !all_passed(&r) {
            return outcome(false, format!("k = {k}: {}", first_failure(&r)));
        }
    }
    outcome(true, format!("{items} items over k = {ks:?}"))
}

/// Hand transcription of the published table, J entry of the half-lattice rows
/// corrected to k^2/4 - k/4.
fn expected_row(label: ModuleLabel, k: u32) -> [Scalar; 3] {
    let kk = k as i64;
    let s = |n: i64, d: i64| Scalar::from_q(Q::new(n, d));
    let two = |e: i64, c: i64| Scalar::two_pow(k, Q::from_integer(e)).unwrap().scale_q(Q::from_integer(c));
    match label {
        ModuleLabel::UPlus => [s(0, 1), s(0, 1), s(0, 1)],
        ModuleLabel::UMinus => [s(1, 1), s(-6, 1), s(0, 1)],
        ModuleLabel::Lambda(r) => [
            s(r * r, 4 * kk),
            Scalar::from_q(Q::new(r.pow(4), 4 * kk * kk) - Q::new(r * r, 4 * kk)),
            s(0, 1),
        ],
        ModuleLabel::HalfPlus => [s(kk, 4), s(kk * kk - kk, 4), s(1, 1)],
        ModuleLabel::HalfMinus => [s(kk, 4), s(kk * kk - kk, 4), s(-1, 1)],
        ModuleLabel::Tw(1, Sign::Plus) => [s(1, 16), s(3, 128), two(1 - 2 * kk, 1)],
        ModuleLabel::Tw(2, Sign::Plus) => [s(1, 16), s(3, 128), two(1 - 2 * kk, -1)],
        ModuleLabel::Tw(1, Sign::Minus) => [s(9, 16), s(-45, 128), two(1 - 2 * kk, -(4 * kk - 1))],
        ModuleLabel::Tw(_, _) => [s(9, 16), s(-45, 128), two(1 - 2 * kk, 4 * kk - 1)],
    }
}

fn criterion_table(flags: &mut Vec<String>) -> Outcome {
    let mut n = 0;
    for k in 2..=4u32 {
        let rows = match zhu_table(k) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("k = {k}: {e}")),
        };
        for row in rows {
            let Some(got) = row.values else {
                return outcome(false, format!("k = {k}: {} has no scalar action", row.label));
            };
            let want = expected_row(row.label, k);
            if got != want {
                return outcome(false, format!("k = {k} {}: got {:?}", row.label, got.map(|x| x.to_string())));
            }
            n += 1;
        }
        let printed = Q::new((k as i64).pow(4) - (k as i64).pow(2), 4);
        let computed = Q::new((k * k - k) as i64, 4);
        flags.push(format!(
            "Va+- J entry at k = {k}: printed k^4/4 - k^2/4 = {printed}, computed k^2/4 - k/4 = {computed}"
        ));
    }
    outcome(true, format!("{n} rows over k = 2..4"))
}

/// `c_mn` of `-log h` with `h = ((1+x)^(1/2) + (1+y)^(1/2)) / 2`, homogeneous part by
/// homogeneous part from the Euler operator: `N g_N = -(N h_N + sum_{0<j<N} j g_j h_{N-j})`.
fn delta_reference(order: usize) -> Vec<Vec<BigRational>> {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    // h_n0 = h_0n = binom(1/2, n) / 2
    let mut half_binom = vec![BigRational::one()];
    for n in 1..=order {
        let prev = half_binom[n - 1].clone();
        half_binom.push(prev * r(1 - 2 * (n as i64 - 1), 2 * n as i64));
    }
    let h = |m: usize, n: usize| -> BigRational {
        match (m, n) {
            (0, 0) => BigRational::one(),
            (m, 0) => &half_binom[m] / r(2, 1),
            (0, n) => &half_binom[n] / r(2, 1),
            _ => BigRational::zero(),
        }
    };
    let mut g = vec![vec![BigRational::zero(); order + 1]; order + 1];
    for total in 1..=order {
        for m in 0..=total {
            let n = total - m;
            let mut acc = r(total as i64, 1) * h(m, n);
            for a in 0..=m {
                for b in 0..=n {
                    let j = a + b;
                    if j == 0 || j == total {
                        continue;
                    }
                    acc += r(j as i64, 1) * &g[a][b] * h(m - a, n - b);
                }
            }
            g[m][n] = -acc / r(total as i64, 1);
        }
    }
    g
}

fn criterion_delta() -> Outcome {
    let order = 8;
    let reference = delta_reference(order);
    for m in 0..=order {
        for n in 0..=(order - m) {
            if delta_coeff(m, n) != reference[m][n] {
                return outcome(false, format!("c_{m}{n} = {} vs {}", delta_coeff(m, n), reference[m][n]));
            }
        }
    }
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let spot = reference[0][0].is_zero()
        && reference[0][1] == q(-1, 4)
        && reference[1][0] == q(-1, 4)
        && reference[1][1] == q(1, 16);
    outcome(spot, "m + n <= 8; c00 = 0, c01 = c10 = -1/4, c11 = 1/16")
}

fn criterion_bounds() -> Outcome {
    let r = suite_over(&[1, 2, 3, 4], verify::bounds);
    if !r.ok {
        return r;
    }
    let mut blind = 0;
    for k in 1..=4u32 {
        let table = FusionTable::build(k).unwrap();
        for h in [ModuleLabel::HalfPlus, ModuleLabel::HalfMinus] {
            for g in [ModuleLabel::HalfPlus, ModuleLabel::HalfMinus] {
                let t = [ModuleLabel::UMinus, h, g];
                let v = table.fusion(t[0], t[1], t[2]).unwrap();
                let b = upper_bound(t[0], t[1], t[2], k).unwrap();
                if v == 0 {
                    if b == 0 {
                        return outcome(false, format!("k = {k}: (V-, {h}, {g}) has bound 0"));
                    }
                    blind += 1;
                }
            }
        }
    }
    outcome(
        blind == 8,
        format!("{}; (V-, Va+-, Va+-) zeros with bound >= 1: {blind} (two per k)", r.detail),
    )
}

fn criterion_witnesses() -> Outcome {
    let k = 2;
    let table = FusionTable::build(k).unwrap();
    let cutoff = Q::from_integer(6);
    let (mut covered, mut uncovered) = (0, 0);
    for (t, v) in table.entries() {
        if v != 1 {
            continue;
        }
        match witness_for_triple(k, t, cutoff) {
            Ok(Some(w)) if w.nonzero() => covered += 1,
            Ok(Some(w)) => {
                return outcome(false, format!("({}, {}, {}) via {} vanishes", t[0], t[1], t[2], w.spec.name()))
            }
            Ok(None) => uncovered += 1,
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(true, format!("{covered} nonzero, {uncovered} without a construction"))
}

type Criterion = Box<dyn FnOnce(&mut Vec<String>) -> Outcome>;

fn main() {
    let start = Instant::now();
    let mut flags = Vec::new();
    let cutoff4 = Q::from_integer(4);
    let mut criteria: Vec<(&str, Criterion)> = vec![
        ("1 top-level action table", Box::new(criterion_table)),
        ("2 identity suite", Box::new(|_| suite_over(&[1, 2, 3, 4], verify::identities))),
        (
            "3 relations force d = 0",
            Box::new(|_| {
                let bad: Vec<u32> = (1..=3).filter(|&k| !verify_p31(k, Q::from_integer(k as i64))).collect();
                outcome(bad.is_empty(), format!("k = 1..3, failing {bad:?}"))
            }),
        ),
        ("4 delta coefficients", Box::new(|_| criterion_delta())),
        ("5 psi relations", Box::new(|_| suite_over(&[1, 2, 3, 4], verify::psi))),
        ("6 fusion closure", Box::new(|_| suite_over(&[1, 2, 3, 4, 5, 6], verify::closure))),
        ("7 bound soundness", Box::new(|_| criterion_bounds())),
        (
            "8 decomposition characters",
            Box::new(|_| suite_over(&[1, 2, 3], |k| verify::decomp(k, Q::from_integer(10)))),
        ),
        ("9 nonvanishing witnesses", Box::new(|_| criterion_witnesses())),
        (
            "10 commutator and conjugation identities",
            Box::new(move |_| suite_over(&[1, 2], |k| verify::jacobi(k, cutoff4, 0))),
        ),
    ];
    let mut failed = 0;
    for (name, f) in criteria.drain(..) {
        let t = Instant::now();
        let o = f(&mut flags);
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} ({:.1?})",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed()
        );
    }
    for f in &flags {
        println!("FLAG {f}");
    }
    println!("acceptance: {} of 10 passed in {:.1?}", 10 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
