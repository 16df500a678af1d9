//! The untwisted vertex operator `Y°(u, z)` on `V_{L°}`, evaluated mode by mode
//! up to a weight cutoff.
//!
//! Convention: a series `Y(u, z) v = sum_e c_e z^e` is stored as a map from the
//! exponent `e` to `c_e`; the mode `u_m` is the coefficient of `z^{-m-1}`, so for
//! homogeneous `u`, `v` the term at `z^e` has weight `wt u + wt v + e`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{Basis, Partition, UBasis, UVector, Vector};
use crate::label::Sign;
use crate::scalar::{q_to_big, Scalar, Q};

/// Laurent polynomial in `z` with vector coefficients, keyed by exponent.
pub type ZSeries<B> = BTreeMap<Q, Vector<B>>;

pub(crate) fn series_add<B: Basis>(s: &mut ZSeries<B>, e: Q, v: &Vector<B>, c: &Scalar) {
    if v.is_zero() || c.is_zero() {
        return;
    }
    let k = v.k();
    let slot = s.entry(e).or_insert_with(|| Vector::zero(k));
    slot.add_scaled(v, c);
    if slot.is_zero() {
        s.remove(&e);
    }
}

pub(crate) fn series_merge<B: Basis>(into: &mut ZSeries<B>, from: &ZSeries<B>, c: &Scalar) {
    for (e, v) in from {
        series_add(into, *e, v, c);
    }
}

/// Generalized binomial coefficient `binom(n, j)` for any integer `n`.
pub fn binomial(n: i64, j: u32) -> BigRational {
    binomial_q(Q::from_integer(n), j)
}

/// `binom(a, j) = a (a-1) ... (a-j+1) / j!` for rational `a`.
pub fn binomial_q(a: Q, j: u32) -> BigRational {
    let a = q_to_big(a);
    let mut out = BigRational::one();
    for i in 0..j as i64 {
        out *= &a - int(i);
        out /= int(i + 1);
    }
    out
}

/// Coefficients of `exp(sum_j x_j z^j / j)`: for each total degree, the list of
/// monomials `x_{mu_1}...x_{mu_l}` (as descending part lists) with coefficients.
///
/// `doubled = false` sums over `j = 1, 2, ...`; `doubled = true` over
/// `j = 1/2, 3/2, ...`, with parts and degrees recorded doubled.
/// Built by the recursion `N P_N = sum_j x_j P_{N-j}`.
pub(crate) fn exp_coeffs(doubled: bool, degree: u32) -> Arc<HashMap<Vec<u32>, BigRational>> {
    type Table = HashMap<(bool, u32), Arc<HashMap<Vec<u32>, BigRational>>>;
    static CACHE: OnceLock<Mutex<Table>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(doubled, degree)) {
        return t.clone();
    }
    let built = if degree == 0 {
        HashMap::from([(Vec::new(), BigRational::one())])
    } else {
        // P_D = (unit / D) sum_j x_j P_{D-j}, unit = 2 for doubled degrees
        let unit = if doubled { 2 } else { 1 };
        let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::new();
        let step = if doubled { 2 } else { 1 };
        let mut j = 1;
        while j <= degree {
            let prev = exp_coeffs(doubled, degree - j);
            for (mono, c) in prev.iter() {
                let mut m = mono.clone();
                let pos = m.iter().position(|&p| p < j).unwrap_or(m.len());
                m.insert(pos, j);
                *acc.entry(m).or_insert_with(BigRational::zero) +=
                    c * BigRational::new(BigInt::from(unit), BigInt::from(degree));
            }
            j += step;
        }
        acc
    };
    let built = Arc::new(built);
    cache
        .lock()
        .unwrap()
        .entry((doubled, degree))
        .or_insert(built)
        .clone()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p_n(beta) v` for `beta = sign * alpha`, where
/// `exp(sum_{j>0} beta(-j) z^j / j) = sum_n p_n(beta) z^n`.
pub fn p_coeff(sign: Sign, n: u32, v: &UVector) -> UVector {
    let table = exp_coeffs(false, n);
    let mut out = UVector::zero(v.k());
    let mut monos: Vec<_> = table.iter().collect();
    monos.sort();
    for (mono, c) in monos {
        let mut w = v.clone();
        for &j in mono {
            w = w.alpha(-(j as i64));
        }
        let sign_factor = if sign == Sign::Minus && mono.len() % 2 == 1 { -1 } else { 1 };
        out.add_scaled(&w, &Scalar::from_rational(c * int(sign_factor)));
    }
    out
}

/// Apply `exp(-sum_j lambda(j) z^-j / j)` with `lambda = x alpha` to one basis
/// element, by enumerating sub-multisets of its modes.
fn apply_eplus(k: u32, x: &BigRational, b: &UBasis, e: Q, out: &mut ZSeries<UBasis>, coeff: &Scalar) {
    let parts = b.parts.parts();
    // distinct parts with multiplicities
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &p in parts {
        match groups.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut choice = vec![0u32; groups.len()];
    loop {
        // monomial alpha(mu) for the chosen multiplicities
        let mut mono = Vec::new();
        let mut factor = BigRational::one();
        let mut rest = Vec::new();
        for ((p, m), &c) in groups.iter().zip(&choice) {
            for i in 0..c {
                mono.push(*p);
                // alpha(p) on alpha(-p)^(m - i): contraction 2k p (m - i)
                factor *= int(2 * k as i64 * *p as i64 * (*m - i) as i64);
            }
            for _ in c..*m {
                rest.push(*p);
            }
        }
        let degree: u32 = mono.iter().sum();
        if mono.is_empty() || !x.is_zero() {
            let table = exp_coeffs(false, degree);
            let c = table.get(&mono).cloned().unwrap_or_else(BigRational::zero);
            let neg_x = -x.clone();
            let mut xpow = BigRational::one();
            for _ in 0..mono.len() {
                xpow *= &neg_x;
            }
            let total = c * xpow * factor;
            if !total.is_zero() {
                let v = UVector::basis(k, UBasis::new(Partition::new(rest), b.r));
                series_add(out, e - Q::from_integer(degree as i64), &v, &coeff.scale(&total));
            }
        }
        // next choice
        let mut i = 0;
        loop {
            if i == groups.len() {
                return;
            }
            if choice[i] < groups[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Multiply by `exp(sum_j lambda(-j) z^j / j)`, `lambda = x alpha`, dropping
/// terms above `cutoff`.
pub(crate) fn apply_eminus_u(x: &BigRational, s: &ZSeries<UBasis>, cutoff: Q) -> ZSeries<UBasis> {
    if x.is_zero() {
        return s.clone();
    }
    let mut out = ZSeries::new();
    for (e, v) in s {
        let Some(wmin) = v.min_weight() else { continue };
        let room = cutoff - wmin;
        if room < Q::zero() {
            continue;
        }
        let max_n = room.floor().to_integer() as u32;
        for n in 0..=max_n {
            let table = exp_coeffs(false, n);
            let mut monos: Vec<_> = table.iter().collect();
            monos.sort();
            for (mono, c) in monos {
                let mut w = v.clone();
                for &j in mono {
                    w = w.alpha(-(j as i64));
                }
                let mut xpow = BigRational::one();
                for _ in 0..mono.len() {
                    xpow *= x;
                }
                let w = w.truncate(cutoff);
                series_add(&mut out, *e + Q::from_integer(n as i64), &w, &Scalar::from_rational(c * xpow));
            }
        }
    }
    out
}

/// `partial^{(n-1)} alpha(z)`, annihilation half: `sum_{j>=0} binom(-j-1, n-1) alpha(j) z^{-j-n}`.
fn apply_annihilation_field(n: u32, s: &ZSeries<UBasis>) -> ZSeries<UBasis> {
    let mut out = ZSeries::new();
    for (e, v) in s {
        let max_part = v.terms().map(|(b, _)| b.parts.parts().first().copied().unwrap_or(0)).max().unwrap_or(0);
        for j in 0..=max_part as i64 {
            let c = binomial(-j - 1, n - 1);
            let w = v.alpha(j);
            series_add(&mut out, *e - Q::from_integer(j + n as i64), &w, &Scalar::from_rational(c));
        }
    }
    out
}

/// Creation half: `sum_{p>=n} binom(p-1, n-1) alpha(-p) z^{p-n}`, truncated at `cutoff`.
fn apply_creation_field(n: u32, s: &ZSeries<UBasis>, cutoff: Q) -> ZSeries<UBasis> {
    let mut out = ZSeries::new();
    for (e, v) in s {
        let Some(wmin) = v.min_weight() else { continue };
        let room = cutoff - wmin;
        if room < Q::from_integer(n as i64) {
            continue;
        }
        let max_p = room.floor().to_integer();
        for p in n as i64..=max_p {
            let c = binomial(p - 1, n - 1);
            let w = v.alpha(-p).truncate(cutoff);
            series_add(&mut out, *e + Q::from_integer(p - n as i64), &w, &Scalar::from_rational(c));
        }
    }
    out
}

/// `Y°(u, z) v` for basis elements, all terms of weight at most `cutoff`.
fn vertex_series_basis(k: u32, ub: &UBasis, vb: &UBasis, cutoff: Q) -> ZSeries<UBasis> {
    let r = ub.r;
    let s = vb.r;
    let x = BigRational::new(BigInt::from(r), BigInt::from(2 * k as i64));
    // z^{lambda(0)}
    let e0 = Q::new(r * s, 2 * k as i64);
    let mut after_plus = ZSeries::new();
    apply_eplus(k, &x, vb, e0, &mut after_plus, &Scalar::one());

    let factors = ub.parts.parts();
    let l = factors.len();
    let mut total = ZSeries::new();
    for mask in 0u32..(1 << l) {
        // bits set: factor contributes its annihilation half
        let mut ser = after_plus.clone();
        for (i, &n) in factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                ser = apply_annihilation_field(n, &ser);
            }
        }
        let shifted: ZSeries<UBasis> = ser.iter().map(|(e, v)| (*e, v.shift(r))).collect();
        let mut ser = apply_eminus_u(&x, &shifted, cutoff);
        for (i, &n) in factors.iter().enumerate() {
            if mask & (1 << i) == 0 {
                ser = apply_creation_field(n, &ser, cutoff);
            }
        }
        for (e, v) in &ser {
            let v = v.truncate(cutoff);
            series_add(&mut total, *e, &v, &Scalar::one());
        }
    }
    total
}

/// `Y°(u, z) v` up to output weight `cutoff`, without the input check.
pub(crate) fn vertex_series_unchecked(u: &UVector, v: &UVector, cutoff: Q) -> ZSeries<UBasis> {
    let k = u.k();
    let mut out = ZSeries::new();
    for (ub, uc) in u.terms() {
        for (vb, vc) in v.terms() {
            let part = vertex_series_basis(k, ub, vb, cutoff);
            series_merge(&mut out, &part, &(uc * vc));
        }
    }
    out
}

fn check_cutoff(v: &UVector, cutoff: Q) -> Result<()> {
    if let Some(w) = v.max_weight() {
        if cutoff < w {
            return Err(Error::Domain(format!("cutoff {cutoff} is below the input weight {w}")));
        }
    }
    Ok(())
}

/// Every mode of `Y°(u, z) v` with output weight at most `cutoff`, keyed by z-exponent.
pub fn vertex_series(u: &UVector, v: &UVector, cutoff: Q) -> Result<ZSeries<UBasis>> {
    check_cutoff(v, cutoff)?;
    Ok(vertex_series_unchecked(u, v, cutoff))
}

/// `u_m v`, the coefficient of `z^{-m-1}` in `Y°(u, z) v`, exact on weights up to `cutoff`.
pub fn vertex_mode(u: &UVector, m: Q, v: &UVector, cutoff: Q) -> Result<UVector> {
    let s = vertex_series(u, v, cutoff)?;
    let e = -m - Q::one();
    Ok(s.get(&e).cloned().unwrap_or_else(|| UVector::zero(v.k())))
}

pub fn vacuum(k: u32) -> UVector {
    UVector::lattice(k, 0)
}

/// `omega = (1/4k) alpha(-1)^2 1`.
pub fn omega(k: u32) -> UVector {
    UVector::basis(k, UBasis::new(Partition::new(vec![1, 1]), 0)).scale_q(Q::new(1, 4 * k as i64))
}

/// `J = h(-1)^4 1 - 2 h(-3) h(-1) 1 + (3/2) h(-2)^2 1` with `h = alpha / sqrt(2k)`.
pub fn j_vector(k: u32) -> UVector {
    let kk = 2 * k as i64;
    let b = |p: Vec<u32>| UBasis::new(Partition::new(p), 0);
    UVector::from_terms(
        k,
        [
            (b(vec![1, 1, 1, 1]), Scalar::from_q(Q::new(1, kk * kk))),
            (b(vec![3, 1]), Scalar::from_q(Q::new(-2, kk))),
            (b(vec![2, 2]), Scalar::from_q(Q::new(3, 2 * kk))),
        ],
    )
}

/// `E = e_alpha + e_{-alpha}`.
pub fn e_vector(k: u32) -> UVector {
    let n = 2 * k as i64;
    UVector::lattice(k, n).plus(&UVector::lattice(k, -n))
}

/// `F = e_alpha - e_{-alpha}`.
pub fn f_vector(k: u32) -> UVector {
    let n = 2 * k as i64;
    UVector::lattice(k, n).minus(&UVector::lattice(k, -n))
}

/// `L(-1) u = omega_0 u`.
pub fn l_minus_one(u: &UVector) -> UVector {
    let k = u.k();
    let cutoff = u.max_weight().unwrap_or_else(Q::zero) + Q::one();
    let s = vertex_series_unchecked(&omega(k), u, cutoff);
    s.get(&Q::from_integer(-1)).cloned().unwrap_or_else(|| UVector::zero(k))
}

/// All basis elements of `V_{L°}` with weight at most `cutoff`.
pub fn basis_up_to(k: u32, cutoff: Q) -> Vec<UBasis> {
    let mut out = Vec::new();
    let bound = (cutoff * Q::from_integer(4 * k as i64)).floor().to_integer();
    let mut s = 0i64;
    while s * s <= bound {
        for r in if s == 0 { vec![0] } else { vec![s, -s] } {
            let top = Q::new(r * r, 4 * k as i64);
            let room = (cutoff - top).floor().to_integer();
            for n in 0..=room.max(-1) {
                for p in Partition::all_of(n as u32) {
                    out.push(UBasis::new(p, r));
                }
            }
        }
        s += 1;
    }
    out
}

/// Checks `[alpha(m), Y(e_beta, z)] = <alpha, beta> z^m Y(e_beta, z)` on every
/// basis vector of weight at most `cutoff`, coefficient by coefficient. `u` must be
/// a single lattice vector `e_beta`.
pub fn commutator_check(m: i64, u: &UVector, cutoff: Q) -> bool {
    let k = u.k();
    let beta = match u.terms().collect::<Vec<_>>().as_slice() {
        [(b, c)] if b.parts.is_empty() && c.is_one() => b.r,
        _ => return false,
    };
    let mq = Q::from_integer(m);
    let big = cutoff + Q::from_integer(m.abs());
    basis_up_to(k, cutoff).into_iter().all(|vb| {
        let v = UVector::basis(k, vb);
        let s_v = vertex_series_unchecked(u, &v, big);
        let av = v.alpha(m);
        let s_av = vertex_series_unchecked(u, &av, big);
        let mut exps: Vec<Q> = s_v.keys().copied().collect();
        exps.extend(s_av.keys().copied());
        exps.extend(s_v.keys().map(|e| *e + mq));
        exps.sort();
        exps.dedup();
        exps.into_iter().all(|e| {
            let zero = UVector::zero(k);
            let ye = s_v.get(&e).unwrap_or(&zero);
            let lhs = ye.alpha(m).minus(s_av.get(&e).unwrap_or(&zero)).truncate(cutoff);
            let rhs = s_v
                .get(&(e - mq))
                .unwrap_or(&zero)
                .scale(&Scalar::from_int(beta))
                .truncate(cutoff);
            lhs == rhs
        })
    })
}

/// `<lambda_r, lambda_s> = rs / 2k`.
pub fn pairing(k: u32, r: i64, s: i64) -> Q {
    Q::new(r * s, 2 * k as i64)
}

/// `q` as an exact big rational.
pub fn big(q: Q) -> BigRational {
    q_to_big(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::HeisAct;

    fn ub(parts: &[u32], r: i64) -> UBasis {
        UBasis::new(Partition::new(parts.to_vec()), r)
    }

    /// `1 / z_mu` with `z_mu = prod_j j^{m_j} m_j!`, the closed form of the
    /// exponential's coefficients.
    fn inv_z(mu: &[u32]) -> BigRational {
        let mut z = BigInt::one();
        let mut i = 0;
        while i < mu.len() {
            let mut j = i;
            while j < mu.len() && mu[j] == mu[i] {
                j += 1;
            }
            for t in 1..=(j - i) {
                z *= BigInt::from(mu[i]) * BigInt::from(t);
            }
            i = j;
        }
        BigRational::new(BigInt::one(), z)
    }

    #[test]
    fn exp_coeffs_match_closed_form() {
        for n in 0..=8 {
            let t = exp_coeffs(false, n);
            assert_eq!(t.len(), Partition::all_of(n).len());
            for (mu, c) in t.iter() {
                assert_eq!(*c, inv_z(mu), "mu = {mu:?}");
            }
        }
        // doubled: parts j/2 with weight 1/(j/2) each; z_mu uses the half-integer parts
        for d in 1..=9 {
            let t = exp_coeffs(true, d);
            for (mu, c) in t.iter() {
                let mut expect = inv_z(mu);
                for _ in mu {
                    expect *= int(2);
                }
                assert_eq!(*c, expect);
            }
        }
    }

    #[test]
    fn vacuum_is_identity() {
        for k in 1..=3 {
            let v = UVector::basis(k, ub(&[2, 1], 2 * k as i64 + 1));
            let s = vertex_series(&vacuum(k), &v, Q::from_integer(8)).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s[&Q::zero()], v);
        }
    }

    #[test]
    fn l0_on_lattice_vectors() {
        for k in 1..=4u32 {
            for r in -3..=3 {
                let v = UVector::lattice(k, r);
                let w = Q::new(r * r, 4 * k as i64);
                let out = vertex_mode(&omega(k), Q::one(), &v, w + Q::from_integer(2)).unwrap();
                assert_eq!(out, v.scale_q(w));
            }
        }
    }

    #[test]
    fn creation_modes_of_alpha() {
        // Y(alpha(-1)1, z) = alpha(z): the mode alpha(n) is the coefficient of z^{-n-1}
        let k = 2;
        let a = UVector::basis(k, ub(&[1], 0));
        let v = UVector::basis(k, ub(&[2], 3));
        for n in -3..=2 {
            let out = vertex_mode(&a, Q::from_integer(n), &v, Q::from_integer(9)).unwrap();
            assert_eq!(out, v.heis_act(Q::from_integer(n)).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn lattice_leading_term() {
        let k = 3;
        // e_{lambda_r}_{-rs/2k - 1} e_{lambda_s} = e_{lambda_{r+s}}
        let s = vertex_series(&UVector::lattice(k, 2), &UVector::lattice(k, 1), Q::from_integer(3)).unwrap();
        let (e, v) = s.iter().next().unwrap();
        assert_eq!(*e, Q::new(2, 6));
        assert_eq!(*v, UVector::lattice(k, 3));
    }

    #[test]
    fn weights_of_distinguished_vectors() {
        for k in 1..=4 {
            assert_eq!(omega(k).homogeneous_weight(), Some(Q::from_integer(2)));
            assert_eq!(j_vector(k).homogeneous_weight(), Some(Q::from_integer(4)));
            assert_eq!(e_vector(k).homogeneous_weight(), Some(Q::from_integer(k as i64)));
            assert_eq!(omega(k).theta(), omega(k));
            assert_eq!(j_vector(k).theta(), j_vector(k));
            assert_eq!(f_vector(k).theta(), f_vector(k).scale_q(Q::from_integer(-1)));
        }
    }

    #[test]
    fn l_minus_one_is_translation() {
        let k = 2;
        assert_eq!(l_minus_one(&vacuum(k)), UVector::zero(k));
        // L(-1) e_lambda = lambda(-1) e_lambda
        let e = UVector::lattice(k, 4);
        assert_eq!(l_minus_one(&e), e.alpha(-1).scale_q(Q::new(4, 4)));
    }

    #[test]
    fn p_coeff_low_orders() {
        let k = 2;
        let v = vacuum(k);
        assert_eq!(p_coeff(Sign::Plus, 0, &v), v);
        assert_eq!(p_coeff(Sign::Plus, 1, &v), v.alpha(-1));
        assert_eq!(p_coeff(Sign::Minus, 1, &v), v.alpha(-1).scale_q(Q::from_integer(-1)));
    }

    #[test]
    fn commutators() {
        assert!(commutator_check(1, &UVector::lattice(1, 2), Q::from_integer(3)));
        assert!(commutator_check(-2, &UVector::lattice(1, -2), Q::from_integer(3)));
        assert!(commutator_check(0, &vacuum(2), Q::from_integer(3)));
    }
}
