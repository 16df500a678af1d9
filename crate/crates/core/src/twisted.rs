//! The theta-twisted operator `Y^theta(u, z)` on `M(1)(theta) (x) T`, including the
//! `exp(Delta_z)` correction, and the sector maps `psi_lambda` on `T = T1 + T2`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{HalfPartition, Sector, TBasis, TVector, UBasis, UVector};
use crate::label::Sign;
use crate::scalar::{Scalar, Q};
use crate::untwisted::{binomial, binomial_q, exp_coeffs, series_add, series_merge, ZSeries};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Bivariate power series in `x`, `y` truncated at total degree `order`;
/// `c[m][n]` is the coefficient of `x^m y^n`.
type Bivariate = Vec<Vec<BigRational>>;

fn bivariate_zero(order: usize) -> Bivariate {
    (0..=order).map(|m| vec![BigRational::zero(); order + 1 - m]).collect()
}

fn bivariate_mul(a: &Bivariate, b: &Bivariate, order: usize) -> Bivariate {
    let mut out = bivariate_zero(order);
    for (m1, row1) in a.iter().enumerate() {
        for (n1, c1) in row1.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (m2, row2) in b.iter().enumerate().take(order + 1 - m1) {
                for (n2, c2) in row2.iter().enumerate() {
                    if m1 + m2 + n1 + n2 > order {
                        break;
                    }
                    out[m1 + m2][n1 + n2] += c1 * c2;
                }
            }
        }
    }
    out
}

/// `c_mn` for `m + n <= order`, from
/// `sum c_mn x^m y^n = -log(((1+x)^(1/2) + (1+y)^(1/2)) / 2)`.
///
/// With `a(x) = (1+x)^(1/2) - 1` and `w = (a(x) + a(y)) / 2`, this is
/// `-log(1 + w) = sum_j (-1)^j w^j / j`; `w` has no constant term, so truncating
/// every product at the target order is exact.
fn delta_table_uncached(order: usize) -> Bivariate {
    let mut w = bivariate_zero(order);
    for i in 1..=order {
        let c = binomial_q(Q::new(1, 2), i as u32) / int(2);
        w[i][0] += &c;
        w[0][i] += &c;
    }
    let mut out = bivariate_zero(order);
    let mut power = w.clone();
    for j in 1..=order {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let f = int(sign) / int(j as i64);
        for (m, row) in power.iter().enumerate() {
            for (n, c) in row.iter().enumerate() {
                out[m][n] += c * &f;
            }
        }
        power = bivariate_mul(&power, &w, order);
    }
    out
}

/// Cached table of `c_mn`, `m + n <= order` (at least 8).
pub fn delta_table(order: usize) -> Arc<Bivariate> {
    static CACHE: OnceLock<Mutex<Option<Arc<Bivariate>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    if let Some(t) = cache.lock().unwrap().as_ref() {
        if t.len() > order {
            return t.clone();
        }
    }
    let built = Arc::new(delta_table_uncached(order.max(8)));
    let mut guard = cache.lock().unwrap();
    match guard.as_ref() {
        Some(t) if t.len() >= built.len() => t.clone(),
        _ => {
            *guard = Some(built.clone());
            built
        }
    }
}

/// The coefficient `c_mn`.
pub fn delta_coeff(m: usize, n: usize) -> BigRational {
    delta_table(m + n)[m][n].clone()
}

/// `exp(Delta_z) u` with `Delta_z = (1/2k) sum c_mn alpha(m) alpha(n) z^{-m-n}`,
/// keyed by the (nonpositive integer) power of `z`. Finite because every term of
/// `Delta_z` lowers the Heisenberg degree.
pub fn delta_apply(u: &UVector) -> ZSeries<UBasis> {
    let k = u.k();
    let mut result = ZSeries::new();
    series_add(&mut result, Q::zero(), u, &Scalar::one());
    let mut term: ZSeries<UBasis> = result.clone();
    let mut j = 1i64;
    loop {
        let mut next = ZSeries::new();
        for (e, v) in &term {
            let depth = v
                .terms()
                .map(|(b, _)| b.parts.size() as usize)
                .max()
                .unwrap_or(0);
            if depth == 0 {
                continue;
            }
            let table = delta_table(depth);
            for m in 0..=depth {
                for n in 0..=(depth - m) {
                    let c = &table[m][n];
                    if c.is_zero() {
                        continue;
                    }
                    let w = v.alpha(n as i64).alpha(m as i64);
                    let coef = c / int(2 * k as i64 * j);
                    series_add(&mut next, *e - Q::from_integer((m + n) as i64), &w, &Scalar::from_rational(coef));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        series_merge(&mut result, &next, &Scalar::one());
        term = next;
        j += 1;
    }
    result
}

/// `exp(-sum_n lambda(n) z^-n / n)` over `n in 1/2 + N` on one twisted basis element.
fn apply_eplus_tw(k: u32, x: &BigRational, b: &TBasis, e: Q, out: &mut ZSeries<TBasis>, coeff: &Scalar) {
    let parts = b.parts.doubled_parts();
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &p in parts {
        match groups.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut choice = vec![0u32; groups.len()];
    loop {
        let mut mono = Vec::new();
        let mut factor = BigRational::one();
        let mut rest = Vec::new();
        for ((d, m), &c) in groups.iter().zip(&choice) {
            for i in 0..c {
                mono.push(*d);
                // alpha(d/2) on alpha(-d/2)^(m - i): k d (m - i)
                factor *= int(k as i64 * *d as i64 * (*m - i) as i64);
            }
            for _ in c..*m {
                rest.push(*d);
            }
        }
        let degree: u32 = mono.iter().sum();
        if mono.is_empty() || !x.is_zero() {
            let table = exp_coeffs(true, degree);
            let c = table.get(&mono).cloned().unwrap_or_else(BigRational::zero);
            let mut xpow = BigRational::one();
            for _ in 0..mono.len() {
                xpow *= -x.clone();
            }
            let total = c * xpow * factor;
            if !total.is_zero() {
                let v = TVector::basis(k, TBasis::new(HalfPartition::from_doubled(rest), b.sector));
                series_add(out, e - Q::new(degree as i64, 2), &v, &coeff.scale(&total));
            }
        }
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

fn apply_eminus_tw(x: &BigRational, s: &ZSeries<TBasis>, cutoff: Q) -> ZSeries<TBasis> {
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
        let max_d = (room * Q::from_integer(2)).floor().to_integer() as u32;
        for d in 0..=max_d {
            let table = exp_coeffs(true, d);
            let mut monos: Vec<_> = table.iter().collect();
            monos.sort();
            for (mono, c) in monos {
                let mut w = v.clone();
                for &j in mono {
                    w = w.alpha_half(-(j as i64));
                }
                let mut xpow = BigRational::one();
                for _ in 0..mono.len() {
                    xpow *= x;
                }
                let w = w.truncate(cutoff);
                series_add(&mut out, *e + Q::new(d as i64, 2), &w, &Scalar::from_rational(c * xpow));
            }
        }
    }
    out
}

/// Annihilation half of `partial^{(N-1)} alpha(z)`:
/// `sum_{n in 1/2 + N} binom(-n-1, N-1) alpha(n) z^{-n-N}`.
fn apply_annihilation_tw(nn: u32, s: &ZSeries<TBasis>) -> ZSeries<TBasis> {
    let mut out = ZSeries::new();
    for (e, v) in s {
        let max_d = v
            .terms()
            .map(|(b, _)| b.parts.doubled_parts().first().copied().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let mut d = 1;
        while d <= max_d {
            let n = Q::new(d as i64, 2);
            let c = binomial_q(-n - Q::one(), nn - 1);
            let w = v.alpha_half(d as i64);
            series_add(&mut out, *e - n - Q::from_integer(nn as i64), &w, &Scalar::from_rational(c));
            d += 2;
        }
    }
    out
}

/// Creation half: `sum_{p in 1/2 + N} binom(p-1, N-1) alpha(-p) z^{p-N}`.
fn apply_creation_tw(nn: u32, s: &ZSeries<TBasis>, cutoff: Q) -> ZSeries<TBasis> {
    let mut out = ZSeries::new();
    for (e, v) in s {
        let Some(wmin) = v.min_weight() else { continue };
        let room = cutoff - wmin;
        if room < Q::new(1, 2) {
            continue;
        }
        let max_d = (room * Q::from_integer(2)).floor().to_integer();
        let mut d = 1;
        while d <= max_d {
            let p = Q::new(d, 2);
            let c = binomial_q(p - Q::one(), nn - 1);
            let w = v.alpha_half(-d).truncate(cutoff);
            series_add(&mut out, *e + p - Q::from_integer(nn as i64), &w, &Scalar::from_rational(c));
            d += 2;
        }
    }
    out
}

/// `W^theta(u, z) v` for basis elements, with no sector factor.
fn w_theta_basis(k: u32, ub: &UBasis, vb: &TBasis, cutoff: Q) -> ZSeries<TBasis> {
    let r = ub.r;
    let x = BigRational::new(BigInt::from(r), BigInt::from(2 * k as i64));
    let norm = Q::new(r * r, 2 * k as i64);
    let prefactor = Scalar::two_pow(k, -norm).expect("<lambda, lambda> has denominator dividing 2k");
    let e0 = -norm / Q::from_integer(2);
    let mut after_plus = ZSeries::new();
    apply_eplus_tw(k, &x, vb, e0, &mut after_plus, &prefactor);

    let factors = ub.parts.parts();
    let l = factors.len();
    let mut total = ZSeries::new();
    for mask in 0u32..(1 << l) {
        let mut ser = after_plus.clone();
        for (i, &n) in factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                ser = apply_annihilation_tw(n, &ser);
            }
        }
        let mut ser = apply_eminus_tw(&x, &ser, cutoff);
        for (i, &n) in factors.iter().enumerate() {
            if mask & (1 << i) == 0 {
                ser = apply_creation_tw(n, &ser, cutoff);
            }
        }
        for (e, v) in &ser {
            series_add(&mut total, *e, &v.truncate(cutoff), &Scalar::one());
        }
    }
    total
}

/// `Y^theta(u, z) v` with the sector left untouched (no `e_beta` or `psi` factor).
pub(crate) fn raw_twisted_series(u: &UVector, v: &TVector, cutoff: Q) -> ZSeries<TBasis> {
    let k = u.k();
    let mut out = ZSeries::new();
    for (ub, uc) in u.terms() {
        let single = UVector::basis(k, ub.clone());
        for (shift, w) in delta_apply(&single) {
            for (wb, wc) in w.terms() {
                for (vb, vc) in v.terms() {
                    let part = w_theta_basis(k, wb, vb, cutoff);
                    for (e, x) in part {
                        series_add(&mut out, e + shift, &x, &(&(uc * wc) * vc));
                    }
                }
            }
        }
    }
    out
}

fn check_cutoff(v: &TVector, cutoff: Q) -> Result<()> {
    if let Some(w) = v.max_weight() {
        if cutoff < w {
            return Err(Error::Domain(format!("cutoff {cutoff} is below the input weight {w}")));
        }
    }
    Ok(())
}

/// Split `u` by lattice index.
fn by_lattice(u: &UVector) -> Vec<(i64, UVector)> {
    let mut map: std::collections::BTreeMap<i64, UVector> = std::collections::BTreeMap::new();
    for (b, c) in u.terms() {
        map.entry(b.r)
            .or_insert_with(|| UVector::zero(u.k()))
            .add_term(b.clone(), c);
    }
    map.into_iter().collect()
}

/// Apply a sector map to every term of a series.
fn map_sectors(s: &ZSeries<TBasis>, psi: &PsiMap) -> Result<ZSeries<TBasis>> {
    let mut out = ZSeries::new();
    for (e, v) in s {
        let mut w = TVector::zero(v.k());
        for (b, c) in v.terms() {
            let (target, sign) = psi.apply(b.sector)?;
            w.add_term(TBasis::new(b.parts.clone(), target), &c.scale_q(Q::from_integer(sign)));
        }
        series_add(&mut out, *e, &w, &Scalar::one());
    }
    Ok(out)
}

/// The twisted module operator: `Y^theta(u, z) (x) e_beta` on sectored vectors
/// (`u` must then lie in `V_L`), or plain `Y^theta(u, z)` on `M(1)(theta)`.
pub fn twisted_series(u: &UVector, v: &TVector, cutoff: Q) -> Result<ZSeries<TBasis>> {
    check_cutoff(v, cutoff)?;
    let k = u.k();
    let sectored = v.terms().any(|(b, _)| b.sector != Sector::Bare);
    if !sectored {
        return Ok(raw_twisted_series(u, v, cutoff));
    }
    let mut out = ZSeries::new();
    for (r, part) in by_lattice(u) {
        if r.rem_euclid(2 * k as i64) != 0 {
            return Err(Error::Usage(format!(
                "e[{r}] is not in L; use the tilde operator for sectored twisted vectors"
            )));
        }
        let s = raw_twisted_series(&part, v, cutoff);
        series_merge(&mut out, &map_sectors(&s, &PsiMap::e_alpha_pow(r / (2 * k as i64)))?, &Scalar::one());
    }
    Ok(out)
}

/// `u_m v` for the twisted module operator.
pub fn twisted_mode(u: &UVector, m: Q, v: &TVector, cutoff: Q) -> Result<TVector> {
    let s = twisted_series(u, v, cutoff)?;
    Ok(s.get(&(-m - Q::one())).cloned().unwrap_or_else(|| TVector::zero(v.k())))
}

/// `Y~(u, z) = Y^theta(u, z) (x) psi_lambda` for `u` in `M(1) (x) e_lambda`.
pub fn tilde_series(u: &UVector, v: &TVector, cutoff: Q) -> Result<ZSeries<TBasis>> {
    check_cutoff(v, cutoff)?;
    let k = u.k();
    if v.terms().any(|(b, _)| b.sector == Sector::Bare) {
        return Err(Error::Usage("the tilde operator acts on sectored twisted vectors".into()));
    }
    let mut out = ZSeries::new();
    for (r, part) in by_lattice(u) {
        let s = raw_twisted_series(&part, v, cutoff);
        series_merge(&mut out, &map_sectors(&s, &psi_map(k, r))?, &Scalar::one());
    }
    Ok(out)
}

pub fn tilde_mode(u: &UVector, m: Q, v: &TVector, cutoff: Q) -> Result<TVector> {
    let s = tilde_series(u, v, cutoff)?;
    Ok(s.get(&(-m - Q::one())).cloned().unwrap_or_else(|| TVector::zero(v.k())))
}

/// A signed permutation of `{t1, t2}`: `t_i -> sign_i t_{target_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PsiMap {
    image: [(u8, i64); 2],
}

impl PsiMap {
    pub fn identity() -> Self {
        PsiMap {
            image: [(1, 1), (2, 1)],
        }
    }

    /// `psi`: swaps `t1` and `t2`.
    pub fn swap() -> Self {
        PsiMap {
            image: [(2, 1), (1, 1)],
        }
    }

    /// `e_{m alpha}` on `T`: `1` on `t1`, `(-1)^m` on `t2`.
    pub fn e_alpha_pow(m: i64) -> Self {
        PsiMap {
            image: [(1, 1), (2, if m.rem_euclid(2) == 0 { 1 } else { -1 })],
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &PsiMap) -> PsiMap {
        let mut image = [(0u8, 0i64); 2];
        for (i, slot) in image.iter_mut().enumerate() {
            let (mid, s1) = other.image[i];
            let (to, s2) = self.image[mid as usize - 1];
            *slot = (to, s1 * s2);
        }
        PsiMap { image }
    }

    pub fn scale(&self, c: i64) -> PsiMap {
        PsiMap {
            image: [(self.image[0].0, self.image[0].1 * c), (self.image[1].0, self.image[1].1 * c)],
        }
    }

    /// Image of `t_i`: the target sector and sign.
    pub fn apply(&self, sector: Sector) -> Result<(Sector, i64)> {
        let i = sector
            .index()
            .ok_or_else(|| Error::Usage("sector maps act on T1 and T2 only".into()))?;
        let (to, s) = self.image[i as usize - 1];
        Ok((Sector::from_index(to), s))
    }

    /// The matrix with columns the images of `t1`, `t2`.
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        let mut m = [[0; 2]; 2];
        for (i, (to, s)) in self.image.iter().enumerate() {
            m[*to as usize - 1][i] = *s;
        }
        m
    }
}

/// `psi_lambda` for `lambda = lambda_r`: write `r = r0 + 2k m` with
/// `-k + 1 <= r0 <= k` and set `psi_lambda = e_{m alpha} o psi^{r0}`.
pub fn psi_map(k: u32, r: i64) -> PsiMap {
    let n = 2 * k as i64;
    let kk = k as i64;
    let m = (r + kk - 1).div_euclid(n);
    let r0 = r - n * m;
    debug_assert!(-kk < r0 && r0 <= kk);
    let psi_pow = if r0.rem_euclid(2) == 0 { PsiMap::identity() } else { PsiMap::swap() };
    PsiMap::e_alpha_pow(m).compose(&psi_pow)
}

/// Every twisted basis element of `M(1)(theta) (x) sector` with weight at most `cutoff`.
pub fn twisted_basis_up_to(cutoff: Q, sector: Sector) -> Vec<TBasis> {
    let mut out = Vec::new();
    let room = cutoff - Q::new(1, 16);
    if room < Q::zero() {
        return out;
    }
    let max_d = (room * Q::from_integer(2)).floor().to_integer();
    for d in 0..=max_d {
        for p in HalfPartition::all_of(Q::new(d, 2)) {
            out.push(TBasis::new(p, sector));
        }
    }
    out
}

/// Checks `[alpha(m), Y^theta(e_lambda, z)] = <alpha, lambda> z^m Y^theta(e_lambda, z)`
/// on `M(1)(theta)` up to `cutoff`, with `m = m2 / 2` half-odd.
pub fn twisted_commutator_check(m2: i64, u: &UVector, cutoff: Q) -> bool {
    let k = u.k();
    let lambda = match u.terms().collect::<Vec<_>>().as_slice() {
        [(b, c)] if b.parts.is_empty() && c.is_one() => b.r,
        _ => return false,
    };
    let mq = Q::new(m2, 2);
    let big = cutoff + Q::new(m2.abs(), 2);
    twisted_basis_up_to(cutoff, Sector::Bare).into_iter().all(|vb| {
        let v = TVector::basis(k, vb);
        let s_v = raw_twisted_series(u, &v, big);
        let av = v.alpha_half(m2);
        let s_av = raw_twisted_series(u, &av, big);
        let mut exps: Vec<Q> = s_v.keys().copied().collect();
        exps.extend(s_av.keys().copied());
        exps.extend(s_v.keys().map(|e| *e + mq));
        exps.sort();
        exps.dedup();
        let zero = TVector::zero(k);
        exps.into_iter().all(|e| {
            let lhs = s_v
                .get(&e)
                .unwrap_or(&zero)
                .alpha_half(m2)
                .minus(s_av.get(&e).unwrap_or(&zero))
                .truncate(cutoff);
            let rhs = s_v
                .get(&(e - mq))
                .unwrap_or(&zero)
                .scale(&Scalar::from_int(lambda))
                .truncate(cutoff);
            lhs == rhs
        })
    })
}

/// Checks `theta Y^theta(u, z) theta(v) = Y^theta(theta(u), z) v` on `M(1)(theta)`
/// for every basis `v` up to `cutoff`.
pub fn theta_conjugation_check(u: &UVector, cutoff: Q) -> bool {
    let k = u.k();
    let tu = u.theta();
    twisted_basis_up_to(cutoff, Sector::Bare).into_iter().all(|vb| {
        let v = TVector::basis(k, vb);
        let lhs = raw_twisted_series(u, &v.theta(), cutoff);
        let rhs = raw_twisted_series(&tu, &v, cutoff);
        let lhs: HashMap<Q, TVector> = lhs.into_iter().map(|(e, x)| (e, x.theta())).collect();
        lhs.len() == rhs.len() && rhs.iter().all(|(e, x)| lhs.get(e) == Some(x))
    })
}

/// The top vector of `V^{T_i, sign}`: `1_tw (x) t_i` or `alpha(-1/2) 1_tw (x) t_i`.
pub fn twisted_top(k: u32, i: u8, sign: Sign) -> TVector {
    let v = TVector::vacuum(k, Sector::from_index(i));
    match sign {
        Sign::Plus => v,
        Sign::Minus => v.alpha_half(-1),
    }
}

/// `binom(n, j)` re-exported for callers building mode sums.
pub fn binom(n: i64, j: u32) -> BigRational {
    binomial(n, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::untwisted::{e_vector, j_vector, omega};

    #[test]
    fn low_order_delta() {
        assert_eq!(delta_coeff(0, 0), BigRational::zero());
        assert_eq!(delta_coeff(1, 0), int(-1) / int(4));
        assert_eq!(delta_coeff(0, 1), int(-1) / int(4));
        assert_eq!(delta_coeff(1, 1), int(1) / int(16));
        let t = delta_table(8);
        for m in 0..=8 {
            for n in 0..=(8 - m) {
                assert_eq!(t[m][n], t[n][m]);
            }
        }
    }

    #[test]
    fn delta_apply_examples() {
        let k = 2;
        let e = UVector::lattice(k, 4);
        let d = delta_apply(&e);
        assert_eq!(d.len(), 1);
        assert_eq!(d[&Q::zero()], e);
        let w = UVector::basis(k, UBasis::new(crate::fock::Partition::new(vec![1, 1]), 0));
        let d = delta_apply(&w);
        // c_11 alpha(1)^2 alpha(-1)^2 / 2k = (1/16) 2 (2k)^2 / 2k
        assert_eq!(d[&Q::from_integer(-2)], UVector::lattice(k, 0).scale_q(Q::new(2 * 2 * k as i64, 16)));
    }

    #[test]
    fn omega_on_twisted_vacuum() {
        for k in 1..=3 {
            let v = TVector::vacuum(k, Sector::Bare);
            let out = twisted_mode(&omega(k), Q::one(), &v, Q::from_integer(2)).unwrap();
            assert_eq!(out, v.scale_q(Q::new(1, 16)));
        }
    }

    #[test]
    fn e_on_twisted_top() {
        for k in 1..=3u32 {
            let kk = k as i64;
            let top = twisted_top(k, 1, Sign::Plus);
            let out = twisted_mode(&e_vector(k), Q::from_integer(kk - 1), &top, Q::from_integer(2)).unwrap();
            let expect = Scalar::two_pow(k, Q::from_integer(-2 * kk + 1)).unwrap();
            assert_eq!(out, top.scale(&expect));
        }
    }

    #[test]
    fn j_on_twisted_vacuum() {
        let k = 2;
        let v = TVector::vacuum(k, Sector::T1);
        let out = twisted_mode(&j_vector(k), Q::from_integer(3), &v, Q::from_integer(2)).unwrap();
        assert_eq!(out, v.scale_q(Q::new(3, 128)));
    }

    #[test]
    fn non_lattice_on_sector_is_usage_error() {
        let k = 2;
        let v = TVector::vacuum(k, Sector::T1);
        assert!(matches!(
            twisted_series(&UVector::lattice(k, 1), &v, Q::from_integer(2)),
            Err(Error::Usage(_))
        ));
        assert!(tilde_series(&UVector::lattice(k, 1), &v, Q::from_integer(2)).is_ok());
    }

    #[test]
    fn psi_examples() {
        for k in 1..=4u32 {
            let n = 2 * k as i64;
            assert_eq!(psi_map(k, 0), PsiMap::identity());
            assert_eq!(psi_map(k, n).matrix(), [[1, 0], [0, -1]]);
            let ea = PsiMap::e_alpha_pow(1);
            assert_eq!(ea.compose(&psi_map(k, 1)), psi_map(k, 1).compose(&ea).scale(-1));
        }
    }

    #[test]
    fn twisted_commutators() {
        for k in 1..=2 {
            for r in [-2, 1, 2] {
                for m2 in [-3, -1, 1, 3] {
                    assert!(twisted_commutator_check(m2, &UVector::lattice(k, r), Q::from_integer(3)));
                }
            }
        }
    }

    #[test]
    fn theta_conjugation() {
        let k = 1;
        for u in [UVector::lattice(k, 1), omega(k), UVector::lattice(k, 2).alpha(-1)] {
            assert!(theta_conjugation_check(&u, Q::from_integer(3)));
        }
    }
}
