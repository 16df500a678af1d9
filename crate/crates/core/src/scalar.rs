//! Exact coefficients in `Q(zeta)[t]`, where `zeta = exp(pi i / 2k)` has order `4k`
//! and `t = 2^(1/2k)`.
//!
//! A [`Scalar`] is stored in the power basis `zeta^a t^b` with
//! `0 <= a < phi(4k)` and `0 <= b < d_t`. The `zeta` part is reduced modulo the
//! cyclotomic polynomial `Phi_4k`. For odd `k` the `t` part is reduced by
//! `t^(2k) = 2` (so `d_t = 2k`); for even `k`, `sqrt 2 = zeta_8 + zeta_8^-1` already
//! lies in the cyclotomic field and the relation is `t^k = zeta^(k/2) + zeta^(-k/2)`
//! (so `d_t = k`). The representation is canonical, so equality of values is
//! structural equality.
//!
//! Rational scalars carry no ring and mix freely with scalars of any `k`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Small exact rational used for weights and z-exponents.
pub type Q = Rational64;

/// Reduction data for one value of `k`.
#[derive(Debug)]
pub struct RingParams {
    k: u32,
    order: usize,
    zeta_degree: usize,
    t_degree: usize,
    cyclotomic: Vec<i64>,
    /// `zeta^e` in the power basis, for `0 <= e < order`.
    zeta_table: Vec<Vec<i64>>,
}

impl RingParams {
    fn new(k: u32) -> Self {
        assert!(k >= 1, "k must be positive");
        let order = 4 * k as usize;
        let cyclotomic = cyclotomic_poly(order);
        let zeta_degree = cyclotomic.len() - 1;
        let t_degree = if k.is_multiple_of(2) { k as usize } else { 2 * k as usize };

        let mut zeta_table = Vec::with_capacity(order);
        let mut cur = vec![0i64; zeta_degree];
        cur[0] = 1;
        for _ in 0..order {
            zeta_table.push(cur.clone());
            // multiply by x and reduce by the monic Phi_N
            let top = cur[zeta_degree - 1];
            for j in (1..zeta_degree).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (j, c) in cur.iter_mut().enumerate() {
                    *c -= top * cyclotomic[j];
                }
            }
        }

        let params = RingParams {
            k,
            order,
            zeta_degree,
            t_degree,
            cyclotomic,
            zeta_table,
        };
        params.assert_faithful();
        params
    }

    /// Degree count for `Q(zeta_4k, 2^(1/2k))`.
    ///
    /// `Q(2^(1/2k))` has degree `2k`; its only subfields that are normal over `Q`
    /// are `Q` and `Q(sqrt 2)`, and `sqrt 2` lies in `Q(zeta_N)` exactly when
    /// `8 | N`. The compositum therefore has degree `phi(N) * 2k / [8 | N ? 2 : 1]`,
    /// which has to match the size of the basis we reduce into.
    fn assert_faithful(&self) {
        let k = self.k as usize;
        let shared = if self.order.is_multiple_of(8) { 2 } else { 1 };
        let field_degree = self.zeta_degree * 2 * k / shared;
        assert_eq!(
            field_degree,
            self.zeta_degree * self.t_degree,
            "t relation for k = {} is not irreducible over Q(zeta_{})",
            self.k,
            self.order
        );
        assert_eq!(self.zeta_degree, euler_phi(self.order));
        // numeric sanity: Phi_N(zeta) = 0 and the t relation holds
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / (2.0 * k as f64));
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.cyclotomic.iter().enumerate() {
            acc += z.powu(j as u32) * (*c as f64);
        }
        assert!(acc.norm() < 1e-9, "cyclotomic polynomial does not vanish at zeta");
        let t = 2f64.powf(1.0 / (2.0 * k as f64));
        let lhs = t.powi(self.t_degree as i32);
        let rhs = if self.k.is_multiple_of(2) { 2f64.sqrt() } else { 2.0 };
        assert!((lhs - rhs).abs() < 1e-12);
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Order `N = 4k` of `zeta`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `phi(4k)`, the number of `zeta` powers in the basis.
    pub fn zeta_degree(&self) -> usize {
        self.zeta_degree
    }

    /// Number of `t` powers in the basis.
    pub fn t_degree(&self) -> usize {
        self.t_degree
    }

    /// Coefficients of `Phi_4k`, lowest degree first.
    pub fn cyclotomic(&self) -> &[i64] {
        &self.cyclotomic
    }
}

fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
fn cyclotomic_poly(n: usize) -> Vec<i64> {
    let mut memo: HashMap<usize, Vec<i64>> = HashMap::new();
    cyclotomic_rec(n, &mut memo)
}

fn cyclotomic_rec(n: usize, memo: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_rec(d, memo);
            num = poly_exact_div(&num, &div);
        }
    }
    memo.insert(n, num.clone());
    num
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for j in 0..=dn {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Shared reduction data for `k`; built once per `k` and cached.
pub fn ring(k: u32) -> Arc<RingParams> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RingParams>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&k) {
        return p.clone();
    }
    // built outside the lock; a concurrent duplicate is identical
    let built = Arc::new(RingParams::new(k));
    cache.lock().unwrap().entry(k).or_insert(built).clone()
}

/// An exact element of `Q(zeta)[t]` in canonical form.
#[derive(Clone)]
pub struct Scalar {
    ring: Option<Arc<RingParams>>,
    /// `(a, b, c)` meaning `c * zeta^a * t^b`, sorted by `(a, b)`, no zero `c`.
    terms: Vec<(u16, u16, BigRational)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            ring: None,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_q(q: Q) -> Self {
        Self::from_rational(BigRational::new(
            BigInt::from(*q.numer()),
            BigInt::from(*q.denom()),
        ))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Scalar {
            ring: None,
            terms: vec![(0, 0, q)],
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_q(Q::new(n, d))
    }

    fn from_terms(ring: Arc<RingParams>, map: BTreeMap<(u16, u16), BigRational>) -> Self {
        let terms: Vec<_> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b), c)| (a, b, c))
            .collect();
        let rational = terms.iter().all(|(a, b, _)| *a == 0 && *b == 0);
        Scalar {
            ring: if rational { None } else { Some(ring) },
            terms,
        }
    }

    /// `zeta^a` for `zeta = exp(pi i / 2k)`.
    pub fn zeta_pow(k: u32, a: i64) -> Self {
        let params = ring(k);
        let e = a.rem_euclid(params.order as i64) as usize;
        let mut map = BTreeMap::new();
        for (j, &c) in params.zeta_table[e].iter().enumerate() {
            if c != 0 {
                map.insert((j as u16, 0u16), BigRational::from_integer(BigInt::from(c)));
            }
        }
        Self::from_terms(params, map)
    }

    /// `t^s = 2^(s/2k)` for any integer `s`.
    pub fn t_pow(k: u32, s: i64) -> Self {
        let params = ring(k);
        let period = 2 * k as i64;
        let whole = s.div_euclid(period);
        let rem = s.rem_euclid(period) as usize;
        let two_whole = if whole >= 0 {
            BigRational::from_integer(BigInt::from(2).pow(whole as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(2).pow((-whole) as u32))
        };
        let d = params.t_degree;
        let basis = |b: usize| {
            let mut map = BTreeMap::new();
            map.insert((0u16, b as u16), BigRational::one());
            Self::from_terms(params.clone(), map)
        };
        let t_rem = if rem < d {
            basis(rem)
        } else {
            basis(d - 1).mul_exact(&basis(rem + 1 - d))
        };
        t_rem.scale(&two_whole)
    }

    /// `2^q`; `q` must have a denominator dividing `2k`.
    pub fn two_pow(k: u32, q: Q) -> Result<Self> {
        let scaled = q * Q::from_integer(2 * k as i64);
        if !scaled.is_integer() {
            return Err(Error::Precision {
                k,
                exponent: q.to_string(),
            });
        }
        Ok(Self::t_pow(k, scaled.to_integer()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, 0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// `k` of the ring this scalar needs, `None` for rationals.
    pub fn ring_k(&self) -> Option<u32> {
        self.ring.as_ref().map(|r| r.k)
    }

    /// Coefficient table entries `(a, b, c)` for `c * zeta^a * t^b`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.terms.iter().map(|(a, b, c)| (*a as usize, *b as usize, c))
    }

    fn common_ring(&self, other: &Scalar) -> Result<Option<Arc<RingParams>>> {
        match (&self.ring, &other.ring) {
            (Some(a), Some(b)) if a.k != b.k => Err(Error::RingMismatch {
                left: a.k,
                right: b.k,
            }),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        let ring = self.common_ring(other)?;
        let mut map: BTreeMap<(u16, u16), BigRational> = BTreeMap::new();
        for (a, b, c) in self.terms.iter().chain(other.terms.iter()) {
            *map.entry((*a, *b)).or_insert_with(BigRational::zero) += c;
        }
        Ok(match ring {
            Some(r) => Self::from_terms(r, map),
            None => Self::from_rational(map.remove(&(0, 0)).unwrap_or_else(BigRational::zero)),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        let ring = self.common_ring(other)?;
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(&q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(&q));
        }
        let params = ring.expect("non-rational scalars carry a ring");
        let order = params.order;
        let d = params.t_degree;
        let half = params.k as usize / 2;
        let mut map: BTreeMap<(u16, u16), BigRational> = BTreeMap::new();
        let mut push = |e: usize, b: usize, c: &BigRational| {
            for (j, &z) in params.zeta_table[e % order].iter().enumerate() {
                if z != 0 {
                    *map.entry((j as u16, b as u16))
                        .or_insert_with(BigRational::zero) += c * BigRational::from_integer(BigInt::from(z));
                }
            }
        };
        for (a1, b1, c1) in &self.terms {
            for (a2, b2, c2) in &other.terms {
                let mut c = c1 * c2;
                let e = (*a1 + *a2) as usize;
                let mut b = (*b1 + *b2) as usize;
                if b >= d {
                    b -= d;
                    if params.k % 2 == 1 {
                        c *= BigRational::from_integer(BigInt::from(2));
                        push(e, b, &c);
                    } else {
                        push(e + half, b, &c);
                        push(e + order - half, b, &c);
                    }
                } else {
                    push(e, b, &c);
                }
            }
        }
        Ok(Self::from_terms(params.clone(), map))
    }

    fn mul_exact(&self, other: &Scalar) -> Scalar {
        self.try_mul(other).expect("same ring")
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, b, c)| (*a, *b, c * q))
                .collect(),
        }
    }

    pub fn scale_q(&self, q: Q) -> Scalar {
        self.scale(&q_to_big(q))
    }

    /// Floating-point value with an error radius that covers rounding in the
    /// evaluation. Diagnostic only; the exact zero test is [`Scalar::is_zero`].
    pub fn enclosure(&self) -> (Complex64, f64) {
        let Some(params) = &self.ring else {
            let v = self.as_rational().unwrap().to_f64().unwrap_or(f64::NAN);
            return (Complex64::new(v, 0.0), v.abs() * 4.0 * f64::EPSILON);
        };
        let k = params.k as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut radius = 0.0;
        for (a, b, c) in &self.terms {
            let zeta = Complex64::from_polar(1.0, std::f64::consts::PI * (*a as f64) / (2.0 * k));
            let t = 2f64.powf(*b as f64 / (2.0 * k));
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let term = zeta * (t * cf);
            radius += term.norm() * 32.0 * f64::EPSILON;
            sum += term;
        }
        radius += sum.norm() * 8.0 * f64::EPSILON * self.terms.len() as f64;
        (sum, radius)
    }
}

pub(crate) fn q_to_big(q: Q) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ring_k() == other.ring_k() && self.terms == other.terms
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Text form: `(p/q)*zeta^a*t^b` terms joined by ` + `, ascending `a` then `b`.
/// Unit factors `zeta^0` and `t^0` and a denominator of 1 are omitted.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_integer() {
                write!(f, "({})", c.numer())?;
            } else {
                write!(f, "({}/{})", c.numer(), c.denom())?;
            }
            if *a > 0 {
                write!(f, "*zeta^{a}")?;
            }
            if *b > 0 {
                write!(f, "*t^{b}")?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for Scalar {
    /// Only rationals are ordered.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.as_rational()?.cmp(&other.as_rational()?))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, b, c)| (*a, *b, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// The operator impls panic on mixed rings; use `try_add`/`try_mul` to get an error.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Q> for Scalar {
    fn from(q: Q) -> Self {
        Scalar::from_q(q)
    }
}

/// `true` iff `|x|` is a nonnegative rational; used by tests on norms.
pub fn is_nonneg_rational(x: &Scalar) -> bool {
    x.as_rational().is_some_and(|q| !q.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(ring(3).zeta_degree(), 4);
        assert_eq!(ring(5).zeta_degree(), 8);
    }

    #[test]
    fn add_examples() {
        assert_eq!(Scalar::ratio(1, 2) + Scalar::ratio(1, 2), Scalar::one());
        let z = Scalar::zeta_pow(3, 1);
        assert!((&z + &(-&z)).is_zero());
        let t = Scalar::t_pow(1, 1);
        assert_eq!(&t + &t, t.scale_q(Q::from_integer(2)));
    }

    #[test]
    fn mul_examples() {
        for k in 1..=6 {
            assert_eq!(Scalar::zeta_pow(k, 2 * k as i64), Scalar::from_int(-1));
            let kk = k as i64;
            assert_eq!(Scalar::zeta_pow(k, kk) * Scalar::zeta_pow(k, kk), Scalar::from_int(-1));
        }
        for k in [1u32, 3, 5] {
            let t = Scalar::t_pow(k, 1);
            let rest = Scalar::t_pow(k, 2 * k as i64 - 1);
            assert_eq!(t * rest, Scalar::from_int(2));
        }
        // k = 2: t^2 = 2^(1/2) = zeta_8 + zeta_8^-1 with zeta_8 = zeta
        let t2 = Scalar::t_pow(2, 2);
        assert_eq!(&t2 * &t2, Scalar::from_int(2));
        let sqrt2 = Scalar::zeta_pow(2, 1) + Scalar::zeta_pow(2, -1);
        assert_eq!(t2, sqrt2);
        let (v, r) = t2.enclosure();
        assert!((v.re - 2f64.sqrt()).abs() <= r + 1e-15 && v.im.abs() <= r + 1e-15);
    }

    #[test]
    fn zeta_and_two_pow() {
        assert!(Scalar::zeta_pow(4, 0).is_one());
        assert!(Scalar::zeta_pow(4, 16).is_one());
        for k in 1..=4u32 {
            let v = Scalar::two_pow(k, Q::from_integer(-2 * k as i64)).unwrap();
            assert_eq!(v, Scalar::ratio(1, 1 << (2 * k)));
        }
        assert!(matches!(
            Scalar::two_pow(2, Q::new(1, 3)),
            Err(Error::Precision { .. })
        ));
        // sqrt 2 for odd k is t^k
        let s = Scalar::two_pow(3, Q::new(1, 2)).unwrap();
        assert_eq!(&s * &s, Scalar::from_int(2));
    }

    #[test]
    fn zero_test() {
        assert!(Scalar::zero().is_zero());
        for k in 1..=5 {
            assert!((Scalar::zeta_pow(k, 2 * k as i64) + Scalar::one()).is_zero());
            assert!(!(Scalar::t_pow(k, 1) - Scalar::one()).is_zero());
        }
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Scalar::zeta_pow(2, 1);
        let b = Scalar::zeta_pow(3, 1);
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch { left: 2, right: 3 }));
        assert!(a.try_mul(&Scalar::ratio(1, 3)).is_ok());
    }

    #[test]
    fn text_form() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::ratio(-3, 4).to_string(), "(-3/4)");
        let x = Scalar::zeta_pow(1, 1) + Scalar::t_pow(1, 1).scale_q(Q::new(1, 2));
        assert_eq!(x.to_string(), "(1/2)*t^1 + (1)*zeta^1");
    }
}
