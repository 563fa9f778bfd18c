//! Exact arithmetic in the ring of cyclotomic integers ℤ[ζ_m].
//!
//! Values are kept in the power basis `1, ζ, …, ζ^(φ(m)-1)` modulo the
//! m-th cyclotomic polynomial. That basis is a ℚ-basis of ℚ(ζ_m), so a value
//! is a rational integer exactly when every non-constant coefficient is zero,
//! and equal values always have identical coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// The m-th cyclotomic polynomial, by exact division of `x^m - 1` by the
/// cyclotomic polynomials of the proper divisors of `m`.
///
/// Panics if `m == 0`.
pub fn cyclotomic_poly(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    static CACHE: OnceLock<RwLock<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = IntPolynomial::monomial(m as usize).sub(&IntPolynomial::one());
    for d in (1..m).filter(|d| m % d == 0) {
        let (q, r) = num.div_rem_monic(&cyclotomic_poly(d));
        debug_assert!(r.is_zero());
        num = q;
    }
    cache.write().unwrap().insert(m, num.clone());
    num
}

/// Euler's totient.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Reduction data for one conductor: `powers[e]` is `x^e mod Φ_m`.
#[derive(Debug)]
struct CyclotomicRing {
    conductor: u64,
    degree: usize,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicRing {
    fn build(m: u64) -> Self {
        let phi = cyclotomic_poly(m);
        let degree = phi.degree().expect("cyclotomic polynomial is nonzero");
        let phi_low: Vec<i64> = phi.coeffs()[..degree]
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
            .collect();
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        if degree > 0 {
            cur[0] = 1;
        }
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x, then fold the overflow term back with x^d = -(Φ_m - x^d)
            let top = cur.last().copied().unwrap_or(0);
            cur.rotate_right(1);
            if degree > 0 {
                cur[0] = 0;
            }
            for (c, p) in cur.iter_mut().zip(&phi_low) {
                *c = c.checked_sub(top * p).expect("power table overflow");
            }
        }
        Self {
            conductor: m,
            degree,
            powers,
        }
    }

    fn get(m: u64) -> Arc<Self> {
        static RINGS: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicRing>>>> = OnceLock::new();
        let rings = RINGS.get_or_init(Default::default);
        if let Some(r) = rings.read().unwrap().get(&m) {
            return Arc::clone(r);
        }
        let ring = Arc::new(Self::build(m));
        rings
            .write()
            .unwrap()
            .entry(m)
            .or_insert_with(|| Arc::clone(&ring))
            .clone()
    }

    /// Accumulates `weight · x^k` into `acc`, reducing `k` modulo the conductor.
    fn accumulate(&self, acc: &mut [BigInt], k: u64, weight: &BigInt) {
        let row = &self.powers[(k % self.conductor) as usize];
        for (a, &p) in acc.iter_mut().zip(row) {
            if p != 0 {
                *a += weight * p;
            }
        }
    }
}

/// An element of ℤ[ζ_m] in canonical form.
#[derive(Clone)]
pub struct CyclotomicInt {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    /// Panics if `m == 0`.
    pub fn zero(m: u64) -> Self {
        let ring = CyclotomicRing::get(m);
        let coeffs = vec![BigInt::zero(); ring.degree];
        Self { ring, coeffs }
    }

    pub fn from_int(m: u64, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = value.into();
        z
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    /// `ζ_m^e`; negative exponents are taken modulo `m`.
    pub fn root_of_unity(m: u64, e: i64) -> Self {
        let ring = CyclotomicRing::get(m);
        let k = e.rem_euclid(m as i64) as usize;
        let coeffs = ring.powers[k].iter().map(|&c| BigInt::from(c)).collect();
        Self { ring, coeffs }
    }

    /// `Σ_e counts[e] · ζ_m^e`. `counts` has one entry per exponent in `0..m`.
    ///
    /// Panics if `counts.len() != m`.
    pub fn from_exponent_counts(m: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, m, "one count per exponent");
        let ring = CyclotomicRing::get(m);
        let mut acc = vec![0i128; ring.degree];
        for (e, &n) in counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&ring.powers[e]) {
                *a += n as i128 * p as i128;
            }
        }
        let coeffs = acc.into_iter().map(BigInt::from).collect();
        Self { ring, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.ring.conductor
    }

    /// Canonical coefficients; the length is always `φ(m)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conductor() == other.conductor() {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor(), other.conductor()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.ring.degree;
        let mut prod = vec![BigInt::zero(); (2 * d).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs = vec![BigInt::zero(); d];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                coeffs[k] += c;
            } else {
                self.ring.accumulate(&mut coeffs, k as u64, &c);
            }
        }
        Ok(Self {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Complex conjugation: `ζ^e ↦ ζ^(-e)`, extended linearly.
    pub fn conj(&self) -> Self {
        let m = self.conductor();
        let mut coeffs = vec![BigInt::zero(); self.ring.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.ring.accumulate(&mut coeffs, (m - i as u64) % m, c);
            }
        }
        Self {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    /// `z · conj(z)`.
    pub fn abs_square(&self) -> Self {
        self * &self.conj()
    }

    /// The value as an integer when it lies in ℤ.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the value in ℤ[ζ_n] for a multiple `n` of the conductor.
    pub fn embed(&self, n: u64) -> Result<Self> {
        let m = self.conductor();
        if n % m != 0 {
            return Err(Error::ConductorMismatch(m, n));
        }
        let step = n / m;
        let ring = CyclotomicRing::get(n);
        let mut coeffs = vec![BigInt::zero(); ring.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                ring.accumulate(&mut coeffs, i as u64 * step, c);
            }
        }
        Ok(Self { ring, coeffs })
    }

    /// Image under the embedding `ζ_m ↦ e^(2πi/m)`, as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let theta = std::f64::consts::TAU * k as f64 / m;
                (re + c * theta.cos(), im + c * theta.sin())
            })
    }
}

/// The non-negative integer `α` with `α² = v`, if one exists.
pub fn integer_sqrt_if_square(v: &BigInt) -> Result<Option<BigInt>> {
    if v.is_negative() {
        return Err(Error::NegativeSquareRoot(v.to_string()));
    }
    let r = v.sqrt();
    Ok((&r * &r == *v).then_some(r))
}

/// True when `z` is a rational integer that is a perfect square.
pub fn is_integer_square(z: &CyclotomicInt) -> bool {
    z.as_rational_integer()
        .filter(|v| !v.is_negative())
        .and_then(|v| integer_sqrt_if_square(&v).ok().flatten())
        .is_some()
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInt {}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInt({}; {})", self.conductor(), self)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "z{}", if k == 1 { String::new() } else { format!("^{k}") })?;
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CyclotomicInt> for &CyclotomicInt {
            type Output = CyclotomicInt;

            /// Panics on conductor mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &CyclotomicInt) -> CyclotomicInt {
                self.$try(rhs).expect("cyclotomic conductor mismatch")
            }
        }

        impl $trait for CyclotomicInt {
            type Output = CyclotomicInt;

            fn $method(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        -&self
    }
}

/// Least common multiple, used to pick a shared conductor.
pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
