//! Truncated Laurent series over a prime field.
//!
//! A [`LaurentSeries`] is either an exact Laurent polynomial or a series known
//! modulo `ε^prec`. Arithmetic tracks the absolute precision of every result,
//! and asking for the valuation of something that vanishes only up to
//! precision is an error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute precision for series that come out of inversion.
pub const DEFAULT_PREC: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Inverse by Fermat; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p as u64 - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    /// Reduces a signed integer into the field.
    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Valuation with a `+∞` for the exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    fn plus(self, other: Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "+inf"),
        }
    }
}

/// An element of `F_p((ε))`, exact or known modulo `ε^prec`.
///
/// Normal form: no leading or trailing zero coefficients, nothing stored at
/// or beyond `prec`, and `lead == 0` for a value with no stored terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    field: PrimeField,
    lead: i64,
    coeffs: Vec<u32>,
    prec: Option<i64>,
}

impl LaurentSeries {
    /// Builds a value from coefficients of `ε^lead, ε^(lead+1), ...`.
    pub fn new(field: PrimeField, lead: i64, coeffs: Vec<u32>, prec: Option<i64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % field.p).collect();
        let mut s = LaurentSeries {
            field,
            lead,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    pub fn exact(field: PrimeField, lead: i64, coeffs: Vec<u32>) -> Self {
        Self::new(field, lead, coeffs, None)
    }

    pub fn zero(field: PrimeField) -> Self {
        LaurentSeries {
            field,
            lead: 0,
            coeffs: Vec::new(),
            prec: None,
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::monomial(field, 1, 0)
    }

    /// `c·ε^e`, exact.
    pub fn monomial(field: PrimeField, c: u32, e: i64) -> Self {
        Self::new(field, e, vec![c], None)
    }

    /// Zero known only modulo `ε^prec`.
    pub fn big_o(field: PrimeField, prec: i64) -> Self {
        LaurentSeries {
            field,
            lead: 0,
            coeffs: Vec::new(),
            prec: Some(prec),
        }
    }

    /// Builds an exact polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms(field: PrimeField, terms: &[(i64, i64)]) -> Self {
        if terms.is_empty() {
            return Self::zero(field);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0u32; (hi - lo + 1) as usize];
        for &(e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = field.add(*slot, field.from_i64(c));
        }
        Self::exact(field, lo, coeffs)
    }

    fn normalize(&mut self) {
        if let Some(prec) = self.prec {
            let keep = (prec - self.lead).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let nz = self.coeffs.iter().position(|&c| c != 0);
        match nz {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.lead = 0;
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Absolute precision; `None` for an exact value.
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.prec.is_none() && self.coeffs.is_empty()
    }

    /// True when no nonzero coefficient is known.
    pub fn is_zero_known(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `ε^e` (zero outside the stored range).
    pub fn coeff(&self, e: i64) -> u32 {
        if e < self.lead {
            return 0;
        }
        self.coeffs
            .get((e - self.lead) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs of the nonzero stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.lead + k as i64, c))
    }

    /// Highest stored exponent, if any.
    pub fn degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lead + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn val(&self) -> Result<Val> {
        if !self.coeffs.is_empty() {
            return Ok(Val::Finite(self.lead));
        }
        match self.prec {
            None => Ok(Val::Infinite),
            Some(p) => Err(Error::PrecisionLoss(format!("value vanishes modulo ε^{p}"))),
        }
    }

    /// A lower bound for the valuation that never fails.
    pub fn val_lower_bound(&self) -> Val {
        if !self.coeffs.is_empty() {
            Val::Finite(self.lead)
        } else {
            match self.prec {
                None => Val::Infinite,
                Some(p) => Val::Finite(p),
            }
        }
    }

    /// Forgets everything at or beyond `ε^n`.
    pub fn truncate(&self, n: i64) -> Self {
        let prec = Some(self.prec.map_or(n, |p| p.min(n)));
        Self::new(self.field, self.lead, self.coeffs.clone(), prec)
    }

    /// Drops the terms of exponent `>= n` and declares the rest exact.
    pub fn polynomial_part_below(&self, n: i64) -> Result<Self> {
        if let Some(p) = self.prec {
            if p < n {
                return Err(Error::PrecisionLoss(format!(
                    "need coefficients below ε^{n}, known only below ε^{p}"
                )));
            }
        }
        let keep = (n - self.lead).clamp(0, self.coeffs.len() as i64) as usize;
        Ok(Self::exact(
            self.field,
            self.lead,
            self.coeffs[..keep].to_vec(),
        ))
    }

    /// Splits off the part of exponent `>= n`, which is returned as a series
    /// with the same precision; the remainder is exact.
    pub fn split_at(&self, n: i64) -> (Self, Self) {
        let cut = (n - self.lead).clamp(0, self.coeffs.len() as i64) as usize;
        let low = Self::exact(self.field, self.lead, self.coeffs[..cut].to_vec());
        let high = Self::new(
            self.field,
            self.lead + cut as i64,
            self.coeffs[cut..].to_vec(),
            self.prec,
        );
        (low, high)
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            field: self.field,
            lead: if self.coeffs.is_empty() {
                0
            } else {
                self.lead + k
            },
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + k),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let coeffs = self.coeffs.iter().map(|&a| f.mul(a, c)).collect();
        Self::new(f, self.lead, coeffs, self.prec)
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(
            self.field, other.field,
            "mixing series over different prime fields"
        );
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        self.check_field(other);
        let f = self.field;
        let prec = min_prec(self.prec, other.prec);
        if other.coeffs.is_empty() {
            return Self::new(f, self.lead, self.coeffs.clone(), prec);
        }
        if self.coeffs.is_empty() {
            let mut o = other.clone();
            if negate {
                o = -&o;
            }
            o.prec = prec;
            o.normalize();
            return o;
        }
        let lo = self.lead.min(other.lead);
        let hi = self.degree().unwrap().max(other.degree().unwrap());
        let hi = match prec {
            Some(p) => hi.min(p - 1),
            None => hi,
        };
        if hi < lo {
            return Self::new(f, 0, Vec::new(), prec);
        }
        let mut coeffs = vec![0u32; (hi - lo + 1) as usize];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let e = lo + k as i64;
            let a = self.coeff(e);
            let b = other.coeff(e);
            *c = if negate { f.sub(a, b) } else { f.add(a, b) };
        }
        Self::new(f, lo, coeffs, prec)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        let f = self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(f);
        }
        let a = self.val_lower_bound();
        let b = other.val_lower_bound();
        let pa = self.prec.map_or(Val::Infinite, Val::Finite);
        let pb = other.prec.map_or(Val::Infinite, Val::Finite);
        let prec = a.plus(pb).min(b.plus(pa)).finite();
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(f, 0, Vec::new(), prec);
        }
        let lead = self.lead + other.lead;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - lead).max(0) as usize);
        }
        let mut acc = vec![0u64; len];
        let p64 = f.p as u64;
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 || i >= len {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p64;
            }
        }
        Self::new(f, lead, acc.into_iter().map(|c| c as u32).collect(), prec)
    }

    /// Inverse with the default precision for non-monomial exact inputs.
    pub fn inv(&self) -> Result<Self> {
        self.inv_prec(DEFAULT_PREC)
    }

    /// Inverse; exact non-monomial inputs produce a series known modulo `ε^n`.
    pub fn inv_prec(&self, n: i64) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let v = match self.val()? {
            Val::Finite(v) => v,
            Val::Infinite => unreachable!(),
        };
        let f = self.field;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(f, f.inv(self.coeffs[0]), -v));
        }
        let rel = match self.prec {
            None => (n + v).max(1),
            Some(p) => p - v,
        };
        let rel = rel as usize;
        let u0inv = f.inv(self.coeffs[0]);
        let mut out = vec![0u32; rel];
        out[0] = u0inv;
        for k in 1..rel {
            let mut s = 0u64;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += self.coeffs[j] as u64 * out[k - j] as u64 % f.p as u64;
            }
            let s = (s % f.p as u64) as u32;
            out[k] = f.mul(f.neg(s), u0inv);
        }
        Ok(Self::new(f, -v, out, Some(-v + rel as i64)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Equality of the known parts modulo `ε^n`.
    pub fn eq_mod(&self, other: &Self, n: i64) -> bool {
        let d = self - other;
        match d.val_lower_bound() {
            Val::Infinite => true,
            Val::Finite(v) => v >= n,
        }
    }

    /// Random series of valuation exactly `n`, known modulo `ε^prec`.
    pub fn random_with_val<R: Rng + ?Sized>(
        field: PrimeField,
        n: i64,
        prec: i64,
        rng: &mut R,
    ) -> Self {
        assert!(prec > n, "working precision must exceed the valuation");
        let len = (prec - n) as usize;
        let mut coeffs: Vec<u32> = (0..len).map(|_| rng.gen_range(0..field.p)).collect();
        coeffs[0] = rng.gen_range(1..field.p);
        Self::new(field, n, coeffs, Some(prec))
    }

    /// Random exact polynomial with terms `ε^n .. ε^(n+len-1)` and nonzero lead.
    pub fn random_poly_with_val<R: Rng + ?Sized>(
        field: PrimeField,
        n: i64,
        len: usize,
        rng: &mut R,
    ) -> Self {
        assert!(len >= 1);
        let mut coeffs: Vec<u32> = (0..len).map(|_| rng.gen_range(0..field.p)).collect();
        coeffs[0] = rng.gen_range(1..field.p);
        Self::exact(field, n, coeffs)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            lead: self.lead,
            coeffs: self.coeffs.clone(),
            prec: match self.prec {
                None => PrecJson::Exact(ExactTag::Exact),
                Some(p) => PrecJson::Abs(p),
            },
        }
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, true)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        let f = self.field;
        LaurentSeries {
            field: f,
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            prec: self.prec,
        }
    }
}

impl PartialOrd for LaurentSeries {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order, used only to sort canonical forms deterministically.
impl Ord for LaurentSeries {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lead, &self.coeffs, self.prec).cmp(&(other.lead, &other.coeffs, other.prec))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "e")?,
                (1, e) => write!(f, "e^{e}")?,
                (c, 1) => write!(f, "{c}*e")?,
                (c, e) => write!(f, "{c}*e^{e}")?,
            }
        }
        match self.prec {
            Some(p) if first => write!(f, "O(e^{p})"),
            Some(p) => write!(f, " + O(e^{p})"),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactTag {
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PrecJson {
    Abs(i64),
    Exact(ExactTag),
}

/// Wire form `{"lead": int, "coeffs": [int], "prec": int | "exact"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub lead: i64,
    pub coeffs: Vec<u32>,
    pub prec: PrecJson,
}

impl SeriesJson {
    pub fn into_series(self, field: PrimeField) -> LaurentSeries {
        let prec = match self.prec {
            PrecJson::Abs(p) => Some(p),
            PrecJson::Exact(_) => None,
        };
        LaurentSeries::new(field, self.lead, self.coeffs, prec)
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
