//! Exact scalars: Laurent polynomials with rational coefficients in the
//! commuting parameters `q_ij` (`i < j`).
//!
//! Every coefficient in the library lives in this ring. The convention
//! `q_ii = 1`, `q_ji = q_ij^{-1}` is built into [`canonical_q`]; only the
//! parameters with `i < j` are ever stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A parameter `q_ij` with `i < j`. Indices are 0-based; printing is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamIndex {
    i: usize,
    j: usize,
}

impl ParamIndex {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i < j {
            Ok(Self { i, j })
        } else {
            Err(Error::ParamOrder { i, j })
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

impl fmt::Display for ParamIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}_{}", self.i + 1, self.j + 1)
    }
}

/// Exponent map of a q-monomial: sorted by parameter, no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExponents(Vec<(ParamIndex, i64)>);

impl QExponents {
    pub fn single(p: ParamIndex, e: i64) -> Self {
        if e == 0 {
            Self::default()
        } else {
            Self(vec![(p, e)])
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(ParamIndex, i64)> {
        self.0.iter()
    }

    pub fn get(&self, p: ParamIndex) -> i64 {
        self.0
            .binary_search_by(|(q, _)| q.cmp(&p))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    fn combine(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(pa, ea)), Some(&&(pb, eb))) => {
                    if pa < pb {
                        out.push((pa, ea));
                        a.next();
                    } else if pb < pa {
                        out.push((pb, eb));
                        b.next();
                    } else {
                        if ea + eb != 0 {
                            out.push((pa, ea + eb));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self(out)
    }

    fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::default();
        }
        Self(self.0.iter().map(|&(p, e)| (p, e * k)).collect())
    }
}

/// A single term `c * prod q_ij^{e_ij}` with `c != 0`. These are exactly the
/// units of the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMonomialTerm {
    coeff: BigRational,
    exps: QExponents,
}

impl QMonomialTerm {
    /// Returns `None` when `coeff` is zero.
    pub fn new(coeff: BigRational, exps: QExponents) -> Option<Self> {
        if coeff.is_zero() {
            None
        } else {
            Some(Self { coeff, exps })
        }
    }

    pub fn one() -> Self {
        Self {
            coeff: BigRational::one(),
            exps: QExponents::default(),
        }
    }

    pub fn minus_one() -> Self {
        Self {
            coeff: -BigRational::one(),
            exps: QExponents::default(),
        }
    }

    pub fn param(p: ParamIndex) -> Self {
        Self {
            coeff: BigRational::one(),
            exps: QExponents::single(p, 1),
        }
    }

    pub fn rational(c: BigRational) -> Option<Self> {
        Self::new(c, QExponents::default())
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exponents(&self) -> &QExponents {
        &self.exps
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            coeff: &self.coeff * &other.coeff,
            exps: self.exps.combine(&other.exps),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            coeff: self.coeff.recip(),
            exps: self.exps.scale(-1),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.coeff.recip() } else { self.coeff.clone() };
        let mut coeff = BigRational::one();
        for _ in 0..k.unsigned_abs() {
            coeff *= &base;
        }
        Self {
            coeff,
            exps: self.exps.scale(k),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeff: -&self.coeff,
            exps: self.exps.clone(),
        }
    }

    /// `self` when `negate` is false, `-self` otherwise.
    pub fn signed(self, negate: bool) -> Self {
        if negate {
            self.neg()
        } else {
            self
        }
    }

    pub fn to_scalar(&self) -> LaurentScalar {
        let mut terms = BTreeMap::new();
        terms.insert(self.exps.clone(), self.coeff.clone());
        LaurentScalar { terms }
    }
}

impl From<QMonomialTerm> for LaurentScalar {
    fn from(t: QMonomialTerm) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(t.exps, t.coeff);
        LaurentScalar { terms }
    }
}

/// Numeric values for parameters, used by [`LaurentScalar::eval`].
pub type Assignment = BTreeMap<ParamIndex, BigRational>;

/// Element of `Q[q_ij^{±1}]` in canonical form: no two terms share an exponent
/// map and no stored coefficient is zero. Zero is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentScalar {
    terms: BTreeMap<QExponents, BigRational>,
}

/// `q_ij` as a scalar for any pair of 0-based indices below `n`.
pub fn canonical_q(i: usize, j: usize, n: usize) -> Result<LaurentScalar> {
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index: index + 1, n });
        }
    }
    Ok(match i.cmp(&j) {
        std::cmp::Ordering::Equal => LaurentScalar::one(),
        std::cmp::Ordering::Less => QMonomialTerm::param(ParamIndex { i, j }).into(),
        std::cmp::Ordering::Greater => QMonomialTerm::param(ParamIndex { i: j, j: i }).inverse().into(),
    })
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        QMonomialTerm::one().into()
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        QMonomialTerm::rational(c).map(Into::into).unwrap_or_default()
    }

    pub fn param(p: ParamIndex) -> Self {
        QMonomialTerm::param(p).into()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_empty() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QExponents, &BigRational)> {
        self.terms.iter()
    }

    /// The single term if this scalar is a unit.
    pub fn as_unit(&self) -> Option<QMonomialTerm> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(QMonomialTerm {
            coeff: c.clone(),
            exps: e.clone(),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant term (coefficient of the empty exponent map).
    pub fn constant(&self) -> BigRational {
        self.terms
            .get(&QExponents::default())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, t: &QMonomialTerm) {
        self.add_raw(t.exps.clone(), t.coeff.clone());
    }

    fn add_raw(&mut self, e: QExponents, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mul_term(&self, t: &QMonomialTerm) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.combine(&t.exps), c * &t.coeff))
            .collect();
        Self { terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplicative inverse; only units (single terms) are invertible.
    pub fn invert(&self) -> Result<Self> {
        self.as_unit()
            .map(|t| t.inverse().into())
            .ok_or_else(|| Error::NotAUnit(self.to_string()))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Ok(self
                .as_unit()
                .ok_or_else(|| Error::NotAUnit(self.to_string()))?
                .pow(k)
                .into());
        }
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        Ok(out)
    }

    pub fn parameters(&self) -> BTreeSet<ParamIndex> {
        self.terms.keys().flat_map(|e| e.iter().map(|&(p, _)| p)).collect()
    }

    /// Exact rational value after substituting numbers for the parameters.
    pub fn eval(&self, assignment: &Assignment) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for &(p, k) in e.iter() {
                let x = assignment
                    .get(&p)
                    .ok_or_else(|| Error::MissingParameter(p.to_string()))?;
                if x.is_zero() {
                    return Err(Error::ZeroParameterValue(p.to_string()));
                }
                let term = QMonomialTerm::rational(x.clone()).expect("nonzero").pow(k);
                v *= term.coeff;
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes the assigned parameters by their values, leaving the rest symbolic.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &(p, k) in e.iter() {
                match assignment.get(&p) {
                    Some(x) if x.is_zero() => return Err(Error::ZeroParameterValue(p.to_string())),
                    Some(x) => coeff *= QMonomialTerm::rational(x.clone()).expect("nonzero").pow(k).coeff,
                    None => kept.push((p, k)),
                }
            }
            out.add_raw(QExponents(kept), coeff);
        }
        Ok(out)
    }

    fn fmt_term(e: &QExponents, c: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if e.is_empty() {
            return write!(f, "{}", c);
        }
        if c.is_one() {
        } else if (-c).is_one() {
            write!(f, "-")?;
        } else {
            write!(f, "{}*", c)?;
        }
        for (k, (p, x)) in e.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *x == 1 {
                write!(f, "{}", p)?;
            } else {
                write!(f, "{}^{}", p, x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                Self::fmt_term(e, c, f)?;
            } else if c.is_negative() {
                write!(f, " - ")?;
                Self::fmt_term(e, &-c, f)?;
            } else {
                write!(f, " + ")?;
                Self::fmt_term(e, c, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for QMonomialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        LaurentScalar::fmt_term(&self.exps, &self.coeff, f)
    }
}

impl Add<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_raw(e.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Sub<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self + &(-rhs)
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl Mul<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_raw(ea.combine(eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}
