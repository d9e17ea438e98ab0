use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::qscalar::{LaurentScalar, QMonomialTerm};

/// Sorted monomial `x_1^{a_1} ... x_n^{a_n}`; the zero vector is `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn generator(i: usize, n: usize) -> Self {
        Self::power(i, 1, n)
    }

    pub fn power(i: usize, e: u32, n: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Self(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// Exponent-wise sum (the commutative product, ignoring scalars).
    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut v = self.0.clone();
        v[i] = e;
        Self(v)
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.total_degree() as usize);
        for (i, &a) in self.0.iter().enumerate() {
            letters.extend(std::iter::repeat_n(i, a as usize));
        }
        Word(letters)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, a)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// An arbitrary (possibly unsorted) product of generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Exponent vector of a sorted word.
    pub fn to_monomial(&self, n: usize) -> Monomial {
        let mut v = vec![0; n];
        for &i in &self.0 {
            v[i] += 1;
        }
        Monomial(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &i in &self.0 {
            write!(f, "x{}", i + 1)?;
        }
        Ok(())
    }
}

/// Finite linear combination of sorted monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, LaurentScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Monomial::one(n))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, LaurentScalar::one())
    }

    pub fn term(m: Monomial, c: LaurentScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, &c);
        out
    }

    pub fn generator(i: usize, n: usize) -> Self {
        Self::monomial(Monomial::generator(i, n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> LaurentScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-LaurentScalar::one()))
    }

    pub fn scale(&self, c: &LaurentScalar) -> AlgebraElement {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    pub fn scale_unit(&self, u: &QMonomialTerm) -> AlgebraElement {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_term(u))).collect(),
        }
    }

    pub fn map_coefficients(
        &self,
        mut f: impl FnMut(&LaurentScalar) -> Result<LaurentScalar>,
    ) -> Result<AlgebraElement> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> AlgebraElement {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the identity monomial (the augmentation).
    pub fn augmentation(&self) -> LaurentScalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }
}

impl FromIterator<(Monomial, LaurentScalar)> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = (Monomial, LaurentScalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, &c);
        }
        out
    }
}

/// Writes a coefficient/monomial pair in the element grammar.
pub(crate) fn fmt_term(m: &Monomial, c: &LaurentScalar) -> String {
    if m.is_one() {
        return if c.len() > 1 { format!("({c})") } else { c.to_string() };
    }
    if c.is_one() {
        return m.to_string();
    }
    if c.len() > 1 {
        return format!("({c})*{m}");
    }
    let s = c.to_string();
    if s == "-1" {
        format!("-{m}")
    } else {
        format!("{s}*{m}")
    }
}

impl fmt::Display for AlgebraElement {
    /// Terms from the largest exponent vector (lexicographically) down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = fmt_term(m, c);
            if k == 0 {
                write!(f, "{s}")?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}
