//! The free resolution `K` of the trivial module over the quantum symmetric
//! algebra `S`: generators `Phi(a)`, the differential, and the contracting
//! homotopy.
//!
//! All coefficients live in `S`, so products are taken in [`AlgebraMode::S`]
//! (lower-order terms ignored, `x_i^{N_i} = 0` for `i < t`).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentations::{skew_product, AlgebraElement, AlgebraMode, Monomial, Presentation};
use crate::qscalar::{LaurentScalar, QMonomialTerm};
use crate::report::Report;
use crate::Fault;

/// A free generator `Phi(a_1, ..., a_n)` of homological degree `sum a_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhiGenerator(Vec<u32>);

impl PhiGenerator {
    pub fn new(a: Vec<u32>) -> Self {
        Self(a)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(i: usize, n: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Self(a)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// `a_i <= 1` for the non-nilpotent positions `i >= t`.
    pub fn is_valid(&self, pres: &Presentation) -> bool {
        self.0.len() == pres.n() && self.0[pres.t()..].iter().all(|&a| a <= 1)
    }

    /// `Phi(a + delta e_i)`, or `None` when an entry would turn negative.
    pub fn shifted(&self, i: usize, delta: i64) -> Option<Self> {
        let v = self.0[i] as i64 + delta;
        if v < 0 {
            return None;
        }
        let mut a = self.0.clone();
        a[i] = v as u32;
        Some(Self(a))
    }
}

impl fmt::Display for PhiGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "Phi({})", parts.join(","))
    }
}

/// An element of the free module `K_m`: `sum f_a Phi(a)` with `f_a` in `S`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolutionElement {
    terms: BTreeMap<PhiGenerator, AlgebraElement>,
}

impl ResolutionElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: PhiGenerator, n: usize) -> Self {
        Self::term(AlgebraElement::one(n), g)
    }

    pub fn term(f: AlgebraElement, g: PhiGenerator) -> Self {
        let mut out = Self::zero();
        out.add_term(g, &f);
        out
    }

    /// `c x^m Phi(a)`.
    pub fn basis(c: LaurentScalar, m: Monomial, g: PhiGenerator) -> Self {
        Self::term(AlgebraElement::term(m, c), g)
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

    pub fn iter(&self) -> impl Iterator<Item = (&PhiGenerator, &AlgebraElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &PhiGenerator) -> AlgebraElement {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    /// The common homological degree, `None` for zero.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut deg = None;
        for g in self.terms.keys() {
            match deg {
                None => deg = Some(g.degree()),
                Some(d) if d != g.degree() => return Err(Error::MixedDegree(d, g.degree())),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn add_term(&mut self, g: PhiGenerator, f: &AlgebraElement) {
        if f.is_zero() {
            return;
        }
        let entry = self.terms.entry(g.clone()).or_default();
        entry.add_assign(f);
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_assign(&mut self, other: &ResolutionElement) {
        for (g, f) in &other.terms {
            self.add_term(g.clone(), f);
        }
    }

    pub fn add(&self, other: &ResolutionElement) -> ResolutionElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &ResolutionElement) -> ResolutionElement {
        self.add(&other.scale(&LaurentScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentScalar) -> ResolutionElement {
        let mut out = Self::zero();
        for (g, f) in &self.terms {
            out.add_term(g.clone(), &f.scale(c));
        }
        out
    }

    /// The `k`-basis expansion `(c, x^m, Phi(a))`.
    pub fn basis_terms(&self) -> impl Iterator<Item = (&LaurentScalar, &Monomial, &PhiGenerator)> {
        self.terms
            .iter()
            .flat_map(|(g, f)| f.iter().map(move |(m, c)| (c, m, g)))
    }

    /// Applies `epsilon` to each coefficient.
    pub fn augmentation(&self) -> BTreeMap<PhiGenerator, LaurentScalar> {
        self.terms
            .iter()
            .map(|(g, f)| (g.clone(), f.augmentation()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

impl fmt::Display for ResolutionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.len() == 1 && c.iter().next().is_some_and(|(m, s)| m.is_one() && s.is_one()) {
                write!(f, "{g}")?;
            } else {
                write!(f, "({c})*{g}")?;
            }
        }
        Ok(())
    }
}

/// All `Phi(a)` with `sum a = m`, `a_i` unbounded for `i < t` and `a_i <= 1`
/// otherwise, in decreasing lexicographic order.
pub fn generators_in_degree(m: usize, pres: &Presentation) -> Vec<PhiGenerator> {
    fn go(k: usize, left: usize, t: usize, cur: &mut Vec<u32>, out: &mut Vec<PhiGenerator>) {
        let n = cur.len();
        if k == n {
            if left == 0 {
                out.push(PhiGenerator(cur.clone()));
            }
            return;
        }
        let cap = if k < t { left } else { left.min(1) };
        for a in (0..=cap).rev() {
            cur[k] = a as u32;
            go(k + 1, left - a, t, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    go(0, m, pres.t(), &mut vec![0; pres.n()], &mut out);
    out
}

/// `sigma_i(a)`: `1` for odd `a`, `N_i - 1` for even `a` when `i < t`; `1` otherwise.
pub fn sigma(i: usize, a: u32, pres: &Presentation) -> u32 {
    match pres.big_n(i) {
        Some(big_n) if a.is_multiple_of(2) => big_n - 1,
        _ => 1,
    }
}

/// `tau_i(a) = sigma_i(1) + ... + sigma_i(a)`.
pub fn tau(i: usize, a: u32, pres: &Presentation) -> u64 {
    match pres.big_n(i) {
        Some(big_n) => (a / 2) as u64 * big_n as u64 + (a % 2) as u64,
        None => a as u64,
    }
}

fn sign(odd: bool) -> QMonomialTerm {
    QMonomialTerm::one().signed(odd)
}

/// Right multiplication `f * (u x^m)` in `S`.
pub(crate) fn right_mul(f: &AlgebraElement, u: &QMonomialTerm, m: &Monomial, pres: &Presentation) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (a, c) in f.iter() {
        if let Some((v, prod)) = skew_product(a, m, pres, AlgebraMode::S) {
            out.add_term(prod, &c.mul_term(&u.mul(&v)));
        }
    }
    out
}

/// The resolution attached to a presentation (read as `S`), optionally with a
/// deliberately corrupted differential.
#[derive(Clone, Copy, Debug)]
pub struct Resolution<'a> {
    pres: &'a Presentation,
    fault: Option<Fault>,
}

impl<'a> Resolution<'a> {
    pub fn new(pres: &'a Presentation) -> Self {
        Self { pres, fault: None }
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    pub fn presentation(&self) -> &'a Presentation {
        self.pres
    }

    fn tau_d(&self, l: usize, a: u32) -> u64 {
        let t = tau(l, a, self.pres);
        if self.fault == Some(Fault::DExponent) && a > 0 {
            t + 1
        } else {
            t
        }
    }

    /// `d_i(Phi(a)) = u x_i^{sigma_i(a_i)} Phi(a - e_i)` with
    /// `u = prod_{l>i} (-1)^{a_l} q_li^{sigma_i(a_i) tau_l(a_l)}`; `None` when `a_i = 0`.
    pub fn d_component(&self, i: usize, g: &PhiGenerator) -> Option<(QMonomialTerm, Monomial, PhiGenerator)> {
        let target = g.shifted(i, -1)?;
        let pres = self.pres;
        let s = sigma(i, g.get(i), pres);
        let mut u = QMonomialTerm::one();
        for l in i + 1..pres.n() {
            let al = g.get(l);
            let e = s as i64 * self.tau_d(l, al) as i64;
            u = u.mul(&sign(al % 2 == 1)).mul(&pres.q(l, i).pow(e));
        }
        Some((u, Monomial::power(i, s, pres.n()), target))
    }

    /// `d_i`, extended `S`-linearly.
    pub fn partial(&self, i: usize, e: &ResolutionElement) -> ResolutionElement {
        let mut out = ResolutionElement::zero();
        for (g, f) in e.iter() {
            if let Some((u, x, target)) = self.d_component(i, g) {
                out.add_term(target, &right_mul(f, &u, &x, self.pres));
            }
        }
        out
    }

    /// `d = d_1 + ... + d_n` on a homogeneous element of positive degree.
    pub fn differential(&self, e: &ResolutionElement) -> Result<ResolutionElement> {
        match e.degree()? {
            Some(0) => Err(Error::DegreeZero),
            _ => Ok(self.d_unchecked(e)),
        }
    }

    fn d_unchecked(&self, e: &ResolutionElement) -> ResolutionElement {
        let mut out = ResolutionElement::zero();
        for i in 0..self.pres.n() {
            out.add_assign(&self.partial(i, e));
        }
        out
    }

    /// The inverse of the `d_l` scalar on `Phi(a + e_l)`:
    /// `prod_{m>l} (-1)^{a_m} q_ml^{-sigma_l(a_l+1) tau_m(a_m)}`.
    fn homotopy_scalar(&self, l: usize, a: &PhiGenerator) -> QMonomialTerm {
        let pres = self.pres;
        let s = sigma(l, a.get(l) + 1, pres) as i64;
        let mut u = QMonomialTerm::one();
        for m in l + 1..pres.n() {
            let am = a.get(m);
            u = u
                .mul(&sign(am % 2 == 1))
                .mul(&pres.q(m, l).pow(-s * tau(m, am, pres) as i64));
        }
        u
    }

    /// `s_l(x^j Phi(a))` on a `k`-basis element.
    pub fn homotopy_component(&self, l: usize, j: &Monomial, a: &PhiGenerator) -> ResolutionElement {
        let pres = self.pres;
        let n = pres.n();
        let jl = j.exponent(l);
        let al = a.get(l);
        // x^j = kappa * eta * x_l^{j_l}
        let eta = j.with_exponent(l, 0);
        let (coef, _) = skew_product(&eta, &Monomial::power(l, jl, n), pres, AlgebraMode::S)
            .expect("a reduced monomial does not vanish");
        let kappa = coef.inverse();
        let power = match pres.big_n(l) {
            Some(_) if al.is_multiple_of(2) => {
                if jl == 0 {
                    return ResolutionElement::zero();
                }
                jl - 1
            }
            Some(big_n) => {
                if jl != big_n - 1 {
                    return ResolutionElement::zero();
                }
                0
            }
            None => {
                if jl == 0 || al == 1 {
                    return ResolutionElement::zero();
                }
                jl - 1
            }
        };
        let target = a.shifted(l, 1).expect("raising an entry");
        let u = self.homotopy_scalar(l, a).mul(&kappa);
        let f = right_mul(&AlgebraElement::monomial(eta), &u, &Monomial::power(l, power, n), pres);
        ResolutionElement::term(f, target)
    }

    /// `C = #{i : j_i = 0 and a_i = 0}`.
    pub fn fixed_count(j: &Monomial, a: &PhiGenerator) -> usize {
        (0..a.exponents().len())
            .filter(|&i| j.exponent(i) == 0 && a.get(i) == 0)
            .count()
    }

    /// `s = (s_1 + ... + s_n) / (n - C)` on a basis element, `0` when `n = C`.
    pub fn homotopy_basis(&self, j: &Monomial, a: &PhiGenerator) -> ResolutionElement {
        let n = self.pres.n();
        let c = Self::fixed_count(j, a);
        if c == n {
            return ResolutionElement::zero();
        }
        let mut out = ResolutionElement::zero();
        for l in 0..n {
            out.add_assign(&self.homotopy_component(l, j, a));
        }
        let factor = BigRational::new(1.into(), ((n - c) as i64).into());
        out.scale(&LaurentScalar::from_rational(factor))
    }

    /// `s`, extended `k`-linearly.
    pub fn homotopy(&self, e: &ResolutionElement) -> ResolutionElement {
        let mut out = ResolutionElement::zero();
        for (c, m, g) in e.basis_terms() {
            out.add_assign(&self.homotopy_basis(m, g).scale(c));
        }
        out
    }

    /// `s_l`, extended `k`-linearly.
    pub fn homotopy_partial(&self, l: usize, e: &ResolutionElement) -> ResolutionElement {
        let mut out = ResolutionElement::zero();
        for (c, m, g) in e.basis_terms() {
            out.add_assign(&self.homotopy_component(l, m, g).scale(c));
        }
        out
    }

    /// `d^2 = 0`, `d_i d_j + d_j d_i = 0` and `d_i d_i = 0` on every generator
    /// in degrees `2..=max_degree`.
    pub fn verify_complex(&self, max_degree: usize) -> Report {
        let n = self.pres.n();
        let gens: Vec<PhiGenerator> = (2..=max_degree)
            .flat_map(|m| generators_in_degree(m, self.pres))
            .collect();
        let rows: Vec<Vec<(String, Option<String>)>> = gens
            .par_iter()
            .map(|g| {
                let e = ResolutionElement::generator(g.clone(), n);
                let mut rows = Vec::new();
                let dd = self.d_unchecked(&self.d_unchecked(&e));
                rows.push((format!("d^2 {g}"), (!dd.is_zero()).then(|| dd.to_string())));
                let parts: Vec<ResolutionElement> = (0..n).map(|i| self.partial(i, &e)).collect();
                for i in 0..n {
                    for j in i..n {
                        let mut r = self.partial(i, &parts[j]);
                        if i != j {
                            r.add_assign(&self.partial(j, &parts[i]));
                        }
                        let object = if i == j {
                            format!("d{0}d{0} {g}", i + 1)
                        } else {
                            format!("d{}d{}+d{}d{} {g}", i + 1, j + 1, j + 1, i + 1)
                        };
                        rows.push((object, (!r.is_zero()).then(|| r.to_string())));
                    }
                }
                rows
            })
            .collect();
        let mut report = Report::new("complex");
        for (object, residue) in rows.into_iter().flatten() {
            report.record(object, residue);
        }
        report
    }

    /// `(sd + ds)(x^j Phi(a)) = x^j Phi(a)` on every basis element of degree
    /// `1..=max_degree` with `j_i < N_i` (`i < t`) and `j_i <= exp_bound` otherwise.
    ///
    /// With `per_index` set, also checks `s_l d_l + d_l s_l` (identity unless
    /// `j_l = a_l = 0`, where it is zero) and `s_l d_i + d_i s_l = 0` for `i != l`.
    pub fn verify_homotopy(&self, max_degree: usize, exp_bound: u32, per_index: bool) -> Report {
        let pres = self.pres;
        let n = pres.n();
        let monos = box_monomials(pres, exp_bound);
        let cases: Vec<(Monomial, PhiGenerator)> = (1..=max_degree)
            .flat_map(|m| generators_in_degree(m, pres))
            .flat_map(|g| monos.iter().map(move |j| (j.clone(), g.clone())))
            .collect();
        let rows: Vec<Vec<(String, Option<String>)>> = cases
            .par_iter()
            .map(|(j, g)| {
                let x = ResolutionElement::basis(LaurentScalar::one(), j.clone(), g.clone());
                let object = format!("{}", x);
                let lhs = self
                    .homotopy(&self.d_unchecked(&x))
                    .add(&self.d_unchecked(&self.homotopy(&x)));
                let r = lhs.sub(&x);
                let mut rows = vec![(format!("sd+ds {object}"), (!r.is_zero()).then(|| r.to_string()))];
                if per_index {
                    for l in 0..n {
                        for i in 0..n {
                            let v = self
                                .homotopy_partial(l, &self.partial(i, &x))
                                .add(&self.partial(i, &self.homotopy_partial(l, &x)));
                            let expected = if i == l && !(j.exponent(l) == 0 && g.get(l) == 0) {
                                x.clone()
                            } else {
                                ResolutionElement::zero()
                            };
                            let r = v.sub(&expected);
                            rows.push((
                                format!("s{}d{}+d{}s{} {object}", l + 1, i + 1, i + 1, l + 1),
                                (!r.is_zero()).then(|| r.to_string()),
                            ));
                        }
                    }
                }
                rows
            })
            .collect();
        let mut report = Report::new("homotopy");
        for (object, residue) in rows.into_iter().flatten() {
            report.record(object, residue);
        }
        report
    }

    /// Every nonzero basis monomial `x^j` is, up to a unit, `d` of
    /// `x^{j - e_i} Phi(e_i)` with `i` the first index where `j_i != 0`; and
    /// `epsilon d = 0` on degree-one generators.
    pub fn verify_exactness_at_zero(&self, exp_bound: u32) -> Report {
        let pres = self.pres;
        let n = pres.n();
        let mut report = Report::new("exactness");
        for i in 0..n {
            let g = PhiGenerator::unit(i, n);
            let d = self.d_unchecked(&ResolutionElement::generator(g.clone(), n));
            let eps = d.augmentation();
            report.record(format!("epsilon d {g}"), (!eps.is_empty()).then(|| format!("{eps:?}")));
        }
        for j in box_monomials(pres, exp_bound) {
            if j.is_one() {
                continue;
            }
            let i = (0..n).find(|&k| j.exponent(k) != 0).expect("j is not 1");
            let pre = ResolutionElement::basis(
                LaurentScalar::one(),
                j.with_exponent(i, j.exponent(i) - 1),
                PhiGenerator::unit(i, n),
            );
            let image = self.d_unchecked(&pre);
            let zero = PhiGenerator::zero(n);
            let f = image.coefficient(&zero);
            let ok = image.len() == 1 && f.len() == 1 && f.iter().next().is_some_and(|(m, c)| *m == j && c.is_unit());
            report.record(format!("d({pre}) ~ {j}*{zero}"), (!ok).then(|| image.to_string()));
        }
        report
    }
}

/// Monomials with `j_i < N_i` for `i < t` and `j_i <= exp_bound` otherwise.
pub fn box_monomials(pres: &Presentation, exp_bound: u32) -> Vec<Monomial> {
    let n = pres.n();
    let caps: Vec<u32> = (0..n)
        .map(|i| pres.big_n(i).map_or(exp_bound, |big_n| big_n - 1))
        .collect();
    let mut out = vec![Monomial::one(n)];
    for (i, &cap) in caps.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|m| (0..=cap).map(move |e| m.with_exponent(i, e)))
            .collect();
    }
    out.sort();
    out
}

pub fn differential(e: &ResolutionElement, pres: &Presentation) -> Result<ResolutionElement> {
    Resolution::new(pres).differential(e)
}

pub fn homotopy(e: &ResolutionElement, pres: &Presentation) -> ResolutionElement {
    Resolution::new(pres).homotopy(e)
}

pub fn verify_complex(pres: &Presentation, max_degree: usize) -> Report {
    Resolution::new(pres).verify_complex(max_degree)
}

pub fn verify_homotopy(pres: &Presentation, max_degree: usize, exp_bound: u32) -> Report {
    Resolution::new(pres).verify_homotopy(max_degree, exp_bound, true)
}

pub fn verify_exactness_at_zero(pres: &Presentation, exp_bound: u32) -> Report {
    Resolution::new(pres).verify_exactness_at_zero(exp_bound)
}

/// The default homotopy exponent bound `max(N_i, 4)`.
pub fn default_exp_bound(pres: &Presentation) -> u32 {
    pres.nilpotency().iter().copied().chain([4]).max().unwrap_or(4)
}
