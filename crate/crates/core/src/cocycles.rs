//! The 2-cocycles `zeta_i` attached to the braided-central powers
//! `x_i^{N_i}`, the cochains `h_i`, the reduced bar complex in degrees at most
//! three, and the comparison maps `F_1`, `F_2` from the resolution `K`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentations::{check_braided_central, multiply, AlgebraElement, AlgebraMode, Monomial, Presentation};
use crate::qscalar::LaurentScalar;
use crate::report::Report;
use crate::resolution::{generators_in_degree, PhiGenerator, Resolution, ResolutionElement};
use crate::Fault;

/// Checks that every `x_i^{N_i}` is braided-central in `B` up to `degree_bound`.
pub fn require_braided_central(pres: &Presentation, degree_bound: u64) -> Result<()> {
    for i in 0..pres.t() {
        let report = check_braided_central(i, pres, degree_bound);
        let witness = report
            .failures()
            .next()
            .map(|c| format!("{} = {}", c.object, c.residue.clone().unwrap_or_default()));
        if let Some(witness) = witness {
            return Err(Error::NotBraidedCentral { index: i, witness });
        }
    }
    Ok(())
}

/// The section of `B -> A` on basis monomials: the same exponent vector, read in `B`.
pub fn section_lift(m: &Monomial, pres: &Presentation) -> Result<Monomial> {
    if pres.is_truncated(m) {
        return Err(Error::NotReduced(m.to_string()));
    }
    Ok(m.clone())
}

/// Default sweep bound `max(2 max N_i, 6)`.
pub fn default_exp_bound(pres: &Presentation) -> u64 {
    let big = pres.nilpotency().iter().copied().max().unwrap_or(0) as u64;
    (2 * big).max(6)
}

/// `p_i = N_i omega_i` and the bidegree `(p_i, 2 - p_i)` of `zeta_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationDegree {
    pub p: u64,
}

impl FiltrationDegree {
    pub fn bidegree(&self) -> (i64, i64) {
        (self.p as i64, 2 - self.p as i64)
    }
}

impl fmt::Display for FiltrationDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.bidegree();
        write!(f, "p={} bidegree=({a},{b})", self.p)
    }
}

pub fn filtration_degree(i: usize, pres: &Presentation) -> Result<FiltrationDegree> {
    let big_n = pres.big_n(i).ok_or(Error::IndexBeyondT { index: i, t: pres.t() })?;
    Ok(FiltrationDegree {
        p: big_n as u64 * pres.omega()[i] as u64,
    })
}

/// A combination of bar tensors `b_0 [b_1 | ... | b_m]` with monomial slots.
/// Slots `1..` never hold the constant monomial.
pub type BarChain = BTreeMap<Vec<Monomial>, LaurentScalar>;

fn bar_add(chain: &mut BarChain, key: Vec<Monomial>, c: &LaurentScalar) {
    if c.is_zero() {
        return;
    }
    let entry = chain.entry(key.clone()).or_default();
    *entry += c;
    if entry.is_zero() {
        chain.remove(&key);
    }
}

/// Expands `b_0 [b_1 | ... | b_m]` multilinearly, dropping constant parts of
/// the interior slots.
pub fn bar_tensor(slots: &[AlgebraElement]) -> BarChain {
    let mut out: BarChain = BTreeMap::new();
    out.insert(Vec::new(), LaurentScalar::one());
    for (k, slot) in slots.iter().enumerate() {
        let mut next = BTreeMap::new();
        for (key, c) in &out {
            for (m, d) in slot.iter() {
                if k > 0 && m.is_one() {
                    continue;
                }
                let mut key = key.clone();
                key.push(m.clone());
                bar_add(&mut next, key, &(c * d));
            }
        }
        out = next;
    }
    out
}

pub fn format_bar(chain: &BarChain) -> String {
    if chain.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = chain
        .iter()
        .map(|(key, c)| {
            let slots: Vec<String> = key.iter().map(Monomial::to_string).collect();
            format!("({c})*{}", slots.join("|"))
        })
        .collect();
    terms.join(" + ")
}

/// `sum_{j<m} (-1)^j b_0 | ... | b_j b_{j+1} | ... | b_m`.
pub fn bar_differential(chain: &BarChain, pres: &Presentation, mode: AlgebraMode) -> Result<BarChain> {
    let mut out = BTreeMap::new();
    for (key, c) in chain {
        let m = key.len().saturating_sub(1);
        if m > 3 {
            return Err(Error::DegreeTooHigh(m));
        }
        for j in 0..m {
            let prod = multiply(
                &AlgebraElement::monomial(key[j].clone()),
                &AlgebraElement::monomial(key[j + 1].clone()),
                pres,
                mode,
            )?;
            let c = if j % 2 == 1 { -c } else { c.clone() };
            for (pm, pc) in prod.iter() {
                if j > 0 && pm.is_one() {
                    continue;
                }
                let mut new_key = key[..j].to_vec();
                new_key.push(pm.clone());
                new_key.extend_from_slice(&key[j + 2..]);
                bar_add(&mut out, new_key, &(&c * pc));
            }
        }
    }
    Ok(out)
}

/// Evaluates a cochain `f(b_1, ..., b_m)` on a chain as `sum c eps(b_0) f(...)`.
pub fn evaluate_cochain(
    chain: &BarChain,
    mut f: impl FnMut(&[Monomial]) -> Result<LaurentScalar>,
) -> Result<LaurentScalar> {
    let mut total = LaurentScalar::zero();
    for (key, c) in chain {
        if key.first().is_some_and(Monomial::is_one) {
            total += &(c * &f(&key[1..])?);
        }
    }
    Ok(total)
}

/// Cocycle computations for one presentation, optionally with a corrupted
/// coefficient functional.
#[derive(Clone, Copy, Debug)]
pub struct Cocycles<'a> {
    pres: &'a Presentation,
    fault: Option<Fault>,
}

impl<'a> Cocycles<'a> {
    /// Refuses presentations whose `x_i^{N_i}` fail the braided-centrality
    /// check up to `gate_bound`.
    pub fn new(pres: &'a Presentation, gate_bound: u64) -> Result<Self> {
        require_braided_central(pres, gate_bound)?;
        Ok(Self { pres, fault: None })
    }

    /// Skips the braided-centrality gate.
    pub fn unchecked(pres: &'a Presentation) -> Self {
        Self { pres, fault: None }
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    fn target(&self, i: usize) -> Result<Monomial> {
        let pres = self.pres;
        let big_n = pres.big_n(i).ok_or(Error::IndexBeyondT { index: i, t: pres.t() })?;
        let e = if self.fault == Some(Fault::ZetaFunctional) {
            big_n + 1
        } else {
            big_n
        };
        Ok(Monomial::power(i, e, pres.n()))
    }

    fn augmented(f: &AlgebraElement) -> Result<()> {
        if f.augmentation().is_zero() {
            Ok(())
        } else {
            Err(Error::NotAugmented(f.to_string()))
        }
    }

    /// `h_i(r)`: the coefficient of `x_i^{N_i}` in `r`.
    pub fn h_cochain(&self, i: usize, r: &AlgebraElement) -> Result<LaurentScalar> {
        Self::augmented(r)?;
        Ok(r.coefficient(&self.target(i)?))
    }

    /// `zeta~_i(r, s)`: the coefficient of `x_i^{N_i}` in `rs` computed in `B`.
    pub fn zeta_tilde(&self, i: usize, r: &AlgebraElement, s: &AlgebraElement) -> Result<LaurentScalar> {
        Self::augmented(r)?;
        Self::augmented(s)?;
        let target = self.target(i)?;
        Ok(multiply(r, s, self.pres, AlgebraMode::B)?.coefficient(&target))
    }

    /// `zeta_i(r, s)` on basis monomials of `A`, through the section.
    pub fn zeta(&self, i: usize, r: &Monomial, s: &Monomial) -> Result<LaurentScalar> {
        let r = AlgebraElement::monomial(section_lift(r, self.pres)?);
        let s = AlgebraElement::monomial(section_lift(s, self.pres)?);
        self.zeta_tilde(i, &r, &s)
    }

    /// `zeta_i` extended bilinearly to elements of `A`.
    pub fn zeta_elements(&self, i: usize, r: &AlgebraElement, s: &AlgebraElement) -> Result<LaurentScalar> {
        Self::augmented(r)?;
        Self::augmented(s)?;
        let mut total = LaurentScalar::zero();
        for (a, ca) in r.iter() {
            for (b, cb) in s.iter() {
                total += &(&(ca * cb) * &self.zeta(i, a, b)?);
            }
        }
        Ok(total)
    }

    /// Nonzero values of `zeta_i` on pairs of `A^+` basis monomials with
    /// `|r|_omega + |s|_omega <= bound`.
    pub fn table(&self, i: usize, bound: u64) -> Result<Vec<(Monomial, Monomial, LaurentScalar)>> {
        let pres = self.pres;
        let mut rows = Vec::new();
        for (r, s) in pairs(pres, bound, true) {
            let v = self.zeta(i, &r, &s)?;
            if !v.is_zero() {
                rows.push((r, s, v));
            }
        }
        Ok(rows)
    }

    /// Over `B`: `zeta~_i(r r1, s) = zeta~_i(r, r1 s)` for monomial triples and
    /// `zeta~_i` vanishing when an argument lies in the ideal of the `x_j^{N_j}`.
    pub fn verify_zeta_properties(&self, i: usize, bound: u64) -> Report {
        let pres = self.pres;
        let mut report = Report::new(format!("zeta~{} on B", i + 1));
        let rows: Vec<(String, Option<String>)> = triples(pres, bound, false)
            .par_iter()
            .map(|(r, r1, s)| {
                let object = format!("zeta~{}({r}*{r1}, {s}) = zeta~{}({r}, {r1}*{s})", i + 1, i + 1);
                let outcome = (|| -> Result<Option<String>> {
                    let mono = |m: &Monomial| AlgebraElement::monomial(m.clone());
                    let rr1 = multiply(&mono(r), &mono(r1), pres, AlgebraMode::B)?;
                    let r1s = multiply(&mono(r1), &mono(s), pres, AlgebraMode::B)?;
                    let left = self.zeta_tilde(i, &rr1, &mono(s))?;
                    let right = self.zeta_tilde(i, &mono(r), &r1s)?;
                    Ok((left != right).then(|| format!("{left} versus {right}")))
                })();
                (object, outcome.unwrap_or_else(|e| Some(e.to_string())))
            })
            .collect();
        for (object, residue) in rows {
            report.record(object, residue);
        }
        for j in 0..pres.t() {
            let power = AlgebraElement::monomial(Monomial::power(j, pres.big_n(j).unwrap(), pres.n()));
            let ideal_weight = pres.omega_weight(&Monomial::power(j, pres.big_n(j).unwrap(), pres.n()));
            if ideal_weight > bound {
                continue;
            }
            let rest = bound - ideal_weight;
            let monos = pres.monomials_up_to(rest, false);
            let rows: Vec<(String, Option<String>)> = monos
                .par_iter()
                .flat_map_iter(|b| {
                    let left_bound = rest - pres.omega_weight(b);
                    monos
                        .iter()
                        .filter(move |c| !c.is_one() && pres.omega_weight(c) <= left_bound)
                        .map(|c| {
                            let object = format!(
                                "zeta~{} kills x{}^{}*{b} against {c}",
                                i + 1,
                                j + 1,
                                pres.big_n(j).unwrap()
                            );
                            let outcome = (|| -> Result<Option<String>> {
                                let k = multiply(&power, &AlgebraElement::monomial(b.clone()), pres, AlgebraMode::B)?;
                                let c = AlgebraElement::monomial(c.clone());
                                let left = self.zeta_tilde(i, &k, &c)?;
                                let right = self.zeta_tilde(i, &c, &k)?;
                                Ok((!left.is_zero() || !right.is_zero()).then(|| format!("{left}, {right}")))
                            })();
                            (object, outcome.unwrap_or_else(|e| Some(e.to_string())))
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            for (object, residue) in rows {
                report.record(object, residue);
            }
        }
        report
    }

    /// Over `A`: `zeta_i(rs, u) = zeta_i(r, su)` on basis monomial triples.
    pub fn verify_cocycle_on_a(&self, i: usize, bound: u64) -> Report {
        let pres = self.pres;
        let mut report = Report::new(format!("zeta{} on A", i + 1));
        let rows: Vec<(String, Option<String>)> = triples(pres, bound, true)
            .par_iter()
            .map(|(r, s, u)| {
                let object = format!("zeta{}({r}*{s}, {u}) = zeta{}({r}, {s}*{u})", i + 1, i + 1);
                let outcome = (|| -> Result<Option<String>> {
                    let mono = |m: &Monomial| AlgebraElement::monomial(m.clone());
                    let rs = multiply(&mono(r), &mono(s), pres, AlgebraMode::A)?;
                    let su = multiply(&mono(s), &mono(u), pres, AlgebraMode::A)?;
                    let left = self.zeta_elements(i, &rs, &mono(u))?;
                    let right = self.zeta_elements(i, &mono(r), &su)?;
                    Ok((left != right).then(|| format!("{left} versus {right}")))
                })();
                (object, outcome.unwrap_or_else(|e| Some(e.to_string())))
            })
            .collect();
        for (object, residue) in rows {
            report.record(object, residue);
        }
        report
    }

    /// `(delta* zeta_i)` vanishes on reduced bar 3-tensors `1[r|s|u]` over `A`.
    pub fn verify_bar_cocycle(&self, i: usize, bound: u64) -> Report {
        let pres = self.pres;
        let mut report = Report::new(format!("delta*zeta{}", i + 1));
        let one = Monomial::one(pres.n());
        let rows: Vec<(String, Option<String>)> = triples(pres, bound, true)
            .par_iter()
            .map(|(r, s, u)| {
                let object = format!("delta*zeta{} 1[{r}|{s}|{u}]", i + 1);
                let mut chain = BTreeMap::new();
                chain.insert(vec![one.clone(), r.clone(), s.clone(), u.clone()], LaurentScalar::one());
                let outcome = (|| -> Result<Option<String>> {
                    let boundary = bar_differential(&chain, pres, AlgebraMode::A)?;
                    let v = evaluate_cochain(&boundary, |slots| self.zeta(i, &slots[0], &slots[1]))?;
                    Ok((!v.is_zero()).then(|| v.to_string()))
                })();
                (object, outcome.unwrap_or_else(|e| Some(e.to_string())))
            })
            .collect();
        for (object, residue) in rows {
            report.record(object, residue);
        }
        report
    }

    /// Over `B`: `zeta~_i(r, s) = -(delta* h_i)(1[r|s])`.
    pub fn verify_coboundary_on_b(&self, i: usize, bound: u64) -> Report {
        let pres = self.pres;
        let mut report = Report::new(format!("zeta~{} = -delta*h{}", i + 1, i + 1));
        let one = Monomial::one(pres.n());
        let rows: Vec<(String, Option<String>)> = pairs(pres, bound, false)
            .par_iter()
            .map(|(r, s)| {
                let object = format!("zeta~{}({r}, {s})", i + 1);
                let mut chain = BTreeMap::new();
                chain.insert(vec![one.clone(), r.clone(), s.clone()], LaurentScalar::one());
                let outcome = (|| -> Result<Option<String>> {
                    let boundary = bar_differential(&chain, pres, AlgebraMode::B)?;
                    let dh = evaluate_cochain(&boundary, |slots| {
                        self.h_cochain(i, &AlgebraElement::monomial(slots[0].clone()))
                    })?;
                    let z = self.zeta_tilde(
                        i,
                        &AlgebraElement::monomial(r.clone()),
                        &AlgebraElement::monomial(s.clone()),
                    )?;
                    Ok((z != -&dh).then(|| format!("{z} versus {}", -&dh)))
                })();
                (object, outcome.unwrap_or_else(|e| Some(e.to_string())))
            })
            .collect();
        for (object, residue) in rows {
            report.record(object, residue);
        }
        report
    }

    /// The smallest `|r|_omega + |s|_omega` over pairs with `zeta_i(r, s) != 0`
    /// equals `N_i omega_i`.
    pub fn verify_filtration_degree(&self, i: usize, bound: u64) -> Report {
        let mut report = Report::new(format!("filtration zeta{}", i + 1));
        let object = format!("min degree of zeta{}", i + 1);
        let outcome = (|| -> Result<Option<String>> {
            let p = filtration_degree(i, self.pres)?.p;
            let min = self
                .table(i, bound)?
                .iter()
                .map(|(r, s, _)| self.pres.omega_weight(r) + self.pres.omega_weight(s))
                .min();
            Ok(match min {
                Some(m) if m == p => None,
                Some(m) => Some(format!("{m} versus p={p}")),
                None if p > bound => None,
                None => Some(format!("no nonzero value up to {bound}")),
            })
        })();
        report.record(object, outcome.unwrap_or_else(|e| Some(e.to_string())));
        report
    }
}

/// Pairs of non-identity monomials with total weight at most `bound`.
fn pairs(pres: &Presentation, bound: u64, reduced: bool) -> Vec<(Monomial, Monomial)> {
    let monos: Vec<Monomial> = pres
        .monomials_up_to(bound, reduced)
        .into_iter()
        .filter(|m| !m.is_one())
        .collect();
    let mut out = Vec::new();
    for r in &monos {
        for s in &monos {
            if pres.omega_weight(r) + pres.omega_weight(s) <= bound {
                out.push((r.clone(), s.clone()));
            }
        }
    }
    out
}

fn triples(pres: &Presentation, bound: u64, reduced: bool) -> Vec<(Monomial, Monomial, Monomial)> {
    let monos: Vec<Monomial> = pres
        .monomials_up_to(bound, reduced)
        .into_iter()
        .filter(|m| !m.is_one())
        .collect();
    let mut out = Vec::new();
    for (r, s) in pairs(pres, bound, reduced) {
        let used = pres.omega_weight(&r) + pres.omega_weight(&s);
        for u in &monos {
            if used + pres.omega_weight(u) <= bound {
                out.push((r.clone(), s.clone(), u.clone()));
            }
        }
    }
    out
}

/// `F_1(Phi(e_i)) = 1[x_i]`; `F_2(Phi(2e_i)) = sum_{a=0}^{N_i-2} x_i^a [x_i | x_i^{N_i-a-1}]`;
/// `F_2(Phi(e_i + e_j)) = 1[x_j | x_i] - q_ji [x_i | x_j]` for `i < j`.
pub fn f_map(g: &PhiGenerator, pres: &Presentation) -> Result<BarChain> {
    let n = pres.n();
    if !g.is_valid(pres) {
        return Err(Error::InvalidGenerator(g.to_string()));
    }
    let one = Monomial::one(n);
    let x = |i: usize, e: u32| Monomial::power(i, e, n);
    let support: Vec<usize> = (0..n).filter(|&i| g.get(i) > 0).collect();
    let mut out = BTreeMap::new();
    match (g.degree(), support.as_slice()) {
        (1, [i]) => {
            out.insert(vec![one, x(*i, 1)], LaurentScalar::one());
        }
        (2, [i]) => {
            let big_n = pres.big_n(*i).ok_or_else(|| Error::InvalidGenerator(g.to_string()))?;
            for a in 0..=big_n - 2 {
                bar_add(
                    &mut out,
                    vec![x(*i, a), x(*i, 1), x(*i, big_n - a - 1)],
                    &LaurentScalar::one(),
                );
            }
        }
        (2, [i, j]) => {
            bar_add(&mut out, vec![one.clone(), x(*j, 1), x(*i, 1)], &LaurentScalar::one());
            bar_add(&mut out, vec![one, x(*i, 1), x(*j, 1)], &-pres.q(*j, *i).to_scalar());
        }
        (d, _) => return Err(Error::UnsupportedDegree(d)),
    }
    Ok(out)
}

/// `F` extended `S`-linearly: `f Phi` goes to `f b_0 [...]`.
pub fn f_map_element(e: &ResolutionElement, pres: &Presentation) -> Result<BarChain> {
    let mut out = BTreeMap::new();
    for (g, f) in e.iter() {
        if g.degree() == 0 {
            for (m, c) in f.iter() {
                bar_add(&mut out, vec![m.clone()], c);
            }
            continue;
        }
        for (key, c) in f_map(g, pres)? {
            let head = multiply(f, &AlgebraElement::monomial(key[0].clone()), pres, AlgebraMode::S)?;
            for (m, d) in head.iter() {
                let mut k = key.clone();
                k[0] = m.clone();
                bar_add(&mut out, k, &(&c * d));
            }
        }
    }
    Ok(out)
}

/// `d_1 F_1 = d` on degree-one and `d_2 F_2 = F_1 d` on degree-two generators,
/// in the bar complex of `S`.
pub fn verify_f_squares(pres: &Presentation) -> Report {
    let res = Resolution::new(pres);
    let mut report = Report::new("comparison squares");
    for k in 1..=2 {
        for g in generators_in_degree(k, pres) {
            let object = format!("d{k} F{k} = F{} d {g}", k - 1);
            let outcome = (|| -> Result<Option<String>> {
                let e = ResolutionElement::generator(g.clone(), pres.n());
                let left = bar_differential(&f_map(&g, pres)?, pres, AlgebraMode::S)?;
                let right = f_map_element(&res.differential(&e)?, pres)?;
                Ok((left != right).then(|| format!("{} versus {}", format_bar(&left), format_bar(&right))))
            })();
            report.record(object, outcome.unwrap_or_else(|e| Some(e.to_string())));
        }
    }
    report
}

/// The pullbacks `F_2^* zeta^_i` and `F_1^* eta_i`: the first is dual to
/// `Phi(2e_i)`, the second to `Phi(e_i)`. Here `zeta^_i` reads the coefficient of
/// `x_i^{N_i}` from the untruncated product in the graded algebra.
pub fn verify_identifications(pres: &Presentation) -> Report {
    let n = pres.n();
    let gr = pres.associated_graded();
    let mut report = Report::new("identifications");
    for i in 0..pres.t() {
        let big_n = pres.big_n(i).unwrap();
        let target = Monomial::power(i, big_n, n);
        for g in generators_in_degree(2, pres) {
            let object = format!("F2*zeta{}({g})", i + 1);
            let expected = if g == PhiGenerator::new((0..n).map(|k| if k == i { 2 } else { 0 }).collect()) {
                LaurentScalar::one()
            } else {
                LaurentScalar::zero()
            };
            let outcome = (|| -> Result<Option<String>> {
                let chain = f_map(&g, pres)?;
                let v = evaluate_cochain(&chain, |slots| {
                    let prod = multiply(
                        &AlgebraElement::monomial(slots[0].clone()),
                        &AlgebraElement::monomial(slots[1].clone()),
                        &gr,
                        AlgebraMode::B,
                    )?;
                    Ok(prod.coefficient(&target))
                })?;
                Ok((v != expected).then(|| format!("{v} versus {expected}")))
            })();
            report.record(object, outcome.unwrap_or_else(|e| Some(e.to_string())));
        }
    }
    for i in 0..n {
        let xi = Monomial::power(i, 1, n);
        for j in 0..n {
            let g = PhiGenerator::unit(j, n);
            let object = format!("F1*eta{}({g})", i + 1);
            let expected = if i == j {
                LaurentScalar::one()
            } else {
                LaurentScalar::zero()
            };
            let outcome = (|| -> Result<Option<String>> {
                let v = evaluate_cochain(&f_map(&g, pres)?, |slots| {
                    Ok(if slots[0] == xi {
                        LaurentScalar::one()
                    } else {
                        LaurentScalar::zero()
                    })
                })?;
                Ok((v != expected).then(|| format!("{v} versus {expected}")))
            })();
            report.record(object, outcome.unwrap_or_else(|e| Some(e.to_string())));
        }
    }
    report
}
