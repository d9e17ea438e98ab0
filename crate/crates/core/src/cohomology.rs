//! `H*(S, k)` through chain maps on the resolution: the generators `xi_i`
//! (degree 2, `i < t`) and `eta_i` (degree 1), their products and relations,
//! and the pairing against the free generators `Phi(a)`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentations::{Monomial, Presentation};
use crate::qscalar::{LaurentScalar, QMonomialTerm};
use crate::report::Report;
use crate::resolution::{generators_in_degree, right_mul, sigma, tau, PhiGenerator, Resolution, ResolutionElement};
use crate::Fault;

/// A chain map `K -> K[-shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChainMap {
    Xi(usize),
    Eta(usize),
    /// Applied right to left.
    Compose(Vec<ChainMap>),
}

impl ChainMap {
    pub fn shift(&self) -> usize {
        match self {
            ChainMap::Xi(_) => 2,
            ChainMap::Eta(_) => 1,
            ChainMap::Compose(v) => v.iter().map(ChainMap::shift).sum(),
        }
    }
}

impl fmt::Display for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainMap::Xi(i) => write!(f, "xi{}", i + 1),
            ChainMap::Eta(i) => write!(f, "eta{}", i + 1),
            ChainMap::Compose(v) if v.is_empty() => write!(f, "id"),
            ChainMap::Compose(v) => {
                let parts: Vec<String> = v.iter().map(ChainMap::to_string).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

/// `compose([f, g])` is `f` after `g`.
pub fn compose(maps: Vec<ChainMap>) -> ChainMap {
    ChainMap::Compose(maps)
}

/// Evaluates chain maps, with an optional corruption of `xi`.
#[derive(Clone, Copy, Debug)]
pub struct ChainMaps<'a> {
    pres: &'a Presentation,
    fault: Option<Fault>,
}

impl<'a> ChainMaps<'a> {
    pub fn new(pres: &'a Presentation) -> Self {
        Self { pres, fault: None }
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    /// `xi_i(Phi(a)) = prod_{l<i} q_il^{N_i tau_l(a_l)} Phi(a - 2e_i)`.
    pub fn xi_generator(&self, i: usize, g: &PhiGenerator) -> Result<Option<(QMonomialTerm, Monomial, PhiGenerator)>> {
        let pres = self.pres;
        let big_n = pres.big_n(i).ok_or(Error::IndexBeyondT { index: i, t: pres.t() })?;
        let Some(target) = g.shifted(i, -2) else {
            return Ok(None);
        };
        let mut u = QMonomialTerm::one();
        for l in 0..i {
            let al = g.get(l);
            let mut t = tau(l, al, pres);
            if self.fault == Some(Fault::XiExponent) && al > 0 {
                t += 1;
            }
            u = u.mul(&pres.q(i, l).pow(big_n as i64 * t as i64));
        }
        Ok(Some((u, Monomial::one(pres.n()), target)))
    }

    /// `eta_i(Phi(a)) = prod_{l>i} q_li^{(sigma_i(a_i)-1) tau_l(a_l)}
    /// prod_{l<i} (-1)^{a_l} q_il^{tau_l(a_l)} x_i^{sigma_i(a_i)-1} Phi(a - e_i)`.
    pub fn eta_generator(&self, i: usize, g: &PhiGenerator) -> Option<(QMonomialTerm, Monomial, PhiGenerator)> {
        let pres = self.pres;
        let target = g.shifted(i, -1)?;
        let s = sigma(i, g.get(i), pres) as i64 - 1;
        let mut u = QMonomialTerm::one();
        for l in i + 1..pres.n() {
            u = u.mul(&pres.q(l, i).pow(s * tau(l, g.get(l), pres) as i64));
        }
        for l in 0..i {
            let al = g.get(l);
            u = u
                .mul(&QMonomialTerm::one().signed(al % 2 == 1))
                .mul(&pres.q(i, l).pow(tau(l, al, pres) as i64));
        }
        Some((u, Monomial::power(i, s as u32, pres.n()), target))
    }

    /// Applies a chain map `S`-linearly.
    pub fn apply(&self, m: &ChainMap, e: &ResolutionElement) -> Result<ResolutionElement> {
        match m {
            ChainMap::Compose(v) => {
                let mut cur = e.clone();
                for f in v.iter().rev() {
                    cur = self.apply(f, &cur)?;
                }
                Ok(cur)
            }
            ChainMap::Xi(i) => {
                let mut out = ResolutionElement::zero();
                for (g, f) in e.iter() {
                    if let Some((u, x, target)) = self.xi_generator(*i, g)? {
                        out.add_term(target, &right_mul(f, &u, &x, self.pres));
                    }
                }
                Ok(out)
            }
            ChainMap::Eta(i) => {
                if *i >= self.pres.n() {
                    return Err(Error::IndexOutOfRange {
                        index: i + 1,
                        n: self.pres.n(),
                    });
                }
                let mut out = ResolutionElement::zero();
                for (g, f) in e.iter() {
                    if let Some((u, x, target)) = self.eta_generator(*i, g) {
                        out.add_term(target, &right_mul(f, &u, &x, self.pres));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn apply_generator(&self, m: &ChainMap, g: &PhiGenerator) -> Result<ResolutionElement> {
        self.apply(m, &ResolutionElement::generator(g.clone(), self.pres.n()))
    }

    /// `d m = m d` on every generator of degree `shift+1 ..= max_degree`.
    pub fn verify_chain_map(&self, m: &ChainMap, max_degree: usize) -> Report {
        let pres = self.pres;
        let res = Resolution::new(pres);
        let gens: Vec<PhiGenerator> = (m.shift() + 1..=max_degree)
            .flat_map(|k| generators_in_degree(k, pres))
            .collect();
        let rows: Vec<(String, Option<String>)> = gens
            .par_iter()
            .map(|g| {
                let object = format!("d{m}={m}d {g}");
                let e = ResolutionElement::generator(g.clone(), pres.n());
                let outcome = (|| -> Result<ResolutionElement> {
                    let left = res.differential(&self.apply(m, &e)?);
                    let left = match left {
                        Err(Error::DegreeZero) => ResolutionElement::zero(),
                        other => other?,
                    };
                    let right = self.apply(m, &res.differential(&e)?)?;
                    Ok(left.sub(&right))
                })();
                match outcome {
                    Ok(r) if r.is_zero() => (object, None),
                    Ok(r) => (object, Some(r.to_string())),
                    Err(err) => (object, Some(err.to_string())),
                }
            })
            .collect();
        let mut report = Report::new(format!("chain-map {m}"));
        for (object, residue) in rows {
            report.record(object, residue);
        }
        report
    }

    /// `epsilon`-coefficient of `1 * Phi(0)` in `m(Phi(a))`.
    pub fn evaluate(&self, m: &ChainMap, g: &PhiGenerator) -> Result<LaurentScalar> {
        if m.shift() != g.degree() {
            return Err(Error::DegreeMismatch {
                expected: m.shift(),
                got: g.degree(),
            });
        }
        let image = self.apply_generator(m, g)?;
        Ok(image.coefficient(&PhiGenerator::zero(self.pres.n())).augmentation())
    }

    pub fn dual_pairing(&self, mono: &CohomologyMonomial, g: &PhiGenerator) -> Result<LaurentScalar> {
        let v = self.evaluate(&mono.chain_map(), g)?;
        Ok(&v * &mono.coeff)
    }

    /// Checks each relation on every generator of degree `shift ..= max_degree`:
    /// `xi_i xi_j = q_ji^{N_i N_j} xi_j xi_i`, `eta_i xi_j = q_ji^{N_j} xi_j eta_i`,
    /// `eta_i eta_j = -q_ji eta_j eta_i` for `i != j`. The square `eta_i eta_i` is
    /// checked as a class: for `i >= t` it is the zero map, for `i < t` its
    /// pairing against degree-two generators equals that of `xi_i` when `N_i = 2`
    /// and vanishes otherwise.
    pub fn verify_relations(&self, max_degree: usize) -> Report {
        let pres = self.pres;
        let (n, t) = (pres.n(), pres.t());
        let mut cases: Vec<(String, ChainMap, ChainMap, QMonomialTerm)> = Vec::new();
        for i in 0..t {
            for j in 0..t {
                let big = pres.big_n(i).unwrap() as i64 * pres.big_n(j).unwrap() as i64;
                cases.push((
                    format!("xi{}xi{}", i + 1, j + 1),
                    compose(vec![ChainMap::Xi(i), ChainMap::Xi(j)]),
                    compose(vec![ChainMap::Xi(j), ChainMap::Xi(i)]),
                    pres.q(j, i).pow(big),
                ));
            }
        }
        for i in 0..n {
            for j in 0..t {
                cases.push((
                    format!("eta{}xi{}", i + 1, j + 1),
                    compose(vec![ChainMap::Eta(i), ChainMap::Xi(j)]),
                    compose(vec![ChainMap::Xi(j), ChainMap::Eta(i)]),
                    pres.q(j, i).pow(pres.big_n(j).unwrap() as i64),
                ));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    cases.push((
                        format!("eta{}eta{}", i + 1, j + 1),
                        compose(vec![ChainMap::Eta(i), ChainMap::Eta(j)]),
                        compose(vec![ChainMap::Eta(j), ChainMap::Eta(i)]),
                        pres.q(j, i).neg(),
                    ));
                }
            }
        }
        let mut jobs: Vec<(String, ChainMap, ChainMap, QMonomialTerm, PhiGenerator)> = Vec::new();
        for (name, lhs, rhs, c) in cases {
            for k in lhs.shift()..=max_degree {
                for g in generators_in_degree(k, pres) {
                    jobs.push((name.clone(), lhs.clone(), rhs.clone(), c.clone(), g));
                }
            }
        }
        let rows: Vec<(String, Option<String>)> = jobs
            .par_iter()
            .map(|(name, lhs, rhs, c, g)| {
                let object = format!("{name} {g}");
                let outcome = (|| -> Result<ResolutionElement> {
                    let l = self.apply_generator(lhs, g)?;
                    let r = self.apply_generator(rhs, g)?.scale(&c.to_scalar());
                    Ok(l.sub(&r))
                })();
                match outcome {
                    Ok(r) if r.is_zero() => (object, None),
                    Ok(r) => (object, Some(r.to_string())),
                    Err(e) => (object, Some(e.to_string())),
                }
            })
            .collect();
        let mut report = Report::new("relations");
        for (object, residue) in rows {
            report.record(object, residue);
        }
        for i in 0..n {
            report.absorb(self.verify_eta_square(i, max_degree));
        }
        report
    }

    /// The square law for `eta_i`.
    pub fn verify_eta_square(&self, i: usize, max_degree: usize) -> Report {
        let pres = self.pres;
        let sq = compose(vec![ChainMap::Eta(i), ChainMap::Eta(i)]);
        let mut report = Report::new(format!("eta{}^2", i + 1));
        match pres.big_n(i) {
            None => {
                for k in 2..=max_degree {
                    for g in generators_in_degree(k, pres) {
                        let object = format!("eta{0}eta{0}=0 {g}", i + 1);
                        match self.apply_generator(&sq, &g) {
                            Ok(v) if v.is_zero() => report.ok(object),
                            Ok(v) => report.fail(object, v.to_string()),
                            Err(e) => report.fail(object, e.to_string()),
                        }
                    }
                }
            }
            Some(big_n) => {
                for g in generators_in_degree(2, pres) {
                    let object = format!("<eta{0}eta{0}, {g}>", i + 1);
                    let outcome = (|| -> Result<Option<String>> {
                        let v = self.evaluate(&sq, &g)?;
                        let xi = self.evaluate(&ChainMap::Xi(i), &g)?;
                        Ok(if big_n == 2 {
                            let ok = if xi.is_zero() {
                                v.is_zero()
                            } else {
                                v.is_unit() && v == xi
                            };
                            (!ok).then(|| format!("{v} versus xi{} pairing {xi}", i + 1))
                        } else {
                            (!v.is_zero()).then(|| v.to_string())
                        })
                    })();
                    match outcome {
                        Ok(r) => report.record(object, r),
                        Err(e) => report.fail(object, e.to_string()),
                    }
                }
            }
        }
        report
    }

    /// In each degree `m <= max_degree` the pairing between cohomology monomials
    /// and generators is diagonal under `a = 2b + c` with unit diagonal.
    pub fn verify_dual_basis(&self, max_degree: usize) -> Report {
        let pres = self.pres;
        let mut report = Report::new("dual-basis");
        for m in 0..=max_degree {
            let monos = cohomology_monomials(m, pres);
            let gens = generators_in_degree(m, pres);
            report.record(
                format!("count degree {m}"),
                (monos.len() != gens.len())
                    .then(|| format!("{} monomials versus {} generators", monos.len(), gens.len())),
            );
            let rows: Vec<(String, Option<String>)> = monos
                .par_iter()
                .flat_map_iter(|mono| {
                    let partner = mono.partner(pres);
                    gens.iter()
                        .map(|g| {
                            let object = format!("<{mono}, {g}>");
                            match self.dual_pairing(mono, g) {
                                Ok(v) if *g == partner => {
                                    (object, (!v.is_unit()).then(|| format!("diagonal entry {v}")))
                                }
                                Ok(v) => (object, (!v.is_zero()).then(|| v.to_string())),
                                Err(e) => (object, Some(e.to_string())),
                            }
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

    /// `(m1 * m2)` normalized agrees with the composite of the chain maps,
    /// pairing against every generator of the product degree.
    pub fn verify_products(&self, max_degree: usize) -> Report {
        let pres = self.pres;
        let mut report = Report::new("products");
        let all: Vec<CohomologyMonomial> = (0..=max_degree).flat_map(|m| cohomology_monomials(m, pres)).collect();
        let mut pairs = Vec::new();
        for a in &all {
            for b in &all {
                if a.degree() + b.degree() <= max_degree && a.degree() > 0 && b.degree() > 0 {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
        let rows: Vec<(String, Option<String>)> = pairs
            .par_iter()
            .map(|(a, b)| {
                let object = format!("({a})*({b})");
                let product = a.mul(b, pres);
                let composite = compose(vec![a.chain_map(), b.chain_map()]);
                let deg = a.degree() + b.degree();
                for g in generators_in_degree(deg, pres) {
                    let direct = match self.evaluate(&composite, &g) {
                        Ok(v) => v,
                        Err(e) => return (object, Some(e.to_string())),
                    };
                    let normalized = match &product {
                        None => LaurentScalar::zero(),
                        Some(p) => match self.dual_pairing(p, &g) {
                            Ok(v) => v,
                            Err(e) => return (object, Some(e.to_string())),
                        },
                    };
                    if direct != normalized {
                        return (object, Some(format!("at {g}: {direct} versus {normalized}")));
                    }
                }
                (object, None)
            })
            .collect();
        for (object, residue) in rows {
            report.record(object, residue);
        }
        report
    }
}

pub fn xi_apply(i: usize, g: &PhiGenerator, pres: &Presentation) -> Result<ResolutionElement> {
    ChainMaps::new(pres).apply_generator(&ChainMap::Xi(i), g)
}

pub fn eta_apply(i: usize, g: &PhiGenerator, pres: &Presentation) -> Result<ResolutionElement> {
    ChainMaps::new(pres).apply_generator(&ChainMap::Eta(i), g)
}

pub fn verify_chain_map(m: &ChainMap, pres: &Presentation, max_degree: usize) -> Report {
    ChainMaps::new(pres).verify_chain_map(m, max_degree)
}

pub fn verify_relations(pres: &Presentation, max_degree: usize) -> Report {
    ChainMaps::new(pres).verify_relations(max_degree)
}

pub fn verify_dual_basis(pres: &Presentation, max_degree: usize) -> Report {
    ChainMaps::new(pres).verify_dual_basis(max_degree)
}

pub fn dual_pairing(mono: &CohomologyMonomial, g: &PhiGenerator, pres: &Presentation) -> Result<LaurentScalar> {
    ChainMaps::new(pres).dual_pairing(mono, g)
}

/// `coeff * xi_1^{b_1} ... xi_t^{b_t} eta_1^{c_1} ... eta_n^{c_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyMonomial {
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub coeff: LaurentScalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    Xi(usize),
    Eta(usize),
}

impl CohomologyMonomial {
    pub fn new(b: Vec<u32>, c: Vec<u32>) -> Self {
        Self {
            b,
            c,
            coeff: LaurentScalar::one(),
        }
    }

    pub fn degree(&self) -> usize {
        2 * self.b.iter().map(|&x| x as usize).sum::<usize>() + self.c.iter().map(|&x| x as usize).sum::<usize>()
    }

    /// The generator `Phi(2b + c)` it pairs with.
    pub fn partner(&self, pres: &Presentation) -> PhiGenerator {
        let a = (0..pres.n())
            .map(|i| 2 * self.b.get(i).copied().unwrap_or(0) + self.c[i])
            .collect();
        PhiGenerator::new(a)
    }

    /// The composite `xi_1^{b_1} ... eta_n^{c_n}` (coefficient dropped).
    pub fn chain_map(&self) -> ChainMap {
        compose(letters_of(&self.b, &self.c).into_iter().map(Letter::map).collect())
    }

    /// The product, normalized to canonical order with the relations; `None` if zero.
    pub fn mul(&self, other: &CohomologyMonomial, pres: &Presentation) -> Option<CohomologyMonomial> {
        let mut word = letters_of(&self.b, &self.c);
        word.extend(letters_of(&other.b, &other.c));
        let mut u = QMonomialTerm::one();
        // Bubble the word into canonical order, collapsing eta_i eta_i as it meets.
        'outer: loop {
            for k in 0..word.len().saturating_sub(1) {
                let (x, y) = (word[k], word[k + 1]);
                if x == y {
                    if let Letter::Eta(i) = x {
                        match pres.big_n(i) {
                            Some(2) => {
                                word.splice(k..k + 2, [Letter::Xi(i)]);
                                continue 'outer;
                            }
                            _ => return None,
                        }
                    }
                }
                if x > y {
                    let swap = match (x, y) {
                        (Letter::Xi(i), Letter::Xi(j)) => {
                            let e = pres.big_n(i).unwrap() as i64 * pres.big_n(j).unwrap() as i64;
                            pres.q(j, i).pow(e)
                        }
                        (Letter::Eta(i), Letter::Xi(j)) => pres.q(j, i).pow(pres.big_n(j).unwrap() as i64),
                        (Letter::Eta(i), Letter::Eta(j)) => pres.q(j, i).neg(),
                        (Letter::Xi(_), Letter::Eta(_)) => unreachable!("xi precedes eta"),
                    };
                    u = u.mul(&swap);
                    word.swap(k, k + 1);
                    continue 'outer;
                }
            }
            break;
        }
        let mut b = vec![0; pres.t()];
        let mut c = vec![0; pres.n()];
        for l in word {
            match l {
                Letter::Xi(i) => b[i] += 1,
                Letter::Eta(i) => c[i] += 1,
            }
        }
        Some(CohomologyMonomial {
            b,
            c,
            coeff: (&self.coeff * &other.coeff).mul_term(&u),
        })
    }
}

impl Letter {
    fn map(self) -> ChainMap {
        match self {
            Letter::Xi(i) => ChainMap::Xi(i),
            Letter::Eta(i) => ChainMap::Eta(i),
        }
    }
}

fn letters_of(b: &[u32], c: &[u32]) -> Vec<Letter> {
    let mut out = Vec::new();
    for (i, &e) in b.iter().enumerate() {
        out.extend(std::iter::repeat_n(Letter::Xi(i), e as usize));
    }
    for (i, &e) in c.iter().enumerate() {
        out.extend(std::iter::repeat_n(Letter::Eta(i), e as usize));
    }
    out
}

impl fmt::Display for CohomologyMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.b.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("xi{}", i + 1)),
                _ => parts.push(format!("xi{}^{e}", i + 1)),
            }
        }
        for (i, &e) in self.c.iter().enumerate() {
            if e > 0 {
                parts.push(format!("eta{}", i + 1));
            }
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        if self.coeff.is_one() {
            write!(f, "{body}")
        } else if self.coeff.len() > 1 {
            write!(f, "({})*{body}", self.coeff)
        } else {
            write!(f, "{}*{body}", self.coeff)
        }
    }
}

/// Canonical monomials of cohomological degree `m`: `2 sum b + sum c = m`,
/// `c_i in {0, 1}`.
pub fn cohomology_monomials(m: usize, pres: &Presentation) -> Vec<CohomologyMonomial> {
    let (n, t) = (pres.n(), pres.t());
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let c: Vec<u32> = (0..n).map(|i| (mask >> i) & 1).collect();
        let k = mask.count_ones() as usize;
        if k > m || (m - k) % 2 == 1 {
            continue;
        }
        let half = (m - k) / 2;
        if t == 0 {
            if half == 0 {
                out.push(CohomologyMonomial::new(vec![], c));
            }
            continue;
        }
        for b in compositions(half, t) {
            out.push(CohomologyMonomial::new(b, c.clone()));
        }
    }
    out.sort_by(|x, y| (&y.b, &y.c).cmp(&(&x.b, &x.c)));
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total as u32]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// `dim H^m(S, k)` for `m = 0..=max_degree`, counted from the monomial basis.
pub fn hilbert_coefficients(pres: &Presentation, max_degree: usize) -> Vec<u64> {
    (0..=max_degree)
        .map(|m| cohomology_monomials(m, pres).len() as u64)
        .collect()
}
