//! PBW presentations `B`, the quantum symmetric quotient `S`, and the
//! truncated quotient `A = B / (x_1^{N_1}, ..., x_t^{N_t})`.
//!
//! Generators are indexed from 0 internally and printed from 1 (`x1`, `q1_2`).

mod bracket;
mod element;
mod order;
mod rewrite;

use std::collections::BTreeMap;

pub use bracket::{braided_bracket, check_braided_central};
pub use element::{AlgebraElement, Monomial, Word};
pub use order::MonomialOrder;
pub(crate) use rewrite::skew_product;
pub use rewrite::{
    check_confluence, first_confluence_error, multiply, normal_form, normal_form_with, Strategy, STEP_BUDGET,
};

use crate::error::{Error, Result};
use crate::qscalar::{canonical_q, Assignment, LaurentScalar, ParamIndex, QMonomialTerm};
use crate::report::Report;

/// Which algebra a computation happens in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraMode {
    /// The PBW algebra itself: lower-order terms active, no nilpotency.
    B,
    /// The quantum symmetric quotient: lower-order terms ignored, `x_i^{N_i} = 0` for `i < t`.
    S,
    /// The truncated quotient: lower-order terms active and `x_i^{N_i} = 0` for `i < t`.
    A,
}

/// A PBW presentation: `x_i x_j = q_ij x_j x_i + p_ij` for `i < j`, with the first
/// `t` generators marked nilpotent of orders `N_i` in the quotients `S` and `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n: usize,
    nilpotency: Vec<u32>,
    q: BTreeMap<ParamIndex, LaurentScalar>,
    p: BTreeMap<(usize, usize), AlgebraElement>,
    omega: Vec<u32>,
    order: MonomialOrder,
}

impl Presentation {
    /// The quantum symmetric algebra on `n` generators with generic symbolic
    /// parameters, unit weights, and the weighted graded lex order.
    pub fn new(n: usize) -> Self {
        let mut q = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = ParamIndex::new(i, j).expect("i < j");
                q.insert(p, LaurentScalar::param(p));
            }
        }
        Self {
            n,
            nilpotency: Vec::new(),
            q,
            p: BTreeMap::new(),
            omega: vec![1; n],
            order: MonomialOrder::WeightedGradedLex,
        }
    }

    /// Sets `t = nilpotency.len()` and `N_i = nilpotency[i]`.
    pub fn with_nilpotency(mut self, nilpotency: Vec<u32>) -> Self {
        self.nilpotency = nilpotency;
        self
    }

    /// Sets `q_ij` for `i < j`.
    pub fn with_q(mut self, i: usize, j: usize, value: LaurentScalar) -> Result<Self> {
        self.set_q(i, j, value)?;
        Ok(self)
    }

    pub fn set_q(&mut self, i: usize, j: usize, value: LaurentScalar) -> Result<()> {
        let p = ParamIndex::new(i, j)?;
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j + 1,
                n: self.n,
            });
        }
        self.q.insert(p, value);
        Ok(())
    }

    /// Sets the lower-order term `p_ij` for `i < j`. A zero element clears it.
    pub fn with_p(mut self, i: usize, j: usize, value: AlgebraElement) -> Result<Self> {
        self.set_p(i, j, value)?;
        Ok(self)
    }

    pub fn set_p(&mut self, i: usize, j: usize, value: AlgebraElement) -> Result<()> {
        ParamIndex::new(i, j)?;
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j + 1,
                n: self.n,
            });
        }
        if value.is_zero() {
            self.p.remove(&(i, j));
        } else {
            self.p.insert((i, j), value);
        }
        Ok(())
    }

    pub fn with_omega(mut self, omega: Vec<u32>) -> Self {
        self.omega = omega;
        self
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.nilpotency.len()
    }

    /// `N_i` for `i < t`.
    pub fn nilpotency(&self) -> &[u32] {
        &self.nilpotency
    }

    pub fn big_n(&self, i: usize) -> Option<u32> {
        self.nilpotency.get(i).copied()
    }

    pub fn omega(&self) -> &[u32] {
        &self.omega
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn q_table(&self) -> &BTreeMap<ParamIndex, LaurentScalar> {
        &self.q
    }

    pub fn lower_terms(&self) -> &BTreeMap<(usize, usize), AlgebraElement> {
        &self.p
    }

    pub fn p(&self, i: usize, j: usize) -> Option<&AlgebraElement> {
        self.p.get(&(i, j))
    }

    pub fn has_lower_terms(&self) -> bool {
        !self.p.is_empty()
    }

    /// `q_ij` for any ordered pair, as a unit: `q_ii = 1`, `q_ji = q_ij^{-1}`.
    ///
    /// Panics if the stored parameter is not a unit; run [`Presentation::validate`] first.
    pub fn q(&self, i: usize, j: usize) -> QMonomialTerm {
        use std::cmp::Ordering::*;
        let lookup = |a: usize, b: usize| {
            let p = ParamIndex::new(a, b).expect("a < b");
            self.q
                .get(&p)
                .and_then(LaurentScalar::as_unit)
                .unwrap_or_else(|| panic!("q{}_{} is not a unit; validate the presentation", a + 1, b + 1))
        };
        match i.cmp(&j) {
            Equal => QMonomialTerm::one(),
            Less => lookup(i, j),
            Greater => lookup(j, i).inverse(),
        }
    }

    /// `|a|_omega` of a monomial.
    pub fn omega_weight(&self, m: &Monomial) -> u64 {
        m.exponents()
            .iter()
            .zip(&self.omega)
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum()
    }

    /// Maximum `|a|_omega` over the support of `f`.
    pub fn omega_degree(&self, f: &AlgebraElement) -> Result<u64> {
        f.iter()
            .map(|(m, _)| self.omega_weight(m))
            .max()
            .ok_or(Error::ZeroElement)
    }

    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> Result<std::cmp::Ordering> {
        for m in [a, b] {
            if m.len() != self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    got: m.len(),
                });
            }
        }
        Ok(self.order.compare(a, b, &self.omega))
    }

    /// True when the monomial vanishes in modes `S` and `A`.
    pub fn is_truncated(&self, m: &Monomial) -> bool {
        self.nilpotency.iter().zip(m.exponents()).any(|(&big_n, &a)| a >= big_n)
    }

    /// Basis monomial of `A` (and `S`): every nilpotent exponent below `N_i`.
    pub fn is_reduced(&self, m: &Monomial) -> bool {
        !self.is_truncated(m)
    }

    /// Drops every lower-order term: the associated graded presentation.
    pub fn associated_graded(&self) -> Presentation {
        Presentation {
            p: BTreeMap::new(),
            ..self.clone()
        }
    }

    /// Replaces assigned parameters by rational values everywhere.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Presentation> {
        let mut out = self.clone();
        for v in out.q.values_mut() {
            *v = v.substitute(assignment)?;
        }
        for f in out.p.values_mut() {
            *f = f.map_coefficients(|c| c.substitute(assignment))?;
        }
        Ok(out)
    }

    /// Parameters occurring anywhere in the presentation.
    pub fn parameters(&self) -> std::collections::BTreeSet<ParamIndex> {
        let mut out = std::collections::BTreeSet::new();
        for v in self.q.values() {
            out.extend(v.parameters());
        }
        for f in self.p.values() {
            for (_, c) in f.iter() {
                out.extend(c.parameters());
            }
        }
        out
    }

    /// Structural checks of the PBW hypotheses. Never aborts; every violation
    /// is recorded as a failed check.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("validate");
        let n = self.n;
        report.record("n >= 1", (n == 0).then(|| "no generators".to_string()));
        report.record(
            "t <= n",
            (self.t() > n).then(|| format!("t = {} exceeds n = {}", self.t(), n)),
        );
        for (i, &big_n) in self.nilpotency.iter().enumerate() {
            report.record(
                format!("N_{} > 1", i + 1),
                (big_n < 2).then(|| format!("N must exceed 1 (got {big_n})")),
            );
        }
        report.record(
            "omega has n positive weights",
            if self.omega.len() != n {
                Some(format!("expected {} weights, got {}", n, self.omega.len()))
            } else if self.omega.contains(&0) {
                Some("weights must be positive".to_string())
            } else {
                None
            },
        );
        for i in 0..n {
            for j in i + 1..n {
                let p = ParamIndex::new(i, j).expect("i < j");
                let residue = match self.q.get(&p) {
                    None => Some("missing".to_string()),
                    Some(v) if !v.is_unit() => Some(format!("{v} is not a unit")),
                    _ => None,
                };
                report.record(format!("{p} is a unit"), residue);
            }
        }
        for (&(i, j), f) in &self.p {
            let object = format!("p{}_{}", i + 1, j + 1);
            if let Some(bad) = f.iter().find(|(m, _)| m.len() != n) {
                report.fail(object, format!("monomial {} has the wrong length", bad.0));
                continue;
            }
            if self.omega.len() != n {
                continue;
            }
            let deg = self.omega_degree(f).unwrap_or(0);
            let bound = self.omega[i] as u64 + self.omega[j] as u64;
            report.record(
                format!("{object} degree"),
                (deg >= bound).then(|| {
                    format!(
                        "deg_omega = {deg} is not below omega_{} + omega_{} = {bound}",
                        i + 1,
                        j + 1
                    )
                }),
            );
            let xij = Monomial::generator(i, n).mul(&Monomial::generator(j, n));
            let leading = f
                .iter()
                .find(|(m, _)| self.order.compare(m, &xij, &self.omega) != std::cmp::Ordering::Less);
            report.record(
                format!("{object} below x{}x{} in the {} order", i + 1, j + 1, self.order),
                leading.map(|(m, _)| format!("{m} is not smaller")),
            );
            report.record(
                format!("{object} augmented"),
                (!f.coefficient(&Monomial::one(n)).is_zero())
                    .then(|| "lower-order term has a constant part".to_string()),
            );
        }
        report
    }

    /// Validates and converts failures into an error.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.passed() {
            Ok(())
        } else {
            Err(Error::Validation(
                report
                    .failures()
                    .map(|c| format!("{}: {}", c.object, c.residue.as_deref().unwrap_or("")))
                    .collect(),
            ))
        }
    }

    /// `q_ij` as stored, with the symbolic default `q_ij` for missing entries.
    pub fn q_scalar(&self, i: usize, j: usize) -> Result<LaurentScalar> {
        if i < j {
            let p = ParamIndex::new(i, j)?;
            match self.q.get(&p) {
                Some(v) => Ok(v.clone()),
                None => canonical_q(i, j, self.n),
            }
        } else {
            Ok(self.q(i, j).into())
        }
    }

    /// All monomials with `|a|_omega <= bound`, optionally restricted to the
    /// basis of `A` (nilpotent exponents below `N_i`).
    pub fn monomials_up_to(&self, bound: u64, reduced_only: bool) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.n];
        self.enumerate(0, bound, reduced_only, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, k: usize, budget: u64, reduced_only: bool, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == self.n {
            out.push(Monomial::new(current.clone()));
            return;
        }
        let w = self.omega.get(k).copied().unwrap_or(1).max(1) as u64;
        let mut e = 0u32;
        loop {
            let cost = e as u64 * w;
            if cost > budget {
                break;
            }
            if reduced_only && self.big_n(k).is_some_and(|big_n| e >= big_n) {
                break;
            }
            current[k] = e;
            self.enumerate(k + 1, budget - cost, reduced_only, current, out);
            e += 1;
        }
        current[k] = 0;
    }
}
