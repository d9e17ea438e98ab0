//! Normal forms by rewriting `x_j x_i -> q_ij^{-1} (x_i x_j - p_ij)` for `i < j`.

use std::collections::BTreeMap;

use super::{AlgebraElement, AlgebraMode, Monomial, Presentation, Word};
use crate::error::{Error, Result};
use crate::qscalar::{LaurentScalar, QMonomialTerm};
use crate::report::Report;

/// Rewrite budget per input word.
pub const STEP_BUDGET: usize = 1_000_000;

/// Which out-of-order adjacent pair is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Canonical form of a word in the chosen algebra, rewriting leftmost pairs first.
pub fn normal_form(word: &Word, pres: &Presentation, mode: AlgebraMode) -> Result<AlgebraElement> {
    normal_form_with(word, pres, mode, Strategy::Leftmost)
}

pub fn normal_form_with(
    word: &Word,
    pres: &Presentation,
    mode: AlgebraMode,
    strategy: Strategy,
) -> Result<AlgebraElement> {
    Rewriter::new(pres, mode, strategy).reduce(vec![(word.clone(), LaurentScalar::one())])
}

/// Product of two elements, in canonical form.
pub fn multiply(
    f: &AlgebraElement,
    g: &AlgebraElement,
    pres: &Presentation,
    mode: AlgebraMode,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    if uses_skew_product(pres, mode) {
        for (a, ca) in f.iter() {
            for (b, cb) in g.iter() {
                if let Some((u, m)) = skew_product(a, b, pres, mode) {
                    out.add_term(m, &(ca * cb).mul_term(&u));
                }
            }
        }
        return Ok(out);
    }
    let rewriter = Rewriter::new(pres, mode, Strategy::Leftmost);
    for (a, ca) in f.iter() {
        for (b, cb) in g.iter() {
            let word = a.to_word().concat(&b.to_word());
            let nf = rewriter.reduce(vec![(word, ca * cb)])?;
            out.add_assign(&nf);
        }
    }
    Ok(out)
}

/// Without lower-order terms every product of monomials is a single q-scaled monomial.
fn uses_skew_product(pres: &Presentation, mode: AlgebraMode) -> bool {
    mode == AlgebraMode::S || !pres.has_lower_terms()
}

/// `x^a x^b = prod_{k<l} q_lk^{a_l b_k} x^{a+b}`, or `None` if truncated.
pub(crate) fn skew_product(
    a: &Monomial,
    b: &Monomial,
    pres: &Presentation,
    mode: AlgebraMode,
) -> Option<(QMonomialTerm, Monomial)> {
    let m = a.mul(b);
    if mode != AlgebraMode::B && pres.is_truncated(&m) {
        return None;
    }
    let n = pres.n();
    let mut u = QMonomialTerm::one();
    for l in 1..n {
        let al = a.exponent(l) as i64;
        if al == 0 {
            continue;
        }
        for k in 0..l {
            let bk = b.exponent(k) as i64;
            if bk != 0 {
                u = u.mul(&pres.q(l, k).pow(al * bk));
            }
        }
    }
    Some((u, m))
}

struct Rewriter<'a> {
    pres: &'a Presentation,
    mode: AlgebraMode,
    strategy: Strategy,
    budget: usize,
}

impl<'a> Rewriter<'a> {
    fn new(pres: &'a Presentation, mode: AlgebraMode, strategy: Strategy) -> Self {
        Self {
            pres,
            mode,
            strategy,
            budget: STEP_BUDGET,
        }
    }

    /// Zero in the current algebra for reasons visible on the word itself.
    fn vanishes(&self, w: &[usize]) -> bool {
        match self.mode {
            AlgebraMode::B => false,
            // letters commute up to scalars, so counts are invariant
            AlgebraMode::S => {
                let mut counts = vec![0u32; self.pres.t()];
                for &i in w {
                    if let Some(c) = counts.get_mut(i) {
                        *c += 1;
                        if *c >= self.pres.nilpotency()[i] {
                            return true;
                        }
                    }
                }
                false
            }
            // only a literal run x_i^{N_i} is certainly in the ideal
            AlgebraMode::A => {
                let mut run = 0u32;
                for (k, &i) in w.iter().enumerate() {
                    run = if k > 0 && w[k - 1] == i { run + 1 } else { 1 };
                    if self.pres.big_n(i).is_some_and(|big_n| run >= big_n) {
                        return true;
                    }
                }
                false
            }
        }
    }

    fn find_pair(&self, w: &[usize]) -> Option<usize> {
        let mut positions = (0..w.len().saturating_sub(1)).filter(|&k| w[k] > w[k + 1]);
        match self.strategy {
            Strategy::Leftmost => positions.next(),
            Strategy::Rightmost => positions.next_back(),
        }
    }

    /// One rewrite of the pair at `k` (which must be out of order).
    fn rewrite_at(&self, w: &[usize], k: usize) -> Vec<(Word, LaurentScalar)> {
        let (j, i) = (w[k], w[k + 1]);
        debug_assert!(i < j);
        let inv: LaurentScalar = self.pres.q(i, j).inverse().into();
        let mut swapped = w.to_vec();
        swapped.swap(k, k + 1);
        let mut out = vec![(Word(swapped), inv.clone())];
        if self.mode != AlgebraMode::S {
            if let Some(p) = self.pres.p(i, j) {
                for (m, c) in p.iter() {
                    let mut letters = w[..k].to_vec();
                    letters.extend(m.to_word().0);
                    letters.extend_from_slice(&w[k + 2..]);
                    out.push((Word(letters), -(c * &inv)));
                }
            }
        }
        out
    }

    fn reduce(&self, start: Vec<(Word, LaurentScalar)>) -> Result<AlgebraElement> {
        let n = self.pres.n();
        let mut pending: BTreeMap<Word, LaurentScalar> = BTreeMap::new();
        let label = start.first().map(|(w, _)| w.to_string()).unwrap_or_default();
        for (w, c) in start {
            merge(&mut pending, w, &c);
        }
        let mut out = AlgebraElement::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_first() {
            if self.vanishes(&w.0) {
                continue;
            }
            match self.find_pair(&w.0) {
                None => {
                    let m = w.to_monomial(n);
                    if self.mode == AlgebraMode::B || !self.pres.is_truncated(&m) {
                        out.add_term(m, &c);
                    }
                }
                Some(k) => {
                    steps += 1;
                    if steps > self.budget {
                        return Err(Error::NonTerminating {
                            word: label,
                            budget: self.budget,
                        });
                    }
                    for (next, u) in self.rewrite_at(&w.0, k) {
                        merge(&mut pending, next, &(&c * &u));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn merge(pending: &mut BTreeMap<Word, LaurentScalar>, w: Word, c: &LaurentScalar) {
    use std::collections::btree_map::Entry;
    match pending.entry(w) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c.clone());
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

/// Empirical diamond-lemma check: every overlap `x_k x_j x_i` (`i < j < k`)
/// resolves identically whichever pair is rewritten first, and every word up to
/// length `degree_bound` has the same normal form under leftmost and rightmost
/// rewriting.
pub fn check_confluence(pres: &Presentation, mode: AlgebraMode, degree_bound: usize) -> Report {
    let mut report = Report::new("confluence");
    let n = pres.n();
    let left = Rewriter::new(pres, mode, Strategy::Leftmost);
    let resolve = |w: &[usize], k: usize| -> Result<AlgebraElement> {
        let start = left.rewrite_at(w, k).into_iter().collect();
        left.reduce(start)
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let w = [k, j, i];
                let word = Word(w.to_vec());
                let object = format!("overlap {word}");
                match (resolve(&w, 0), resolve(&w, 1)) {
                    (Ok(a), Ok(b)) if a == b => report.ok(object),
                    (Ok(a), Ok(b)) => report.fail(object, format!("({a}) versus ({b})")),
                    (Err(e), _) | (_, Err(e)) => report.fail(object, e.to_string()),
                }
            }
        }
    }
    if n > 0 {
        for len in 2..=degree_bound {
            let total = n.checked_pow(len as u32).unwrap_or(usize::MAX);
            for code in 0..total {
                let mut letters = vec![0; len];
                let mut rest = code;
                for slot in letters.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                let w = Word(letters);
                if w.is_sorted() {
                    continue;
                }
                let a = normal_form_with(&w, pres, mode, Strategy::Leftmost);
                let b = normal_form_with(&w, pres, mode, Strategy::Rightmost);
                let object = format!("word {w}");
                match (a, b) {
                    (Ok(a), Ok(b)) if a == b => report.ok(object),
                    (Ok(a), Ok(b)) => report.fail(object, format!("({a}) versus ({b})")),
                    (Err(e), _) | (_, Err(e)) => report.fail(object, e.to_string()),
                }
            }
        }
    }
    report
}

/// Converts a failing confluence report into the first witness.
pub fn first_confluence_error(report: &Report) -> Option<Error> {
    report.failures().next().map(|c| {
        let residue = c.residue.clone().unwrap_or_default();
        let (left, right) = residue
            .split_once(" versus ")
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .unwrap_or((residue.clone(), String::new()));
        Error::ConfluenceFailure {
            word: c.object.clone(),
            left,
            right,
        }
    })
}
