use super::{multiply, AlgebraElement, AlgebraMode, Monomial, Presentation};
use crate::error::Result;
use crate::qscalar::QMonomialTerm;
use crate::report::Report;

/// `[x^a, x^b]_c = x^a x^b - (prod_{k<l} q_lk^{-(b_l a_k - b_k a_l)}) x^b x^a`.
pub fn braided_bracket(a: &Monomial, b: &Monomial, pres: &Presentation, mode: AlgebraMode) -> Result<AlgebraElement> {
    let n = pres.n();
    let mut twist = QMonomialTerm::one();
    for l in 1..n {
        for k in 0..l {
            let e = b.exponent(l) as i64 * a.exponent(k) as i64 - b.exponent(k) as i64 * a.exponent(l) as i64;
            if e != 0 {
                twist = twist.mul(&pres.q(l, k).pow(-e));
            }
        }
    }
    let fa = AlgebraElement::monomial(a.clone());
    let fb = AlgebraElement::monomial(b.clone());
    let ab = multiply(&fa, &fb, pres, mode)?;
    let ba = multiply(&fb, &fa, pres, mode)?;
    Ok(ab.sub(&ba.scale_unit(&twist)))
}

/// Checks `[x_i^{N_i}, x^b]_c = 0` in `B` for every `x^b` with `|b|_omega <= degree_bound`.
pub fn check_braided_central(i: usize, pres: &Presentation, degree_bound: u64) -> Report {
    let mut report = Report::new(format!("braided-center x{}", i + 1));
    let Some(big_n) = pres.big_n(i) else {
        report.fail(format!("x{}", i + 1), format!("index exceeds t = {}", pres.t()));
        return report;
    };
    let central = Monomial::power(i, big_n, pres.n());
    for b in pres.monomials_up_to(degree_bound, false) {
        if b.is_one() {
            continue;
        }
        let object = format!("[{central}, {b}]_c");
        match braided_bracket(&central, &b, pres, AlgebraMode::B) {
            Ok(v) if v.is_zero() => report.ok(object),
            Ok(v) => report.fail(object, v.to_string()),
            Err(e) => report.fail(object, e.to_string()),
        }
    }
    report
}
