//! Brute-force rational-place counts for the quotient plane models, with
//! explicit audits of the places at infinity and over singular points, and
//! Hasse-Weil maximality verification.

use crate::error::{Error, Result};
use crate::ff::{make_field, Field, FieldElem};
use crate::geometry::split_prime_power;
use std::collections::HashMap;

const COUNT_MAX: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub q: u64,
    /// Number of GF(q^2)-rational places of the smooth model.
    pub n: u64,
    pub genus: u64,
    /// N = q^2 + 1 + 2 g q exactly.
    pub maximal: bool,
}

impl CountReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.q, "N": self.n, "genus": self.genus, "maximal": self.maximal,
        })
    }
    fn finish(q: u64, n: u64, genus: u64) -> CountReport {
        CountReport { q, n, genus, maximal: n == q * q + 1 + 2 * genus * q }
    }
}

fn base_field(q: u64) -> Result<Field> {
    if q * q > COUNT_MAX {
        return Err(Error::FieldTooLarge(q * q));
    }
    let (p, h) = split_prime_power(q)?;
    make_field(p, (2 * h) as usize)
}

/// Kummer fiber count: number of y in GF(q^2) with y^m = t, for t != 0:
/// m if t is an m-th power else 0 (m | q^2-1 here).
fn kummer_fibers(f: &Field, m: u64, t: &FieldElem) -> u64 {
    let n = f.size() - 1;
    let g = num_integer::gcd(m, n);
    if f.pow(t, n / g) == f.one() {
        g
    } else {
        0
    }
}

/// Lambdas realizing the quotient: lambda = c^{p-1} for a nonzero c with
/// c^q + c = 0, equivalently lambda^{(q-1)/(p-1)} = -1.
///
/// The source states the weaker condition lambda^h = -1; for odd p with
/// h > 1 that family contains twists of the quotient that are not
/// F_{q^2}-maximal (e.g. q = 9: N drops to 64), so validation uses the
/// construction-derived condition. The discrepancy is a registry finding.
pub fn lambda_is_valid(f: &Field, q: u64, p: u64, lam: &FieldElem) -> bool {
    if f.is_zero(lam) {
        return false;
    }
    f.pow(lam, (q - 1) / (p - 1)) == f.neg(&f.one())
}

fn default_lambda(f: &Field, q: u64, p: u64) -> Result<FieldElem> {
    if p == 2 {
        return Ok(f.one());
    }
    // epsilon^{p-1} for the trace-zero unit epsilon = g^{(q+1)/2}
    let lam = f.pow(&f.primitive(), (q + 1) / 2 * (p - 1));
    debug_assert!(lambda_is_valid(f, q, p, &lam));
    Ok(lam)
}

/// Count the quotient model y^{(q+1)/d} = sum_{i=1}^{h} lambda^{i-1} x^{q/p^i}
/// with lambda^h = -1; one rational place at infinity since gcd((q+1)/d, q/p) = 1.
pub fn count_tipo_e(q: u64, d: u64, lambda: Option<FieldElem>) -> Result<CountReport> {
    let (p, h) = split_prime_power(q)?;
    if (q + 1) % d != 0 {
        return Err(Error::HypothesisViolated(format!("{d} must divide q+1")));
    }
    let f = base_field(q)?;
    let lam = match lambda {
        Some(l) => {
            if l.ctx != f.id() {
                return Err(Error::LambdaInvalid("lambda must lie in GF(q^2)".into()));
            }
            if !lambda_is_valid(&f, q, p, &l) {
                return Err(Error::LambdaInvalid(format!(
                    "lambda^((q-1)/(p-1)) != -1: not of the form c^(p-1) for a \
                     Hermitian translation parameter c"
                )));
            }
            l
        }
        None => default_lambda(&f, q, p)?,
    };
    let m = (q + 1) / d;
    // genuine quotient model: f(x) = sum_i m_i x^{q/p^i} with m_1 = 1 and
    // m_{i+1} = m_i lambda^{p^{h-i}}, obtained by skew-dividing x^q + x by
    // x^p - lambda x (the printed coefficients lambda^{i-1} agree with this
    // only for h <= 2 up to relabeling within the valid lambda family)
    let mut coefs = Vec::with_capacity(h as usize);
    let mut cur = f.one();
    for i in 1..=h {
        coefs.push(cur);
        if i < h {
            cur = f.mul(&cur, &f.pow(&lam, p.pow(h - i)));
        }
    }
    // separable: the x-coefficient m_h = -lambda^{-1} is nonzero
    let eval = |x: &FieldElem| {
        let mut acc = f.zero();
        for (i, c) in coefs.iter().enumerate() {
            let e = p.pow(h - 1 - i as u32);
            acc = f.add(&acc, &f.mul(c, &f.pow(x, e)));
        }
        acc
    };
    let mut n = 1u64; // infinity
    for x in f.iter_elems() {
        let t = eval(&x);
        if f.is_zero(&t) {
            n += 1;
        } else {
            n += kummer_fibers(&f, m, &t);
        }
    }
    let genus = (m - 1) * (p.pow(h - 1) - 1) / 2;
    Ok(CountReport::finish(q, n, genus))
}

/// Image-count table of an additive map A on GF(q^2): t -> #preimages.
fn additive_image_counts(f: &Field, a: impl Fn(&FieldElem) -> FieldElem) -> HashMap<FieldElem, u64> {
    let mut out = HashMap::new();
    for y in f.iter_elems() {
        *out.entry(a(&y)).or_insert(0) += 1;
    }
    out
}

/// Named quotient models: case 1 (order-p elation quotient), case 2
/// (order-p single-fixed-point quotient, p odd), case 5 (order d | q^2-1).
pub fn count_named_model(case: u8, q: u64, d: u64) -> Result<CountReport> {
    let (p, h) = split_prime_power(q)?;
    let f = base_field(q)?;
    match case {
        1 => {
            // sum_{i=1}^h y^{q/p^i} + w x^{q+1} = 0, w^{q-1} = -1
            let w = if p == 2 {
                f.one()
            } else {
                f.pow(&f.primitive(), (q + 1) / 2)
            };
            debug_assert_eq!(f.pow(&w, q - 1), f.neg(&f.one()));
            let ay = |y: &FieldElem| {
                let mut acc = f.zero();
                for i in 1..=h {
                    acc = f.add(&acc, &f.pow(y, p.pow(h - i)));
                }
                acc
            };
            let table = additive_image_counts(&f, ay);
            let mut n = 1u64; // pole order q+1 is prime to p: one rational place at infinity
            for x in f.iter_elems() {
                let t = f.neg(&f.mul(&w, &f.pow(&x, q + 1)));
                n += table.get(&t).copied().unwrap_or(0);
            }
            let genus = p.pow(h - 1) * (q - p) / 2;
            Ok(CountReport::finish(q, n, genus))
        }
        2 => {
            if p < 3 {
                return Err(Error::HypothesisViolated("case 2 needs p >= 3".into()));
            }
            // y^q + y = (sum_{i=1}^h x^{q/p^i})^2
            let ay = |y: &FieldElem| f.add(&f.pow(y, q), y);
            let table = additive_image_counts(&f, &ay);
            let bx = |x: &FieldElem| {
                let mut acc = f.zero();
                for i in 1..=h {
                    acc = f.add(&acc, &f.pow(x, p.pow(h - i)));
                }
                acc
            };
            let infinity = artin_schreier_infinity_places(&f, q, p, h)?;
            let mut n = infinity;
            for x in f.iter_elems() {
                let b = bx(&x);
                let t = f.mul(&b, &b);
                n += table.get(&t).copied().unwrap_or(0);
            }
            let genus = p.pow(h - 1) * (q - 1) / 2;
            Ok(CountReport::finish(q, n, genus))
        }
        5 => {
            // y^{(q^2-1)/d} = x(x+1)^{q-1}
            if (q * q - 1) % d == 0 && d >= 1 {
                let m = (q * q - 1) / d;
                let minus_one = f.neg(&f.one());
                let mut n = 1u64; // gcd(m, q) = 1: one rational place over x = infinity
                for x in f.iter_elems() {
                    if x == minus_one {
                        continue; // audited separately: the plane point is singular
                    }
                    let t = f.mul(&x, &f.pow(&f.add(&x, &f.one()), q - 1));
                    if f.is_zero(&t) {
                        n += 1;
                    } else {
                        n += kummer_fibers(&f, m, &t);
                    }
                }
                // places over x = -1: r = gcd(m, q-1) of them, rational iff the
                // residual unit -1 is an r-th power in GF(q^2)
                let r = num_integer::gcd(m, q - 1);
                let neg_is_rth_power = if p == 2 {
                    true
                } else {
                    // -1 = g^{(q^2-1)/2} is an r-th power iff r | (q^2-1)/2
                    ((q * q - 1) / 2) % r == 0
                };
                if m == 1 {
                    // degree-one cover: the point (-1, f(-1)) is plain
                    n += 1;
                } else if neg_is_rth_power {
                    n += r;
                }
                let g = num_integer::gcd(d, q + 1);
                let genus = (q + 1 - g) * (q - 1) / (2 * d);
                Ok(CountReport::finish(q, n, genus))
            } else {
                Err(Error::HypothesisViolated(format!("{d} must divide q^2-1")))
            }
        }
        other => Err(Error::HypothesisViolated(format!(
            "case {other} has no computable model"
        ))),
    }
}

/// Rational places over x = infinity for y^q + y = (sum x^{q/p^i})^2.
///
/// For every index-p subgroup T of the kernel of y -> y^q + y the induced
/// degree-p cover is Artin-Schreier-reduced; if the reduced pole order is
/// prime to p for all T, the place is totally ramified and contributes one
/// rational place.
fn artin_schreier_infinity_places(f: &Field, q: u64, p: u64, h: u32) -> Result<u64> {
    // kernel of A(y) = y^q + y inside GF(q^2)
    let mut kernel = Vec::new();
    for y in f.iter_elems() {
        if f.is_zero(&f.add(&f.pow(&y, q), &y)) {
            kernel.push(y);
        }
    }
    debug_assert_eq!(kernel.len() as u64, q);
    // F_p-basis of the kernel
    let basis = fp_basis(f, &kernel);
    debug_assert_eq!(basis.len(), h as usize);
    // hyperplanes = kernels of nonzero functionals up to scalar
    let mut functionals = Vec::new();
    enumerate_functionals(p, h as usize, &mut functionals);
    let fx_coeffs = rhs_square_coeffs(f, q, p, h);
    for func in functionals {
        // hyperplane T = {sum c_i b_i : func . c = 0}
        let mut t_set = Vec::new();
        let mut idx = vec![0u64; h as usize];
        loop {
            let dot: u64 = idx.iter().zip(&func).map(|(a, b)| a * b).sum::<u64>() % p;
            if dot == 0 {
                let mut v = f.zero();
                for (c, b) in idx.iter().zip(&basis) {
                    v = f.add(&v, &f.mul(&f.from_int(*c as i64), b));
                }
                t_set.push(v);
            }
            // odometer
            let mut i = 0;
            loop {
                if i == idx.len() {
                    break;
                }
                idx[i] += 1;
                if idx[i] < p {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
        debug_assert_eq!(t_set.len() as u64, q / p);
        if !hyperplane_quotient_ramified(f, q, p, &t_set, &fx_coeffs)? {
            return Err(Error::HypothesisViolated(
                "unramified infinity component in an Artin-Schreier quotient; \
                 place count not implemented for this parameter set"
                    .into(),
            ));
        }
    }
    Ok(1)
}

fn fp_basis(f: &Field, vecs: &[FieldElem]) -> Vec<FieldElem> {
    // greedy independence over F_p on coefficient vectors
    let k = f.k();
    let p = f.p() as i64;
    let mut reduced: Vec<Vec<i64>> = Vec::new();
    let mut basis = Vec::new();
    for v in vecs {
        let mut cur: Vec<i64> = v.c[..k].iter().map(|&x| x as i64).collect();
        for r in &reduced {
            let lead = r.iter().position(|&x| x != 0).unwrap();
            if cur[lead] != 0 {
                let s = (cur[lead] * crate::ff::mod_inverse(r[lead], p)).rem_euclid(p);
                for i in 0..k {
                    cur[i] = (cur[i] - s * r[i]).rem_euclid(p);
                }
            }
        }
        if cur.iter().any(|&x| x != 0) {
            reduced.push(cur);
            basis.push(*v);
        }
    }
    basis
}

fn enumerate_functionals(p: u64, h: usize, out: &mut Vec<Vec<u64>>) {
    // nonzero functionals with first nonzero entry 1 (projective reps)
    let total = p.pow(h as u32);
    for v in 1..total {
        let mut digits = Vec::with_capacity(h);
        let mut vv = v;
        for _ in 0..h {
            digits.push(vv % p);
            vv /= p;
        }
        if let Some(first) = digits.iter().find(|&&d| d != 0) {
            if *first == 1 {
                out.push(digits);
            }
        }
    }
}

/// Coefficients of (sum_{i=1}^h x^{p^{h-i}})^2 as exponent -> coefficient.
fn rhs_square_coeffs(f: &Field, _q: u64, p: u64, h: u32) -> HashMap<u64, FieldElem> {
    let mut b: HashMap<u64, FieldElem> = HashMap::new();
    for i in 1..=h {
        let e = p.pow(h - i);
        *b.entry(e).or_insert(f.zero()) = f.one();
    }
    let mut sq: HashMap<u64, FieldElem> = HashMap::new();
    for (e1, c1) in &b {
        for (e2, c2) in &b {
            let e = e1 + e2;
            let c = f.mul(c1, c2);
            let entry = sq.entry(e).or_insert(f.zero());
            *entry = f.add(entry, &c);
        }
    }
    sq.retain(|_, c| !f.is_zero(c));
    sq
}

/// Reduce the pole of f at infinity inside the degree-p quotient determined
/// by hyperplane T; true when the reduced pole order is prime to p.
fn hyperplane_quotient_ramified(
    f: &Field,
    q: u64,
    p: u64,
    t_set: &[FieldElem],
    fx: &HashMap<u64, FieldElem>,
) -> Result<bool> {
    // w_T(y) = prod_{kappa in T} (y - kappa); A = A_T o w_T with
    // A_T(z) = z^p + a z. Determine a by evaluation.
    let w_t = |y: &FieldElem| {
        let mut acc = f.one();
        for kappa in t_set {
            acc = f.mul(&acc, &f.sub(y, kappa));
        }
        acc
    };
    let a_of = |y: &FieldElem| -> Option<FieldElem> {
        let w = w_t(y);
        if f.is_zero(&w) {
            return None;
        }
        let ay = f.add(&f.pow(y, q), y);
        let num = f.sub(&ay, &f.pow(&w, p));
        Some(f.div(&num, &w).unwrap())
    };
    let mut a = None;
    for y in f.iter_elems() {
        if let Some(v) = a_of(&y) {
            a = Some(v);
            break;
        }
    }
    let a = a.expect("some y lies outside the hyperplane");
    // AS-reduce: subtract (c x^{e/p})^p + a (c x^{e/p}) while p | deg
    let mut cur: HashMap<u64, FieldElem> = fx.clone();
    loop {
        let Some(&deg) = cur.keys().max() else { return Ok(false) };
        if deg == 0 {
            return Ok(false); // constant: unramified
        }
        if deg % p != 0 {
            return Ok(true);
        }
        let lead = cur[&deg];
        // c with c^p = lead: Frobenius inverse
        let mut c = lead;
        for _ in 0..(f.k() as u32 - 1) {
            c = f.pow(&c, f.p());
        }
        debug_assert_eq!(f.pow(&c, p), lead);
        let e = deg / p;
        // subtract c^p x^deg + a c x^e
        cur.remove(&deg);
        let sub = f.mul(&a, &c);
        let entry = cur.entry(e).or_insert(f.zero());
        *entry = f.sub(entry, &sub);
        cur.retain(|_, v| !f.is_zero(v));
        if cur.is_empty() {
            return Ok(false);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tipo_e_reference_counts() {
        // q=8, d=3, lambda=1: genus 3, N = 113
        let r = count_tipo_e(8, 3, None).unwrap();
        assert_eq!((r.genus, r.n, r.maximal), (3, 113, true));
        // q=9, d=5: genus 1, N = 100
        let r = count_tipo_e(9, 5, None).unwrap();
        assert_eq!((r.genus, r.n, r.maximal), (1, 100, true));
        // q=4, d=5: rational curve
        let r = count_tipo_e(4, 5, None).unwrap();
        assert_eq!((r.genus, r.n, r.maximal), (0, 17, true));
    }

    #[test]
    fn tipo_e_lambda_independence_on_valid_family() {
        // all construction-valid lambdas give the same count (small q)
        for (q, d) in [(4u64, 5u64), (8, 3), (9, 5), (5, 3)] {
            let f = base_field(q).unwrap();
            let (p, _) = split_prime_power(q).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut tried = 0;
            for lam in f.iter_elems() {
                if lambda_is_valid(&f, q, p, &lam) {
                    let r = count_tipo_e(q, d, Some(lam)).unwrap();
                    seen.insert(r.n);
                    tried += 1;
                }
            }
            assert_eq!(tried as u64, (q - 1) / (p - 1));
            assert_eq!(seen.len(), 1, "q={q} d={d}: count depends on lambda");
        }
    }

    #[test]
    fn printed_lambda_condition_admits_non_maximal_twists() {
        // the stated condition lambda^h = -1 at q = 9 selects twists with
        // N = 64 = q^2 + 1 - 2gq: minimal, not maximal (registry finding)
        let q = 9u64;
        let f = base_field(q).unwrap();
        let (p, h) = split_prime_power(q).unwrap();
        for lam in f.iter_elems() {
            if f.is_zero(&lam) || f.pow(&lam, h as u64) != f.neg(&f.one()) {
                continue;
            }
            assert!(!lambda_is_valid(&f, q, p, &lam));
            // count the twist directly
            let m = (q + 1) / 5;
            let mut n = 1u64;
            for x in f.iter_elems() {
                let t = f.add(&f.pow(&x, 3), &f.mul(&lam, &x));
                if f.is_zero(&t) {
                    n += 1;
                } else {
                    n += kummer_fibers(&f, m, &t);
                }
            }
            assert_eq!(n, 64);
        }
    }

    #[test]
    fn tipo_e_rejects_bad_lambda() {
        let f = base_field(9).unwrap();
        let bad = f.one();
        assert!(matches!(
            count_tipo_e(9, 5, Some(bad)),
            Err(Error::LambdaInvalid(_))
        ));
    }

    #[test]
    fn named_model_counts() {
        // case 1 at q=4: genus 2, N = 33
        let r = count_named_model(1, 4, 0).unwrap();
        assert_eq!((r.genus, r.n, r.maximal), (2, 33, true));
        // case 2 at q=9: genus 12, N = 298
        let r = count_named_model(2, 9, 0).unwrap();
        assert_eq!((r.genus, r.n, r.maximal), (12, 298, true));
        // case 5 at q=4, d=15: rational
        let r = count_named_model(5, 4, 15).unwrap();
        assert_eq!((r.genus, r.n, r.maximal), (0, 17, true));
    }

    #[test]
    fn case5_with_singular_audit() {
        // q=5, d=3: m=8, genus (1/6)(6-3)(4) = 2, maximality forces N = 46
        let r = count_named_model(5, 5, 3).unwrap();
        assert_eq!(r.genus, 2);
        assert_eq!(r.n, 46);
        assert!(r.maximal);
    }
}
