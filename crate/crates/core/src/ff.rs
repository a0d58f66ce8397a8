//! Exact arithmetic in GF(p^k) with canonical moduli, subfield embeddings for
//! the towers GF(p^{2n}) ⊂ GF(p^{6n}), and enough univariate polynomial algebra
//! to find roots of characteristic cubics.
//!
//! Elements are coefficient vectors over GF(p) in the polynomial basis of a
//! canonical modulus, so equal (p, k) always produce bit-identical encodings.

use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

/// Largest supported extension degree; GF(2^18) is the biggest tower we need.
pub const MAX_K: usize = 18;

/// Fields up to this size get exp/log tables for O(1) multiplication.
const TABLE_MAX: u64 = 1 << 20;

/// Little-endian coefficient vector, zero-padded to `MAX_K`.
pub type Coeffs = [u8; MAX_K];

pub const ZERO_C: Coeffs = [0u8; MAX_K];

fn one_c() -> Coeffs {
    let mut c = ZERO_C;
    c[0] = 1;
    c
}

/// Identifier of an interned field context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CtxId(pub u32);

/// An element of some GF(p^k): context id plus coefficient vector.
///
/// Equality and hashing go through (ctx, coeffs), so elements are usable as
/// map keys without dragging the whole context along.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub ctx: CtxId,
    pub c: Coeffs,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = field_by_id(self.ctx);
        write!(f, "{:?}", &self.c[..field.k()])
    }
}

struct Tables {
    /// exp[i] = g^i for the lexicographic-first primitive element g.
    exp: Vec<Coeffs>,
    /// log indexed by packed coefficient value; log[0] is unused.
    log: Vec<u32>,
}

pub struct FieldData {
    id: CtxId,
    p: u16,
    k: usize,
    size: u64,
    modulus: Vec<u8>,
    /// red[i] = x^{k+i} mod modulus, for reducing schoolbook products.
    red: Vec<Coeffs>,
    /// Distinct prime factors of size - 1.
    size1_factors: Vec<u64>,
    tables: Option<Tables>,
    primitive: once_cell::sync::OnceCell<Coeffs>,
}

/// Cheap handle to an interned field context.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.k())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for Field {}

struct Registry {
    by_key: HashMap<(u16, usize, Vec<u8>), usize>,
    fields: Vec<Field>,
    embeds: HashMap<(CtxId, CtxId), Arc<Vec<Coeffs>>>,
}

static REGISTRY: Lazy<RwLock<Registry>> = Lazy::new(|| {
    RwLock::new(Registry {
        by_key: HashMap::new(),
        fields: Vec::new(),
        embeds: HashMap::new(),
    })
});

pub fn field_by_id(id: CtxId) -> Field {
    REGISTRY.read().unwrap().fields[id.0 as usize].clone()
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- dense GF(p) polynomial helpers used during context construction ----

fn pp_trim(v: &mut Vec<u8>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn pp_mulmod(a: &[u8], b: &[u8], m: &[u8], p: u16) -> Vec<u8> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += ai as u32 * bj as u32;
        }
    }
    let deg_m = m.len() - 1;
    // m is monic, reduce top-down
    for i in (deg_m..prod.len()).rev() {
        let t = prod[i] % p as u32;
        prod[i] = 0;
        if t == 0 {
            continue;
        }
        for j in 0..deg_m {
            prod[i - deg_m + j] += t * ((p as u32 - m[j] as u32) % p as u32);
        }
    }
    let mut out: Vec<u8> = prod[..deg_m.min(prod.len())]
        .iter()
        .map(|&x| (x % p as u32) as u8)
        .collect();
    if out.is_empty() {
        out.push(0);
    }
    pp_trim(&mut out);
    out
}

fn pp_powmod(base: &[u8], mut e: u64, m: &[u8], p: u16) -> Vec<u8> {
    let mut acc = vec![1u8];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_mulmod(&acc, &b, m, p);
        }
        b = pp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn pp_sub(a: &[u8], b: &[u8], p: u16) -> Vec<u8> {
    let n = a.len().max(b.len());
    let mut out = vec![0u8; n];
    for i in 0..n {
        let ai = *a.get(i).unwrap_or(&0) as i32;
        let bi = *b.get(i).unwrap_or(&0) as i32;
        out[i] = (ai - bi).rem_euclid(p as i32) as u8;
    }
    pp_trim(&mut out);
    out
}

fn pp_gcd(a: &[u8], b: &[u8], p: u16) -> Vec<u8> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    pp_trim(&mut a);
    pp_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = pp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pp_rem(a: &[u8], b: &[u8], p: u16) -> Vec<u8> {
    let db = b.len() - 1;
    if db == 0 {
        return vec![0];
    }
    let mut r: Vec<i64> = a.iter().map(|&x| x as i64).collect();
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    let lb_inv = mod_inverse(b[db] as i64, p as i64);
    while r.len() > db {
        let dr = r.len() - 1;
        let coef = (r[dr] * lb_inv).rem_euclid(p as i64);
        if coef != 0 {
            for j in 0..=db {
                r[dr - db + j] = (r[dr - db + j] - coef * b[j] as i64).rem_euclid(p as i64);
            }
        }
        r.pop();
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    let mut out: Vec<u8> = r.iter().map(|&x| x as u8).collect();
    pp_trim(&mut out);
    out
}

pub(crate) fn mod_inverse(a: i64, p: i64) -> i64 {
    // extended Euclid; p prime, a nonzero mod p
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p)
}

/// Rabin irreducibility test for a monic polynomial over GF(p).
fn pp_is_irreducible(f: &[u8], p: u16) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u8, 1u8];
    // x^{p^k} mod f must equal x
    let mut y = x.clone();
    for _ in 0..k {
        y = pp_powmod(&y, p as u64, f, p);
    }
    if pp_sub(&y, &x, p) != vec![0u8] {
        return false;
    }
    for r in prime_factors(k as u64) {
        let j = k / r as usize;
        let mut y = x.clone();
        for _ in 0..j {
            y = pp_powmod(&y, p as u64, f, p);
        }
        let d = pp_sub(&y, &x, p);
        let g = pp_gcd(f, &d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Canonical modulus: first monic irreducible of degree k over GF(p) in
/// counting order of the constant-first coefficient tuple (a0 varies fastest).
fn canonical_modulus(p: u16, k: usize) -> Vec<u8> {
    if k == 1 {
        return vec![0, 1]; // t
    }
    let mut digits = vec![0u8; k];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if pp_is_irreducible(&f, p) {
            return f;
        }
        // odometer with a0 fastest
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p as u8 {
                break;
            }
            digits[i] = 0;
            i += 1;
            if i == k {
                unreachable!("no irreducible polynomial found, which cannot happen");
            }
        }
    }
}

/// Build (or fetch the interned copy of) GF(p^k) with the canonical modulus.
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 256 {
        return Err(Error::UnsupportedPrime(p));
    }
    if k == 0 || k > MAX_K {
        return Err(Error::DegreeOutOfRange(k));
    }
    let modulus = canonical_modulus(p as u16, k);
    make_field_with_modulus(p, k, &modulus)
}

/// Override constructor for cross-checking against external tables.
pub fn make_field_with_modulus(p: u64, k: usize, modulus: &[u8]) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 256 {
        return Err(Error::UnsupportedPrime(p));
    }
    if k == 0 || k > MAX_K || modulus.len() != k + 1 || modulus[k] != 1 {
        return Err(Error::DegreeOutOfRange(k));
    }
    let mut size: u64 = 1;
    for _ in 0..k {
        size = size
            .checked_mul(p)
            .filter(|&s| s < (1u64 << 62))
            .ok_or(Error::DegreeOutOfRange(k))?;
    }
    if !pp_is_irreducible(modulus, p as u16) {
        return Err(Error::DegreeOutOfRange(k));
    }

    let key = (p as u16, k, modulus.to_vec());
    {
        let reg = REGISTRY.read().unwrap();
        if let Some(&idx) = reg.by_key.get(&key) {
            return Ok(reg.fields[idx].clone());
        }
    }

    // reduction rows x^{k+i} mod modulus
    let mut red = Vec::with_capacity(k.max(1));
    let x = vec![0u8, 1u8];
    let mut cur = pp_powmod(&x, k as u64, modulus, p as u16);
    for _ in 0..k {
        let mut row = ZERO_C;
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        red.push(row);
        cur = pp_mulmod(&cur, &x, modulus, p as u16);
    }

    let data = FieldData {
        id: CtxId(0), // patched below
        p: p as u16,
        k,
        size,
        modulus: modulus.to_vec(),
        red,
        size1_factors: prime_factors(size - 1),
        tables: None,
        primitive: once_cell::sync::OnceCell::new(),
    };

    let mut reg = REGISTRY.write().unwrap();
    if let Some(&idx) = reg.by_key.get(&key) {
        return Ok(reg.fields[idx].clone());
    }
    let idx = reg.fields.len();
    let mut data = data;
    data.id = CtxId(idx as u32);
    let mut field = Field(Arc::new(data));
    if size <= TABLE_MAX && k > 1 {
        let tables = build_tables(&field);
        // nobody else holds the Arc yet
        Arc::get_mut(&mut field.0).unwrap().tables = Some(tables);
    }
    reg.by_key.insert(key, idx);
    reg.fields.push(field.clone());
    Ok(field)
}

fn build_tables(f: &Field) -> Tables {
    let g = f.primitive_c();
    let n = (f.size() - 1) as usize;
    let mut exp = Vec::with_capacity(n);
    let mut log = vec![0u32; f.size() as usize];
    let mut cur = one_c();
    for i in 0..n {
        exp.push(cur);
        log[f.pack(&cur) as usize] = i as u32;
        cur = f.mul_slow(&cur, &g);
    }
    Tables { exp, log }
}

impl Field {
    pub fn id(&self) -> CtxId {
        self.0.id
    }
    pub fn p(&self) -> u64 {
        self.0.p as u64
    }
    pub fn k(&self) -> usize {
        self.0.k
    }
    /// p^k
    pub fn size(&self) -> u64 {
        self.0.size
    }
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { ctx: self.id(), c: ZERO_C }
    }
    pub fn one(&self) -> FieldElem {
        FieldElem { ctx: self.id(), c: one_c() }
    }
    /// Integer image n·1.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let r = n.rem_euclid(self.p() as i64) as u8;
        let mut c = ZERO_C;
        c[0] = r;
        FieldElem { ctx: self.id(), c }
    }
    /// Element from little-endian coefficients (entries reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.k() {
            return Err(Error::FieldMismatch);
        }
        let mut c = ZERO_C;
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = (v % self.p()) as u8;
        }
        Ok(FieldElem { ctx: self.id(), c })
    }
    pub fn coeffs_vec(&self, a: &FieldElem) -> Vec<u64> {
        a.c[..self.k()].iter().map(|&x| x as u64).collect()
    }

    pub fn pack(&self, c: &Coeffs) -> u64 {
        let mut v = 0u64;
        for i in (0..self.k()).rev() {
            v = v * self.p() + c[i] as u64;
        }
        v
    }
    pub fn unpack(&self, mut v: u64) -> Coeffs {
        let mut c = ZERO_C;
        for i in 0..self.k() {
            c[i] = (v % self.p()) as u8;
            v /= self.p();
        }
        c
    }

    /// Iterate all field elements in packed counting order.
    pub fn iter_elems(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size()).map(move |v| FieldElem { ctx: self.id(), c: self.unpack(v) })
    }

    pub fn is_zero_c(&self, a: &Coeffs) -> bool {
        a[..self.k()].iter().all(|&x| x == 0)
    }

    pub fn add_c(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let p = self.0.p as u16;
        let mut out = ZERO_C;
        for i in 0..self.k() {
            let s = a[i] as u16 + b[i] as u16;
            out[i] = (if s >= p { s - p } else { s }) as u8;
        }
        out
    }
    pub fn neg_c(&self, a: &Coeffs) -> Coeffs {
        let p = self.0.p as u16;
        let mut out = ZERO_C;
        for i in 0..self.k() {
            out[i] = if a[i] == 0 { 0 } else { (p - a[i] as u16) as u8 };
        }
        out
    }
    pub fn sub_c(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        self.add_c(a, &self.neg_c(b))
    }

    fn mul_slow(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        let k = self.k();
        let p = self.0.p as u32;
        let mut prod = [0u32; 2 * MAX_K];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            let ai = a[i] as u32;
            for j in 0..k {
                prod[i + j] += ai * b[j] as u32;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let t = prod[i] % p;
            prod[i] = 0;
            if t == 0 {
                continue;
            }
            let row = &self.0.red[i - k];
            for j in 0..k {
                prod[j] += t * row[j] as u32;
            }
        }
        let mut out = ZERO_C;
        for j in 0..k {
            out[j] = (prod[j] % p) as u8;
        }
        out
    }

    pub fn mul_c(&self, a: &Coeffs, b: &Coeffs) -> Coeffs {
        if self.k() == 1 {
            let mut out = ZERO_C;
            out[0] = ((a[0] as u16 * b[0] as u16) % self.0.p) as u8;
            return out;
        }
        if let Some(t) = &self.0.tables {
            if self.is_zero_c(a) || self.is_zero_c(b) {
                return ZERO_C;
            }
            let n = self.size() - 1;
            let la = t.log[self.pack(a) as usize] as u64;
            let lb = t.log[self.pack(b) as usize] as u64;
            let mut s = la + lb;
            if s >= n {
                s -= n;
            }
            return t.exp[s as usize];
        }
        self.mul_slow(a, b)
    }

    pub fn pow_c(&self, a: &Coeffs, e: u64) -> Coeffs {
        if self.is_zero_c(a) {
            return if e == 0 { one_c() } else { ZERO_C };
        }
        if let Some(t) = &self.0.tables {
            let n = self.size() - 1;
            let la = t.log[self.pack(a) as usize] as u128;
            let s = (la * e as u128 % n as u128) as usize;
            return t.exp[s];
        }
        let mut acc = one_c();
        let mut b = *a;
        let mut e = e % (self.size() - 1);
        if e == 0 {
            return one_c();
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_c(&acc, &b);
            }
            b = self.mul_c(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn inv_c(&self, a: &Coeffs) -> Result<Coeffs> {
        if self.is_zero_c(a) {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let n = self.size() - 1;
            let la = t.log[self.pack(a) as usize] as u64;
            let s = if la == 0 { 0 } else { n - la };
            return Ok(t.exp[s as usize]);
        }
        Ok(self.pow_c(a, self.size() - 2))
    }

    /// a^{p^j}
    pub fn frob_c(&self, a: &Coeffs, j: u32) -> Coeffs {
        let j = j as usize % self.k();
        if j == 0 || self.is_zero_c(a) {
            return *a;
        }
        let mut e: u128 = 1;
        for _ in 0..j {
            e *= self.p() as u128;
        }
        let e = (e % (self.size() - 1) as u128) as u64;
        self.pow_c(a, e)
    }

    /// Least e >= 1 with a^e = 1; divides p^k - 1.
    pub fn order_c(&self, a: &Coeffs) -> Result<u64> {
        if self.is_zero_c(a) {
            return Err(Error::ZeroElement);
        }
        let mut e = self.size() - 1;
        for &f in &self.0.size1_factors {
            while e % f == 0 {
                let cand = self.pow_c(a, e / f);
                if cand == one_c() {
                    e /= f;
                } else {
                    break;
                }
            }
        }
        Ok(e)
    }

    /// Lexicographic-first primitive element (generator of the unit group).
    pub fn primitive_c(&self) -> Coeffs {
        *self.0.primitive.get_or_init(|| {
            for v in 1..self.size() {
                let c = self.unpack(v);
                let mut ok = true;
                for &f in &self.0.size1_factors {
                    if self.pow_slow(&c, (self.size() - 1) / f) == one_c() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return c;
                }
            }
            unreachable!("unit group of a finite field is cyclic")
        })
    }

    fn pow_slow(&self, a: &Coeffs, mut e: u64) -> Coeffs {
        let mut acc = one_c();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(&acc, &b);
            }
            b = self.mul_slow(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn primitive(&self) -> FieldElem {
        FieldElem { ctx: self.id(), c: self.primitive_c() }
    }

    /// An element of exact multiplicative order n (requires n | p^k - 1).
    pub fn element_of_order(&self, n: u64) -> Result<FieldElem> {
        if n == 0 || (self.size() - 1) % n != 0 {
            return Err(Error::HypothesisViolated(format!(
                "no element of order {n} in GF({}^{})",
                self.p(),
                self.k()
            )));
        }
        let g = self.primitive_c();
        Ok(FieldElem {
            ctx: self.id(),
            c: self.pow_c(&g, (self.size() - 1) / n),
        })
    }

    fn check(&self, a: &FieldElem) -> Result<()> {
        if a.ctx != self.id() {
            return Err(Error::CtxMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert_eq!(a.ctx, b.ctx);
        FieldElem { ctx: a.ctx, c: self.add_c(&a.c, &b.c) }
    }
    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem { ctx: a.ctx, c: self.sub_c(&a.c, &b.c) }
    }
    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem { ctx: a.ctx, c: self.neg_c(&a.c) }
    }
    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert_eq!(a.ctx, b.ctx);
        FieldElem { ctx: a.ctx, c: self.mul_c(&a.c, &b.c) }
    }
    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(FieldElem { ctx: a.ctx, c: self.mul_c(&a.c, &self.inv_c(&b.c)?) })
    }
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        Ok(FieldElem { ctx: a.ctx, c: self.inv_c(&a.c)? })
    }
    pub fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        FieldElem { ctx: a.ctx, c: self.pow_c(&a.c, e) }
    }
    pub fn frobenius(&self, a: &FieldElem, j: u32) -> FieldElem {
        FieldElem { ctx: a.ctx, c: self.frob_c(&a.c, j) }
    }
    pub fn is_zero(&self, a: &FieldElem) -> bool {
        self.is_zero_c(&a.c)
    }
}

/// Checked dispatcher mirroring the external operation surface.
pub enum ArithOp {
    Add,
    Mul,
    Div,
    Pow(u64),
    Frobenius(u32),
}

pub fn field_arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    let f = field_by_id(a.ctx);
    f.check(a)?;
    match op {
        ArithOp::Add => {
            f.check(b)?;
            Ok(f.add(a, b))
        }
        ArithOp::Mul => {
            f.check(b)?;
            Ok(f.mul(a, b))
        }
        ArithOp::Div => {
            f.check(b)?;
            f.div(a, b)
        }
        ArithOp::Pow(e) => Ok(f.pow(a, e)),
        ArithOp::Frobenius(j) => Ok(f.frobenius(a, j)),
    }
}

/// Least e >= 1 with a^e = 1.
pub fn mult_order(a: &FieldElem) -> Result<u64> {
    let f = field_by_id(a.ctx);
    f.order_c(&a.c)
}

/// Ring-homomorphic embedding GF(p^sub) -> GF(p^sup), cached per pair.
///
/// The image of the canonical generator t is the first h = G^{j·step}
/// (G primitive, step = (p^sup-1)/ord(t), j coprime to ord(t) ascending)
/// whose minimal polynomial over GF(p) equals the subfield modulus.
pub fn embed(sub: &Field, sup: &Field, a: &FieldElem) -> Result<FieldElem> {
    if a.ctx != sub.id() {
        return Err(Error::CtxMismatch);
    }
    if sub.id() == sup.id() {
        return Ok(*a);
    }
    if sub.p() != sup.p() || sup.k() % sub.k() != 0 {
        return Err(Error::NotASubfield { p: sub.p(), sub: sub.k(), sup: sup.k() });
    }
    let powers = embed_powers(sub, sup)?;
    let mut acc = ZERO_C;
    for i in 0..sub.k() {
        if a.c[i] == 0 {
            continue;
        }
        let mut term = powers[i];
        let scal = sup.from_int(a.c[i] as i64);
        term = sup.mul_c(&term, &scal.c);
        acc = sup.add_c(&acc, &term);
    }
    Ok(FieldElem { ctx: sup.id(), c: acc })
}

fn embed_powers(sub: &Field, sup: &Field) -> Result<Arc<Vec<Coeffs>>> {
    let key = (sub.id(), sup.id());
    {
        let reg = REGISTRY.read().unwrap();
        if let Some(p) = reg.embeds.get(&key) {
            return Ok(p.clone());
        }
    }
    let powers = if sub.k() == 1 {
        // prime subfield: scalar lift
        vec![one_c()]
    } else {
        let g = sup.primitive_c();
        // order of the canonical generator (class of x) in the subfield
        let mut t = ZERO_C;
        t[1] = 1;
        let ord_t = sub.order_c(&t)?;
        let step = (sup.size() - 1) / ord_t;
        let mut found = None;
        for j in 1..=ord_t {
            if num_integer::gcd(j, ord_t) != 1 {
                continue;
            }
            let h = sup.pow_c(&g, (j as u128 * step as u128 % (sup.size() - 1) as u128) as u64);
            if min_poly_over_prime(sup, &h, sub.k()) == sub.modulus() {
                found = Some(h);
                break;
            }
        }
        let h = found.ok_or(Error::NotASubfield { p: sub.p(), sub: sub.k(), sup: sup.k() })?;
        let mut powers = Vec::with_capacity(sub.k());
        let mut cur = one_c();
        for _ in 0..sub.k() {
            powers.push(cur);
            cur = sup.mul_c(&cur, &h);
        }
        powers
    };
    let arc = Arc::new(powers);
    REGISTRY.write().unwrap().embeds.insert(key, arc.clone());
    Ok(arc)
}

/// Minimal polynomial of h over GF(p) as coefficient vector, assuming deg | d.
fn min_poly_over_prime(f: &Field, h: &Coeffs, d: usize) -> Vec<u8> {
    // distinct conjugates h^{p^i}
    let mut conj = vec![*h];
    let mut cur = *h;
    loop {
        cur = f.frob_c(&cur, 1);
        if cur == *h {
            break;
        }
        conj.push(cur);
    }
    if conj.len() != d {
        return vec![]; // wrong degree, caller rejects
    }
    // expand prod (x - c)
    let mut poly: Vec<Coeffs> = vec![one_c()];
    for c in &conj {
        let neg = f.neg_c(c);
        let mut next = vec![ZERO_C; poly.len() + 1];
        for (i, t) in poly.iter().enumerate() {
            next[i + 1] = f.add_c(&next[i + 1], t);
            next[i] = f.add_c(&next[i], &f.mul_c(t, &neg));
        }
        poly = next;
    }
    // coefficients must be prime-field scalars
    let mut out = Vec::with_capacity(poly.len());
    for c in &poly {
        if c[1..f.k()].iter().any(|&x| x != 0) {
            return vec![];
        }
        out.push(c[0]);
    }
    out
}

// ------------------------- polynomials over a field -------------------------

/// Dense univariate polynomial over one field context, trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub field: Field,
    pub c: Vec<Coeffs>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly(deg {:?})", self.deg())
    }
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Coeffs>) -> Poly {
        let mut p = Poly { field: field.clone(), c: coeffs };
        p.trim();
        p
    }
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), c: vec![] }
    }
    pub fn from_elems(field: &Field, elems: &[FieldElem]) -> Poly {
        Poly::new(field, elems.iter().map(|e| e.c).collect())
    }
    fn trim(&mut self) {
        while let Some(last) = self.c.last() {
            if self.field.is_zero_c(last) {
                self.c.pop();
            } else {
                break;
            }
        }
    }
    pub fn deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn eval(&self, x: &Coeffs) -> Coeffs {
        let f = &self.field;
        let mut acc = ZERO_C;
        for c in self.c.iter().rev() {
            acc = f.add_c(&f.mul_c(&acc, x), c);
        }
        acc
    }
    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let mut out = vec![ZERO_C; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(ZERO_C);
            let b = other.c.get(i).copied().unwrap_or(ZERO_C);
            out[i] = f.add_c(&a, &b);
        }
        Poly::new(f, out)
    }
    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let mut out = vec![ZERO_C; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(ZERO_C);
            let b = other.c.get(i).copied().unwrap_or(ZERO_C);
            out[i] = f.sub_c(&a, &b);
        }
        Poly::new(f, out)
    }
    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![ZERO_C; self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero_c(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] = f.add_c(&out[i + j], &f.mul_c(a, b));
            }
        }
        Poly::new(f, out)
    }
    pub fn scale(&self, s: &Coeffs) -> Poly {
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|c| f.mul_c(c, s)).collect())
    }
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv_c(&d.c[dd])?;
        let mut rem = self.c.clone();
        if rem.len() < d.c.len() {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![ZERO_C; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let coef = f.mul_c(&rem[i], &lead_inv);
            if f.is_zero_c(&coef) {
                continue;
            }
            quot[i - dd] = coef;
            for j in 0..=dd {
                let t = f.mul_c(&coef, &d.c[j]);
                rem[i - dd + j] = f.sub_c(&rem[i - dd + j], &t);
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }
    pub fn gcd(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        // monic normalization
        if let Some(d) = a.deg() {
            let inv = f.inv_c(&a.c[d]).unwrap();
            a = a.scale(&inv);
        }
        a
    }
    /// self^e mod m by square and multiply.
    pub fn powmod(&self, e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::new(&self.field, vec![one_c()]);
        let mut b = self.divrem(m).unwrap().1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).divrem(m).unwrap().1;
            }
            b = b.mul(&b).divrem(m).unwrap().1;
            e >>= 1;
        }
        acc
    }
    /// Map coefficients into a larger field.
    pub fn lift(&self, target: &Field) -> Result<Poly> {
        let sub = &self.field;
        let mut out = Vec::with_capacity(self.c.len());
        for c in &self.c {
            let e = FieldElem { ctx: sub.id(), c: *c };
            out.push(embed(sub, target, &e)?.c);
        }
        Ok(Poly::new(target, out))
    }
}

/// Square root in GF(p^k), deterministic (Tonelli–Shanks with the first
/// non-residue in counting order). Returns None for non-squares.
pub fn sqrt_c(f: &Field, a: &Coeffs) -> Option<Coeffs> {
    if f.is_zero_c(a) {
        return Some(ZERO_C);
    }
    if f.p() == 2 {
        // squaring is bijective in characteristic 2
        let mut e: u128 = 1;
        for _ in 0..f.k() {
            e *= 2;
        }
        // sqrt = a^{2^{k-1}} since a^{2^k} = a
        let _ = e;
        let mut r = *a;
        for _ in 0..f.k() - 1 {
            r = f.mul_c(&r, &r);
        }
        // r = a^{2^{k-1}}; r^2 = a^{2^k} = a
        return Some(r);
    }
    let n = f.size() - 1;
    if f.pow_c(a, n / 2) != one_c() {
        return None;
    }
    // write n = 2^s * t
    let mut t = n;
    let mut s = 0;
    while t % 2 == 0 {
        t /= 2;
        s += 1;
    }
    // first non-residue
    let mut z = ZERO_C;
    for v in 2..f.size() {
        let c = f.unpack(v);
        if f.pow_c(&c, n / 2) != one_c() {
            z = c;
            break;
        }
    }
    let mut m = s;
    let mut c = f.pow_c(&z, t);
    let mut t_acc = f.pow_c(a, t);
    let mut r = f.pow_c(a, (t + 1) / 2);
    loop {
        if t_acc == one_c() {
            return Some(r);
        }
        let mut i = 0;
        let mut tmp = t_acc;
        while tmp != one_c() {
            tmp = f.mul_c(&tmp, &tmp);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = f.mul_c(&b, &b);
        }
        m = i;
        c = f.mul_c(&b, &b);
        t_acc = f.mul_c(&t_acc, &c);
        r = f.mul_c(&r, &b);
    }
}

/// All roots of f (deg <= 3) in `target`, with multiplicities.
///
/// gcd(f, x^{|T|} - x) isolates the split part; the degree <= 3 factors are
/// then broken by explicit formulas or seeded equal-degree splitting.
pub fn poly_roots_in(f: &Poly, target: &Field) -> Result<Vec<(FieldElem, usize)>> {
    let d = match f.deg() {
        None | Some(0) => return Ok(vec![]),
        Some(d) => d,
    };
    if d > 3 {
        return Err(Error::DegreeTooHigh(d));
    }
    let ft = f.lift(target)?;
    // split part: gcd(f, x^{|T|} - x)
    let x = Poly::new(target, vec![ZERO_C, one_c()]);
    let xq = x.powmod(target.size(), &ft);
    let split = ft.gcd(&xq.sub(&x));
    let mut roots = Vec::new();
    collect_roots(&split, target, &mut roots);
    // multiplicities by repeated division
    let mut out = Vec::new();
    for r in roots {
        let lin = Poly::new(target, vec![target.neg_c(&r), one_c()]);
        let mut m = 0;
        let mut cur = ft.clone();
        loop {
            let (q, rem) = cur.divrem(&lin)?;
            if rem.is_zero() {
                m += 1;
                cur = q;
            } else {
                break;
            }
        }
        out.push((FieldElem { ctx: target.id(), c: r }, m));
    }
    out.sort_by_key(|(e, _)| target.pack(&e.c));
    Ok(out)
}

fn collect_roots(g: &Poly, f: &Field, out: &mut Vec<Coeffs>) {
    match g.deg() {
        None | Some(0) => {}
        Some(1) => {
            let r = f.mul_c(&f.neg_c(&g.c[0]), &f.inv_c(&g.c[1]).unwrap());
            out.push(r);
        }
        Some(2) => {
            let (r1, r2) = split_quadratic(g, f);
            out.push(r1);
            if r2 != r1 {
                out.push(r2);
            }
        }
        _ => {
            // fully split cubic: peel one root by seeded EDS, recurse
            let r = one_root_eds(g, f);
            out.push(r);
            let lin = Poly::new(f, vec![f.neg_c(&r), one_c()]);
            let (q, _) = g.divrem(&lin).unwrap();
            collect_roots(&q, f, out);
        }
    }
}

/// Roots of a monic-izable quadratic that is known to split over f.
fn split_quadratic(g: &Poly, f: &Field) -> (Coeffs, Coeffs) {
    let inv2lead = f.inv_c(&g.c[2]).unwrap();
    let b = f.mul_c(&g.c[1], &inv2lead);
    let c = f.mul_c(&g.c[0], &inv2lead);
    if f.p() != 2 {
        let inv2 = f.inv_c(&f.from_int(2).c).unwrap();
        // t^2 + bt + c: roots (-b ± sqrt(b^2-4c))/2
        let disc = f.sub_c(&f.mul_c(&b, &b), &f.mul_c(&f.from_int(4).c, &c));
        let s = sqrt_c(f, &disc).expect("quadratic declared split");
        let r1 = f.mul_c(&f.add_c(&f.neg_c(&b), &s), &inv2);
        let r2 = f.mul_c(&f.sub_c(&f.neg_c(&b), &s), &inv2);
        (r1, r2)
    } else if f.is_zero_c(&b) {
        let r = sqrt_c(f, &c).unwrap();
        (r, r)
    } else {
        // y^2 + by + c, substitute y = b w: w^2 + w = c / b^2
        let b2inv = f.inv_c(&f.mul_c(&b, &b)).unwrap();
        let t = f.mul_c(&c, &b2inv);
        let w = solve_artin_schreier(f, &t).expect("quadratic declared split");
        let r1 = f.mul_c(&b, &w);
        let r2 = f.add_c(&r1, &b);
        (r1, r2)
    }
}

/// Solve w^2 + w = t over GF(2^k) by F2-linear algebra on the coefficient basis.
fn solve_artin_schreier(f: &Field, t: &Coeffs) -> Option<Coeffs> {
    let k = f.k();
    // columns: images of basis vectors under w -> w^2 + w
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = ZERO_C;
        e[i] = 1;
        let img = f.add_c(&f.mul_c(&e, &e), &e);
        cols.push(img);
    }
    // gaussian elimination over F2 on a k x (k+1) system
    let mut rows = vec![0u32; k];
    for r in 0..k {
        for (i, col) in cols.iter().enumerate() {
            if col[r] & 1 == 1 {
                rows[r] |= 1 << i;
            }
        }
        if t[r] & 1 == 1 {
            rows[r] |= 1 << k;
        }
    }
    let mut pivot_col = Vec::new();
    let mut rr = 0;
    for c in 0..k {
        let mut piv = None;
        for r in rr..k {
            if rows[r] >> c & 1 == 1 {
                piv = Some(r);
                break;
            }
        }
        if let Some(p) = piv {
            rows.swap(rr, p);
            for r in 0..k {
                if r != rr && rows[r] >> c & 1 == 1 {
                    rows[r] ^= rows[rr];
                }
            }
            pivot_col.push((rr, c));
            rr += 1;
        }
    }
    // consistency
    for r in rr..k {
        if rows[r] >> k & 1 == 1 {
            return None;
        }
    }
    let mut w = ZERO_C;
    for &(r, c) in &pivot_col {
        if rows[r] >> k & 1 == 1 {
            w[c] = 1;
        }
    }
    Some(w)
}

/// One root of a completely split polynomial of degree >= 2 (seeded EDS).
fn one_root_eds(g: &Poly, f: &Field) -> Coeffs {
    let seed = f.size() ^ ((g.c.len() as u64) << 33) ^ 0x5547_4721;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut rc = Vec::new();
        for _ in 0..g.c.len() - 1 {
            rc.push(f.unpack(rng.gen_range(0..f.size())));
        }
        let r = Poly::new(f, rc);
        if r.is_zero() {
            continue;
        }
        let h = if f.p() == 2 {
            // trace map sum r^{2^i}
            let mut acc = r.divrem(g).unwrap().1;
            let mut cur = acc.clone();
            let bits = 63 - (f.size() - 1).leading_zeros() as usize + 1;
            for _ in 1..bits {
                cur = cur.mul(&cur).divrem(g).unwrap().1;
                acc = acc.add(&cur);
            }
            acc
        } else {
            let e = (f.size() - 1) / 2;
            let one = Poly::new(f, vec![one_c()]);
            r.powmod(e, g).sub(&one)
        };
        let d = g.gcd(&h);
        if let Some(dd) = d.deg() {
            if dd >= 1 && dd < g.deg().unwrap() {
                if dd == 1 {
                    return f.mul_c(&f.neg_c(&d.c[0]), &f.inv_c(&d.c[1]).unwrap());
                }
                let mut out = Vec::new();
                collect_roots(&d, f, &mut out);
                return out[0];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli_match_expected() {
        // exhaustive-scan oracle over monic quadratics in counting order
        let scan = |p: u64| -> Vec<u8> {
            for v in 0..p * p {
                let f = vec![(v % p) as u8, (v / p) as u8, 1];
                if pp_is_irreducible(&f, p as u16) {
                    return f;
                }
            }
            unreachable!()
        };
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), &scan(3)[..]); // t^2 + 1
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f25 = make_field(5, 2).unwrap();
        assert_eq!(f25.modulus(), &scan(5)[..]); // t^2 + 2
        assert_eq!(f25.modulus(), &[2, 0, 1]);
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]); // t
    }

    #[test]
    fn deterministic_context() {
        let a = make_field(3, 2).unwrap();
        let b = make_field(3, 2).unwrap();
        assert_eq!(a.id(), b.id());
        assert_eq!(a.modulus(), b.modulus());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(make_field(2, 19).unwrap_err(), Error::DegreeOutOfRange(19));
    }

    #[test]
    fn gf9_arithmetic() {
        let f = make_field(3, 2).unwrap();
        let t = f.from_coeffs(&[0, 1]).unwrap();
        // t*t = -1 = 2 since modulus is t^2+1
        assert_eq!(f.mul(&t, &t), f.from_int(2));
        // frobenius(1) of t is t^3 = -t = 2t
        assert_eq!(f.frobenius(&t, 1), f.from_coeffs(&[0, 2]).unwrap());
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(mult_order(&t).unwrap(), 4);
        assert_eq!(mult_order(&f.one()).unwrap(), 1);
    }

    #[test]
    fn gf4_generator_order() {
        let f = make_field(2, 2).unwrap();
        let t = f.from_coeffs(&[0, 1]).unwrap(); // root of the modulus
        assert_eq!(mult_order(&t).unwrap(), 3);
    }

    #[test]
    fn unit_group_exponent_small_fields() {
        for (p, k) in [(2, 2), (3, 2), (5, 2), (2, 4), (7, 2), (3, 4)] {
            let f = make_field(p, k).unwrap();
            let n = f.size() - 1;
            for e in f.iter_elems().skip(1) {
                assert_eq!(f.pow(&e, n), f.one());
            }
        }
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        let f = make_field(3, 4).unwrap();
        let g = f.primitive();
        let mut a = g;
        let mut b = f.add(&g, &f.one());
        for _ in 0..50 {
            let fa = f.frobenius(&a, 1);
            let fb = f.frobenius(&b, 1);
            assert_eq!(f.frobenius(&f.mul(&a, &b), 1), f.mul(&fa, &fb));
            assert_eq!(f.frobenius(&f.add(&a, &b), 1), f.add(&fa, &fb));
            a = f.mul(&a, &g);
            b = f.mul(&b, &fa);
        }
        // frobenius(k) is the identity
        for e in f.iter_elems().take(100) {
            assert_eq!(f.frobenius(&e, f.k() as u32), e);
        }
    }

    #[test]
    fn embedding_preserves_structure() {
        // all subfields of size <= 81 into a few towers
        for (p, ks, kt) in [(2u64, 2usize, 6usize), (3, 2, 6), (2, 2, 4), (3, 2, 4), (2, 3, 6)] {
            let sub = make_field(p, ks).unwrap();
            let sup = make_field(p, kt).unwrap();
            for a in sub.iter_elems() {
                for b in sub.iter_elems() {
                    let ea = embed(&sub, &sup, &a).unwrap();
                    let eb = embed(&sub, &sup, &b).unwrap();
                    assert_eq!(embed(&sub, &sup, &sub.mul(&a, &b)).unwrap(), sup.mul(&ea, &eb));
                    assert_eq!(embed(&sub, &sup, &sub.add(&a, &b)).unwrap(), sup.add(&ea, &eb));
                }
                if !sub.is_zero(&a) {
                    let ea = embed(&sub, &sup, &a).unwrap();
                    assert_eq!(mult_order(&a).unwrap(), mult_order(&ea).unwrap());
                }
            }
        }
    }

    #[test]
    fn embed_fixed_field_is_subfield() {
        // GF(9) -> GF(729): images are fixed by x -> x^9
        let sub = make_field(3, 2).unwrap();
        let sup = make_field(3, 6).unwrap();
        for a in sub.iter_elems() {
            let ea = embed(&sub, &sup, &a).unwrap();
            assert_eq!(sup.frobenius(&ea, 2), ea);
        }
    }

    #[test]
    fn embed_rejects_non_subfield() {
        let sub = make_field(2, 2).unwrap();
        let sup = make_field(2, 3).unwrap();
        let a = sub.one();
        assert!(matches!(embed(&sub, &sup, &a), Err(Error::NotASubfield { .. })));
    }

    #[test]
    fn roots_of_quadratic_in_tower() {
        // x^2 + 1 over GF(3) has roots {t, 2t} in GF(9)
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let f = Poly::from_elems(&f3, &[f3.one(), f3.zero(), f3.one()]);
        let roots = poly_roots_in(&f, &f9).unwrap();
        let vals: Vec<Vec<u64>> = roots.iter().map(|(r, _)| f9.coeffs_vec(r)).collect();
        assert_eq!(roots.len(), 2);
        assert!(vals.contains(&vec![0, 1]) && vals.contains(&vec![0, 2]));
    }

    #[test]
    fn roots_linear_and_cubic() {
        let f4 = make_field(2, 2).unwrap();
        // x - 1 -> {1}
        let f = Poly::from_elems(&f4, &[f4.one(), f4.one()]);
        let roots = poly_roots_in(&f, &f4).unwrap();
        assert_eq!(roots, vec![(f4.one(), 1)]);

        // x^3 - g for a generator g of GF(4)*: three roots in GF(64)
        let f64 = make_field(2, 6).unwrap();
        let g = f4.primitive();
        let poly = Poly::from_elems(&f4, &[f4.neg(&g), f4.zero(), f4.zero(), f4.one()]);
        let roots = poly_roots_in(&poly, &f64).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            assert_eq!(f64.pow(r, 3), embed(&f4, &f64, &g).unwrap());
        }
    }

    #[test]
    fn roots_agree_with_exhaustive_scan() {
        // oracle equivalence on a batch of cubics over moderate fields
        for (p, k) in [(3u64, 2usize), (5, 2), (2, 4), (7, 2)] {
            let f = make_field(p, k).unwrap();
            let g = f.primitive();
            let mut polys = Vec::new();
            for a in 0..4u64 {
                let ca = f.pow(&g, a);
                polys.push(Poly::from_elems(&f, &[ca, f.one(), f.from_int(a as i64), f.one()]));
                polys.push(Poly::from_elems(&f, &[f.neg(&ca), f.zero(), f.zero(), f.one()]));
            }
            for poly in polys {
                let fast: Vec<_> = poly_roots_in(&poly, &f).unwrap();
                let mut slow = Vec::new();
                for e in f.iter_elems() {
                    if f.is_zero_c(&poly.eval(&e.c)) {
                        slow.push(e);
                    }
                }
                let fast_set: Vec<_> = fast.iter().map(|(r, _)| *r).collect();
                assert_eq!(fast_set, slow, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        for (p, k) in [(3u64, 2usize), (5, 2), (13, 2), (2, 6)] {
            let f = make_field(p, k).unwrap();
            for e in f.iter_elems().take(200) {
                let sq = f.mul(&e, &e);
                let r = sqrt_c(&f, &sq.c).expect("square must have a root");
                let back = f.mul_c(&r, &r);
                assert_eq!(back, sq.c);
            }
        }
    }
}
