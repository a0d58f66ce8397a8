//! Elements and finitely generated subgroups of PGU(3,q): projective
//! normalization, unitarity testing, breadth-first closure, orders,
//! conjugation, and order statistics.

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElem};
use crate::geometry::{identity_mat, mat_det, mat_mul, HermitianModel, Mat3, ModelTag};
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Shared context for group elements: the model fixes q and GF(q^2).
#[derive(Debug)]
pub struct GroupCtx {
    pub model: HermitianModel,
}

impl GroupCtx {
    pub fn new(tag: ModelTag, q: u64) -> Result<Arc<GroupCtx>> {
        Ok(Arc::new(GroupCtx { model: HermitianModel::new(tag, q)? }))
    }
    pub fn q(&self) -> u64 {
        self.model.q
    }
    pub fn field(&self) -> &Field {
        &self.model.field
    }
    fn key(&self) -> (u64, ModelTag) {
        (self.model.q, self.model.tag)
    }
}

/// A projective unitary matrix, normalized so the first nonzero entry in
/// row-major order equals 1. Proportional matrices normalize identically.
#[derive(Clone)]
pub struct GroupElem {
    pub ctx: Arc<GroupCtx>,
    pub mat: Mat3,
}

impl PartialEq for GroupElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.key() == other.ctx.key() && self.mat == other.mat
    }
}
impl Eq for GroupElem {}

impl std::hash::Hash for GroupElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.key().hash(state);
        self.mat.hash(state);
    }
}

impl std::fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GroupElem(q={}, {}):", self.ctx.q(), self.ctx.model.tag.as_str())?;
        for row in &self.mat {
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

/// Scale so the first nonzero entry in row-major order is 1.
pub fn normalize(f: &Field, mat: &Mat3) -> Mat3 {
    let mut lead = None;
    'outer: for row in mat {
        for e in row {
            if !f.is_zero(e) {
                lead = Some(*e);
                break 'outer;
            }
        }
    }
    let Some(lead) = lead else { return *mat };
    let inv = f.inv(&lead).expect("nonzero");
    let mut out = *mat;
    for row in &mut out {
        for e in row {
            *e = f.mul(e, &inv);
        }
    }
    out
}

/// Gram transformation test: M^T G M^(q) = lambda G for some lambda != 0.
///
/// Returns the scalar when M is unitary for the model, None otherwise.
/// Singular matrices are rejected.
pub fn unitary_scalar(model: &HermitianModel, mat: &Mat3) -> Result<Option<FieldElem>> {
    let f = &model.field;
    if f.is_zero(&mat_det(f, mat)) {
        return Err(Error::SingularMatrix);
    }
    // conj = entrywise q-power frobenius
    let mut conj = *mat;
    for row in &mut conj {
        for e in row {
            *e = f.pow(e, model.q);
        }
    }
    let mut trans = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            trans[i][j] = mat[j][i];
        }
    }
    let t = mat_mul(f, &mat_mul(f, &trans, &model.gram), &conj);
    // find lambda from the first nonzero gram entry
    let mut lambda = None;
    'outer: for i in 0..3 {
        for j in 0..3 {
            if !f.is_zero(&model.gram[i][j]) {
                lambda = Some(f.div(&t[i][j], &model.gram[i][j])?);
                break 'outer;
            }
        }
    }
    let lambda = lambda.expect("gram is nonzero");
    if f.is_zero(&lambda) {
        return Ok(None);
    }
    for i in 0..3 {
        for j in 0..3 {
            if t[i][j] != f.mul(&lambda, &model.gram[i][j]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(lambda))
}

impl GroupElem {
    /// Normalized, unitarity-checked element.
    pub fn new(ctx: &Arc<GroupCtx>, mat: Mat3) -> Result<GroupElem> {
        match unitary_scalar(&ctx.model, &mat)? {
            Some(_) => Ok(GroupElem { ctx: ctx.clone(), mat: normalize(ctx.field(), &mat) }),
            None => Err(Error::NotUnitary),
        }
    }
    /// Skip the unitarity check (products of unitaries stay unitary).
    pub fn new_unchecked(ctx: &Arc<GroupCtx>, mat: Mat3) -> GroupElem {
        GroupElem { ctx: ctx.clone(), mat: normalize(ctx.field(), &mat) }
    }
    pub fn identity(ctx: &Arc<GroupCtx>) -> GroupElem {
        GroupElem { ctx: ctx.clone(), mat: identity_mat(ctx.field()) }
    }
    pub fn is_identity(&self) -> bool {
        self.mat == identity_mat(self.ctx.field())
    }
    pub fn mul(&self, other: &GroupElem) -> GroupElem {
        debug_assert!(Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.key() == other.ctx.key());
        let f = self.ctx.field();
        GroupElem {
            ctx: self.ctx.clone(),
            mat: normalize(f, &mat_mul(f, &self.mat, &other.mat)),
        }
    }
    pub fn inverse(&self) -> GroupElem {
        let f = self.ctx.field();
        GroupElem { ctx: self.ctx.clone(), mat: normalize(f, &mat_inv(f, &self.mat)) }
    }
    pub fn pow(&self, e: u64) -> GroupElem {
        let mut acc = GroupElem::identity(&self.ctx);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
    /// Packed byte key for hashing inside closure sets.
    fn pack_key(&self, k: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(9 * k);
        for row in &self.mat {
            for e in row {
                out.extend_from_slice(&e.c[..k]);
            }
        }
        out
    }
}

/// Adjugate-based inverse; matrices here are always invertible.
pub fn mat_inv(f: &Field, m: &Mat3) -> Mat3 {
    let det = mat_det(f, m);
    let det_inv = f.inv(&det).expect("group elements are invertible");
    let e = |i: usize, j: usize| m[i][j];
    let cof = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(&f.mul(&e(a, b), &e(c, d)), &f.mul(&e(a, d), &e(c, b)))
    };
    let adj = [
        [cof(1, 1, 2, 2), cof(0, 2, 2, 1), cof(0, 1, 1, 2)],
        [cof(1, 2, 2, 0), cof(0, 0, 2, 2), cof(0, 2, 1, 0)],
        [cof(1, 0, 2, 1), cof(0, 1, 2, 0), cof(0, 0, 1, 1)],
    ];
    let mut out = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = f.mul(&adj[i][j], &det_inv);
        }
    }
    out
}

/// A fully generated subgroup: elements in deterministic BFS order.
#[derive(Debug)]
pub struct GeneratedGroup {
    pub ctx: Arc<GroupCtx>,
    pub generators: Vec<GroupElem>,
    pub elements: Vec<GroupElem>,
}

impl GeneratedGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
    /// Element-order statistics as order -> count.
    pub fn census(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for g in &self.elements {
            let o = proj_order(g).expect("closed group elements have finite order");
            *out.entry(o).or_insert(0) += 1;
        }
        out
    }
    pub fn center_size(&self) -> u64 {
        self.elements
            .iter()
            .filter(|z| self.elements.iter().all(|g| z.mul(g) == g.mul(z)))
            .count() as u64
    }
    pub fn contains(&self, g: &GroupElem) -> bool {
        self.elements.iter().any(|h| h == g)
    }
}

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Breadth-first product closure with canonical hashing.
pub fn closure(gens: &[GroupElem], cap: usize) -> Result<GeneratedGroup> {
    if gens.is_empty() {
        return Err(Error::MixedContext);
    }
    let ctx = gens[0].ctx.clone();
    if gens.iter().any(|g| g.ctx.key() != ctx.key()) {
        return Err(Error::MixedContext);
    }
    let k = ctx.field().k();
    let id = GroupElem::identity(&ctx);
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    let mut elements = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(id.pack_key(k), ());
    elements.push(id.clone());
    queue.push_back(id);
    // include inverses so non-symmetric generating sets close correctly
    let mut gen_set: Vec<GroupElem> = Vec::new();
    for g in gens {
        gen_set.push(g.clone());
        gen_set.push(g.inverse());
    }
    while let Some(cur) = queue.pop_front() {
        for g in &gen_set {
            let next = cur.mul(g);
            match seen.entry(next.pack_key(k)) {
                Entry::Occupied(_) => {}
                Entry::Vacant(v) => {
                    v.insert(());
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(GeneratedGroup { ctx, generators: gens.to_vec(), elements })
}

/// Least n >= 1 with g^n scalar; errors past 2p(q^2-1).
pub fn proj_order(g: &GroupElem) -> Result<u64> {
    let q = g.ctx.q();
    let (p, _) = crate::geometry::split_prime_power(q)?;
    let cap = 2 * p * (q * q - 1);
    let mut cur = g.clone();
    for n in 1..=cap {
        if cur.is_identity() {
            return Ok(n);
        }
        cur = cur.mul(g);
    }
    Err(Error::OrderCapExceeded(cap))
}

/// h^{-1} g h, normalized.
pub fn conjugate(g: &GroupElem, h: &GroupElem) -> Result<GroupElem> {
    if g.ctx.key() != h.ctx.key() {
        return Err(Error::MixedContext);
    }
    Ok(h.inverse().mul(g).mul(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::mat_from_ints;

    fn diag(ctx: &Arc<GroupCtx>, a: FieldElem, b: FieldElem, c: FieldElem) -> GroupElem {
        let f = ctx.field();
        let mut m = identity_mat(f);
        m[0][0] = a;
        m[1][1] = b;
        m[2][2] = c;
        GroupElem::new(ctx, m).unwrap()
    }

    #[test]
    fn identity_is_unitary_with_scalar_one() {
        let ctx = GroupCtx::new(ModelTag::Fermat, 3).unwrap();
        let f = ctx.field();
        let lambda = unitary_scalar(&ctx.model, &identity_mat(f)).unwrap();
        assert_eq!(lambda, Some(f.one()));
    }

    #[test]
    fn fermat_diag_unitary_iff_equal_norms() {
        let ctx = GroupCtx::new(ModelTag::Fermat, 3).unwrap();
        let f = ctx.field();
        let g = f.primitive();
        // diag(a,b,c) unitary iff a^{q+1} = b^{q+1} = c^{q+1}
        for ea in 0..8u64 {
            for eb in 0..8u64 {
                let a = f.pow(&g, ea);
                let b = f.pow(&g, eb);
                let mut m = identity_mat(f);
                m[0][0] = a;
                m[1][1] = b;
                let expect = f.pow(&a, 4) == f.pow(&b, 4) && f.pow(&a, 4) == f.one();
                let got = unitary_scalar(&ctx.model, &m).unwrap().is_some();
                assert_eq!(got, expect, "a=g^{ea}, b=g^{eb}");
            }
        }
    }

    #[test]
    fn unitary_scalar_matches_form_transport() {
        // F(M P) = lambda F(P) on every plane point, all three models
        for tag in [ModelTag::Fermat, ModelTag::NormTrace, ModelTag::M3] {
            let ctx = GroupCtx::new(tag, 3).unwrap();
            let f = ctx.field();
            let some_unitary = match tag {
                ModelTag::Fermat => mat_from_ints(f, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
                ModelTag::NormTrace => mat_from_ints(f, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
                ModelTag::M3 => mat_from_ints(f, [[1, 1, 0], [1, 2, 0], [0, 0, 1]]),
            };
            let lambda = unitary_scalar(&ctx.model, &some_unitary)
                .unwrap()
                .expect("chosen matrices are unitary");
            for p in crate::geometry::scan_plane(f).unwrap() {
                let ip = crate::geometry::mat_apply(f, &some_unitary, &p).unwrap();
                // compare as forms on un-normalized images
                let mut raw = [f.zero(); 3];
                for i in 0..3 {
                    for j in 0..3 {
                        raw[i] = f.add(&raw[i], &f.mul(&some_unitary[i][j], &p.coords[j]));
                    }
                }
                let fp = ctx.model.form_at(&p, f).unwrap();
                let fraw = ctx
                    .model
                    .form_at(&crate::geometry::ProjPoint { coords: raw }, f)
                    .unwrap();
                assert_eq!(fraw, f.mul(&lambda, &fp));
                let _ = ip;
            }
        }
    }

    #[test]
    fn sl2q_block_embeds_in_m3_model() {
        // (X,Y,Z) -> (aX+bY, cX+dY, Z) with a,b,c,d in F_q, ad-bc = 1
        let ctx = GroupCtx::new(ModelTag::M3, 3).unwrap();
        let f = ctx.field();
        let m = mat_from_ints(f, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(unitary_scalar(&ctx.model, &m).unwrap().is_some());
        let m = mat_from_ints(f, [[0, -1, 0], [1, 0, 0], [0, 0, 1]]);
        assert!(unitary_scalar(&ctx.model, &m).unwrap().is_some());
    }

    #[test]
    fn cyclic_closure_and_order() {
        let ctx = GroupCtx::new(ModelTag::Fermat, 5).unwrap();
        let f = ctx.field();
        let z = f.element_of_order(6).unwrap();
        let g = diag(&ctx, z, f.one(), f.one());
        let grp = closure(&[g.clone()], 1000).unwrap();
        assert_eq!(grp.order(), 6);
        assert_eq!(proj_order(&g).unwrap(), 6);
        let census = grp.census();
        assert_eq!(census[&1], 1);
        assert_eq!(census[&6], 2);
        assert_eq!(census[&3], 2);
        assert_eq!(census[&2], 1);
    }

    #[test]
    fn normalization_idempotent_and_scalar_free() {
        let ctx = GroupCtx::new(ModelTag::Fermat, 5).unwrap();
        let f = ctx.field();
        let z = f.element_of_order(6).unwrap();
        let m = [[z, f.zero(), f.zero()], [f.zero(), z, f.zero()], [f.zero(), f.zero(), z]];
        let n = normalize(f, &m);
        assert_eq!(n, identity_mat(f));
        assert_eq!(normalize(f, &n), n);
    }

    #[test]
    fn conjugation_preserves_order() {
        let ctx = GroupCtx::new(ModelTag::Fermat, 4).unwrap();
        let f = ctx.field();
        let z = f.element_of_order(5).unwrap();
        let g = diag(&ctx, z, f.one(), f.one());
        let h = GroupElem::new(&ctx, mat_from_ints(f, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])).unwrap();
        let c = conjugate(&g, &h).unwrap();
        assert_eq!(proj_order(&c).unwrap(), proj_order(&g).unwrap());
        assert_eq!(conjugate(&g, &GroupElem::identity(&ctx)).unwrap(), g);
    }

    #[test]
    fn closure_cap_trips() {
        let ctx = GroupCtx::new(ModelTag::Fermat, 5).unwrap();
        let f = ctx.field();
        let z = f.element_of_order(6).unwrap();
        let g = diag(&ctx, z, f.one(), f.one());
        assert!(matches!(closure(&[g], 3), Err(Error::CapExceeded(3))));
    }
}
