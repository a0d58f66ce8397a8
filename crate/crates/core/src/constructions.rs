//! Deterministic generator recipes for the group families appearing in the
//! genus catalog and the spectrum tables, plus a seeded bounded search for
//! rows that only come with a structural description.

use crate::classify::EType;
use crate::error::{Error, Result};
use crate::ff::{embed, make_field, sqrt_c, Field, FieldElem};
use crate::geometry::{identity_mat, mat_mul, split_prime_power, Mat3, ModelTag};
use crate::group::{closure, proj_order, unitary_scalar, GeneratedGroup, GroupCtx, GroupElem,
    DEFAULT_CLOSURE_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// One diagonal generator diag(z^e0, z^e1, z^e2) with z of order m in the
/// (q+1)-torus of the Fermat model.
pub type TorusGen = (u64, [i64; 3]);

/// Deterministic recipes; every variant resolves to a generator list whose
/// closure has a predictable order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Trivial,
    /// Fermat-model diagonal subgroup generated by the listed torus elements.
    Torus { gens: Vec<TorusGen> },
    /// norm_trace diag(a^{q+1}, a, 1) with a of order m | q^2-1.
    B2 { m: u64 },
    /// (q^2-q+1)/m-th power of a Singer generator; order m.
    SingerPower { m: u64 },
    /// Singer power of order m extended by the GF(q^2)-linear Frobenius cube.
    SingerNormalizer { m: u64 },
    /// norm_trace elation of order p.
    Elation,
    /// norm_trace unipotent with nontrivial b-part: order p (p odd) or 4 (p=2).
    UnipotentD,
    /// Commuting unipotents: n_b with b != 0 plus n_c elations.
    UnipotentAbelian { n_b: u32, n_c: u32 },
    /// Commuting elation x homology product of order p*d, d | q+1.
    EElement { d: u64 },
    /// E_{p^k} x| C_d inside the SL(2,q) block of the m3 model.
    EpkCd { k: u32, d: u64 },
    /// Fermat <diag(z, z^-1, 1) of order d, coordinate swap>.
    DihedralB1 { d: u64 },
    /// norm_trace <B2-diagonal of order d, antidiagonal involution>.
    DihedralM2 { d: u64 },
    /// norm_trace <B2-diagonal of order d, antidiagonal of order m> (m even).
    CdCmAnti { d: u64, m: u64 },
    /// norm_trace <diag(1,-1,1), antidiagonal involution> Klein group.
    KleinM2,
    /// norm_trace <B2-diagonal of order d, central homology diag(1,c,1) of order m>.
    B2TimesHom { d: u64, m: u64 },
    /// norm_trace <homology diag(1,c,1) of order m, n_c independent elations>.
    HomElations { m: u64, n_c: u32 },
    /// Fermat <3-cycle, swap>: symmetric group on the coordinate triangle.
    S3Perm,
    /// Fermat <diag(-1,1,1), diag(1,-1,1), 3-cycle>.
    A4,
    /// Quaternion group inside the SL(2,q) block (odd q).
    Q8,
    /// SL(2,3) inside the SL(2,q) block, p >= 5.
    Sl23,
    /// Subfield SL(2, qbar) inside the SL(2,q) block.
    Sl2Subfield { qbar: u64 },
    /// SL(2,5) inside the SL(2,q) block (bounded deterministic search).
    Sl25,
    /// <SL(2,qbar), d_pi> with d_pi = diag(w, w^-1), w = xi^{(qbar+1)/2}.
    Tl2 { qbar: u64 },
    /// SmallGroup(48,28) inside SL(2,q) (bounded deterministic search).
    K4828,
    /// Dicyclic group Dic(n) of order 4n inside SL(2,q).
    Dicyclic { n: u64 },
    /// The full point-line stabilizer M_q = SL(2,q) x| C_{q+1} (m3 model).
    MqGens,
    /// PGU(3, qbar) embedded in the q context (norm_trace, q odd power of qbar).
    PguSubfield { qbar: u64 },
    /// Fermat <diag(l, l^i, 1) of order n, 3-cycle>, i^2-i+1 = 0 mod n.
    TorusC3 { m: u64 },
    /// Fermat <diag(z,1,1), diag(1,z,1), swap>: (C_m x C_m) x| C_2.
    HomologyPairSwap { m: u64 },
    /// Fermat <diag(z,1,1), diag(1,z,1), 3-cycle>: (C_m x C_m) x| C_3.
    HomologyPairCycle { m: u64 },
    /// Fermat <diag(z,1,1), diag(1,z,1), order-4 twisted swap>: (C_m)^2 x| C_4.
    TriangleC4 { m: u64 },
    /// Adjoin a central homology of order m to a norm_trace-model base.
    WithCentralHom { base: Box<Recipe>, m: u64 },
}

fn fermat_ctx(q: u64) -> Result<Arc<GroupCtx>> {
    GroupCtx::new(ModelTag::Fermat, q)
}
fn m2_ctx(q: u64) -> Result<Arc<GroupCtx>> {
    GroupCtx::new(ModelTag::NormTrace, q)
}
fn m3_ctx(q: u64) -> Result<Arc<GroupCtx>> {
    GroupCtx::new(ModelTag::M3, q)
}

/// Nonzero solution of c^q + c = 0 (direction of the trace-zero line).
fn trace_zero_unit(f: &Field, q: u64) -> FieldElem {
    let (p, _) = split_prime_power(q).unwrap();
    if p == 2 {
        f.one()
    } else {
        // g^{(q+1)/2} satisfies x^{q-1} = -1
        f.pow(&f.primitive(), (q + 1) / 2)
    }
}

/// Solve c + c^q = t by F_p-linear algebra in GF(q^2).
fn solve_trace(f: &Field, q: u64, t: &FieldElem) -> Result<FieldElem> {
    let k = f.k();
    let p = f.p() as i64;
    // columns: images of basis vectors under c -> c + c^q
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = crate::ff::ZERO_C;
        e[i] = 1;
        let el = FieldElem { ctx: f.id(), c: e };
        cols.push(f.add(&el, &f.pow(&el, q)));
    }
    // gaussian elimination over F_p on k x (k+1)
    let mut a = vec![vec![0i64; k + 1]; k];
    for r in 0..k {
        for (i, col) in cols.iter().enumerate() {
            a[r][i] = col.c[r] as i64;
        }
        a[r][k] = t.c[r] as i64;
    }
    let mut row = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(pr) = (row..k).find(|&r| a[r][c] % p != 0) else { continue };
        a.swap(row, pr);
        let inv = crate::ff::mod_inverse(a[row][c], p);
        for x in a[row].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for r in 0..k {
            if r != row && a[r][c] != 0 {
                let s = a[r][c];
                for x in 0..=k {
                    a[r][x] = (a[r][x] - s * a[row][x]).rem_euclid(p);
                }
            }
        }
        pivots.push((row, c));
        row += 1;
    }
    for r in row..k {
        if a[r][k] % p != 0 {
            return Err(Error::HypothesisViolated("trace equation unsolvable".into()));
        }
    }
    let mut c = crate::ff::ZERO_C;
    for &(r, col) in &pivots {
        c[col] = a[r][k] as u8;
    }
    Ok(FieldElem { ctx: f.id(), c })
}

/// norm_trace unipotent (X,Y,Z) -> (X, Y+bX, Z+b^q Y+cX), c + c^q = b^{q+1}.
fn psi(ctx: &Arc<GroupCtx>, b: &FieldElem, c: &FieldElem) -> Result<GroupElem> {
    let f = ctx.field();
    let mut m = identity_mat(f);
    m[1][0] = *b;
    m[2][0] = *c;
    m[2][1] = f.pow(b, ctx.q());
    GroupElem::new(ctx, m)
}

/// Unipotent with given b, solving the trace condition for c.
fn psi_from_b(ctx: &Arc<GroupCtx>, b: &FieldElem) -> Result<GroupElem> {
    let f = ctx.field();
    let norm = f.pow(b, ctx.q() + 1);
    let c = solve_trace(f, ctx.q(), &norm)?;
    psi(ctx, b, &c)
}

fn diag(ctx: &Arc<GroupCtx>, d: [FieldElem; 3]) -> Result<GroupElem> {
    let f = ctx.field();
    let mut m = identity_mat(f);
    for i in 0..3 {
        m[i][i] = d[i];
    }
    GroupElem::new(ctx, m)
}

/// Antidiagonal norm_trace unitary (X,Y,Z) -> (A Z, Y, A^{-q} X).
fn antidiag_m2(ctx: &Arc<GroupCtx>, a: &FieldElem) -> Result<GroupElem> {
    let f = ctx.field();
    let mut m = [[f.zero(); 3]; 3];
    m[0][2] = *a;
    m[1][1] = f.one();
    m[2][0] = f.pow(&f.inv(a)?, ctx.q());
    GroupElem::new(ctx, m)
}

/// Primitive element of the F_q subfield inside GF(q^2): g^{q+1}.
fn subfield_primitive(f: &Field, q: u64) -> FieldElem {
    f.pow(&f.primitive(), q + 1)
}

/// SL(2, qbar) block generators inside the m3 model over GF(q^2).
fn sl2_block_gens(ctx: &Arc<GroupCtx>, qbar: u64) -> Result<Vec<GroupElem>> {
    let f = ctx.field();
    let q = ctx.q();
    let (p, h) = split_prime_power(q)?;
    let (pb, hb) = split_prime_power(qbar)?;
    if pb != p || h % hb != 0 {
        return Err(Error::HypothesisViolated(format!(
            "SL(2,{qbar}) does not embed as a subfield block of SL(2,{q})"
        )));
    }
    // theta: a generator of F_qbar^* seen inside GF(q^2)
    let theta = if qbar == q {
        subfield_primitive(f, q)
    } else {
        let sub = make_field(pb, hb as usize)?;
        embed(&sub, f, &sub.primitive())?
    };
    let one = f.one();
    let block = |a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem| -> Result<GroupElem> {
        let mut m = identity_mat(f);
        m[0][0] = a;
        m[0][1] = b;
        m[1][0] = c;
        m[1][1] = d;
        GroupElem::new(ctx, m)
    };
    let mut gens = vec![
        block(one, one, f.zero(), one)?,
        block(one, f.zero(), theta, one)?,
    ];
    if qbar > 2 {
        gens.push(block(theta, f.zero(), f.zero(), f.inv(&theta)?)?);
    } else {
        gens.push(block(f.zero(), one, f.neg(&one), f.zero())?);
    }
    Ok(gens)
}

/// Quaternion blocks i = [[0,-1],[1,0]], j = [[a,b],[b,-a]] with
/// a^2 + b^2 = -1, as raw (unnormalized) 3x3 matrices in the m3 model.
fn q8_blocks(ctx: &Arc<GroupCtx>) -> Result<(Mat3, Mat3)> {
    let f = ctx.field();
    let q = ctx.q();
    let (p, _) = split_prime_power(q)?;
    if p == 2 {
        return Err(Error::HypothesisViolated("Q8 needs odd characteristic".into()));
    }
    let theta = subfield_primitive(f, q);
    let mut candidates: Vec<FieldElem> = (0..p as i64).map(|v| f.from_int(v)).collect();
    let mut cur = theta;
    for _ in 0..q {
        candidates.push(cur);
        cur = f.mul(&cur, &theta);
    }
    for a in &candidates {
        let target = f.sub(&f.neg(&f.one()), &f.mul(a, a));
        if let Some(b) = sqrt_c(f, &target.c) {
            let b = FieldElem { ctx: f.id(), c: b };
            // a, b must lie in F_q for the block to be unitary
            if f.pow(&b, q) != b || f.pow(a, q) != *a {
                continue;
            }
            let mut i_m = identity_mat(f);
            i_m[0][0] = f.zero();
            i_m[0][1] = f.neg(&f.one());
            i_m[1][0] = f.one();
            i_m[1][1] = f.zero();
            let mut j_m = identity_mat(f);
            j_m[0][0] = *a;
            j_m[0][1] = b;
            j_m[1][0] = b;
            j_m[1][1] = f.neg(a);
            return Ok((i_m, j_m));
        }
    }
    Err(Error::SearchFailed)
}

fn q8_gens(ctx: &Arc<GroupCtx>) -> Result<Vec<GroupElem>> {
    let (i_m, j_m) = q8_blocks(ctx)?;
    Ok(vec![GroupElem::new(ctx, i_m)?, GroupElem::new(ctx, j_m)?])
}

/// SL(2,3) = <i, w> with w = (-1 + i + j + ij)/2, p >= 5.
fn sl23_gens(ctx: &Arc<GroupCtx>) -> Result<Vec<GroupElem>> {
    let f = ctx.field();
    let (p, _) = split_prime_power(ctx.q())?;
    if p < 5 {
        return Err(Error::HypothesisViolated("SL(2,3) block form needs p >= 5".into()));
    }
    let (i, j) = q8_blocks(ctx)?;
    let k = mat_mul(f, &i, &j);
    let half = f.inv(&f.from_int(2))?;
    let mut w = identity_mat(f);
    for r in 0..2 {
        for c in 0..2 {
            let mut s = f.zero();
            if r == c {
                s = f.neg(&f.one());
            }
            s = f.add(&s, &i[r][c]);
            s = f.add(&s, &j[r][c]);
            s = f.add(&s, &k[r][c]);
            w[r][c] = f.mul(&s, &half);
        }
    }
    w[2][2] = f.one();
    Ok(vec![GroupElem::new(ctx, i)?, GroupElem::new(ctx, w)?])
}

/// Dicyclic Dic(n): a of order 2n in a torus of SL(2,q), x trace-zero
/// inverting a with x^2 = -1.
fn dicyclic_gens(ctx: &Arc<GroupCtx>, n: u64) -> Result<Vec<GroupElem>> {
    let f = ctx.field();
    let q = ctx.q();
    let (p, _) = split_prime_power(q)?;
    if p == 2 {
        return Err(Error::HypothesisViolated("dicyclic groups need odd q".into()));
    }
    let two_n = 2 * n;
    if (q - 1) % two_n == 0 {
        // split torus diag(u, u^-1)
        let theta = subfield_primitive(f, q);
        let u = f.pow(&theta, (q - 1) / two_n);
        let mut a = identity_mat(f);
        a[0][0] = u;
        a[1][1] = f.inv(&u)?;
        let mut x = identity_mat(f);
        x[0][0] = f.zero();
        x[1][1] = f.zero();
        x[0][1] = f.one();
        x[1][0] = f.neg(&f.one());
        return Ok(vec![GroupElem::new(ctx, a)?, GroupElem::new(ctx, x)?]);
    }
    if (q + 1) % two_n == 0 {
        // nonsplit torus {xI + yJ}, J^2 = delta, delta a nonsquare of F_q
        let theta = subfield_primitive(f, q);
        let delta = theta; // primitive element of F_q is a nonsquare
        // generator of the norm-1 circle of order q+1: scan x + yJ
        let mut gen: Option<(FieldElem, FieldElem)> = None;
        'outer: for xi in 0..q {
            for yi in 1..q {
                let x = f.pow(&theta, xi);
                let x = if xi == q - 1 { f.zero() } else { x }; // include 0
                let y = f.pow(&theta, yi % (q - 1));
                // det(xI + yJ) = x^2 - delta y^2 must be 1
                let det = f.sub(&f.mul(&x, &x), &f.mul(&delta, &f.mul(&y, &y)));
                if det != f.one() {
                    continue;
                }
                // torus element as 2x2: [[x, delta y],[y, x]]
                let mut m = identity_mat(f);
                m[0][0] = x;
                m[0][1] = f.mul(&delta, &y);
                m[1][0] = y;
                m[1][1] = x;
                let e = GroupElem::new_unchecked(ctx, m);
                if mat2_order(f, &[[x, f.mul(&delta, &y)], [y, x]]) == q + 1 {
                    gen = Some((x, y));
                    let _ = e;
                    break 'outer;
                }
            }
        }
        let (gx, gy) = gen.ok_or(Error::SearchFailed)?;
        // a = generator^((q+1)/2n)
        let mut acc = [[f.one(), f.zero()], [f.zero(), f.one()]];
        let gm = [[gx, f.mul(&delta, &gy)], [gy, gx]];
        for _ in 0..(q + 1) / two_n {
            acc = mat2_mul(f, &acc, &gm);
        }
        let mut a = identity_mat(f);
        a[0][0] = acc[0][0];
        a[0][1] = acc[0][1];
        a[1][0] = acc[1][0];
        a[1][1] = acc[1][1];
        // x = [[s, -delta c],[c, -s]] with s^2 - delta c^2 = -1
        let mut found = None;
        for ci in 0..q {
            let c = if ci == 0 { f.zero() } else { f.pow(&theta, ci) };
            let rhs = f.sub(&f.mul(&delta, &f.mul(&c, &c)), &f.one());
            if let Some(s) = sqrt_c(f, &rhs.c) {
                let s = FieldElem { ctx: f.id(), c: s };
                if f.pow(&s, q) == s {
                    found = Some((s, c));
                    break;
                }
            }
        }
        let (s, c) = found.ok_or(Error::SearchFailed)?;
        let mut x = identity_mat(f);
        x[0][0] = s;
        x[0][1] = f.neg(&f.mul(&delta, &c));
        x[1][0] = c;
        x[1][1] = f.neg(&s);
        return Ok(vec![GroupElem::new(ctx, a)?, GroupElem::new(ctx, x)?]);
    }
    Err(Error::HypothesisViolated(format!("Dic({n}) needs 2n | q-1 or 2n | q+1")))
}

fn mat2_mul(f: &Field, a: &[[FieldElem; 2]; 2], b: &[[FieldElem; 2]; 2]) -> [[FieldElem; 2]; 2] {
    let mut out = [[f.zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                out[i][j] = f.add(&out[i][j], &f.mul(&a[i][l], &b[l][j]));
            }
        }
    }
    out
}

fn mat2_order(f: &Field, m: &[[FieldElem; 2]; 2]) -> u64 {
    let id = [[f.one(), f.zero()], [f.zero(), f.one()]];
    let mut cur = *m;
    for n in 1..100_000 {
        if cur == id {
            return n;
        }
        cur = mat2_mul(f, &cur, m);
    }
    0
}

/// Corollary-style complement generator for M_q: order q+1, determinant of
/// the 2x2 block a primitive (q+1)-th root of unity.
pub fn mq_alpha(ctx: &Arc<GroupCtx>) -> Result<GroupElem> {
    let f = ctx.field();
    let q = ctx.q();
    let e = f.primitive();
    let mut m = identity_mat(f);
    m[0][0] = f.zero();
    m[0][1] = f.inv(&e)?;
    m[1][0] = f.neg(&f.pow(&e, q));
    // the printed corollary has 1 + e^{q+1} here, which fails the unitarity
    // conditions for q > 3; 1 + e^{q-1} makes the block have eigenvalues
    // {1, e^{q-1}} and projective order q+1
    m[1][1] = f.add(&f.one(), &f.pow(&e, q - 1));
    GroupElem::new(ctx, m)
}

/// Singer machinery: multiplication and Frobenius matrices on GF(q^6) as a
/// 3-dimensional GF(q^2)-space, conjugated into the Fermat frame.
struct SingerFrame {
    ctx: Arc<GroupCtx>,
    /// Generator of projective order q^2 - q + 1 (Fermat-unitary).
    singer: Mat3,
    /// GF(q^2)-linear Frobenius x -> x^{q^2} (Fermat-unitary).
    frob: Mat3,
}

/// Inverse of a square matrix over F_p (Gauss-Jordan); None if singular.
fn invert_fp(m: &[Vec<i64>], p: i64) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let mut inv: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] % p != 0)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = crate::ff::mod_inverse(a[col][col], p);
        for x in 0..n {
            a[col][x] = (a[col][x] * s).rem_euclid(p);
            inv[col][x] = (inv[col][x] * s).rem_euclid(p);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for x in 0..n {
                    a[r][x] = (a[r][x] - f * a[col][x]).rem_euclid(p);
                    inv[r][x] = (inv[r][x] - f * inv[col][x]).rem_euclid(p);
                }
            }
        }
    }
    Some(inv)
}

fn singer_frame(q: u64) -> Result<SingerFrame> {
    let ctx = fermat_ctx(q)?;
    let f2 = ctx.field().clone();
    let (p, h) = split_prime_power(q)?;
    if 6 * h as usize > crate::ff::MAX_K {
        return Err(Error::FieldTooLarge(q.pow(6)));
    }
    let f6 = make_field(p, 6 * h as usize)?;
    // basis {1, t, t^2} of GF(q^6) over GF(q^2), t the canonical generator
    let t = FieldElem { ctx: f6.id(), c: { let mut c = crate::ff::ZERO_C; c[1] = 1; c } };
    let basis = [f6.one(), t, f6.mul(&t, &t)];
    // express an element of GF(q^6) in that basis: F_p-linear solve
    let k6 = f6.k();
    let k2 = f2.k();
    let p_i = f2.p() as i64;
    // columns: basis_j * (embedded GF(q^2) basis vector e_i)
    let mut cols: Vec<(usize, usize, FieldElem)> = Vec::new();
    for (j, bj) in basis.iter().enumerate() {
        for i in 0..k2 {
            let mut e = crate::ff::ZERO_C;
            e[i] = 1;
            let ei = FieldElem { ctx: f2.id(), c: e };
            let lifted = embed(&f2, &f6, &ei)?;
            cols.push((j, i, f6.mul(bj, &lifted)));
        }
    }
    let ncols = cols.len(); // = 3 * k2 = k6
    debug_assert_eq!(ncols, k6);
    // invert the 6h x 6h matrix once
    let mut mat = vec![vec![0i64; k6]; k6];
    for (cidx, (_, _, v)) in cols.iter().enumerate() {
        for r in 0..k6 {
            mat[r][cidx] = v.c[r] as i64;
        }
    }
    let inv = invert_fp(&mat, p_i).ok_or(Error::SingularMatrix)?;
    let to_coords = |v: &FieldElem| -> [FieldElem; 3] {
        // coords over F_p, regrouped into three GF(q^2) elements
        let mut out = [f2.zero(); 3];
        let mut sol = vec![0i64; k6];
        for (r, row) in inv.iter().enumerate() {
            let mut acc = 0i64;
            for c in 0..k6 {
                acc += row[c] * v.c[c] as i64;
            }
            sol[r] = acc.rem_euclid(p_i);
        }
        for (cidx, (j, i, _)) in cols.iter().enumerate() {
            out[*j].c[*i] = (out[*j].c[*i] as i64 + sol[cidx]).rem_euclid(p_i) as u8;
        }
        for o in &mut out {
            o.ctx = f2.id();
        }
        out
    };
    // matrix of a GF(q^2)-linear map given its action on the basis
    let mat_of = |imgs: [FieldElem; 3]| -> Mat3 {
        let mut m = [[f2.zero(); 3]; 3];
        for (j, img) in imgs.iter().enumerate() {
            let coords = to_coords(img);
            for i in 0..3 {
                m[i][j] = coords[i];
            }
        }
        m
    };
    // zeta of order q^3 + 1: unitary for the trace Hermitian form
    let zeta = f6.element_of_order(q * q * q + 1)?;
    let mult = mat_of([
        f6.mul(&zeta, &basis[0]),
        f6.mul(&zeta, &basis[1]),
        f6.mul(&zeta, &basis[2]),
    ]);
    let frob6 = |x: &FieldElem| f6.pow(x, q * q);
    let frob = mat_of([frob6(&basis[0]), frob6(&basis[1]), frob6(&basis[2])]);
    // Gram of H(u, v) = Tr_{q^6/q^2}(u v^{q^3}) in the basis
    let mut gram = [[f2.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let prod = f6.mul(&basis[i], &f6.pow(&basis[j], q * q * q));
            let tr = f6.add(
                &f6.add(&prod, &f6.pow(&prod, q * q)),
                &f6.pow(&prod, (q * q) * (q * q)),
            );
            // the trace lands in GF(q^2)
            let coords = to_coords(&tr);
            debug_assert!(f2.is_zero(&coords[1]) && f2.is_zero(&coords[2]));
            gram[i][j] = coords[0];
        }
    }
    // congruence-diagonalize gram to the identity: C^T gram C^(q) = I
    let c = hermitian_to_identity(&f2, q, &gram)?;
    let cinv = crate::group::mat_inv(&f2, &c);
    let conj = |m: &Mat3| mat_mul(&f2, &cinv, &mat_mul(&f2, m, &c));
    let singer = conj(&mult);
    let frob = conj(&frob);
    // sanity: both are unitary for the Fermat model
    let model = &ctx.model;
    if unitary_scalar(model, &singer)?.is_none() || unitary_scalar(model, &frob)?.is_none() {
        return Err(Error::NotUnitary);
    }
    Ok(SingerFrame { ctx, singer, frob })
}

/// Basis change C with C^T H C^(q) = I for a nondegenerate Hermitian H
/// (Gram-Schmidt with the q-power conjugation in the inner product).
fn hermitian_to_identity(f: &Field, q: u64, h: &Mat3) -> Result<Mat3> {
    let herm = |u: &[FieldElem; 3], v: &[FieldElem; 3]| -> FieldElem {
        let mut acc = f.zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = f.add(&acc, &f.mul(&f.mul(&u[i], &h[i][j]), &f.pow(&v[j], q)));
            }
        }
        acc
    };
    let mut basis: Vec<[FieldElem; 3]> = Vec::new();
    for i in 0..3 {
        let mut e = [f.zero(); 3];
        e[i] = f.one();
        basis.push(e);
    }
    let mut out: Vec<[FieldElem; 3]> = Vec::new();
    let mut remaining = basis.clone();
    for _ in 0..3 {
        // orthogonalize remaining against chosen vectors
        for v in &mut remaining {
            let mut w = *v;
            for u in &out {
                let c = herm(&w, u); // H(w, u), u normalized to H(u,u)=1
                for i in 0..3 {
                    w[i] = f.sub(&w[i], &f.mul(&c, &u[i]));
                }
            }
            *v = w;
        }
        // find an anisotropic vector among remaining and small combinations
        let mut cands: Vec<[FieldElem; 3]> = remaining.clone();
        for a in 0..remaining.len() {
            for b in (a + 1)..remaining.len() {
                let mut w = remaining[a];
                for i in 0..3 {
                    w[i] = f.add(&w[i], &remaining[b][i]);
                }
                cands.push(w);
                // also u + g*v for the primitive g
                let g = f.primitive();
                let mut w2 = remaining[a];
                for i in 0..3 {
                    w2[i] = f.add(&w2[i], &f.mul(&g, &remaining[b][i]));
                }
                cands.push(w2);
            }
        }
        let mut chosen = None;
        for w in cands {
            if w.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            let n = herm(&w, &w);
            if !f.is_zero(&n) {
                chosen = Some((w, n));
                break;
            }
        }
        let (w, n) = chosen.ok_or(Error::SearchFailed)?;
        // scale so H(w,w) = 1: divide by c with c^{q+1} = n (n lies in F_q)
        let g = f.primitive();
        let target = n;
        let mut scale = None;
        // c = g^j with g^{j(q+1)} = n
        let gq1 = f.pow(&g, q + 1);
        let mut acc = f.one();
        for j in 0..f.size() {
            if acc == target {
                scale = Some(f.pow(&g, j));
                break;
            }
            acc = f.mul(&acc, &gq1);
        }
        let s = f.inv(&scale.ok_or(Error::SearchFailed)?)?;
        let mut wn = w;
        for i in 0..3 {
            wn[i] = f.mul(&wn[i], &s);
        }
        // drop the used direction from remaining: keep vectors independent of out
        out.push(wn);
        remaining = complement_basis(f, &out);
    }
    let mut c = [[f.zero(); 3]; 3];
    for (j, v) in out.iter().enumerate() {
        for i in 0..3 {
            c[i][j] = v[i];
        }
    }
    Ok(c)
}

/// Vectors completing `chosen` to a basis of F^3 (simple elimination).
fn complement_basis(f: &Field, chosen: &[[FieldElem; 3]]) -> Vec<[FieldElem; 3]> {
    let mut rows: Vec<[FieldElem; 3]> = chosen.to_vec();
    let mut out = Vec::new();
    for i in 0..3 {
        let mut e = [f.zero(); 3];
        e[i] = f.one();
        // check independence by elimination
        let mut test = rows.clone();
        test.push(e);
        if rank(f, &test) > rank(f, &rows) {
            rows.push(e);
            out.push(e);
        }
    }
    out
}

fn rank(f: &Field, rows: &[[FieldElem; 3]]) -> usize {
    let mut m: Vec<[FieldElem; 3]> = rows.to_vec();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pr) = (rank..m.len()).find(|&r| !f.is_zero(&m[r][col])) else { continue };
        m.swap(rank, pr);
        let inv = f.inv(&m[rank][col]).unwrap();
        for x in 0..3 {
            m[rank][x] = f.mul(&m[rank][x], &inv);
        }
        for r in 0..m.len() {
            if r != rank && !f.is_zero(&m[r][col]) {
                let s = m[r][col];
                for x in 0..3 {
                    m[r][x] = f.sub(&m[r][x], &f.mul(&s, &m[rank][x]));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Generators of the full PGU(3,q) on the norm_trace model: a unipotent with
/// primitive b, a torus generator of order q^2-1, and the X/Z swap.
pub fn full_pgu_gens(q: u64) -> Result<Vec<GroupElem>> {
    let ctx = m2_ctx(q)?;
    let f = ctx.field();
    let g = f.primitive();
    let mut gens = vec![
        psi_from_b(&ctx, &g)?,
        psi(&ctx, &f.zero(), &trace_zero_unit(f, q))?,
    ];
    let mut torus = identity_mat(f);
    torus[0][0] = f.pow(&g, q + 1);
    torus[1][1] = g;
    gens.push(GroupElem::new(&ctx, torus)?);
    gens.push(antidiag_m2(&ctx, &f.one())?);
    Ok(gens)
}

/// Closure of the full PGU(3,q); order must equal (q^3+1) q^3 (q^2-1).
pub fn full_pgu(q: u64) -> Result<GeneratedGroup> {
    let gens = full_pgu_gens(q)?;
    let expected = (q * q * q + 1) * q * q * q * (q * q - 1);
    let grp = closure(&gens, (expected as usize) + 1)?;
    if grp.order() != expected {
        return Err(Error::HypothesisViolated(format!(
            "PGU(3,{q}) closure has order {} instead of {expected}",
            grp.order()
        )));
    }
    Ok(grp)
}

/// Generators of M_q = SL(2,q) x| C_{q+1} in the m3 model.
pub fn mq_generators(q: u64) -> Result<Vec<GroupElem>> {
    let ctx = m3_ctx(q)?;
    let mut gens = sl2_block_gens(&ctx, q)?;
    gens.push(mq_alpha(&ctx)?);
    Ok(gens)
}

/// Resolve a recipe into concrete generators.
pub fn build_recipe(q: u64, recipe: &Recipe) -> Result<Vec<GroupElem>> {
    let (p, _h) = split_prime_power(q)?;
    match recipe {
        Recipe::Trivial => {
            let ctx = fermat_ctx(q)?;
            Ok(vec![GroupElem::identity(&ctx)])
        }
        Recipe::Torus { gens } => {
            let ctx = fermat_ctx(q)?;
            let f = ctx.field();
            let mut out = Vec::new();
            for (m, exps) in gens {
                if (q + 1) % m != 0 {
                    return Err(Error::HypothesisViolated(format!("{m} does not divide q+1")));
                }
                let z = f.element_of_order(*m)?;
                let d = [
                    pow_signed(f, &z, exps[0]),
                    pow_signed(f, &z, exps[1]),
                    pow_signed(f, &z, exps[2]),
                ];
                out.push(diag(&ctx, d)?);
            }
            Ok(out)
        }
        Recipe::B2 { m } => {
            let ctx = m2_ctx(q)?;
            let f = ctx.field();
            if (q * q - 1) % m != 0 {
                return Err(Error::HypothesisViolated(format!("{m} does not divide q^2-1")));
            }
            let a = f.element_of_order(*m)?;
            Ok(vec![diag(&ctx, [f.pow(&a, q + 1), a, f.one()])?])
        }
        Recipe::SingerPower { m } => {
            let n = q * q - q + 1;
            if n % m != 0 {
                return Err(Error::HypothesisViolated(format!("{m} does not divide q^2-q+1")));
            }
            let frame = singer_frame(q)?;
            let gen = GroupElem::new_unchecked(&frame.ctx, frame.singer);
            Ok(vec![gen.pow(n / m)])
        }
        Recipe::SingerNormalizer { m } => {
            let n = q * q - q + 1;
            if n % m != 0 {
                return Err(Error::HypothesisViolated(format!("{m} does not divide q^2-q+1")));
            }
            let frame = singer_frame(q)?;
            let gen = GroupElem::new_unchecked(&frame.ctx, frame.singer);
            let fr = GroupElem::new_unchecked(&frame.ctx, frame.frob);
            Ok(vec![gen.pow(n / m), fr])
        }
        Recipe::Elation => {
            let ctx = m2_ctx(q)?;
            let f = ctx.field();
            Ok(vec![psi(&ctx, &f.zero(), &trace_zero_unit(f, q))?])
        }
        Recipe::UnipotentD => {
            let ctx = m2_ctx(q)?;
            let f = ctx.field();
            Ok(vec![psi_from_b(&ctx, &f.one())?])
        }
        Recipe::UnipotentAbelian { n_b, n_c } => {
            let ctx = m2_ctx(q)?;
            let f = ctx.field();
            let theta = subfield_primitive(f, q);
            let eps = trace_zero_unit(f, q);
            let mut gens = Vec::new();
            let mut mu = f.one();
            for _ in 0..*n_b {
                gens.push(psi_from_b(&ctx, &mu)?);
                mu = f.mul(&mu, &theta);
            }
            let mut c = eps;
            for _ in 0..*n_c {
                gens.push(psi(&ctx, &f.zero(), &c)?);
                c = f.mul(&c, &theta);
            }
            Ok(gens)
        }
        Recipe::EElement { d } => {
            let ctx = m2_ctx(q)?;
            let f = ctx.field();
            if (q + 1) % d != 0 {
                return Err(Error::HypothesisViolated(format!("{d} does not divide q+1")));
            }
            let a = f.element_of_order(*d)?;
            let mut m = identity_mat(f);
            m[0][2] = trace_zero_unit(f, q);
            m[1][1] = a;
            Ok(vec![GroupElem::new(&ctx, m)?])
        }
        Recipe::EpkCd { k, d } => epk_cd_gens(q, *k, *d),
        Recipe::DihedralB1 { d } => {
            let ctx = fermat_ctx(q)?;
            let f = ctx.field();
            if (q + 1) % d != 0 {
                return Err(Error::HypothesisViolated(format!("{d} does not divide q+1")));
            }
            let z = f.element_of_order(*d)?;
            let beta = diag(&ctx, [z, f.inv(&z)?, f.one()])?;
            let mut sw = [[f.zero(); 3]; 3];
            sw[0][1] = f.one();
            sw[1][0] = f.one();
            sw[2][2] = f.one();
            Ok(vec![beta, GroupElem::new(&ctx, sw)?])
        }
        Recipe::DihedralM2 { d } => {
            let mut gens = build_recipe(q, &Recipe::B2 { m: *d })?;
            let ctx = gens[0].ctx.clone();
            gens.push(antidiag_m2(&ctx, &ctx.field().one())?);
            Ok(gens)
        }
        Recipe::CdCmAnti { d, m } => {
            if m % 2 != 0 || (q + 1) % (m / 2) != 0 {
                return Err(Error::HypothesisViolated(format!(
                    "antidiagonal order {m} must be even with m/2 | q+1"
                )));
            }
            let mut gens = build_recipe(q, &Recipe::B2 { m: *d })?;
            let ctx = gens[0].ctx.clone();
            let f = ctx.field();
            // A with A^{1-q} of order m/2
            let a = if *m == 2 {
                f.one()
            } else {
                f.pow(&f.primitive(), (q + 1) / (m / 2))
            };
            gens.push(antidiag_m2(&ctx, &a)?);
            Ok(gens)
        }
        Recipe::KleinM2 => {
            let mut gens = build_recipe(q, &Recipe::B2 { m: 2 })?;
            let ctx = gens[0].ctx.clone();
            gens.push(antidiag_m2(&ctx, &ctx.field().one())?);
            Ok(gens)
        }
        Recipe::B2TimesHom { d, m } => {
            let mut gens = build_recipe(q, &Recipe::B2 { m: *d })?;
            let ctx = gens[0].ctx.clone();
            let f = ctx.field();
            if (q + 1) % m != 0 {
                return Err(Error::HypothesisViolated(format!("{m} does not divide q+1")));
            }
            let c = f.element_of_order(*m)?;
            gens.push(diag(&ctx, [f.one(), c, f.one()])?);
            Ok(gens)
        }
        Recipe::HomElations { m, n_c } => {
            let ctx = m2_ctx(q)?;
            let f = ctx.field();
            if (q + 1) % m != 0 {
                return Err(Error::HypothesisViolated(format!("{m} does not divide q+1")));
            }
            let c = f.element_of_order(*m)?;
            let mut gens = vec![diag(&ctx, [f.one(), c, f.one()])?];
            let theta = subfield_primitive(f, q);
            let mut e = trace_zero_unit(f, q);
            for _ in 0..*n_c {
                gens.push(psi(&ctx, &f.zero(), &e)?);
                e = f.mul(&e, &theta);
            }
            Ok(gens)
        }
        Recipe::S3Perm => {
            let ctx = fermat_ctx(q)?;
            let f = ctx.field();
            let mut cyc = [[f.zero(); 3]; 3];
            cyc[0][2] = f.one();
            cyc[1][0] = f.one();
            cyc[2][1] = f.one();
            let mut sw = [[f.zero(); 3]; 3];
            sw[0][1] = f.one();
            sw[1][0] = f.one();
            sw[2][2] = f.one();
            Ok(vec![GroupElem::new(&ctx, cyc)?, GroupElem::new(&ctx, sw)?])
        }
        Recipe::A4 => {
            let ctx = fermat_ctx(q)?;
            let f = ctx.field();
            if p == 2 {
                return Err(Error::HypothesisViolated("A4 recipe needs odd q".into()));
            }
            let a = diag(&ctx, [f.neg(&f.one()), f.one(), f.one()])?;
            let b = diag(&ctx, [f.one(), f.neg(&f.one()), f.one()])?;
            let mut cyc = [[f.zero(); 3]; 3];
            cyc[0][2] = f.one();
            cyc[1][0] = f.one();
            cyc[2][1] = f.one();
            Ok(vec![a, b, GroupElem::new(&ctx, cyc)?])
        }
        Recipe::Q8 => q8_gens(&m3_ctx(q)?),
        Recipe::Sl23 => sl23_gens(&m3_ctx(q)?),
        Recipe::Sl2Subfield { qbar } => sl2_block_gens(&m3_ctx(q)?, *qbar),
        Recipe::Sl25 => sl25_gens(q),
        Recipe::Tl2 { qbar } => {
            let ctx = m3_ctx(q)?;
            let f = ctx.field();
            let (pb, hb) = split_prime_power(*qbar)?;
            let mut gens = sl2_block_gens(&ctx, *qbar)?;
            // w = xi^{(qbar+1)/2} for xi primitive in F_{qbar^2}
            let sub = make_field(pb, 2 * hb as usize)?;
            let xi = embed(&sub, f, &sub.primitive())?;
            let w = f.pow(&xi, (qbar + 1) / 2);
            let mut m = identity_mat(f);
            m[0][0] = w;
            m[1][1] = f.inv(&w)?;
            gens.push(GroupElem::new(&ctx, m)?);
            Ok(gens)
        }
        Recipe::K4828 => k4828_gens(q),
        Recipe::Dicyclic { n } => dicyclic_gens(&m3_ctx(q)?, *n),
        Recipe::MqGens => mq_generators(q),
        Recipe::PguSubfield { qbar } => {
            let (pb, hb) = split_prime_power(*qbar)?;
            let (pq, hq) = split_prime_power(q)?;
            if pb != pq || hq % hb != 0 || (hq / hb) % 2 == 0 {
                return Err(Error::HypothesisViolated(
                    "PGU(3,qbar) needs q an odd power of qbar".into(),
                ));
            }
            let ctx = m2_ctx(q)?;
            let f = ctx.field();
            let sub = make_field(pb, 2 * hb as usize)?;
            let subgens = full_pgu_gens(*qbar)?;
            let mut out = Vec::new();
            for g in subgens {
                let mut m = identity_mat(f);
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] = embed(&sub, f, &g.mat[i][j])?;
                    }
                }
                out.push(GroupElem::new(&ctx, m)?);
            }
            Ok(out)
        }
        Recipe::TorusC3 { m } => {
            let ctx = fermat_ctx(q)?;
            let f = ctx.field();
            if (q + 1) % m != 0 {
                return Err(Error::HypothesisViolated(format!("{m} does not divide q+1")));
            }
            // root of x^2 - x + 1 mod m
            let i = (1..*m)
                .find(|&i| (i * i + 1) % m == i % m)
                .ok_or_else(|| {
                    Error::HypothesisViolated(format!("x^2-x+1 has no root mod {m}"))
                })?;
            let z = f.element_of_order(*m)?;
            let alpha = diag(&ctx, [z, f.pow(&z, i), f.one()])?;
            let mut cyc = [[f.zero(); 3]; 3];
            cyc[0][2] = f.one();
            cyc[1][0] = f.one();
            cyc[2][1] = f.one();
            Ok(vec![alpha, GroupElem::new(&ctx, cyc)?])
        }
        Recipe::HomologyPairSwap { m } => {
            let mut gens = build_recipe(
                q,
                &Recipe::Torus { gens: vec![(*m, [1, 0, 0]), (*m, [0, 1, 0])] },
            )?;
            let ctx = gens[0].ctx.clone();
            let f = ctx.field();
            let mut sw = [[f.zero(); 3]; 3];
            sw[0][1] = f.one();
            sw[1][0] = f.one();
            sw[2][2] = f.one();
            gens.push(GroupElem::new(&ctx, sw)?);
            Ok(gens)
        }
        Recipe::HomologyPairCycle { m } => {
            let mut gens = build_recipe(
                q,
                &Recipe::Torus { gens: vec![(*m, [1, 0, 0]), (*m, [0, 1, 0])] },
            )?;
            let ctx = gens[0].ctx.clone();
            let f = ctx.field();
            let mut cyc = [[f.zero(); 3]; 3];
            cyc[0][2] = f.one();
            cyc[1][0] = f.one();
            cyc[2][1] = f.one();
            gens.push(GroupElem::new(&ctx, cyc)?);
            Ok(gens)
        }
        Recipe::TriangleC4 { m } => {
            let mut gens = build_recipe(
                q,
                &Recipe::Torus { gens: vec![(*m, [1, 0, 0]), (*m, [0, 1, 0])] },
            )?;
            let ctx = gens[0].ctx.clone();
            let f = ctx.field();
            let mut g4 = [[f.zero(); 3]; 3];
            g4[0][1] = f.one();
            g4[1][0] = f.neg(&f.one());
            g4[2][2] = f.one();
            gens.push(GroupElem::new(&ctx, g4)?);
            Ok(gens)
        }
        Recipe::WithCentralHom { base, m } => {
            let mut gens = build_recipe(q, base)?;
            let ctx = gens[0].ctx.clone();
            let f = ctx.field();
            if (q + 1) % m != 0 {
                return Err(Error::HypothesisViolated(format!("{m} does not divide q+1")));
            }
            let c = f.element_of_order(*m)?;
            let hom = match ctx.model.tag {
                ModelTag::NormTrace => diag(&ctx, [f.one(), c, f.one()])?,
                ModelTag::Fermat => diag(&ctx, [c, c, f.one()])?,
                ModelTag::M3 => diag(&ctx, [c, c, f.one()])?,
            };
            gens.push(hom);
            Ok(gens)
        }
    }
}

fn pow_signed(f: &Field, z: &FieldElem, e: i64) -> FieldElem {
    if e >= 0 {
        f.pow(z, e as u64)
    } else {
        f.inv(&f.pow(z, (-e) as u64)).unwrap()
    }
}

/// E_{p^k} x| C_d inside the SL(2,q) block: upper unipotents over the
/// subfield F_{p^k} normalized by diag(u, u^-1) with u^2 in F_{p^k}.
fn epk_cd_gens(q: u64, k: u32, d: u64) -> Result<Vec<GroupElem>> {
    let ctx = m3_ctx(q)?;
    let f = ctx.field();
    let (p, h) = split_prime_power(q)?;
    if h % k != 0 {
        return Err(Error::HypothesisViolated(format!(
            "subfield F_{{p^{k}}} requires k | h"
        )));
    }
    if (q - 1) % d != 0 {
        return Err(Error::HypothesisViolated(format!("{d} must divide q-1")));
    }
    let sub = make_field(p, k as usize)?;
    let mut gens = Vec::new();
    // basis of F_{p^k} inside GF(q^2)
    let gen_sub = if k == 1 { sub.one() } else { sub.primitive() };
    let mut cur = sub.one();
    for _ in 0..k {
        let t = embed(&sub, f, &cur)?;
        let mut m = identity_mat(f);
        m[0][1] = t;
        gens.push(GroupElem::new(&ctx, m)?);
        cur = sub.mul(&cur, &gen_sub);
    }
    if d > 1 {
        // u of order d in F_q with u^2 in F_{p^k}
        let theta = subfield_primitive(f, q);
        let mut u_found = None;
        let mut cand = f.one();
        for _ in 0..q - 1 {
            cand = f.mul(&cand, &theta);
            if crate::ff::mult_order(&cand)? == d {
                let u2 = f.mul(&cand, &cand);
                // u^2 in F_{p^k} iff u2^{p^k} = u2
                if f.pow(&u2, sub.size()) == u2 {
                    u_found = Some(cand);
                    break;
                }
            }
        }
        let u = u_found.ok_or_else(|| {
            Error::HypothesisViolated(format!("no order-{d} element normalizes E_{{p^{k}}}"))
        })?;
        let mut m = identity_mat(f);
        m[0][0] = u;
        m[1][1] = f.inv(&u)?;
        gens.push(GroupElem::new(&ctx, m)?);
    }
    Ok(gens)
}

/// Bounded deterministic search for SL(2,5) in the SL(2,q) block:
/// an order-5 torus element together with a trace-zero order-4 element.
fn sl25_gens(q: u64) -> Result<Vec<GroupElem>> {
    search_block_subgroup(q, 120, &[(1, 1), (2, 1), (3, 20), (4, 30), (5, 24), (6, 20), (10, 24)])
}

/// SmallGroup(48,28): the double cover of S4 with order statistics
/// {1,2,3,4,6,8} -> {1,1,8,18,8,12}.
fn k4828_gens(q: u64) -> Result<Vec<GroupElem>> {
    search_block_subgroup(q, 48, &[(1, 1), (2, 1), (3, 8), (4, 18), (6, 8), (8, 12)])
}

/// Deterministic hunt for a subgroup of the SL(2,q) block with the given
/// order and element-order census, driven by a fixed-seed generator walk.
fn search_block_subgroup(q: u64, order: u64, census: &[(u64, u64)]) -> Result<Vec<GroupElem>> {
    let ctx = m3_ctx(q)?;
    let sl2 = closure(&sl2_block_gens(&ctx, q)?, DEFAULT_CLOSURE_CAP)?;
    let want: BTreeMap<u64, u64> = census.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(q ^ (order << 32));
    let n = sl2.elements.len();
    for _ in 0..4000 {
        let a = &sl2.elements[rng.gen_range(0..n)];
        let b = &sl2.elements[rng.gen_range(0..n)];
        let oa = proj_order(a)?;
        let ob = proj_order(b)?;
        if order % oa != 0 || order % ob != 0 || oa == 1 || ob == 1 {
            continue;
        }
        if let Ok(grp) = closure(&[a.clone(), b.clone()], order as usize + 1) {
            if grp.order() == order && grp.census() == want {
                return Ok(vec![a.clone(), b.clone()]);
            }
        }
    }
    Err(Error::SearchFailed)
}

/// Seeded bounded search over PGU(3,q) for a subgroup matching a target
/// order and element-order census.
pub fn seeded_search(
    q: u64,
    target_order: u64,
    target_census: Option<&BTreeMap<u64, u64>>,
    seed: u64,
    budget: u64,
) -> Result<Vec<GroupElem>> {
    let gens = full_pgu_gens(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(3..18);
        let mut acc = GroupElem::identity(&gens[0].ctx);
        for _ in 0..len {
            let g = &gens[rng.gen_range(0..gens.len())];
            acc = if rng.gen_bool(0.5) { acc.mul(g) } else { acc.mul(&g.inverse()) };
        }
        acc
    };
    for _ in 0..budget {
        let ngen = rng.gen_range(1..4);
        let cand: Vec<GroupElem> = (0..ngen).map(|_| word(&mut rng)).collect();
        let Ok(grp) = closure(&cand, target_order as usize + 1) else { continue };
        if grp.order() != target_order {
            continue;
        }
        if let Some(want) = target_census {
            if &grp.census() != want {
                continue;
            }
        }
        return Ok(cand);
    }
    Err(Error::SearchFailed)
}

/// One representative generator per realizable cyclic (order, type) class.
pub fn cyclic_representatives(q: u64) -> Result<Vec<(u64, EType, GroupElem)>> {
    let (p, h) = split_prime_power(q)?;
    let mut out: Vec<(u64, EType, GroupElem)> = Vec::new();
    let mut push = |order: u64, etype: EType, gens: Vec<GroupElem>| {
        out.push((order, etype, gens[0].clone()));
    };
    // homologies and self-polar torus elements: d | q+1
    for d in divisors(q + 1) {
        if d >= 2 {
            push(d, EType::A, build_recipe(q, &Recipe::Torus { gens: vec![(d, [1, 0, 0])] })?);
        }
        if d >= 2 && d > 2 {
            let g = build_recipe(q, &Recipe::Torus { gens: vec![(d, [1, -1, 0])] })?;
            let t = crate::classify::classify(&g[0])?;
            push(d, t.etype, g);
        }
    }
    // B2 chains: d | q^2-1, d not dividing q+1
    for d in divisors(q * q - 1) {
        if d >= 2 && (q + 1) % d != 0 {
            push(d, EType::B2, build_recipe(q, &Recipe::B2 { m: d })?);
        }
    }
    // Singer powers: d | q^2-q+1
    if 6 * h as usize <= crate::ff::MAX_K {
        for d in divisors(q * q - q + 1) {
            if d >= 2 {
                push(d, EType::B3, build_recipe(q, &Recipe::SingerPower { m: d })?);
            }
        }
    }
    // elation, D-type unipotent
    push(p, EType::C, build_recipe(q, &Recipe::Elation)?);
    if p == 2 {
        push(4, EType::D, build_recipe(q, &Recipe::UnipotentD)?);
    } else if h > 1 {
        push(p, EType::D, build_recipe(q, &Recipe::UnipotentD)?);
    }
    // E-elements: order p*d, d | q+1, d > 1
    for d in divisors(q + 1) {
        if d > 1 && num_integer::gcd(d, p) == 1 {
            push(p * d, EType::E, build_recipe(q, &Recipe::EElement { d })?);
        }
    }
    Ok(out)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn mq_alpha_has_order_q_plus_one() {
        for q in [3u64, 5, 7, 9] {
            let ctx = m3_ctx(q).unwrap();
            let alpha = mq_alpha(&ctx).unwrap();
            assert_eq!(proj_order(&alpha).unwrap(), q + 1, "q={q}");
            let grp = closure(&[alpha], 1000).unwrap();
            assert_eq!(grp.order(), q + 1);
        }
    }

    #[test]
    fn sl2_block_closure_orders() {
        // |SL(2,q)| = q(q^2-1); the block embeds faithfully in PGU(3,q)
        for q in [2u64, 3, 4, 5] {
            let ctx = m3_ctx(q).unwrap();
            let gens = sl2_block_gens(&ctx, q).unwrap();
            let grp = closure(&gens, 500_000).unwrap();
            assert_eq!(grp.order(), q * (q * q - 1), "q={q}");
        }
    }

    #[test]
    fn mq_closure_is_sl2q_times_cq1() {
        for q in [3u64, 5] {
            let gens = mq_generators(q).unwrap();
            let grp = closure(&gens, 10_000).unwrap();
            assert_eq!(grp.order(), q * (q * q - 1) * (q + 1), "q={q}");
            // every element fixes P0 = (0:0:1)
            let f = grp.ctx.field();
            let p0 = crate::geometry::ProjPoint::from_ints(f, [0, 0, 1]).unwrap();
            for g in &grp.elements {
                assert_eq!(crate::geometry::mat_apply(f, &g.mat, &p0).unwrap(), p0);
            }
        }
    }

    #[test]
    fn sl2_subfield_inside_bigger_group() {
        // SL(2,3) inside SL(2,9) block: order 24
        let gens = build_recipe(9, &Recipe::Sl2Subfield { qbar: 3 }).unwrap();
        let grp = closure(&gens, 1000).unwrap();
        assert_eq!(grp.order(), 24);
        let census = grp.census();
        assert_eq!(census[&1], 1);
        assert_eq!(census[&2], 1);
        assert_eq!(census[&3], 8);
        assert_eq!(census[&4], 6);
        assert_eq!(census[&6], 8);
    }

    #[test]
    fn singer_element_at_q5() {
        let gens = build_recipe(5, &Recipe::SingerPower { m: 21 }).unwrap();
        assert_eq!(proj_order(&gens[0]).unwrap(), 21);
        // no fixed points over GF(25)
        let f2 = gens[0].ctx.field();
        let n = crate::geometry::fixed_point_count(&gens[0].mat, f2, f2).unwrap();
        assert_eq!(n, 0);
        // cube has order 7 and classifies as B3 with i = 3
        let cube = gens[0].pow(3);
        let c = classify(&cube).unwrap();
        assert_eq!((c.etype, c.order, c.i), (EType::B3, 7, 3));
    }

    #[test]
    fn singer_subgroup_avoids_diagonal_torus() {
        for q in [2u64, 3, 4, 5] {
            let gens = build_recipe(q, &Recipe::SingerPower { m: q * q - q + 1 }).unwrap();
            let singer = closure(&gens, 10_000).unwrap();
            assert_eq!(singer.order(), q * q - q + 1, "q={q}");
            // trivial intersection with the diagonal torus subgroup
            let f = singer.ctx.field();
            for g in &singer.elements {
                if g.is_identity() {
                    continue;
                }
                let m = &g.mat;
                let is_diag = (0..3).all(|i| {
                    (0..3).all(|j| i == j || f.is_zero(&m[i][j]))
                });
                assert!(!is_diag);
            }
        }
    }

    #[test]
    fn q8_and_sl23_census() {
        let gens = build_recipe(11, &Recipe::Q8).unwrap();
        let grp = closure(&gens, 100).unwrap();
        assert_eq!(grp.order(), 8);
        let c = grp.census();
        assert_eq!(c[&2], 1);
        assert_eq!(c[&4], 6);

        let gens = build_recipe(13, &Recipe::Sl23).unwrap();
        let grp = closure(&gens, 100).unwrap();
        assert_eq!(grp.order(), 24);
        // census of SL(2,3): orders 1,2,3,4,6 with counts 1,1,8,6,8
        let c = grp.census();
        assert_eq!(c[&3], 8);
        assert_eq!(c[&4], 6);
        assert_eq!(c[&6], 8);
    }

    #[test]
    fn dicyclic_both_torus_kinds() {
        // Dic(3) of order 12: 6 | q-1 at q=13, 6 | q+1 at q=17
        for q in [13u64, 17] {
            let gens = build_recipe(q, &Recipe::Dicyclic { n: 3 }).unwrap();
            let grp = closure(&gens, 100).unwrap();
            assert_eq!(grp.order(), 12, "q={q}");
            let c = grp.census();
            assert_eq!(c[&4], 6);
            assert_eq!(c[&2], 1);
        }
    }

    #[test]
    fn epk_cd_orders() {
        // E_3 at q=9, E_2 at q=8, E_5 x| C_2 at q=25
        let grp = closure(&build_recipe(9, &Recipe::EpkCd { k: 1, d: 1 }).unwrap(), 100).unwrap();
        assert_eq!(grp.order(), 3);
        let grp = closure(&build_recipe(8, &Recipe::EpkCd { k: 1, d: 1 }).unwrap(), 100).unwrap();
        assert_eq!(grp.order(), 2);
        let grp = closure(&build_recipe(25, &Recipe::EpkCd { k: 1, d: 2 }).unwrap(), 100).unwrap();
        assert_eq!(grp.order(), 10);
    }

    #[test]
    fn full_pgu_small() {
        let grp = full_pgu(2).unwrap();
        assert_eq!(grp.order(), 216);
    }

    #[test]
    fn a4_at_q13() {
        let gens = build_recipe(13, &Recipe::A4).unwrap();
        let grp = closure(&gens, 100).unwrap();
        assert_eq!(grp.order(), 12);
        let rep = crate::genus::quotient_genus(&grp).unwrap();
        assert_eq!(rep.delta, 58);
        assert_eq!(rep.genus_quotient, 5);
    }
}
