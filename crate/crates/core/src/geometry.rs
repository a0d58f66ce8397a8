//! The projective plane PG(2, F), Hermitian curve models, curve membership,
//! and fixed-point sets of projectivities.

use crate::error::{Error, Result};
use crate::ff::{embed, make_field, Field, FieldElem, Poly};

/// Hard bound for exhaustive plane scans.
const SCAN_MAX: u64 = 1_000_000;

/// A point of PG(2, F): three coordinates, normalized so the first nonzero
/// coordinate in scan order X, Y, Z equals 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    pub coords: [FieldElem; 3],
}

impl ProjPoint {
    /// Canonical representative of (x : y : z). Errors on the zero triple.
    pub fn new(field: &Field, coords: [FieldElem; 3]) -> Result<ProjPoint> {
        let mut c = coords;
        for e in &c {
            if e.ctx != field.id() {
                return Err(Error::CtxMismatch);
            }
        }
        let lead = c.iter().position(|e| !field.is_zero(e)).ok_or(Error::FieldMismatch)?;
        let inv = field.inv(&c[lead])?;
        for e in &mut c {
            *e = field.mul(e, &inv);
        }
        Ok(ProjPoint { coords: c })
    }

    pub fn from_ints(field: &Field, v: [i64; 3]) -> Result<ProjPoint> {
        ProjPoint::new(field, [field.from_int(v[0]), field.from_int(v[1]), field.from_int(v[2])])
    }

    /// Map into a bigger field.
    pub fn lift(&self, sub: &Field, sup: &Field) -> Result<ProjPoint> {
        let c = [
            embed(sub, sup, &self.coords[0])?,
            embed(sub, sup, &self.coords[1])?,
            embed(sub, sup, &self.coords[2])?,
        ];
        ProjPoint::new(sup, c)
    }
}

/// Which plane model of the Hermitian curve a matrix group acts on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ModelTag {
    /// X^{q+1} + Y^{q+1} + Z^{q+1} = 0
    Fermat,
    /// X^q Z + X Z^q - Y^{q+1} = 0
    NormTrace,
    /// X Y^q - Y X^q + w Z^{q+1} = 0 with w^{q-1} = -1
    M3,
}

impl ModelTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelTag::Fermat => "fermat",
            ModelTag::NormTrace => "norm_trace",
            ModelTag::M3 => "m3",
        }
    }
    pub fn parse(s: &str) -> Result<ModelTag> {
        match s {
            "fermat" => Ok(ModelTag::Fermat),
            "norm_trace" => Ok(ModelTag::NormTrace),
            "m3" => Ok(ModelTag::M3),
            other => Err(Error::BadGeneratorFile(format!("unknown model tag {other:?}"))),
        }
    }
}

/// A Hermitian curve model over GF(q^2): tag, the Gram matrix of its
/// sesquilinear form, and the twist w for the m3 model.
#[derive(Clone, Debug)]
pub struct HermitianModel {
    pub tag: ModelTag,
    pub q: u64,
    /// GF(q^2)
    pub field: Field,
    pub gram: [[FieldElem; 3]; 3],
    pub omega: Option<FieldElem>,
}

/// (p, h) with q = p^h.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut h = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                h += 1;
            }
            if m == 1 {
                return Ok((p, h));
            }
            return Err(Error::NotAPrimePower(q));
        }
    }
    Err(Error::NotAPrimePower(q))
}

impl HermitianModel {
    pub fn new(tag: ModelTag, q: u64) -> Result<HermitianModel> {
        let (p, h) = split_prime_power(q)?;
        let field = make_field(p, (2 * h) as usize)?;
        let zero = field.zero();
        let one = field.one();
        let mut gram = [[zero; 3]; 3];
        let mut omega = None;
        match tag {
            ModelTag::Fermat => {
                for i in 0..3 {
                    gram[i][i] = one;
                }
            }
            ModelTag::NormTrace => {
                gram[0][2] = one;
                gram[2][0] = one;
                gram[1][1] = field.neg(&one);
            }
            ModelTag::M3 => {
                // w with w^{q-1} = -1: for odd p take w = g^{(q+1)/2}; in
                // characteristic 2 any w in GF(q)^* works since -1 = 1.
                let w = if p == 2 {
                    one
                } else {
                    field.pow(&field.primitive(), (q + 1) / 2)
                };
                debug_assert_eq!(field.pow(&w, q - 1), field.neg(&one));
                gram[0][1] = one;
                gram[1][0] = field.neg(&one);
                gram[2][2] = w;
                omega = Some(w);
            }
        }
        Ok(HermitianModel { tag, q, field, gram, omega })
    }

    /// Defining form evaluated at a point with coordinates in `ambient`
    /// (a field containing GF(q^2)); conjugation is x -> x^q.
    pub fn form_at(&self, pt: &ProjPoint, ambient: &Field) -> Result<FieldElem> {
        let f = ambient;
        if pt.coords[0].ctx != f.id() {
            return Err(Error::FieldMismatch);
        }
        let mut acc = f.zero();
        for i in 0..3 {
            for j in 0..3 {
                if self.field.is_zero(&self.gram[i][j]) {
                    continue;
                }
                let g = embed(&self.field, f, &self.gram[i][j])?;
                let conj = f.pow(&pt.coords[j], self.q);
                let term = f.mul(&f.mul(&pt.coords[i], &g), &conj);
                acc = f.add(&acc, &term);
            }
        }
        Ok(acc)
    }
}

/// Membership of P in the model's curve, over any field containing GF(q^2).
pub fn on_curve(pt: &ProjPoint, model: &HermitianModel, ambient: &Field) -> Result<bool> {
    Ok(ambient.is_zero(&model.form_at(pt, ambient)?))
}

/// All canonical points of PG(2, field), |field|^2 + |field| + 1 of them.
pub fn scan_plane(field: &Field) -> Result<impl Iterator<Item = ProjPoint> + '_> {
    if field.size() > SCAN_MAX {
        return Err(Error::FieldTooLarge(field.size()));
    }
    let f = field.clone();
    let n = f.size();
    let one = f.one();
    let it = (0..n * n + n + 1).map(move |idx| {
        if idx < n * n {
            let y = FieldElem { ctx: f.id(), c: f.unpack(idx / n) };
            let z = FieldElem { ctx: f.id(), c: f.unpack(idx % n) };
            ProjPoint { coords: [one, y, z] }
        } else if idx < n * n + n {
            let z = FieldElem { ctx: f.id(), c: f.unpack(idx - n * n) };
            ProjPoint { coords: [f.zero(), one, z] }
        } else {
            ProjPoint { coords: [f.zero(), f.zero(), one] }
        }
    });
    Ok(it)
}

/// 3x3 matrix over one field.
pub type Mat3 = [[FieldElem; 3]; 3];

pub fn mat_mul(f: &Field, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = f.zero();
            for l in 0..3 {
                acc = f.add(&acc, &f.mul(&a[i][l], &b[l][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_apply(f: &Field, m: &Mat3, p: &ProjPoint) -> Result<ProjPoint> {
    let mut out = [f.zero(); 3];
    for i in 0..3 {
        let mut acc = f.zero();
        for j in 0..3 {
            acc = f.add(&acc, &f.mul(&m[i][j], &p.coords[j]));
        }
        out[i] = acc;
    }
    ProjPoint::new(f, out)
}

/// Characteristic polynomial det(xI - M) as a cubic.
pub fn char_poly(f: &Field, m: &Mat3) -> Poly {
    let e = |i: usize, j: usize| m[i][j];
    let tr = f.add(&f.add(&e(0, 0), &e(1, 1)), &e(2, 2));
    let minor =
        |a: usize, b: usize| f.sub(&f.mul(&e(a, a), &e(b, b)), &f.mul(&e(a, b), &e(b, a)));
    let m2 = f.add(&f.add(&minor(0, 1), &minor(0, 2)), &minor(1, 2));
    let det = mat_det(f, m);
    // x^3 - tr x^2 + m2 x - det
    Poly::from_elems(f, &[f.neg(&det), m2, f.neg(&tr), f.one()])
}

pub fn mat_det(f: &Field, m: &Mat3) -> FieldElem {
    let e = |i: usize, j: usize| m[i][j];
    let t1 = f.mul(&e(0, 0), &f.sub(&f.mul(&e(1, 1), &e(2, 2)), &f.mul(&e(1, 2), &e(2, 1))));
    let t2 = f.mul(&e(0, 1), &f.sub(&f.mul(&e(1, 0), &e(2, 2)), &f.mul(&e(1, 2), &e(2, 0))));
    let t3 = f.mul(&e(0, 2), &f.sub(&f.mul(&e(1, 0), &e(2, 1)), &f.mul(&e(1, 1), &e(2, 0))));
    f.add(&f.sub(&t1, &t2), &t3)
}

/// Basis of the null space of M (Gaussian elimination).
pub fn null_space(f: &Field, m: &Mat3) -> Vec<[FieldElem; 3]> {
    let mut a = *m;
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let mut piv = None;
        for r in row..3 {
            if !f.is_zero(&a[r][col]) {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        a.swap(row, piv);
        let inv = f.inv(&a[row][col]).unwrap();
        for c in 0..3 {
            a[row][c] = f.mul(&a[row][c], &inv);
        }
        for r in 0..3 {
            if r != row && !f.is_zero(&a[r][col]) {
                let s = a[r][col];
                for c in 0..3 {
                    a[r][c] = f.sub(&a[r][c], &f.mul(&s, &a[row][c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == 3 {
            break;
        }
    }
    let free: Vec<usize> = (0..3).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = [f.zero(); 3];
        v[fc] = f.one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&a[ri][fc]);
        }
        basis.push(v);
    }
    basis
}

/// Projective fixed locus attached to one eigenvalue.
pub enum FixedLocus {
    Point(ProjPoint),
    /// A line of fixed points, spanned by two independent vectors.
    Line([FieldElem; 3], [FieldElem; 3]),
    All,
}

/// Fixed loci of M acting on PG(2, field), via roots of the characteristic
/// cubic plus null-space solves. `sub` is the field of the matrix entries.
pub fn fixed_loci(m: &Mat3, sub: &Field, field: &Field) -> Result<Vec<FixedLocus>> {
    let cp = char_poly(sub, m);
    let roots = crate::ff::poly_roots_in(&cp, field)?;
    let f = field;
    let mut lifted = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            lifted[i][j] = embed(sub, f, &m[i][j])?;
        }
    }
    let mut out = Vec::new();
    for (lambda, _) in roots {
        let mut shifted = lifted;
        for i in 0..3 {
            shifted[i][i] = f.sub(&shifted[i][i], &lambda);
        }
        let ns = null_space(f, &shifted);
        match ns.len() {
            0 => unreachable!("eigenvalue without eigenvector"),
            1 => out.push(FixedLocus::Point(ProjPoint::new(f, ns[0])?)),
            2 => out.push(FixedLocus::Line(ns[0], ns[1])),
            _ => return Ok(vec![FixedLocus::All]),
        }
    }
    Ok(out)
}

/// Number of fixed points of M on PG(2, field).
pub fn fixed_point_count(m: &Mat3, sub: &Field, field: &Field) -> Result<u64> {
    let mut n = 0u64;
    for locus in fixed_loci(m, sub, field)? {
        n += match locus {
            FixedLocus::Point(_) => 1,
            FixedLocus::Line(_, _) => field.size() + 1,
            FixedLocus::All => field.size() * field.size() + field.size() + 1,
        };
    }
    Ok(n)
}

/// Enumerate the points of a fixed line spanned by u and v.
pub fn line_points(f: &Field, u: &[FieldElem; 3], v: &[FieldElem; 3]) -> Vec<ProjPoint> {
    let mut out = Vec::with_capacity(f.size() as usize + 1);
    for t in 0..f.size() {
        let te = FieldElem { ctx: f.id(), c: f.unpack(t) };
        let mut c = [f.zero(); 3];
        for i in 0..3 {
            c[i] = f.add(&u[i], &f.mul(&te, &v[i]));
        }
        out.push(ProjPoint::new(f, c).expect("u, v independent"));
    }
    out.push(ProjPoint::new(f, *v).expect("nonzero"));
    out
}

/// All fixed points of M as an explicit set.
pub fn fixed_points(m: &Mat3, sub: &Field, field: &Field) -> Result<Vec<ProjPoint>> {
    if field.size() > SCAN_MAX {
        return Err(Error::FieldTooLarge(field.size()));
    }
    let mut pts = Vec::new();
    for locus in fixed_loci(m, sub, field)? {
        match locus {
            FixedLocus::Point(p) => pts.push(p),
            FixedLocus::Line(u, v) => pts.extend(line_points(field, &u, &v)),
            FixedLocus::All => {
                return Ok(scan_plane(field)?.collect());
            }
        }
    }
    pts.sort_by_key(|p| {
        [
            field.pack(&p.coords[0].c),
            field.pack(&p.coords[1].c),
            field.pack(&p.coords[2].c),
        ]
    });
    pts.dedup();
    Ok(pts)
}

/// Scan-based fixed points, the independent oracle for `fixed_points`.
pub fn fixed_points_scan(m: &Mat3, sub: &Field, field: &Field) -> Result<Vec<ProjPoint>> {
    let mut lifted = [[field.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            lifted[i][j] = embed(sub, field, &m[i][j])?;
        }
    }
    let mut out = Vec::new();
    for p in scan_plane(field)? {
        if mat_apply(field, &lifted, &p)? == p {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn mat_from_ints(f: &Field, rows: [[i64; 3]; 3]) -> Mat3 {
    let mut m = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = f.from_int(rows[i][j]);
        }
    }
    m
}

pub fn identity_mat(f: &Field) -> Mat3 {
    let mut m = [[f.zero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_curve_points(q: u64, tag: ModelTag) -> u64 {
        let model = HermitianModel::new(tag, q).unwrap();
        let f = model.field.clone();
        scan_plane(&f)
            .unwrap()
            .filter(|p| on_curve(p, &model, &f).unwrap())
            .count() as u64
    }

    #[test]
    fn hermitian_has_q_cubed_plus_one_points() {
        assert_eq!(count_curve_points(2, ModelTag::Fermat), 9);
        assert_eq!(count_curve_points(3, ModelTag::Fermat), 28);
        assert_eq!(count_curve_points(3, ModelTag::NormTrace), 28);
        assert_eq!(count_curve_points(3, ModelTag::M3), 28);
        assert_eq!(count_curve_points(4, ModelTag::NormTrace), 65);
        assert_eq!(count_curve_points(5, ModelTag::M3), 126);
    }

    #[test]
    fn unit_vector_off_fermat_curve() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let model = HermitianModel::new(ModelTag::Fermat, q).unwrap();
            let f = model.field.clone();
            let p = ProjPoint::from_ints(&f, [1, 0, 0]).unwrap();
            assert!(!on_curve(&p, &model, &f).unwrap());
        }
    }

    #[test]
    fn plane_sizes() {
        assert_eq!(scan_plane(&make_field(2, 2).unwrap()).unwrap().count(), 21);
        assert_eq!(scan_plane(&make_field(3, 2).unwrap()).unwrap().count(), 91);
        assert_eq!(scan_plane(&make_field(5, 2).unwrap()).unwrap().count(), 651);
    }

    #[test]
    fn scan_points_are_canonical_and_distinct() {
        let f = make_field(3, 2).unwrap();
        let pts: Vec<_> = scan_plane(&f).unwrap().collect();
        let mut seen = std::collections::HashSet::new();
        for p in &pts {
            assert!(seen.insert(*p));
            let lead = p.coords.iter().position(|e| !f.is_zero(e)).unwrap();
            assert_eq!(p.coords[lead], f.one());
        }
    }

    #[test]
    fn normalization_is_canonical() {
        let f = make_field(5, 2).unwrap();
        let g = f.primitive();
        let a = ProjPoint::new(&f, [g, f.from_int(3), f.one()]).unwrap();
        let s = f.pow(&g, 7);
        let b = ProjPoint::new(
            &f,
            [f.mul(&g, &s), f.mul(&f.from_int(3), &s), f.mul(&f.one(), &s)],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fixed_points_identity_and_homology() {
        let q = 5u64;
        let model = HermitianModel::new(ModelTag::Fermat, q).unwrap();
        let f = model.field.clone();
        let id = identity_mat(&f);
        assert_eq!(
            fixed_point_count(&id, &f, &f).unwrap(),
            f.size() * f.size() + f.size() + 1
        );

        // diag(z,1,1) with z of order 6: center + pointwise-fixed axis X=0
        let z = f.element_of_order(6).unwrap();
        let mut m = identity_mat(&f);
        m[0][0] = z;
        let pts = fixed_points(&m, &f, &f).unwrap();
        assert_eq!(pts.len() as u64, 1 + f.size() + 1);
        let scan = fixed_points_scan(&m, &f, &f).unwrap();
        assert_eq!(pts.len(), scan.len());
        for p in &scan {
            assert!(pts.contains(p));
        }
    }

    #[test]
    fn eigen_path_agrees_with_scan() {
        // assorted matrices over GF(9), including non-diagonalizable ones
        let f = make_field(3, 2).unwrap();
        let g = f.primitive();
        let cases = [
            mat_from_ints(&f, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            mat_from_ints(&f, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            mat_from_ints(&f, [[2, 0, 1], [0, 1, 0], [1, 0, 1]]),
            [
                [g, f.zero(), f.zero()],
                [f.zero(), f.one(), f.zero()],
                [f.zero(), f.zero(), f.one()],
            ],
        ];
        for m in cases {
            let fast = fixed_points(&m, &f, &f).unwrap();
            let slow = fixed_points_scan(&m, &f, &f).unwrap();
            assert_eq!(fast.len(), slow.len());
            for p in &slow {
                assert!(fast.contains(p));
            }
        }
    }
}
