//! Riemann-Hurwitz genus of H_q/G from the element census.
//!
//! All arithmetic is exact integer arithmetic; a non-integral division is an
//! error carrying the full census, mirroring how non-integrality is used to
//! rule out impossible group actions.

use crate::classify::{classify, EType};
use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Outcome of one quotient-genus computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub q: u64,
    pub group_order: u64,
    /// etype -> (element count, per-element contribution i)
    pub census: BTreeMap<EType, (u64, u64)>,
    /// Degree of the different divisor, sum of i over nontrivial elements.
    pub delta: u64,
    pub genus_top: u64,
    pub genus_quotient: u64,
}

impl GenusReport {
    pub fn to_json(&self) -> serde_json::Value {
        let census: serde_json::Map<String, serde_json::Value> = self
            .census
            .iter()
            .map(|(t, (n, i))| {
                (t.as_str().to_string(), serde_json::json!([n, i]))
            })
            .collect();
        serde_json::json!({
            "q": self.q,
            "order": self.group_order,
            "census": census,
            "delta": self.delta,
            "genus": self.genus_quotient,
        })
    }
}

/// Census of a closed group: per-type counts with contributions.
pub fn group_census(grp: &GeneratedGroup) -> Result<BTreeMap<EType, (u64, u64)>> {
    let q = grp.ctx.q();
    let classes: Vec<_> = grp
        .elements
        .par_iter()
        .filter(|g| !g.is_identity())
        .map(classify)
        .collect::<Result<Vec<_>>>()?;
    let mut census: BTreeMap<EType, (u64, u64)> = BTreeMap::new();
    for c in classes {
        let e = census.entry(c.etype).or_insert((0, c.etype.contribution(q)));
        e.0 += 1;
    }
    Ok(census)
}

/// Exact Riemann-Hurwitz genus of H_q/G.
pub fn quotient_genus(grp: &GeneratedGroup) -> Result<GenusReport> {
    let q = grp.ctx.q();
    let census = group_census(grp)?;
    genus_from_census(q, grp.order(), &census)
}

/// Genus from a precomputed census; 2g-2 = |G|(2g_bar-2) + delta must hold
/// with an integral quotient genus in [0, g].
pub fn genus_from_census(
    q: u64,
    group_order: u64,
    census: &BTreeMap<EType, (u64, u64)>,
) -> Result<GenusReport> {
    let delta: u64 = census.values().map(|(n, i)| n * i).sum();
    let genus_top = q * (q - 1) / 2;
    let two_g_top = 2 * genus_top as i64 - 2;
    let rhs = two_g_top - delta as i64;
    let fail = |msg: &str| Error::NonIntegralGenus {
        detail: format!(
            "{msg}: q={q}, |G|={group_order}, delta={delta}, census={:?}",
            census
        ),
    };
    if rhs.rem_euclid(group_order as i64) != 0 {
        return Err(fail("|G| does not divide 2g-2-delta"));
    }
    let two_gq = rhs / group_order as i64; // = 2*genus - 2
    if two_gq.rem_euclid(2) != 0 {
        return Err(fail("2g_bar-2 is odd"));
    }
    let genus = (two_gq + 2) / 2;
    if genus < 0 || genus as u64 > genus_top {
        return Err(fail("quotient genus out of range"));
    }
    // degree bound on the different
    if delta > (group_order - 1) * (q + 2) {
        return Err(fail("different degree exceeds (|G|-1)(q+2)"));
    }
    Ok(GenusReport {
        q,
        group_order,
        census: census.clone(),
        delta,
        genus_top,
        genus_quotient: genus as u64,
    })
}

/// Deduplicated quotient genera over cyclic subgroups generated by one
/// representative per realizable (order, type) class.
pub fn cyclic_spectrum(q: u64, bound: u64) -> Result<Vec<(u64, EType, u64)>> {
    let reps = crate::constructions::cyclic_representatives(q)?;
    let mut out = Vec::new();
    for (order, etype, gen) in reps {
        if order > bound {
            continue;
        }
        let grp = crate::group::closure(&[gen], crate::group::DEFAULT_CLOSURE_CAP)?;
        debug_assert_eq!(grp.order(), order);
        let rep = quotient_genus(&grp)?;
        out.push((order, etype, rep.genus_quotient));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{identity_mat, ModelTag};
    use crate::group::{closure, GroupCtx, GroupElem};

    #[test]
    fn elation_quotient_at_q2() {
        // q=2, G generated by one elation: delta = 4, genus 0
        let ctx = GroupCtx::new(ModelTag::NormTrace, 2).unwrap();
        let f = ctx.field();
        // c + c^2 = 0 with c != 0 means c = 1 in GF(4)
        let mut m = identity_mat(f);
        m[0][2] = f.one();
        let g = GroupElem::new(&ctx, m).unwrap();
        let grp = closure(&[g], 100).unwrap();
        assert_eq!(grp.order(), 2);
        let rep = quotient_genus(&grp).unwrap();
        assert_eq!(rep.delta, 4);
        assert_eq!(rep.genus_quotient, 0);
    }

    #[test]
    fn trivial_group_gives_top_genus() {
        let ctx = GroupCtx::new(ModelTag::Fermat, 5).unwrap();
        let grp = closure(&[GroupElem::identity(&ctx)], 10).unwrap();
        let rep = quotient_genus(&grp).unwrap();
        assert_eq!(rep.genus_quotient, 10);
        assert_eq!(rep.delta, 0);
    }

    #[test]
    fn c4_b2_quotient_at_q5() {
        // G = C_4 from a B2 element: census {B2: 2, A: 1}, delta 10, genus 2
        let ctx = GroupCtx::new(ModelTag::NormTrace, 5).unwrap();
        let f = ctx.field();
        let a = f.element_of_order(4).unwrap();
        let mut m = identity_mat(f);
        m[0][0] = f.pow(&a, 6);
        m[1][1] = a;
        let g = GroupElem::new(&ctx, m).unwrap();
        let grp = closure(&[g], 100).unwrap();
        assert_eq!(grp.order(), 4);
        let rep = quotient_genus(&grp).unwrap();
        assert_eq!(rep.census[&EType::B2], (2, 2));
        assert_eq!(rep.census[&EType::A], (1, 6));
        assert_eq!(rep.delta, 10);
        assert_eq!(rep.genus_quotient, 2);
    }

    #[test]
    fn report_serializes_with_census() {
        let ctx = GroupCtx::new(ModelTag::NormTrace, 5).unwrap();
        let f = ctx.field();
        let a = f.element_of_order(4).unwrap();
        let mut m = identity_mat(f);
        m[0][0] = f.pow(&a, 6);
        m[1][1] = a;
        let g = GroupElem::new(&ctx, m).unwrap();
        let grp = closure(&[g], 100).unwrap();
        let rep = quotient_genus(&grp).unwrap();
        let v = rep.to_json();
        assert_eq!(v["genus"], 2);
        assert_eq!(v["delta"], 10);
        assert_eq!(v["census"]["B2"][0], 2);
        assert_eq!(v["census"]["A"][1], 6);
        // round-trip
        let s = serde_json::to_string(&v).unwrap();
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
