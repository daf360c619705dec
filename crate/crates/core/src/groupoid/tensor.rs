//! Principality and the Hilsum–Skandalis tensor product.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::action::{equivariant_maps, is_isomorphic_bibundle, opposite_bibundle, unit_bibundle, ActionSide};
use super::{Bibundle, BibundleMap, FiniteGroupoid, GroupoidAction};
use crate::algebra::IsoOutcome;
use crate::bicat::ArrowCalculus;
use crate::error::{Error, Result};

const PROPERNESS: &str = "automatic: actions on finite discrete sets are proper";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalityReport {
    pub holds: bool,
    /// The base map of the other side is onto.
    pub base_surjective: bool,
    /// The action is free.
    pub free: bool,
    /// The action is transitive along the fibres of the other base map.
    pub transitive_on_fibres: bool,
    pub properness: &'static str,
    pub witness: Option<String>,
}

/// Left principality: `σ` is onto and `(x, m) ↦ (xm, m)` is a bijection
/// `G_1 ×_{G_0} M → M ×_{H_0} M`.
pub fn check_left_principal(m: &Bibundle) -> PrincipalityReport {
    let g = m.left_groupoid();
    let h = m.right_groupoid();
    let mut witness = None;
    let mut note = |w: String| {
        if witness.is_none() {
            witness = Some(w);
        }
    };
    let mut hit = vec![false; h.object_count()];
    for u in 0..m.len() {
        hit[m.sigma(u)] = true;
    }
    let base_surjective = match hit.iter().position(|&b| !b) {
        Some(q) => {
            note(format!("object {} is not in the image of the base map", h.objects()[q]));
            false
        }
        None => true,
    };
    let mut free = true;
    let mut transitive = true;
    for u in 0..m.len() {
        // mover[v] = arrow sending u to v
        let mut mover: Vec<Option<usize>> = vec![None; m.len()];
        for x in 0..g.arrow_count() {
            if let Some(v) = m.act_left(x, u) {
                if let Some(y) = mover[v] {
                    if free {
                        note(format!("arrows {} and {} agree on {}", g.arrows()[y], g.arrows()[x], m.carrier()[u]));
                    }
                    free = false;
                } else {
                    mover[v] = Some(x);
                }
            }
        }
        for v in 0..m.len() {
            if m.sigma(v) == m.sigma(u) && mover[v].is_none() {
                if transitive {
                    note(format!("no arrow sends {} to {}", m.carrier()[u], m.carrier()[v]));
                }
                transitive = false;
            }
        }
    }
    PrincipalityReport {
        holds: base_surjective && free && transitive,
        base_surjective,
        free,
        transitive_on_fibres: transitive,
        properness: PROPERNESS,
        witness,
    }
}

/// Right principality, checked as left principality of the opposite.
pub fn check_right_principal(m: &Bibundle) -> PrincipalityReport {
    check_left_principal(&opposite_bibundle(m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiprincipalReport {
    pub holds: bool,
    pub left: PrincipalityReport,
    pub right: PrincipalityReport,
}

pub fn check_biprincipal(m: &Bibundle) -> BiprincipalReport {
    let left = check_left_principal(m);
    let right = check_right_principal(m);
    BiprincipalReport {
        holds: left.holds && right.holds,
        left,
        right,
    }
}

/// `M ⊛_H N` with the data linking it to the pullback.
#[derive(Clone, Debug)]
pub struct HsTensor {
    pub bibundle: Bibundle,
    /// The pullback `M ×_{H_0} N`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    /// Orbit of each pullback pair.
    pub projection: Vec<usize>,
    /// Least pair of each orbit.
    pub representatives: Vec<usize>,
    index: BTreeMap<(usize, usize), usize>,
}

impl HsTensor {
    /// The orbit `[x, y]`, when `(x, y)` lies in the pullback.
    pub fn class_of(&self, x: usize, y: usize) -> Option<usize> {
        self.index.get(&(x, y)).map(|&i| self.projection[i])
    }

    /// The representative pair of orbit `c`.
    pub fn representative(&self, c: usize) -> (usize, usize) {
        self.pairs[self.representatives[c]]
    }
}

/// The orbit space of `M ×_{H_0} N` under `(x, y) ↦ (xh, h⁻¹y)`. `m` must
/// be left principal.
pub fn hs_tensor(m: &Bibundle, n: &Bibundle) -> Result<HsTensor> {
    if m.right_groupoid() != n.left_groupoid() {
        return Err(Error::GroupoidMismatch);
    }
    if !check_left_principal(m).holds {
        return Err(Error::NotRegular);
    }
    let h = m.right_groupoid();
    let mut pairs = Vec::new();
    for x in 0..m.len() {
        for y in 0..n.len() {
            if m.sigma(x) == n.tau(y) {
                pairs.push((x, y));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut projection = vec![usize::MAX; pairs.len()];
    let mut representatives = Vec::new();
    for start in 0..pairs.len() {
        if projection[start] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(start);
        let (x, y) = pairs[start];
        for k in 0..h.arrow_count() {
            if let (Some(xk), Some(ky)) = (m.act_right(x, k), n.act_left(h.inv(k), y)) {
                projection[index[&(xk, ky)]] = c;
            }
        }
    }
    let class = |x: usize, y: usize| projection[index[&(x, y)]];
    let reps: Vec<(usize, usize)> = representatives.iter().map(|&i| pairs[i]).collect();
    let carrier: Vec<String> = reps
        .iter()
        .map(|&(x, y)| format!("[{}|{}]", m.carrier()[x], n.carrier()[y]))
        .collect();
    let g = m.left_groupoid();
    let k = n.right_groupoid();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        let c = projection[i];
        for a in 0..g.arrow_count() {
            if let Some(ax) = m.act_left(a, x) {
                left.push((a, c, class(ax, y)));
            }
        }
        for b in 0..k.arrow_count() {
            if let Some(yb) = n.act_right(y, b) {
                right.push((b, c, class(x, yb)));
            }
        }
    }
    left.sort_unstable();
    left.dedup();
    right.sort_unstable();
    right.dedup();
    // GroupoidAction::new rejects a class sent to two places, so a badly
    // defined quotient action cannot slip through
    let bibundle = Bibundle::new(
        GroupoidAction::new(
            Arc::clone(g),
            ActionSide::Left,
            carrier.clone(),
            reps.iter().map(|&(x, _)| m.tau(x)).collect(),
            &left,
        )?,
        GroupoidAction::new(
            Arc::clone(k),
            ActionSide::Right,
            carrier,
            reps.iter().map(|&(_, y)| n.sigma(y)).collect(),
            &right,
        )?,
    )?;
    Ok(HsTensor {
        bibundle,
        pairs,
        projection,
        representatives,
        index,
    })
}

/// Objects are finite groupoids, 1-cells left principal bibundles, 2-cells
/// equivariant maps.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroupoidCalculus;

impl GroupoidCalculus {
    /// Equivariant maps enumerated before sampling.
    pub const SAMPLE_POOL: usize = 64;
}

impl ArrowCalculus for GroupoidCalculus {
    type Object = Arc<FiniteGroupoid>;
    type Cell = Bibundle;
    type TwoCell = BibundleMap;
    type Witness = HsTensor;

    fn name(&self) -> &'static str {
        "groupoids"
    }

    fn source(&self, f: &Bibundle) -> Arc<FiniteGroupoid> {
        Arc::clone(f.left_groupoid())
    }

    fn target(&self, f: &Bibundle) -> Arc<FiniteGroupoid> {
        Arc::clone(f.right_groupoid())
    }

    fn unit(&self, a: &Arc<FiniteGroupoid>) -> Bibundle {
        unit_bibundle(a)
    }

    fn compose_with_witness(&self, f: &Bibundle, g: &Bibundle) -> Result<(Bibundle, HsTensor)> {
        if f.right_groupoid() != g.left_groupoid() {
            return Err(Error::NotComposable);
        }
        let t = hs_tensor(f, g)?;
        Ok((t.bibundle.clone(), t))
    }

    /// `[[x, y], z] ↦ [x, [y, z]]`
    fn associator(&self, m: &Bibundle, n: &Bibundle, p: &Bibundle) -> Result<BibundleMap> {
        let (mn, t1) = self.compose_with_witness(m, n)?;
        let (_, t2) = self.compose_with_witness(&mn, p)?;
        let (np, u1) = self.compose_with_witness(n, p)?;
        let (_, u2) = self.compose_with_witness(m, &np)?;
        let map = (0..t2.bibundle.len())
            .map(|c| {
                let (xy, z) = t2.representative(c);
                let (x, y) = t1.representative(xy);
                let yz = u1.class_of(y, z).expect("(y, z) lies in the pullback");
                u2.class_of(x, yz).expect("(x, [y, z]) lies in the pullback")
            })
            .collect();
        BibundleMap::new(t2.bibundle, u2.bibundle, map)
    }

    /// `[g, m] ↦ gm`
    fn left_unitor(&self, m: &Bibundle) -> Result<BibundleMap> {
        let t = hs_tensor(&unit_bibundle(m.left_groupoid()), m)?;
        let map = (0..t.bibundle.len())
            .map(|c| {
                let (g, u) = t.representative(c);
                m.act_left(g, u).expect("s(g) = τ(m)")
            })
            .collect();
        BibundleMap::new(t.bibundle, m.clone(), map)
    }

    /// `[m, h] ↦ mh`
    fn right_unitor(&self, m: &Bibundle) -> Result<BibundleMap> {
        let t = hs_tensor(m, &unit_bibundle(m.right_groupoid()))?;
        let map = (0..t.bibundle.len())
            .map(|c| {
                let (u, h) = t.representative(c);
                m.act_right(u, h).expect("σ(m) = t(h)")
            })
            .collect();
        BibundleMap::new(t.bibundle, m.clone(), map)
    }

    fn identity_2cell(&self, f: &Bibundle) -> BibundleMap {
        BibundleMap::identity(f)
    }

    fn vertical_compose(&self, first: &BibundleMap, second: &BibundleMap) -> Result<BibundleMap> {
        first.then(second)
    }

    /// `[x, y] ↦ [α(x), β(y)]`
    fn horizontal_compose(&self, alpha: &BibundleMap, beta: &BibundleMap) -> Result<BibundleMap> {
        let src = hs_tensor(&alpha.source, &beta.source).map_err(|_| Error::NotComposable)?;
        let tgt = hs_tensor(&alpha.target, &beta.target).map_err(|_| Error::NotComposable)?;
        let map = (0..src.bibundle.len())
            .map(|c| {
                let (x, y) = src.representative(c);
                tgt.class_of(alpha.map[x], beta.map[y]).expect("equivariant maps preserve base maps")
            })
            .collect();
        BibundleMap::new(src.bibundle, tgt.bibundle, map)
    }

    fn is_iso(&self, alpha: &BibundleMap) -> bool {
        alpha.is_iso()
    }

    fn find_iso(&self, f: &Bibundle, g: &Bibundle) -> Result<IsoOutcome<BibundleMap>> {
        is_isomorphic_bibundle(f, g)
    }

    fn sample_endomorphisms(&self, f: &Bibundle, count: usize, seed: u64) -> Vec<BibundleMap> {
        let pool = equivariant_maps(f, f, false, Self::SAMPLE_POOL).expect("same groupoids");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .filter_map(|_| pool.choose(&mut rng))
            .map(|map| BibundleMap {
                source: f.clone(),
                target: f.clone(),
                map: map.clone(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{check_left_unit, check_pentagon, check_right_unit, check_triangle, verify_object_isomorphism};
    use crate::groupoid::GroupoidFunctor;
    use crate::groupoid::action::functor_to_bibundle;

    fn shared(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    /// `{a, b}` between `P_2` and the point.
    fn two_points() -> Bibundle {
        let p2 = shared(FiniteGroupoid::pair(2));
        let pt = shared(FiniteGroupoid::point());
        let incl = GroupoidFunctor::new(pt, p2, vec![0], vec![0]).unwrap();
        opposite_bibundle(&functor_to_bibundle(&incl).unwrap())
    }

    #[test]
    fn principality_of_standard_bibundles() {
        for g in [FiniteGroupoid::point(), FiniteGroupoid::pair(2), FiniteGroupoid::cyclic(3)] {
            let u = unit_bibundle(&shared(g));
            assert!(check_biprincipal(&u).holds);
        }
        let m = two_points();
        assert_eq!(m.len(), 2);
        assert!(check_biprincipal(&m).holds);
    }

    #[test]
    fn free_but_not_transitive() {
        // Z/2 acting freely on four points, point groupoid on the right
        let z2 = shared(FiniteGroupoid::cyclic(2));
        let names: Vec<String> = (0..4).map(|i| format!("m{i}")).collect();
        let left = vec![(0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 0, 1), (1, 1, 0), (1, 2, 3), (1, 3, 2)];
        let m = Bibundle::new(
            GroupoidAction::new(z2, ActionSide::Left, names.clone(), vec![0; 4], &left).unwrap(),
            GroupoidAction::trivial_right(names),
        )
        .unwrap();
        let r = check_left_principal(&m);
        assert!(r.free && !r.transitive_on_fibres && !r.holds);
        assert_eq!(r.witness.as_deref(), Some("no arrow sends m0 to m2"));
        let r = check_right_principal(&m);
        assert!(!r.holds);
    }

    #[test]
    fn tensor_of_two_points_with_opposite() {
        let m = two_points();
        let op = opposite_bibundle(&m);
        // M̄ ⊛_{P2} M: one orbit, the unit of the point
        let t = hs_tensor(&op, &m).unwrap();
        assert_eq!(t.pairs.len(), 2);
        assert_eq!(t.bibundle.len(), 1);
        // M ⊛_1 M̄: four orbits, the unit of P2
        let t = hs_tensor(&m, &op).unwrap();
        assert_eq!(t.bibundle.len(), 4);
        assert!(is_isomorphic_bibundle(&t.bibundle, &unit_bibundle(m.left_groupoid())).unwrap().is_found());
        assert_eq!(t.bibundle.carrier()[0], "[(0,(0,0))|(0,(0,0))]");
    }

    #[test]
    fn tensoring_needs_regularity() {
        let z2 = shared(FiniteGroupoid::cyclic(2));
        let pt = shared(FiniteGroupoid::point());
        let c = GroupoidFunctor::new(Arc::clone(&z2), pt, vec![0], vec![0, 0]).unwrap();
        let m = functor_to_bibundle(&c).unwrap();
        assert!(!check_left_principal(&m).holds);
        assert!(matches!(hs_tensor(&m, &unit_bibundle(m.right_groupoid())), Err(Error::NotRegular)));
        let other = unit_bibundle(&z2);
        assert!(matches!(hs_tensor(&m, &other), Err(Error::GroupoidMismatch)));
    }

    #[test]
    fn coherence_on_small_chain() {
        let calc = GroupoidCalculus;
        let m = two_points();
        let op = opposite_bibundle(&m);
        assert!(check_pentagon(&calc, &m, &op, &m, &op).unwrap().holds);
        assert!(check_pentagon(&calc, &op, &m, &op, &m).unwrap().holds);
        assert!(check_triangle(&calc, &m, &op).unwrap().holds);
        assert!(check_left_unit(&calc, &m, 4, 0).unwrap().holds);
        assert!(check_right_unit(&calc, &op, 4, 0).unwrap().holds);
        assert!(calc.associator(&m, &op, &m).unwrap().is_iso());
        assert!(verify_object_isomorphism(&calc, &m, &op).unwrap().is_isomorphic());
    }
}
