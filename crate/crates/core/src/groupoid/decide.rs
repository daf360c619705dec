//! Morita equivalence of finite groupoids from orbits and isotropy.

use std::sync::Arc;

use serde::Serialize;

use super::action::ActionSide;
use super::group::{group_isomorphism, SmallGroup, MAX_GROUP_ORDER};
use super::{Bibundle, FiniteGroupoid, GroupoidAction};

/// Orbits (ordered by least object) and the isotropy group at each orbit's
/// least object.
#[derive(Clone, Debug)]
pub struct MoritaInvariants {
    pub orbits: Vec<Vec<usize>>,
    pub isotropy: Vec<SmallGroup>,
}

pub fn morita_invariants(g: &FiniteGroupoid) -> MoritaInvariants {
    let orbits = g.orbits();
    let isotropy = orbits.iter().map(|o| g.isotropy(o[0])).collect();
    MoritaInvariants { orbits, isotropy }
}

/// An isomorphism class of isotropy groups and how many orbits carry it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropyClass {
    /// Least object of the first orbit in the class.
    pub example_object: String,
    pub order: usize,
    pub element_orders: Vec<usize>,
    pub abelian: bool,
    pub orbits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MoritaObstruction {
    OrbitCount { left: usize, right: usize },
    Isotropy { left: Vec<IsotropyClass>, right: Vec<IsotropyClass> },
}

#[derive(Clone, Debug)]
pub enum MoritaVerdict {
    /// `matching` pairs each orbit of the first groupoid with one of the
    /// second; `certificate` is biprincipal.
    Equivalent { certificate: Bibundle, matching: Vec<(usize, usize)> },
    NotEquivalent { obstruction: MoritaObstruction },
    Unknown { reason: String },
}

impl MoritaVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, MoritaVerdict::Equivalent { .. })
    }

    pub fn certificate(&self) -> Option<&Bibundle> {
        match self {
            MoritaVerdict::Equivalent { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn obstruction(&self) -> Option<&MoritaObstruction> {
        match self {
            MoritaVerdict::NotEquivalent { obstruction } => Some(obstruction),
            _ => None,
        }
    }
}

fn iso_classes(g: &FiniteGroupoid, inv: &MoritaInvariants) -> Vec<IsotropyClass> {
    let mut reps: Vec<&SmallGroup> = Vec::new();
    let mut out: Vec<IsotropyClass> = Vec::new();
    for (o, grp) in inv.orbits.iter().zip(&inv.isotropy) {
        match reps.iter().position(|r| group_isomorphism(r, grp).is_some()) {
            Some(i) => out[i].orbits += 1,
            None => {
                reps.push(grp);
                out.push(IsotropyClass {
                    example_object: g.objects()[o[0]].clone(),
                    order: grp.order(),
                    element_orders: grp.order_profile(),
                    abelian: grp.is_abelian(),
                    orbits: 1,
                });
            }
        }
    }
    out
}

/// Decides Morita equivalence: equivalent iff some bijection of orbits
/// matches isotropy groups up to isomorphism.
pub fn morita_decide(g: &Arc<FiniteGroupoid>, h: &Arc<FiniteGroupoid>) -> MoritaVerdict {
    let (ig, ih) = (morita_invariants(g), morita_invariants(h));
    if ig.orbits.len() != ih.orbits.len() {
        return MoritaVerdict::NotEquivalent {
            obstruction: MoritaObstruction::OrbitCount {
                left: ig.orbits.len(),
                right: ih.orbits.len(),
            },
        };
    }
    let sorted_orders = |inv: &MoritaInvariants| {
        let mut v: Vec<usize> = inv.isotropy.iter().map(SmallGroup::order).collect();
        v.sort_unstable();
        v
    };
    let orders_match = sorted_orders(&ig) == sorted_orders(&ih);
    let too_big = ig.isotropy.iter().chain(&ih.isotropy).find(|grp| grp.order() > MAX_GROUP_ORDER);
    if let (true, Some(grp)) = (orders_match, too_big) {
        return MoritaVerdict::Unknown {
            reason: format!("isotropy group of order {} exceeds {}", grp.order(), MAX_GROUP_ORDER),
        };
    }
    // isomorphism is an equivalence relation, so greedy matching is complete
    let mut used = vec![false; ih.orbits.len()];
    let mut matching = Vec::new();
    let mut isos = Vec::new();
    if orders_match {
        for (i, gi) in ig.isotropy.iter().enumerate() {
            let found = (0..ih.orbits.len()).find_map(|j| {
                if used[j] {
                    return None;
                }
                group_isomorphism(gi, &ih.isotropy[j]).map(|phi| (j, phi))
            });
            let Some((j, phi)) = found else { break };
            used[j] = true;
            matching.push((i, j));
            isos.push(phi);
        }
    }
    if matching.len() != ig.orbits.len() {
        return MoritaVerdict::NotEquivalent {
            obstruction: MoritaObstruction::Isotropy {
                left: iso_classes(g, &ig),
                right: iso_classes(h, &ih),
            },
        };
    }
    let certificate = certificate_bibundle(g, h, &ig, &ih, &matching, &isos);
    MoritaVerdict::Equivalent { certificate, matching }
}

/// Over each matched pair of orbits with least objects `q`, `r` and
/// `φ: G_q → H_r`, the classes of pairs `(a, b)` with `s(a) = q`, `t(b) = r`
/// under `(a, b) ~ (ak, φ(k)⁻¹b)`. `τ[a, b] = t(a)`, `σ[a, b] = s(b)`.
fn certificate_bibundle(
    g: &Arc<FiniteGroupoid>,
    h: &Arc<FiniteGroupoid>,
    ig: &MoritaInvariants,
    ih: &MoritaInvariants,
    matching: &[(usize, usize)],
    isos: &[Vec<usize>],
) -> Bibundle {
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut class_of = std::collections::BTreeMap::new();
    for (&(i, j), phi) in matching.iter().zip(isos) {
        let (q, r) = (ig.orbits[i][0], ih.orbits[j][0]);
        let (gq, hr) = (&ig.isotropy[i], &ih.isotropy[j]);
        for a in g.arrows_from(q) {
            for b in h.arrows_to(r) {
                if class_of.contains_key(&(a, b)) {
                    continue;
                }
                let c = reps.len();
                reps.push((a, b));
                for (k_local, &k) in gq.elements.iter().enumerate() {
                    let hk = hr.elements[phi[k_local]];
                    let ak = g.mul(a, k).expect("s(a) = q");
                    let b2 = h.mul(h.inv(hk), b).expect("t(b) = r");
                    class_of.insert((ak, b2), c);
                }
            }
        }
    }
    let carrier: Vec<String> = reps
        .iter()
        .map(|&(a, b)| format!("[{}|{}]", g.arrows()[a], h.arrows()[b]))
        .collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (c, &(a, b)) in reps.iter().enumerate() {
        for x in g.arrows_from(g.t(a)) {
            let xa = g.mul(x, a).expect("s(x) = t(a)");
            left.push((x, c, class_of[&(xa, b)]));
        }
        for y in h.arrows_to(h.s(b)) {
            let by = h.mul(b, y).expect("t(y) = s(b)");
            right.push((y, c, class_of[&(a, by)]));
        }
    }
    let tau = reps.iter().map(|&(a, _)| g.t(a)).collect();
    let sigma = reps.iter().map(|&(_, b)| h.s(b)).collect();
    Bibundle::new(
        GroupoidAction::new(Arc::clone(g), ActionSide::Left, carrier.clone(), tau, &left).expect("left action is valid"),
        GroupoidAction::new(Arc::clone(h), ActionSide::Right, carrier, sigma, &right).expect("right action is valid"),
    )
    .expect("actions commute")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::check_biprincipal;

    fn shared(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    #[test]
    fn pair_groupoids_are_equivalent_to_the_point() {
        let pt = shared(FiniteGroupoid::point());
        for n in 2..=4 {
            let v = morita_decide(&shared(FiniteGroupoid::pair(n)), &pt);
            let cert = v.certificate().unwrap();
            assert_eq!(cert.len(), n);
            assert!(check_biprincipal(cert).holds);
        }
    }

    #[test]
    fn isotropy_obstructions() {
        let pt = shared(FiniteGroupoid::point());
        let z2 = shared(FiniteGroupoid::cyclic(2));
        let v = morita_decide(&z2, &pt);
        assert!(matches!(v.obstruction(), Some(MoritaObstruction::Isotropy { .. })));
        let z4 = shared(FiniteGroupoid::cyclic(4));
        let klein = shared(FiniteGroupoid::abelian(&[2, 2]));
        let Some(MoritaObstruction::Isotropy { left, right }) = morita_decide(&z4, &klein).obstruction().cloned() else {
            panic!("expected an isotropy obstruction");
        };
        assert_eq!(left[0].element_orders, vec![1, 2, 4, 4]);
        assert_eq!(right[0].element_orders, vec![1, 2, 2, 2]);
        let two = shared(FiniteGroupoid::discrete(2));
        assert_eq!(
            morita_decide(&two, &pt).obstruction(),
            Some(&MoritaObstruction::OrbitCount { left: 2, right: 1 })
        );
    }

    #[test]
    fn certificates_for_groups_and_unions() {
        let z6 = shared(FiniteGroupoid::cyclic(6));
        let z23 = shared(FiniteGroupoid::abelian(&[2, 3]));
        let cert = morita_decide(&z6, &z23).certificate().cloned().unwrap();
        assert_eq!(cert.len(), 6);
        assert!(check_biprincipal(&cert).holds);

        let a = shared(FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &FiniteGroupoid::cyclic(2)));
        let b = shared(FiniteGroupoid::disjoint_union(&FiniteGroupoid::cyclic(2), &FiniteGroupoid::point()));
        let v = morita_decide(&a, &b);
        assert_eq!(v.certificate().map(Bibundle::len), Some(2 + 2));
        assert!(check_biprincipal(v.certificate().unwrap()).holds);
    }

    #[test]
    fn large_isotropy_is_unknown() {
        let big = shared(FiniteGroupoid::cyclic(25));
        let other = shared(FiniteGroupoid::abelian(&[5, 5]));
        assert!(matches!(morita_decide(&big, &other), MoritaVerdict::Unknown { .. }));
        // different orders are still refuted
        let pt = shared(FiniteGroupoid::point());
        assert!(morita_decide(&big, &pt).obstruction().is_some());
    }
}
