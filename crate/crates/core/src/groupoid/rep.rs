//! Representations of finite groupoids and induction along bibundles.

use std::sync::Arc;

use serde::Serialize;

use super::action::{equivariant_maps, is_isomorphic_bibundle, opposite_bibundle, unit_bibundle, ActionSide};
use super::decide::morita_decide;
use super::tensor::{check_biprincipal, hs_tensor};
use super::{Bibundle, FiniteGroupoid, GroupoidAction};
use crate::error::{Error, Result};

/// The left `G`-action on `(M ×_{H_0} A)/H` induced from a left `H`-action.
pub fn induce_action(m: &Bibundle, a: &GroupoidAction) -> Result<GroupoidAction> {
    if a.side() != ActionSide::Left || a.groupoid() != m.right_groupoid() {
        return Err(Error::GroupoidMismatch);
    }
    let t = hs_tensor(m, &Bibundle::from_left_action(a)?)?;
    Ok(t.bibundle.left().clone())
}

/// Bitmasks of all subgroups of the isotropy at `q`, as local indices.
fn subgroups(g: &FiniteGroupoid, q: usize) -> (Vec<usize>, Vec<u32>) {
    let grp = g.isotropy(q);
    let n = grp.order();
    let close = |mask: u32| -> u32 {
        let mut m = mask | 1;
        loop {
            let mut next = m;
            for a in (0..n).filter(|&a| m >> a & 1 == 1) {
                for b in (0..n).filter(|&b| m >> b & 1 == 1) {
                    next |= 1 << grp.mul(a, b);
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    };
    let mut found = vec![1u32];
    let mut head = 0;
    while head < found.len() {
        let s = found[head];
        head += 1;
        for x in 0..n {
            let t = close(s | 1 << x);
            if !found.contains(&t) {
                found.push(t);
            }
        }
    }
    (grp.elements.clone(), found)
}

/// Transitive action on the cosets `aK` of a subgroup `K` of the isotropy
/// at `q`, for arrows `a` with `s(a) = q`.
fn coset_action(g: &Arc<FiniteGroupoid>, q: usize, elements: &[usize], subgroup: u32) -> GroupoidAction {
    let k: Vec<usize> = (0..elements.len()).filter(|&i| subgroup >> i & 1 == 1).map(|i| elements[i]).collect();
    let mut coset_of = vec![usize::MAX; g.arrow_count()];
    let mut reps = Vec::new();
    for a in g.arrows_from(q) {
        if coset_of[a] != usize::MAX {
            continue;
        }
        for &x in &k {
            coset_of[g.mul(a, x).expect("s(a) = q")] = reps.len();
        }
        reps.push(a);
    }
    let carrier = reps.iter().map(|&a| format!("{}K", g.arrows()[a])).collect();
    let base = reps.iter().map(|&a| g.t(a)).collect();
    let mut triples = Vec::new();
    for (c, &a) in reps.iter().enumerate() {
        for x in g.arrows_from(g.t(a)) {
            triples.push((x, c, coset_of[g.mul(x, a).expect("s(x) = t(a)")]));
        }
    }
    GroupoidAction::new(Arc::clone(g), ActionSide::Left, carrier, base, &triples).expect("cosets form an action")
}

fn disjoint_union(g: &Arc<FiniteGroupoid>, parts: &[&GroupoidAction]) -> GroupoidAction {
    let mut carrier = Vec::new();
    let mut base = Vec::new();
    let mut triples = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let offset = carrier.len();
        carrier.extend(p.carrier().iter().map(|c| format!("{i}.{c}")));
        base.extend_from_slice(p.base());
        triples.extend(p.triples().into_iter().map(|(x, m, r)| (x, m + offset, r + offset)));
    }
    GroupoidAction::new(Arc::clone(g), ActionSide::Left, carrier, base, &triples).expect("disjoint union of actions")
}

fn isomorphic_actions(a: &GroupoidAction, b: &GroupoidAction) -> bool {
    let (a, b) = (
        Bibundle::from_left_action(a).expect("left action"),
        Bibundle::from_left_action(b).expect("left action"),
    );
    is_isomorphic_bibundle(&a, &b).expect("same groupoids").is_found()
}

/// One left `G`-action from each isomorphism class with at most `max_size`
/// points, ordered by size. Every action is a disjoint union of coset
/// actions, uniquely up to order.
pub fn action_corpus(g: &Arc<FiniteGroupoid>, max_size: usize) -> Vec<GroupoidAction> {
    let mut transitive: Vec<GroupoidAction> = Vec::new();
    for orbit in g.orbits() {
        let q = orbit[0];
        let (elements, subs) = subgroups(g, q);
        for s in subs {
            let index = elements.len() / s.count_ones() as usize;
            if orbit.len() * index > max_size {
                continue;
            }
            let a = coset_action(g, q, &elements, s);
            if !transitive.iter().any(|b| isomorphic_actions(&a, b)) {
                transitive.push(a);
            }
        }
    }
    transitive.sort_by_key(GroupoidAction::len);
    // multisets of transitive types, as non-decreasing index sequences
    let mut out = Vec::new();
    fn go<'a>(
        start: usize,
        room: usize,
        chosen: &mut Vec<&'a GroupoidAction>,
        types: &'a [GroupoidAction],
        g: &Arc<FiniteGroupoid>,
        out: &mut Vec<GroupoidAction>,
    ) {
        out.push(disjoint_union(g, chosen));
        for i in start..types.len() {
            if types[i].len() <= room {
                chosen.push(&types[i]);
                go(i, room - types[i].len(), chosen, types, g, out);
                chosen.pop();
            }
        }
    }
    go(0, max_size, &mut Vec::new(), &transitive, g, &mut out);
    out.sort_by_key(GroupoidAction::len);
    out
}

/// `G ⋉ M`: objects the carrier, an arrow `(x, m): m → xm` for each
/// defined action.
pub fn action_groupoid(a: &GroupoidAction) -> FiniteGroupoid {
    let g = a.groupoid();
    let triples = a.triples();
    let index = |x: usize, m: usize| triples.binary_search_by(|&(y, u, _)| (y, u).cmp(&(x, m))).expect("action is defined");
    let arrows = triples.iter().map(|&(x, m, _)| format!("({},{})", g.arrows()[x], a.carrier()[m])).collect();
    let mut products = Vec::new();
    for (i, &(x, m, xm)) in triples.iter().enumerate() {
        for y in g.arrows_from(g.t(x)) {
            let yx = g.mul(y, x).expect("s(y) = t(x)");
            products.push((index(y, xm), i, index(yx, m)));
        }
    }
    FiniteGroupoid::new(
        a.carrier().to_vec(),
        arrows,
        triples.iter().map(|&(_, m, _)| m).collect(),
        triples.iter().map(|&(_, _, r)| r).collect(),
        &products,
        triples.iter().map(|&(x, _, r)| index(g.inv(x), r)).collect(),
        (0..a.len()).map(|m| index(g.unit_at(a.base()[m]), m)).collect(),
    )
    .expect("action groupoid is a groupoid")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RepReport {
    /// Sizes of the corpus of right-hand actions.
    pub action_sizes: Vec<usize>,
    /// Sizes of their induced actions.
    pub induced_sizes: Vec<usize>,
    pub map_pairs_checked: usize,
    pub map_counts_preserved: bool,
    pub injective_on_classes: bool,
    pub round_trips_ok: bool,
    pub unit_induction_ok: bool,
    pub action_groupoids_equivalent: bool,
    pub failures: Vec<String>,
}

impl RepReport {
    pub fn passes(&self) -> bool {
        self.map_counts_preserved
            && self.injective_on_classes
            && self.round_trips_ok
            && self.unit_induction_ok
            && self.action_groupoids_equivalent
    }
}

/// Induces every `H`-action with at most `cap` points along a biprincipal
/// `G → M ← H` and checks that induction behaves like an equivalence.
pub fn rep_report(m: &Bibundle, cap: usize) -> Result<RepReport> {
    if !check_biprincipal(m).holds {
        return Err(Error::NotCertified("bibundle is not biprincipal".into()));
    }
    let h = m.right_groupoid();
    let back = opposite_bibundle(m);
    let unit = unit_bibundle(h);
    let corpus = action_corpus(h, cap);
    let induced = corpus.iter().map(|a| induce_action(m, a)).collect::<Result<Vec<_>>>()?;
    let as_bibundle = |a: &GroupoidAction| Bibundle::from_left_action(a);
    let lhs = corpus.iter().map(as_bibundle).collect::<Result<Vec<_>>>()?;
    let rhs = induced.iter().map(as_bibundle).collect::<Result<Vec<_>>>()?;
    let mut report = RepReport {
        action_sizes: corpus.iter().map(GroupoidAction::len).collect(),
        induced_sizes: induced.iter().map(GroupoidAction::len).collect(),
        map_counts_preserved: true,
        injective_on_classes: true,
        round_trips_ok: true,
        unit_induction_ok: true,
        action_groupoids_equivalent: true,
        ..RepReport::default()
    };
    for i in 0..corpus.len() {
        for j in 0..corpus.len() {
            report.map_pairs_checked += 1;
            let before = equivariant_maps(&lhs[i], &lhs[j], false, usize::MAX)?.len();
            let after = equivariant_maps(&rhs[i], &rhs[j], false, usize::MAX)?.len();
            if before != after {
                report.map_counts_preserved = false;
                report.failures.push(format!("actions {i}, {j}: {before} maps before induction, {after} after"));
            }
            if i < j && is_isomorphic_bibundle(&rhs[i], &rhs[j])?.is_found() {
                report.injective_on_classes = false;
                report.failures.push(format!("actions {i}, {j} induce isomorphic actions"));
            }
        }
        let round = as_bibundle(&induce_action(&back, &induced[i])?)?;
        if !is_isomorphic_bibundle(&round, &lhs[i])?.is_found() {
            report.round_trips_ok = false;
            report.failures.push(format!("action {i} does not survive the round trip"));
        }
        let along_unit = as_bibundle(&induce_action(&unit, &corpus[i])?)?;
        if !is_isomorphic_bibundle(&along_unit, &lhs[i])?.is_found() {
            report.unit_induction_ok = false;
            report.failures.push(format!("action {i} changes when induced along the unit"));
        }
        let (a, b) = (Arc::new(action_groupoid(&corpus[i])), Arc::new(action_groupoid(&induced[i])));
        if !morita_decide(&a, &b).is_equivalent() {
            report.action_groupoids_equivalent = false;
            report.failures.push(format!("action {i}: action groupoids are not equivalent"));
        }
    }
    Ok(report)
}
