use std::sync::Arc;

use super::{FiniteGroupoid, GroupoidFunctor};
use crate::algebra::IsoOutcome;
use crate::error::{Error, Result};

fn axiom(axiom: &'static str, witness: Vec<usize>) -> Error {
    Error::GroupoidAxiom { axiom, witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActionSide {
    Left,
    Right,
}

/// An action of a finite groupoid on a finite set over a base map.
///
/// Left: `x·m` is defined when `s(x) = τ(m)`, and `τ(x·m) = t(x)`.
/// Right: `m·x` is defined when `σ(m) = t(x)`, and `σ(m·x) = s(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidAction {
    groupoid: Arc<FiniteGroupoid>,
    side: ActionSide,
    carrier: Vec<String>,
    base: Vec<usize>,
    /// `table[x * |M| + m]`
    table: Vec<Option<usize>>,
}

impl GroupoidAction {
    /// `triples` lists `(arrow, element, result)` for every defined action.
    pub fn new(
        groupoid: Arc<FiniteGroupoid>,
        side: ActionSide,
        carrier: Vec<String>,
        base: Vec<usize>,
        triples: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = carrier.len();
        if base.len() != n {
            return Err(Error::Shape("base map length differs from carrier size".into()));
        }
        if let Some(m) = base.iter().position(|&q| q >= groupoid.object_count()) {
            return Err(axiom("base map in range", vec![m]));
        }
        let mut table = vec![None; groupoid.arrow_count() * n];
        for &(x, m, r) in triples {
            if x >= groupoid.arrow_count() || m >= n || r >= n {
                return Err(axiom("action index in range", vec![x, m, r]));
            }
            if table[x * n + m].replace(r).is_some_and(|old| old != r) {
                return Err(axiom("action is a function", vec![x, m]));
            }
        }
        let a = GroupoidAction {
            groupoid,
            side,
            carrier,
            base,
            table,
        };
        a.check_axioms()?;
        Ok(a)
    }

    fn check_axioms(&self) -> Result<()> {
        let g = &self.groupoid;
        let n = self.carrier.len();
        let left = self.side == ActionSide::Left;
        for x in 0..g.arrow_count() {
            for m in 0..n {
                let defined = if left { g.s(x) == self.base[m] } else { g.t(x) == self.base[m] };
                match (defined, self.act(x, m)) {
                    (true, None) | (false, Some(_)) => {
                        return Err(axiom("action defined exactly on the fibred product", vec![x, m]))
                    }
                    (true, Some(r)) => {
                        let expected = if left { g.t(x) } else { g.s(x) };
                        if self.base[r] != expected {
                            return Err(axiom("base map of the result", vec![x, m, r]));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for m in 0..n {
            if self.act(g.unit_at(self.base[m]), m) != Some(m) {
                return Err(axiom("units act trivially", vec![m]));
            }
        }
        for (x, y, xy) in g.products() {
            for m in 0..n {
                // left: x(ym) = (xy)m;  right: (mx)y = m(xy)
                let (lhs, rhs) = if left {
                    (self.act(y, m).and_then(|ym| self.act(x, ym)), self.act(xy, m))
                } else {
                    (self.act(x, m).and_then(|mx| self.act(y, mx)), self.act(xy, m))
                };
                if lhs.is_some() && lhs != rhs {
                    return Err(axiom("action is associative", vec![x, y, m]));
                }
            }
        }
        Ok(())
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn side(&self) -> ActionSide {
        self.side
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// `x·m` for a left action, `m·x` for a right one.
    #[inline]
    pub fn act(&self, x: usize, m: usize) -> Option<usize> {
        self.table[x * self.carrier.len() + m]
    }

    /// Every defined action as `(arrow, element, result)`.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.carrier.len();
        (0..self.groupoid.arrow_count())
            .flat_map(|x| (0..n).filter_map(move |m| self.act(x, m).map(|r| (x, m, r))))
            .collect()
    }

    /// Renames carrier elements: `order[k]` is the old index of new element
    /// `k`.
    pub(crate) fn relabel(&self, order: &[usize]) -> Result<Self> {
        let mut new_index = vec![0; order.len()];
        for (k, &old) in order.iter().enumerate() {
            new_index[old] = k;
        }
        let triples: Vec<(usize, usize, usize)> =
            self.triples().into_iter().map(|(x, m, r)| (x, new_index[m], new_index[r])).collect();
        GroupoidAction::new(
            Arc::clone(&self.groupoid),
            self.side,
            order.iter().map(|&o| self.carrier[o].clone()).collect(),
            order.iter().map(|&o| self.base[o]).collect(),
            &triples,
        )
    }

    /// The trivial right action of the point groupoid on `carrier`.
    pub(crate) fn trivial_right(carrier: Vec<String>) -> Self {
        let n = carrier.len();
        let point = Arc::new(FiniteGroupoid::point());
        GroupoidAction {
            groupoid: point,
            side: ActionSide::Right,
            carrier,
            base: vec![0; n],
            table: (0..n).map(Some).collect(),
        }
    }
}

/// Alias of [`GroupoidAction::new`].
pub fn validate_action(
    groupoid: Arc<FiniteGroupoid>,
    side: ActionSide,
    carrier: Vec<String>,
    base: Vec<usize>,
    triples: &[(usize, usize, usize)],
) -> Result<GroupoidAction> {
    GroupoidAction::new(groupoid, side, carrier, base, triples)
}

/// `G → M ← H`: commuting left `G` and right `H` actions on one carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bibundle {
    left: GroupoidAction,
    right: GroupoidAction,
}

impl Bibundle {
    pub fn new(left: GroupoidAction, right: GroupoidAction) -> Result<Self> {
        if left.side != ActionSide::Left || right.side != ActionSide::Right {
            return Err(Error::Shape("bibundle needs a left and a right action".into()));
        }
        if left.carrier != right.carrier {
            return Err(Error::Shape("left and right actions live on different carriers".into()));
        }
        let b = Bibundle { left, right };
        b.check_commutation()?;
        Ok(b)
    }

    fn check_commutation(&self) -> Result<()> {
        let (g, h) = (self.left_groupoid(), self.right_groupoid());
        for m in 0..self.len() {
            for y in 0..h.arrow_count() {
                if let Some(mh) = self.act_right(m, y) {
                    if self.tau(mh) != self.tau(m) {
                        return Err(axiom("τ(mh) = τ(m)", vec![m, y]));
                    }
                }
            }
            for x in 0..g.arrow_count() {
                if let Some(xm) = self.act_left(x, m) {
                    if self.sigma(xm) != self.sigma(m) {
                        return Err(axiom("σ(xm) = σ(m)", vec![x, m]));
                    }
                    for y in 0..h.arrow_count() {
                        let lhs = self.act_right(xm, y);
                        let rhs = self.act_right(m, y).and_then(|mh| self.act_left(x, mh));
                        if lhs != rhs {
                            return Err(axiom("(xm)h = x(mh)", vec![x, m, y]));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A left action as a bibundle to the point groupoid.
    pub fn from_left_action(a: &GroupoidAction) -> Result<Self> {
        if a.side != ActionSide::Left {
            return Err(Error::Shape("expected a left action".into()));
        }
        Bibundle::new(a.clone(), GroupoidAction::trivial_right(a.carrier.clone()))
    }

    pub fn left(&self) -> &GroupoidAction {
        &self.left
    }

    pub fn right(&self) -> &GroupoidAction {
        &self.right
    }

    pub fn left_groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.left.groupoid
    }

    pub fn right_groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.right.groupoid
    }

    pub fn carrier(&self) -> &[String] {
        &self.left.carrier
    }

    pub fn len(&self) -> usize {
        self.left.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.carrier.is_empty()
    }

    pub fn tau(&self, m: usize) -> usize {
        self.left.base[m]
    }

    pub fn sigma(&self, m: usize) -> usize {
        self.right.base[m]
    }

    pub fn act_left(&self, x: usize, m: usize) -> Option<usize> {
        self.left.act(x, m)
    }

    pub fn act_right(&self, m: usize, h: usize) -> Option<usize> {
        self.right.act(h, m)
    }

    /// Same bibundle with the carrier listed in a new order.
    pub fn relabel(&self, order: &[usize]) -> Result<Self> {
        Bibundle::new(self.left.relabel(order)?, self.right.relabel(order)?)
    }
}

/// Alias of [`Bibundle::new`].
pub fn validate_bibundle(left: GroupoidAction, right: GroupoidAction) -> Result<Bibundle> {
    Bibundle::new(left, right)
}

/// An equivariant map of bibundles over the same groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BibundleMap {
    pub source: Bibundle,
    pub target: Bibundle,
    pub map: Vec<usize>,
}

impl BibundleMap {
    pub fn new(source: Bibundle, target: Bibundle, map: Vec<usize>) -> Result<Self> {
        if source.left_groupoid() != target.left_groupoid() || source.right_groupoid() != target.right_groupoid() {
            return Err(Error::GroupoidMismatch);
        }
        if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
            return Err(Error::Shape("map does not fit the carriers".into()));
        }
        for m in 0..source.len() {
            let v = map[m];
            if target.tau(v) != source.tau(m) || target.sigma(v) != source.sigma(m) {
                return Err(axiom("map preserves base maps", vec![m]));
            }
            for x in 0..source.left_groupoid().arrow_count() {
                if let Some(xm) = source.act_left(x, m) {
                    if target.act_left(x, v) != Some(map[xm]) {
                        return Err(axiom("map is left equivariant", vec![x, m]));
                    }
                }
            }
            for h in 0..source.right_groupoid().arrow_count() {
                if let Some(mh) = source.act_right(m, h) {
                    if target.act_right(v, h) != Some(map[mh]) {
                        return Err(axiom("map is right equivariant", vec![m, h]));
                    }
                }
            }
        }
        Ok(BibundleMap { source, target, map })
    }

    pub fn identity(m: &Bibundle) -> Self {
        BibundleMap {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.len()).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &BibundleMap) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::NotComposable);
        }
        Ok(BibundleMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&v| next.map[v]).collect(),
        })
    }

    pub fn is_iso(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.map.len() == self.target.len() && self.map.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (m, &v) in self.map.iter().enumerate() {
            inv[v] = m;
        }
        Some(BibundleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }
}

/// Components of the carrier under both actions, each listed from its
/// least element in discovery order.
fn two_sided_orbits(m: &Bibundle) -> Vec<Vec<usize>> {
    let mut seen = vec![false; m.len()];
    let mut out = Vec::new();
    for r in 0..m.len() {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut orbit = vec![r];
        let mut head = 0;
        while head < orbit.len() {
            let u = orbit[head];
            head += 1;
            let lefts = (0..m.left_groupoid().arrow_count()).filter_map(|x| m.act_left(x, u));
            let rights = (0..m.right_groupoid().arrow_count()).filter_map(|h| m.act_right(u, h));
            for v in lefts.chain(rights).collect::<Vec<_>>() {
                if !seen[v] {
                    seen[v] = true;
                    orbit.push(v);
                }
            }
        }
        out.push(orbit);
    }
    out
}

/// Sets `phi` on the orbit of `orbit[0]` from `phi[orbit[0]] = c`. Returns
/// the elements assigned, or `None` on a clash.
fn propagate(m: &Bibundle, n: &Bibundle, orbit: &[usize], c: usize, phi: &mut [usize], used: &mut [bool], injective: bool) -> Option<Vec<usize>> {
    let mut assigned = Vec::new();
    let mut ok = true;
    let set = |u: usize, v: usize, phi: &mut [usize], used: &mut [bool], assigned: &mut Vec<usize>| -> bool {
        if phi[u] != usize::MAX {
            return phi[u] == v;
        }
        if injective && used[v] {
            return false;
        }
        phi[u] = v;
        used[v] = true;
        assigned.push(u);
        true
    };
    let r = orbit[0];
    if n.tau(c) != m.tau(r) || n.sigma(c) != m.sigma(r) || !set(r, c, phi, used, &mut assigned) {
        ok = false;
    }
    let mut head = 0;
    while ok && head < assigned.len() {
        let u = assigned[head];
        head += 1;
        for x in 0..m.left_groupoid().arrow_count() {
            if let Some(xu) = m.act_left(x, u) {
                let Some(xv) = n.act_left(x, phi[u]) else {
                    ok = false;
                    break;
                };
                if !set(xu, xv, phi, used, &mut assigned) {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            break;
        }
        for h in 0..m.right_groupoid().arrow_count() {
            if let Some(uh) = m.act_right(u, h) {
                let Some(vh) = n.act_right(phi[u], h) else {
                    ok = false;
                    break;
                };
                if !set(uh, vh, phi, used, &mut assigned) {
                    ok = false;
                    break;
                }
            }
        }
    }
    if ok {
        Some(assigned)
    } else {
        for &u in &assigned {
            used[phi[u]] = false;
            phi[u] = usize::MAX;
        }
        None
    }
}

/// Equivariant maps `m → n`, in lexicographic order of the images of orbit
/// representatives, at most `limit` of them.
pub fn equivariant_maps(m: &Bibundle, n: &Bibundle, injective: bool, limit: usize) -> Result<Vec<Vec<usize>>> {
    if m.left_groupoid() != n.left_groupoid() || m.right_groupoid() != n.right_groupoid() {
        return Err(Error::GroupoidMismatch);
    }
    let orbits = two_sided_orbits(m);
    let mut phi = vec![usize::MAX; m.len()];
    let mut used = vec![false; n.len()];
    let mut out = Vec::new();
    fn go(
        k: usize,
        orbits: &[Vec<usize>],
        m: &Bibundle,
        n: &Bibundle,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        injective: bool,
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == orbits.len() {
            out.push(phi.clone());
            return;
        }
        for c in 0..n.len() {
            if let Some(assigned) = propagate(m, n, &orbits[k], c, phi, used, injective) {
                go(k + 1, orbits, m, n, phi, used, injective, limit, out);
                for &u in &assigned {
                    used[phi[u]] = false;
                    phi[u] = usize::MAX;
                }
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
    go(0, &orbits, m, n, &mut phi, &mut used, injective, limit, &mut out);
    Ok(out)
}

/// Exhaustive search for an equivariant bijection.
pub fn is_isomorphic_bibundle(m: &Bibundle, n: &Bibundle) -> Result<IsoOutcome<BibundleMap>> {
    if m.left_groupoid() != n.left_groupoid() || m.right_groupoid() != n.right_groupoid() {
        return Err(Error::GroupoidMismatch);
    }
    if m.len() != n.len() {
        return Ok(IsoOutcome::Absent { proven: true });
    }
    Ok(match equivariant_maps(m, n, true, 1)?.pop() {
        Some(map) => IsoOutcome::Found(BibundleMap {
            source: m.clone(),
            target: n.clone(),
            map,
        }),
        None => IsoOutcome::Absent { proven: true },
    })
}

/// `G → G ← G` with carrier `G_1`, `τ = t`, `σ = s`.
pub fn unit_bibundle(g: &Arc<FiniteGroupoid>) -> Bibundle {
    let products = g.products();
    let left = GroupoidAction::new(
        Arc::clone(g),
        ActionSide::Left,
        g.arrows().to_vec(),
        g.targets().to_vec(),
        &products,
    )
    .expect("left multiplication is an action");
    let right_triples: Vec<(usize, usize, usize)> = products.iter().map(|&(a, h, ah)| (h, a, ah)).collect();
    let right = GroupoidAction::new(
        Arc::clone(g),
        ActionSide::Right,
        g.arrows().to_vec(),
        g.sources().to_vec(),
        &right_triples,
    )
    .expect("right multiplication is an action");
    Bibundle::new(left, right).expect("multiplication is associative")
}

/// The bibundle `G_0 ×_{H_0} H_1` of a functor `Ψ: G → H`.
pub fn functor_to_bibundle(psi: &GroupoidFunctor) -> Result<Bibundle> {
    let (g, h) = (psi.source(), psi.target());
    let mut carrier = Vec::new();
    let mut pairs = Vec::new();
    for q in 0..g.object_count() {
        for y in 0..h.arrow_count() {
            if psi.on_objects()[q] == h.t(y) {
                carrier.push(format!("({},{})", g.objects()[q], h.arrows()[y]));
                pairs.push((q, y));
            }
        }
    }
    let index = |q: usize, y: usize| pairs.iter().position(|&p| p == (q, y));
    let mut left = Vec::new();
    for x in 0..g.arrow_count() {
        for (m, &(q, y)) in pairs.iter().enumerate() {
            if g.s(x) == q {
                let z = h.mul(psi.on_arrows()[x], y).expect("functor preserves targets");
                left.push((x, m, index(g.t(x), z).expect("result lies in the carrier")));
            }
        }
    }
    let mut right = Vec::new();
    for k in 0..h.arrow_count() {
        for (m, &(q, y)) in pairs.iter().enumerate() {
            if let Some(z) = h.mul(y, k) {
                right.push((k, m, index(q, z).expect("result lies in the carrier")));
            }
        }
    }
    let tau = pairs.iter().map(|&(q, _)| q).collect();
    let sigma = pairs.iter().map(|&(_, y)| h.s(y)).collect();
    Bibundle::new(
        GroupoidAction::new(Arc::clone(g), ActionSide::Left, carrier.clone(), tau, &left)?,
        GroupoidAction::new(Arc::clone(h), ActionSide::Right, carrier, sigma, &right)?,
    )
}

/// `H → M̄ ← G`: same carrier, `h·m = m·h⁻¹` and `m·g = g⁻¹·m`.
pub fn opposite_bibundle(m: &Bibundle) -> Bibundle {
    let (g, h) = (m.left_groupoid(), m.right_groupoid());
    let left: Vec<(usize, usize, usize)> = (0..h.arrow_count())
        .flat_map(|y| (0..m.len()).filter_map(move |u| m.act_right(u, h.inv(y)).map(|r| (y, u, r))))
        .collect();
    let right: Vec<(usize, usize, usize)> = (0..g.arrow_count())
        .flat_map(|x| (0..m.len()).filter_map(move |u| m.act_left(g.inv(x), u).map(|r| (x, u, r))))
        .collect();
    Bibundle::new(
        GroupoidAction::new(Arc::clone(h), ActionSide::Left, m.carrier().to_vec(), m.right.base.clone(), &left)
            .expect("inverted right action is a left action"),
        GroupoidAction::new(Arc::clone(g), ActionSide::Right, m.carrier().to_vec(), m.left.base.clone(), &right)
            .expect("inverted left action is a right action"),
    )
    .expect("actions still commute")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shared(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    /// `{0, 1}` over `(P_2, point)`: `τ = id`, pair arrows move points.
    pub(crate) fn two_points() -> Bibundle {
        let p2 = shared(FiniteGroupoid::pair(2));
        let pt = shared(FiniteGroupoid::point());
        // arrow (i, j) has index 2i + j and sends j to i
        let left: Vec<(usize, usize, usize)> = (0..2).flat_map(|i| (0..2).map(move |j| (2 * i + j, j, i))).collect();
        Bibundle::new(
            GroupoidAction::new(p2, ActionSide::Left, vec!["a".into(), "b".into()], vec![0, 1], &left).unwrap(),
            GroupoidAction::new(pt, ActionSide::Right, vec!["a".into(), "b".into()], vec![0, 0], &[(0, 0, 0), (0, 1, 1)])
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn unit_bibundles() {
        let pt = shared(FiniteGroupoid::point());
        assert_eq!(unit_bibundle(&pt).len(), 1);
        let p2 = shared(FiniteGroupoid::pair(2));
        assert_eq!(unit_bibundle(&p2).len(), 4);
        let z2 = shared(FiniteGroupoid::cyclic(2));
        assert_eq!(unit_bibundle(&z2).len(), 2);
    }

    #[test]
    fn bad_action_is_reported() {
        let p2 = shared(FiniteGroupoid::pair(2));
        // (1,0) applied to the point over 0 lands over 0 instead of 1
        let left = vec![(0, 0, 0), (3, 1, 1), (2, 0, 0), (1, 1, 0)];
        let err = GroupoidAction::new(p2, ActionSide::Left, vec!["a".into(), "b".into()], vec![0, 1], &left).unwrap_err();
        assert_eq!(
            err,
            Error::GroupoidAxiom {
                axiom: "base map of the result",
                witness: vec![2, 0, 0]
            }
        );
    }

    #[test]
    fn functor_bibundles() {
        let z2 = shared(FiniteGroupoid::cyclic(2));
        let pt = shared(FiniteGroupoid::point());
        let id = functor_to_bibundle(&GroupoidFunctor::identity(&z2)).unwrap();
        assert!(is_isomorphic_bibundle(&id, &unit_bibundle(&z2)).unwrap().is_found());
        let c = GroupoidFunctor::new(Arc::clone(&z2), Arc::clone(&pt), vec![0], vec![0, 0]).unwrap();
        assert_eq!(functor_to_bibundle(&c).unwrap().len(), 1);
        let p2 = shared(FiniteGroupoid::pair(2));
        let incl = GroupoidFunctor::new(pt, p2, vec![0], vec![0]).unwrap();
        assert_eq!(functor_to_bibundle(&incl).unwrap().len(), 2);
    }

    #[test]
    fn opposites() {
        let m = two_points();
        let op = opposite_bibundle(&m);
        assert_eq!(opposite_bibundle(&op), m);
        assert_eq!(op.left_groupoid().arrow_count(), 1);
        let z2 = shared(FiniteGroupoid::cyclic(2));
        let u = unit_bibundle(&z2);
        assert!(is_isomorphic_bibundle(&opposite_bibundle(&u), &u).unwrap().is_found());
    }

    #[test]
    fn equivariant_map_counts() {
        let z2 = shared(FiniteGroupoid::cyclic(2));
        let u = unit_bibundle(&z2);
        // equivariant self-maps of Z/2 as a Z/2-Z/2 bimodule: multiplication by a central element
        assert_eq!(equivariant_maps(&u, &u, false, usize::MAX).unwrap().len(), 2);
        let m = two_points();
        assert_eq!(equivariant_maps(&m, &m, false, usize::MAX).unwrap(), vec![vec![0, 1]]);
        let relabelled = m.relabel(&[1, 0]).unwrap();
        let iso = is_isomorphic_bibundle(&m, &relabelled).unwrap().found().unwrap();
        BibundleMap::new(iso.source.clone(), iso.target.clone(), iso.map.clone()).unwrap();
        assert_eq!(iso.map, vec![1, 0]);
    }
}
