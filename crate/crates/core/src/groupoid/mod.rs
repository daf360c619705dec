//! Finite groupoids, their actions and bibundles.
//!
//! Objects and arrows are indexed by position; names are kept only for
//! input and output. Composition is written `xy` and is defined when
//! `s(x) = t(y)`, with `t(xy) = t(x)` and `s(xy) = s(y)`.

mod action;
mod decide;
mod group;
mod rep;
mod tensor;

use std::sync::Arc;

use crate::error::{Error, Result};

pub use action::{
    equivariant_maps, functor_to_bibundle, is_isomorphic_bibundle, opposite_bibundle, unit_bibundle, validate_action,
    validate_bibundle, ActionSide, Bibundle, BibundleMap, GroupoidAction,
};
pub use decide::{morita_decide, morita_invariants, IsotropyClass, MoritaInvariants, MoritaObstruction, MoritaVerdict};
pub use group::{group_isomorphism, SmallGroup, MAX_GROUP_ORDER};
pub use rep::{action_corpus, action_groupoid, induce_action, rep_report, RepReport};
pub use tensor::{
    check_biprincipal, check_left_principal, check_right_principal, hs_tensor, BiprincipalReport, GroupoidCalculus,
    HsTensor, PrincipalityReport,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    /// `compose[x * n + y] = xy` when `s(x) = t(y)`.
    compose: Vec<Option<usize>>,
    inverse: Vec<usize>,
    unit: Vec<usize>,
}

fn axiom(axiom: &'static str, witness: Vec<usize>) -> Error {
    Error::GroupoidAxiom { axiom, witness }
}

impl FiniteGroupoid {
    /// Validates raw tables. `products` lists every composite as
    /// `(x, y, xy)`.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        products: &[(usize, usize, usize)],
        inverse: Vec<usize>,
        unit: Vec<usize>,
    ) -> Result<Self> {
        let (no, na) = (objects.len(), arrows.len());
        if source.len() != na || target.len() != na || inverse.len() != na || unit.len() != no {
            return Err(Error::Shape("groupoid tables have inconsistent lengths".into()));
        }
        if let Some(x) = (0..na).find(|&x| source[x] >= no || target[x] >= no || inverse[x] >= na) {
            return Err(axiom("index in range", vec![x]));
        }
        if let Some(q) = (0..no).find(|&q| unit[q] >= na) {
            return Err(axiom("index in range", vec![q]));
        }
        let mut compose = vec![None; na * na];
        for &(x, y, z) in products {
            if x >= na || y >= na || z >= na {
                return Err(axiom("index in range", vec![x, y, z]));
            }
            if compose[x * na + y].replace(z).is_some_and(|old| old != z) {
                return Err(axiom("composition is a function", vec![x, y]));
            }
        }
        let g = FiniteGroupoid {
            objects,
            arrows,
            source,
            target,
            compose,
            inverse,
            unit,
        };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let na = self.arrows.len();
        for x in 0..na {
            for y in 0..na {
                let composable = self.source[x] == self.target[y];
                match (composable, self.mul(x, y)) {
                    (true, None) | (false, Some(_)) => return Err(axiom("composition defined exactly on G2", vec![x, y])),
                    (true, Some(z)) => {
                        if self.target[z] != self.target[x] || self.source[z] != self.source[y] {
                            return Err(axiom("t(xy) = t(x) and s(xy) = s(y)", vec![x, y, z]));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for x in 0..na {
            for y in 0..na {
                let Some(xy) = self.mul(x, y) else { continue };
                for z in 0..na {
                    let Some(yz) = self.mul(y, z) else { continue };
                    if self.mul(xy, z) != self.mul(x, yz) {
                        return Err(axiom("associativity", vec![x, y, z]));
                    }
                }
            }
        }
        for (q, &e) in self.unit.iter().enumerate() {
            if self.source[e] != q || self.target[e] != q {
                return Err(axiom("unit lies over its object", vec![q]));
            }
        }
        for x in 0..na {
            let (s, t) = (self.source[x], self.target[x]);
            if self.mul(self.unit[t], x) != Some(x) || self.mul(x, self.unit[s]) != Some(x) {
                return Err(axiom("unit law", vec![x]));
            }
            let i = self.inverse[x];
            if self.mul(i, x) != Some(self.unit[s]) || self.mul(x, i) != Some(self.unit[t]) {
                return Err(axiom("inverse law", vec![x]));
            }
        }
        Ok(())
    }

    /// One object, one arrow.
    pub fn point() -> Self {
        Self::pair(1)
    }

    /// `n` objects and only their identities.
    pub fn discrete(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
        let arrows = (0..n).map(|i| format!("1_{i}")).collect();
        let products: Vec<(usize, usize, usize)> = (0..n).map(|i| (i, i, i)).collect();
        Self::new(objects, arrows, (0..n).collect(), (0..n).collect(), &products, (0..n).collect(), (0..n).collect())
            .expect("discrete groupoid is valid")
    }

    /// The pair groupoid on `n` objects: one arrow `(i, j): j → i` for each
    /// ordered pair, indexed `i * n + j`.
    pub fn pair(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
        let idx = |i: usize, j: usize| i * n + j;
        let mut arrows = Vec::new();
        let (mut source, mut target, mut inverse) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..n {
            for j in 0..n {
                arrows.push(format!("({i},{j})"));
                target.push(i);
                source.push(j);
                inverse.push(idx(j, i));
            }
        }
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    products.push((idx(i, j), idx(j, k), idx(i, k)));
                }
            }
        }
        let unit = (0..n).map(|i| idx(i, i)).collect();
        Self::new(objects, arrows, source, target, &products, inverse, unit).expect("pair groupoid is valid")
    }

    /// A group as a one-object groupoid, from its multiplication table.
    /// Element 0 must be the identity.
    pub fn from_group(names: Vec<String>, table: &[Vec<usize>]) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("group table is not square".into()));
        }
        let mut products = Vec::new();
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                products.push((a, b, c));
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).ok_or(axiom("inverse law", vec![a])))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vec!["*".into()], names, vec![0; n], vec![0; n], &products, inverse, vec![0])
    }

    /// `Z/n_1 × ... × Z/n_k` as a one-object groupoid.
    pub fn abelian(orders: &[usize]) -> Self {
        let total: usize = orders.iter().product();
        let digits = |mut c: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&n| {
                    let d = c % n;
                    c /= n;
                    d
                })
                .collect()
        };
        let code = |d: &[usize]| d.iter().zip(orders).rev().fold(0, |acc, (&x, &n)| acc * n + x);
        let names = (0..total)
            .map(|c| {
                let d = digits(c);
                d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            })
            .collect();
        let table: Vec<Vec<usize>> = (0..total)
            .map(|a| {
                (0..total)
                    .map(|b| {
                        let s: Vec<usize> = digits(a).iter().zip(digits(b)).zip(orders).map(|((x, y), n)| (x + y) % n).collect();
                        code(&s)
                    })
                    .collect()
            })
            .collect();
        Self::from_group(names, &table).expect("abelian group table is valid")
    }

    pub fn cyclic(n: usize) -> Self {
        Self::abelian(&[n])
    }

    /// Disjoint union; objects and arrows of `b` come after those of `a`,
    /// with names prefixed to stay distinct.
    pub fn disjoint_union(a: &Self, b: &Self) -> Self {
        let (no, na) = (a.objects.len(), a.arrows.len());
        let tag = |p: &str, v: &[String]| v.iter().map(|x| format!("{p}{x}")).collect::<Vec<_>>();
        let mut objects = tag("a.", &a.objects);
        objects.extend(tag("b.", &b.objects));
        let mut arrows = tag("a.", &a.arrows);
        arrows.extend(tag("b.", &b.arrows));
        let mut products = a.products();
        products.extend(b.products().into_iter().map(|(x, y, z)| (x + na, y + na, z + na)));
        let shift = |v: &[usize], k: usize| v.iter().map(|&x| x + k).collect::<Vec<_>>();
        let mut source = a.source.clone();
        source.extend(shift(&b.source, no));
        let mut target = a.target.clone();
        target.extend(shift(&b.target, no));
        let mut inverse = a.inverse.clone();
        inverse.extend(shift(&b.inverse, na));
        let mut unit = a.unit.clone();
        unit.extend(shift(&b.unit, na));
        Self::new(objects, arrows, source, target, &products, inverse, unit).expect("disjoint union is valid")
    }

    /// Every defined composite as `(x, y, xy)`, in index order.
    pub fn products(&self) -> Vec<(usize, usize, usize)> {
        let na = self.arrows.len();
        (0..na)
            .flat_map(|x| (0..na).filter_map(move |y| self.compose[x * na + y].map(|z| (x, y, z))))
            .collect()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn s(&self, x: usize) -> usize {
        self.source[x]
    }

    pub fn t(&self, x: usize) -> usize {
        self.target[x]
    }

    pub fn sources(&self) -> &[usize] {
        &self.source
    }

    pub fn targets(&self) -> &[usize] {
        &self.target
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn units(&self) -> &[usize] {
        &self.unit
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn unit_at(&self, q: usize) -> usize {
        self.unit[q]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        self.compose[x * self.arrows.len() + y]
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.unit[self.source[x]] == x
    }

    /// Arrows with source `q`.
    pub fn arrows_from(&self, q: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&x| self.source[x] == q).collect()
    }

    /// Arrows with target `q`.
    pub fn arrows_to(&self, q: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&x| self.target[x] == q).collect()
    }

    /// Connected components, each sorted, ordered by least object.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.objects.len()).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for x in 0..self.arrows.len() {
            let (a, b) = (find(&mut parent, self.source[x]), find(&mut parent, self.target[x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_index = vec![usize::MAX; self.objects.len()];
        for q in 0..self.objects.len() {
            let r = find(&mut parent, q);
            if root_index[r] == usize::MAX {
                root_index[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_index[r]].push(q);
        }
        groups
    }

    /// Arrows `q → q`, as a group.
    pub fn isotropy(&self, q: usize) -> SmallGroup {
        let elems: Vec<usize> = (0..self.arrows.len())
            .filter(|&x| self.source[x] == q && self.target[x] == q)
            .collect();
        SmallGroup::from_groupoid(self, &elems)
    }

    /// Only identities in every `s`-fiber. For finite discrete groupoids
    /// this is all that s-connectedness can mean.
    pub fn s_fibers_connected(&self) -> bool {
        (0..self.arrows.len()).all(|x| self.is_unit(x))
    }

    /// Same groupoid with objects and arrows listed in a new order:
    /// `object_order[k]` is the old index of new object `k`.
    pub fn reordered(&self, object_order: &[usize], arrow_order: &[usize]) -> Result<Self> {
        let inv = |order: &[usize]| {
            let mut v = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                v[old] = new;
            }
            v
        };
        let (oi, ai) = (inv(object_order), inv(arrow_order));
        let products: Vec<(usize, usize, usize)> =
            self.products().into_iter().map(|(x, y, z)| (ai[x], ai[y], ai[z])).collect();
        Self::new(
            object_order.iter().map(|&o| self.objects[o].clone()).collect(),
            arrow_order.iter().map(|&a| self.arrows[a].clone()).collect(),
            arrow_order.iter().map(|&a| oi[self.source[a]]).collect(),
            arrow_order.iter().map(|&a| oi[self.target[a]]).collect(),
            &products,
            arrow_order.iter().map(|&a| ai[self.inverse[a]]).collect(),
            object_order.iter().map(|&o| ai[self.unit[o]]).collect(),
        )
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

impl std::fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("objects", &self.objects)
            .field("arrows", &self.arrows)
            .finish_non_exhaustive()
    }
}

/// Alias of [`FiniteGroupoid::new`].
pub fn validate_groupoid(
    objects: Vec<String>,
    arrows: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    products: &[(usize, usize, usize)],
    inverse: Vec<usize>,
    unit: Vec<usize>,
) -> Result<FiniteGroupoid> {
    FiniteGroupoid::new(objects, arrows, source, target, products, inverse, unit)
}

/// A functor `Ψ: G → H` on objects and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    source: Arc<FiniteGroupoid>,
    target: Arc<FiniteGroupoid>,
    on_objects: Vec<usize>,
    on_arrows: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        on_objects: Vec<usize>,
        on_arrows: Vec<usize>,
    ) -> Result<Self> {
        let bad = |law, witness| Err(Error::NotAFunctor { law, witness });
        if on_objects.len() != source.object_count() || on_arrows.len() != source.arrow_count() {
            return Err(Error::Shape("functor tables have the wrong length".into()));
        }
        if let Some(q) = on_objects.iter().position(|&o| o >= target.object_count()) {
            return bad("object in range", vec![q]);
        }
        if let Some(x) = on_arrows.iter().position(|&a| a >= target.arrow_count()) {
            return bad("arrow in range", vec![x]);
        }
        for x in 0..source.arrow_count() {
            let y = on_arrows[x];
            if target.s(y) != on_objects[source.s(x)] || target.t(y) != on_objects[source.t(x)] {
                return bad("preserves source and target", vec![x]);
            }
        }
        for q in 0..source.object_count() {
            if on_arrows[source.unit_at(q)] != target.unit_at(on_objects[q]) {
                return bad("preserves units", vec![q]);
            }
        }
        for (x, y, z) in source.products() {
            if target.mul(on_arrows[x], on_arrows[y]) != Some(on_arrows[z]) {
                return bad("preserves composition", vec![x, y]);
            }
        }
        Ok(GroupoidFunctor {
            source,
            target,
            on_objects,
            on_arrows,
        })
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        GroupoidFunctor {
            source: Arc::clone(g),
            target: Arc::clone(g),
            on_objects: (0..g.object_count()).collect(),
            on_arrows: (0..g.arrow_count()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        &self.target
    }

    pub fn on_objects(&self) -> &[usize] {
        &self.on_objects
    }

    pub fn on_arrows(&self) -> &[usize] {
        &self.on_arrows
    }
}
