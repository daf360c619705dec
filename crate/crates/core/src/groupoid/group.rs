//! Small finite groups and brute-force isomorphism testing.

use super::FiniteGroupoid;

/// Isomorphism testing is only attempted up to this order.
pub const MAX_GROUP_ORDER: usize = 24;

/// A finite group on local indices `0..order`, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGroup {
    /// Arrow index of each element in the groupoid it came from.
    pub elements: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl SmallGroup {
    /// The isotropy group on `elems` (all arrows `q → q`); the unit is moved
    /// to position 0.
    pub(crate) fn from_groupoid(g: &FiniteGroupoid, elems: &[usize]) -> Self {
        let mut elements = elems.to_vec();
        if let Some(&first) = elements.first() {
            let unit = g.unit_at(g.s(first));
            elements.retain(|&x| x != unit);
            elements.insert(0, unit);
        }
        let pos = |x: usize| elements.iter().position(|&e| e == x).expect("isotropy is closed");
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(g.mul(a, b).expect("isotropy arrows compose"))).collect())
            .collect();
        SmallGroup { elements, table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders, an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &g in gens {
                let v = self.table[u][g];
                if !inside[v] {
                    inside[v] = true;
                    stack.push(v);
                }
            }
        }
        inside
    }

    /// Greedy generating set: repeatedly add the least element outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        while let Some(x) = inside.iter().position(|&b| !b) {
            gens.push(x);
            inside = self.closure(&gens);
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Extends generator images to a map on the whole group, checking every
/// relation `φ(u g) = φ(u) φ(g)` along the way.
fn extend(a: &SmallGroup, b: &SmallGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut phi = vec![usize::MAX; a.order()];
    phi[0] = 0;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let v = a.mul(u, g);
            let w = b.mul(phi[u], img);
            if phi[v] == usize::MAX {
                phi[v] = w;
                queue.push(v);
            } else if phi[v] != w {
                return None;
            }
        }
    }
    let mut hit = vec![false; b.order()];
    for &x in &phi {
        if x == usize::MAX || std::mem::replace(&mut hit[x], true) {
            return None;
        }
    }
    Some(phi)
}

/// An isomorphism `a → b` on local indices, found by backtracking over
/// generator images of matching element order. `None` when the groups are
/// not isomorphic.
pub fn group_isomorphism(a: &SmallGroup, b: &SmallGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.order_profile() != b.order_profile() || a.is_abelian() != b.is_abelian() {
        return None;
    }
    let gens = a.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = a.element_order(g);
            (0..b.order()).filter(|&x| b.element_order(x) == k).collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(phi) = extend(a, b, &gens, &images) {
            return Some(phi);
        }
        let mut k = gens.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(g: &FiniteGroupoid) -> SmallGroup {
        g.isotropy(0)
    }

    /// Oracle: try every bijection fixing the identity.
    fn brute_force_isomorphic(a: &SmallGroup, b: &SmallGroup) -> bool {
        fn permute(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, a: &SmallGroup, b: &SmallGroup) -> bool {
            let n = a.order();
            if k == n {
                return (0..n).all(|x| (0..n).all(|y| perm[a.mul(x, y)] == b.mul(perm[x], perm[y])));
            }
            for c in 1..n {
                if !used[c] {
                    used[c] = true;
                    perm.push(c);
                    if permute(k + 1, perm, used, a, b) {
                        return true;
                    }
                    perm.pop();
                    used[c] = false;
                }
            }
            false
        }
        if a.order() != b.order() {
            return false;
        }
        let mut used = vec![false; a.order()];
        used[0] = true;
        permute(1, &mut vec![0], &mut used, a, b)
    }

    #[test]
    fn cyclic_versus_klein() {
        let z4 = group(&FiniteGroupoid::cyclic(4));
        let v = group(&FiniteGroupoid::abelian(&[2, 2]));
        assert!(group_isomorphism(&z4, &v).is_none());
        assert!(!brute_force_isomorphic(&z4, &v));
        assert!(group_isomorphism(&z4, &z4).is_some());
        let z6 = group(&FiniteGroupoid::cyclic(6));
        let z23 = group(&FiniteGroupoid::abelian(&[2, 3]));
        assert!(group_isomorphism(&z6, &z23).is_some());
        assert!(brute_force_isomorphic(&z6, &z23));
    }

    #[test]
    fn symmetric_group_on_three_letters() {
        // S_3 as permutations of {0,1,2}, listed with the identity first
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let names = (0..6).map(|i| format!("p{i}")).collect();
        let s3 = group(&FiniteGroupoid::from_group(names, &table).unwrap());
        let z6 = group(&FiniteGroupoid::cyclic(6));
        assert!(!s3.is_abelian());
        assert!(group_isomorphism(&s3, &z6).is_none());
        assert!(group_isomorphism(&s3, &s3).is_some());
        assert!(!brute_force_isomorphic(&s3, &z6));
        let phi = group_isomorphism(&s3, &s3).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(phi[s3.mul(x, y)], s3.mul(phi[x], phi[y]));
            }
        }
    }

    #[test]
    fn generators_generate() {
        let g = group(&FiniteGroupoid::abelian(&[2, 2, 2]));
        assert_eq!(g.generators().len(), 3);
        assert_eq!(group(&FiniteGroupoid::cyclic(5)).generators(), vec![1]);
    }
}
