//! Conjugacy classes of subgroups by cyclic extension.
//!
//! Subgroups are handled as sorted lists of element indices into the
//! group's element table, and all products go through the Cayley table.
//! Starting from the cyclic subgroups, every class representative `S` is
//! extended to `<S, g>` for all `g`, and new subgroups are kept if they are
//! not conjugate to a representative already found. Every subgroup arises
//! from a chain of such one-element extensions of the trivial group, so the
//! search is complete once no extension yields a new class.

use std::collections::HashMap;

use super::group::{CayleyTable, PermGroup};
use super::perm::Permutation;
use super::subgroup::SubgroupHandle;
use crate::error::{Error, Result};

struct ClassRep {
    /// Sorted element indices.
    elements: Vec<u32>,
    gens: Vec<usize>,
    key: Vec<u32>,
}

struct Search<'a> {
    c: &'a CayleyTable,
    orders: Vec<u32>,
    reps: Vec<ClassRep>,
    by_key: HashMap<Vec<u32>, Vec<usize>>,
}

impl<'a> Search<'a> {
    /// Subgroup order followed by the histogram of element orders; equal for
    /// conjugate subgroups.
    fn key(&self, elems: &[u32]) -> Vec<u32> {
        let mut hist = vec![0u32; 1 + *self.orders.iter().max().unwrap_or(&1) as usize];
        for &e in elems {
            hist[self.orders[e as usize] as usize] += 1;
        }
        let mut key = vec![elems.len() as u32];
        key.extend(hist);
        key
    }

    fn conjugate_to_known(&self, key: &[u32], elems: &[u32], gens: &[usize]) -> bool {
        let Some(cands) = self.by_key.get(key) else { return false };
        let n = self.c.len();
        let mut member = vec![false; n];
        for &r in cands {
            member.iter_mut().for_each(|m| *m = false);
            for &e in &self.reps[r].elements {
                member[e as usize] = true;
            }
            // a conjugate of <gens> lying inside an equal-order subgroup is it
            if (0..n).any(|x| gens.iter().all(|&g| member[self.c.conj(g, x)])) {
                return true;
            }
        }
        let _ = elems;
        false
    }

    fn insert(&mut self, elems: Vec<u32>, gens: Vec<usize>) -> bool {
        let key = self.key(&elems);
        if self.conjugate_to_known(&key, &elems, &gens) {
            return false;
        }
        let idx = self.reps.len();
        self.by_key.entry(key.clone()).or_default().push(idx);
        self.reps.push(ClassRep { elements: elems, gens, key });
        true
    }
}

fn element_orders(c: &CayleyTable) -> Vec<u32> {
    (0..c.len())
        .map(|x| {
            let mut k = 1u32;
            let mut y = x;
            while y != 0 {
                y = c.mul(y, x);
                k += 1;
            }
            k
        })
        .collect()
}

/// One representative per conjugacy class of subgroups, trivial group and
/// `G` included, sorted by increasing order and then by element list.
pub fn subgroup_classes(g: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let cap = g.limits().max_classes_order;
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "subgroup class enumeration", size: g.order(), cap });
    }
    let table = g.element_table()?;
    let c = table.cayley();
    let n = c.len();
    let mut search = Search { c, orders: element_orders(c), reps: Vec::new(), by_key: HashMap::new() };

    search.insert(vec![0], Vec::new());
    // cyclic subgroups, one generator per class
    let mut seen_cyclic = vec![false; n];
    for x in 1..n {
        if seen_cyclic[x] {
            continue;
        }
        let elems = c.closure(&[x]);
        for &e in &elems {
            if search.orders[e as usize] == search.orders[x] {
                seen_cyclic[e as usize] = true;
            }
        }
        search.insert(elems, vec![x]);
    }

    let mut next = 0;
    while next < search.reps.len() {
        let base_elems = search.reps[next].elements.clone();
        let base_gens = search.reps[next].gens.clone();
        let mut in_base = vec![false; n];
        for &e in &base_elems {
            in_base[e as usize] = true;
        }
        // normalizer of the base, to skip extensions conjugate under it
        let normalizer: Vec<usize> =
            (0..n).filter(|&x| base_gens.iter().all(|&s| in_base[c.conj(s, x)])).collect();
        let mut covered = in_base.clone();
        for x in 0..n {
            if covered[x] {
                continue;
            }
            let mut gens = base_gens.clone();
            gens.push(x);
            let elems = c.closure(&gens);
            // <S, y> = <S, x> for y in the double coset SxS and for generators
            // of <x>; N(S)-conjugates give conjugate extensions
            let ox = search.orders[x];
            let mut same = Vec::new();
            let mut p = x;
            for k in 1..=ox {
                if gcd(k, ox) == 1 {
                    same.push(p);
                }
                p = c.mul(p, x);
            }
            let mut local = vec![false; n];
            let mut ys = Vec::new();
            for &xp in &same {
                for &s in &base_elems {
                    let sx = c.mul(s as usize, xp);
                    for &t in &base_elems {
                        let y = c.mul(sx, t as usize);
                        if !local[y] {
                            local[y] = true;
                            ys.push(y);
                        }
                    }
                }
            }
            for &y in &ys {
                for &nn in &normalizer {
                    covered[c.conj(y, nn)] = true;
                }
            }
            let gens = trim_generators(c, &gens, elems.len());
            search.insert(elems, gens);
        }
        next += 1;
    }

    let mut out: Vec<(Vec<Permutation>, Vec<usize>)> = search
        .reps
        .iter()
        .map(|r| {
            let mut perms: Vec<Permutation> = r.elements.iter().map(|&e| table.elements[e as usize].clone()).collect();
            perms.sort();
            (perms, r.gens.clone())
        })
        .collect();
    debug_assert!(search.reps.iter().all(|r| r.key[0] as usize == r.elements.len()));
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out
        .into_iter()
        .map(|(perms, gens)| {
            let gens = gens.iter().map(|&k| table.elements[k].clone()).collect();
            SubgroupHandle::from_parts(g, gens, perms)
        })
        .collect())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Drop generators that are not needed to reach a subgroup of size `size`.
fn trim_generators(c: &CayleyTable, gens: &[usize], size: usize) -> Vec<usize> {
    let mut kept = gens.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if c.closure(&trial).len() == size {
            kept = trial;
        } else {
            i += 1;
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::catalog::*;
    use crate::permcore::subgroup::are_conjugate_subgroups;

    fn count(g: &PermGroup) -> usize {
        subgroup_classes(g).unwrap().len()
    }

    #[test]
    fn small_groups() {
        assert_eq!(count(&alternating(4).unwrap()), 5);
        assert_eq!(count(&symmetric(3).unwrap()), 4);
        assert_eq!(count(&cyclic(5).unwrap()), 2);
        assert_eq!(count(&cyclic(7).unwrap()), 2);
        assert_eq!(count(&klein_four().unwrap()), 5);
        assert_eq!(count(&symmetric(4).unwrap()), 11);
        assert_eq!(count(&dihedral(4).unwrap()), 8);
        assert_eq!(count(&alternating(5).unwrap()), 9);
    }

    #[test]
    fn reps_pairwise_non_conjugate() {
        let g = symmetric(4).unwrap();
        let cl = subgroup_classes(&g).unwrap();
        assert_eq!(cl[0].order(), 1);
        assert_eq!(cl.last().unwrap().order(), 24);
        for i in 0..cl.len() {
            for j in i + 1..cl.len() {
                assert!(!are_conjugate_subgroups(&g, &cl[i], &cl[j]).unwrap());
            }
        }
    }

    #[test]
    fn a6_classes() {
        let cl = subgroup_classes(&alternating(6).unwrap()).unwrap();
        assert_eq!(cl.len(), 22);
        assert_eq!(cl.iter().filter(|h| h.order() == 60).count(), 2);
    }

    #[test]
    fn cap() {
        let limits = crate::Limits { max_classes_order: 20, ..Default::default() };
        let g = symmetric(4).unwrap().relimit(limits).unwrap();
        assert!(matches!(subgroup_classes(&g), Err(Error::CapExceeded { .. })));
    }
}
