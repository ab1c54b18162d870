use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// A subgroup `H <= G` given by generators, with its sorted element list
/// materialized on demand (when `|G|` is within the enumeration cap).
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: PermGroup,
    group: PermGroup,
    elements: Arc<OnceLock<Arc<Vec<Permutation>>>>,
}

impl SubgroupHandle {
    /// Fails with [`Error::NotSubgroup`] if a generator lies outside `parent`.
    pub fn new(parent: &PermGroup, generators: Vec<Permutation>) -> Result<SubgroupHandle> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let g = if g.degree() == parent.degree() { g } else { g.with_degree(parent.degree())? };
            if !parent.contains(&g) {
                return Err(Error::NotSubgroup(format!("generator {g} is not in the parent group")));
            }
            if !g.is_identity() {
                gens.push(g);
            }
        }
        let group = PermGroup::with_limits(parent.degree(), gens, parent.limits().clone())?;
        Ok(SubgroupHandle { parent: parent.clone(), group, elements: Arc::new(OnceLock::new()) })
    }

    pub fn whole(parent: &PermGroup) -> SubgroupHandle {
        SubgroupHandle::new(parent, parent.generators().to_vec()).expect("generators lie in their own group")
    }

    pub fn trivial(parent: &PermGroup) -> SubgroupHandle {
        SubgroupHandle::new(parent, Vec::new()).expect("trivial subgroup")
    }

    /// Stabilizer of a point (1-based).
    pub fn point_stabilizer(parent: &PermGroup, point: usize) -> Result<SubgroupHandle> {
        if point == 0 || point > parent.degree() {
            return Err(Error::InvalidArgument(format!("point {point} outside 1..{}", parent.degree())));
        }
        let elems = parent.elements()?;
        let fixing: Vec<Permutation> = elems.into_iter().filter(|p| p.apply(point) == point).collect();
        let gens = generating_subset(parent.degree(), &fixing);
        SubgroupHandle::new(parent, gens)
    }

    pub(crate) fn from_parts(parent: &PermGroup, gens: Vec<Permutation>, sorted_elements: Vec<Permutation>) -> SubgroupHandle {
        let group = PermGroup::with_limits(parent.degree(), gens, parent.limits().clone()).expect("valid degree");
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(sorted_elements));
        SubgroupHandle { parent: parent.clone(), group, elements: Arc::new(cell) }
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    /// The subgroup as a group in its own right.
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.group.contains(p)
    }

    /// Sorted element list.
    pub fn element_set(&self) -> Result<Arc<Vec<Permutation>>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        let cap = self.parent.limits().max_order;
        if self.order() > cap {
            return Err(Error::CapExceeded { what: "subgroup element set", size: self.order(), cap });
        }
        let mut e = self.group.elements()?;
        e.sort();
        Ok(self.elements.get_or_init(|| Arc::new(e)).clone())
    }

    pub fn is_cyclic(&self) -> Result<bool> {
        let n = self.order();
        Ok(self.element_set()?.iter().any(|p| p.order() == n))
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, g: &Permutation) -> SubgroupHandle {
        let gens = self.generators().iter().map(|h| h.conjugate_by(g)).collect();
        SubgroupHandle::new(&self.parent, gens).expect("conjugates stay in the parent")
    }

    pub fn is_normal(&self) -> bool {
        self.parent
            .generators()
            .iter()
            .all(|g| self.generators().iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    pub fn index(&self) -> u64 {
        self.parent.order() / self.order()
    }
}

impl fmt::Display for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupHandle(order {}, {})", self.order(), self)
    }
}

/// Greedy generating subset of a list of elements (processed in order).
pub(crate) fn generating_subset(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    for e in elements {
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        closure = close(degree, &gens);
    }
    gens
}

fn close(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Right cosets `Hg` of `H` in `G`, each represented by its canonical
/// element (lexicographically smallest image tuple in the coset) and sorted
/// by that representative, so the identity coset comes first.
#[derive(Clone)]
pub struct Transversal {
    reps: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    subgroup: Arc<Vec<Permutation>>,
}

impl Transversal {
    pub fn new(g: &PermGroup, h: &SubgroupHandle) -> Result<Transversal> {
        check_subgroup(g, h)?;
        let subgroup = h.element_set()?;
        let canon = |x: &Permutation| subgroup.iter().map(|s| s * x).min().expect("nonempty subgroup");
        let id = g.identity();
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(r) = queue.pop_front() {
            for gen in g.generators() {
                let c = canon(&(&r * gen));
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut reps: Vec<Permutation> = seen.into_iter().collect();
        reps.sort();
        let expected = g.order() / h.order();
        if reps.len() as u64 != expected {
            return Err(Error::Internal(format!("found {} cosets, expected index {expected}", reps.len())));
        }
        let index = reps.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Ok(Transversal { reps, index, subgroup })
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn canonical(&self, x: &Permutation) -> Permutation {
        self.subgroup.iter().map(|s| s * x).min().expect("nonempty subgroup")
    }

    /// 0-based index of the coset `Hx`.
    pub fn position(&self, x: &Permutation) -> Option<usize> {
        self.index.get(&self.canonical(x)).copied()
    }

    /// Index of the coset `H reps[i] g` (right action on cosets).
    pub fn act(&self, i: usize, g: &Permutation) -> usize {
        self.position(&(&self.reps[i] * g)).expect("cosets are permuted")
    }

    /// Permutation of coset indices induced by `g`.
    pub fn action_of(&self, g: &Permutation) -> Vec<usize> {
        (0..self.len()).map(|i| self.act(i, g)).collect()
    }
}

fn check_subgroup(g: &PermGroup, h: &SubgroupHandle) -> Result<()> {
    if h.parent().same_as(g) {
        return Ok(());
    }
    if h.parent().degree() != g.degree() {
        return Err(Error::NotSubgroup("degree mismatch".into()));
    }
    for x in h.generators() {
        if !g.contains(x) {
            return Err(Error::NotSubgroup(format!("{x} is not in G")));
        }
    }
    Ok(())
}

/// Canonical right transversal of `H` in `G`.
pub fn right_transversal(g: &PermGroup, h: &SubgroupHandle) -> Result<Vec<Permutation>> {
    Ok(Transversal::new(g, h)?.reps)
}

/// 1-based position of the coset containing `p` in a transversal produced by
/// [`right_transversal`].
pub fn coset_position(g: &PermGroup, h: &SubgroupHandle, transversal: &[Permutation], p: &Permutation) -> Result<usize> {
    if !g.contains(p) {
        return Err(Error::NotInGroup(p.to_string()));
    }
    // p lies in H t exactly when p t^-1 is in H
    transversal
        .iter()
        .position(|t| h.contains(&(p * &t.inverse())))
        .map(|i| i + 1)
        .ok_or_else(|| Error::Internal("transversal does not cover G".into()))
}

/// Largest normal subgroup of `G` inside `H`: the intersection of the
/// conjugates `t^-1 H t` over a right transversal.
pub fn core(g: &PermGroup, h: &SubgroupHandle) -> Result<SubgroupHandle> {
    let t = Transversal::new(g, h)?;
    let hset: HashSet<&Permutation> = t.subgroup.iter().collect();
    let inverses: Vec<Permutation> = t.reps.iter().map(Permutation::inverse).collect();
    // x lies in t^-1 H t iff t x t^-1 lies in H
    let kept: Vec<Permutation> = t
        .subgroup
        .iter()
        .filter(|x| inverses.iter().all(|r| hset.contains(&x.conjugate_by(r))))
        .cloned()
        .collect();
    let gens = generating_subset(g.degree(), &kept);
    let parent = if h.parent().same_as(g) { h.parent().clone() } else { g.clone() };
    Ok(SubgroupHandle::from_parts(&parent, gens, kept))
}

/// Brute-force conjugacy test over the elements of `G`.
pub fn are_conjugate_subgroups(g: &PermGroup, h1: &SubgroupHandle, h2: &SubgroupHandle) -> Result<bool> {
    Ok(conjugating_element(g, h1, h2)?.is_some())
}

/// Some `x` with `x^-1 H1 x = H2`.
pub fn conjugating_element(g: &PermGroup, h1: &SubgroupHandle, h2: &SubgroupHandle) -> Result<Option<Permutation>> {
    let cap = g.limits().max_conjugacy_order;
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "brute-force conjugacy", size: g.order(), cap });
    }
    check_subgroup(g, h1)?;
    check_subgroup(g, h2)?;
    if h1.order() != h2.order() {
        return Ok(None);
    }
    let target: HashSet<Permutation> = h2.element_set()?.iter().cloned().collect();
    for x in g.elements()? {
        // equal orders, so containment of the conjugated generators suffices
        if h1.generators().iter().all(|h| target.contains(&h.conjugate_by(&x))) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Every element of `G` with a shortest word in its generators.
pub fn elements_with_words(g: &PermGroup) -> Result<Vec<(Permutation, Vec<usize>)>> {
    let t = g.element_table()?;
    Ok(t.elements.iter().cloned().zip(t.words.iter().cloned()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::catalog::*;

    fn cyc(n: usize, pts: &[usize]) -> Permutation {
        Permutation::cycle(n, pts).unwrap()
    }

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn transversal_a6_point_stabilizer() {
        let g = alternating(6).unwrap();
        let h = SubgroupHandle::point_stabilizer(&g, 6).unwrap();
        assert_eq!(h.order(), 60);
        let t = right_transversal(&g, &h).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t[0].is_identity());
    }

    #[test]
    fn transversal_of_whole_group() {
        let g = symmetric(4).unwrap();
        let t = right_transversal(&g, &SubgroupHandle::whole(&g)).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].is_identity());
    }

    #[test]
    fn transversal_c4_over_c2() {
        let g = cyclic(4).unwrap();
        let h = SubgroupHandle::new(&g, vec![perm(4, &[&[1, 3], &[2, 4]])]).unwrap();
        let t = right_transversal(&g, &h).unwrap();
        // cosets {e, (13)(24)} and {(1234), (1432)}; lex-min reps e and (1 2 3 4)
        assert_eq!(t, vec![g.identity(), cyc(4, &[1, 2, 3, 4])]);
    }

    #[test]
    fn coset_positions() {
        let g = alternating(4).unwrap();
        let h = SubgroupHandle::new(&g, vec![cyc(4, &[1, 2, 3])]).unwrap();
        let t = right_transversal(&g, &h).unwrap();
        assert_eq!(coset_position(&g, &h, &t, &g.identity()).unwrap(), 1);
        let x = perm(4, &[&[1, 2], &[3, 4]]);
        assert_ne!(coset_position(&g, &h, &t, &x).unwrap(), 1);
        for (k, rep) in t.iter().enumerate() {
            for hh in h.element_set().unwrap().iter() {
                assert_eq!(coset_position(&g, &h, &t, &(hh * rep)).unwrap(), k + 1);
            }
        }
        assert!(coset_position(&g, &h, &t, &cyc(4, &[1, 2])).is_err());
    }

    #[test]
    fn cores() {
        let a6 = alternating(6).unwrap();
        let h = SubgroupHandle::point_stabilizer(&a6, 6).unwrap();
        assert_eq!(core(&a6, &h).unwrap().order(), 1);
        assert_eq!(core(&a6, &SubgroupHandle::whole(&a6)).unwrap().order(), 360);
        let s3 = symmetric(3).unwrap();
        let c3 = SubgroupHandle::new(&s3, vec![cyc(3, &[1, 2, 3])]).unwrap();
        let k = core(&s3, &c3).unwrap();
        assert_eq!(k.order(), 3);
        assert!(k.is_normal());
    }

    #[test]
    fn a6_has_two_classes_of_a5() {
        let g = alternating(6).unwrap();
        let h1 = SubgroupHandle::new(&g, vec![cyc(6, &[1, 2, 3, 4, 5]), cyc(6, &[1, 2, 3])]).unwrap();
        let h2 = SubgroupHandle::new(&g, vec![cyc(6, &[1, 2, 3, 4, 5]), perm(6, &[&[1, 4], &[5, 6]])]).unwrap();
        assert_eq!(h1.order(), 60);
        assert_eq!(h2.order(), 60);
        assert!(!are_conjugate_subgroups(&g, &h1, &h2).unwrap());
        assert!(are_conjugate_subgroups(&g, &h1, &h1).unwrap());
    }

    #[test]
    fn point_stabilizers_conjugate_in_a5() {
        let g = alternating(5).unwrap();
        let s1 = SubgroupHandle::point_stabilizer(&g, 1).unwrap();
        let s2 = SubgroupHandle::point_stabilizer(&g, 2).unwrap();
        let x = conjugating_element(&g, &s1, &s2).unwrap().expect("conjugate");
        assert_eq!(x.apply(1), 2);
    }

    #[test]
    fn words_for_a4() {
        let g = PermGroup::new(4, vec![cyc(4, &[1, 2, 3]), perm(4, &[&[1, 2], &[3, 4]])]).unwrap();
        let ew = elements_with_words(&g).unwrap();
        assert_eq!(ew.len(), 12);
        assert!(ew[0].1.is_empty());
        let target = cyc(4, &[1, 3, 2]);
        let (_, w) = ew.iter().find(|(p, _)| p == &target).unwrap();
        let mut acc = g.identity();
        for &k in w {
            acc = &acc * &g.generators()[k];
        }
        assert_eq!(acc, target);
        assert_eq!(elements_with_words(&cyclic(3).unwrap()).unwrap().len(), 3);
    }

    #[test]
    fn conjugacy_cap() {
        let limits = crate::Limits { max_conjugacy_order: 10, ..Default::default() };
        let g = symmetric(4).unwrap().relimit(limits).unwrap();
        let h = SubgroupHandle::trivial(&g);
        assert!(matches!(are_conjugate_subgroups(&g, &h, &h), Err(Error::CapExceeded { .. })));
    }
}
