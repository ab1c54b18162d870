use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::catalog::GroupKind;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A permutation group given by generators.
///
/// Cheap to clone; order, stabilizer chain and element table are computed
/// once on first use and then shared.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    limits: Limits,
    kind: Option<GroupKind>,
    chain: OnceLock<StabChain>,
    table: OnceLock<Arc<ElementTable>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::with_limits(degree, generators, Limits::default())
    }

    pub fn with_limits(degree: usize, generators: Vec<Permutation>, limits: Limits) -> Result<PermGroup> {
        PermGroup::build(degree, generators, limits, None)
    }

    pub(crate) fn build(degree: usize, generators: Vec<Permutation>, limits: Limits, kind: Option<GroupKind>) -> Result<PermGroup> {
        if degree == 0 || degree > limits.max_degree {
            return Err(Error::DegreeOutOfRange { degree, max: limits.max_degree });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidArgument(format!("generator {g} has degree {}, expected {degree}", g.degree())));
            }
        }
        Ok(PermGroup {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                limits,
                kind,
                chain: OnceLock::new(),
                table: OnceLock::new(),
            }),
        })
    }

    pub fn trivial(degree: usize) -> Result<PermGroup> {
        PermGroup::new(degree, Vec::new())
    }

    /// Same generators (and catalog kind) under different caps.
    pub fn relimit(&self, limits: Limits) -> Result<PermGroup> {
        PermGroup::build(self.degree(), self.generators().to_vec(), limits, self.inner.kind.clone())
    }

    /// The catalog entry this group was built from, if any.
    pub fn kind(&self) -> Option<&GroupKind> {
        self.inner.kind.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn limits(&self) -> &Limits {
        &self.inner.limits
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    /// Same underlying object (not merely equal generators).
    pub fn same_as(&self, other: &PermGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    fn chain(&self) -> &StabChain {
        self.inner.chain.get_or_init(|| StabChain::build(self.degree(), self.generators()))
    }

    /// Exact order, from a stabilizer chain.
    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree() && self.chain().contains(p)
    }

    /// Every element paired with a shortest word in the generators.
    pub fn element_table(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.inner.table.get() {
            return Ok(t.clone());
        }
        let order = self.order();
        if order > self.limits().max_order {
            return Err(Error::CapExceeded { what: "element enumeration", size: order, cap: self.limits().max_order });
        }
        let table = Arc::new(ElementTable::build(self.degree(), self.generators()));
        debug_assert_eq!(table.len() as u64, order);
        Ok(self.inner.table.get_or_init(|| table).clone())
    }

    pub fn elements(&self) -> Result<Vec<Permutation>> {
        Ok(self.element_table()?.elements.clone())
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|a| g.iter().all(|b| (a * b) == (b * a)))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree())?;
        for (k, g) in self.generators().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

/// Elements in breadth-first order over the Cayley graph, identity first.
pub struct ElementTable {
    pub elements: Vec<Permutation>,
    /// `words[i]` lists generator indices whose product is `elements[i]`.
    pub words: Vec<Vec<usize>>,
    /// `(parent index, generator)` with `elements[i] = elements[parent] * gen`.
    pub parent: Vec<(u32, u32)>,
    index: HashMap<Permutation, u32>,
    cayley: OnceLock<CayleyTable>,
    generators: Vec<Permutation>,
}

impl ElementTable {
    fn build(degree: usize, generators: &[Permutation]) -> ElementTable {
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut parent = vec![(0u32, u32::MAX)];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let p = &elements[i] * g;
                if index.contains_key(&p) {
                    continue;
                }
                let j = elements.len();
                index.insert(p.clone(), j as u32);
                let mut w = words[i].clone();
                w.push(k);
                elements.push(p);
                words.push(w);
                parent.push((i as u32, k as u32));
                queue.push_back(j);
            }
        }
        ElementTable { elements, words, parent, index, cayley: OnceLock::new(), generators: generators.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn word_of(&self, p: &Permutation) -> Option<&[usize]> {
        self.index_of(p).map(|i| self.words[i].as_slice())
    }

    /// Full multiplication table, built on first use.
    pub fn cayley(&self) -> &CayleyTable {
        self.cayley.get_or_init(|| CayleyTable::build(self))
    }
}

/// Multiplication table on element indices.
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl CayleyTable {
    fn build(t: &ElementTable) -> CayleyTable {
        let n = t.len();
        let k = t.generators.len();
        // right multiplication by each generator
        let mut by_gen = vec![0u32; n * k];
        for i in 0..n {
            for (g, gen) in t.generators.iter().enumerate() {
                by_gen[i * k + g] = t.index[&(&t.elements[i] * gen)];
            }
        }
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            mul[i * n] = i as u32;
        }
        // elements[j] = elements[parent] * gen, so x * e_j = (x * e_parent) * gen
        for j in 1..n {
            let (p, g) = t.parent[j];
            for i in 0..n {
                let xp = mul[i * n + p as usize] as usize;
                mul[i * n + j] = by_gen[xp * k + g as usize];
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as u32;
                    break;
                }
            }
        }
        CayleyTable { n, mul, inv }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i] as usize;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y as u32);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

/// Deterministic Schreier-Sims stabilizer chain.
struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

struct Level {
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    gens: Vec<usize>,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain { degree, base: Vec::new(), strong: Vec::new(), levels: Vec::new() };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            if chain.sift(g, 0).0.is_identity() {
                continue;
            }
            chain.add_strong(g.clone());
            chain.complete();
        }
        chain
    }

    fn add_strong(&mut self, h: Permutation) {
        if self.base.iter().all(|&b| h.image0(b) == b) {
            let b = (0..self.degree).find(|&p| h.image0(p) != p).expect("nontrivial");
            self.base.push(b);
            self.levels.push(Level { transversal: Vec::new(), gens: Vec::new() });
        }
        self.strong.push(h);
        for i in 0..self.levels.len() {
            self.rebuild(i);
        }
    }

    fn rebuild(&mut self, i: usize) {
        let fixes = |g: &Permutation| self.base[..i].iter().all(|&b| g.image0(b) == b);
        let gens: Vec<usize> = (0..self.strong.len()).filter(|&k| fixes(&self.strong[k])).collect();
        let mut transversal = vec![None; self.degree];
        transversal[self.base[i]] = Some(Permutation::identity(self.degree));
        let mut queue = VecDeque::from([self.base[i]]);
        while let Some(b) = queue.pop_front() {
            let u: Permutation = transversal[b].clone().expect("orbit point");
            for &k in &gens {
                let c = self.strong[k].image0(b);
                if transversal[c].is_none() {
                    transversal[c] = Some(&u * &self.strong[k]);
                    queue.push_back(c);
                }
            }
        }
        self.levels[i] = Level { transversal, gens };
    }

    /// Sift every Schreier generator, deepest level first, until all pass.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            let mut residue = None;
            'scan: for b in 0..self.degree {
                let Some(ub) = self.levels[lvl].transversal[b].clone() else { continue };
                for &k in &self.levels[lvl].gens {
                    let s = &self.strong[k];
                    let c = s.image0(b);
                    let uc = self.levels[lvl].transversal[c].as_ref().expect("orbit closed");
                    let schreier = &(&ub * s) * &uc.inverse();
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, _) = self.sift(&schreier, lvl + 1);
                    if !h.is_identity() {
                        residue = Some(h);
                        break 'scan;
                    }
                }
            }
            match residue {
                Some(h) => {
                    self.add_strong(h);
                    i = self.levels.len();
                }
                None => i -= 1,
            }
        }
    }

    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, lvl) in self.levels.iter().enumerate().skip(from) {
            let b = h.image0(self.base[i]);
            match &lvl.transversal[b] {
                Some(u) => h = &h * &u.inverse(),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.transversal.iter().filter(|t| t.is_some()).count() as u64).product()
    }

    fn contains(&self, p: &Permutation) -> bool {
        self.sift(p, 0).0.is_identity()
    }
}
