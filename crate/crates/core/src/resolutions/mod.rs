//! Coflasque covers, flasque resolutions, and the norm-one pipeline.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{h1, presentation_for, tate_minus1};
use crate::error::{Error, Result};
use crate::exactla::{
    kernel_basis, sparse_invariant_factors, AbelianInvariants, Int, IntMatrix, LatticeSolver, SparseMatrix,
};
use crate::glattice::{chevalley_module, direct_sum, dual, fixed_sublattice, perm_lattice_from, GLattice, LatticeMap, LatticeRecord};
use crate::permcore::{core, subgroup_classes, PermGroup, Permutation, SubgroupHandle, Transversal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResolutionKind {
    /// `0 -> L -> P -> M -> 0`, `M` flasque.
    Flasque,
    /// `0 -> N -> Q -> L -> 0`, `N` coflasque.
    Coflasque,
}

/// A short exact sequence `0 -> A -> P -> B -> 0` with `P` a permutation
/// lattice, resolving `base`.
///
/// For a flasque resolution `A = base` and `B = side`; for a coflasque
/// cover `A = side` and `B = base`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub kind: ResolutionKind,
    pub base: GLattice,
    pub middle: GLattice,
    /// `(class representative H', multiplicity)`: the middle term is the
    /// direct sum of `Z[G/H']` repeated `multiplicity` times, in this order.
    pub summands: Vec<(SubgroupHandle, usize)>,
    pub side: GLattice,
    pub injection: LatticeMap,
    pub surjection: LatticeMap,
}

impl Resolution {
    /// Checks rank additivity, exactness in the middle up to ranks, that
    /// the injection has saturated image and that the surjection is onto.
    /// Equivariance of both maps was checked when they were built.
    pub fn verify(&self) -> Result<()> {
        let (a, b) = (self.injection.source(), self.surjection.target());
        if self.middle.rank() != a.rank() + b.rank() {
            return Err(Error::Internal(format!(
                "rank {} in the middle, {} + {} at the ends",
                self.middle.rank(),
                a.rank(),
                b.rank()
            )));
        }
        if !self.injection.sparse_matrix().mul(self.surjection.sparse_matrix()).is_zero() {
            return Err(Error::Internal("maps do not compose to zero".into()));
        }
        let inj = sparse_invariant_factors(self.injection.sparse_matrix());
        if inj.len() != a.rank() || !inj.iter().all(Int::is_one) {
            return Err(Error::Internal("injection is not a saturated embedding".into()));
        }
        let surj = sparse_invariant_factors(self.surjection.sparse_matrix());
        if surj.len() != b.rank() || !surj.iter().all(Int::is_one) {
            return Err(Error::Internal("surjection is not onto".into()));
        }
        Ok(())
    }

    pub fn to_record(&self, group_spec: &str) -> ResolutionRecord {
        ResolutionRecord {
            kind: self.kind,
            summands: self
                .summands
                .iter()
                .map(|(h, m)| (h.generators().iter().map(|x| x.images()).collect(), *m))
                .collect(),
            base: self.base.to_record(group_spec),
            side: self.side.to_record(group_spec),
            injection: self.injection.sparse_matrix().clone(),
            surjection: self.surjection.sparse_matrix().clone(),
        }
    }

    /// Rebuilds and re-verifies a recorded resolution over `g`.
    pub fn from_record(g: &PermGroup, rec: &ResolutionRecord) -> Result<Resolution> {
        let base = GLattice::from_record(g, &rec.base)?;
        let side = GLattice::from_record(g, &rec.side)?;
        let mut summands = Vec::new();
        for (gens, m) in &rec.summands {
            let gens = gens.iter().map(|im| Permutation::from_images(im)).collect::<Result<Vec<_>>>()?;
            summands.push((SubgroupHandle::new(g, gens)?, *m));
        }
        let middle = permutation_sum(g, &summands)?.0;
        let (a, b) = match rec.kind {
            ResolutionKind::Flasque => (&base, &side),
            ResolutionKind::Coflasque => (&side, &base),
        };
        let injection = LatticeMap::new(a, &middle, rec.injection.clone())?;
        let surjection = LatticeMap::new(&middle, b, rec.surjection.clone())?;
        let r = Resolution { kind: rec.kind, base, middle, summands, side, injection, surjection };
        r.verify()?;
        Ok(r)
    }
}

/// Serializable form of a [`Resolution`]: the summand list, both end
/// lattices and both maps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionRecord {
    pub kind: ResolutionKind,
    /// Generators of each summand's subgroup as 1-based image lists.
    pub summands: Vec<(Vec<Vec<usize>>, usize)>,
    pub base: LatticeRecord,
    pub side: LatticeRecord,
    pub injection: SparseMatrix,
    pub surjection: SparseMatrix,
}

/// `sum Z[G/H']^m` together with the transversals, in summand order.
fn permutation_sum(g: &PermGroup, summands: &[(SubgroupHandle, usize)]) -> Result<(GLattice, Vec<Transversal>)> {
    let mut total = GLattice::zero(g);
    let mut ts = Vec::new();
    for (h, m) in summands {
        let t = Transversal::new(g, h)?;
        let p = perm_lattice_from(g, &t)?;
        for _ in 0..*m {
            total = direct_sum(&total, &p)?;
        }
        ts.push(t);
    }
    Ok((total, ts))
}

/// Subgroup class representatives in decreasing order, ties broken by the
/// sorted element lists.
fn classes_decreasing(g: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let mut cls = subgroup_classes(g)?;
    let mut keyed = Vec::with_capacity(cls.len());
    for c in cls.drain(..) {
        keyed.push((c.order(), c.element_set()?, c));
    }
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, _, c)| c).collect())
}

/// One candidate block of the cover: `Z[G/K] (x) L^K`.
struct Block {
    subgroup: SubgroupHandle,
    transversal: Transversal,
    /// Saturated basis of `L^K`, rows.
    fixed: IntMatrix,
    /// `rho(t_i)` for the coset representatives.
    reps: Vec<IntMatrix>,
}

impl Block {
    fn new(l: &GLattice, k: &SubgroupHandle) -> Result<Block> {
        let g = l.group();
        let transversal = Transversal::new(g, k)?;
        let fixed = fixed_sublattice(l, k)?;
        let reps = if fixed.rows() == 0 {
            Vec::new()
        } else {
            transversal.reps().iter().map(|t| l.dense_matrix_of(t)).collect::<Result<Vec<_>>>()?
        };
        Ok(Block { subgroup: k.clone(), transversal, fixed, reps })
    }

    /// Images in `L` of the `H'`-fixed vectors of this block: orbit sums of
    /// `H'` on `G/K`, tensored with the basis of `L^K`.
    fn fixed_images(&self, h: &SubgroupHandle, r: usize) -> Vec<Vec<Int>> {
        if self.fixed.rows() == 0 {
            return Vec::new();
        }
        let n = self.transversal.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for x in h.generators() {
                    let j = self.transversal.act(orbit[i], x);
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(j);
                    }
                }
                i += 1;
            }
            let mut sum = IntMatrix::zeros(r, r);
            for &j in &orbit {
                sum.add_assign(&self.reps[j]);
            }
            out.extend(self.fixed.mul(&sum).to_rows());
        }
        out
    }
}

fn covers(blocks: &[Block], h: &SubgroupHandle, target: &IntMatrix, r: usize) -> bool {
    if target.rows() == 0 {
        return true;
    }
    let images: Vec<Vec<Int>> = blocks.iter().flat_map(|b| b.fixed_images(h, r)).collect();
    if images.is_empty() {
        return false;
    }
    let solver = LatticeSolver::new(&IntMatrix::from_int_rows(r, images));
    target.row_iter().all(|v| solver.contains(v))
}

/// `0 -> N -> Q -> L -> 0` with `Q` a permutation lattice such that
/// `Q^{H'} -> L^{H'}` is onto for every subgroup `H'`, which makes `N`
/// coflasque.
///
/// `Q` is a sum of blocks `Z[G/K] (x) L^K`, the coset `Kg` times a fixed
/// vector `v` mapping to `v rho(g)`. Classes are visited from large to
/// small and a block is added only when the blocks so far miss part of
/// `L^{H'}`; the surjectivity condition is then re-checked for every class.
pub fn coflasque_cover(l: &GLattice) -> Result<Resolution> {
    let g = l.group();
    let r = l.rank();
    let classes = classes_decreasing(g)?;
    let mut blocks: Vec<Block> = Vec::new();
    let mut targets = Vec::with_capacity(classes.len());
    for h in &classes {
        let target = fixed_sublattice(l, h)?;
        if !covers(&blocks, h, &target, r) {
            let b = Block::new(l, h)?;
            blocks.push(b);
        }
        targets.push(target);
    }
    for (h, target) in classes.iter().zip(&targets) {
        if !covers(&blocks, h, target, r) {
            return Err(Error::Internal(format!("cover is not onto the fixed vectors of {h}")));
        }
    }

    let summands: Vec<(SubgroupHandle, usize)> = blocks.iter().map(|b| (b.subgroup.clone(), b.fixed.rows())).collect();
    let total: u64 = summands.iter().map(|(h, m)| h.index() * *m as u64).sum();
    let cap = g.limits().max_rank as u64;
    if total > cap {
        return Err(Error::CapExceeded { what: "coflasque cover rank", size: total, cap });
    }
    let (q, _) = permutation_sum(g, &summands)?;
    // evaluation matrix, rows ordered block, fixed vector, coset
    let mut eval_rows: Vec<Vec<Int>> = Vec::with_capacity(q.rank());
    for b in &blocks {
        for f in b.fixed.row_iter() {
            for rho in &b.reps {
                eval_rows.push(rho.vec_mul(f));
            }
        }
    }
    let eval = IntMatrix::from_int_rows(r, eval_rows);
    let surjection = LatticeMap::new(&q, l, SparseMatrix::from_dense(&eval))?;
    let (n, inclusion) = kernel_lattice(&q, &eval)?;
    let injection = LatticeMap::new(&n, &q, inclusion)?;
    let res = Resolution {
        kind: ResolutionKind::Coflasque,
        base: l.clone(),
        middle: q,
        summands,
        side: n,
        injection,
        surjection,
    };
    res.verify()?;
    Ok(res)
}

/// The kernel of `v -> v E` on `Q` with an explicit basis, as a lattice.
///
/// When `E` has `r` rows `S` forming a unimodular matrix (found by pivoting
/// on unit entries), the vectors `e_i - c_i`, `i` outside `S`, with `c_i`
/// supported on `S`, form a basis, and a kernel element is determined by
/// its coordinates outside `S`. The action then comes for free from the
/// action on `Q`. Otherwise a Hermite basis of the kernel is used.
fn kernel_lattice(q: &GLattice, e: &IntMatrix) -> Result<(GLattice, SparseMatrix)> {
    let (qn, r) = (e.rows(), e.cols());
    if let Some((pivots, coeffs)) = unit_pivot_rows(e) {
        let in_s: HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..qn).filter(|i| !in_s.contains(i)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for (&i, c) in free.iter().zip(&coeffs) {
            let mut row: Vec<(usize, Int)> = vec![(i, Int::one())];
            for (s, x) in pivots.iter().zip(c) {
                if !x.is_zero() {
                    row.push((*s, -x));
                }
            }
            rows.push(row);
        }
        let basis = SparseMatrix::from_rows(qn, rows);
        let mats = (0..q.generator_count())
            .map(|k| basis.mul(q.sparse_action(k)).select_cols(&free))
            .collect::<Vec<_>>();
        let n = GLattice::new(q.group(), mats)?;
        debug_assert_eq!(n.rank() + r, qn);
        return Ok((n, basis));
    }
    let k = kernel_basis(e);
    let n = q.sublattice(&k)?;
    Ok((n, SparseMatrix::from_dense(&k)))
}

/// Rows `S` of `E` (`q x r`, full column rank `r`) with `E_S` unimodular,
/// and for every other row `i` (increasing) the coefficients `c` with
/// `E_i = c E_S`. `None` when greedy unit pivoting gets stuck.
fn unit_pivot_rows(e: &IntMatrix) -> Option<(Vec<usize>, Vec<Vec<Int>>)> {
    let (qn, r) = (e.rows(), e.cols());
    if qn < r {
        return None;
    }
    let mut w = e.clone();
    let mut used_row = vec![false; qn];
    let mut done_col = vec![false; r];
    // pivot (row, col) in order
    let mut piv: Vec<(usize, usize)> = Vec::with_capacity(r);
    for _ in 0..r {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in (0..qn).filter(|&i| !used_row[i]) {
            let row = w.row(i);
            let nnz = (0..r).filter(|&j| !done_col[j] && !row[j].is_zero()).count();
            for j in (0..r).filter(|&j| !done_col[j]) {
                if row[j].is_unit() && best.is_none_or(|b| nnz < b.2) {
                    best = Some((i, j, nnz));
                }
            }
            if best.is_some_and(|b| b.2 == 1) {
                break;
            }
        }
        let (i, j, _) = best?;
        // clear row i in the remaining columns by column operations
        let pivot = w[(i, j)].clone();
        for c in (0..r).filter(|&c| c != j && !done_col[c]) {
            let x = w[(i, c)].clone();
            if !x.is_zero() {
                w.add_col_multiple(c, j, &-(&x * &pivot));
            }
        }
        used_row[i] = true;
        done_col[j] = true;
        piv.push((i, j));
    }
    // W_S is lower triangular in pivot order: row s_t is supported on the
    // pivot columns j_1..j_t. Solve y W_S = W_i from the last column back.
    let mut coeffs = Vec::with_capacity(qn - r);
    for i in (0..qn).filter(|&i| !used_row[i]) {
        let mut rhs: Vec<Int> = w.row(i).to_vec();
        let mut y = vec![Int::zero(); r];
        for t in (0..r).rev() {
            let (s, j) = piv[t];
            let yt = if w[(s, j)].is_one() { rhs[j].clone() } else { -&rhs[j] };
            if !yt.is_zero() {
                for (c, v) in w.row(s).iter().enumerate() {
                    if !v.is_zero() {
                        rhs[c].sub_mul(&yt, v);
                    }
                }
            }
            y[t] = yt;
        }
        if rhs.iter().any(|x| !x.is_zero()) {
            return None;
        }
        coeffs.push(y);
    }
    Some((piv.iter().map(|p| p.0).collect(), coeffs))
}

/// `0 -> L -> P -> M -> 0` with `P` a permutation lattice and `M`
/// flasque, the dual of a coflasque cover of `L^dual`.
///
/// Flasqueness of `M` is checked when `|G|` is within
/// `max_flasque_check_order`.
pub fn flasque_resolution(l: &GLattice) -> Result<Resolution> {
    let cover = coflasque_cover(&dual(l))?;
    let p = cover.middle.clone();
    let m = dual(&cover.side);
    // Z[G/H] is self-dual: permutation matrices are orthogonal
    let injection = LatticeMap::new(l, &p, cover.surjection.sparse_matrix().transpose())?;
    let surjection = LatticeMap::new(&p, &m, cover.injection.sparse_matrix().transpose())?;
    let res = Resolution {
        kind: ResolutionKind::Flasque,
        base: l.clone(),
        middle: p,
        summands: cover.summands,
        side: m,
        injection,
        surjection,
    };
    res.verify()?;
    let g = l.group();
    if g.order() <= g.limits().max_flasque_check_order {
        if let Some(w) = is_flasque(&res.side)?.witness {
            return Err(Error::Internal(format!("resolution side is not flasque at {w}")));
        }
    }
    Ok(res)
}

/// Outcome of a flasqueness check.
#[derive(Clone, Debug)]
pub struct FlasqueCheck {
    /// A subgroup class where the relevant cohomology group is nonzero.
    pub witness: Option<SubgroupHandle>,
    /// That group.
    pub obstruction: AbelianInvariants,
}

impl FlasqueCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn check_subgroups(g: &PermGroup) -> Result<Vec<SubgroupHandle>> {
    let cap = g.limits().max_flasque_check_order;
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "flasqueness check", size: g.order(), cap });
    }
    classes_decreasing(g)
}

/// `H^-1(H', L) = 0` for every subgroup class `H'`.
pub fn is_flasque(l: &GLattice) -> Result<FlasqueCheck> {
    for h in check_subgroups(l.group())? {
        let t = tate_minus1(&h, l)?;
        if !t.is_trivial() {
            return Ok(FlasqueCheck { witness: Some(h), obstruction: t });
        }
    }
    Ok(FlasqueCheck { witness: None, obstruction: AbelianInvariants::trivial() })
}

/// `H^1(H', L) = 0` for every subgroup class `H'`, tested as flasqueness
/// of the dual: `H^-1(H', L^dual)` is the Pontryagin dual of `H^1(H', L)`.
pub fn is_coflasque(l: &GLattice) -> Result<FlasqueCheck> {
    is_flasque(&dual(l))
}

/// Everything computed along the way to `H^1(G, M)`.
#[derive(Clone, Debug)]
pub struct NormOneReport {
    pub invariant: AbelianInvariants,
    pub j_rank: usize,
    pub flasque_rank: usize,
    pub resolution: Resolution,
    /// Hypotheses that failed without stopping the computation.
    pub warnings: Vec<String>,
}

/// `H^1(G, M)` for `M` the flasque term of a flasque resolution of
/// `J_{G/H}`, computed with `G`'s catalog presentation.
pub fn norm_one_invariant(g: &PermGroup, h: &SubgroupHandle) -> Result<AbelianInvariants> {
    Ok(norm_one_report(g, h)?.invariant)
}

pub fn norm_one_report(g: &PermGroup, h: &SubgroupHandle) -> Result<NormOneReport> {
    let p = presentation_for(g)?;
    let mut warnings = Vec::new();
    if h.order() > 1 && h.is_normal() {
        warnings.push(format!("{h} is normal in G"));
    }
    if core(g, h)?.order() > 1 {
        warnings.push(format!("{h} has nontrivial core; the action on cosets is not faithful"));
    }
    let j = chevalley_module(g, h)?;
    let res = flasque_resolution(&j)?;
    let invariant = h1(&res.side, &p)?;
    Ok(NormOneReport { invariant, j_rank: j.rank(), flasque_rank: res.side.rank(), resolution: res, warnings })
}

/// What the invariant says about one of the two local-global properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Holds,
    Undetermined,
}

/// Consequences of `H^1(G, M)` for the Hasse norm principle (HNP) and weak
/// approximation (WA) of every extension with this Galois data.
///
/// `H^1(G, M)` surjects onto the obstruction to the HNP with kernel the
/// defect of WA. A trivial group gives both; a nontrivial one only bounds
/// the two, and how it splits depends on the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub invariant: AbelianInvariants,
    pub hnp: Claim,
    pub wa: Claim,
}

impl Verdict {
    pub fn from_invariant(invariant: AbelianInvariants) -> Verdict {
        let claim = if invariant.is_trivial() { Claim::Holds } else { Claim::Undetermined };
        Verdict { invariant, hnp: claim, wa: claim }
    }

    pub fn obstruction(&self) -> Option<&AbelianInvariants> {
        (!self.invariant.is_trivial()).then_some(&self.invariant)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.obstruction() {
            None => write!(f, "HNP holds, WA holds"),
            Some(o) => write!(f, "obstruction {o}, HNP/WA split undetermined"),
        }
    }
}

pub fn verdict(g: &PermGroup, h: &SubgroupHandle) -> Result<Verdict> {
    Ok(Verdict::from_invariant(norm_one_invariant(g, h)?))
}
