//! G-lattices: free Z-modules of finite rank with a right action of a
//! permutation group, given by one matrix per group generator.
//!
//! Lattice elements are row vectors and `v . g = v * rho(g)`. Matrices are
//! stored row-sparse; the modules built here from permutation data keep a
//! few nonzero entries per row for every group element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, snf, Int, IntMatrix, LatticeSolver, SparseMatrix};
use crate::permcore::{PermGroup, Permutation, SubgroupHandle, Transversal};

#[derive(Clone)]
pub struct GLattice {
    group: PermGroup,
    rank: usize,
    action: Arc<Vec<SparseMatrix>>,
    inverse: Arc<Vec<SparseMatrix>>,
}

impl GLattice {
    /// Fails if a matrix has the wrong shape or a generator `x` of order `k`
    /// does not satisfy `rho(x)^k = 1`.
    pub fn new(group: &PermGroup, matrices: Vec<SparseMatrix>) -> Result<GLattice> {
        let gens = group.generators();
        if matrices.len() != gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} generators",
                matrices.len(),
                gens.len()
            )));
        }
        let rank = matrices.first().map_or(0, SparseMatrix::rows);
        let mut inverse = Vec::with_capacity(gens.len());
        for (k, (m, x)) in matrices.iter().zip(gens).enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch(format!("action matrix {k} is {}x{}, rank {rank}", m.rows(), m.cols())));
            }
            // rho(x)^(ord-1) is the inverse exactly when rho(x)^ord = 1
            let mut p = SparseMatrix::identity(rank);
            for _ in 1..x.order() {
                p = p.mul(m);
            }
            if !p.mul(m).is_identity() {
                return Err(Error::InvalidArgument(format!("action of generator {k} is not of order dividing {}", x.order())));
            }
            inverse.push(p);
        }
        Ok(GLattice { group: group.clone(), rank, action: Arc::new(matrices), inverse: Arc::new(inverse) })
    }

    /// Rank-0 lattices need the rank spelled out.
    pub fn zero(group: &PermGroup) -> GLattice {
        let m = vec![SparseMatrix::identity(0); group.generators().len()];
        GLattice { group: group.clone(), rank: 0, action: Arc::new(m.clone()), inverse: Arc::new(m) }
    }

    pub fn from_dense(group: &PermGroup, matrices: &[IntMatrix]) -> Result<GLattice> {
        GLattice::new(group, matrices.iter().map(SparseMatrix::from_dense).collect())
    }

    /// `Z` with trivial action.
    pub fn trivial(group: &PermGroup) -> GLattice {
        GLattice::new(group, vec![SparseMatrix::identity(1); group.generators().len()]).expect("valid")
    }

    /// `Z` with each element acting by the sign of its permutation.
    pub fn sign(group: &PermGroup) -> GLattice {
        let m = group
            .generators()
            .iter()
            .map(|g| {
                let s = if g.is_even() { 1 } else { -1 };
                SparseMatrix::from_rows(1, vec![vec![(0, Int::from(s))]])
            })
            .collect();
        GLattice::new(group, m).expect("valid")
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.action.len()
    }

    /// Action of generator `i` as a dense matrix.
    pub fn action_matrix(&self, i: usize) -> IntMatrix {
        self.action[i].to_dense()
    }

    pub fn sparse_action(&self, i: usize) -> &SparseMatrix {
        &self.action[i]
    }

    pub fn sparse_action_inverse(&self, i: usize) -> &SparseMatrix {
        &self.inverse[i]
    }

    pub fn action_matrices(&self) -> Vec<IntMatrix> {
        self.action.iter().map(SparseMatrix::to_dense).collect()
    }

    /// Matrix of a word in signed 1-based generator indices.
    pub fn word_matrix(&self, word: &[i32]) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.rank);
        for &w in word {
            let k = w.unsigned_abs() as usize - 1;
            acc = acc.mul(if w > 0 { &self.action[k] } else { &self.inverse[k] });
        }
        acc
    }

    /// `rho(g)` for an arbitrary element, via a shortest word.
    pub fn matrix_of(&self, g: &Permutation) -> Result<SparseMatrix> {
        let table = self.group.element_table()?;
        let word = table.word_of(g).ok_or_else(|| Error::NotInGroup(g.to_string()))?;
        let mut acc = SparseMatrix::identity(self.rank);
        for &k in word {
            acc = acc.mul(&self.action[k]);
        }
        Ok(acc)
    }

    pub fn dense_matrix_of(&self, g: &Permutation) -> Result<IntMatrix> {
        Ok(self.matrix_of(g)?.to_dense())
    }

    /// `v . g`.
    pub fn act(&self, v: &[Int], g: &Permutation) -> Result<Vec<Int>> {
        Ok(self.matrix_of(g)?.vec_mul(v))
    }

    /// Same action, regarded as a lattice for the same generators of a
    /// different handle on the group (used after relimiting).
    pub fn with_group(&self, group: &PermGroup) -> Result<GLattice> {
        if group.generators() != self.group.generators() {
            return Err(Error::GroupMismatch);
        }
        Ok(GLattice { group: group.clone(), ..self.clone() })
    }

    fn same_group(&self, other: &GLattice) -> bool {
        self.group.same_as(&other.group) || self.group.generators() == other.group.generators()
    }

    /// Restriction to the sublattice spanned by the rows of `basis`, which
    /// must be a G-stable set of linearly independent rows.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<GLattice> {
        if basis.cols() != self.rank {
            return Err(Error::DimensionMismatch(format!("basis in Z^{}, lattice rank {}", basis.cols(), self.rank)));
        }
        let solver = LatticeSolver::new(basis);
        if solver.rank() != basis.rows() {
            return Err(Error::InvalidArgument("sublattice basis is not linearly independent".into()));
        }
        let mut mats = Vec::new();
        for m in self.action.iter() {
            let mut rows = Vec::with_capacity(basis.rows());
            for b in basis.row_iter() {
                let img = m.vec_mul(b);
                let x = solver.solve(&img).ok_or_else(|| Error::NotContained("sublattice is not G-stable".into()))?;
                rows.push(x.into_iter().enumerate().filter(|e| !e.1.is_zero()).collect());
            }
            mats.push(SparseMatrix::from_rows(basis.rows(), rows));
        }
        GLattice::new(&self.group, mats)
    }

    /// The lattice quotient `L / S` for a G-stable saturated sublattice `S`
    /// (rows of `sub`), with the quotient map `L -> L/S`.
    pub fn quotient(&self, sub: &IntMatrix) -> Result<(GLattice, LatticeMap)> {
        let n = self.rank;
        let s = snf(sub);
        let k = s.rank;
        if s.invariant_factors().iter().any(|d| !d.is_one()) {
            return Err(Error::InvalidArgument("quotient by a non-saturated sublattice".into()));
        }
        // rows of V^-1 form a basis of Z^n whose first k rows span S
        let v = &s.v;
        let v_inv = s.v_inv();
        let cols: Vec<usize> = (k..n).collect();
        let q = SparseMatrix::from_dense(&v.select_cols(&cols));
        let lift = SparseMatrix::from_dense(&v_inv.row_range(k, n));
        let mats = self.action.iter().map(|m| lift.mul(m).mul(&q)).collect();
        let quot = GLattice::new(&self.group, mats)?;
        let map = LatticeMap::new(self, &quot, q)?;
        Ok((quot, map))
    }
}

impl fmt::Debug for GLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GLattice(rank {}, {:?})", self.rank, self.group)
    }
}

/// An equivariant homomorphism of G-lattices, `v -> v * matrix`.
#[derive(Clone)]
pub struct LatticeMap {
    source: GLattice,
    target: GLattice,
    matrix: SparseMatrix,
}

impl LatticeMap {
    /// Checks `rho_source(g) * matrix = matrix * rho_target(g)` on generators.
    pub fn new(source: &GLattice, target: &GLattice, matrix: SparseMatrix) -> Result<LatticeMap> {
        if !source.same_group(target) {
            return Err(Error::GroupMismatch);
        }
        if matrix.rows() != source.rank || matrix.cols() != target.rank {
            return Err(Error::DimensionMismatch(format!(
                "map matrix {}x{} between ranks {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.rank,
                target.rank
            )));
        }
        for generator in 0..source.generator_count() {
            if source.action[generator].mul(&matrix) != matrix.mul(&target.action[generator]) {
                return Err(Error::NotEquivariant { generator });
            }
        }
        Ok(LatticeMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn source(&self) -> &GLattice {
        &self.source
    }

    pub fn target(&self) -> &GLattice {
        &self.target
    }

    pub fn matrix(&self) -> IntMatrix {
        self.matrix.to_dense()
    }

    pub fn sparse_matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.vec_mul(v)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &LatticeMap) -> Result<LatticeMap> {
        if self.target.rank != next.source.rank {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        LatticeMap::new(&self.source, &next.target, self.matrix.mul(&next.matrix))
    }

    /// The transpose, as a map between the dual lattices.
    pub fn dual(&self) -> Result<LatticeMap> {
        LatticeMap::new(&dual(&self.target), &dual(&self.source), self.matrix.transpose())
    }
}

impl fmt::Debug for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeMap(rank {} -> rank {})", self.source.rank, self.target.rank)
    }
}

fn transversal(g: &PermGroup, h: &SubgroupHandle) -> Result<Transversal> {
    Transversal::new(g, h)
}

/// The permutation lattice `Z[G/H]` on the canonical right cosets.
pub fn perm_lattice(g: &PermGroup, h: &SubgroupHandle) -> Result<GLattice> {
    let t = transversal(g, h)?;
    perm_lattice_from(g, &t)
}

pub(crate) fn perm_lattice_from(g: &PermGroup, t: &Transversal) -> Result<GLattice> {
    let mats = g.generators().iter().map(|x| SparseMatrix::permutation(&t.action_of(x))).collect();
    GLattice::new(g, mats)
}

/// The Chevalley module `J_{G/H}`, rank `d - 1`.
///
/// Basis: the cosets `Hg_1, ..., Hg_{d-1}` in canonical order, the last
/// coset `Hg_d` dropped. Writing `Hg_i g = Hg_{sigma(i)}`, row `i` of the
/// matrix of `g` is the unit vector at `sigma(i)` when `sigma(i) < d`, and
/// the all `-1` row when `sigma(i) = d`.
pub fn chevalley_module(g: &PermGroup, h: &SubgroupHandle) -> Result<GLattice> {
    let t = transversal(g, h)?;
    let d = t.len();
    if d < 2 {
        return Err(Error::InvalidArgument(format!("Chevalley module needs index at least 2, got {d}")));
    }
    let mats = g
        .generators()
        .iter()
        .map(|x| {
            let sigma = t.action_of(x);
            let rows = (0..d - 1)
                .map(|i| {
                    if sigma[i] < d - 1 {
                        vec![(sigma[i], Int::one())]
                    } else {
                        (0..d - 1).map(|k| (k, Int::from(-1))).collect()
                    }
                })
                .collect();
            SparseMatrix::from_rows(d - 1, rows)
        })
        .collect();
    GLattice::new(g, mats)
}

/// The augmentation ideal `I_{G/H}` with basis `Hg_i - Hg_d` (`i < d`) and
/// its inclusion into `Z[G/H]`.
pub fn augmentation_ideal(g: &PermGroup, h: &SubgroupHandle) -> Result<(GLattice, LatticeMap)> {
    let t = transversal(g, h)?;
    let d = t.len();
    let last = d - 1;
    let mats = g
        .generators()
        .iter()
        .map(|x| {
            let sigma = t.action_of(x);
            let rows = (0..last)
                .map(|i| {
                    // (e_i - e_last) g = e_sigma(i) - e_sigma(last)
                    let mut r = Vec::new();
                    if sigma[i] != last {
                        r.push((sigma[i], Int::one()));
                    }
                    if sigma[last] != last {
                        r.push((sigma[last], Int::from(-1)));
                    }
                    r
                })
                .collect();
            SparseMatrix::from_rows(last, rows)
        })
        .collect();
    let ideal = GLattice::new(g, mats)?;
    let perm = perm_lattice_from(g, &t)?;
    let incl = SparseMatrix::from_rows(d, (0..last).map(|i| vec![(i, Int::one()), (last, Int::from(-1))]).collect());
    let map = LatticeMap::new(&ideal, &perm, incl)?;
    Ok((ideal, map))
}

/// `Hom(L, Z)`: generator `g` acts by the transpose of `rho(g)^-1`.
pub fn dual(l: &GLattice) -> GLattice {
    GLattice {
        group: l.group.clone(),
        rank: l.rank,
        action: Arc::new(l.inverse.iter().map(SparseMatrix::transpose).collect()),
        inverse: Arc::new(l.action.iter().map(SparseMatrix::transpose).collect()),
    }
}

pub fn direct_sum(a: &GLattice, b: &GLattice) -> Result<GLattice> {
    if !a.same_group(b) {
        return Err(Error::GroupMismatch);
    }
    let bd = |x: &Vec<SparseMatrix>, y: &Vec<SparseMatrix>| -> Vec<SparseMatrix> {
        x.iter().zip(y).map(|(p, q)| SparseMatrix::block_diagonal(p, q)).collect()
    };
    Ok(GLattice {
        group: a.group.clone(),
        rank: a.rank + b.rank,
        action: Arc::new(bd(&a.action, &b.action)),
        inverse: Arc::new(bd(&a.inverse, &b.inverse)),
    })
}

/// `Z[G] (x) L` with the diagonal action `(b_x (x) v) g = b_{xg} (x) v g`,
/// and the embedding `l -> sum_x b_x (x) l`.
///
/// The basis is ordered block by block along the element table, so the
/// first block belongs to the identity.
pub fn induced(l: &GLattice) -> Result<(GLattice, LatticeMap)> {
    let g = &l.group;
    let cap = g.limits().max_induced_order;
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "induced module", size: g.order(), cap });
    }
    let table = g.element_table()?;
    let n = table.len();
    let r = l.rank;
    let mats = g
        .generators()
        .iter()
        .zip(l.action.iter())
        .map(|(x, rho)| {
            let mut rows = Vec::with_capacity(n * r);
            for e in &table.elements {
                let target = table.index_of(&(e * x)).expect("closed");
                for j in 0..r {
                    rows.push(rho.row(j).map(|(k, v)| (target * r + k, v.clone())).collect());
                }
            }
            SparseMatrix::from_rows(n * r, rows)
        })
        .collect();
    let ind = GLattice::new(g, mats)?;
    let emb = SparseMatrix::from_rows(n * r, (0..r).map(|j| (0..n).map(|x| (x * r + j, Int::one())).collect()).collect());
    let map = LatticeMap::new(l, &ind, emb)?;
    Ok((ind, map))
}

/// Saturated basis (rows) of the vectors fixed by every element of `s`.
pub fn fixed_sublattice(l: &GLattice, s: &SubgroupHandle) -> Result<IntMatrix> {
    if s.parent().degree() != l.group.degree() {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    let mut stacked = IntMatrix::zeros(l.rank, 0);
    for x in s.generators() {
        if !l.group.contains(x) {
            return Err(Error::NotSubgroup(format!("{x} is not in the lattice's group")));
        }
        stacked = stacked.hstack(&l.matrix_of(x)?.minus_identity().to_dense());
    }
    if stacked.cols() == 0 {
        return Ok(IntMatrix::identity(l.rank));
    }
    Ok(kernel_basis(&stacked))
}

/// Serializable description of a lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub group: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub rank: usize,
    pub matrices: Vec<SparseMatrix>,
}

impl GLattice {
    pub fn to_record(&self, group_spec: &str) -> LatticeRecord {
        LatticeRecord {
            group: group_spec.to_string(),
            degree: self.group.degree(),
            generators: self.group.generators().iter().map(|g| g.to_string()).collect(),
            rank: self.rank,
            matrices: self.action.to_vec(),
        }
    }

    /// Rebuilds a lattice over `group`, whose generators must print as
    /// recorded.
    pub fn from_record(group: &PermGroup, rec: &LatticeRecord) -> Result<GLattice> {
        let gens: Vec<String> = group.generators().iter().map(|g| g.to_string()).collect();
        if gens != rec.generators {
            return Err(Error::GroupMismatch);
        }
        let l = GLattice::new(group, rec.matrices.clone())?;
        if l.rank != rec.rank {
            return Err(Error::DimensionMismatch("recorded rank".into()));
        }
        Ok(l)
    }
}
