//! Finitely presented groups and Todd-Coxeter coset enumeration.
//!
//! Words are sequences of signed 1-based generator indices: `k` is the
//! k-th generator and `-k` its inverse.

use std::fmt;

use crate::error::{Error, Result};

pub type Word = Vec<i32>;

pub fn word_inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn word_power(w: &[i32], e: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * e).collect()
}

pub fn concat(parts: &[&[i32]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// `[g, h] = g h g^-1 h^-1`.
pub fn commutator(g: &[i32], h: &[i32]) -> Word {
    concat(&[g, h, &word_inverse(g), &word_inverse(h)])
}

/// Formats a word with the given generator names, e.g. `t1 t2^-1`.
pub fn format_word(w: &[i32], names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&x| {
            let n = &names[x.unsigned_abs() as usize - 1];
            if x > 0 { n.clone() } else { format!("{n}^-1") }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpGroup {
    pub generator_count: usize,
    pub relators: Vec<Word>,
    pub names: Vec<String>,
}

impl FpGroup {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<FpGroup> {
        let names = (1..=generator_count).map(|k| format!("x{k}")).collect();
        FpGroup::with_names(names, relators)
    }

    pub fn with_names(names: Vec<String>, relators: Vec<Word>) -> Result<FpGroup> {
        let n = names.len();
        for r in &relators {
            if r.is_empty() {
                return Err(Error::InvalidPresentation("empty relator".into()));
            }
            if let Some(&x) = r.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > n) {
                return Err(Error::InvalidPresentation(format!("letter {x} outside 1..{n}")));
            }
        }
        Ok(FpGroup { generator_count: n, relators, names })
    }

    pub fn with_relator(&self, r: Word) -> Result<FpGroup> {
        let mut rel = self.relators.clone();
        rel.push(r);
        FpGroup::with_names(self.names.clone(), rel)
    }

    /// Order by enumerating the cosets of the trivial subgroup.
    pub fn order(&self, max_cosets: usize) -> Result<usize> {
        Ok(todd_coxeter(self, &[], max_cosets)?.coset_count())
    }
}

impl fmt::Display for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.names.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| format_word(r, &self.names)).collect();
        write!(f, "{} >", rels.join(", "))
    }
}

/// A complete coset table. Cosets are numbered from 0, coset 0 being the
/// subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// `action[k][c]` is the coset `c . x_{k+1}`.
    pub action: Vec<Vec<u32>>,
    pub subgroup_words: Vec<Word>,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.action.first().map_or(1, Vec::len)
    }

    /// Coset reached from `c` by reading `w`.
    pub fn trace(&self, c: usize, w: &[i32]) -> usize {
        let mut c = c;
        for &x in w {
            let k = x.unsigned_abs() as usize - 1;
            c = if x > 0 {
                self.action[k][c] as usize
            } else {
                self.action[k].iter().position(|&d| d as usize == c).expect("permutation")
            };
        }
        c
    }

    /// Closed and consistent: every generator column is a permutation,
    /// every relator fixes every coset, every subgroup word fixes coset 0.
    pub fn is_consistent(&self, g: &FpGroup) -> bool {
        let n = self.coset_count();
        let perms_ok = self.action.iter().all(|col| {
            let mut seen = vec![false; n];
            col.iter().all(|&d| (d as usize) < n && !std::mem::replace(&mut seen[d as usize], true))
        });
        perms_ok
            && (0..n).all(|c| g.relators.iter().all(|r| self.trace(c, r) == c))
            && self.subgroup_words.iter().all(|w| self.trace(0, w) == 0)
    }

    /// Permutation of cosets induced by a word (0-based images).
    pub fn word_action(&self, w: &[i32]) -> Vec<u32> {
        let inv: Vec<Vec<u32>> = self
            .action
            .iter()
            .map(|col| {
                let mut v = vec![0u32; col.len()];
                for (c, &d) in col.iter().enumerate() {
                    v[d as usize] = c as u32;
                }
                v
            })
            .collect();
        let n = self.coset_count();
        (0..n as u32)
            .map(|mut c| {
                for &x in w {
                    let k = x.unsigned_abs() as usize - 1;
                    c = if x > 0 { self.action[k][c as usize] } else { inv[k][c as usize] };
                }
                c
            })
            .collect()
    }
}

const NONE: u32 = u32::MAX;

/// Working state of an HLT enumeration.
struct Enumerator<'a> {
    g: &'a FpGroup,
    /// columns: 2k for generator k, 2k+1 for its inverse
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
}

fn col(x: i32) -> usize {
    let k = x.unsigned_abs() as usize - 1;
    if x > 0 { 2 * k } else { 2 * k + 1 }
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a FpGroup, max: usize) -> Enumerator<'a> {
        Enumerator { g, table: vec![vec![NONE; 2 * g.generator_count]], parent: vec![0], live: 1, max, queue: Vec::new() }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.live >= self.max {
            return Err(Error::CosetLimit { limit: self.max });
        }
        let n = self.table.len();
        self.table.push(vec![NONE; 2 * self.g.generator_count]);
        self.parent.push(n as u32);
        self.live += 1;
        self.table[c][x] = n as u32;
        self.table[n][inv_col(x)] = c as u32;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo as u32;
        self.live -= 1;
        self.queue.push(hi as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i] as usize;
            i += 1;
            for x in 0..self.table[e].len() {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                self.table[f][inv_col(x)] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x] as usize;
                    self.merge(f1, t);
                } else if self.table[f1][inv_col(x)] != NONE {
                    let t = self.table[f1][inv_col(x)] as usize;
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1 as u32;
                    self.table[f1][inv_col(x)] = e1 as u32;
                }
            }
        }
    }

    /// Scans `w` at coset `a` from both ends. With `fill`, gaps are closed
    /// by defining new cosets; otherwise only deductions and coincidences
    /// are recorded.
    fn scan(&mut self, a: usize, w: &[usize], fill: bool) -> Result<()> {
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]] as usize;
                i += 1;
            }
            if i == j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j > i && self.table[b][inv_col(w[j - 1])] != NONE {
                b = self.table[b][inv_col(w[j - 1])] as usize;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b as u32;
                self.table[b][inv_col(w[i])] = f as u32;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scans every live coset under every relator without defining
    /// anything; run when the table is full.
    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.table.len() {
            for r in rels {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    fn run(mut self, subgroup: &[Word]) -> Result<CosetTable> {
        let rels: Vec<Vec<usize>> = self.g.relators.iter().map(|r| r.iter().map(|&x| col(x)).collect()).collect();
        let subs: Vec<Vec<usize>> = subgroup.iter().map(|r| r.iter().map(|&x| col(x)).collect()).collect();
        let ncols = 2 * self.g.generator_count;
        for w in &subs {
            self.scan_with_lookahead(0, w, &rels)?;
        }
        let mut c = 0;
        while c < self.table.len() {
            for r in &rels {
                if !self.alive(c) {
                    break;
                }
                self.scan_with_lookahead(c, r, &rels)?;
            }
            for x in 0..ncols {
                if !self.alive(c) {
                    break;
                }
                if self.table[c][x] == NONE {
                    self.define_with_lookahead(c, x, &rels)?;
                }
            }
            c += 1;
        }
        Ok(self.compact(subgroup))
    }

    fn scan_with_lookahead(&mut self, c: usize, w: &[usize], rels: &[Vec<usize>]) -> Result<()> {
        match self.scan(c, w, true) {
            Err(Error::CosetLimit { .. }) => {
                self.lookahead(rels);
                if self.live >= self.max {
                    return Err(Error::CosetLimit { limit: self.max });
                }
                if self.alive(c) { self.scan_with_lookahead(c, w, rels) } else { Ok(()) }
            }
            other => other,
        }
    }

    fn define_with_lookahead(&mut self, c: usize, x: usize, rels: &[Vec<usize>]) -> Result<()> {
        match self.define(c, x) {
            Err(Error::CosetLimit { .. }) => {
                self.lookahead(rels);
                if self.live >= self.max {
                    return Err(Error::CosetLimit { limit: self.max });
                }
                if self.alive(c) && self.table[c][x] == NONE { self.define(c, x) } else { Ok(()) }
            }
            other => other,
        }
    }

    fn compact(self, subgroup: &[Word]) -> CosetTable {
        let mut new_index = vec![NONE; self.table.len()];
        let mut n = 0u32;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.alive(c) {
                *slot = n;
                n += 1;
            }
        }
        let action = (0..self.g.generator_count)
            .map(|k| {
                (0..self.table.len())
                    .filter(|&c| self.alive(c))
                    .map(|c| new_index[self.table[c][2 * k] as usize])
                    .collect()
            })
            .collect();
        CosetTable { action, subgroup_words: subgroup.to_vec() }
    }
}

/// Coset enumeration (HLT strategy).
///
/// Cosets are processed in order of definition; each live coset is scanned
/// under every relator, closing gaps by defining new cosets, and then gets
/// an image under every generator and inverse. Coincidences are merged with
/// union-find, always keeping the smaller number. When the number of live
/// cosets reaches `max_cosets`, a lookahead pass scans the whole table
/// without defining cosets; if that frees nothing the enumeration fails
/// with [`Error::CosetLimit`].
pub fn todd_coxeter(g: &FpGroup, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    for w in subgroup {
        if let Some(&x) = w.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > g.generator_count) {
            return Err(Error::InvalidPresentation(format!("subgroup word letter {x} out of range")));
        }
    }
    let table = Enumerator::new(g, max_cosets.max(1)).run(subgroup)?;
    debug_assert!(table.is_consistent(g));
    Ok(table)
}

/// Largest `n` accepted by the Schur cover constructions by default.
pub const SCHUR_COVER_CAP: usize = 6;

/// The Schur covering group `U` of `S_n`: generators `z, t_1, ..., t_{n-1}`
/// with relations `z^2 = 1`, `z t_i = t_i z`, `t_i^2 = z`,
/// `(t_i t_{i+1})^3 = z` and `t_i t_j = z t_j t_i` for `|i - j| >= 2`.
///
/// Generator 1 is `z`, generator `i + 1` is `t_i`.
pub fn schur_cover_sn(n: usize) -> Result<FpGroup> {
    schur_cover_sn_capped(n, SCHUR_COVER_CAP)
}

pub fn schur_cover_sn_capped(n: usize, cap: usize) -> Result<FpGroup> {
    if n < 4 || n > cap {
        return Err(Error::ParameterOutOfRange { what: format!("Schur cover of S_n (4 <= n <= {cap})"), value: n });
    }
    let z = 1i32;
    let t = |i: usize| (i + 1) as i32;
    let mut rels: Vec<Word> = vec![vec![z, z]];
    for i in 1..n {
        rels.push(commutator(&[z], &[t(i)]));
    }
    for i in 1..n {
        rels.push(vec![t(i), t(i), -z]);
    }
    for i in 1..n - 1 {
        rels.push(concat(&[&word_power(&[t(i), t(i + 1)], 3), &[-z]]));
    }
    for i in 1..n {
        for j in i + 2..n {
            // t_i t_j = z t_j t_i
            rels.push(vec![t(i), t(j), -t(i), -t(j), -z]);
        }
    }
    let mut names = vec!["z".to_string()];
    names.extend((1..n).map(|i| format!("t{i}")));
    FpGroup::with_names(names, rels)
}

/// `e_i = t_1 t_{i+1}` as a word in the Schur cover generators.
pub fn e_word(i: usize) -> Word {
    vec![2, (i + 2) as i32]
}

/// The preimage `V` of `A_n` in the Schur cover.
#[derive(Clone, Debug)]
pub struct PreimageAn {
    pub n: usize,
    pub cover: FpGroup,
    /// Enumeration of `U` over `<z, e_1, ..., e_{n-2}>`.
    pub table: CosetTable,
    /// Words generating `V`: `z` followed by `e_1, ..., e_{n-2}`.
    pub generators: Vec<Word>,
    /// `|U|`, from enumerating over the trivial subgroup.
    pub cover_order: usize,
    /// `|V|`, the orbit of the identity coset under the generators of `V`
    /// in the regular representation of `U`.
    pub order: usize,
}

impl PreimageAn {
    pub fn index(&self) -> usize {
        self.table.coset_count()
    }
}

pub fn preimage_an(n: usize, max_cosets: usize) -> Result<PreimageAn> {
    let cover = schur_cover_sn(n)?;
    let mut generators = vec![vec![1]];
    generators.extend((1..=n - 2).map(e_word));
    let table = todd_coxeter(&cover, &generators, max_cosets)?;
    let regular = todd_coxeter(&cover, &[], max_cosets)?;
    let perms: Vec<Vec<u32>> = generators.iter().map(|w| regular.word_action(w)).collect();
    let mut seen = vec![false; regular.coset_count()];
    seen[0] = true;
    let mut orbit = vec![0u32];
    let mut i = 0;
    while i < orbit.len() {
        let c = orbit[i] as usize;
        for p in &perms {
            let d = p[c] as usize;
            if !seen[d] {
                seen[d] = true;
                orbit.push(d as u32);
            }
        }
        i += 1;
    }
    Ok(PreimageAn { n, cover, table, generators, cover_order: regular.coset_count(), order: orbit.len() })
}

/// Checks `z = [e_1^-1 e_2 e_1, e_2]` in the regular representation of the
/// Schur cover, where two words are equal iff they move the identity coset
/// to the same coset. This verifies the identity in the finite group `U`
/// for this `n` only.
pub fn verify_commutator_claim(n: usize, max_cosets: usize) -> Result<bool> {
    let cover = schur_cover_sn(n)?;
    let regular = todd_coxeter(&cover, &[], max_cosets)?;
    let (e1, e2) = (e_word(1), e_word(2));
    let lhs = vec![1];
    let rhs = commutator(&concat(&[&word_inverse(&e1), &e2, &e1]), &e2);
    Ok(regular.trace(0, &lhs) == regular.trace(0, &rhs))
}
