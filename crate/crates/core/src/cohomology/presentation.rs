use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fpgroups::{commutator, todd_coxeter, word_power, FpGroup, Word};
use crate::limits::Limits;
use crate::permcore::{GroupKind, PermGroup, Permutation};

/// A finite presentation together with permutations realizing the abstract
/// generators.
///
/// The realizing permutations need not be the generators of the group the
/// presentation is used with; they only have to generate the same group.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generator_count: usize,
    /// Words in signed 1-based generator indices.
    pub relators: Vec<Word>,
    pub images: Vec<Permutation>,
    pub names: Vec<String>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>, images: Vec<Permutation>) -> Result<Presentation> {
        if names.len() != images.len() {
            return Err(Error::InvalidPresentation(format!("{} names for {} images", names.len(), images.len())));
        }
        FpGroup::with_names(names.clone(), relators.clone())?;
        Ok(Presentation { generator_count: names.len(), relators, images, names })
    }

    pub fn fp_group(&self) -> FpGroup {
        FpGroup::with_names(self.names.clone(), self.relators.clone()).expect("validated at construction")
    }

    /// Evaluates a word on the images.
    pub fn evaluate(&self, degree: usize, w: &[i32]) -> Permutation {
        let mut acc = Permutation::identity(degree);
        for &x in w {
            let p = &self.images[x.unsigned_abs() as usize - 1];
            acc = if x > 0 { &acc * p } else { &acc * &p.inverse() };
        }
        acc
    }

    /// The images as generators of a permutation group (on `g`'s degree
    /// and caps), so element words come out in presentation generators.
    pub fn image_group(&self, g: &PermGroup) -> Result<PermGroup> {
        PermGroup::with_limits(g.degree(), self.images.clone(), g.limits().clone())
    }

    /// Checks that the presentation defines `g`: every relator is trivial
    /// on the images, the images generate `g`, and coset enumeration of the
    /// abstract presentation gives `|g|` cosets.
    pub fn validate(&self, g: &PermGroup) -> Result<()> {
        for p in &self.images {
            if p.degree() != g.degree() || !g.contains(p) {
                return Err(Error::InvalidPresentation(format!("image {p} is not in the group")));
            }
        }
        for r in &self.relators {
            if !self.evaluate(g.degree(), r).is_identity() {
                return Err(Error::InvalidPresentation(format!("relator {r:?} is not trivial on the images")));
            }
        }
        let generated = self.image_group(g)?.order();
        if generated != g.order() {
            return Err(Error::InvalidPresentation(format!("images generate order {generated}, group has {}", g.order())));
        }
        let enumerated = todd_coxeter(&self.fp_group(), &[], g.limits().max_cosets)?.coset_count() as u64;
        if enumerated != g.order() {
            return Err(Error::InvalidPresentation(format!("presented group has order {enumerated}, expected {}", g.order())));
        }
        Ok(())
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// Standard presentation for a catalog group, validated against the
/// permutation group by coset enumeration.
///
/// * `C_n`: `<x | x^n>`, `x = (1 2 ... n)`.
/// * `S_n`: Coxeter generators `t_i = (i i+1)`, relators `t_i^2`,
///   `(t_i t_{i+1})^3`, `(t_i t_j)^2` for `|i - j| >= 2` (the Schur cover
///   relations with `z = 1`).
/// * `A_n`: `x_i = (1 2 i+2)` for `i <= n - 2`, relators `x_i^3` and
///   `(x_i x_j)^2` for `i < j`.
/// * `D_n`: `<r, s | r^n, s^2, (s r)^2>` on the catalog generators.
/// * products of cyclic groups: one generator per nontrivial factor,
///   power relators and commutators.
pub fn presentation_catalog(kind: &GroupKind) -> Result<Arc<Presentation>> {
    presentation_catalog_with(kind, Limits::default())
}

/// [`presentation_catalog`] with explicit caps for the validation step.
pub fn presentation_catalog_with(kind: &GroupKind, limits: Limits) -> Result<Arc<Presentation>> {
    let g = kind.build_with(limits)?;
    let p = raw_presentation(kind)?;
    p.validate(&g)?;
    Ok(Arc::new(p))
}

/// The catalog presentation without the validation step.
pub fn raw_presentation(kind: &GroupKind) -> Result<Presentation> {
    let n = kind.degree();
    let cycle = |pts: &[usize]| Permutation::cycle(n, pts);
    match kind {
        GroupKind::Cyclic(m) => {
            if *m == 1 {
                return Presentation::new(vec![], vec![], vec![]);
            }
            let pts: Vec<usize> = (1..=*m).collect();
            Presentation::new(vec!["x".into()], vec![vec![1; *m]], vec![cycle(&pts)?])
        }
        GroupKind::Symmetric(m) => {
            let k = m.saturating_sub(1);
            let mut rels = Vec::new();
            for i in 1..=k as i32 {
                rels.push(vec![i, i]);
            }
            for i in 1..k as i32 {
                rels.push(word_power(&[i, i + 1], 3));
            }
            for i in 1..=k as i32 {
                for j in i + 2..=k as i32 {
                    rels.push(word_power(&[i, j], 2));
                }
            }
            let images = (1..=k).map(|i| cycle(&[i, i + 1])).collect::<Result<Vec<_>>>()?;
            Presentation::new(names("t", k), rels, images)
        }
        GroupKind::Alternating(m) => {
            let k = m.saturating_sub(2);
            let mut rels = Vec::new();
            for i in 1..=k as i32 {
                rels.push(vec![i, i, i]);
            }
            for i in 1..=k as i32 {
                for j in i + 1..=k as i32 {
                    rels.push(word_power(&[i, j], 2));
                }
            }
            let images = (1..=k).map(|i| cycle(&[1, 2, i + 2])).collect::<Result<Vec<_>>>()?;
            Presentation::new(names("x", k), rels, images)
        }
        GroupKind::Dihedral(_) => {
            let gens = kind.standard_generators()?;
            let rels = vec![vec![1; n], vec![2, 2], word_power(&[2, 1], 2)];
            Presentation::new(vec!["r".into(), "s".into()], rels, gens)
        }
        GroupKind::CyclicProduct(f) => {
            let gens = kind.standard_generators()?;
            let orders: Vec<usize> = f.iter().copied().filter(|&a| a > 1).collect();
            let k = orders.len();
            let mut rels: Vec<Word> = orders.iter().enumerate().map(|(i, &a)| vec![(i + 1) as i32; a]).collect();
            for i in 1..=k as i32 {
                for j in i + 1..=k as i32 {
                    rels.push(commutator(&[i], &[j]));
                }
            }
            Presentation::new(names("x", k), rels, gens)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_validates() {
        for kind in [
            GroupKind::Cyclic(5),
            GroupKind::Cyclic(1),
            GroupKind::Symmetric(3),
            GroupKind::Symmetric(4),
            GroupKind::Alternating(4),
            GroupKind::Alternating(5),
            GroupKind::Alternating(6),
            GroupKind::Alternating(7),
            GroupKind::Dihedral(4),
            GroupKind::Dihedral(5),
            GroupKind::CyclicProduct(vec![2, 2]),
            GroupKind::CyclicProduct(vec![2, 3, 1]),
        ] {
            presentation_catalog(&kind).unwrap_or_else(|e| panic!("{kind}: {e}"));
        }
    }

    #[test]
    fn s4_and_c5_shapes() {
        let p = presentation_catalog(&GroupKind::Symmetric(4)).unwrap();
        assert_eq!(p.generator_count, 3);
        assert_eq!(p.relators.len(), 6);
        let c = presentation_catalog(&GroupKind::Cyclic(5)).unwrap();
        assert_eq!(c.relators, vec![vec![1; 5]]);
        assert_eq!(todd_coxeter(&c.fp_group(), &[], 100).unwrap().coset_count(), 5);
        let a5 = presentation_catalog(&GroupKind::Alternating(5)).unwrap();
        assert_eq!(todd_coxeter(&a5.fp_group(), &[], 1000).unwrap().coset_count(), 60);
    }

    #[test]
    fn bad_presentation_rejected() {
        let g = GroupKind::Symmetric(3).build().unwrap();
        // drops the braid relation: infinite dihedral group
        let p = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![vec![1, 1], vec![2, 2]],
            vec![Permutation::cycle(3, &[1, 2]).unwrap(), Permutation::cycle(3, &[2, 3]).unwrap()],
        )
        .unwrap();
        assert!(p.validate(&g).is_err());
    }
}
