//! Standard permutation groups with fixed, documented generator lists.
//!
//! | group | degree | generators (in order) |
//! |-------|--------|------------------------|
//! | `A_n`, n odd  | n | `(1 2 3)`, `(1 2 ... n)` |
//! | `A_n`, n even | n | `(1 2 3)`, `(2 3 ... n)` |
//! | `S_n` | n | `(1 2)`, `(1 2 ... n)` |
//! | `C_n` | n | `(1 2 ... n)` |
//! | `D_n` (order 2n) | n | `(1 2 ... n)`, `i -> n+1-i` |
//! | `C_a x C_b x ...` | a+b+... | one cycle per factor on consecutive blocks |
//!
//! Degenerate cases drop duplicate or trivial generators (`A_3` has the
//! single generator `(1 2 3)`, `S_2` only `(1 2)`, trivial groups none).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    /// Dihedral group of order `2n` acting on `n` points.
    Dihedral(usize),
    /// Direct product of cyclic groups of the given orders.
    CyclicProduct(Vec<usize>),
}

impl GroupKind {
    pub fn degree(&self) -> usize {
        match self {
            GroupKind::Alternating(n) | GroupKind::Symmetric(n) | GroupKind::Cyclic(n) | GroupKind::Dihedral(n) => *n,
            GroupKind::CyclicProduct(f) => f.iter().sum(),
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        self.build_with(Limits::default())
    }

    pub fn build_with(&self, limits: Limits) -> Result<PermGroup> {
        let degree = self.degree();
        if degree == 0 || degree > limits.max_degree {
            return Err(Error::DegreeOutOfRange { degree, max: limits.max_degree });
        }
        let gens = self.standard_generators()?;
        PermGroup::build(degree, gens, limits, Some(self.clone()))
    }

    /// The documented generator list.
    pub fn standard_generators(&self) -> Result<Vec<Permutation>> {
        let n = self.degree();
        let range = |a: usize, b: usize| -> Vec<usize> { (a..=b).collect() };
        let gens = match self {
            GroupKind::Alternating(n) => {
                let n = *n;
                if n < 3 {
                    vec![]
                } else if n == 3 {
                    vec![Permutation::cycle(3, &[1, 2, 3])?]
                } else if n % 2 == 1 {
                    vec![Permutation::cycle(n, &[1, 2, 3])?, Permutation::cycle(n, &range(1, n))?]
                } else {
                    vec![Permutation::cycle(n, &[1, 2, 3])?, Permutation::cycle(n, &range(2, n))?]
                }
            }
            GroupKind::Symmetric(n) => {
                let n = *n;
                match n {
                    1 => vec![],
                    2 => vec![Permutation::cycle(2, &[1, 2])?],
                    _ => vec![Permutation::cycle(n, &[1, 2])?, Permutation::cycle(n, &range(1, n))?],
                }
            }
            GroupKind::Cyclic(n) => {
                if *n == 1 {
                    vec![]
                } else {
                    vec![Permutation::cycle(*n, &range(1, *n))?]
                }
            }
            GroupKind::Dihedral(n) => {
                if *n < 3 {
                    return Err(Error::ParameterOutOfRange { what: "dihedral group D_n (n >= 3)".into(), value: *n });
                }
                let refl: Vec<usize> = (1..=*n).map(|i| n + 1 - i).collect();
                vec![Permutation::cycle(*n, &range(1, *n))?, Permutation::from_images(&refl)?]
            }
            GroupKind::CyclicProduct(f) => {
                if f.is_empty() || f.contains(&0) {
                    return Err(Error::ParameterOutOfRange { what: "cyclic factor order".into(), value: 0 });
                }
                let mut out = Vec::new();
                let mut start = 1;
                for &a in f {
                    if a > 1 {
                        out.push(Permutation::cycle(n, &range(start, start + a - 1))?);
                    }
                    start += a;
                }
                out
            }
        };
        Ok(gens)
    }

    /// Expected order, for cross-checks.
    pub fn expected_order(&self) -> u64 {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match self {
            GroupKind::Alternating(n) => {
                if *n < 2 { 1 } else { fact(*n) / 2 }
            }
            GroupKind::Symmetric(n) => fact(*n),
            GroupKind::Cyclic(n) => *n as u64,
            GroupKind::Dihedral(n) => 2 * *n as u64,
            GroupKind::CyclicProduct(f) => f.iter().map(|&a| a as u64).product(),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Alternating(n) => write!(f, "A{n}"),
            GroupKind::Symmetric(n) => write!(f, "S{n}"),
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::CyclicProduct(fs) => {
                let parts: Vec<String> = fs.iter().map(|a| format!("C{a}")).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    GroupKind::Alternating(n).build()
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    GroupKind::Symmetric(n).build()
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    GroupKind::Cyclic(n).build()
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    GroupKind::Dihedral(n).build()
}

/// `C_2 x C_2` acting on four points as `<(1 2), (3 4)>`.
pub fn klein_four() -> Result<PermGroup> {
    GroupKind::CyclicProduct(vec![2, 2]).build()
}

pub fn cyclic_product(orders: &[usize]) -> Result<PermGroup> {
    GroupKind::CyclicProduct(orders.to_vec()).build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(klein_four().unwrap().order(), 4);
        assert_eq!(cyclic_product(&[2, 3]).unwrap().order(), 6);
        for n in 1..=8 {
            assert_eq!(alternating(n).unwrap().order(), GroupKind::Alternating(n).expected_order());
            assert_eq!(symmetric(n).unwrap().order(), GroupKind::Symmetric(n).expected_order());
        }
    }

    #[test]
    fn generators_as_documented() {
        let a6 = alternating(6).unwrap();
        let s: Vec<String> = a6.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(s, vec!["(1 2 3)", "(2 3 4 5 6)"]);
        let a5 = alternating(5).unwrap();
        assert_eq!(a5.generators()[1].to_string(), "(1 2 3 4 5)");
        assert_eq!(dihedral(4).unwrap().generators()[1].to_string(), "(1 4)(2 3)");
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(alternating(17), Err(Error::DegreeOutOfRange { .. })));
        assert!(dihedral(2).is_err());
    }
}
