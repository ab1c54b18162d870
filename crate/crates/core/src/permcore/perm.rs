use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Hard ceiling imposed by the compact image representation.
pub const MAX_POINTS: usize = 255;

/// A permutation of `{1, ..., degree}`.
///
/// Products compose left to right: `(p * q)(i) = q(p(i))`, so `p` is
/// applied first. The derived ordering is lexicographic on the image tuple,
/// which is the order used to pick canonical coset representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        assert!(degree <= MAX_POINTS);
        Permutation { images: (0..degree as u8).collect() }
    }

    /// From 1-based images: `images[i-1]` is the image of point `i`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        if n == 0 || n > MAX_POINTS {
            return Err(Error::DegreeOutOfRange { degree: n, max: MAX_POINTS });
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a bijection of 1..{n}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// Product of the given cycles (1-based points), applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        if degree == 0 || degree > MAX_POINTS {
            return Err(Error::DegreeOutOfRange { degree, max: MAX_POINTS });
        }
        let mut acc = Permutation::identity(degree);
        for cyc in cycles {
            let mut img: Vec<u8> = (0..degree as u8).collect();
            for (k, &p) in cyc.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidArgument(format!("point {p} outside 1..{degree}")));
                }
                if cyc[..k].contains(&p) {
                    return Err(Error::InvalidArgument(format!("point {p} repeated in a cycle")));
                }
                let next = cyc[(k + 1) % cyc.len()];
                img[p - 1] = (next - 1) as u8;
            }
            acc = &acc * &Permutation { images: img };
        }
        Ok(acc)
    }

    /// The cycle `(a_1 a_2 ... a_k)` on `degree` points.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Permutation> {
        Permutation::from_cycles(degree, &[points])
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 0-based image of the 0-based point `i`.
    #[inline]
    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based image tuple.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `g^-1 * self * g`, the conjugate under the right-action convention.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        &(&g.inverse() * self) * g
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Nontrivial cycles, each starting at its smallest point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Same permutation on `degree` points; fails if a moved point would be
    /// dropped.
    pub fn with_degree(&self, degree: usize) -> Result<Permutation> {
        if degree >= self.degree() {
            let mut images = self.images.clone();
            images.extend(self.degree() as u8..degree as u8);
            return Ok(Permutation { images });
        }
        if self.images[degree..].iter().enumerate().any(|(k, &x)| x as usize != degree + k) {
            return Err(Error::InvalidArgument(format!("{self} moves points beyond {degree}")));
        }
        Ok(Permutation { images: self.images[..degree].to_vec() })
    }

    /// Largest moved point, 0 for the identity.
    pub fn largest_moved_point(&self) -> usize {
        (0..self.degree()).rev().find(|&i| self.images[i] as usize != i).map_or(0, |i| i + 1)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl<'a> Mul<&'a Permutation> for &'a Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &'a Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, e.g. `(1 2 3)(4 5)`; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_left_factor_first() {
        let a = Permutation::cycle(3, &[1, 2]).unwrap();
        let b = Permutation::cycle(3, &[2, 3]).unwrap();
        let ab = &a * &b;
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(ab.images(), vec![3, 1, 2]);
        assert_eq!(ab.to_string(), "(1 3 2)");
    }

    #[test]
    fn inverse_and_order() {
        let p = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!((&p * &p.inverse()).is_identity());
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert!(!p.is_even());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert!(Permutation::cycle(3, &[1, 1]).is_err());
        assert!(Permutation::cycle(3, &[0, 1]).is_err());
    }

    #[test]
    fn degree_change() {
        let p = Permutation::cycle(3, &[1, 2]).unwrap();
        let q = p.with_degree(5).unwrap();
        assert_eq!(q.images(), vec![2, 1, 3, 4, 5]);
        assert_eq!(q.with_degree(2).unwrap().images(), vec![2, 1]);
        assert!(q.with_degree(1).is_err());
    }
}
