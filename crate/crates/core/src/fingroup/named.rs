//! Standard small groups.
//!
//! The plain constructors panic when the group exceeds the default element
//! cap; [`build`] reports that as an error instead.

use std::sync::Arc;

use super::{FiniteGroup, Limits};
use crate::perm::Perm;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    Symmetric,
    Alternating,
    /// `D<n>`: the symmetries of an n-gon, of order `2n`.
    Dihedral,
}

fn cycle(n: usize, pts: &[usize]) -> Perm {
    Perm::from_cycles(n, &[pts.to_vec()]).expect("valid cycle")
}

pub fn build(family: Family, n: usize, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::Precondition("group parameter must be positive".into()));
    }
    let gens: Vec<Perm> = match family {
        Family::Cyclic => {
            if n == 1 {
                vec![Perm::identity(1)]
            } else {
                vec![cycle(n, &(1..=n).collect::<Vec<_>>())]
            }
        }
        Family::Symmetric => match n {
            1 => vec![Perm::identity(1)],
            2 => vec![cycle(2, &[1, 2])],
            _ => vec![cycle(n, &[1, 2]), cycle(n, &(1..=n).collect::<Vec<_>>())],
        },
        Family::Alternating => {
            if n < 3 {
                vec![Perm::identity(n)]
            } else {
                (3..=n).map(|i| cycle(n, &[1, 2, i])).collect()
            }
        }
        Family::Dihedral => match n {
            1 => vec![cycle(2, &[1, 2])],
            2 => vec![cycle(4, &[1, 2]), cycle(4, &[3, 4])],
            _ => {
                let rot = cycle(n, &(1..=n).collect::<Vec<_>>());
                let pairs: Vec<Vec<usize>> = (2..=n).map(|i| vec![i, n + 2 - i]).filter(|c| c[0] < c[1]).collect();
                let refl = Perm::from_cycles(n, &pairs).expect("reflection");
                vec![rot, refl]
            }
        },
    };
    FiniteGroup::close(&gens, limits)
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    build(Family::Cyclic, n, &Limits::default()).expect("cyclic group within cap")
}

pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
    build(Family::Symmetric, n, &Limits::default()).expect("symmetric group within cap")
}

pub fn alternating(n: usize) -> Arc<FiniteGroup> {
    build(Family::Alternating, n, &Limits::default()).expect("alternating group within cap")
}

pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
    build(Family::Dihedral, n, &Limits::default()).expect("dihedral group within cap")
}

pub fn trivial() -> Arc<FiniteGroup> {
    cyclic(1)
}

/// The quaternion group, in its regular representation.
pub fn quaternion() -> Arc<FiniteGroup> {
    // elements ±1, ±i, ±j, ±k numbered 0..8 as 1,i,j,k,-1,-i,-j,-k
    let mul = |a: usize, b: usize| -> usize {
        let (sa, ua) = (a / 4, a % 4);
        let (sb, ub) = (b / 4, b % 4);
        let (s, u) = match (ua, ub) {
            (0, u) | (u, 0) => (0, u),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        };
        ((sa + sb + s) % 2) * 4 + u
    };
    let right = |g: usize| Perm::from_images((0..8).map(|x| mul(x, g) as u32).collect()).expect("regular");
    FiniteGroup::close(&[right(1), right(2)], &Limits::default()).expect("order 8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for n in 1..=7 {
            assert_eq!(cyclic(n).order(), n);
            assert_eq!(dihedral(n).order(), 2 * n);
        }
        let fact = [1, 1, 2, 6, 24, 120, 720];
        for n in 1..=6 {
            assert_eq!(symmetric(n).order(), fact[n]);
            assert_eq!(alternating(n).order(), fact[n].div_ceil(2).max(1));
        }
        assert_eq!(quaternion().order(), 8);
        let q = quaternion();
        assert_eq!((0..8).filter(|&x| q.element_order(x) == 4).count(), 6);
        assert!(build(Family::Cyclic, 0, &Limits::default()).is_err());
    }

    #[test]
    fn dihedral_is_nonabelian_from_three() {
        assert!(dihedral(2).is_abelian());
        assert!(!dihedral(3).is_abelian());
        assert!(!dihedral(4).is_abelian());
    }
}
