use std::fmt;

use super::AlgebraError;

/// A bijection on `{0..n-1}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = images.len();
        if n == 0 || n > super::MAX_ORDER {
            return Err(AlgebraError::InvalidPermutation(format!("order {n} out of range")));
        }
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(AlgebraError::InvalidPermutation(format!("image {x} of {i} is not below {n}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(AlgebraError::InvalidPermutation(format!("value {x} repeated")));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0 && n <= super::MAX_ORDER);
        Permutation { images: (0..n).map(|x| x as u8).collect() }
    }

    /// Builds the map `x -> f(x)`, failing when it is not a bijection.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self, AlgebraError> {
        Self::new((0..n).map(f).collect())
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1]]` for the transposition (0 1).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, AlgebraError> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(AlgebraError::InvalidPermutation(format!("{x} out of range")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(Self::new(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `self.then(other)` maps `x` to `other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.order(), other.order());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Every permutation of `{0..n-1}` in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation { images: current.clone() });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}
