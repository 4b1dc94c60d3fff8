//! Permutations of `0..n` stored as image arrays.

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u16).collect(),
        }
    }

    /// Builds a permutation from its image list; panics if not a bijection.
    pub fn from_images(images: Vec<u16>) -> Perm {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!((v as usize) < n && !seen[v as usize], "not a bijection");
            seen[v as usize] = true;
        }
        Perm { images }
    }

    pub fn from_usize_images(images: &[usize]) -> Perm {
        Perm::from_images(images.iter().map(|&v| v as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// Composition `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&v| self.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (u, &v) in self.images.iter().enumerate() {
            inv[v as usize] = u as u16;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(u, &v)| u == v as usize)
    }

    /// Checks that the permutation maps edges to edges and non-edges to
    /// non-edges.
    pub fn preserves(&self, g: &Graph) -> bool {
        let n = g.order();
        if n != self.degree() {
            return false;
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if g.has_edge(u, v) != g.has_edge(self.apply(u), self.apply(v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Fixed points as a bitmask; degree must be at most 64.
    pub fn fixed_mask(&self) -> u64 {
        assert!(self.degree() <= 64);
        let mut m = 0u64;
        for (u, &v) in self.images.iter().enumerate() {
            if u == v as usize {
                m |= 1 << u;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let a = Perm::from_usize_images(&[1, 2, 0]);
        let b = Perm::from_usize_images(&[0, 2, 1]);
        assert_eq!(a.compose(&b), Perm::from_usize_images(&[1, 0, 2]));
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.inverse(), Perm::from_usize_images(&[2, 0, 1]));
    }

    #[test]
    fn preservation() {
        let g = Graph::path(3);
        assert!(Perm::from_usize_images(&[2, 1, 0]).preserves(&g));
        assert!(!Perm::from_usize_images(&[1, 0, 2]).preserves(&g));
    }
}
