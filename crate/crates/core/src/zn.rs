//! Arithmetic in the additive group `Z_n`: residues, cyclic subgroups,
//! cosets, and units. Every coset test used by twin detection lives here.

use num_integer::Integer;

/// Greatest common divisor, with `gcd(0, n) = n`.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Canonicalizes an integer into the residue range `[0, n)`.
pub fn canon(value: i64, modulus: u64) -> u64 {
    assert!(modulus >= 1, "modulus must be positive");
    let n = modulus as i64;
    value.rem_euclid(n) as u64
}

/// A residue in `Z_n`, canonicalized to `[0, n)` on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Self {
        Residue {
            value: canon(value, modulus),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Additive inverse `n - a` (or `0` for `a = 0`).
    pub fn neg(&self) -> Self {
        Residue {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    pub fn add(&self, other: u64) -> Self {
        Residue {
            value: (self.value + other % self.modulus) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn mul(&self, t: u64) -> Self {
        Residue {
            value: (self.value * (t % self.modulus)) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// Order of the residue in the additive group, `n / gcd(n, a)`.
    pub fn additive_order(&self) -> u64 {
        self.modulus / gcd(self.modulus, self.value)
    }

    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus) == 1
    }
}

/// The additive cyclic subgroup `⟨w⟩` of `Z_n`.
///
/// Its elements are the multiples of `gcd(n, w)`, so the subgroup has order
/// `n / gcd(n, w)` and index `gcd(n, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    modulus: u64,
    generator: u64,
    stride: u64,
    elements: Vec<u64>,
}

impl CyclicSubgroup {
    pub fn new(modulus: u64, generator: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        assert!(generator < modulus, "generator must lie in [0, n)");
        let stride = gcd(modulus, generator);
        let elements: Vec<u64> = (0..modulus / stride).map(|i| i * stride).collect();
        CyclicSubgroup {
            modulus,
            generator,
            stride,
            elements,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Sorted elements `{0, g, 2g, …}` where `g = gcd(n, w)`.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Number of cosets, `n / |⟨w⟩|`.
    pub fn index(&self) -> u64 {
        self.stride
    }

    pub fn contains(&self, v: u64) -> bool {
        v < self.modulus && v.is_multiple_of(self.stride)
    }

    /// The coset `v + ⟨w⟩`, sorted.
    pub fn coset_of(&self, v: u64) -> Vec<u64> {
        assert!(v < self.modulus);
        let rep = v % self.stride;
        (0..self.order()).map(|i| rep + i * self.stride).collect()
    }

    /// All cosets partitioning `Z_n`, in increasing order of minimum element;
    /// the trivial coset (the subgroup itself) comes first.
    pub fn cosets(&self) -> Vec<Vec<u64>> {
        (0..self.stride).map(|r| self.coset_of(r)).collect()
    }
}

/// The additive cyclic subgroup generated by `w` in `Z_n`.
pub fn subgroup(n: u64, w: u64) -> CyclicSubgroup {
    CyclicSubgroup::new(n, w)
}

/// The units of `Z_n`: `{t : gcd(t, n) = 1}`, sorted.
///
/// For `n = 1` this is `{0}` (the ring's unity is the zero residue).
pub fn units(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&t| gcd(t, n) == 1).collect()
}

/// Tests whether `members` is exactly a union of cosets of `sub`.
///
/// With `include_trivial = false` the trivial coset (the subgroup itself)
/// must not be among the included cosets. `members` must be a subset of
/// `[0, n)`; duplicates are ignored.
pub fn is_union_of_cosets(members: &[u64], sub: &CyclicSubgroup, include_trivial: bool) -> bool {
    let n = sub.modulus();
    let mut in_set = vec![false; n as usize];
    for &m in members {
        assert!(m < n, "member {m} out of range for Z_{n}");
        in_set[m as usize] = true;
    }
    for coset in sub.cosets() {
        let hits = coset.iter().filter(|&&v| in_set[v as usize]).count();
        if hits == 0 {
            continue;
        }
        if hits != coset.len() {
            return false;
        }
        if !include_trivial && coset[0] == 0 {
            return false;
        }
    }
    true
}
