//! Connection sets and circulant graphs `C_n(A)`: validation, construction,
//! complement algebra, and the unit-multiplier maps `v ↦ tv`.

use crate::graph::{Graph, DEFAULT_ORDER_CAP};
use crate::zn;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("modulus {n} is out of range (need 1 ≤ n ≤ {cap})", cap = DEFAULT_ORDER_CAP)]
    BadModulus { n: u64 },
    #[error("0 is not a valid generator")]
    ZeroGenerator,
    #[error("generator {value} is out of range for Z_{modulus}")]
    OutOfRange { value: u64, modulus: u64 },
    #[error("connection set is not inverse-closed: {member} present without {inverse}")]
    NotInverseClosed { member: u64, inverse: u64 },
    #[error("cannot parse connection-set token {token:?}")]
    InvalidToken { token: String },
}

/// A validated inverse-closed subset of `Z_n \ {0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    modulus: u64,
    members: Vec<u64>,
}

impl ConnectionSet {
    pub fn new(modulus: u64, members: impl IntoIterator<Item = u64>) -> Result<Self, SpecError> {
        if modulus == 0 || modulus > DEFAULT_ORDER_CAP as u64 {
            return Err(SpecError::BadModulus { n: modulus });
        }
        let mut members: Vec<u64> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m == 0 {
                return Err(SpecError::ZeroGenerator);
            }
            if m >= modulus {
                return Err(SpecError::OutOfRange {
                    value: m,
                    modulus,
                });
            }
        }
        for &m in &members {
            let inv = modulus - m;
            if members.binary_search(&inv).is_err() {
                return Err(SpecError::NotInverseClosed {
                    member: m,
                    inverse: inv,
                });
            }
        }
        Ok(ConnectionSet { modulus, members })
    }

    /// Parses a comma-separated token list. `±a` expands to `{a, n−a}`,
    /// `-a` resolves to `n−a`, and a bare `a` stands for itself (so its
    /// inverse must be listed too unless `2a ≡ 0 mod n`). An empty string is
    /// the empty set.
    pub fn parse(modulus: u64, tokens: &str) -> Result<Self, SpecError> {
        if modulus == 0 || modulus > DEFAULT_ORDER_CAP as u64 {
            return Err(SpecError::BadModulus { n: modulus });
        }
        let mut members = Vec::new();
        for raw in tokens.split(',') {
            let token = raw.trim();
            if token.is_empty() {
                continue;
            }
            let (pm, body) = if let Some(rest) = token.strip_prefix('±') {
                (true, rest)
            } else if let Some(rest) = token.strip_prefix("+-") {
                (true, rest)
            } else if let Some(rest) = token.strip_prefix("+/-") {
                (true, rest)
            } else if let Some(rest) = token.strip_prefix('-') {
                (false, rest)
            } else {
                (false, token)
            };
            let value: u64 = body.trim().parse().map_err(|_| SpecError::InvalidToken {
                token: token.to_string(),
            })?;
            if value == 0 {
                return Err(SpecError::ZeroGenerator);
            }
            if value >= modulus {
                return Err(SpecError::OutOfRange {
                    value,
                    modulus,
                });
            }
            let negated = zn::Residue::new(-(value as i64), modulus).value();
            if pm {
                members.push(value);
                members.push(negated);
            } else if token.starts_with('-') {
                members.push(negated);
            } else {
                members.push(value);
            }
        }
        ConnectionSet::new(modulus, members)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Sorted members of the set.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// The complement `Z_n \ ({0} ∪ A)`; inverse-closure is preserved.
    pub fn complement(&self) -> ConnectionSet {
        let members = (1..self.modulus).filter(|a| !self.contains(*a));
        ConnectionSet::new(self.modulus, members).expect("complement of a valid set is valid")
    }
}

/// A circulant graph `C_n(A)` given by its connection set, with the derived
/// flags every report echoes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantSpec {
    set: ConnectionSet,
}

impl CirculantSpec {
    pub fn new(set: ConnectionSet) -> Self {
        CirculantSpec { set }
    }

    pub fn parse(n: u64, tokens: &str) -> Result<Self, SpecError> {
        Ok(CirculantSpec::new(ConnectionSet::parse(n, tokens)?))
    }

    pub fn from_members(n: u64, members: impl IntoIterator<Item = u64>) -> Result<Self, SpecError> {
        Ok(CirculantSpec::new(ConnectionSet::new(n, members)?))
    }

    pub fn n(&self) -> u64 {
        self.set.modulus()
    }

    pub fn set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn members(&self) -> &[u64] {
        self.set.members()
    }

    pub fn valency(&self) -> usize {
        self.set.len()
    }

    pub fn is_complete(&self) -> bool {
        self.set.len() as u64 == self.n() - 1
    }

    pub fn is_empty_graph(&self) -> bool {
        self.set.is_empty()
    }

    /// `gcd(n, A)`, which is the component count; `n` for the empty set.
    pub fn component_count_formula(&self) -> u64 {
        self.members()
            .iter()
            .fold(self.n(), |acc, &a| zn::gcd(acc, a))
    }

    pub fn is_connected_formula(&self) -> bool {
        self.component_count_formula() == 1
    }

    /// Bipartiteness from the generator parities: each component is a copy of
    /// `C_{n/g}(A/g)` with `g = gcd(n, A)`, which is bipartite iff `n/g` is
    /// even and every reduced generator is odd.
    pub fn is_bipartite_formula(&self) -> bool {
        if self.set.is_empty() {
            return true;
        }
        let g = self.component_count_formula();
        let reduced_n = self.n() / g;
        reduced_n.is_multiple_of(2) && self.members().iter().all(|&a| (a / g) % 2 == 1)
    }

    /// Builds the graph: `u ~ v` iff `u − v mod n ∈ A`.
    pub fn build(&self) -> Graph {
        let n = self.n() as usize;
        let mut g = Graph::new(n).expect("modulus validated against the cap");
        for u in 0..n {
            for &a in self.members() {
                let v = (u + a as usize) % n;
                if u != v {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Canonical textual form `C_n(a1,a2,...)` with members ascending.
    pub fn canonical(&self) -> String {
        let body: Vec<String> = self.members().iter().map(|a| a.to_string()).collect();
        format!("C_{}({})", self.n(), body.join(","))
    }

    pub fn complement(&self) -> CirculantSpec {
        CirculantSpec::new(self.set.complement())
    }
}

impl std::fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// The unit-multiplier stabilizer `{t ∈ U(n) : t·A = A}`, sorted. Always
/// contains `1` and `n−1`, and forms a group under multiplication mod `n`.
pub fn multiplier_stabilizer(set: &ConnectionSet) -> Vec<u64> {
    let n = set.modulus();
    zn::units(n)
        .into_iter()
        .filter(|&t| multiply_set(set, t) == *set.members())
        .collect()
}

fn multiply_set(set: &ConnectionSet, t: u64) -> Vec<u64> {
    let n = set.modulus();
    let mut out: Vec<u64> = set.members().iter().map(|&a| (a * t) % n).collect();
    out.sort_unstable();
    out
}

/// Searches for a unit `t` with `t·A = B`. A hit certifies `C_n(A) ≅ C_n(B)`;
/// absence does not certify non-isomorphism.
pub fn multiplier_isomorphic(a: &ConnectionSet, b: &ConnectionSet) -> Option<u64> {
    if a.modulus() != b.modulus() || a.len() != b.len() {
        return None;
    }
    zn::units(a.modulus())
        .into_iter()
        .find(|&t| multiply_set(a, t) == *b.members())
}

/// The lexicographically smallest member list among `{t·A : t ∈ U(n)}`;
/// multiplier-isomorphic sets share this representative.
pub fn multiplier_canonical_members(set: &ConnectionSet) -> Vec<u64> {
    zn::units(set.modulus())
        .into_iter()
        .map(|t| multiply_set(set, t))
        .min()
        .unwrap_or_default()
}

/// All valid connection sets for `Z_n`, in a fixed deterministic order
/// (subsets of the inverse-pair blocks `{a, n−a}`, smallest blocks first).
pub fn enumerate_connection_sets(n: u64) -> Vec<ConnectionSet> {
    assert!(n >= 1 && n <= DEFAULT_ORDER_CAP as u64);
    let mut blocks: Vec<Vec<u64>> = Vec::new();
    for a in 1..=(n / 2) {
        if a == n - a {
            blocks.push(vec![a]);
        } else {
            blocks.push(vec![a, n - a]);
        }
    }
    assert!(blocks.len() < 32, "n too large for exhaustive enumeration");
    let mut out = Vec::with_capacity(1 << blocks.len());
    for mask in 0u32..(1 << blocks.len()) {
        let members = blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, b)| b.iter().copied());
        out.push(ConnectionSet::new(n, members).expect("blocks are inverse-closed"));
    }
    out
}
