//! Monomials in a fixed polynomial ring, and index subsets used as cell
//! labels in based complexes.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Ambient polynomial ring, identified by its ordered variable names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(vars: Vec<String>) -> Arc<PolyRing> {
        assert!(!vars.is_empty(), "ring needs at least one variable");
        Arc::new(PolyRing { vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The monomial with the given exponent vector.
    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length mismatch");
        Monomial { exps }
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            exps: vec![0; self.nvars()],
        }
    }

    pub fn var(&self, i: usize) -> Monomial {
        assert!(i < self.nvars());
        let mut exps = vec![0; self.nvars()];
        exps[i] = 1;
        Monomial { exps }
    }
}

/// A monomial, stored as its exponent vector.
///
/// Ordering is lexicographic on exponent vectors, which is a total order
/// refining divisibility only in the squarefree case; it is used purely to
/// make iteration and rendering deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The unit monomial (all exponents zero) in `nvars` variables.
    pub fn unit(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip(other, |a, b| a.checked_add(b).expect("exponent overflow"))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip(other, |a, b| a.max(b))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip(other, |a, b| a.min(b))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.exps.len(), other.exps.len(), "nvars mismatch");
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Quotient `self / other`. Panics unless `other` divides `self`.
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        assert!(other.divides(self), "inexact monomial division");
        self.zip(other, |a, b| a - b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_unit()
    }

    /// Indices of variables appearing with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn render(&self, ring: &PolyRing) -> String {
        assert_eq!(self.exps.len(), ring.nvars(), "ring mismatch");
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.vars[i].clone()),
                _ => parts.push(format!("{}^{}", ring.vars[i], e)),
            }
        }
        parts.join("*")
    }

    fn zip(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len(), "nvars mismatch");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// A subset of generator indices `0..n` (n at most 31), stored as a bitmask.
///
/// The derived total order sorts first by cardinality, then by the index
/// tuple lexicographically; e.g. {0,1} < {0,2} < {1,2} < {0,1,2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        assert!(n <= 31, "subset universe too large");
        Subset(if n == 0 { 0 } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Subset {
        assert!(i < 31);
        Subset(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Subset {
        let mut s = Subset::EMPTY;
        for &i in indices {
            s = s.insert(i);
        }
        s
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn from_bits(bits: u32) -> Subset {
        Subset(bits)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 31 && self.0 & (1 << i) != 0
    }

    #[must_use]
    pub fn insert(&self, i: usize) -> Subset {
        assert!(i < 31);
        Subset(self.0 | (1 << i))
    }

    #[must_use]
    pub fn remove(&self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(&self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(&self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(&self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(&self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(&self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending iterator over member indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..31).filter(move |i| bits & (1 << i) != 0)
    }

    /// All subsets of `self`, in ascending `Subset` order.
    pub fn subsets(&self) -> Vec<Subset> {
        let members: Vec<usize> = self.iter().collect();
        let mut out = Vec::with_capacity(1 << members.len());
        for mask in 0u32..(1 << members.len()) {
            let mut s = Subset::EMPTY;
            for (j, &i) in members.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    s = s.insert(i);
                }
            }
            out.push(s);
        }
        out.sort();
        out
    }

    /// Cell label: `u` followed by 1-based indices, e.g. `u134`. When any
    /// index exceeds 9 the indices are wrapped in braces and comma
    /// separated: `u{1,13}`. The empty set renders as `1`.
    pub fn label(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let indices: Vec<usize> = self.iter().map(|i| i + 1).collect();
        if indices.iter().all(|&i| i <= 9) {
            let digits: String = indices.iter().map(|i| i.to_string()).collect();
            format!("u{digits}")
        } else {
            let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
            format!("u{{{}}}", parts.join(","))
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Subset) -> Ordering {
        let by_len = self.len().cmp(&other.len());
        if by_len != Ordering::Equal {
            return by_len;
        }
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // Equal cardinality: the index tuples first differ at the lowest
        // bit of the symmetric difference, and whichever set contains that
        // bit has the smaller tuple entry there.
        let diff = self.0 ^ other.0;
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Subset) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}
