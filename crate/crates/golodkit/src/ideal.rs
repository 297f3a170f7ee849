//! Monomial ideals presented by an ordered generator list.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, PolyRing, Subset};

/// Environment variable overriding the generator-count cap.
pub const MAX_GENERATORS_ENV: &str = "GOLODKIT_MAX_GENERATORS";

const DEFAULT_MAX_GENERATORS: usize = 20;
const WARN_GENERATORS: usize = 14;

/// Cap on the number of generators accepted by [`MonomialIdeal::new`].
///
/// Defaults to 20; override with `GOLODKIT_MAX_GENERATORS`. Values above 31
/// are clamped since cell labels are 31-bit subsets.
pub fn generator_cap() -> usize {
    let cap = std::env::var(MAX_GENERATORS_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_GENERATORS);
    cap.min(31)
}

/// A monomial ideal with a fixed, ordered generator list.
///
/// The generator order is part of the data: cell labels, differentials and
/// everything downstream refer to generators by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds an ideal, rejecting empty generator lists, unit generators and
    /// lists longer than [`generator_cap`]. Emits a warning on stderr for
    /// generator counts where full-resolution computations get expensive.
    pub fn new(ring: Arc<PolyRing>, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let cap = generator_cap();
        if gens.len() > cap {
            return Err(Error::TooManyGenerators {
                found: gens.len(),
                cap,
            });
        }
        for g in &gens {
            assert_eq!(g.nvars(), ring.nvars(), "generator from a different ring");
            if g.is_unit() {
                return Err(Error::UnitGenerator(g.render(&ring)));
            }
        }
        if gens.len() > WARN_GENERATORS {
            eprintln!(
                "warning: {} generators; subset-indexed complexes grow as 2^n",
                gens.len()
            );
        }
        Ok(MonomialIdeal { ring, gens })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, i: usize) -> &Monomial {
        &self.gens[i]
    }

    /// Drops generators divisible by another generator, keeping the input
    /// order of the survivors. Returns the reduced ideal and whether the
    /// input was already minimal.
    pub fn minimalize(&self) -> (MonomialIdeal, bool) {
        let mut keep = vec![true; self.gens.len()];
        for i in 0..self.gens.len() {
            for j in 0..self.gens.len() {
                if i == j || !keep[j] {
                    continue;
                }
                if self.gens[j].divides(&self.gens[i])
                    && (self.gens[j] != self.gens[i] || j < i)
                {
                    keep[i] = false;
                    break;
                }
            }
        }
        let gens: Vec<Monomial> = self
            .gens
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(g, _)| g.clone())
            .collect();
        let was_minimal = gens.len() == self.gens.len();
        (
            MonomialIdeal {
                ring: self.ring.clone(),
                gens,
            },
            was_minimal,
        )
    }

    /// `lcm` of the generators indexed by `cells`; the empty set yields 1.
    pub fn multidegree(&self, cells: Subset) -> Monomial {
        let mut m = self.ring.one();
        for i in cells.iter() {
            m = m.lcm(&self.gens[i]);
        }
        m
    }

    /// Partitions the generator indices in `cells` into connected components
    /// of the graph whose edges join generators with nontrivial gcd.
    /// Components are sorted by smallest member.
    pub fn cl_classes(&self, cells: Subset) -> Vec<Subset> {
        let members: Vec<usize> = cells.iter().collect();
        let mut seen = Subset::EMPTY;
        let mut classes = Vec::new();
        for &start in &members {
            if seen.contains(start) {
                continue;
            }
            let mut component = Subset::EMPTY;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                if component.contains(i) {
                    continue;
                }
                component = component.insert(i);
                seen = seen.insert(i);
                for &j in &members {
                    if !component.contains(j) && !self.gens[i].is_coprime(&self.gens[j]) {
                        stack.push(j);
                    }
                }
            }
            classes.push(component);
        }
        classes
    }

    /// Number of gcd-connected components among the generators in `cells`.
    pub fn cl(&self, cells: Subset) -> usize {
        self.cl_classes(cells).len()
    }

    /// The set of distinct lcms of nonempty generator subsets.
    pub fn lcm_lattice(&self) -> BTreeSet<Monomial> {
        let full = Subset::full(self.gens.len());
        let mut lattice = BTreeSet::new();
        for s in full.subsets() {
            if !s.is_empty() {
                lattice.insert(self.multidegree(s));
            }
        }
        lattice
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fourgen() -> MonomialIdeal {
        let r = PolyRing::new(vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()]);
        let gens = vec![
            r.monomial(vec![1, 1, 0, 0]),
            r.monomial(vec![0, 1, 1, 0]),
            r.monomial(vec![0, 1, 0, 1]),
            r.monomial(vec![1, 0, 0, 1]),
        ];
        MonomialIdeal::new(r, gens).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        let r = PolyRing::new(vec!["x".into()]);
        assert!(matches!(
            MonomialIdeal::new(r.clone(), vec![]),
            Err(Error::EmptyIdeal)
        ));
        assert!(matches!(
            MonomialIdeal::new(r.clone(), vec![r.one()]),
            Err(Error::UnitGenerator(_))
        ));
    }

    #[test]
    fn minimalize_keeps_order() {
        let r = PolyRing::new(vec!["x".into(), "y".into()]);
        let i = MonomialIdeal::new(
            r.clone(),
            vec![
                r.monomial(vec![2, 1]), // divisible by xy
                r.monomial(vec![1, 1]),
                r.monomial(vec![0, 3]),
            ],
        )
        .unwrap();
        let (min, was) = i.minimalize();
        assert!(!was);
        assert_eq!(
            min.generators(),
            &[r.monomial(vec![1, 1]), r.monomial(vec![0, 3])]
        );
        let (min2, was2) = min.minimalize();
        assert!(was2);
        assert_eq!(min2.generators(), min.generators());
    }

    #[test]
    fn minimalize_deduplicates() {
        let r = PolyRing::new(vec!["x".into()]);
        let i = MonomialIdeal::new(
            r.clone(),
            vec![r.monomial(vec![2]), r.monomial(vec![2])],
        )
        .unwrap();
        let (min, was) = i.minimalize();
        assert!(!was);
        assert_eq!(min.num_generators(), 1);
    }

    #[test]
    fn multidegrees() {
        let i = fourgen();
        let r = i.ring().clone();
        assert_eq!(i.multidegree(Subset::EMPTY), r.one());
        assert_eq!(
            i.multidegree(Subset::from_indices(&[0, 1])),
            r.monomial(vec![1, 1, 1, 0])
        );
        assert_eq!(
            i.multidegree(Subset::full(4)),
            r.monomial(vec![1, 1, 1, 1])
        );
    }

    #[test]
    fn cl_components() {
        let i = fourgen();
        // All four generators share variables pairwise around a cycle.
        assert_eq!(i.cl(Subset::full(4)), 1);
        // x2x3 and x1x4 are coprime.
        let s = Subset::from_indices(&[1, 3]);
        assert_eq!(i.cl(s), 2);
        assert_eq!(
            i.cl_classes(s),
            vec![Subset::singleton(1), Subset::singleton(3)]
        );
        assert_eq!(i.cl(Subset::EMPTY), 0);
    }

    #[test]
    fn lcm_lattice_contents() {
        let i = fourgen();
        let r = i.ring().clone();
        let lattice = i.lcm_lattice();
        assert!(lattice.contains(&r.monomial(vec![1, 1, 0, 0])));
        assert!(lattice.contains(&r.monomial(vec![1, 1, 1, 1])));
        // The unit is not an lcm of a nonempty subset here.
        assert!(!lattice.contains(&r.one()));
    }
}
