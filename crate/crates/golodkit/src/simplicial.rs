//! Simplicial complexes on the generator index set, their reduced homology
//! over the coefficient field, and the acyclicity criterion deciding when
//! the associated based complex is a resolution.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::monomial::{Monomial, PolyRing, Subset};

/// An abstract simplicial complex on vertices `0..vertices`.
///
/// The face set is downward closed and contains the empty face whenever the
/// complex is nonempty. The complex with no faces at all is permitted and
/// distinct from the complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    faces: BTreeSet<Subset>,
}

/// Outcome of the resolution test, with a failing multidegree when negative.
///
/// `witness` is the smallest failing multidegree together with a homological
/// degree in which the restricted subcomplex has nonzero reduced homology.
/// A complex with no faces never resolves and carries no witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionVerdict {
    pub resolves: bool,
    pub witness: Option<(Monomial, i32)>,
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn empty(vertices: usize) -> SimplicialComplex {
        assert!(vertices <= 31);
        SimplicialComplex {
            vertices,
            faces: BTreeSet::new(),
        }
    }

    /// Downward closure of the given facets.
    pub fn from_facets(vertices: usize, facets: &[Subset]) -> SimplicialComplex {
        assert!(vertices <= 31);
        let mut faces = BTreeSet::new();
        for f in facets {
            assert!(
                f.is_subset_of(Subset::full(vertices)),
                "facet outside vertex set"
            );
            for s in f.subsets() {
                faces.insert(s);
            }
        }
        SimplicialComplex { vertices, faces }
    }

    /// Builds from an explicit face list, rejecting sets that are not
    /// downward closed.
    pub fn from_faces(vertices: usize, faces: BTreeSet<Subset>) -> Result<SimplicialComplex> {
        assert!(vertices <= 31);
        for f in &faces {
            if !f.is_subset_of(Subset::full(vertices)) {
                return Err(Error::InvalidSimplicialComplex(format!(
                    "face {} uses a vertex outside 1..={}",
                    f.label(),
                    vertices
                )));
            }
            for i in f.iter() {
                if !faces.contains(&f.remove(i)) {
                    return Err(Error::InvalidSimplicialComplex(format!(
                        "face {} present but its subset {} is missing",
                        f.label(),
                        f.remove(i).label()
                    )));
                }
            }
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    /// The full simplex on `n` vertices (all subsets are faces).
    pub fn full_simplex(n: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, &[Subset::full(n)])
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn faces(&self) -> &BTreeSet<Subset> {
        &self.faces
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: Subset) -> bool {
        self.faces.contains(&face)
    }

    /// Dimension: largest face cardinality minus one. `None` when the
    /// complex has no faces; `Some(-1)` for the complex `{∅}`.
    pub fn dim(&self) -> Option<i32> {
        self.faces
            .iter()
            .map(|f| f.len() as i32 - 1)
            .max()
    }

    /// Inclusion-maximal faces, ascending.
    pub fn facets(&self) -> Vec<Subset> {
        self.faces
            .iter()
            .filter(|f| {
                (0..self.vertices)
                    .all(|v| f.contains(v) || !self.faces.contains(&f.insert(v)))
            })
            .copied()
            .collect()
    }

    /// The subcomplex of faces whose multidegree divides `mu`.
    pub fn restrict(&self, ideal: &MonomialIdeal, mu: &Monomial) -> SimplicialComplex {
        assert_eq!(
            self.vertices,
            ideal.num_generators(),
            "complex not on the ideal's generators"
        );
        let faces: BTreeSet<Subset> = self
            .faces
            .iter()
            .filter(|f| ideal.multidegree(**f).divides(mu))
            .copied()
            .collect();
        // Divisibility is monotone in the face, so closure is automatic.
        debug_assert!(faces
            .iter()
            .all(|f| f.iter().all(|i| faces.contains(&f.remove(i)))));
        SimplicialComplex {
            vertices: self.vertices,
            faces,
        }
    }

    /// Ranks of reduced simplicial homology over `field`, indexed from
    /// degree −1 (index 0) up to the dimension of the complex. The empty
    /// complex yields an empty vector.
    pub fn reduced_homology_ranks(&self, field: Field) -> Vec<usize> {
        let dim = match self.dim() {
            None => return Vec::new(),
            Some(d) => d,
        };
        // layers[c] = faces of cardinality c; chain degree d has cardinality d+1.
        let mut layers: Vec<Vec<Subset>> = vec![Vec::new(); (dim + 2) as usize];
        for f in &self.faces {
            layers[f.len()].push(*f);
        }
        let mut boundary_ranks = vec![0usize; layers.len() + 1];
        for c in 1..layers.len() {
            let cols: BTreeMap<Subset, usize> = layers[c - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (*f, i))
                .collect();
            let rows: Vec<Vec<_>> = layers[c]
                .iter()
                .map(|f| {
                    let mut row = vec![field.zero(); cols.len()];
                    for (k, v) in f.iter().enumerate() {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        row[cols[&f.remove(v)]] = field.integer(sign);
                    }
                    row
                })
                .collect();
            boundary_ranks[c] = linalg::rank(rows);
        }
        (0..layers.len())
            .map(|c| layers[c].len() - boundary_ranks[c] - boundary_ranks[c + 1])
            .collect()
    }

    pub fn is_acyclic(&self, field: Field) -> bool {
        self.reduced_homology_ranks(field).iter().all(|&r| r == 0)
    }

    /// Decides whether the based complex spanned by the faces resolves the
    /// quotient by `ideal`: every restriction to a multidegree from the lcm
    /// lattice must be empty or acyclic. A complex with no faces never
    /// resolves.
    pub fn is_resolution(&self, ideal: &MonomialIdeal, field: Field) -> ResolutionVerdict {
        if self.is_empty() {
            return ResolutionVerdict {
                resolves: false,
                witness: None,
            };
        }
        for mu in ideal.lcm_lattice() {
            let restricted = self.restrict(ideal, &mu);
            if restricted.is_empty() {
                continue;
            }
            let ranks = restricted.reduced_homology_ranks(field);
            if let Some(d) = ranks.iter().position(|&r| r > 0) {
                return ResolutionVerdict {
                    resolves: false,
                    witness: Some((mu, d as i32 - 1)),
                };
            }
        }
        ResolutionVerdict {
            resolves: true,
            witness: None,
        }
    }

    /// The ideal of minimal non-faces in `k[x1..x_vertices]`. Fails for the
    /// full simplex, which has no non-faces.
    pub fn stanley_reisner(&self) -> Result<MonomialIdeal> {
        let ring = PolyRing::new(
            (1..=self.vertices).map(|i| format!("x{i}")).collect(),
        );
        let mut gens = Vec::new();
        for s in Subset::full(self.vertices).subsets() {
            if self.faces.contains(&s) {
                continue;
            }
            let minimal = s.iter().all(|i| self.faces.contains(&s.remove(i)));
            if minimal {
                let mut exps = vec![0u32; self.vertices];
                for i in s.iter() {
                    exps[i] = 1;
                }
                gens.push(ring.monomial(exps));
            }
        }
        MonomialIdeal::new(ring, gens)
    }
}

/// Rebuilds the complex whose minimal non-faces generate the given
/// square-free ideal: faces are the subsets containing no generator support.
pub fn stanley_reisner_inverse(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    let supports: Vec<Subset> = ideal
        .generators()
        .iter()
        .map(|g| {
            if g.is_squarefree() {
                Ok(Subset::from_indices(&g.support()))
            } else {
                Err(Error::NotSquarefree(g.render(ideal.ring())))
            }
        })
        .collect::<Result<_>>()?;
    let n = ideal.ring().nvars();
    let faces: BTreeSet<Subset> = Subset::full(n)
        .subsets()
        .into_iter()
        .filter(|f| !supports.iter().any(|s| s.is_subset_of(*f)))
        .collect();
    Ok(SimplicialComplex {
        vertices: n,
        faces,
    })
}
