//! Cone complexes and fans.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::cone::{Cone, ConeJson};
use crate::error::{Error, Result};
use crate::num::LatticeVector;

/// A collection of cones closed under faces, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeComplex {
    rank: usize,
    cones: Vec<Cone>,
    /// `(i, j)` whenever cone `i` is a proper face of cone `j`.
    face_relations: Vec<(usize, usize)>,
    embedded: bool,
}

impl ConeComplex {
    /// Closes `cones` under faces. No fan condition is checked here; see [`ConeComplex::check_fan`].
    pub fn from_cones(rank: usize, cones: impl IntoIterator<Item = Cone>) -> ConeComplex {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in cones {
            debug_assert_eq!(c.rank(), rank);
            if !all.contains(&c) {
                all.extend(c.faces());
            }
        }
        if all.is_empty() {
            all.insert(Cone::zero(rank));
        }
        let cones: Vec<Cone> = all.into_iter().collect();
        let index: BTreeMap<&Cone, usize> = cones.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut face_relations = Vec::new();
        for (j, c) in cones.iter().enumerate() {
            for f in c.faces() {
                if &f != c {
                    face_relations.push((index[&f], j));
                }
            }
        }
        face_relations.sort();
        ConeComplex { rank, cones, face_relations, embedded: true }
    }

    /// Fan from maximal cones given by integer generators.
    pub fn from_maximal_i64(rank: usize, maximal: &[&[&[i64]]]) -> Result<ConeComplex> {
        let cones = maximal.iter().map(|gens| Cone::from_i64(gens, rank)).collect::<Result<Vec<_>>>()?;
        Ok(ConeComplex::from_cones(rank, cones))
    }

    pub fn point(rank: usize) -> ConeComplex {
        ConeComplex::from_cones(rank, [Cone::zero(rank)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn face_relations(&self) -> &[(usize, usize)] {
        &self.face_relations
    }

    pub fn is_embedded(&self) -> bool {
        self.embedded
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.index_of(c).is_some()
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        let mut is_face = vec![false; self.cones.len()];
        for &(i, _) in &self.face_relations {
            is_face[i] = true;
        }
        self.cones.iter().zip(is_face).filter(|(_, f)| !f).map(|(c, _)| c).collect()
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        self.cones.iter().filter(|c| c.dim() == 1).map(|c| c.rays()[0].clone()).collect()
    }

    /// Smallest cone containing a point (the carrier), if the point lies in the support.
    pub fn carrier(&self, x: &[crate::num::Rational]) -> Option<&Cone> {
        self.cones.iter().find(|c| c.in_relative_interior(x))
    }

    /// Checks that pairwise intersections are common faces.
    pub fn check_fan(&self) -> Result<()> {
        let max = self.maximal_cones();
        for (i, a) in max.iter().enumerate() {
            for b in &max[i + 1..] {
                let c = a.intersect(b);
                if !self.contains_cone(&c) || !c.is_face_of(a) || !c.is_face_of(b) {
                    return Err(Error::invalid(format!("cones {a:?} and {b:?} do not meet in a common face")));
                }
            }
        }
        Ok(())
    }

    /// Union of cones is the whole space.
    pub fn is_complete(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        let max = self.maximal_cones();
        if max.iter().any(|c| c.dim() < self.rank) {
            return false;
        }
        let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
        for c in &max {
            for f in c.facets() {
                *count.entry(f).or_default() += 1;
            }
        }
        !max.is_empty() && count.values().all(|&k| k == 2)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson { rank: self.rank, cones: self.maximal_cones().into_iter().map(|c| ConeJson { rays: c.rays().to_vec() }).collect() }
    }

    pub fn from_json(j: &ComplexJson) -> Result<ConeComplex> {
        let cones = j.cones.iter().map(|c| Cone::from_generators(c.rays.clone(), j.rank)).collect::<Result<Vec<_>>>()?;
        Ok(ConeComplex::from_cones(j.rank, cones))
    }
}

/// JSON form of a complex: its maximal cones.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub rank: usize,
    pub cones: Vec<ConeJson>,
}

impl Serialize for ConeComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConeComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ComplexJson::deserialize(d)?;
        ConeComplex::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Fan of projective space `P^n`: rays `e_1..e_n, -(e_1+..+e_n)`.
pub fn projective_space_fan(n: usize) -> ConeComplex {
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    rays.push(LatticeVector(vec![(-1).into(); n]));
    let cones = (0..=n).map(|skip| {
        let gens = rays.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| r.clone()).collect();
        Cone::from_generators(gens, n).expect("simplicial")
    });
    ConeComplex::from_cones(n, cones)
}

/// Fan of `(P^1)^n`: the coordinate orthants.
pub fn product_p1_fan(n: usize) -> ConeComplex {
    let cones = (0..1usize << n).map(|mask| {
        let gens = (0..n)
            .map(|i| {
                let mut v = LatticeVector::unit(n, i);
                if mask >> i & 1 == 1 {
                    v = -&v;
                }
                v
            })
            .collect();
        Cone::from_generators(gens, n).expect("orthant")
    });
    ConeComplex::from_cones(n, cones)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_fan_structure() {
        let f = projective_space_fan(2);
        assert_eq!(f.cones().len(), 7);
        assert_eq!(f.maximal_cones().len(), 3);
        assert!(f.is_complete());
        f.check_fan().unwrap();
    }

    #[test]
    fn incomplete_fan() {
        let f = ConeComplex::from_maximal_i64(2, &[&[&[1, 0], &[0, 1]]]).unwrap();
        assert!(!f.is_complete());
    }

    #[test]
    fn json_round_trip() {
        let f = product_p1_fan(2);
        let s = serde_json::to_string(&f).unwrap();
        let g: ConeComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn overlapping_cones_fail_fan_check() {
        let f = ConeComplex::from_maximal_i64(2, &[&[&[1, 0], &[0, 1]], &[&[1, 1], &[-1, 1]]]).unwrap();
        assert!(f.check_fan().is_err());
    }
}
