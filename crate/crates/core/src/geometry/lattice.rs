//! Integer points of a polytope by bounding-box sweep.

use num::{BigInt, ToPrimitive};

use super::rational::{ceil_i64, common_denominator, floor_i64};
use super::{GeometryError, Polytope};

pub type LatticePoint = Vec<i64>;

/// Integer points of a polytope in lexicographic order, without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    pub points: Vec<LatticePoint>,
    /// Dilation factor of the source polytope, when it was produced by
    /// [`LatticePointSet::of_dilate`].
    pub dilation: u64,
}

impl LatticePointSet {
    /// Integer points of `d · P`.
    pub fn of_dilate(p: &Polytope, d: u64) -> Result<Self, GeometryError> {
        let mut set = lattice_points(&p.dilate(d))?;
        set.dilation = d;
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(point)).ok()
    }
}

/// Facet `a · x <= b` rewritten over the integers.
struct IntegerFacet {
    normal: Vec<i128>,
    offset: i128,
}

impl IntegerFacet {
    fn contains(&self, x: &[i64]) -> bool {
        let lhs: i128 = self.normal.iter().zip(x).map(|(a, &b)| a * b as i128).sum();
        lhs <= self.offset
    }
}

pub fn lattice_points(p: &Polytope) -> Result<LatticePointSet, GeometryError> {
    if p.is_empty() {
        if !p.facets().is_empty() {
            return Err(GeometryError::Unbounded);
        }
        return Ok(LatticePointSet { points: Vec::new(), dilation: 1 });
    }
    let n = p.dim();
    let lo: Vec<i64> = (0..n)
        .map(|k| p.vertices().iter().map(|v| ceil_i64(&v.0[k])).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|k| p.vertices().iter().map(|v| floor_i64(&v.0[k])).max().unwrap())
        .collect();
    let facets: Vec<IntegerFacet> = p
        .facets()
        .iter()
        .map(|h| {
            let den = common_denominator(h.normal().iter().chain(std::iter::once(h.offset())));
            let scale = |x: &num::BigRational| -> i128 {
                let v: BigInt = x.numer() * (&den / x.denom());
                v.to_i128().expect("facet coefficient fits in i128")
            };
            IntegerFacet {
                normal: h.normal().iter().map(scale).collect(),
                offset: scale(h.offset()),
            }
        })
        .collect();
    let mut points = Vec::new();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(LatticePointSet { points, dilation: 1 });
    }
    let mut cur = lo.clone();
    loop {
        if facets.iter().all(|f| f.contains(&cur)) {
            points.push(cur.clone());
        }
        // odometer increment, last coordinate fastest -> lexicographic order
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(LatticePointSet { points, dilation: 1 });
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;

    #[test]
    fn counts() {
        let s2 = builtin("simplex2").unwrap();
        assert_eq!(LatticePointSet::of_dilate(&s2, 2).unwrap().len(), 6);
        let sq = builtin("square").unwrap();
        assert_eq!(
            lattice_points(&sq).unwrap().points,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(LatticePointSet::of_dilate(&sq, 2).unwrap().len(), 9);
        assert_eq!(LatticePointSet::of_dilate(&builtin("simplex3").unwrap(), 3).unwrap().len(), 20);
    }

    #[test]
    fn index_lookup() {
        let set = LatticePointSet::of_dilate(&builtin("segment").unwrap(), 3).unwrap();
        assert_eq!(set.index_of(&[2]), Some(2));
        assert_eq!(set.index_of(&[4]), None);
    }
}
