//! Weight-graded bases and differentials of the Koszul complex
//! `∧^k V ⊗ H^0(m L_d)` for a toric embedding.
//!
//! `V = H^0(L_d)` has the monomial basis given by the lattice points of
//! `dΔ`; `H^0(m L_d)` has the lattice points of `m d Δ` for `m >= 1`, the
//! single weight-zero monomial for `m = 0` and nothing for `m < 0`.

use std::collections::{BTreeMap, HashMap};

use super::{SyzygyError, SyzygyInput, Weight};
use crate::geometry::{LatticePoint, LatticePointSet, Polytope};

/// One basis vector `e_{i_1} ∧ ... ∧ e_{i_k} ⊗ m` of a strand term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrandBasisElement {
    /// Strictly increasing indices into the lattice points of `dΔ`.
    pub wedge: Vec<u32>,
    /// A lattice point of `m d Δ`.
    pub module: LatticePoint,
    pub weight: Weight,
}

/// The three positions of the strand around `∧^p V ⊗ H^0(q L_d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Left,
    Middle,
    Right,
}

/// Basis of one strand term, grouped by weight in lexicographic order.
pub type GradedBasis = BTreeMap<Weight, Vec<StrandBasisElement>>;

/// Lattice data for one `(Δ, d)`, with `H^0(m L_d)` bases computed on demand.
#[derive(Debug)]
pub struct ToricEmbedding {
    polytope: Polytope,
    d: u64,
    sections: LatticePointSet,
    twists: std::sync::Mutex<HashMap<i64, std::sync::Arc<LatticePointSet>>>,
}

impl ToricEmbedding {
    pub fn new(polytope: &Polytope, d: u64) -> Result<Self, SyzygyError> {
        if d == 0 {
            return Err(SyzygyError::InvalidInput("d must be positive".into()));
        }
        let sections = LatticePointSet::of_dilate(polytope, d)?;
        if sections.is_empty() {
            return Err(SyzygyError::InvalidInput(format!("{d}·Δ has no lattice points")));
        }
        Ok(ToricEmbedding {
            polytope: polytope.clone(),
            d,
            sections,
            twists: Default::default(),
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// Lattice points of `dΔ`, the monomial basis of `V`.
    pub fn sections(&self) -> &LatticePointSet {
        &self.sections
    }

    /// `r_d = h^0(L_d) - 1`.
    pub fn projective_dimension(&self) -> usize {
        self.sections.len() - 1
    }

    /// Monomial basis of `H^0(m L_d)`.
    pub fn twist(&self, m: i64) -> std::sync::Arc<LatticePointSet> {
        let mut cache = self.twists.lock().unwrap();
        cache
            .entry(m)
            .or_insert_with(|| {
                std::sync::Arc::new(match m {
                    m if m < 0 => LatticePointSet { points: vec![], dilation: 0 },
                    0 => LatticePointSet { points: vec![vec![0; self.dim()]], dilation: 0 },
                    m => LatticePointSet::of_dilate(&self.polytope, m as u64 * self.d)
                        .expect("dilates of a valid polytope have lattice points"),
                })
            })
            .clone()
    }

    /// Basis of `∧^k V ⊗ H^0(m L_d)`, grouped by weight.
    pub fn term_basis(&self, k: i64, m: i64) -> GradedBasis {
        let mut out = GradedBasis::new();
        self.visit_term(k, m, |weight, wedge, module| {
            out.entry(weight).or_default().push(StrandBasisElement {
                wedge: wedge.to_vec(),
                module: module.to_vec(),
                weight: Vec::new(),
            });
        });
        for (w, elems) in out.iter_mut() {
            for e in elems {
                e.weight = w.clone();
            }
        }
        out
    }

    /// Dimension of each weight space of `∧^k V ⊗ H^0(m L_d)`.
    pub fn term_dimensions(&self, k: i64, m: i64) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        self.visit_term(k, m, |weight, _, _| *out.entry(weight).or_insert(0) += 1);
        out
    }

    /// Calls `f(weight, wedge, module)` for every basis element, wedge tuples
    /// in lexicographic order and module points in lexicographic order
    /// within each tuple.
    fn visit_term(&self, k: i64, m: i64, mut f: impl FnMut(Weight, &[u32], &[i64])) {
        let n = self.sections.len();
        if k < 0 || k as usize > n {
            return;
        }
        let module = self.twist(m);
        if module.is_empty() {
            return;
        }
        let k = k as usize;
        let dim = self.dim();
        let mut subset: Vec<u32> = (0..k as u32).collect();
        loop {
            let mut base = vec![0i64; dim];
            for &i in &subset {
                for (b, c) in base.iter_mut().zip(&self.sections.points[i as usize]) {
                    *b += c;
                }
            }
            for pt in &module.points {
                let weight: Weight = base.iter().zip(pt).map(|(a, b)| a + b).collect();
                f(weight, &subset, pt);
            }
            if !next_subset(&mut subset, n) {
                break;
            }
        }
    }

    /// The three term bases of the strand through `∧^p V ⊗ H^0(q L_d)`.
    pub fn strand_basis(&self, p: usize, q: usize, term: Term) -> GradedBasis {
        let (k, m) = term_degrees(p, q, term);
        self.term_basis(k, m)
    }
}

/// `(wedge degree, twist)` of a strand position.
pub fn term_degrees(p: usize, q: usize, term: Term) -> (i64, i64) {
    let (p, q) = (p as i64, q as i64);
    match term {
        Term::Left => (p + 1, q - 1),
        Term::Middle => (p, q),
        Term::Right => (p - 1, q + 1),
    }
}

/// Advances a strictly increasing tuple over `0..n` in lexicographic order.
pub(crate) fn next_subset(subset: &mut [u32], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if (subset[i] as usize) < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Sparse matrix stored by columns; column `j` is the image of the `j`-th
/// source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self ∘ other` as a sparse matrix, exact over the integers.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(mid, a) in col {
                    for &(row, b) in &self.columns[mid] {
                        *acc.entry(row).or_insert(0) += a * b;
                    }
                }
                acc.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// The weight-`w` piece of the strand: three bases and two differentials.
#[derive(Clone, Debug)]
pub struct KoszulBlock {
    pub weight: Weight,
    pub left: Vec<StrandBasisElement>,
    pub middle: Vec<StrandBasisElement>,
    pub right: Vec<StrandBasisElement>,
    /// `left -> middle`.
    pub d_in: SparseMatrix,
    /// `middle -> right`.
    pub d_out: SparseMatrix,
}

impl KoszulBlock {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.left.len(), self.middle.len(), self.right.len())
    }

    /// `d_out ∘ d_in = 0`, checked exactly.
    pub fn is_complex(&self) -> bool {
        if self.d_in.is_empty() || self.d_out.is_empty() {
            return true;
        }
        self.d_out.compose(&self.d_in).is_zero()
    }
}

/// Koszul differential applied to the basis vectors `source`, expressed in
/// the basis `target`:
/// `e_{i_1} ∧ ... ∧ e_{i_k} ⊗ m ↦ Σ_j (-1)^{j+1} e_{i_1} ∧ ..ê_{i_j}.. ∧ e_{i_k} ⊗ (w_{i_j} + m)`.
pub fn differential(
    emb: &ToricEmbedding,
    source: &[StrandBasisElement],
    target: &[StrandBasisElement],
) -> SparseMatrix {
    if source.is_empty() || target.is_empty() {
        return SparseMatrix::zero(target.len(), source.len());
    }
    let index: HashMap<(&[u32], &[i64]), usize> = target
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.wedge.as_slice(), e.module.as_slice()), i))
        .collect();
    let columns = source
        .iter()
        .map(|e| {
            let mut col = Vec::with_capacity(e.wedge.len());
            let mut rest: Vec<u32> = Vec::with_capacity(e.wedge.len().saturating_sub(1));
            for j in 0..e.wedge.len() {
                rest.clear();
                rest.extend(e.wedge.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &i)| i));
                let moved = &emb.sections().points[e.wedge[j] as usize];
                let module: Vec<i64> = e.module.iter().zip(moved).map(|(a, b)| a + b).collect();
                let row = index
                    .get(&(rest.as_slice(), module.as_slice()))
                    .expect("Koszul image lies in the target term");
                col.push((*row, if j % 2 == 0 { 1 } else { -1 }));
            }
            col
        })
        .collect();
    SparseMatrix { rows: target.len(), cols: source.len(), columns }
}

/// Builds the block at one weight from scratch.
pub fn koszul_block(input: &SyzygyInput, weight: &[i64]) -> Result<KoszulBlock, SyzygyError> {
    let emb = ToricEmbedding::new(&input.polytope, input.d)?;
    Ok(block_from_bases(
        &emb,
        weight,
        basis_at(&emb, input.p, input.q, Term::Left, weight),
        basis_at(&emb, input.p, input.q, Term::Middle, weight),
        basis_at(&emb, input.p, input.q, Term::Right, weight),
    ))
}

fn basis_at(emb: &ToricEmbedding, p: usize, q: usize, term: Term, weight: &[i64]) -> Vec<StrandBasisElement> {
    emb.strand_basis(p, q, term).remove(weight).unwrap_or_default()
}

pub(crate) fn block_from_bases(
    emb: &ToricEmbedding,
    weight: &[i64],
    left: Vec<StrandBasisElement>,
    middle: Vec<StrandBasisElement>,
    right: Vec<StrandBasisElement>,
) -> KoszulBlock {
    let d_in = differential(emb, &left, &middle);
    let d_out = differential(emb, &middle, &right);
    KoszulBlock { weight: weight.to_vec(), left, middle, right, d_in, d_out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;

    fn input(name: &str, d: u64, p: usize, q: usize) -> SyzygyInput {
        SyzygyInput::new(builtin(name).unwrap(), d, p, q).unwrap()
    }

    #[test]
    fn subset_enumeration() {
        let mut s = vec![0, 1];
        let mut all = vec![s.clone()];
        while next_subset(&mut s, 4) {
            all.push(s.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap(), &vec![2, 3]);
        let mut empty: Vec<u32> = vec![];
        assert!(!next_subset(&mut empty, 3));
    }

    #[test]
    fn middle_term_sizes() {
        let emb = ToricEmbedding::new(&builtin("segment").unwrap(), 2).unwrap();
        let mid = emb.strand_basis(1, 1, Term::Middle);
        assert_eq!(mid.values().map(Vec::len).sum::<usize>(), 9);
        assert_eq!(mid.keys().cloned().collect::<Vec<_>>(), (0..=4).map(|w| vec![w]).collect::<Vec<_>>());

        let emb = ToricEmbedding::new(&builtin("segment").unwrap(), 1).unwrap();
        let mid = emb.strand_basis(0, 0, Term::Middle);
        assert_eq!(mid.len(), 1);
        assert_eq!(mid[&vec![0]].len(), 1);

        let emb = ToricEmbedding::new(&builtin("simplex2").unwrap(), 2).unwrap();
        let mid = emb.strand_basis(1, 1, Term::Middle);
        assert_eq!(mid.values().map(Vec::len).sum::<usize>(), 36);
    }

    #[test]
    fn left_term_empty_when_wedge_too_large() {
        let emb = ToricEmbedding::new(&builtin("segment").unwrap(), 1).unwrap();
        assert!(emb.strand_basis(2, 1, Term::Left).is_empty());
        assert!(emb.strand_basis(1, 0, Term::Left).is_empty());
    }

    #[test]
    fn ordering_is_wedge_then_module() {
        let emb = ToricEmbedding::new(&builtin("segment").unwrap(), 2).unwrap();
        let mid = emb.strand_basis(1, 1, Term::Middle);
        let at2: Vec<_> = mid[&vec![2]].iter().map(|e| (e.wedge.clone(), e.module.clone())).collect();
        assert_eq!(at2, vec![(vec![0], vec![2]), (vec![1], vec![1]), (vec![2], vec![0])]);
    }

    #[test]
    fn conic_block_at_weight_two() {
        // left {e0∧e2 ⊗ 0} -> middle {e0⊗2, e1⊗1, e2⊗0} -> right {1⊗2}
        let block = koszul_block(&input("segment", 2, 1, 1), &[2]).unwrap();
        assert_eq!(block.sizes(), (1, 3, 1));
        assert_eq!(block.d_out.columns, vec![vec![(0, 1)], vec![(0, 1)], vec![(0, 1)]]);
        assert_eq!(block.d_in.columns, vec![vec![(2, 1), (0, -1)]]);
        assert!(block.is_complex());
    }

    #[test]
    fn q_zero_block_has_empty_d_in() {
        let block = koszul_block(&input("square", 1, 2, 0), &[1, 1]).unwrap();
        assert!(block.left.is_empty());
        assert!(block.d_in.is_empty());
        assert!(block.is_complex());
    }

    #[test]
    fn weight_outside_gives_empty_block() {
        let block = koszul_block(&input("segment", 2, 1, 1), &[9]).unwrap();
        assert_eq!(block.sizes(), (0, 0, 0));
    }
}
