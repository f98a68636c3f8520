//! Dense exact linear algebra on small rational matrices.

use num::{One, Zero};

use super::{Point, RationalScalar};

/// Row echelon form in place; returns the rank.
fn echelon(rows: &mut [Vec<RationalScalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &rows[rank][col];
            for c in col..ncols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(vectors: &[Vec<RationalScalar>]) -> usize {
    let mut rows = vectors.to_vec();
    echelon(&mut rows)
}

/// Dimension of the affine hull (`-1` encoded as `None` for the empty set).
pub fn affine_dimension(points: &[&Point]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<_> = rest.iter().map(|p| p.sub(first).0).collect();
    Some(if diffs.is_empty() { 0 } else { rank(&diffs) })
}

pub fn determinant(matrix: &[Vec<RationalScalar>]) -> RationalScalar {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = RationalScalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return RationalScalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}
