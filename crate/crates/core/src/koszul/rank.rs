//! Rank of sparse integer matrices over a prime field or over the rationals.
//!
//! Both routes share one incremental echelon routine: rows are reduced
//! against the pivot rows found so far by their leading column, and each
//! row that survives becomes a new pivot. Rows are fed shortest first to
//! keep fill-in down.

use std::collections::HashMap;

use num::{BigRational, One, Zero};

/// A field in which the rank of an integer matrix can be computed.
pub trait Field {
    type Elem: Clone;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// Integers modulo a prime.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    /// `None` unless `modulus` is a prime below 2^32.
    pub fn new(modulus: u64) -> Option<Self> {
        (modulus < (1 << 32) && is_prime(modulus)).then_some(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.modulus - 2)
    }
}

/// The rationals, for exact reference ranks.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

type SparseRow<E> = Vec<(usize, E)>;

/// `a - factor * b` on sorted sparse rows.
fn axpy<F: Field>(f: &F, a: &SparseRow<F::Elem>, factor: &F::Elem, b: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = f.sub(&f.from_i64(0), &f.mul(factor, &b[j].1));
            out.push((cb, v));
            j += 1;
        } else {
            let v = f.sub(&a[i].1, &f.mul(factor, &b[j].1));
            if !f.is_zero(&v) {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the matrix whose rows are the given sparse integer vectors.
/// Entries within a row may come in any order and may repeat (they add).
pub fn rank<F: Field>(field: &F, rows: &[Vec<(usize, i64)>]) -> usize {
    let mut prepared: Vec<SparseRow<F::Elem>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(r.len());
            for (c, v) in r {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            merged
                .into_iter()
                .map(|(c, v)| (c, field.from_i64(v)))
                .filter(|(_, v)| !field.is_zero(v))
                .collect()
        })
        .collect();
    prepared.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    for mut row in prepared {
        while let Some((lead, coeff)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(pivot) => row = axpy(field, &row, &coeff, pivot),
                None => {
                    let inv = field.inv(&coeff);
                    for e in row.iter_mut() {
                        e.1 = field.mul(&e.1, &inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
