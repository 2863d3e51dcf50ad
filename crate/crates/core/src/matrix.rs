//! Small square integer matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, IntPolynomial, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    /// Square matrix from its rows.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        IntMatrix { dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, v: i64) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `P M P^-1` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        out
    }

    /// Product, or `None` on overflow.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).checked_add(a.checked_mul(rhs.get(k, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Some(out)
    }

    pub fn checked_pow(&self, mut e: u32) -> Option<IntMatrix> {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Some(acc)
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        match self.entries.iter().position(|&v| v < 0) {
            Some(k) => Err(Error::NegativeEntry { row: k / self.dim, col: k % self.dim }),
            None => Ok(()),
        }
    }

    /// Some power has only positive entries. Decided on the zero pattern,
    /// squaring up to the Wielandt bound `(d - 1)^2 + 1`.
    pub fn is_primitive(&self) -> Result<bool> {
        self.check_nonnegative()?;
        let n = self.dim;
        let pattern: Vec<bool> = self.entries.iter().map(|&v| v > 0).collect();
        let bound = (n - 1) * (n - 1) + 1;
        // A primitive pattern stays primitive under further powers, so testing
        // the first power of two at or above the bound suffices.
        let mut p = pattern;
        let mut k = 1;
        while k < bound {
            p = bool_mul(&p, &p, n);
            k *= 2;
        }
        Ok(p.iter().all(|&b| b))
    }

    /// `det(x I - M)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> IntPolynomial {
        self.leverrier().0
    }

    /// The characteristic polynomial together with matrices `B_1..B_n` such
    /// that `adj(x I - M) = sum_k B_k x^(n - k)`.
    pub(crate) fn leverrier(&self) -> (IntPolynomial, Vec<Vec<BigInt>>) {
        let n = self.dim;
        let a: Vec<BigInt> = self.entries.iter().map(|&v| BigInt::from(v)).collect();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::from(1);
        let mut mk = vec![BigInt::zero(); n * n];
        let mut adj_terms = Vec::with_capacity(n);
        for k in 1..=n {
            // M_k = A M_(k-1) + c_(n-k+1) I
            let mut next = big_mul(&a, &mk, n);
            for i in 0..n {
                next[i * n + i] += &coeffs[n - k + 1];
            }
            let am = big_mul(&a, &next, n);
            let tr: BigInt = (0..n).map(|i| am[i * n + i].clone()).sum();
            coeffs[n - k] = -tr / BigInt::from(k);
            adj_terms.push(next.clone());
            mk = next;
        }
        (IntPolynomial::new(coeffs).expect("monic"), adj_terms)
    }
}

fn bool_mul(a: &[bool], b: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k] {
                for j in 0..n {
                    out[i * n + j] |= b[k * n + j];
                }
            }
        }
    }
    out
}

fn big_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * &b[k * n + j];
            }
        }
    }
    out
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{self}")
    }
}
