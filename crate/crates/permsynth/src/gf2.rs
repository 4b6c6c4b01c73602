// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! GF(2) linear algebra: bit-packed boolean matrices, permutations, and the
//! CNOT row-operation semantics used by every synthesizer in this crate.
//!
//! Convention, fixed once and enforced by the verification oracle: a
//! circuit's matrix is built by applying its gates in temporal order to the
//! identity. `CNOT(c, t)` XORs row `c` into row `t`; `SWAP(a, b)` exchanges
//! rows `a` and `b`. A synthesizer for target `M` must therefore emit a gate
//! list whose accumulated matrix equals `M`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bijection on vertex labels. `dest[v]` is the vertex at which the token
/// starting on vertex `v` must end.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    dest: Vec<usize>,
}

impl Permutation {
    pub fn new(dest: Vec<usize>) -> Result<Self> {
        let n = dest.len();
        let mut seen = vec![false; n];
        for &d in &dest {
            if d >= n || seen[d] {
                return Err(Error::NotBijective);
            }
            seen[d] = true;
        }
        Ok(Permutation { dest })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            dest: (0..n).collect(),
        }
    }

    /// `dest[v] = n - 1 - v`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            dest: (0..n).rev().collect(),
        }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut dest: Vec<usize> = (0..n).collect();
        // Fisher-Yates
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            dest.swap(i, j);
        }
        Permutation { dest }
    }

    pub fn len(&self) -> usize {
        self.dest.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dest.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.dest.iter().enumerate().all(|(v, &d)| v == d)
    }

    pub fn dest(&self, v: usize) -> usize {
        self.dest[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dest
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.dest.len()];
        for (v, &d) in self.dest.iter().enumerate() {
            inv[d] = v;
        }
        Permutation { dest: inv }
    }

    /// `self` then `other`: the token starting at `v` ends at
    /// `other.dest(self.dest(v))`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(self.len(), other.len()));
        }
        Ok(Permutation {
            dest: self.dest.iter().map(|&d| other.dest[d]).collect(),
        })
    }

    /// Number of inversions: pairs `i < j` with `dest[i] > dest[j]`. On a
    /// path this equals the minimal number of adjacent transpositions.
    pub fn inversions(&self) -> usize {
        let n = self.dest.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.dest[i] > self.dest[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Parse the comma-separated `dest[0],dest[1],...` text form.
    pub fn parse(text: &str) -> Result<Self> {
        let dest: Vec<usize> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad permutation entry `{t}`")))
            })
            .collect::<Result<_>>()?;
        if dest.is_empty() {
            return Err(Error::InvalidInput("empty permutation".into()));
        }
        Permutation::new(dest)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dest.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// n x n boolean matrix with bit-packed rows. Entry `(i, k)` is row `i`,
/// column `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Gf2Matrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Matrix with `M[dest[v]][v] = 1`: applying it to the basis vector `e_v`
    /// yields `e_dest[v]`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let mut m = Self::zero(p.len());
        for v in 0..p.len() {
            m.set(p.dest(v), v, true);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> bool {
        debug_assert!(i < self.n && k < self.n);
        (self.bits[i * self.words + k / 64] >> (k % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, k: usize, value: bool) {
        debug_assert!(i < self.n && k < self.n);
        let w = &mut self.bits[i * self.words + k / 64];
        if value {
            *w |= 1 << (k % 64);
        } else {
            *w &= !(1 << (k % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// row `dst` ^= row `src`
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (s, d) = (src * self.words, dst * self.words);
        for w in 0..self.words {
            let v = self.bits[s + w];
            self.bits[d + w] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.bits.swap(a * self.words + w, b * self.words + w);
        }
    }

    /// CNOT with control `c` and target `t`: row `t` ^= row `c`.
    pub fn apply_cnot(&mut self, c: usize, t: usize) -> Result<()> {
        if c >= self.n || t >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: c.max(t),
                n: self.n,
            });
        }
        if c == t {
            return Err(Error::ControlEqualsTarget(c));
        }
        self.xor_row_into(c, t);
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.to_permutation().is_some()
    }

    /// Partial inverse of [`Gf2Matrix::from_permutation`]; `None` when the
    /// matrix is not a permutation matrix.
    pub fn to_permutation(&self) -> Option<Permutation> {
        let mut dest = vec![usize::MAX; self.n];
        for i in 0..self.n {
            let mut ones = 0;
            let mut col = 0;
            for k in 0..self.n {
                if self.get(i, k) {
                    ones += 1;
                    col = k;
                }
            }
            if ones != 1 {
                return None;
            }
            if dest[col] != usize::MAX {
                return None;
            }
            dest[col] = i;
        }
        Permutation::new(dest).ok()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.n {
            let pivot = (rank..m.n).find(|&r| m.get(r, col));
            if let Some(p) = pivot {
                m.swap_rows(rank, p);
                for r in 0..m.n {
                    if r != rank && m.get(r, col) {
                        m.xor_row_into(rank, r);
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Gf2Matrix> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = Gf2Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col))?;
            m.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            for r in 0..n {
                if r != col && m.get(r, col) {
                    m.xor_row_into(col, r);
                    inv.xor_row_into(col, r);
                }
            }
        }
        Some(inv)
    }

    /// Boolean matrix product over GF(2).
    pub fn multiply(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Gf2Matrix::zero(n);
        // out = self * other: out[i] = XOR of other.row(k) over k with self[i][k] = 1
        for i in 0..n {
            for k in 0..n {
                if self.get(i, k) {
                    let (s, d) = (k * out.words, i * out.words);
                    for w in 0..out.words {
                        let v = other.bits[s + w];
                        out.bits[d + w] ^= v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut out = Gf2Matrix::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    out.set(k, i, true);
                }
            }
        }
        out
    }

    /// Solve `self * x = b`; `None` when inconsistent. When the system is
    /// under-determined, free variables are set to zero.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_col_of_row = vec![usize::MAX; n];
        let mut row = 0;
        for col in 0..n {
            if let Some(p) = (row..n).find(|&r| m.get(r, col)) {
                m.swap_rows(row, p);
                rhs.swap(row, p);
                for r in 0..n {
                    if r != row && m.get(r, col) {
                        m.xor_row_into(row, r);
                        rhs[r] ^= rhs[row];
                    }
                }
                pivot_col_of_row[row] = col;
                row += 1;
            }
        }
        // Inconsistent when a zero row has rhs 1.
        if rhs[row..n].iter().any(|&b| b) {
            return None;
        }
        let mut x = vec![false; n];
        for r in 0..row {
            x[pivot_col_of_row[r]] = rhs[r];
        }
        Some(x)
    }

    /// Uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng>(n: usize, rng: &mut R) -> Gf2Matrix {
        loop {
            let mut m = Gf2Matrix::zero(n);
            for i in 0..n {
                for k in 0..n {
                    m.set(i, k, rng.gen::<bool>());
                }
            }
            if m.is_invertible() {
                return m;
            }
        }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            for k in 0..self.n {
                write!(f, "{}", u8::from(self.get(i, k)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
