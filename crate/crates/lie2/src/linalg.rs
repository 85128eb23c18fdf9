//! Exact dense linear algebra over GF(2^k).
//!
//! The workhorse is [`RowEchelon`], an incremental reduced-row-echelon
//! accumulator: rows are inserted one at a time and the basis is kept in
//! fully reduced form with pivot columns ascending, so every derived
//! object (rank, nullspace, solution vectors) is canonical and
//! reproducible. Over GF(2) rows are bit-packed into machine words and
//! reduction is XOR of words; over larger fields the scalar path is used.
//! The two paths are checked against each other in the tests.
//!
//! Characteristic polynomials are computed by the Krylov/spin method with
//! the deterministic vector sequence e_1, e_2, …: relative minimal
//! polynomials of cyclic chains multiply to the characteristic polynomial,
//! and a Cayley–Hamilton post-check guards the result.

use std::fmt;

use crate::field::{Fe, Field};
use crate::{Error, Result};

/// Dense row-major matrix over a fixed field.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.name())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field: field.clone(), data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fe>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Matrix { rows: r, cols: c, field: field.clone(), data }
    }

    /// Matrix whose column j is `f(j)`; the standard way to capture a
    /// linear map given by its action on basis vectors.
    pub fn from_action<F: FnMut(usize) -> Vec<Fe>>(field: &Field, dim: usize, mut f: F) -> Matrix {
        let mut m = Matrix::zeros(field, dim, dim);
        for j in 0..dim {
            let col = f(j);
            assert_eq!(col.len(), dim);
            for i in 0..dim {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a = Fe(a.0 ^ b.0);
        }
        m
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let f = &self.field;
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = f.mul(*a, c);
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(m.get(i, j), f.mul(a, other.get(l, j)));
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Fe::ZERO;
            for j in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(i, j), v[j]));
            }
            out[i] = acc;
        }
        out
    }

    /// Exact determinant by fraction-free elimination on a copy.
    pub fn det(&self) -> Fe {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Fe::ONE;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Fe::ZERO;
            };
            if p != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(p, j));
                    a.set(col, j, y);
                    a.set(p, j, x);
                }
                // row swap flips the sign; in characteristic 2 that is a no-op
            }
            let piv = a.get(col, col);
            det = f.mul(det, piv);
            let piv_inv = f.inv(piv).expect("pivot nonzero");
            for i in col + 1..n {
                let c = f.mul(a.get(i, col), piv_inv);
                if c.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = f.add(a.get(i, j), f.mul(c, a.get(col, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Inverse, if the matrix is invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let f = &self.field;
        let mut ech = RowEchelon::new(f, 2 * n);
        for i in 0..n {
            let mut row = vec![Fe::ZERO; 2 * n];
            row[..n].copy_from_slice(self.row(i));
            row[n + i] = Fe::ONE;
            ech.insert(&row);
        }
        if ech.rank() != n || ech.pivots().iter().take(n).copied().ne(0..n) {
            return None;
        }
        let rows = ech.rows();
        let mut inv = Matrix::zeros(f, n, n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                inv.set(i, j, row[n + j]);
            }
        }
        Some(inv)
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// True iff M·M = M.
    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.mul(self) == *self
    }

    /// Rank and canonical nullspace basis.
    ///
    /// The basis is the reduced-echelon kernel basis: one vector per free
    /// column, with a 1 in that column and pivot-column entries read off
    /// the RREF. rank + basis.len() == cols always.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<Fe>>) {
        let mut ech = RowEchelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i));
        }
        (ech.rank(), ech.nullspace())
    }

    pub fn rank(&self) -> usize {
        self.rank_nullspace().0
    }

    /// Particular solution of M x = b with free variables set to zero,
    /// or None if the system is inconsistent.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let n = self.cols;
        let mut ech = RowEchelon::new(&self.field, n + 1);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(n + 1);
            row.extend_from_slice(self.row(i));
            row.push(b[i]);
            ech.insert(&row);
        }
        if ech.pivots().contains(&n) {
            return None; // 0 = 1 row: inconsistent
        }
        let mut x = vec![Fe::ZERO; n];
        for (r, &p) in ech.pivots().iter().enumerate() {
            x[p] = ech.entry(r, n);
        }
        Some(x)
    }

    /// Characteristic polynomial det(λI − M), monic of degree n.
    ///
    /// Krylov/spin method with the deterministic seed sequence e_1, e_2, …;
    /// the product of relative minimal polynomials along the invariant
    /// flag is the characteristic polynomial. Verified by Cayley–Hamilton
    /// before returning.
    pub fn char_poly(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::Usage("char_poly of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut poly = Polynomial::one(f);
        let mut invariant = RowEchelon::new(f, n);
        for seed in 0..n {
            if invariant.rank() == n {
                break;
            }
            let mut v = vec![Fe::ZERO; n];
            v[seed] = Fe::ONE;
            invariant.reduce(&mut v);
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let (factor, chain) = self.relative_minpoly(v, &invariant);
            for c in chain {
                invariant.insert(&c);
            }
            poly = poly.mul(&factor);
        }
        debug_assert_eq!(poly.degree(), n as i64);
        // Cayley–Hamilton post-check.
        if !poly.eval_matrix(self).is_zero() {
            return Err(Error::Internal("char_poly failed Cayley-Hamilton check".into()));
        }
        Ok(poly)
    }

    /// Minimal polynomial of the class of `v0` in V / span(w), together
    /// with the Krylov chain representatives that were generated.
    fn relative_minpoly(&self, v0: Vec<Fe>, w: &RowEchelon) -> (Polynomial, Vec<Vec<Fe>>) {
        let f = &self.field;
        let n = self.rows;
        // Augmented elimination: each stored row remembers its expression
        // in terms of the chain vectors M^i v0.
        let mut rows: Vec<(Vec<Fe>, Vec<Fe>)> = Vec::new();
        let mut chain: Vec<Vec<Fe>> = Vec::new();
        let mut v = v0;
        for step in 0..=n {
            let mut tag = vec![Fe::ZERO; step + 1];
            tag[step] = Fe::ONE;
            let mut u = v.clone();
            for (row, rtag) in &rows {
                let p = row.iter().position(|x| !x.is_zero()).unwrap();
                let c = u[p];
                if c.is_zero() {
                    continue;
                }
                for (a, b) in u.iter_mut().zip(row) {
                    *a = f.add(*a, f.mul(c, *b));
                }
                for (i, b) in rtag.iter().enumerate() {
                    tag[i] = f.add(tag[i], f.mul(c, *b));
                }
            }
            if u.iter().all(|x| x.is_zero()) {
                // Σ tag_i · M^i v ∈ W: the relative minimal polynomial.
                return (Polynomial::new(f, tag), chain);
            }
            let lead_inv = f.inv(*u.iter().find(|x| !x.is_zero()).unwrap()).unwrap();
            for a in u.iter_mut() {
                *a = f.mul(*a, lead_inv);
            }
            let tag: Vec<Fe> = tag.iter().map(|&t| f.mul(t, lead_inv)).collect();
            rows.push((u, tag));
            chain.push(v.clone());
            let mut next = self.apply(&v);
            w.reduce(&mut next);
            v = next;
        }
        unreachable!("Krylov chain longer than the dimension")
    }
}

/// Incremental reduced row echelon form.
///
/// Rows are kept fully reduced with ascending pivot columns; insertion
/// returns whether the rank grew. A bit-packed representation is used
/// automatically over GF(2).
pub struct RowEchelon {
    field: Field,
    cols: usize,
    imp: EchelonImpl,
}

enum EchelonImpl {
    Packed { words: usize, rows: Vec<Vec<u64>>, pivots: Vec<usize> },
    Scalar { rows: Vec<Vec<Fe>>, pivots: Vec<usize> },
}

impl RowEchelon {
    pub fn new(field: &Field, cols: usize) -> RowEchelon {
        let imp = if field.degree() == 1 {
            EchelonImpl::Packed { words: cols.div_ceil(64), rows: Vec::new(), pivots: Vec::new() }
        } else {
            EchelonImpl::Scalar { rows: Vec::new(), pivots: Vec::new() }
        };
        RowEchelon { field: field.clone(), cols, imp }
    }

    /// Force the scalar path regardless of the field; reference
    /// implementation for the packed/scalar equivalence tests.
    pub fn new_scalar(field: &Field, cols: usize) -> RowEchelon {
        RowEchelon {
            field: field.clone(),
            cols,
            imp: EchelonImpl::Scalar { rows: Vec::new(), pivots: Vec::new() },
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        match &self.imp {
            EchelonImpl::Packed { rows, .. } => rows.len(),
            EchelonImpl::Scalar { rows, .. } => rows.len(),
        }
    }

    pub fn pivots(&self) -> &[usize] {
        match &self.imp {
            EchelonImpl::Packed { pivots, .. } => pivots,
            EchelonImpl::Scalar { pivots, .. } => pivots,
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Fe {
        match &self.imp {
            EchelonImpl::Packed { rows, .. } => {
                Fe((rows[row][col / 64] >> (col % 64)) & 1)
            }
            EchelonImpl::Scalar { rows, .. } => rows[row][col],
        }
    }

    /// The reduced rows, pivot columns ascending.
    pub fn rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rank()).map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Insert a row; returns true when it was independent of the span.
    pub fn insert(&mut self, row: &[Fe]) -> bool {
        assert_eq!(row.len(), self.cols);
        match &mut self.imp {
            EchelonImpl::Packed { words, rows, pivots } => {
                let mut packed = vec![0u64; *words];
                for (j, x) in row.iter().enumerate() {
                    packed[j / 64] |= x.0 << (j % 64);
                }
                Self::insert_packed_impl(rows, pivots, packed)
            }
            EchelonImpl::Scalar { .. } => self.insert_scalar(row.to_vec()),
        }
    }

    /// Insert a pre-packed GF(2) row (bit j of word j/64 = column j).
    pub fn insert_bits(&mut self, packed: Vec<u64>) -> bool {
        match &mut self.imp {
            EchelonImpl::Packed { words, rows, pivots } => {
                assert_eq!(packed.len(), *words);
                Self::insert_packed_impl(rows, pivots, packed)
            }
            EchelonImpl::Scalar { .. } => panic!("insert_bits on a scalar echelon"),
        }
    }

    fn insert_packed_impl(rows: &mut Vec<Vec<u64>>, pivots: &mut Vec<usize>, mut v: Vec<u64>) -> bool {
        // Reduce against current pivots.
        for (r, &p) in pivots.iter().enumerate() {
            if (v[p / 64] >> (p % 64)) & 1 != 0 {
                let row = &rows[r];
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= *b;
                }
            }
        }
        let Some(pivot) = first_set_bit(&v) else { return false };
        // Back-substitute into existing rows to keep the form reduced.
        for row in rows.iter_mut() {
            if (row[pivot / 64] >> (pivot % 64)) & 1 != 0 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a ^= *b;
                }
            }
        }
        let pos = pivots.partition_point(|&p| p < pivot);
        pivots.insert(pos, pivot);
        rows.insert(pos, v);
        true
    }

    fn insert_scalar(&mut self, mut v: Vec<Fe>) -> bool {
        let f = self.field.clone();
        let EchelonImpl::Scalar { rows, pivots } = &mut self.imp else { unreachable!() };
        for (r, &p) in pivots.iter().enumerate() {
            let c = v[p];
            if !c.is_zero() {
                let row = &rows[r];
                for (a, b) in v.iter_mut().zip(row) {
                    *a = f.add(*a, f.mul(c, *b));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = f.inv(v[pivot]).unwrap();
        for a in v.iter_mut() {
            *a = f.mul(*a, inv);
        }
        for row in rows.iter_mut() {
            let c = row[pivot];
            if !c.is_zero() {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = f.add(*a, f.mul(c, *b));
                }
            }
        }
        let pos = pivots.partition_point(|&p| p < pivot);
        pivots.insert(pos, pivot);
        rows.insert(pos, v);
        true
    }

    /// Reduce `v` modulo the row space, in place. The result is the
    /// canonical residue: zero iff v lies in the span.
    pub fn reduce(&self, v: &mut [Fe]) {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        for (r, &p) in self.pivots().iter().enumerate() {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            match &self.imp {
                EchelonImpl::Packed { rows, .. } => {
                    for (j, x) in v.iter_mut().enumerate() {
                        *x = Fe(x.0 ^ ((rows[r][j / 64] >> (j % 64)) & 1));
                    }
                }
                EchelonImpl::Scalar { rows, .. } => {
                    for (a, b) in v.iter_mut().zip(&rows[r]) {
                        *a = f.add(*a, f.mul(c, *b));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` over the stored rows, or None if v is outside
    /// the span. Exploits reducedness: the coefficient of row r is v at
    /// that row's pivot.
    pub fn express(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let coords: Vec<Fe> = self.pivots().iter().map(|&p| v[p]).collect();
        let f = &self.field;
        let mut w = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let x = self.entry(r, j);
                w[j] = f.add(w[j], f.mul(*c, x));
            }
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Canonical kernel basis of the row space viewed as equations:
    /// one vector per free column, reduced echelon, free columns ascending.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if is_pivot[fc] {
                continue;
            }
            let mut v = vec![Fe::ZERO; self.cols];
            v[fc] = Fe::ONE;
            for (r, &p) in pivots.iter().enumerate() {
                // x_p = Σ_free coeff · x_free (signs coincide in char 2)
                v[p] = self.entry(r, fc);
            }
            basis.push(v);
        }
        basis
    }
}

fn first_set_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Polynomial over the field, coefficients lowest degree first, leading
/// coefficient nonzero unless zero.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    pub field: Field,
    pub coeffs: Vec<Fe>,
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: vec![Fe::ONE] }
    }

    /// λ^n
    pub fn monomial(field: &Field, n: usize) -> Polynomial {
        let mut coeffs = vec![Fe::ZERO; n + 1];
        coeffs[n] = Fe::ONE;
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fe::ONE)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Polynomial::new(f, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::zero(f);
        }
        let mut coeffs = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, coeffs)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// p(M) by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let f = &self.field;
        let n = m.rows;
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
        acc
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{}", c.0)?,
                (1, Fe::ONE) => write!(f, "L")?,
                (1, c) => write!(f, "{}*L", c.0)?,
                (i, Fe::ONE) => write!(f, "L^{i}")?,
                (i, c) => write!(f, "{}*L^{i}", c.0)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gf2, gf4, gf2e, FiniteField};
    use proptest::prelude::*;

    fn m2(rows: Vec<Vec<u64>>) -> Matrix {
        let f = gf2();
        Matrix::from_rows(&f, rows.into_iter().map(|r| r.into_iter().map(Fe).collect()).collect())
    }

    #[test]
    fn nullspace_zero_matrix() {
        let m = Matrix::zeros(&gf2(), 3, 3);
        let (rank, basis) = m.rank_nullspace();
        assert_eq!(rank, 0);
        assert_eq!(basis.len(), 3);
        // standard basis
        for (i, v) in basis.iter().enumerate() {
            assert!(v.iter().enumerate().all(|(j, x)| (x.0 == 1) == (i == j)));
        }
    }

    #[test]
    fn nullspace_identity() {
        let m = Matrix::identity(&gf2(), 3);
        let (rank, basis) = m.rank_nullspace();
        assert_eq!(rank, 3);
        assert!(basis.is_empty());
    }

    #[test]
    fn nullspace_rank_one() {
        let m = m2(vec![vec![1, 1], vec![1, 1]]);
        let (rank, basis) = m.rank_nullspace();
        assert_eq!(rank, 1);
        assert_eq!(basis, vec![vec![Fe(1), Fe(1)]]);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = gf2();
        let id = Matrix::identity(&f, 3);
        let b = vec![Fe(1), Fe(0), Fe(1)];
        assert_eq!(id.solve(&b).unwrap(), b);

        // x + y = 1 and x + y = 0: inconsistent
        let m = m2(vec![vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&[Fe(1), Fe(0)]).is_none());
    }

    #[test]
    fn solve_free_variable_zero() {
        let m = m2(vec![vec![1, 1]]);
        assert_eq!(m.solve(&[Fe(1)]).unwrap(), vec![Fe(1), Fe(0)]);
    }

    #[test]
    fn char_poly_small() {
        let f = gf2();
        let z = Matrix::zeros(&f, 4, 4);
        assert_eq!(z.char_poly().unwrap(), Polynomial::monomial(&f, 4));

        // identity 2x2: (λ-1)² = λ² + 1 in characteristic 2
        let id = Matrix::identity(&f, 2);
        let p = id.char_poly().unwrap();
        assert_eq!(p.coeffs, vec![Fe(1), Fe(0), Fe(1)]);

        // companion matrix of λ² + λ + 1
        let c = m2(vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(c.char_poly().unwrap().coeffs, vec![Fe(1), Fe(1), Fe(1)]);
    }

    #[test]
    fn char_poly_similarity_invariant() {
        use rand::{Rng, SeedableRng};
        let f = gf4();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let n = 5;
            let mut m = Matrix::zeros(&f, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, Fe(rng.gen_range(0..4)));
                }
            }
            // random invertible P
            let p = loop {
                let mut p = Matrix::zeros(&f, n, n);
                for i in 0..n {
                    for j in 0..n {
                        p.set(i, j, Fe(rng.gen_range(0..4)));
                    }
                }
                if p.inverse().is_some() {
                    break p;
                }
            };
            let pinv = p.inverse().unwrap();
            let conj = p.mul(&m).mul(&pinv);
            assert_eq!(m.char_poly().unwrap(), conj.char_poly().unwrap());
        }
    }

    #[test]
    fn operator_matrix_from_action() {
        let f = gf2();
        let id = Matrix::from_action(&f, 3, |j| {
            let mut v = vec![Fe(0); 3];
            v[j] = Fe(1);
            v
        });
        assert_eq!(id, Matrix::identity(&f, 3));

        let swap = Matrix::from_action(&f, 2, |j| {
            let mut v = vec![Fe(0); 2];
            v[1 - j] = Fe(1);
            v
        });
        assert_eq!(swap, m2(vec![vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn inverse_round_trip_gf4() {
        let f = gf4();
        let m = Matrix::from_rows(
            &f,
            vec![
                vec![Fe(2), Fe(1), Fe(0)],
                vec![Fe(0), Fe(3), Fe(1)],
                vec![Fe(1), Fe(0), Fe(1)],
            ],
        );
        if let Some(inv) = m.inverse() {
            assert_eq!(m.mul(&inv), Matrix::identity(&f, 3));
        } else {
            assert_eq!(m.det(), Fe(0));
        }
    }

    proptest! {
        /// rank-nullity, and packed vs scalar elimination agree bit for bit.
        #[test]
        fn packed_matches_scalar_reference(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = gf2();
            let rows = rng.gen_range(1..20usize);
            let cols = rng.gen_range(1..20usize);
            let mut packed = RowEchelon::new(&f, cols);
            let mut scalar = RowEchelon::new_scalar(&f, cols);
            let mut mat = Matrix::zeros(&f, rows, cols);
            for i in 0..rows {
                let row: Vec<Fe> = (0..cols).map(|_| Fe(rng.gen_range(0..2))).collect();
                for (j, &x) in row.iter().enumerate() {
                    mat.set(i, j, x);
                }
                let a = packed.insert(&row);
                let b = scalar.insert(&row);
                prop_assert_eq!(a, b);
            }
            prop_assert_eq!(packed.rank(), scalar.rank());
            prop_assert_eq!(packed.pivots(), scalar.pivots());
            prop_assert_eq!(packed.rows(), scalar.rows());
            prop_assert_eq!(packed.nullspace(), scalar.nullspace());

            let (rank, basis) = mat.rank_nullspace();
            prop_assert_eq!(rank + basis.len(), cols);
            for v in &basis {
                prop_assert!(mat.apply(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn char_poly_cayley_hamilton_gf8(seed in 0u64..100) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = gf2e(3).unwrap();
            let n = rng.gen_range(1..7usize);
            let mut m = Matrix::zeros(&f, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, Fe(rng.gen_range(0..8)));
                }
            }
            let p = m.char_poly().unwrap();
            prop_assert_eq!(p.degree(), n as i64);
            prop_assert!(p.is_monic());
            prop_assert!(p.eval_matrix(&m).is_zero());
        }
    }

    #[test]
    fn express_and_reduce() {
        let f = FiniteField::new(2).unwrap();
        let mut ech = RowEchelon::new(&f, 3);
        ech.insert(&[Fe(1), Fe(2), Fe(0)]);
        ech.insert(&[Fe(0), Fe(1), Fe(1)]);
        let v = vec![Fe(1), Fe(3), Fe(1)]; // row0 + row1
        let coords = ech.express(&v).expect("in span");
        // reconstruct
        let rows = ech.rows();
        let mut acc = vec![Fe(0); 3];
        for (c, row) in coords.iter().zip(&rows) {
            for (a, b) in acc.iter_mut().zip(row) {
                *a = f.add(*a, f.mul(*c, *b));
            }
        }
        assert_eq!(acc, v);
        assert!(ech.express(&[Fe(0), Fe(0), Fe(1)]).is_none());
    }
}
