//! Structure-constant Lie algebras over GF(2^k).
//!
//! In characteristic 2 the alternating property does not follow from
//! antisymmetry: a valid bracket table needs both c^{ii}_k = 0 and
//! off-diagonal symmetry c^{ij}_k = c^{ji}_k, and both are enforced here
//! at construction (or reported by [`LieAlgebra::validate`] for raw
//! tables). The Jacobi identity is checked as the matrix identity
//! ad_{[x,y]} = ad_x ad_y + ad_y ad_x on basis pairs.
//!
//! The derivation solver builds the full linear system
//!
//! ```text
//! c^{ij}_l D_{k,l} + c^{lj}_k D_{l,i} + c^{il}_k D_{l,j} = 0
//! ```
//!
//! (dim³ equations in dim² unknowns — the quadratic term of the grading
//! equation vanishes for p = 2) and eliminates it incrementally; over
//! GF(2) rows are bit-packed.

use std::fmt;

use crate::field::{Fe, Field};
use crate::linalg::{Matrix, RowEchelon};
use crate::{Error, Result};

pub type SparseVec = Vec<(usize, Fe)>;

/// A finite-dimensional Lie algebra given by structure constants
/// c^{ij}_k over a fixed basis.
#[derive(Clone)]
pub struct LieAlgebra {
    pub field: Field,
    pub dim: usize,
    pub labels: Vec<String>,
    /// sc[i][j] = [e_i, e_j] as a sparse vector; both orders stored.
    sc: Vec<Vec<SparseVec>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {} over {})", self.dim, self.field.name())
    }
}

fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    /// Build from bracket entries (i, j, k, c) meaning [e_i, e_j] ∋ c·e_k.
    ///
    /// Entries with i = j are rejected; the mirrored bracket [e_j, e_i] is
    /// filled in automatically (symmetry = antisymmetry off the diagonal
    /// in characteristic 2). If both orders are supplied they must agree.
    pub fn new(
        field: &Field,
        dim: usize,
        entries: &[(usize, usize, usize, Fe)],
        labels: Option<Vec<String>>,
    ) -> Result<LieAlgebra> {
        let mut dense: Vec<Vec<Vec<Fe>>> = Vec::new();
        dense.resize_with(dim, || Vec::new());
        for row in dense.iter_mut() {
            row.resize_with(dim, || Vec::new());
        }
        let mut given = vec![vec![false; dim]; dim];
        for &(i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Usage(format!("index out of range in entry ({i},{j},{k})")));
            }
            if i == j && !c.is_zero() {
                return Err(Error::Usage(format!(
                    "alternating property violated: nonzero [e{i}, e{i}]"
                )));
            }
            let row = &mut dense[i][j];
            if row.is_empty() {
                row.resize(dim, Fe::ZERO);
            }
            row[k] = field.add(row[k], c);
            given[i][j] = true;
        }
        // mirror and check symmetry
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                match (given[i][j], given[j][i]) {
                    (true, false) => {
                        dense[j][i] = dense[i][j].clone();
                        given[j][i] = true;
                    }
                    (true, true) => {
                        if dense[i][j] != dense[j][i] {
                            return Err(Error::Usage(format!(
                                "bracket table not symmetric at ({i},{j})"
                            )));
                        }
                    }
                    _ => {}
                }
            }
        }
        let sc = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, &c)| (k, c))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebra {
            field: field.clone(),
            dim,
            labels: labels.unwrap_or_else(|| default_labels(dim)),
            sc,
        })
    }

    /// Build from a complete raw table sc[i][j] without any checks;
    /// used to exercise the validator on broken input.
    pub fn from_raw_sc(field: &Field, dim: usize, sc: Vec<Vec<SparseVec>>) -> LieAlgebra {
        LieAlgebra { field: field.clone(), dim, labels: default_labels(dim), sc }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> LieAlgebra {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// The zero algebra of a given dimension (abelian).
    pub fn abelian(field: &Field, dim: usize) -> LieAlgebra {
        LieAlgebra {
            field: field.clone(),
            dim,
            labels: default_labels(dim),
            sc: vec![vec![Vec::new(); dim]; dim],
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.sc[i][j]
    }

    /// [x, y] by bilinear extension.
    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.sc[i][j] {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    /// Matrix of ad_x : y ↦ [x, y].
    pub fn ad(&self, x: &[Fe]) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in &self.sc[i][j] {
                    let v = f.add(m.get(k, j), f.mul(a, c));
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let mut x = vec![Fe::ZERO; self.dim];
        x[i] = Fe::ONE;
        self.ad(&x)
    }

    pub fn zero_vec(&self) -> Vec<Fe> {
        vec![Fe::ZERO; self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Fe> {
        let mut v = self.zero_vec();
        v[i] = Fe::ONE;
        v
    }

    /// Check the alternating property and the Jacobi identity on all
    /// basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let f = &self.field;
        for i in 0..self.dim {
            if !self.sc[i][i].is_empty() {
                report.violations.push(format!("[e{i}, e{i}] != 0"));
            }
            for j in i + 1..self.dim {
                if self.sc[i][j] != self.sc[j][i] {
                    report.violations.push(format!("[e{i}, e{j}] != [e{j}, e{i}]"));
                }
            }
        }
        report.checked += self.dim * self.dim;
        // Jacobi as ad_{[ei,ej]} = ad_i ad_j + ad_j ad_i on pairs.
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let mut lhs = Matrix::zeros(f, self.dim, self.dim);
                for &(k, c) in &self.sc[i][j] {
                    lhs = lhs.add(&ads[k].scale(c));
                }
                let rhs = ads[i].mul(&ads[j]).add(&ads[j].mul(&ads[i]));
                if lhs != rhs {
                    report.violations.push(format!("Jacobi fails on pair (e{i}, e{j})"));
                }
                report.checked += self.dim;
            }
        }
        report
    }

    /// The center {z : [z, x] = 0 for all x}.
    pub fn center(&self) -> Subspace {
        let mut ech = RowEchelon::new(&self.field, self.dim);
        // rows indexed by (j, k): sum_i z_i c^{ij}_k = 0
        for j in 0..self.dim {
            let mut rows = vec![vec![Fe::ZERO; self.dim]; self.dim];
            for i in 0..self.dim {
                for &(k, c) in &self.sc[i][j] {
                    rows[k][i] = self.field.add(rows[k][i], c);
                }
            }
            for row in rows {
                ech.insert(&row);
            }
        }
        Subspace::from_vectors(&self.field, self.dim, ech.nullspace())
    }

    /// Span of [a, b] over basis pairs of two subspaces.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut ech = RowEchelon::new(&self.field, self.dim);
        for x in a.basis() {
            for y in b.basis() {
                ech.insert(&self.bracket(&x, &y));
            }
        }
        Subspace { ambient: self.dim, ech }
    }

    /// Lower central series L_k = [L_0, L_{k-1}] or derived series
    /// L^{(k)} = [L^{(k-1)}, L^{(k-1)}], starting at the given
    /// subalgebra. The sequence ends with its first repeated term.
    pub fn series(&self, h: &Subspace, kind: SeriesKind) -> Vec<Subspace> {
        let mut out = vec![h.clone()];
        loop {
            let prev = out.last().unwrap();
            let next = match kind {
                SeriesKind::LowerCentral => self.bracket_span(&out[0], prev),
                SeriesKind::Derived => self.bracket_span(prev, prev),
            };
            let stable = next == *prev;
            out.push(next);
            if stable {
                return out;
            }
        }
    }

    /// Dimension sequence of L_1, L_2, … up to (and excluding the repeat
    /// of) the first stable term — the format used in the summary tables.
    pub fn series_dims(&self, kind: SeriesKind) -> Vec<usize> {
        let s = self.series(&Subspace::full(&self.field, self.dim), kind);
        let dims: Vec<usize> = s.iter().map(|w| w.dim()).collect();
        // dims = [d0, d1, ..., ds, ds]; drop L_0 and the repeated tail term
        dims[1..dims.len() - 1].to_vec()
    }

    pub fn is_solvable(&self, h: &Subspace) -> bool {
        self.series(h, SeriesKind::Derived).last().unwrap().dim() == 0
    }

    /// Canonical basis of the space of derivations
    /// {D : D[x,y] = [Dx,y] + [x,Dy]}.
    ///
    /// For p = 2 this is exactly the solution space of the linearized
    /// grading equation. Every returned matrix is re-verified against the
    /// derivation property after the solve.
    pub fn derivation_space(&self) -> Vec<Matrix> {
        let f = &self.field;
        let n = self.dim;
        let unknowns = n * n;
        let packed = f.degree() == 1;
        let mut ech = RowEchelon::new(f, unknowns);
        let idx = |r: usize, c: usize| r * n + c;
        for i in 0..n {
            for j in i + 1..n {
                if packed {
                    let words = unknowns.div_ceil(64);
                    for k in 0..n {
                        let mut row = vec![0u64; words];
                        let mut flip = |pos: usize| row[pos / 64] ^= 1 << (pos % 64);
                        for &(l, _) in &self.sc[i][j] {
                            flip(idx(k, l));
                        }
                        for l in 0..n {
                            // c^{lj}_k at D_{l,i}
                            if self.sc[l][j].iter().any(|&(t, _)| t == k) {
                                flip(idx(l, i));
                            }
                            // c^{il}_k at D_{l,j}
                            if self.sc[i][l].iter().any(|&(t, _)| t == k) {
                                flip(idx(l, j));
                            }
                        }
                        ech.insert_bits(row);
                    }
                } else {
                    let mut rows = vec![vec![Fe::ZERO; unknowns]; n];
                    for &(l, c) in &self.sc[i][j] {
                        for (k, row) in rows.iter_mut().enumerate() {
                            row[idx(k, l)] = f.add(row[idx(k, l)], c);
                        }
                    }
                    for l in 0..n {
                        for &(k, c) in &self.sc[l][j] {
                            rows[k][idx(l, i)] = f.add(rows[k][idx(l, i)], c);
                        }
                        for &(k, c) in &self.sc[i][l] {
                            rows[k][idx(l, j)] = f.add(rows[k][idx(l, j)], c);
                        }
                    }
                    for row in rows {
                        ech.insert(&row);
                    }
                }
            }
        }
        let basis = ech.nullspace();
        let mats: Vec<Matrix> = basis
            .into_iter()
            .map(|v| {
                let mut m = Matrix::zeros(f, n, n);
                for r in 0..n {
                    for c in 0..n {
                        m.set(r, c, v[idx(r, c)]);
                    }
                }
                m
            })
            .collect();
        for m in &mats {
            debug_assert!(self.is_derivation(m), "solver returned a non-derivation");
        }
        mats
    }

    /// D[x,y] = [Dx,y] + [x,Dy] on all basis pairs.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        for i in 0..self.dim {
            let di = d.col(i);
            for j in i + 1..self.dim {
                let dj = d.col(j);
                let mut lhs = vec![Fe::ZERO; self.dim];
                for &(k, c) in &self.sc[i][j] {
                    for (t, x) in lhs.iter_mut().enumerate() {
                        *x = self.field.add(*x, self.field.mul(c, d.get(t, k)));
                    }
                }
                let rhs1 = self.bracket(&di, &self.basis_vec(j));
                let rhs2 = self.bracket(&self.basis_vec(i), &dj);
                for t in 0..self.dim {
                    if lhs[t] != self.field.add(rhs1[t], rhs2[t]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Solve ad_z = (ad_x)² for z: the 2-power x^{[2]} when the square of
    /// ad_x is an inner derivation, canonical representative (free
    /// coordinates zero), unique modulo center.
    pub fn two_power(&self, x: &[Fe]) -> Option<Vec<Fe>> {
        let target = self.ad(x);
        let target = target.mul(&target);
        self.solve_inner(&target)
    }

    /// Solve ad_z = D for a given matrix D; None when D is an outer
    /// derivation (or not a derivation at all).
    pub fn solve_inner(&self, d: &Matrix) -> Option<Vec<Fe>> {
        let n = self.dim;
        let f = &self.field;
        // stacked system: rows (r1, r2), cols c with entry c^{c r2}_{r1}
        let mut m = Matrix::zeros(f, n * n, n);
        for c in 0..n {
            for r2 in 0..n {
                for &(r1, coeff) in &self.sc[c][r2] {
                    m.set(r1 * n + r2, c, f.add(m.get(r1 * n + r2, c), coeff));
                }
            }
        }
        let mut b = vec![Fe::ZERO; n * n];
        for r1 in 0..n {
            for r2 in 0..n {
                b[r1 * n + r2] = d.get(r1, r2);
            }
        }
        let z = m.solve(&b)?;
        debug_assert_eq!(self.ad(&z), *d);
        Some(z)
    }

    /// True when [g, h] ⊆ h.
    pub fn is_ideal(&self, h: &Subspace) -> bool {
        for i in 0..self.dim {
            for w in h.basis() {
                if !h.contains(&self.bracket(&self.basis_vec(i), &w)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_subalgebra(&self, h: &Subspace) -> bool {
        let b = h.basis();
        for (i, x) in b.iter().enumerate() {
            for y in &b[i + 1..] {
                if !h.contains(&self.bracket(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// Structure constants induced on the canonical complement of an
    /// ideal (the free coordinates of its echelon basis).
    pub fn quotient_by(&self, ideal: &Subspace) -> Result<QuotientAlgebra> {
        if !self.is_ideal(ideal) {
            return Err(Error::Usage("quotient by a subspace that is not an ideal".into()));
        }
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; self.dim];
            for &p in ideal.ech.pivots() {
                is_pivot[p] = true;
            }
            (0..self.dim).filter(|&i| !is_pivot[i]).collect()
        };
        let qdim = free.len();
        let mut entries = Vec::new();
        for a in 0..qdim {
            for b in a + 1..qdim {
                let mut w = self.bracket(&self.basis_vec(free[a]), &self.basis_vec(free[b]));
                ideal.ech.reduce(&mut w);
                for (c, &col) in free.iter().enumerate() {
                    if !w[col].is_zero() {
                        entries.push((a, b, c, w[col]));
                    }
                }
            }
        }
        let labels = free.iter().map(|&i| self.labels[i].clone()).collect();
        let algebra = LieAlgebra::new(&self.field, qdim, &entries, Some(labels))?;
        Ok(QuotientAlgebra { algebra, free, ideal: ideal.clone() })
    }

    /// Re-express the bracket on a subspace closed under it, as a
    /// standalone algebra over the subspace's echelon basis.
    pub fn subalgebra(&self, h: &Subspace) -> Result<LieAlgebra> {
        let basis = h.basis();
        let m = basis.len();
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let w = self.bracket(&basis[a], &basis[b]);
                let coords = h.ech.express(&w).ok_or_else(|| {
                    Error::Usage("subspace is not closed under the bracket".into())
                })?;
                for (c, &v) in coords.iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((a, b, c, v));
                    }
                }
            }
        }
        LieAlgebra::new(&self.field, m, &entries, None)
    }

    /// Fingerprint-style invariants of the algebra itself.
    pub fn invariants(&self) -> AlgebraInvariants {
        AlgebraInvariants {
            dim: self.dim,
            lower_central_dims: self.series_dims(SeriesKind::LowerCentral),
            derived_dims: self.series_dims(SeriesKind::Derived),
            center_dim: self.center().dim(),
            solvable: self.is_solvable(&Subspace::full(&self.field, self.dim)),
        }
    }
}

/// Comparable isomorphism-invariant record for a plain Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraInvariants {
    pub dim: usize,
    pub lower_central_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    pub solvable: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Result of a quotient construction: the algebra plus the data needed to
/// push vectors and operators down from the cover.
pub struct QuotientAlgebra {
    pub algebra: LieAlgebra,
    /// ambient coordinates that form the canonical complement
    pub free: Vec<usize>,
    pub ideal: Subspace,
}

impl QuotientAlgebra {
    /// Image of an ambient vector in quotient coordinates.
    pub fn project(&self, v: &[Fe]) -> Vec<Fe> {
        let mut w = v.to_vec();
        self.ideal.ech.reduce(&mut w);
        self.free.iter().map(|&c| w[c]).collect()
    }

    /// Lift a quotient vector to its canonical ambient representative.
    pub fn lift(&self, v: &[Fe]) -> Vec<Fe> {
        let n = self.ideal.ambient;
        let mut w = vec![Fe::ZERO; n];
        for (a, &col) in self.free.iter().enumerate() {
            w[col] = v[a];
        }
        w
    }
}

/// A subspace of K^n held as a canonical reduced echelon basis.
pub struct Subspace {
    pub ambient: usize,
    pub(crate) ech: RowEchelon,
}

impl Clone for Subspace {
    fn clone(&self) -> Self {
        let mut ech = RowEchelon::new(self.ech.field(), self.ambient);
        for row in self.basis() {
            ech.insert(&row);
        }
        Subspace { ambient: self.ambient, ech }
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.ech.pivots() == other.ech.pivots()
            && self.basis() == other.basis()
    }
}
impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn field(&self) -> &Field {
        self.ech.field()
    }

    pub fn from_vectors(field: &Field, ambient: usize, vecs: Vec<Vec<Fe>>) -> Subspace {
        let mut ech = RowEchelon::new(field, ambient);
        for v in vecs {
            ech.insert(&v);
        }
        Subspace { ambient, ech }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, ech: RowEchelon::new(field, ambient) }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let mut ech = RowEchelon::new(field, ambient);
        for i in 0..ambient {
            let mut v = vec![Fe::ZERO; ambient];
            v[i] = Fe::ONE;
            ech.insert(&v);
        }
        Subspace { ambient, ech }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Subspace {
        Subspace::from_vectors(&m.field, m.rows, (0..m.cols).map(|j| m.col(j)).collect())
    }

    /// Kernel of a matrix.
    pub fn kernel(m: &Matrix) -> Subspace {
        let (_, basis) = m.rank_nullspace();
        Subspace::from_vectors(&m.field, m.cols, basis)
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical (reduced echelon) basis vectors.
    pub fn basis(&self) -> Vec<Vec<Fe>> {
        self.ech.rows()
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.ech.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn reduce(&self, v: &mut [Fe]) {
        self.ech.reduce(v)
    }

    /// Coordinates over the canonical basis, or None if outside.
    pub fn express(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        self.ech.express(v)
    }

    pub fn insert(&mut self, v: &[Fe]) -> bool {
        self.ech.insert(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(&v);
        }
        s
    }
}

/// Outcome of a validation scan; empty violations means pass.
#[derive(Default, Debug, Clone)]
pub struct ValidationReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "pass ({} identities checked)", self.checked)
        } else {
            writeln!(f, "FAIL ({} violations):", self.violations.len())?;
            for v in self.violations.iter().take(10) {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gf2, gf4};

    fn heisenberg() -> LieAlgebra {
        // [e0, e1] = e2
        LieAlgebra::new(&gf2(), 3, &[(0, 1, 2, Fe::ONE)], None).unwrap()
    }

    #[test]
    fn heisenberg_is_valid() {
        let h = heisenberg();
        assert!(h.validate().ok());
        assert_eq!(h.center().dim(), 1);
        assert!(h.center().contains(&[Fe(0), Fe(0), Fe(1)]));
    }

    #[test]
    fn one_sided_table_fails_symmetry() {
        // c^{01}_2 = 1 with no mirrored entry: raw table, validator must flag it.
        let f = gf2();
        let mut sc = vec![vec![Vec::new(); 3]; 3];
        sc[0][1] = vec![(2, Fe::ONE)];
        let g = LieAlgebra::from_raw_sc(&f, 3, sc);
        let rep = g.validate();
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|v| v.contains("!=")));
    }

    #[test]
    fn bracket_alternating() {
        let h = heisenberg();
        let x = vec![Fe(1), Fe(1), Fe(0)];
        assert!(h.bracket(&x, &x).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn abelian_series_terminates() {
        let g = LieAlgebra::abelian(&gf2(), 4);
        let s = g.series(&Subspace::full(&g.field, 4), SeriesKind::LowerCentral);
        assert_eq!(s.len(), 3); // L0 = g, L1 = 0, L2 = 0 (first repeat)
        assert_eq!(s[1].dim(), 0);
        assert!(g.is_solvable(&Subspace::full(&g.field, 4)));
        assert_eq!(g.series_dims(SeriesKind::Derived), vec![0]);
    }

    #[test]
    fn heisenberg_series_dims() {
        let h = heisenberg();
        assert_eq!(h.series_dims(SeriesKind::LowerCentral), vec![1, 0]);
        assert_eq!(h.series_dims(SeriesKind::Derived), vec![1, 0]);
    }

    #[test]
    fn abelian_derivations_full_endomorphisms() {
        for d in [1usize, 2, 3] {
            let g = LieAlgebra::abelian(&gf2(), d);
            assert_eq!(g.derivation_space().len(), d * d);
        }
        let g4 = LieAlgebra::abelian(&gf4(), 2);
        assert_eq!(g4.derivation_space().len(), 4);
    }

    #[test]
    fn heisenberg_derivations_verified() {
        let h = heisenberg();
        let ders = h.derivation_space();
        // dim der(heis_3) = 6 in characteristic 2 (classical fact: 4 outer + 2 inner)
        for d in &ders {
            assert!(h.is_derivation(d));
        }
        assert_eq!(ders.len(), 6);
    }

    #[test]
    fn two_power_central_element_is_zero() {
        let h = heisenberg();
        let z = h.two_power(&[Fe(0), Fe(0), Fe(1)]).unwrap();
        assert!(z.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn quotient_by_zero_ideal_is_identity() {
        let h = heisenberg();
        let q = h.quotient_by(&Subspace::zero(&h.field, 3)).unwrap();
        assert_eq!(q.algebra.dim, 3);
        assert!(q.algebra.validate().ok());
        assert_eq!(q.algebra.bracket_basis(0, 1), h.bracket_basis(0, 1));
    }

    #[test]
    fn quotient_by_center() {
        let h = heisenberg();
        let q = h.quotient_by(&h.center()).unwrap();
        assert_eq!(q.algebra.dim, 2);
        // the quotient of the Heisenberg algebra by its center is abelian
        assert!(q.algebra.bracket_basis(0, 1).is_empty());
    }

    #[test]
    fn quotient_requires_ideal() {
        let h = heisenberg();
        // span(e0) is not an ideal: [e1, e0] = e2 outside
        let s = Subspace::from_vectors(&h.field, 3, vec![vec![Fe(1), Fe(0), Fe(0)]]);
        assert!(h.quotient_by(&s).is_err());
    }

    #[test]
    fn degenerate_zero_dim_everywhere() {
        let g = LieAlgebra::abelian(&gf2(), 0);
        assert!(g.validate().ok());
        assert_eq!(g.center().dim(), 0);
        assert!(g.derivation_space().is_empty());
        assert!(g.series_dims(SeriesKind::Derived).is_empty());
    }
}
