//! Lie superalgebras in characteristic 2, with squaring.
//!
//! A superalgebra here is g = g_0 ⊕ g_1 where g_0 is a Lie algebra, g_1 a
//! g_0-module, plus a squaring x ↦ x² on g_1 whose polarization is the
//! odd-odd bracket:
//!
//! ```text
//! [x, y] = (x+y)² − x² − y²        (x, y odd)
//! ```
//!
//! The Jacobi identity involving odd elements takes the squaring form
//! [x², y] = [x, [x, y]] and [x², x] = 0; together with the graded Jacobi
//! identity on distinct basis triples this pins the structure exactly
//! (all Koszul signs are trivial in characteristic 2).
//!
//! A Z/2-grading of a plain Lie algebra is carried around as a
//! [`GradedPair`]: the algebra plus an idempotent derivation U projecting
//! onto the odd part. [`one_step_closure`] adjoins the missing 2-powers of
//! odd elements and [`method2_superize`] turns the result into a
//! superalgebra by setting x² := x^{[2]}.

use std::fmt;

use crate::field::{Fe, Field};
use crate::liealg::{LieAlgebra, SeriesKind, SparseVec, Subspace, ValidationReport};
use crate::linalg::{Matrix, RowEchelon};
use crate::{Error, Result};

fn sparsify(v: &[Fe]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, &c)| (k, c)).collect()
}

/// Lie superalgebra over GF(2^k) given by graded structure constants and
/// a squaring table on the odd basis.
#[derive(Clone)]
pub struct LieSuperalgebra {
    pub field: Field,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub labels_even: Vec<String>,
    pub labels_odd: Vec<String>,
    /// [E_i, E_j] in even coordinates.
    sc_ee: Vec<Vec<SparseVec>>,
    /// [E_i, O_j] in odd coordinates.
    sc_eo: Vec<Vec<SparseVec>>,
    /// [O_i, O_j] in even coordinates; symmetric with zero diagonal.
    sc_oo: Vec<Vec<SparseVec>>,
    /// O_i² in even coordinates.
    sq: Vec<Vec<Fe>>,
}

impl fmt::Debug for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieSuperalgebra(sdim ({}|{}) over {})", self.dim_even, self.dim_odd, self.field.name())
    }
}

impl LieSuperalgebra {
    /// Assemble from dense bracket actions given as closures on basis
    /// indices. The odd-odd table must already be symmetric.
    pub fn from_tables(
        field: &Field,
        dim_even: usize,
        dim_odd: usize,
        ee: impl Fn(usize, usize) -> Vec<Fe>,
        eo: impl Fn(usize, usize) -> Vec<Fe>,
        oo: impl Fn(usize, usize) -> Vec<Fe>,
        sq: impl Fn(usize) -> Vec<Fe>,
    ) -> LieSuperalgebra {
        let sc_ee = (0..dim_even)
            .map(|i| (0..dim_even).map(|j| sparsify(&ee(i, j))).collect())
            .collect();
        let sc_eo = (0..dim_even)
            .map(|i| (0..dim_odd).map(|j| sparsify(&eo(i, j))).collect())
            .collect();
        let sc_oo = (0..dim_odd)
            .map(|i| (0..dim_odd).map(|j| sparsify(&oo(i, j))).collect())
            .collect();
        let sq = (0..dim_odd).map(&sq).collect();
        LieSuperalgebra {
            field: field.clone(),
            dim_even,
            dim_odd,
            labels_even: (0..dim_even).map(|i| format!("E{i}")).collect(),
            labels_odd: (0..dim_odd).map(|i| format!("O{i}")).collect(),
            sc_ee,
            sc_eo,
            sc_oo,
            sq,
        }
    }

    /// Matrix Lie superalgebra: basis elements are N×N matrices split by
    /// parity, bracket XY + YX, squaring X ↦ X². Every product must land
    /// back in the span of the given bases.
    pub fn from_matrix_basis(
        field: &Field,
        even: &[Matrix],
        odd: &[Matrix],
    ) -> Result<LieSuperalgebra> {
        let flat = |m: &Matrix| -> Vec<Fe> {
            (0..m.rows).flat_map(|i| m.row(i).to_vec()).collect()
        };
        let n2 = even.first().or(odd.first()).map_or(0, |m| m.rows * m.cols);
        let stack = |mats: &[Matrix]| -> Matrix {
            let mut cols = Matrix::zeros(field, n2, mats.len());
            for (j, m) in mats.iter().enumerate() {
                for (i, v) in flat(m).into_iter().enumerate() {
                    cols.set(i, j, v);
                }
            }
            cols
        };
        let even_cols = stack(even);
        let odd_cols = stack(odd);
        let comm = |a: &Matrix, b: &Matrix| a.mul(b).add(&b.mul(a));
        let express = |cols: &Matrix, m: &Matrix, side: &str| -> Result<Vec<Fe>> {
            cols.solve(&flat(m)).ok_or_else(|| {
                Error::Usage(format!("matrix basis is not closed ({side} product escapes the span)"))
            })
        };
        let mut ee = Vec::new();
        for a in even {
            let mut row = Vec::new();
            for b in even {
                row.push(express(&even_cols, &comm(a, b), "even-even")?);
            }
            ee.push(row);
        }
        let mut eo = Vec::new();
        for a in even {
            let mut row = Vec::new();
            for b in odd {
                row.push(express(&odd_cols, &comm(a, b), "even-odd")?);
            }
            eo.push(row);
        }
        let mut oo = Vec::new();
        let mut sq = Vec::new();
        for (i, a) in odd.iter().enumerate() {
            let mut row = Vec::new();
            for (j, b) in odd.iter().enumerate() {
                if i == j {
                    row.push(vec![Fe::ZERO; even.len()]);
                } else {
                    row.push(express(&even_cols, &comm(a, b), "odd-odd")?);
                }
            }
            oo.push(row);
            sq.push(express(&even_cols, &a.mul(a), "square")?);
        }
        Ok(LieSuperalgebra::from_tables(
            field,
            even.len(),
            odd.len(),
            |i, j| ee[i][j].clone(),
            |i, j| eo[i][j].clone(),
            |i, j| oo[i][j].clone(),
            |i| sq[i].clone(),
        ))
    }

    pub fn with_labels(mut self, even: Vec<String>, odd: Vec<String>) -> Self {
        assert_eq!(even.len(), self.dim_even);
        assert_eq!(odd.len(), self.dim_odd);
        self.labels_even = even;
        self.labels_odd = odd;
        self
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.dim_even, self.dim_odd)
    }

    /// The even part as a plain Lie algebra.
    pub fn even_algebra(&self) -> LieAlgebra {
        LieAlgebra::from_raw_sc(&self.field, self.dim_even, self.sc_ee.clone())
            .with_labels(self.labels_even.clone())
    }

    pub fn bracket_ee(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        bilinear(&self.field, x, y, &self.sc_ee, self.dim_even)
    }

    pub fn bracket_eo(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        bilinear(&self.field, x, y, &self.sc_eo, self.dim_odd)
    }

    pub fn bracket_oo(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        bilinear(&self.field, x, y, &self.sc_oo, self.dim_even)
    }

    pub fn sq_basis(&self, i: usize) -> &[Fe] {
        &self.sq[i]
    }

    /// (Σ a_i O_i)² = Σ a_i² O_i² + Σ_{i<j} a_i a_j [O_i, O_j].
    pub fn square(&self, x: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.dim_even];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a2 = f.square(a);
            for (t, v) in self.sq[i].iter().enumerate() {
                out[t] = f.add(out[t], f.mul(a2, *v));
            }
            for (j, &b) in x.iter().enumerate().skip(i + 1) {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(t, c) in &self.sc_oo[i][j] {
                    out[t] = f.add(out[t], f.mul(ab, c));
                }
            }
        }
        out
    }

    /// Matrix of ad_x on the even part, x even.
    pub fn ad_even(&self, x: &[Fe]) -> Matrix {
        Matrix::from_action(&self.field, self.dim_even, |j| {
            let mut e = vec![Fe::ZERO; self.dim_even];
            e[j] = Fe::ONE;
            self.bracket_ee(x, &e)
        })
    }

    /// Matrix of ad_x on the odd part, x even.
    pub fn ad_odd(&self, x: &[Fe]) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.dim_odd, self.dim_odd);
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dim_odd {
                for &(k, c) in &self.sc_eo[i][j] {
                    let v = f.add(m.get(k, j), f.mul(a, c));
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    /// Full validation: even part is a Lie algebra, graded Jacobi on all
    /// basis triples, the squaring identities, and scalar homogeneity of
    /// the squaring.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.field;
        let mut report = self.even_algebra().validate();
        // odd-odd table symmetric, zero diagonal
        for i in 0..self.dim_odd {
            if !self.sc_oo[i][i].is_empty() {
                report.violations.push(format!("[O{i}, O{i}] != 0"));
            }
            for j in i + 1..self.dim_odd {
                if self.sc_oo[i][j] != self.sc_oo[j][i] {
                    report.violations.push(format!("[O{i}, O{j}] != [O{j}, O{i}]"));
                }
            }
        }
        let ev = |i: usize| -> Vec<Fe> {
            let mut v = vec![Fe::ZERO; self.dim_even];
            v[i] = Fe::ONE;
            v
        };
        let ov = |i: usize| -> Vec<Fe> {
            let mut v = vec![Fe::ZERO; self.dim_odd];
            v[i] = Fe::ONE;
            v
        };
        // Jacobi (even, even, odd)
        for i in 0..self.dim_even {
            for j in i + 1..self.dim_even {
                let bij: Vec<Fe> = {
                    let mut v = vec![Fe::ZERO; self.dim_even];
                    for &(k, c) in &self.sc_ee[i][j] {
                        v[k] = c;
                    }
                    v
                };
                for t in 0..self.dim_odd {
                    let lhs = self.bracket_eo(&bij, &ov(t));
                    let r1 = self.bracket_eo(&ev(i), &self.bracket_eo(&ev(j), &ov(t)));
                    let r2 = self.bracket_eo(&ev(j), &self.bracket_eo(&ev(i), &ov(t)));
                    if !add_eq(f, &lhs, &r1, &r2) {
                        report.violations.push(format!("Jacobi(E{i},E{j},O{t}) fails"));
                    }
                    report.checked += 1;
                }
            }
        }
        // Jacobi (even, odd, odd)
        for i in 0..self.dim_even {
            for s in 0..self.dim_odd {
                for t in s + 1..self.dim_odd {
                    let lhs = self.bracket_ee(&ev(i), &self.bracket_oo(&ov(s), &ov(t)));
                    let r1 = self.bracket_oo(&self.bracket_eo(&ev(i), &ov(s)), &ov(t));
                    let r2 = self.bracket_oo(&ov(s), &self.bracket_eo(&ev(i), &ov(t)));
                    if !add_eq(f, &lhs, &r1, &r2) {
                        report.violations.push(format!("Jacobi(E{i},O{s},O{t}) fails"));
                    }
                    report.checked += 1;
                }
            }
        }
        // Jacobi (odd, odd, odd), distinct
        for r in 0..self.dim_odd {
            for s in r + 1..self.dim_odd {
                for t in s + 1..self.dim_odd {
                    let a = self.bracket_eo(&self.bracket_oo(&ov(r), &ov(s)), &ov(t));
                    let b = self.bracket_eo(&self.bracket_oo(&ov(s), &ov(t)), &ov(r));
                    let c = self.bracket_eo(&self.bracket_oo(&ov(t), &ov(r)), &ov(s));
                    if !add_eq(f, &a, &b, &c) {
                        report.violations.push(format!("Jacobi(O{r},O{s},O{t}) fails"));
                    }
                    report.checked += 1;
                }
            }
        }
        // squaring identities: [x², y] = [x, [x, y]] and [x², x] = 0
        for t in 0..self.dim_odd {
            let s = &self.sq[t];
            for j in 0..self.dim_even {
                let lhs = self.bracket_ee(s, &ev(j));
                let inner = self.bracket_eo(&ev(j), &ov(t)); // = [O_t, E_j]
                let rhs = self.bracket_oo(&ov(t), &inner);
                if lhs != rhs {
                    report.violations.push(format!("[O{t}^2, E{j}] != [O{t},[O{t},E{j}]]"));
                }
                report.checked += 1;
            }
            for j in 0..self.dim_odd {
                let lhs = self.bracket_eo(s, &ov(j));
                let inner = self.bracket_oo(&ov(t), &ov(j));
                let rhs = self.bracket_eo(&inner, &ov(t));
                if lhs != rhs {
                    report.violations.push(format!("[O{t}^2, O{j}] != [O{t},[O{t},O{j}]]"));
                }
                report.checked += 1;
            }
            let extremal = self.bracket_eo(s, &ov(t));
            if extremal.iter().any(|c| !c.is_zero()) {
                report.violations.push(format!("[O{t}^2, O{t}] != 0"));
            }
            report.checked += 1;
        }
        // (ax)² = a²x² on a sample of scalars and vectors
        for a in self.field.elements().take(4) {
            for t in 0..self.dim_odd.min(3) {
                let mut x = ov(t);
                if self.dim_odd > t + 1 {
                    x[t + 1] = Fe::ONE;
                }
                let ax: Vec<Fe> = x.iter().map(|&v| f.mul(a, v)).collect();
                let lhs = self.square(&ax);
                let sq: Vec<Fe> = self.square(&x).iter().map(|&v| f.mul(f.square(a), v)).collect();
                if lhs != sq {
                    report.violations.push(format!("(a·x)² != a²x² at a={a}, O{t}"));
                }
                report.checked += 1;
            }
        }
        report
    }

    /// Graded subalgebra spanned by the given subspaces, re-expressed on
    /// their echelon bases. Errors if not closed under brackets/squares.
    pub fn sub_superalgebra(&self, even: &Subspace, odd: &Subspace) -> Result<LieSuperalgebra> {
        let eb = even.basis();
        let ob = odd.basis();
        let exp_e = |v: &[Fe]| -> Result<Vec<Fe>> {
            even.express(v).ok_or_else(|| Error::Usage("not closed (even)".into()))
        };
        let exp_o = |v: &[Fe]| -> Result<Vec<Fe>> {
            odd.express(v).ok_or_else(|| Error::Usage("not closed (odd)".into()))
        };
        let mut ee = vec![vec![Vec::new(); eb.len()]; eb.len()];
        for i in 0..eb.len() {
            for j in 0..eb.len() {
                ee[i][j] = exp_e(&self.bracket_ee(&eb[i], &eb[j]))?;
            }
        }
        let mut eo = vec![vec![Vec::new(); ob.len()]; eb.len()];
        for i in 0..eb.len() {
            for j in 0..ob.len() {
                eo[i][j] = exp_o(&self.bracket_eo(&eb[i], &ob[j]))?;
            }
        }
        let mut oo = vec![vec![Vec::new(); ob.len()]; ob.len()];
        let mut sq = vec![Vec::new(); ob.len()];
        for i in 0..ob.len() {
            for j in 0..ob.len() {
                oo[i][j] = exp_e(&self.bracket_oo(&ob[i], &ob[j]))?;
            }
            sq[i] = exp_e(&self.square(&ob[i]))?;
        }
        Ok(LieSuperalgebra::from_tables(
            &self.field,
            eb.len(),
            ob.len(),
            |i, j| ee[i][j].clone(),
            |i, j| eo[i][j].clone(),
            |i, j| oo[i][j].clone(),
            |i| sq[i].clone(),
        ))
    }

    /// Span of [g,g] plus all squares — the first derived superalgebra
    /// (squares of odd elements are included, as usual for p = 2).
    pub fn derived_spans(&self) -> (Subspace, Subspace) {
        let f = &self.field;
        let mut ev = RowEchelon::new(f, self.dim_even);
        let mut od = RowEchelon::new(f, self.dim_odd);
        let dense = |sv: &SparseVec, n: usize| -> Vec<Fe> {
            let mut v = vec![Fe::ZERO; n];
            for &(k, c) in sv {
                v[k] = c;
            }
            v
        };
        for i in 0..self.dim_even {
            for j in i + 1..self.dim_even {
                ev.insert(&dense(&self.sc_ee[i][j], self.dim_even));
            }
            for j in 0..self.dim_odd {
                od.insert(&dense(&self.sc_eo[i][j], self.dim_odd));
            }
        }
        for i in 0..self.dim_odd {
            for j in i + 1..self.dim_odd {
                ev.insert(&dense(&self.sc_oo[i][j], self.dim_even));
            }
            ev.insert(&self.sq[i].clone());
        }
        (
            Subspace::from_vectors(f, self.dim_even, ev.rows()),
            Subspace::from_vectors(f, self.dim_odd, od.rows()),
        )
    }

    pub fn derived(&self) -> Result<LieSuperalgebra> {
        let (ev, od) = self.derived_spans();
        self.sub_superalgebra(&ev, &od)
    }

    /// Graded center: even and odd parts commuting with everything.
    pub fn center(&self) -> (Subspace, Subspace) {
        let f = &self.field;
        // even center: rows over (j even) ∪ (t odd)
        let mut ech = RowEchelon::new(f, self.dim_even);
        for j in 0..self.dim_even {
            let mut rows = vec![vec![Fe::ZERO; self.dim_even]; self.dim_even];
            for i in 0..self.dim_even {
                for &(k, c) in &self.sc_ee[i][j] {
                    rows[k][i] = f.add(rows[k][i], c);
                }
            }
            for row in rows {
                ech.insert(&row);
            }
        }
        for t in 0..self.dim_odd {
            let mut rows = vec![vec![Fe::ZERO; self.dim_even]; self.dim_odd];
            for i in 0..self.dim_even {
                for &(k, c) in &self.sc_eo[i][t] {
                    rows[k][i] = f.add(rows[k][i], c);
                }
            }
            for row in rows {
                ech.insert(&row);
            }
        }
        let even_center = Subspace::from_vectors(f, self.dim_even, ech.nullspace());

        let mut echo = RowEchelon::new(f, self.dim_odd);
        for i in 0..self.dim_even {
            let mut rows = vec![vec![Fe::ZERO; self.dim_odd]; self.dim_odd];
            for t in 0..self.dim_odd {
                for &(k, c) in &self.sc_eo[i][t] {
                    rows[k][t] = f.add(rows[k][t], c);
                }
            }
            for row in rows {
                echo.insert(&row);
            }
        }
        for s in 0..self.dim_odd {
            let mut rows = vec![vec![Fe::ZERO; self.dim_odd]; self.dim_even];
            for t in 0..self.dim_odd {
                for &(k, c) in &self.sc_oo[t][s] {
                    rows[k][t] = f.add(rows[k][t], c);
                }
            }
            for row in rows {
                echo.insert(&row);
            }
        }
        let odd_center = Subspace::from_vectors(f, self.dim_odd, echo.nullspace());
        (even_center, odd_center)
    }

    /// Quotient by a graded ideal.
    pub fn quotient(&self, ideal_even: &Subspace, ideal_odd: &Subspace) -> Result<LieSuperalgebra> {
        // ideal checks
        let evb = ideal_even.basis();
        let odb = ideal_odd.basis();
        for i in 0..self.dim_even {
            let mut e = vec![Fe::ZERO; self.dim_even];
            e[i] = Fe::ONE;
            for w in &evb {
                if !ideal_even.contains(&self.bracket_ee(&e, w)) {
                    return Err(Error::Usage("even part is not an ideal".into()));
                }
            }
            for w in &odb {
                if !ideal_odd.contains(&self.bracket_eo(&e, w)) {
                    return Err(Error::Usage("odd part is not an ideal (even action)".into()));
                }
            }
        }
        for t in 0..self.dim_odd {
            let mut o = vec![Fe::ZERO; self.dim_odd];
            o[t] = Fe::ONE;
            for w in &evb {
                if !ideal_odd.contains(&self.bracket_eo(w, &o)) {
                    return Err(Error::Usage("even part is not an ideal (odd action)".into()));
                }
            }
            for w in &odb {
                if !ideal_even.contains(&self.bracket_oo(&o, w)) {
                    return Err(Error::Usage("odd part is not an ideal (odd bracket)".into()));
                }
            }
        }
        for w in &odb {
            if !ideal_even.contains(&self.square(w)) {
                return Err(Error::Usage("ideal odd part squares escape the even part".into()));
            }
        }
        let free_of = |ideal: &Subspace, n: usize| -> Vec<usize> {
            let basis = ideal.basis();
            let mut is_pivot = vec![false; n];
            for row in &basis {
                let p = row.iter().position(|c| !c.is_zero()).unwrap();
                is_pivot[p] = true;
            }
            (0..n).filter(|&i| !is_pivot[i]).collect()
        };
        let free_e = free_of(ideal_even, self.dim_even);
        let free_o = free_of(ideal_odd, self.dim_odd);
        let proj_e = |v: &[Fe]| -> Vec<Fe> {
            let mut w = v.to_vec();
            ideal_even.reduce(&mut w);
            free_e.iter().map(|&c| w[c]).collect()
        };
        let proj_o = |v: &[Fe]| -> Vec<Fe> {
            let mut w = v.to_vec();
            ideal_odd.reduce(&mut w);
            free_o.iter().map(|&c| w[c]).collect()
        };
        let ev = |i: usize| {
            let mut v = vec![Fe::ZERO; self.dim_even];
            v[i] = Fe::ONE;
            v
        };
        let ov = |i: usize| {
            let mut v = vec![Fe::ZERO; self.dim_odd];
            v[i] = Fe::ONE;
            v
        };
        let s = LieSuperalgebra::from_tables(
            &self.field,
            free_e.len(),
            free_o.len(),
            |i, j| proj_e(&self.bracket_ee(&ev(free_e[i]), &ev(free_e[j]))),
            |i, j| proj_o(&self.bracket_eo(&ev(free_e[i]), &ov(free_o[j]))),
            |i, j| proj_e(&self.bracket_oo(&ov(free_o[i]), &ov(free_o[j]))),
            |i| proj_e(&self.square(&ov(free_o[i]))),
        );
        let le = free_e.iter().map(|&i| self.labels_even[i].clone()).collect();
        let lo = free_o.iter().map(|&i| self.labels_odd[i].clone()).collect();
        Ok(s.with_labels(le, lo))
    }

    /// Quotient by the graded center.
    pub fn quotient_by_center(&self) -> Result<LieSuperalgebra> {
        let (ce, co) = self.center();
        self.quotient(&ce, &co)
    }

    /// d-th derived superalgebra.
    pub fn derived_n(&self, d: usize) -> Result<LieSuperalgebra> {
        let mut s = self.clone();
        for _ in 0..d {
            s = s.derived()?;
        }
        Ok(s)
    }

    /// Computable isomorphism invariants used to separate superizations.
    pub fn fingerprint(&self) -> Fingerprint {
        let even = self.even_algebra();
        let full = Subspace::full(&self.field, self.dim_even);
        let (ce, co) = self.center();
        // chain M_0 = g_1, M_{k+1} = [g_0, M_k]
        let mut chain = Vec::new();
        let mut m = Subspace::full(&self.field, self.dim_odd);
        loop {
            let mut next = RowEchelon::new(&self.field, self.dim_odd);
            for i in 0..self.dim_even {
                let mut e = vec![Fe::ZERO; self.dim_even];
                e[i] = Fe::ONE;
                for w in m.basis() {
                    next.insert(&self.bracket_eo(&e, &w));
                }
            }
            let next = Subspace::from_vectors(&self.field, self.dim_odd, next.rows());
            let stable = next == m;
            chain.push(m.dim());
            m = next;
            if stable {
                break;
            }
        }
        Fingerprint {
            sdim: self.sdim(),
            even_lower_central: even.series_dims(SeriesKind::LowerCentral),
            even_derived: even.series_dims(SeriesKind::Derived),
            even_solvable: even.is_solvable(&full),
            even_center_dim: even.center().dim(),
            super_center: (ce.dim(), co.dim()),
            odd_module_chain: chain,
        }
    }

    /// The q(g)-obstruction test: in a queerification, an even element
    /// nilpotent on the even part is nilpotent on the odd part too. An
    /// even x violating that witnesses that the superalgebra is not
    /// isomorphic to any q(g).
    pub fn q_discriminant(&self, x: &[Fe]) -> QVerdict {
        let ade = self.ad_even(x);
        let ado = self.ad_odd(x);
        let nil = |m: &Matrix| m.pow(m.rows.max(1)).is_zero();
        if nil(&ade) && !nil(&ado) {
            QVerdict::NotQ
        } else {
            QVerdict::QLike
        }
    }

    /// Smallest power e with (ad_x)^e = 0 on the even part, if nilpotent.
    pub fn even_nilpotency_index(&self, x: &[Fe]) -> Option<usize> {
        let m = self.ad_even(x);
        let mut acc = Matrix::identity(&self.field, self.dim_even);
        for e in 0..=self.dim_even {
            if acc.is_zero() {
                return Some(e);
            }
            acc = acc.mul(&m);
        }
        if acc.is_zero() {
            Some(self.dim_even + 1)
        } else {
            None
        }
    }

    /// Highest/lowest weight subspaces of the odd module: the joint
    /// kernel of the raising operators and the kernel of the lowering
    /// operator.
    pub fn weight_vectors(&self, raising: &[Vec<Fe>], lowering: &[Fe]) -> (Subspace, Subspace) {
        let mut highest = Subspace::full(&self.field, self.dim_odd);
        for r in raising {
            highest = intersect(&highest, &Subspace::kernel(&self.ad_odd(r)));
        }
        let lowest = Subspace::kernel(&self.ad_odd(lowering));
        (highest, lowest)
    }

    /// Exhaustive search for a proper nonzero graded ideal; only feasible
    /// for tiny dimensions over GF(2).
    pub fn find_proper_graded_ideal(&self) -> Option<(Subspace, Subspace)> {
        assert_eq!(self.field.degree(), 1, "exhaustive ideal search is GF(2)-only");
        let subspaces = |n: usize| -> Vec<Subspace> {
            let mut seen: Vec<Subspace> = Vec::new();
            let total = 1usize << n;
            // span of every subset of nonzero vectors, deduplicated
            let mut stack: Vec<Vec<usize>> = vec![vec![]];
            let mut out: Vec<Subspace> = vec![Subspace::zero(&self.field, n)];
            while let Some(cur) = stack.pop() {
                let last = cur.last().copied().unwrap_or(0);
                for v in last + 1..total {
                    let mut vecs: Vec<Vec<Fe>> = cur
                        .iter()
                        .map(|&m| (0..n).map(|b| Fe(((m >> b) & 1) as u64)).collect())
                        .collect();
                    vecs.push((0..n).map(|b| Fe(((v >> b) & 1) as u64)).collect());
                    let s = Subspace::from_vectors(&self.field, n, vecs);
                    if !out.iter().any(|t| *t == s) {
                        out.push(s.clone());
                        let mut next = cur.clone();
                        next.push(v);
                        stack.push(next);
                    }
                }
            }
            seen.extend(out);
            seen
        };
        for ie in subspaces(self.dim_even) {
            for io in subspaces(self.dim_odd) {
                let d = ie.dim() + io.dim();
                if d == 0 || d == self.dim_even + self.dim_odd {
                    continue;
                }
                if self.is_graded_ideal(&ie, &io) {
                    return Some((ie, io));
                }
            }
        }
        None
    }

    pub fn is_graded_ideal(&self, ie: &Subspace, io: &Subspace) -> bool {
        let ev = |i: usize| {
            let mut v = vec![Fe::ZERO; self.dim_even];
            v[i] = Fe::ONE;
            v
        };
        let ov = |i: usize| {
            let mut v = vec![Fe::ZERO; self.dim_odd];
            v[i] = Fe::ONE;
            v
        };
        for i in 0..self.dim_even {
            for w in ie.basis() {
                if !ie.contains(&self.bracket_ee(&ev(i), &w)) {
                    return false;
                }
            }
            for w in io.basis() {
                if !io.contains(&self.bracket_eo(&ev(i), &w)) {
                    return false;
                }
            }
        }
        for t in 0..self.dim_odd {
            for w in ie.basis() {
                if !io.contains(&self.bracket_eo(&w, &ov(t))) {
                    return false;
                }
            }
            for w in io.basis() {
                if !ie.contains(&self.bracket_oo(&ov(t), &w)) {
                    return false;
                }
            }
        }
        for w in io.basis() {
            if !ie.contains(&self.square(&w)) {
                return false;
            }
        }
        true
    }
}

fn bilinear(
    f: &Field,
    x: &[Fe],
    y: &[Fe],
    table: &[Vec<SparseVec>],
    out_dim: usize,
) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; out_dim];
    for (i, &a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = f.mul(a, b);
            for &(k, c) in &table[i][j] {
                out[k] = f.add(out[k], f.mul(ab, c));
            }
        }
    }
    out
}

fn add_eq(f: &Field, lhs: &[Fe], r1: &[Fe], r2: &[Fe]) -> bool {
    lhs.iter().zip(r1.iter().zip(r2)).all(|(&l, (&a, &b))| l == f.add(a, b))
}

/// Intersection of two subspaces (kernel trick on stacked coordinates).
pub fn intersect(a: &Subspace, b: &Subspace) -> Subspace {
    let f = a.field().clone();
    let n = a.ambient;
    // v ∈ A ∩ B ⟺ v ⊥ (row space of A-annihilator ∪ B-annihilator);
    // equivalently v ∈ kernel of both annihilator systems. Build the
    // combined annihilator: rows spanning A^0 and B^0 in the dual.
    let ann = |s: &Subspace| -> Vec<Vec<Fe>> {
        // kernel of the matrix whose rows are the basis of s, transposed:
        // {φ : φ(s) = 0} as row vectors.
        let basis = s.basis();
        let m = Matrix::from_rows(&f, basis);
        let (_, null) = m.rank_nullspace();
        null
    };
    let mut ech = RowEchelon::new(&f, n);
    for v in ann(a) {
        ech.insert(&v);
    }
    for v in ann(b) {
        ech.insert(&v);
    }
    let m = Matrix::from_rows(&f, ech.rows());
    if m.rows == 0 {
        return Subspace::full(&f, n);
    }
    Subspace::kernel(&m)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QVerdict {
    /// Consistent with being a queerification (inconclusive).
    QLike,
    /// Witnessed NOT isomorphic to any q(g).
    NotQ,
}

/// Isomorphism-invariant record of a superalgebra.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Fingerprint {
    pub sdim: (usize, usize),
    pub even_lower_central: Vec<usize>,
    pub even_derived: Vec<usize>,
    pub even_solvable: bool,
    pub even_center_dim: usize,
    pub super_center: (usize, usize),
    pub odd_module_chain: Vec<usize>,
}

/// A Lie algebra together with a Z/2-grading, encoded as the idempotent
/// derivation U projecting onto the odd part.
pub struct GradedPair {
    pub g: LieAlgebra,
    pub u: Matrix,
}

impl GradedPair {
    pub fn new(g: LieAlgebra, u: Matrix) -> Result<GradedPair> {
        if u.rows != g.dim || u.cols != g.dim {
            return Err(Error::Usage("grading operator has wrong dimensions".into()));
        }
        if !u.is_idempotent() {
            return Err(Error::Usage("grading operator is not idempotent".into()));
        }
        if !g.is_derivation(&u) {
            return Err(Error::Usage("grading operator is not a derivation".into()));
        }
        Ok(GradedPair { g, u })
    }

    /// Even part: kernel of U.
    pub fn even(&self) -> Subspace {
        Subspace::kernel(&self.u)
    }

    /// Odd part: image of U (the fixed space, since U² = U).
    pub fn odd(&self) -> Subspace {
        Subspace::column_space(&self.u)
    }
}

/// Result of the one-step restricted closure of a graded pair: the
/// extended algebra, the extended grading, chosen even/odd bases, and the
/// 2-powers of the odd basis.
pub struct Closure {
    pub h: LieAlgebra,
    pub u: Matrix,
    pub even_basis: Vec<Vec<Fe>>,
    pub odd_basis: Vec<Vec<Fe>>,
    /// squares[i] = (odd_basis[i])^{[2]} in h-coordinates, even component.
    pub squares: Vec<Vec<Fe>>,
    /// number of generators adjoined
    pub added: usize,
}

/// One-step restricted closure with canonical (echelon) even/odd bases.
pub fn one_step_closure(gp: &GradedPair) -> Result<Closure> {
    let even = gp.even().basis();
    let odd = gp.odd().basis();
    one_step_closure_with_bases(gp, even, odd)
}

/// One-step restricted closure over caller-chosen bases of Ker U / Im U.
///
/// For each odd basis element x the derivation (ad_x)² is realized as
/// ad of an element of the extended algebra: reused when inner, adjoined
/// as a fresh even generator otherwise. New generators are appended after
/// the existing basis in odd-basis order, so results are deterministic.
pub fn one_step_closure_with_bases(
    gp: &GradedPair,
    even_basis: Vec<Vec<Fe>>,
    odd_basis: Vec<Vec<Fe>>,
) -> Result<Closure> {
    let g = &gp.g;
    let f = &g.field;
    let n = g.dim;
    // sanity: provided bases must grade correctly
    {
        let ev = gp.even();
        let od = gp.odd();
        if even_basis.len() != ev.dim()
            || odd_basis.len() != od.dim()
            || even_basis.iter().any(|v| !ev.contains(v))
            || odd_basis.iter().any(|v| !od.contains(v))
        {
            return Err(Error::Usage("provided bases do not span Ker U / Im U".into()));
        }
    }

    // (ad_x)² for each odd basis vector
    let targets: Vec<Matrix> = odd_basis
        .iter()
        .map(|x| {
            let a = g.ad(x);
            a.mul(&a)
        })
        .collect();

    // Incrementally extend: unknowns are an element of g plus
    // coefficients of already-added generators (whose ad-action on g is
    // one of the outer targets).
    let flatten = |m: &Matrix| -> Vec<Fe> {
        (0..n).flat_map(|r| m.row(r).to_vec()).collect()
    };
    let mut gen_actions: Vec<Matrix> = Vec::new(); // ad-action on g of each new generator
    let mut gen_source: Vec<usize> = Vec::new(); // odd index that created it
    let mut square_exprs: Vec<(Vec<Fe>, Vec<Fe>)> = Vec::new(); // (g-part, gen coeffs)
    for (i, d) in targets.iter().enumerate() {
        let cols = n + gen_actions.len();
        let mut sys = Matrix::zeros(f, n * n, cols);
        for c in 0..n {
            let ad_c = g.ad_basis(c);
            for (r, v) in flatten(&ad_c).into_iter().enumerate() {
                sys.set(r, c, v);
            }
        }
        for (t, act) in gen_actions.iter().enumerate() {
            for (r, v) in flatten(act).into_iter().enumerate() {
                sys.set(r, n + t, v);
            }
        }
        match sys.solve(&flatten(d)) {
            Some(sol) => {
                square_exprs.push((sol[..n].to_vec(), sol[n..].to_vec()));
            }
            None => {
                gen_actions.push(d.clone());
                gen_source.push(i);
                let mut coeffs = vec![Fe::ZERO; gen_actions.len()];
                *coeffs.last_mut().unwrap() = Fe::ONE;
                square_exprs.push((vec![Fe::ZERO; n], coeffs));
            }
        }
    }

    let added = gen_actions.len();
    let hdim = n + added;
    // structure constants of h
    let mut entries: Vec<(usize, usize, usize, Fe)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for &(k, c) in g.bracket_basis(i, j) {
                entries.push((i, j, k, c));
            }
        }
    }
    for (t, act) in gen_actions.iter().enumerate() {
        for j in 0..n {
            for r in 0..n {
                let c = act.get(r, j);
                if !c.is_zero() {
                    entries.push((n + t, j, r, c));
                }
            }
        }
        // brackets among new generators: [z_t, z_s] = [x_t, D_s(x_t)]
        for s in 0..t {
            let xt = &odd_basis[gen_source[t]];
            let xs = &odd_basis[gen_source[s]];
            let v1 = g.bracket(xt, &gen_actions[s].apply(xt));
            let v2 = g.bracket(xs, &gen_actions[t].apply(xs));
            if v1 != v2 {
                return Err(Error::Internal(
                    "closure generators have inconsistent mutual brackets".into(),
                ));
            }
            for (k, &c) in v1.iter().enumerate() {
                if !c.is_zero() {
                    entries.push((n + t, n + s, k, c));
                }
            }
        }
    }
    let mut labels = g.labels.clone();
    for &src in &gen_source {
        labels.push(format!("sq({})", label_of(&g.labels, &odd_basis[src])));
    }
    let h = LieAlgebra::new(f, hdim, &entries, Some(labels))?;

    // extended grading: U' = U ⊕ 0 (new generators are even)
    let mut u = Matrix::zeros(f, hdim, hdim);
    for r in 0..n {
        for c in 0..n {
            u.set(r, c, gp.u.get(r, c));
        }
    }

    let embed = |v: &[Fe]| -> Vec<Fe> {
        let mut w = vec![Fe::ZERO; hdim];
        w[..n].copy_from_slice(v);
        w
    };
    let mut even_h: Vec<Vec<Fe>> = even_basis.iter().map(|v| embed(v)).collect();
    for t in 0..added {
        let mut w = vec![Fe::ZERO; hdim];
        w[n + t] = Fe::ONE;
        even_h.push(w);
    }
    let odd_h: Vec<Vec<Fe>> = odd_basis.iter().map(|v| embed(v)).collect();

    // squares in h-coordinates, even components only (the odd component
    // of a solution is central and is dropped)
    let mut squares = Vec::new();
    for (gpart, coeffs) in &square_exprs {
        let mut z = embed(gpart);
        for (t, &c) in coeffs.iter().enumerate() {
            z[n + t] = c;
        }
        // project out the odd (central) component
        let uz = u.apply(&z);
        for (a, b) in z.iter_mut().zip(&uz) {
            *a = f.add(*a, *b);
        }
        squares.push(z);
    }

    // closure must be stable: every odd square is inner in h now
    for (i, d) in targets.iter().enumerate() {
        let zh = &squares[i];
        let adz = h.ad(zh);
        for r in 0..n {
            for c in 0..n {
                if adz.get(r, c) != d.get(r, c) {
                    return Err(Error::Internal("closure not stable after one step".into()));
                }
            }
        }
    }

    Ok(Closure { h, u, even_basis: even_h, odd_basis: odd_h, squares, added })
}

fn label_of(labels: &[String], v: &[Fe]) -> String {
    let parts: Vec<&str> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| labels[i].as_str())
        .collect();
    if parts.len() == 1 {
        parts[0].to_string()
    } else {
        parts.join("+")
    }
}

/// "Method 2": Lie superalgebra on the closure with x² := x^{[2]} on the
/// odd part and the bracket retained.
pub fn method2_superize(cl: &Closure) -> Result<LieSuperalgebra> {
    let f = &cl.h.field;
    let hdim = cl.h.dim;
    let de = cl.even_basis.len();
    let dodd = cl.odd_basis.len();
    let cols_of = |basis: &[Vec<Fe>]| -> Matrix {
        let mut m = Matrix::zeros(f, hdim, basis.len());
        for (j, v) in basis.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    };
    let ecols = cols_of(&cl.even_basis);
    let ocols = cols_of(&cl.odd_basis);
    let exp_e = |v: &[Fe]| -> Result<Vec<Fe>> {
        ecols.solve(v).ok_or_else(|| Error::Internal("even product escapes even part".into()))
    };
    let exp_o = |v: &[Fe]| -> Result<Vec<Fe>> {
        ocols.solve(v).ok_or_else(|| Error::Internal("odd product escapes odd part".into()))
    };
    let mut ee = vec![vec![Vec::new(); de]; de];
    for i in 0..de {
        for j in 0..de {
            ee[i][j] = exp_e(&cl.h.bracket(&cl.even_basis[i], &cl.even_basis[j]))?;
        }
    }
    let mut eo = vec![vec![Vec::new(); dodd]; de];
    for i in 0..de {
        for j in 0..dodd {
            eo[i][j] = exp_o(&cl.h.bracket(&cl.even_basis[i], &cl.odd_basis[j]))?;
        }
    }
    let mut oo = vec![vec![Vec::new(); dodd]; dodd];
    let mut sq = vec![Vec::new(); dodd];
    for i in 0..dodd {
        for j in 0..dodd {
            oo[i][j] = exp_e(&cl.h.bracket(&cl.odd_basis[i], &cl.odd_basis[j]))?;
        }
        sq[i] = exp_e(&cl.squares[i])?;
    }
    let s = LieSuperalgebra::from_tables(
        f,
        de,
        dodd,
        |i, j| ee[i][j].clone(),
        |i, j| eo[i][j].clone(),
        |i, j| oo[i][j].clone(),
        |i| sq[i].clone(),
    );
    let le = cl.even_basis.iter().map(|v| label_of(&cl.h.labels, v)).collect();
    let lo = cl.odd_basis.iter().map(|v| label_of(&cl.h.labels, v)).collect();
    let s = s.with_labels(le, lo);
    let rep = s.validate();
    if !rep.ok() {
        return Err(Error::Internal(format!(
            "method-2 superization failed validation: {}",
            rep.violations.join("; ")
        )));
    }
    Ok(s)
}

/// Closure + superization in one step, canonical bases.
pub fn superize(gp: &GradedPair) -> Result<LieSuperalgebra> {
    method2_superize(&one_step_closure(gp)?)
}

/// Closure + superization over caller-chosen bases (used to compare with
/// tables printed in a fixed basis).
pub fn superize_with_bases(
    gp: &GradedPair,
    even_basis: Vec<Vec<Fe>>,
    odd_basis: Vec<Vec<Fe>>,
) -> Result<LieSuperalgebra> {
    method2_superize(&one_step_closure_with_bases(gp, even_basis, odd_basis)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gf2;

    /// The trivial grading U = 0 superizes to the purely even algebra.
    #[test]
    fn trivial_grading_purely_even() {
        let g = LieAlgebra::new(&gf2(), 3, &[(0, 1, 2, Fe::ONE)], None).unwrap();
        let u = Matrix::zeros(&g.field, 3, 3);
        let gp = GradedPair::new(g, u).unwrap();
        let s = superize(&gp).unwrap();
        assert_eq!(s.sdim(), (3, 0));
        assert!(s.validate().ok());
    }

    #[test]
    fn graded_pair_rejects_non_derivation() {
        let g = LieAlgebra::new(&gf2(), 3, &[(0, 1, 2, Fe::ONE)], None).unwrap();
        let u = Matrix::identity(&g.field, 3);
        assert!(GradedPair::new(g, u).is_err());
    }

    #[test]
    fn intersect_subspaces() {
        let f = gf2();
        let a = Subspace::from_vectors(&f, 3, vec![vec![Fe(1), Fe(0), Fe(0)], vec![Fe(0), Fe(1), Fe(0)]]);
        let b = Subspace::from_vectors(&f, 3, vec![vec![Fe(0), Fe(1), Fe(0)], vec![Fe(0), Fe(0), Fe(1)]]);
        let c = intersect(&a, &b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[Fe(0), Fe(1), Fe(0)]));
    }
}
