//! Dual vectors and matrices over a ground ring.
//!
//! A dual matrix is a pair of same-shape ground matrices (standard and dual
//! part); products follow the `eps^2 = 0` rule entrywise. Quaternion vector
//! spaces are treated as right modules: scalars multiply vectors on the
//! right, and the inner product is `x^* y`.

use std::io::{BufRead, Write};

use crate::ring::{DualNumber, DualScalar, GroundScalar, Quaternion, Ring};
use crate::{Error, Result};

/// A vector with entries in one ground ring.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundVector {
    ring: Ring,
    data: Vec<Quaternion>,
}

impl GroundVector {
    pub fn zeros(ring: Ring, n: usize) -> Self {
        GroundVector {
            ring,
            data: vec![Quaternion::ZERO; n],
        }
    }

    pub fn from_scalars(ring: Ring, entries: &[GroundScalar]) -> Result<Self> {
        let mut v = GroundVector::zeros(ring, entries.len());
        for (i, e) in entries.iter().enumerate() {
            if e.ring() != ring {
                return Err(Error::RingMismatch(ring, e.ring()));
            }
            v.data[i] = e.as_quaternion();
        }
        Ok(v)
    }

    pub(crate) fn from_quats(ring: Ring, data: Vec<Quaternion>) -> Self {
        GroundVector { ring, data }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> GroundScalar {
        GroundScalar::from_quat(self.ring, self.data[i])
    }

    pub fn set(&mut self, i: usize, v: GroundScalar) {
        assert_eq!(self.ring, v.ring(), "ring mismatch");
        self.data[i] = v.as_quaternion();
    }

    pub(crate) fn quats(&self) -> &[Quaternion] {
        &self.data
    }

    pub(crate) fn quats_mut(&mut self) -> &mut [Quaternion] {
        &mut self.data
    }

    pub fn norm2(&self) -> f64 {
        self.data
            .iter()
            .map(|q| q.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| q.is_zero())
    }

    /// Ring inner product `self^* other`.
    pub fn inner(&self, other: &GroundVector) -> GroundScalar {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        let mut acc = Quaternion::ZERO;
        for (a, b) in self.data.iter().zip(&other.data) {
            acc = acc + a.conj() * *b;
        }
        GroundScalar::from_quat(self.ring, acc)
    }

    /// Right scalar multiple `self * c`.
    pub fn scale_right(&self, c: GroundScalar) -> GroundVector {
        assert_eq!(self.ring, c.ring(), "ring mismatch");
        let cq = c.as_quaternion();
        GroundVector {
            ring: self.ring,
            data: self.data.iter().map(|q| *q * cq).collect(),
        }
    }

    pub fn scale(&self, t: f64) -> GroundVector {
        GroundVector {
            ring: self.ring,
            data: self.data.iter().map(|q| q.scale(t)).collect(),
        }
    }

    pub fn add(&self, other: &GroundVector) -> GroundVector {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        GroundVector {
            ring: self.ring,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &GroundVector) -> GroundVector {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        GroundVector {
            ring: self.ring,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    pub fn conj(&self) -> GroundVector {
        GroundVector {
            ring: self.ring,
            data: self.data.iter().map(|q| q.conj()).collect(),
        }
    }
}

/// A dense matrix with entries in one ground ring, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl GroundMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        GroundMatrix {
            ring,
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = GroundMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = Quaternion::ONE;
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> GroundScalar {
        GroundScalar::from_quat(self.ring, self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroundScalar) {
        assert_eq!(self.ring, v.ring(), "ring mismatch");
        self.data[i * self.cols + j] = v.as_quaternion();
    }

    pub(crate) fn get_q(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set_q(&mut self, i: usize, j: usize, q: Quaternion) {
        self.data[i * self.cols + j] = q;
    }

    pub fn col(&self, j: usize) -> GroundVector {
        GroundVector {
            ring: self.ring,
            data: (0..self.rows).map(|i| self.get_q(i, j)).collect(),
        }
    }

    pub fn set_col(&mut self, j: usize, v: &GroundVector) {
        assert_eq!(self.rows, v.len(), "length mismatch");
        for i in 0..self.rows {
            self.set_q(i, j, v.quats()[i]);
        }
    }

    pub fn from_cols(ring: Ring, rows: usize, cols: &[GroundVector]) -> Self {
        let mut m = GroundMatrix::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_col(j, c);
        }
        m
    }

    pub fn conj_transpose(&self) -> GroundMatrix {
        let mut out = GroundMatrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_q(j, i, self.get_q(i, j).conj());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &GroundMatrix) -> GroundMatrix {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = GroundMatrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get_q(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get_q(i, j);
                    out.set_q(i, j, cur + a * rhs.get_q(k, j));
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &GroundVector) -> GroundVector {
        assert_eq!(self.ring, v.ring(), "ring mismatch");
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let mut out = GroundVector::zeros(self.ring, self.rows);
        for i in 0..self.rows {
            let mut acc = Quaternion::ZERO;
            for j in 0..self.cols {
                acc = acc + self.get_q(i, j) * v.quats()[j];
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, rhs: &GroundMatrix) -> GroundMatrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &GroundMatrix) -> GroundMatrix {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &GroundMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Self {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        GroundMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, t: f64) -> GroundMatrix {
        GroundMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| q.scale(t)).collect(),
        }
    }

    pub fn fro_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|q| q.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| q.is_zero())
    }

    /// `max_ij |(A - A^*)_ij|` by components; zero for Hermitian matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                let diff = self.get_q(i, j) - self.get_q(j, i).conj();
                dev = dev.max(diff.max_component_abs());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= tol
    }

    /// Replaces the matrix by `(A + A^*)/2`, removing roundoff asymmetry.
    pub fn hermitize(&mut self) {
        assert!(self.is_square());
        for i in 0..self.rows {
            for j in i..self.cols {
                let avg = (self.get_q(i, j) + self.get_q(j, i).conj()).scale(0.5);
                self.set_q(i, j, avg);
                self.set_q(j, i, avg.conj());
            }
        }
    }

    /// Extracts the columns `range` as an `n x k` matrix.
    pub fn col_block(&self, start: usize, end: usize) -> GroundMatrix {
        let mut out = GroundMatrix::zeros(self.ring, self.rows, end - start);
        for j in start..end {
            for i in 0..self.rows {
                out.set_q(i, j - start, self.get_q(i, j));
            }
        }
        out
    }
}

/// A dual vector: standard and dual part of the same length and ring.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVector {
    std: GroundVector,
    dual: GroundVector,
}

impl DualVector {
    pub fn new(std: GroundVector, dual: GroundVector) -> Result<Self> {
        if std.ring() != dual.ring() {
            return Err(Error::RingMismatch(std.ring(), dual.ring()));
        }
        if std.len() != dual.len() {
            return Err(Error::ShapeMismatch(format!(
                "standard part has length {}, dual part {}",
                std.len(),
                dual.len()
            )));
        }
        Ok(DualVector { std, dual })
    }

    pub fn zeros(ring: Ring, n: usize) -> Self {
        DualVector {
            std: GroundVector::zeros(ring, n),
            dual: GroundVector::zeros(ring, n),
        }
    }

    pub fn from_scalars(ring: Ring, entries: &[DualScalar]) -> Result<Self> {
        let mut v = DualVector::zeros(ring, entries.len());
        for (i, e) in entries.iter().enumerate() {
            if e.ring() != ring {
                return Err(Error::RingMismatch(ring, e.ring()));
            }
            v.set(i, *e);
        }
        Ok(v)
    }

    pub fn ring(&self) -> Ring {
        self.std.ring()
    }

    pub fn len(&self) -> usize {
        self.std.len()
    }

    pub fn is_empty(&self) -> bool {
        self.std.is_empty()
    }

    pub fn standard(&self) -> &GroundVector {
        &self.std
    }

    pub fn dual_part(&self) -> &GroundVector {
        &self.dual
    }

    pub fn get(&self, i: usize) -> DualScalar {
        DualScalar::from_quats(self.ring(), self.std.quats()[i], self.dual.quats()[i])
    }

    pub fn set(&mut self, i: usize, v: DualScalar) {
        assert_eq!(self.ring(), v.ring(), "ring mismatch");
        self.std.quats_mut()[i] = v.std_quat();
        self.dual.quats_mut()[i] = v.dual_quat();
    }

    /// Appreciable iff the standard part is nonzero.
    pub fn is_appreciable(&self) -> bool {
        !self.std.is_zero()
    }

    /// Dual-number 2-norm: `||x_s|| + Re(x_s^* x_d)/||x_s|| eps` when the
    /// standard part is nonzero, `||x_d|| eps` otherwise.
    pub fn norm2(&self) -> DualNumber {
        let ns = self.std.norm2();
        if ns == 0.0 {
            DualNumber::new(0.0, self.dual.norm2())
        } else {
            // x_s^* x_d + x_d^* x_s = 2 Re(x_s^* x_d), a real number.
            let cross: f64 = self
                .std
                .quats()
                .iter()
                .zip(self.dual.quats())
                .map(|(a, b)| a.dot(*b))
                .sum();
            DualNumber::new(ns, cross / ns)
        }
    }

    /// Flat Euclidean norm `sqrt(||x_s||^2 + ||x_d||^2)`.
    pub fn norm2_r(&self) -> f64 {
        self.std.norm2().hypot(self.dual.norm2())
    }

    /// Unit dual vector test: `||x_s|| = 1` and `Re(x_s^* x_d) = 0`.
    pub fn is_unit(&self, tol: f64) -> bool {
        self.norm2().dist(&DualNumber::ONE) <= tol
    }

    /// Ring inner product `self^* other` under dual arithmetic.
    pub fn inner(&self, other: &DualVector) -> DualScalar {
        assert_eq!(self.ring(), other.ring(), "ring mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        let mut acc = DualScalar::zero(self.ring());
        for i in 0..self.len() {
            acc = acc + self.get(i).conj() * other.get(i);
        }
        acc
    }

    pub fn add(&self, other: &DualVector) -> DualVector {
        DualVector {
            std: self.std.add(&other.std),
            dual: self.dual.add(&other.dual),
        }
    }

    pub fn sub(&self, other: &DualVector) -> DualVector {
        DualVector {
            std: self.std.sub(&other.std),
            dual: self.dual.sub(&other.dual),
        }
    }

    /// Right multiplication by a dual scalar, entrywise.
    pub fn scale_right(&self, c: DualScalar) -> DualVector {
        assert_eq!(self.ring(), c.ring(), "ring mismatch");
        let mut out = DualVector::zeros(self.ring(), self.len());
        for i in 0..self.len() {
            out.set(i, self.get(i) * c);
        }
        out
    }

    /// Right multiplication by a dual number.
    pub fn scale_dual_number(&self, c: DualNumber) -> DualVector {
        DualVector {
            std: self.std.scale(c.standard),
            dual: self.std.scale(c.dual).add(&self.dual.scale(c.standard)),
        }
    }
}

/// A dual matrix: standard and dual part of the same shape and ring.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMatrix {
    std: GroundMatrix,
    dual: GroundMatrix,
}

impl DualMatrix {
    pub fn new(std: GroundMatrix, dual: GroundMatrix) -> Result<Self> {
        if std.ring() != dual.ring() {
            return Err(Error::RingMismatch(std.ring(), dual.ring()));
        }
        if (std.rows(), std.cols()) != (dual.rows(), dual.cols()) {
            return Err(Error::ShapeMismatch(format!(
                "standard part is {}x{}, dual part {}x{}",
                std.rows(),
                std.cols(),
                dual.rows(),
                dual.cols()
            )));
        }
        Ok(DualMatrix { std, dual })
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        DualMatrix {
            std: GroundMatrix::zeros(ring, rows, cols),
            dual: GroundMatrix::zeros(ring, rows, cols),
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        DualMatrix {
            std: GroundMatrix::identity(ring, n),
            dual: GroundMatrix::zeros(ring, n, n),
        }
    }

    pub fn ring(&self) -> Ring {
        self.std.ring()
    }

    pub fn rows(&self) -> usize {
        self.std.rows()
    }

    pub fn cols(&self) -> usize {
        self.std.cols()
    }

    pub fn is_square(&self) -> bool {
        self.std.is_square()
    }

    pub fn standard(&self) -> &GroundMatrix {
        &self.std
    }

    pub fn dual_part(&self) -> &GroundMatrix {
        &self.dual
    }

    pub fn get(&self, i: usize, j: usize) -> DualScalar {
        DualScalar::from_quats(self.ring(), self.std.get_q(i, j), self.dual.get_q(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: DualScalar) {
        assert_eq!(self.ring(), v.ring(), "ring mismatch");
        self.std.set_q(i, j, v.std_quat());
        self.dual.set_q(i, j, v.dual_quat());
    }

    /// Conjugate transpose, taken on both parts; an involution.
    pub fn conj_transpose(&self) -> DualMatrix {
        DualMatrix {
            std: self.std.conj_transpose(),
            dual: self.dual.conj_transpose(),
        }
    }

    /// `AB = A_s B_s + (A_s B_d + A_d B_s) eps`.
    pub fn matmul(&self, rhs: &DualMatrix) -> Result<DualMatrix> {
        if self.ring() != rhs.ring() {
            return Err(Error::RingMismatch(self.ring(), rhs.ring()));
        }
        if self.cols() != rhs.rows() {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        let std = self.std.matmul(&rhs.std);
        let dual = self.std.matmul(&rhs.dual).add(&self.dual.matmul(&rhs.std));
        Ok(DualMatrix { std, dual })
    }

    pub fn matvec(&self, v: &DualVector) -> Result<DualVector> {
        if self.ring() != v.ring() {
            return Err(Error::RingMismatch(self.ring(), v.ring()));
        }
        if self.cols() != v.len() {
            return Err(Error::ShapeMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows(),
                self.cols(),
                v.len()
            )));
        }
        let std = self.std.matvec(v.standard());
        let dual = self
            .std
            .matvec(v.dual_part())
            .add(&self.dual.matvec(v.standard()));
        DualVector::new(std, dual)
    }

    pub fn add(&self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix {
            std: self.std.add(&rhs.std),
            dual: self.dual.add(&rhs.dual),
        }
    }

    pub fn sub(&self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix {
            std: self.std.sub(&rhs.std),
            dual: self.dual.sub(&rhs.dual),
        }
    }

    /// Dual-number Frobenius norm (case split on a zero standard part).
    pub fn fro_norm(&self) -> DualNumber {
        let ns = self.std.fro_norm();
        if ns == 0.0 {
            DualNumber::new(0.0, self.dual.fro_norm())
        } else {
            // tr(A_s^* A_d + A_d^* A_s) = 2 Re<A_s, A_d>, a real number.
            let cross: f64 = self
                .std
                .data
                .iter()
                .zip(&self.dual.data)
                .map(|(a, b)| a.dot(*b))
                .sum();
            DualNumber::new(ns, cross / ns)
        }
    }

    /// Flat Euclidean norm `sqrt(||A_s||_F^2 + ||A_d||_F^2)`.
    pub fn fro_norm_r(&self) -> f64 {
        self.std.fro_norm().hypot(self.dual.fro_norm())
    }

    /// `max_ij |(A - A^*)_ij|`, maximized over both parts.
    pub fn hermitian_deviation(&self) -> f64 {
        self.std
            .hermitian_deviation()
            .max(self.dual.hermitian_deviation())
    }

    /// Default Hermitian tolerance, relative to the matrix scale.
    pub fn default_hermitian_tol(&self) -> f64 {
        1e-10 * self.fro_norm_r()
    }

    pub fn is_hermitian(&self, tol: Option<f64>) -> bool {
        self.is_square()
            && self.hermitian_deviation() <= tol.unwrap_or_else(|| self.default_hermitian_tol())
    }
}

/// Reads a dual matrix in the text format:
/// a header `ring rows cols`, then one entry per line as `i j <scalar>` with
/// 1-based indices. Omitted entries are zero; blank lines and `#` comments are
/// skipped.
pub fn read_matrix<R: BufRead>(reader: R) -> Result<DualMatrix> {
    let mut header: Option<(Ring, usize, usize)> = None;
    let mut matrix: Option<DualMatrix> = None;
    let mut seen: Vec<bool> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let mut toks = text.split_whitespace();
                let at = |msg: &str| Error::Parse {
                    line: line_no,
                    msg: msg.to_string(),
                };
                let ring = Ring::from_tag(toks.next().ok_or_else(|| at("missing ring tag"))?)
                    .map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                let rows: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| at("bad row count"))?;
                let cols: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| at("bad column count"))?;
                if toks.next().is_some() {
                    return Err(at("trailing tokens in header"));
                }
                header = Some((ring, rows, cols));
                matrix = Some(DualMatrix::zeros(ring, rows, cols));
                seen = vec![false; rows * cols];
            }
            Some((ring, rows, cols)) => {
                let m = matrix.as_mut().unwrap();
                let (i, j, scalar) = parse_indexed_scalar(ring, text, line_no)?;
                if i == 0 || i > rows || j == 0 || j > cols {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("entry ({i}, {j}) outside {rows}x{cols}"),
                    });
                }
                let flat = (i - 1) * cols + (j - 1);
                if seen[flat] {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("duplicate entry ({i}, {j})"),
                    });
                }
                seen[flat] = true;
                m.set(i - 1, j - 1, scalar);
            }
        }
    }

    matrix.ok_or(Error::Parse {
        line: 0,
        msg: "empty matrix file".to_string(),
    })
}

pub(crate) fn parse_indexed_scalar(
    ring: Ring,
    text: &str,
    line_no: usize,
) -> Result<(usize, usize, DualScalar)> {
    let mut toks = text.splitn(3, char::is_whitespace);
    let parse_idx = |tok: Option<&str>| -> Result<usize> {
        tok.and_then(|t| t.parse().ok()).ok_or(Error::Parse {
            line: line_no,
            msg: "bad index".to_string(),
        })
    };
    let i = parse_idx(toks.next())?;
    let j = parse_idx(toks.next())?;
    let rest = toks.next().unwrap_or("");
    let scalar = DualScalar::from_text(ring, rest).map_err(|e| Error::Parse {
        line: line_no,
        msg: e.to_string(),
    })?;
    Ok((i, j, scalar))
}

/// Writes a dual matrix in the text format, listing every nonzero entry.
pub fn write_matrix<W: Write>(mut w: W, m: &DualMatrix) -> Result<()> {
    writeln!(w, "{} {} {}", m.ring().tag(), m.rows(), m.cols())?;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if !e.std_quat().is_zero() || !e.dual_quat().is_zero() {
                writeln!(w, "{} {} {}", i + 1, j + 1, e.to_text())?;
            }
        }
    }
    Ok(())
}
