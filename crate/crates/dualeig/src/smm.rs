//! The supplement matrix method: full eigendecomposition of a dual Hermitian
//! matrix, plus the dual determinant and characteristic polynomial.
//!
//! The standard parts of the dual eigenvalues are the spectrum of `A_s`. For
//! a simple standard eigenvalue the dual part is `x_s^* A_d x_s`; for a
//! k-fold eigenvalue with orthonormal eigenbasis `W` the k dual parts are the
//! spectrum of the k x k Hermitian supplement matrix `W^* A_d W`, with
//! standard eigenvectors `W y_i`. Dual eigenvector corrections solve the
//! singular system `(lambda_s I - A_s) x_d = (A_d - lambda_d I) x_s` through
//! the spectral pseudoinverse, which also makes `x_s^* x_d = 0`.

use std::ops::Range;

use crate::dmat::{DualMatrix, DualVector, GroundMatrix, GroundVector};
use crate::heig::{self, GroundEigenDecomposition};
use crate::ring::{DualNumber, GroundScalar};
use crate::{Error, Result};

/// A group of (numerically) equal standard eigenvalues with an orthonormal
/// basis of the joint eigenspace.
#[derive(Clone, Debug)]
pub struct EigenCluster {
    /// Representative standard eigenvalue (group mean).
    pub lambda_s: f64,
    /// Multiplicity of the group.
    pub multiplicity: usize,
    /// `n x multiplicity` matrix with orthonormal eigenvector columns.
    pub basis: GroundMatrix,
    /// The supplement matrix `W^* A_d W` of this cluster.
    pub supplement: GroundMatrix,
}

/// One dual eigenpair with its verified backward error.
#[derive(Clone, Debug)]
pub struct DualEigenPair {
    pub value: DualNumber,
    pub vector: DualVector,
    /// Flat 2-norm of `A x - x lambda`.
    pub residual: f64,
}

/// Eigenpairs sorted descending in the dual-number order, plus the cluster
/// structure of the standard spectrum.
#[derive(Clone, Debug)]
pub struct DualEigenDecomposition {
    pub pairs: Vec<DualEigenPair>,
    pub clusters: Vec<EigenCluster>,
    /// Largest imaginary residue discarded when a dual part was symmetrized
    /// to a real number; a diagnostic, zero in exact arithmetic.
    pub imag_residue: f64,
}

impl DualEigenDecomposition {
    pub fn values(&self) -> Vec<DualNumber> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.pairs.iter().fold(0.0, |acc, p| acc.max(p.residual))
    }
}

/// Tuning knobs for [`smm_eig_with`].
#[derive(Clone, Copy, Debug)]
pub struct SmmOptions {
    /// Absolute Hermitian tolerance; `None` means `1e-10 * ||A||_FR`.
    pub hermitian_tol: Option<f64>,
    /// Relative gap below which standard eigenvalues count as equal.
    pub cluster_tol: f64,
    /// Keep only the pairs with the `top_k` largest standard eigenvalues,
    /// extended so a cluster is never split. Extra eigenvalues are always
    /// computed, so truncation at a cluster boundary is detected.
    pub top_k: Option<usize>,
}

impl Default for SmmOptions {
    fn default() -> Self {
        SmmOptions {
            hermitian_tol: None,
            cluster_tol: 1e-8,
            top_k: None,
        }
    }
}

/// Groups an ascending list of standard eigenvalues into clusters of equal
/// values: consecutive gaps of at most `tol * max(1, |lambda|)` stay in one
/// group. Returns the group mean and the index range of each group.
pub fn cluster_eigenvalues(values: &[f64], tol: f64) -> Vec<(f64, Range<usize>)> {
    heig::gap_clusters(values, |a: f64, b: f64| {
        tol * 1.0f64.max(a.abs()).max(b.abs())
    })
    .into_iter()
    .map(|r| {
        let mean = values[r.clone()].iter().sum::<f64>() / r.len() as f64;
        (mean, r)
    })
    .collect()
}

/// The supplement matrix `W^* A_d W` of an eigenvalue cluster; Hermitian
/// whenever `A_d` is.
pub fn supplement_matrix(w: &GroundMatrix, a_d: &GroundMatrix) -> GroundMatrix {
    let mut s = w.conj_transpose().matmul(&a_d.matmul(w));
    s.hermitize();
    s
}

/// Minimal-norm solution of `(lambda_s I - A_s) x_d = (A_d - lambda_d I) x_s`
/// through the spectral pseudoinverse of `A_s`. Standard eigenvalues within
/// `cluster_tol * max(1, |lambda_s|)` of `lambda_s` are treated as the kernel;
/// the right-hand side must be orthogonal to it, otherwise `lambda_d` was not
/// a supplement eigenvalue and the system is inconsistent.
pub fn dual_correction(
    lambda_s: f64,
    lambda_d: f64,
    x_s: &GroundVector,
    ground: &GroundEigenDecomposition,
    a_d: &GroundMatrix,
    cluster_tol: f64,
) -> Result<GroundVector> {
    let n = x_s.len();
    let ring = x_s.ring();
    let lambda_dual = GroundScalar::one(ring).scale(lambda_d);
    let rhs = a_d
        .matvec(x_s)
        .sub(&x_s.scale_right(lambda_dual));

    let kernel_width = cluster_tol * 1.0f64.max(lambda_s.abs());
    let consistency_tol = 1e-10 * (1.0 + a_d.fro_norm());

    let mut x_d = GroundVector::zeros(ring, n);
    let mut kernel_residual_sq = 0.0;
    for j in 0..n {
        let u = ground.vectors.col(j);
        let coeff = u.inner(&rhs);
        let gap = lambda_s - ground.values[j];
        if gap.abs() <= kernel_width {
            kernel_residual_sq += coeff.abs().powi(2);
        } else {
            x_d = x_d.add(&u.scale_right(coeff.scale(1.0 / gap)));
        }
    }

    let kernel_residual = kernel_residual_sq.sqrt();
    if kernel_residual > consistency_tol {
        return Err(Error::InconsistentSystem {
            residual: kernel_residual,
            tolerance: consistency_tol,
        });
    }
    Ok(x_d)
}

/// Full dual eigendecomposition of a dual Hermitian matrix with default
/// options.
pub fn smm_eig(a: &DualMatrix) -> Result<DualEigenDecomposition> {
    smm_eig_with(a, &SmmOptions::default())
}

pub fn smm_eig_with(a: &DualMatrix, opts: &SmmOptions) -> Result<DualEigenDecomposition> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let tolerance = opts
        .hermitian_tol
        .unwrap_or_else(|| a.default_hermitian_tol());
    let deviation = a.hermitian_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }

    let a_s = a.standard();
    let a_d = a.dual_part();
    let ground = heig::eig_hermitian_with_tol(a_s, Some(tolerance))?;

    let mut pairs = Vec::with_capacity(a.rows());
    let mut clusters = Vec::new();
    let mut imag_residue = 0.0f64;

    for (lambda_s, range) in cluster_eigenvalues(&ground.values, opts.cluster_tol) {
        let w = ground.vectors.col_block(range.start, range.end);
        let supplement = supplement_matrix(&w, a_d);
        let k = range.len();

        // Dual parts and standard vectors for this cluster.
        let duals: Vec<(f64, GroundVector)> = if k == 1 {
            let x_s = w.col(0);
            let raw = x_s.inner(&a_d.matvec(&x_s));
            let lambda_d = raw.re();
            let imag = (raw - GroundScalar::one(x_s.ring()).scale(lambda_d)).abs();
            imag_residue = imag_residue.max(imag);
            vec![(lambda_d, x_s)]
        } else {
            let sub = heig::eig_hermitian_with_tol(&supplement, Some(tolerance))?;
            (0..k)
                .map(|i| {
                    let mut x_s = w.matvec(&sub.vectors.col(i));
                    heig::normalize_phase(&mut x_s);
                    (sub.values[i], x_s)
                })
                .collect()
        };

        for (lambda_d, x_s) in duals {
            let x_d = dual_correction(lambda_s, lambda_d, &x_s, &ground, a_d, opts.cluster_tol)?;
            let value = DualNumber::new(lambda_s, lambda_d);
            let vector = DualVector::new(x_s, x_d)?;
            let residual = a.matvec(&vector)?.sub(&vector.scale_dual_number(value));
            pairs.push(DualEigenPair {
                value,
                vector,
                residual: residual.norm2_r(),
            });
        }

        clusters.push(EigenCluster {
            lambda_s,
            multiplicity: k,
            basis: w,
            supplement,
        });
    }

    pairs.sort_by(|a, b| b.value.total_cmp(&a.value));
    clusters.sort_by(|a, b| b.lambda_s.total_cmp(&a.lambda_s));

    if let Some(k) = opts.top_k {
        // Never split a cluster: extend the cut to its boundary.
        let mut keep = k.min(pairs.len());
        while keep < pairs.len()
            && (pairs[keep].value.standard - pairs[keep - 1].value.standard).abs()
                <= opts.cluster_tol * 1.0f64.max(pairs[keep].value.standard.abs())
        {
            keep += 1;
        }
        pairs.truncate(keep);
    }

    Ok(DualEigenDecomposition {
        pairs,
        clusters,
        imag_residue,
    })
}

/// Determinant of a dual Hermitian matrix: the product of its dual
/// eigenvalues (order-independent, dual numbers commute).
pub fn determinant(a: &DualMatrix) -> Result<DualNumber> {
    let dec = smm_eig(a)?;
    Ok(dec
        .pairs
        .iter()
        .fold(DualNumber::ONE, |acc, p| acc * p.value))
}

/// Evaluates the characteristic polynomial `prod(lambda - lambda_i)` at a
/// dual number. Zero at every eigenvalue; when the standard part of `lambda`
/// is a multiple eigenvalue of `A_s` the product of two infinitesimal factors
/// vanishes for *any* dual part, so the polynomial has infinitely many roots
/// that are not eigenvalues.
pub fn charpoly_eval(a: &DualMatrix, lambda: DualNumber) -> Result<DualNumber> {
    let dec = smm_eig(a)?;
    Ok(dec
        .pairs
        .iter()
        .fold(DualNumber::ONE, |acc, p| acc * (lambda - p.value)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{DualScalar, Ring};

    /// 3x3 dual complex Hermitian adjacency with an unbalanced gain cycle:
    /// standard spectrum (-1, -1, 2) and dual parts (0, +-2/sqrt(3)).
    pub(crate) fn unbalanced_triangle() -> DualMatrix {
        let mut a = DualMatrix::zeros(Ring::Complex, 3, 3);
        let entries = [
            (0, 1, DualScalar::complex(1.0, 0.0, 0.0, 1.0)),
            (0, 2, DualScalar::complex(1.0, 0.0, 0.0, -2.0)),
            (1, 2, DualScalar::complex(1.0, 0.0, 0.0, -1.0)),
        ];
        for (i, j, v) in entries {
            a.set(i, j, v);
            a.set(j, i, v.conj());
        }
        a
    }

    fn diag_dual(entries: &[(f64, f64)]) -> DualMatrix {
        let n = entries.len();
        let mut a = DualMatrix::zeros(Ring::Real, n, n);
        for (i, (s, d)) in entries.iter().enumerate() {
            a.set(i, i, DualScalar::real(*s, *d));
        }
        a
    }

    #[test]
    fn clustering_detects_multiplicity() {
        let groups = cluster_eigenvalues(&[-1.0, -1.0, 2.0], 1e-8);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0], (-1.0, 0..2));
        assert_eq!(groups[1], (2.0, 2..3));

        let singletons = cluster_eigenvalues(&[1.0, 2.0, 3.0], 1e-8);
        assert_eq!(singletons.len(), 3);

        let merged = cluster_eigenvalues(&[1.0, 1.0 + 1e-12], 1e-8);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].1, 0..2);
    }

    #[test]
    fn diagonal_dual_matrix() {
        let a = diag_dual(&[(1.0, 2.0), (3.0, 4.0)]);
        let dec = smm_eig(&a).unwrap();
        let vals = dec.values();
        assert_eq!(vals[0], DualNumber::new(3.0, 4.0));
        assert_eq!(vals[1], DualNumber::new(1.0, 2.0));
        // Eigenvectors are the standard basis up to phase.
        assert!((dec.pairs[0].vector.get(1).magnitude().standard - 1.0).abs() < 1e-14);
        assert!(dec.max_residual() < 1e-14);
    }

    #[test]
    fn unbalanced_triangle_spectrum() {
        let a = unbalanced_triangle();
        let dec = smm_eig(&a).unwrap();
        let vals = dec.values();
        let split = 2.0 / 3f64.sqrt();
        assert!(vals[0].dist(&DualNumber::new(2.0, 0.0)) < 1e-10);
        assert!(vals[1].dist(&DualNumber::new(-1.0, split)) < 1e-10);
        assert!(vals[2].dist(&DualNumber::new(-1.0, -split)) < 1e-10);
        assert!(dec.max_residual() <= 1e-8 * (1.0 + a.fro_norm_r()));

        // The supplement matrix of the double eigenvalue has spectrum
        // -+2/sqrt(3) regardless of the basis the solver picked.
        let cluster = dec
            .clusters
            .iter()
            .find(|c| c.multiplicity == 2)
            .expect("double eigenvalue");
        let sub = heig::eig_hermitian(&cluster.supplement).unwrap();
        assert!((sub.values[0] + split).abs() < 1e-10);
        assert!((sub.values[1] - split).abs() < 1e-10);

        // Minimal-norm corrections are orthogonal to their standard parts.
        for p in &dec.pairs {
            let ortho = p.vector.standard().inner(p.vector.dual_part());
            assert!(ortho.abs() < 1e-10);
        }
    }

    #[test]
    fn supplement_matrix_edge_cases() {
        let a = unbalanced_triangle();
        let ground = heig::eig_hermitian(a.standard()).unwrap();

        // Zero dual part gives a zero supplement matrix.
        let w = ground.vectors.col_block(0, 2);
        let zero = supplement_matrix(&w, &GroundMatrix::zeros(Ring::Complex, 3, 3));
        assert!(zero.is_zero());

        // A singleton basis gives the 1x1 matrix [x^* A_d x]; for the top
        // eigenvector of this example that value is 0.
        let v1 = ground.vectors.col_block(2, 3);
        let s = supplement_matrix(&v1, a.dual_part());
        assert_eq!((s.rows(), s.cols()), (1, 1));
        assert!(s.get(0, 0).abs() < 1e-12);
    }

    #[test]
    fn correction_vanishes_for_zero_dual_part() {
        let a = unbalanced_triangle();
        let a_zero = DualMatrix::new(a.standard().clone(), GroundMatrix::zeros(Ring::Complex, 3, 3))
            .unwrap();
        let dec = smm_eig(&a_zero).unwrap();
        for p in &dec.pairs {
            assert_eq!(p.value.dual, 0.0);
            assert!(p.vector.dual_part().norm2() < 1e-12);
        }
    }

    #[test]
    fn correction_rejects_wrong_dual_part() {
        let a = unbalanced_triangle();
        let ground = heig::eig_hermitian(a.standard()).unwrap();
        let x_s = ground.vectors.col(2); // simple eigenvalue 2
        let r = dual_correction(2.0, 7.5, &x_s, &ground, a.dual_part(), 1e-8);
        assert!(matches!(r, Err(Error::InconsistentSystem { .. })));
    }

    #[test]
    fn determinant_examples() {
        let id = DualMatrix::identity(Ring::Real, 4);
        assert_eq!(determinant(&id).unwrap(), DualNumber::ONE);

        let a = diag_dual(&[(1.0, 2.0), (3.0, 4.0)]);
        assert_eq!(determinant(&a).unwrap(), DualNumber::new(3.0, 10.0));

        let tri = unbalanced_triangle();
        assert!(determinant(&tri)
            .unwrap()
            .dist(&DualNumber::new(2.0, 0.0))
            < 1e-9);
    }

    #[test]
    fn charpoly_roots_and_nonroots() {
        let a = unbalanced_triangle();
        let at_eigen = charpoly_eval(&a, DualNumber::new(2.0, 0.0)).unwrap();
        assert!(at_eigen.two_r() < 1e-9);

        let at_zero = charpoly_eval(&a, DualNumber::ZERO).unwrap();
        assert!(at_zero.dist(&DualNumber::new(-2.0, 0.0)) < 1e-9);

        // Zero standard part with multiplicity two: any dual part is a root.
        let b = diag_dual(&[(0.0, 1.0), (0.0, -1.0)]);
        let at_arbitrary = charpoly_eval(&b, DualNumber::new(0.0, 5.0)).unwrap();
        assert!(at_arbitrary.two_r() < 1e-14);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut a = DualMatrix::zeros(Ring::Complex, 2, 2);
        a.set(0, 1, DualScalar::complex(1.0, 0.0, 0.0, 0.0));
        assert!(matches!(smm_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn top_k_never_splits_a_cluster() {
        let a = diag_dual(&[(5.0, 0.0), (3.0, 1.0), (3.0, -1.0), (1.0, 0.0)]);
        let dec = smm_eig_with(
            &a,
            &SmmOptions {
                top_k: Some(2),
                ..SmmOptions::default()
            },
        )
        .unwrap();
        // Asking for 2 pairs lands inside the double eigenvalue 3; the cut
        // is extended to keep the cluster whole.
        assert_eq!(dec.pairs.len(), 3);
        assert_eq!(dec.pairs[0].value.standard, 5.0);
        assert_eq!(dec.pairs[1].value.standard, 3.0);
        assert_eq!(dec.pairs[2].value.standard, 3.0);
    }
}
