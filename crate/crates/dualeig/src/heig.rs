//! Full eigendecomposition of Hermitian matrices over the ground rings.
//!
//! The core is a dense real symmetric solver (Householder tridiagonalization
//! followed by implicit-shift QL, after the classic EISPACK/Jama routines).
//! Complex Hermitian matrices are solved through their real 2n x 2n
//! embedding, and quaternion Hermitian matrices through the complex adjoint
//! embedding on top of that. Both embeddings double every eigenvalue, so the
//! decoding step groups the spectrum into even clusters and rebuilds
//! ring-native eigenvectors by modified Gram-Schmidt with right-scalar
//! coefficients.

use std::ops::Range;

use crate::dmat::{GroundMatrix, GroundVector};
use crate::ring::{GroundScalar, Quaternion, Ring};
use crate::{Error, Result};

/// Eigenvalues (ascending, always real) and orthonormal eigenvectors of a
/// ground Hermitian matrix. Columns of `vectors` satisfy `H u_k = lambda_k u_k`.
#[derive(Clone, Debug)]
pub struct GroundEigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: GroundMatrix,
}

/// Decomposes a Hermitian matrix over any ground ring.
///
/// The input must be Hermitian within `1e-10 * ||H||_F`; use
/// [`eig_hermitian_with_tol`] to override.
pub fn eig_hermitian(h: &GroundMatrix) -> Result<GroundEigenDecomposition> {
    eig_hermitian_with_tol(h, None)
}

pub fn eig_hermitian_with_tol(
    h: &GroundMatrix,
    tol: Option<f64>,
) -> Result<GroundEigenDecomposition> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let tolerance = tol.unwrap_or(1e-10 * h.fro_norm());
    let deviation = h.hermitian_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }

    let mut dec = match h.ring() {
        Ring::Real => eig_real(h)?,
        Ring::Complex => eig_complex(h)?,
        Ring::Quaternion => {
            let chi = complex_adjoint(h)?;
            let inner = eig_complex(&chi)?;
            decode_quaternion(h.rows(), &inner)?
        }
    };

    for j in 0..dec.vectors.cols() {
        let mut col = dec.vectors.col(j);
        normalize_phase(&mut col);
        dec.vectors.set_col(j, &col);
    }
    Ok(dec)
}

/// Complex adjoint of a quaternion matrix: writing `A = A1 + A2 j` with
/// complex `A1`, `A2`, returns the `2n x 2n` complex matrix
/// `[[A1, A2], [-conj(A2), conj(A1)]]`. The map preserves products and
/// conjugate transposes, and doubles every eigenvalue.
pub fn complex_adjoint(a: &GroundMatrix) -> Result<GroundMatrix> {
    if a.ring() != Ring::Quaternion {
        return Err(Error::RingMismatch(Ring::Quaternion, a.ring()));
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = GroundMatrix::zeros(Ring::Complex, 2 * rows, 2 * cols);
    for i in 0..rows {
        for j in 0..cols {
            let q = a.get(i, j).as_quaternion();
            out.set(i, j, GroundScalar::complex(q.w, q.x));
            out.set(i, j + cols, GroundScalar::complex(q.y, q.z));
            out.set(i + rows, j, GroundScalar::complex(-q.y, q.z));
            out.set(i + rows, j + cols, GroundScalar::complex(q.w, -q.x));
        }
    }
    Ok(out)
}

fn eig_real(h: &GroundMatrix) -> Result<GroundEigenDecomposition> {
    let n = h.rows();
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = h.get(i, j).as_quaternion().w;
        }
    }
    let (values, flat) = eig_real_sym(n, a)?;
    let mut vectors = GroundMatrix::zeros(Ring::Real, n, n);
    for i in 0..n {
        for j in 0..n {
            vectors.set(i, j, GroundScalar::real(flat[i * n + j]));
        }
    }
    Ok(GroundEigenDecomposition { values, vectors })
}

fn eig_complex(h: &GroundMatrix) -> Result<GroundEigenDecomposition> {
    let m = h.rows();
    let n2 = 2 * m;
    // Real embedding [[X, -Y], [Y, X]] of X + iY; symmetric iff h is Hermitian.
    let mut a = vec![0.0; n2 * n2];
    for i in 0..m {
        for j in 0..m {
            let q = h.get(i, j).as_quaternion();
            a[i * n2 + j] = q.w;
            a[i * n2 + (j + m)] = -q.x;
            a[(i + m) * n2 + j] = q.x;
            a[(i + m) * n2 + (j + m)] = q.w;
        }
    }
    let (values, flat) = eig_real_sym(n2, a)?;
    let scale = 1.0 + values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));

    let mut out_values = Vec::with_capacity(m);
    let mut out_cols: Vec<GroundVector> = Vec::with_capacity(m);
    for range in even_clusters(&values, 1e-9 * scale) {
        let keep = range.len() / 2;
        let candidates: Vec<GroundVector> = range
            .clone()
            .map(|col| {
                let data = (0..m)
                    .map(|i| Quaternion::complex(flat[i * n2 + col], flat[(i + m) * n2 + col]))
                    .collect();
                GroundVector::from_quats(Ring::Complex, data)
            })
            .collect();
        let kept = orthonormalize_right(candidates, keep)?;
        for (offset, v) in kept.into_iter().enumerate() {
            out_values.push(values[range.start + 2 * offset]);
            out_cols.push(v);
        }
    }
    Ok(GroundEigenDecomposition {
        values: out_values,
        vectors: GroundMatrix::from_cols(Ring::Complex, m, &out_cols),
    })
}

/// Rebuilds the quaternion decomposition of an `n x n` matrix from the
/// decomposition of its `2n x 2n` complex adjoint.
fn decode_quaternion(
    n: usize,
    inner: &GroundEigenDecomposition,
) -> Result<GroundEigenDecomposition> {
    let scale = 1.0 + inner.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut out_values = Vec::with_capacity(n);
    let mut out_cols: Vec<GroundVector> = Vec::with_capacity(n);
    for range in even_clusters(&inner.values, 1e-9 * scale) {
        let keep = range.len() / 2;
        let candidates: Vec<GroundVector> = range
            .clone()
            .map(|col| {
                // z = [z1; z2] decodes to v = z1 - conj(z2) j.
                let data = (0..n)
                    .map(|i| {
                        let z1 = inner.vectors.get(i, col).as_quaternion();
                        let z2 = inner.vectors.get(i + n, col).as_quaternion();
                        Quaternion::new(z1.w, z1.x, -z2.w, z2.x)
                    })
                    .collect();
                GroundVector::from_quats(Ring::Quaternion, data)
            })
            .collect();
        let kept = orthonormalize_right(candidates, keep)?;
        for (offset, v) in kept.into_iter().enumerate() {
            out_values.push(inner.values[range.start + 2 * offset]);
            out_cols.push(v);
        }
    }
    Ok(GroundEigenDecomposition {
        values: out_values,
        vectors: GroundMatrix::from_cols(Ring::Quaternion, n, &out_cols),
    })
}

/// Splits an ascending list into maximal runs of consecutive values whose
/// gaps stay within `tol`.
pub(crate) fn gap_clusters(values: &[f64], tol: impl Fn(f64, f64) -> f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..values.len() {
        if values[i] - values[i - 1] > tol(values[i - 1], values[i]) {
            out.push(start..i);
            start = i;
        }
    }
    if !values.is_empty() {
        out.push(start..values.len());
    }
    out
}

/// Gap clustering that never produces odd-sized clusters: an odd cluster is
/// merged into its nearer neighbour. Embedded spectra are exactly paired, so
/// merges only ever happen at tolerance boundaries.
fn even_clusters(values: &[f64], tol: f64) -> Vec<Range<usize>> {
    let mut clusters = gap_clusters(values, |_, _| tol);
    loop {
        let Some(idx) = clusters.iter().position(|r| r.len() % 2 == 1) else {
            return clusters;
        };
        if clusters.len() == 1 {
            // Total length is even for embedded spectra; nothing to repair.
            return clusters;
        }
        let left_gap = if idx > 0 {
            values[clusters[idx].start] - values[clusters[idx].start - 1]
        } else {
            f64::INFINITY
        };
        let right_gap = if idx + 1 < clusters.len() {
            values[clusters[idx].end] - values[clusters[idx].end - 1]
        } else {
            f64::INFINITY
        };
        if left_gap <= right_gap {
            let merged = clusters[idx - 1].start..clusters[idx].end;
            clusters.splice(idx - 1..=idx, [merged]);
        } else {
            let merged = clusters[idx].start..clusters[idx + 1].end;
            clusters.splice(idx..=idx + 1, [merged]);
        }
    }
}

/// Modified Gram-Schmidt over a right module: keeps the first `want`
/// candidates that stay independent, orthogonalizing with coefficients
/// `b^* v` applied on the right. Candidates are expected to be unit vectors.
pub(crate) fn orthonormalize_right(
    candidates: Vec<GroundVector>,
    want: usize,
    ) -> Result<Vec<GroundVector>> {
    let mut kept: Vec<GroundVector> = Vec::with_capacity(want);
    for mut v in candidates {
        if kept.len() == want {
            break;
        }
        // Two passes keep the basis orthonormal to working precision.
        for _ in 0..2 {
            for b in &kept {
                let coeff = b.inner(&v);
                v = v.sub(&b.scale_right(coeff));
            }
        }
        let norm = v.norm2();
        if norm >= 1e-4 {
            kept.push(v.scale(1.0 / norm));
        }
    }
    if kept.len() < want {
        return Err(Error::Numerical(format!(
            "eigenvector decoding found {} of {} independent directions",
            kept.len(),
            want
        )));
    }
    Ok(kept)
}

/// Fixes the free unit-scalar factor of an eigenvector: the entry of largest
/// magnitude is made real and positive.
pub(crate) fn normalize_phase(v: &mut GroundVector) {
    let mut best = 0usize;
    let mut best_abs = 0.0f64;
    for (i, q) in v.quats().iter().enumerate() {
        let a = q.abs();
        if a > best_abs {
            best_abs = a;
            best = i;
        }
    }
    if best_abs == 0.0 {
        return;
    }
    let c = v.quats()[best].conj().scale(1.0 / best_abs);
    let scaled = v.scale_right(GroundScalar::from_quat(v.ring(), c));
    *v = scaled;
}

/// Dense real symmetric eigendecomposition. Returns ascending eigenvalues and
/// a flat row-major matrix whose columns are the eigenvectors.
fn eig_real_sym(n: usize, a: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = a;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 0 {
        return Ok((d, v));
    }
    tred2(n, &mut v, &mut d, &mut e);
    tql2(n, &mut v, &mut d, &mut e)?;
    sort_columns(n, &mut v, &mut d);
    Ok((d, v))
}

/// Householder reduction to symmetric tridiagonal form, accumulating the
/// orthogonal transformation in `v`. Ported from the public-domain EISPACK
/// tred2 routine (via Jama).
#[allow(clippy::needless_range_loop)]
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }

            for j in 0..i {
                f = d[j];
                v[j * n + i] = f;
                g = e[j] + v[j * n + j] * f;
                for k in (j + 1)..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for i in 0..n.saturating_sub(1) {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + (n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix, updating
/// the eigenvector accumulation in `v`. Ported from the public-domain
/// EISPACK tql2 routine (via Jama).
fn tql2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = 2.0f64.powi(-52);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 64 {
                    return Err(Error::Numerical(
                        "QL iteration failed to converge".to_string(),
                    ));
                }

                // Implicit shift.
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // Implicit QL sweep.
                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..n {
                        h = v[k * n + i + 1];
                        v[k * n + i + 1] = s * v[k * n + i] + c * h;
                        v[k * n + i] = c * v[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn sort_columns(n: usize, v: &mut [f64], d: &mut [f64]) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let old_d = d.to_vec();
    let old_v = v.to_vec();
    for (new_j, &old_j) in order.iter().enumerate() {
        d[new_j] = old_d[old_j];
        for i in 0..n {
            v[i * n + new_j] = old_v[i * n + old_j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DualScalar;

    fn residuals(h: &GroundMatrix, dec: &GroundEigenDecomposition) -> (f64, f64) {
        let n = h.rows();
        let mut recon: f64 = 0.0;
        for j in 0..n {
            let u = dec.vectors.col(j);
            let diff = h.matvec(&u).sub(&u.scale(dec.values[j]));
            recon = recon.max(diff.norm2());
        }
        let gram = dec.vectors.conj_transpose().matmul(&dec.vectors);
        let orth = gram.sub(&GroundMatrix::identity(h.ring(), n)).fro_norm();
        (recon, orth)
    }

    #[test]
    fn two_by_two_exchange_matrix() {
        let mut h = GroundMatrix::zeros(Ring::Real, 2, 2);
        h.set(0, 1, GroundScalar::real(1.0));
        h.set(1, 0, GroundScalar::real(1.0));
        let dec = eig_hermitian(&h).unwrap();
        assert!((dec.values[0] + 1.0).abs() < 1e-14);
        assert!((dec.values[1] - 1.0).abs() < 1e-14);
        let (recon, orth) = residuals(&h, &dec);
        assert!(recon < 1e-14 && orth < 1e-14);
    }

    #[test]
    fn triangle_adjacency_spectrum_and_phase() {
        // All-ones off-diagonal 3x3: eigenvalues (-1, -1, 2).
        let mut h = GroundMatrix::zeros(Ring::Real, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    h.set(i, j, GroundScalar::real(1.0));
                }
            }
        }
        let dec = eig_hermitian(&h).unwrap();
        for (got, want) in dec.values.iter().zip([-1.0, -1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        // The top eigenvector is the normalized all-ones vector, with the
        // phase convention making entries positive.
        let top = dec.vectors.col(2);
        for i in 0..3 {
            assert!((top.get(i).re() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_adjoint_homomorphism_spot_check() {
        // chi(i) * chi(j) = chi(k) on 1x1 matrices.
        let embed = |q: Quaternion| {
            let mut m = GroundMatrix::zeros(Ring::Quaternion, 1, 1);
            m.set(0, 0, GroundScalar::quaternion(q));
            complex_adjoint(&m).unwrap()
        };
        let prod = embed(Quaternion::I).matmul(&embed(Quaternion::J));
        assert_eq!(prod, embed(Quaternion::K));

        let ident = complex_adjoint(&GroundMatrix::identity(Ring::Quaternion, 3)).unwrap();
        assert_eq!(ident, GroundMatrix::identity(Ring::Complex, 6));
    }

    #[test]
    fn complex_adjoint_preserves_hermitian() {
        let h = random_hermitian(Ring::Quaternion, 5, 7);
        let chi = complex_adjoint(&h).unwrap();
        assert!(chi.hermitian_deviation() < 1e-14);
    }

    #[test]
    fn quaternion_two_by_two() {
        // [[0, i], [-i, 0]] has eigenvalues -1, 1.
        let mut h = GroundMatrix::zeros(Ring::Quaternion, 2, 2);
        h.set(0, 1, GroundScalar::quaternion(Quaternion::I));
        h.set(1, 0, GroundScalar::quaternion(-Quaternion::I));
        let dec = eig_hermitian(&h).unwrap();
        assert!((dec.values[0] + 1.0).abs() < 1e-14);
        assert!((dec.values[1] - 1.0).abs() < 1e-14);
        let (recon, orth) = residuals(&h, &dec);
        assert!(recon < 1e-13 && orth < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut h = GroundMatrix::zeros(Ring::Real, 2, 2);
        h.set(0, 1, GroundScalar::real(1.0));
        assert!(matches!(
            eig_hermitian(&h),
            Err(Error::NotHermitian { .. })
        ));
    }

    pub(super) fn random_hermitian(ring: Ring, n: usize, seed: u64) -> GroundMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut normal = || rng.gen::<f64>() * 2.0 - 1.0;
        let mut m = GroundMatrix::zeros(ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let q = match ring {
                    Ring::Real => Quaternion::real(normal()),
                    Ring::Complex => Quaternion::complex(normal(), normal()),
                    Ring::Quaternion => Quaternion::new(normal(), normal(), normal(), normal()),
                };
                m.set(i, j, GroundScalar::from_quat(ring, q));
            }
        }
        let adj = m.conj_transpose();
        let mut h = m.add(&adj).scale(0.5);
        h.hermitize();
        h
    }

    #[test]
    fn random_reconstruction_all_rings() {
        for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
            for n in [1, 2, 5, 11] {
                let h = random_hermitian(ring, n, 100 + n as u64);
                let dec = eig_hermitian(&h).unwrap();
                assert_eq!(dec.values.len(), n);
                let (recon, orth) = residuals(&h, &dec);
                let bound = 1e-10 * (1.0 + h.fro_norm());
                assert!(
                    recon <= bound && orth <= 1e-10,
                    "{ring} n={n}: recon={recon:.3e} orth={orth:.3e}"
                );
                // Trace identity.
                let trace: f64 = (0..n).map(|i| h.get(i, i).re()).sum();
                let sum: f64 = dec.values.iter().sum();
                assert!((trace - sum).abs() <= 1e-10 * (n as f64) * (1.0 + h.fro_norm()));
            }
        }
    }

    #[test]
    fn quaternion_spectrum_pairs_in_the_adjoint() {
        let h = random_hermitian(Ring::Quaternion, 6, 3);
        let chi = complex_adjoint(&h).unwrap();
        let inner = eig_hermitian(&chi).unwrap();
        let outer = eig_hermitian(&h).unwrap();
        for k in 0..6 {
            let a = inner.values[2 * k];
            let b = inner.values[2 * k + 1];
            assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs())));
            assert!((outer.values[k] - a).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn repeated_eigenvalues_still_give_orthonormal_vectors() {
        // Build a complex Hermitian matrix with a triple eigenvalue by
        // conjugating a fixed diagonal with a random unitary.
        let n = 6;
        let g = random_hermitian(Ring::Complex, n, 42);
        let u = eig_hermitian(&g).unwrap().vectors;
        let mut d = GroundMatrix::zeros(Ring::Complex, n, n);
        for (i, lam) in [1.0, 1.0, 1.0, 2.0, 5.0, 5.0].iter().enumerate() {
            d.set(i, i, GroundScalar::complex(*lam, 0.0));
        }
        let mut h = u.matmul(&d).matmul(&u.conj_transpose());
        h.hermitize();
        let dec = eig_hermitian(&h).unwrap();
        let (recon, orth) = residuals(&h, &dec);
        assert!(recon < 1e-12 && orth < 1e-12);
        for (got, want) in dec.values.iter().zip([1.0, 1.0, 1.0, 2.0, 5.0, 5.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn dual_free_scalar_embedding_is_consistent() {
        // The quaternion solver must agree with the complex solver on a
        // complex matrix viewed as quaternion.
        let h = random_hermitian(Ring::Complex, 4, 9);
        let mut hq = GroundMatrix::zeros(Ring::Quaternion, 4, 4);
        for i in 0..4 {
            for j in 0..4 {
                hq.set(
                    i,
                    j,
                    GroundScalar::quaternion(h.get(i, j).as_quaternion()),
                );
            }
        }
        let dc = eig_hermitian(&h).unwrap();
        let dq = eig_hermitian(&hq).unwrap();
        for k in 0..4 {
            assert!((dc.values[k] - dq.values[k]).abs() < 1e-11);
        }
        let _ = DualScalar::one(Ring::Real);
    }
}
