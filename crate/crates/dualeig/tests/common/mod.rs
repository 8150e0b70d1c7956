//! Shared fixtures and generators for the integration suites.

// Each integration test binary compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dualeig::dmat::{DualMatrix, GroundMatrix};
use dualeig::heig;
use dualeig::ring::{DualScalar, GroundScalar, Quaternion, Ring};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_ground(ring: Ring, rng: &mut ChaCha8Rng) -> GroundScalar {
    let mut u = || rng.gen_range(-1.0..1.0);
    let q = match ring {
        Ring::Real => Quaternion::real(u()),
        Ring::Complex => Quaternion::complex(u(), u()),
        Ring::Quaternion => Quaternion::new(u(), u(), u(), u()),
    };
    GroundScalar::from_components(ring, &q_components(ring, q)).unwrap()
}

fn q_components(ring: Ring, q: Quaternion) -> Vec<f64> {
    match ring {
        Ring::Real => vec![q.w],
        Ring::Complex => vec![q.w, q.x],
        Ring::Quaternion => vec![q.w, q.x, q.y, q.z],
    }
}

/// Dense matrix with entries uniform in the unit cube of the ring.
pub fn random_ground_matrix(ring: Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> GroundMatrix {
    let mut m = GroundMatrix::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_ground(ring, rng));
        }
    }
    m
}

/// Random Hermitian matrix `(B + B^*)/2`.
pub fn random_ground_hermitian(ring: Ring, n: usize, rng: &mut ChaCha8Rng) -> GroundMatrix {
    let b = random_ground_matrix(ring, n, n, rng);
    let mut h = b.add(&b.conj_transpose()).scale(0.5);
    h.hermitize();
    h
}

/// Random dual Hermitian matrix with generic (almost surely simple) standard
/// spectrum.
pub fn random_dual_hermitian(ring: Ring, n: usize, rng: &mut ChaCha8Rng) -> DualMatrix {
    DualMatrix::new(
        random_ground_hermitian(ring, n, rng),
        random_ground_hermitian(ring, n, rng),
    )
    .unwrap()
}

/// Random unitary matrix: the eigenvector basis of a random Hermitian matrix.
pub fn random_unitary(ring: Ring, n: usize, rng: &mut ChaCha8Rng) -> GroundMatrix {
    heig::eig_hermitian(&random_ground_hermitian(ring, n, rng))
        .unwrap()
        .vectors
}

/// Dual Hermitian matrix whose standard part has the prescribed eigenvalues
/// (repeats welcome), hidden behind a random unitary change of basis.
pub fn dual_hermitian_with_spectrum(
    ring: Ring,
    spectrum: &[f64],
    rng: &mut ChaCha8Rng,
) -> DualMatrix {
    let n = spectrum.len();
    let u = random_unitary(ring, n, rng);
    let mut d = GroundMatrix::zeros(ring, n, n);
    for (i, lam) in spectrum.iter().enumerate() {
        d.set(i, i, GroundScalar::one(ring).scale(*lam));
    }
    let mut std = u.matmul(&d).matmul(&u.conj_transpose());
    std.hermitize();
    DualMatrix::new(std, random_ground_hermitian(ring, n, rng)).unwrap()
}

/// The dual complex gain adjacency of Example 7.1's unbalanced triangle.
pub fn example_a_matrix() -> DualMatrix {
    let mut a = DualMatrix::zeros(Ring::Complex, 3, 3);
    for (i, j, v) in [
        (0, 1, DualScalar::complex(1.0, 0.0, 0.0, 1.0)),
        (0, 2, DualScalar::complex(1.0, 0.0, 0.0, -2.0)),
        (1, 2, DualScalar::complex(1.0, 0.0, 0.0, -1.0)),
    ] {
        a.set(i, j, v);
        a.set(j, i, v.conj());
    }
    a
}

/// The balanced counterpart from Example 7.2.
pub fn example_b_matrix() -> DualMatrix {
    let mut b = DualMatrix::zeros(Ring::Complex, 3, 3);
    for (i, j, v) in [
        (0, 1, DualScalar::complex(1.0, 0.0, 0.0, 1.0)),
        (0, 2, DualScalar::complex(1.0, 0.0, 0.0, 0.0)),
        (1, 2, DualScalar::complex(1.0, 0.0, 0.0, -1.0)),
    ] {
        b.set(i, j, v);
        b.set(j, i, v.conj());
    }
    b
}

/// Sampled unit dual element bounded away from the identity, for perturbing
/// gains.
pub fn non_identity_unit(ring: Ring, rng: &mut ChaCha8Rng) -> DualScalar {
    loop {
        let u = dualeig::gaingraph::random_unit_dual(ring, rng);
        if u.dist(&DualScalar::one(ring)) > 0.3 {
            return u;
        }
    }
}
