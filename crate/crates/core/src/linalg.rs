//! Dense Hermitian numerics: eigendecomposition by cyclic complex Jacobi,
//! PSD square roots, Uhlmann fidelity, Bures length and Hilbert-Schmidt
//! distance.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max `|A - A^dagger|` entry tolerated for a Hermitian operator.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Trace deviation tolerated for a density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues down to `-NEGATIVE_TOL` are clipped to zero; below is an error.
pub const NEGATIVE_TOL: f64 = 1e-10;

/// Eigenvalues of `sqrt(rho) sigma sqrt(rho)` at or below this, per unit of
/// dimension, are rounding noise and count as zero in the fidelity.
pub const SPECTRAL_FLOOR: f64 = 1e-14;

fn spectral_floor(dim: usize) -> f64 {
    SPECTRAL_FLOOR * dim.max(8) as f64
}

/// Operators closer than this entrywise are treated as identical by
/// [`fidelity`]; `arccos(sqrt(F))` would otherwise turn roundoff in F into
/// a Bures length of order 1e-8.
pub const IDENTICAL_TOL: f64 = 1e-14;

const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A `dim x dim` complex matrix stored row-major, `dim` a power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    entries: Vec<Complex64>,
    hermitian: bool,
}

impl DenseOperator {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<DenseOperator> {
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::Parse(format!(
                "dimension {dim} is not a power of two"
            )));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let mut op = DenseOperator {
            dim,
            entries,
            hermitian: false,
        };
        op.hermitian = op.hermiticity_defect() <= HERMITIAN_TOL;
        Ok(op)
    }

    pub(crate) fn from_parts(dim: usize, entries: Vec<Complex64>, hermitian: bool) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        DenseOperator {
            dim,
            entries,
            hermitian,
        }
    }

    pub fn identity(dim: usize) -> DenseOperator {
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        DenseOperator {
            dim,
            entries,
            hermitian: true,
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<DenseOperator> {
        let dim = diag.len();
        let mut entries = vec![ZERO; dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(d, 0.0);
        }
        DenseOperator::new(dim, entries)
    }

    /// `|psi><psi|` for a (not necessarily normalized) vector.
    pub fn projector(psi: &[Complex64]) -> Result<DenseOperator> {
        let dim = psi.len();
        let entries = (0..dim * dim)
            .map(|k| psi[k / dim] * psi[k % dim].conj())
            .collect();
        DenseOperator::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> DenseOperator {
        let d = self.dim;
        let entries = (0..d * d).map(|k| self.get(k % d, k / d).conj()).collect();
        DenseOperator {
            dim: d,
            entries,
            hermitian: self.hermitian,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> DenseOperator {
        let entries = self.entries.iter().map(|&v| v * factor).collect();
        DenseOperator::new(self.dim, entries).expect("same shape")
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &DenseOperator,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<DenseOperator> {
        check_same_dim(self, other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        DenseOperator::new(self.dim, entries)
    }

    pub fn matmul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        check_same_dim(self, other)?;
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[k * d..(k + 1) * d];
                for (o, &b) in out[i * d..(i + 1) * d].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        DenseOperator::new(d, out)
    }

    pub fn kron(&self, other: &DenseOperator) -> DenseOperator {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut entries = vec![ZERO; d * d];
        for i in 0..a {
            for j in 0..a {
                let s = self.get(i, j);
                for k in 0..b {
                    for l in 0..b {
                        entries[(i * b + k) * d + j * b + l] = s * other.get(k, l);
                    }
                }
            }
        }
        DenseOperator::new(d, entries).expect("power-of-two product")
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> Result<f64> {
        check_same_dim(self, other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Checks Hermiticity and unit trace; positivity is checked where a
    /// decomposition is computed anyway.
    pub fn check_density(&self) -> Result<()> {
        if !self.hermitian {
            return Err(Error::NotHermitian(self.hermiticity_defect()));
        }
        let tr = self.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotDensity(tr));
        }
        Ok(())
    }
}

fn check_same_dim(a: &DenseOperator, b: &DenseOperator) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(())
}

/// Eigenvalues in descending order with eigenvectors as the columns of a
/// unitary matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseOperator,
}

impl Spectrum {
    /// `V f(diag) V^dagger`.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> DenseOperator {
        let d = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let w: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut entries = vec![ZERO; d * d];
        for i in 0..d {
            for j in i..d {
                let acc: Complex64 = w
                    .iter()
                    .enumerate()
                    .filter(|&(_, &wk)| wk != 0.0)
                    .map(|(k, &wk)| v.get(i, k) * v.get(j, k).conj() * wk)
                    .sum();
                entries[i * d + j] = acc;
                entries[j * d + i] = acc.conj();
            }
            entries[i * d + i].im = 0.0;
        }
        DenseOperator::from_parts(d, entries, true)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Full spectral decomposition of a Hermitian operator by cyclic Jacobi
/// rotations.
pub fn hermitian_eig(a: &DenseOperator) -> Result<Spectrum> {
    if !a.hermitian {
        return Err(Error::NotHermitian(a.hermiticity_defect()));
    }
    let d = a.dim;
    let mut m: Vec<Complex64> = (0..d * d)
        .map(|k| {
            let (i, j) = (k / d, k % d);
            (a.get(i, j) + a.get(j, i).conj()) * 0.5
        })
        .collect();
    let mut v = DenseOperator::identity(d).entries;
    let threshold = JACOBI_TOL * a.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m, d) < threshold {
            converged = true;
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                rotate(&mut m, &mut v, d, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m, d) >= threshold {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| m[j * d + j].re.total_cmp(&m[i * d + i].re).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&i| m[i * d + i].re).collect();
    let mut vecs = vec![ZERO; d * d];
    for (col, &src) in order.iter().enumerate() {
        // First non-negligible component made real positive.
        let lead = (0..d)
            .map(|r| v[r * d + src])
            .find(|c| c.norm() > 1e-10)
            .unwrap_or(ONE);
        let fix = lead.conj() / lead.norm();
        for r in 0..d {
            vecs[r * d + col] = v[r * d + src] * fix;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: DenseOperator::from_parts(d, vecs, false),
    })
}

fn off_diagonal_norm(m: &[Complex64], d: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += m[i * d + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One rotation `M <- J^dagger M J` zeroing `M[p][q]`, with `V <- V J`.
fn rotate(m: &mut [Complex64], v: &mut [Complex64], d: usize, p: usize, q: usize) {
    let apq = m[p * d + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[p * d + p].re;
    let aqq = m[q * d + q].re;
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[p * d + q] = ZERO;
        m[q * d + p] = ZERO;
        return;
    }
    // Phase the pair real, then apply the real symmetric rotation.
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for k in 0..d {
        let (akp, akq) = (m[k * d + p], m[k * d + q]);
        m[k * d + p] = akp * jpp + akq * jqp;
        m[k * d + q] = akp * jpq + akq * jqq;
    }
    for k in 0..d {
        let (apk, aqk) = (m[p * d + k], m[q * d + k]);
        m[p * d + k] = jpp.conj() * apk + jqp.conj() * aqk;
        m[q * d + k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    m[p * d + q] = ZERO;
    m[q * d + p] = ZERO;
    m[p * d + p].im = 0.0;
    m[q * d + q].im = 0.0;
    for k in 0..d {
        let (vkp, vkq) = (v[k * d + p], v[k * d + q]);
        v[k * d + p] = vkp * jpp + vkq * jqp;
        v[k * d + q] = vkp * jpq + vkq * jqq;
    }
}

/// `V sqrt(clip(L, 0)) V^dagger` for a PSD operator.
pub fn psd_sqrt(a: &DenseOperator) -> Result<DenseOperator> {
    let spec = hermitian_eig(a)?;
    let min = spec.min_eigenvalue();
    if min < -NEGATIVE_TOL {
        return Err(Error::NotPositive(min));
    }
    Ok(spec.reconstruct(|l| l.max(0.0).sqrt()))
}

fn check_positive(a: &DenseOperator) -> Result<()> {
    let min = hermitian_eig(a)?.min_eigenvalue();
    if min < -NEGATIVE_TOL {
        return Err(Error::NotPositive(min));
    }
    Ok(())
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`, clamped to [0, 1].
pub fn fidelity(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    check_same_dim(rho, sigma)?;
    rho.check_density()?;
    sigma.check_density()?;
    check_positive(sigma)?;
    if rho.max_abs_diff(sigma)? <= IDENTICAL_TOL {
        return Ok(1.0);
    }
    let root = psd_sqrt(rho)?;
    let inner = root.matmul(sigma)?.matmul(&root)?;
    let inner = symmetrized(&inner);
    let spec = hermitian_eig(&inner)?;
    let min = spec.min_eigenvalue();
    if min < -NEGATIVE_TOL {
        return Err(Error::NotPositive(min));
    }
    let floor = spectral_floor(rho.dim);
    let s: f64 = spec
        .eigenvalues
        .iter()
        .filter(|&&l| l > floor)
        .map(|&l| l.sqrt())
        .sum();
    Ok((s * s).clamp(0.0, 1.0))
}

fn symmetrized(a: &DenseOperator) -> DenseOperator {
    let d = a.dim;
    let entries = (0..d * d)
        .map(|k| (a.entries[k] + a.get(k % d, k / d).conj()) * 0.5)
        .collect();
    DenseOperator::from_parts(d, entries, true)
}

/// `arccos sqrt(F)`, in `[0, pi/2]`.
pub fn bures_length(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    Ok(f.sqrt().clamp(0.0, 1.0).acos())
}

/// `Tr(A^2)` of a Hermitian operator.
pub fn purity(rho: &DenseOperator) -> Result<f64> {
    overlap(rho, rho)
}

/// `Tr(A B)` of Hermitian operators; the imaginary residue is discarded.
pub fn overlap(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    check_same_dim(rho, sigma)?;
    for op in [rho, sigma] {
        if !op.hermitian {
            return Err(Error::NotHermitian(op.hermiticity_defect()));
        }
    }
    let d = rho.dim;
    let mut acc = ZERO;
    for i in 0..d {
        for j in 0..d {
            acc += rho.entries[i * d + j] * sigma.entries[j * d + i];
        }
    }
    Ok(acc.re)
}

/// `sqrt(Tr(rho^2) + Tr(sigma^2) - 2 Tr(rho sigma))`, floored at zero
/// under the root.
pub fn hs_distance(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    let sq = purity(rho)? + purity(sigma)? - 2.0 * overlap(rho, sigma)?;
    Ok(sq.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> DenseOperator {
        let mut e = vec![ZERO; d * d];
        for i in 0..d {
            e[i * d + i] = c(rng.random_range(-1.0..1.0), 0.0);
            for j in i + 1..d {
                let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                e[i * d + j] = z;
                e[j * d + i] = z.conj();
            }
        }
        DenseOperator::new(d, e).unwrap()
    }

    #[test]
    fn identity_and_pauli_x() {
        let s = hermitian_eig(&DenseOperator::identity(2)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0]);

        let x = DenseOperator::new(2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
        let s = hermitian_eig(&x).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // |+> then |->, leading components real positive.
        assert!((s.eigenvectors.get(0, 0) - c(h, 0.0)).norm() < 1e-12);
        assert!((s.eigenvectors.get(1, 0) - c(h, 0.0)).norm() < 1e-12);
        assert!((s.eigenvectors.get(0, 1) - c(h, 0.0)).norm() < 1e-12);
        assert!((s.eigenvectors.get(1, 1) - c(-h, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn residuals_on_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in [1, 2, 4, 8, 16, 32, 64] {
            let a = random_hermitian(d, &mut rng);
            let s = hermitian_eig(&a).unwrap();
            let v = &s.eigenvectors;
            let av = a.matmul(v).unwrap();
            for i in 0..d {
                for k in 0..d {
                    let r = av.get(i, k) - v.get(i, k) * s.eigenvalues[k];
                    assert!(r.norm() < 1e-9, "residual {r} at d={d}");
                }
            }
            let vv = v.adjoint().matmul(v).unwrap();
            assert!(vv.max_abs_diff(&DenseOperator::identity(d)).unwrap() < 1e-9);
            assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let a = DenseOperator::new(2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn sqrt_cases() {
        let id = DenseOperator::identity(4);
        assert!(psd_sqrt(&id).unwrap().max_abs_diff(&id).unwrap() < 1e-14);

        let d = DenseOperator::from_real_diagonal(&[4.0, 1.0]).unwrap();
        let r = psd_sqrt(&d).unwrap();
        let want = DenseOperator::from_real_diagonal(&[2.0, 1.0]).unwrap();
        assert!(r.max_abs_diff(&want).unwrap() < 1e-14);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = DenseOperator::projector(&[c(h, 0.0), c(0.0, h)]).unwrap();
        assert!(psd_sqrt(&plus).unwrap().max_abs_diff(&plus).unwrap() < 1e-12);

        let neg = DenseOperator::from_real_diagonal(&[1.0, -1e-6]).unwrap();
        assert!(matches!(psd_sqrt(&neg), Err(Error::NotPositive(_))));
        let tiny = DenseOperator::from_real_diagonal(&[1.0, -1e-12]).unwrap();
        assert!(psd_sqrt(&tiny).is_ok());
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in [2, 4, 8] {
            let g = random_hermitian(d, &mut rng);
            let a = g.matmul(&g).unwrap();
            let r = psd_sqrt(&a).unwrap();
            assert!(r.matmul(&r).unwrap().max_abs_diff(&a).unwrap() < 1e-8);
        }
    }

    #[test]
    fn fidelity_basics() {
        let zero = DenseOperator::from_real_diagonal(&[1.0, 0.0]).unwrap();
        let one = DenseOperator::from_real_diagonal(&[0.0, 1.0]).unwrap();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-12);
        assert!(fidelity(&zero, &one).unwrap().abs() < 1e-12);
        assert!((bures_length(&zero, &one).unwrap() - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(bures_length(&zero, &zero).unwrap(), 0.0);
        assert!((hs_distance(&zero, &one).unwrap() - SQRT_2).abs() < 1e-12);
        assert_eq!(hs_distance(&zero, &zero).unwrap(), 0.0);
    }

    #[test]
    fn ghz_against_classical_mixture() {
        for n in 2..=5 {
            let d = 1usize << n;
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let mut psi = vec![ZERO; d];
            psi[0] = c(h, 0.0);
            psi[d - 1] = c(h, 0.0);
            let ghz = DenseOperator::projector(&psi).unwrap();
            let mut diag = vec![0.0; d];
            diag[0] = 0.5;
            diag[d - 1] = 0.5;
            let mix = DenseOperator::from_real_diagonal(&diag).unwrap();
            assert!((fidelity(&ghz, &mix).unwrap() - 0.5).abs() < 1e-10);
            assert!((bures_length(&ghz, &mix).unwrap() - FRAC_PI_4).abs() < 1e-10);
        }
    }

    #[test]
    fn commuting_states_reduce_to_classical_fidelity() {
        let p = [0.5, 0.25, 0.125, 0.125];
        let q = [0.1, 0.2, 0.3, 0.4];
        let rho = DenseOperator::from_real_diagonal(&p).unwrap();
        let sigma = DenseOperator::from_real_diagonal(&q).unwrap();
        let classical: f64 = p.iter().zip(&q).map(|(a, b)| (a * b).sqrt()).sum();
        assert!((fidelity(&rho, &sigma).unwrap() - classical * classical).abs() < 1e-10);
    }

    #[test]
    fn fidelity_rejects_bad_inputs() {
        let a = DenseOperator::identity(2);
        assert!(matches!(fidelity(&a, &a), Err(Error::NotDensity(_))));
        let b = DenseOperator::from_real_diagonal(&[0.25; 4]).unwrap();
        let half = DenseOperator::from_real_diagonal(&[0.5, 0.5]).unwrap();
        assert!(matches!(
            fidelity(&half, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        let neg = DenseOperator::from_real_diagonal(&[1.5, -0.5]).unwrap();
        assert!(matches!(fidelity(&half, &neg), Err(Error::NotPositive(_))));
    }

    #[test]
    fn pauli_pair_hs_is_one() {
        // (I + Z1Z2)/4 vs (I - Z1Z2)/4: purities 1/2, overlap 0.
        let a = DenseOperator::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        let b = DenseOperator::from_real_diagonal(&[0.0, 0.5, 0.5, 0.0]).unwrap();
        assert!((purity(&a).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(overlap(&a, &b).unwrap(), 0.0);
        assert!((hs_distance(&a, &b).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn purity_of_maximally_mixed() {
        for n in 1..=4 {
            let d = 1usize << n;
            let m = DenseOperator::from_real_diagonal(&vec![1.0 / d as f64; d]).unwrap();
            assert!((purity(&m).unwrap() - 1.0 / d as f64).abs() < 1e-15);
        }
    }
}
