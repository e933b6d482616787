//! Single-qubit errors acting on symbolic states.
//!
//! Pauli errors are exact conjugations. Unitaries and Kraus channels act
//! through their 4x4 Pauli transfer matrix `R[b][a] = Tr(P_b L(P_a)) / 2`,
//! applied to the letter on the affected qubit of every term.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::pauli::{check_qubit, Letter, PauliString, PauliSum};

/// Tolerance for `U^dagger U = I` and `sum K^dagger K = I`.
pub const CPTP_TOL: f64 = 1e-10;

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, PartialEq)]
pub enum ErrorSpec {
    Pauli { letter: Letter, qubit: usize },
    Unitary { matrix: Matrix2, qubit: usize },
    Channel { kraus: Vec<Matrix2>, qubit: usize },
}

impl ErrorSpec {
    pub fn pauli(letter: Letter, qubit: usize) -> Result<ErrorSpec> {
        if letter == Letter::I {
            return Err(Error::InvalidErrorSpec("identity is not an error".into()));
        }
        if qubit == 0 {
            return Err(Error::InvalidErrorSpec("qubits are numbered from 1".into()));
        }
        Ok(ErrorSpec::Pauli { letter, qubit })
    }

    pub fn unitary(matrix: Matrix2, qubit: usize) -> Result<ErrorSpec> {
        let defect = max_defect(&gram(&[matrix]));
        if defect > CPTP_TOL {
            return Err(Error::InvalidErrorSpec(format!(
                "matrix is not unitary ({defect:e})"
            )));
        }
        if qubit == 0 {
            return Err(Error::InvalidErrorSpec("qubits are numbered from 1".into()));
        }
        Ok(ErrorSpec::Unitary { matrix, qubit })
    }

    pub fn channel(kraus: Vec<Matrix2>, qubit: usize) -> Result<ErrorSpec> {
        if kraus.is_empty() {
            return Err(Error::InvalidErrorSpec("empty Kraus set".into()));
        }
        let defect = max_defect(&gram(&kraus));
        if defect > CPTP_TOL {
            return Err(Error::InvalidErrorSpec(format!(
                "Kraus set is not trace preserving ({defect:e})"
            )));
        }
        if qubit == 0 {
            return Err(Error::InvalidErrorSpec("qubits are numbered from 1".into()));
        }
        Ok(ErrorSpec::Channel { kraus, qubit })
    }

    pub fn qubit(&self) -> usize {
        match self {
            ErrorSpec::Pauli { qubit, .. }
            | ErrorSpec::Unitary { qubit, .. }
            | ErrorSpec::Channel { qubit, .. } => *qubit,
        }
    }

    /// Kraus operators of the error (a single one for Pauli and unitary kinds).
    pub fn kraus_operators(&self) -> Vec<Matrix2> {
        match self {
            ErrorSpec::Pauli { letter, .. } => vec![letter.matrix()],
            ErrorSpec::Unitary { matrix, .. } => vec![*matrix],
            ErrorSpec::Channel { kraus, .. } => kraus.clone(),
        }
    }

    /// Pauli transfer matrix, `R[b][a]` in I, X, Y, Z order.
    pub fn transfer_matrix(&self) -> [[f64; 4]; 4] {
        transfer_matrix(&self.kraus_operators())
    }
}

impl fmt::Display for ErrorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorSpec::Pauli { letter, qubit } => write!(f, "{letter}{qubit}"),
            ErrorSpec::Unitary { qubit, .. } => write!(f, "U{qubit}"),
            ErrorSpec::Channel { qubit, .. } => write!(f, "K{qubit}"),
        }
    }
}

impl FromStr for ErrorSpec {
    type Err = Error;

    /// A Pauli letter followed by a 1-based qubit index, e.g. `Z2`, `X14`.
    fn from_str(s: &str) -> Result<ErrorSpec> {
        let s = s.trim();
        let mut chars = s.chars();
        let bad = || {
            Error::InvalidErrorSpec(format!(
                "expected X, Y or Z followed by a qubit index, got {s:?}"
            ))
        };
        let letter = chars.next().and_then(Letter::from_char).ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let qubit = digits.parse().map_err(|_| bad())?;
        ErrorSpec::pauli(letter, qubit)
    }
}

fn mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let z = Complex64::new(0.0, 0.0);
    let mut out = [[z; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn dagger(a: &Matrix2) -> Matrix2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// `sum K^dagger K`.
fn gram(kraus: &[Matrix2]) -> Matrix2 {
    let z = Complex64::new(0.0, 0.0);
    kraus.iter().fold([[z; 2]; 2], |acc, k| {
        let g = mul(&dagger(k), k);
        [
            [acc[0][0] + g[0][0], acc[0][1] + g[0][1]],
            [acc[1][0] + g[1][0], acc[1][1] + g[1][1]],
        ]
    })
}

fn max_defect(g: &Matrix2) -> f64 {
    let id = Letter::I.matrix();
    (0..4)
        .map(|k| (g[k / 2][k % 2] - id[k / 2][k % 2]).norm())
        .fold(0.0, f64::max)
}

pub fn transfer_matrix(kraus: &[Matrix2]) -> [[f64; 4]; 4] {
    let mut r = [[0.0; 4]; 4];
    for a in Letter::ALL {
        let pa = a.matrix();
        let z = Complex64::new(0.0, 0.0);
        let mut image = [[z; 2]; 2];
        for k in kraus {
            let t = mul(&mul(k, &pa), &dagger(k));
            for i in 0..2 {
                for j in 0..2 {
                    image[i][j] += t[i][j];
                }
            }
        }
        for b in Letter::ALL {
            let pb = b.matrix();
            let tr = mul(&pb, &image);
            r[b.index()][a.index()] = 0.5 * (tr[0][0] + tr[1][1]).re;
        }
    }
    r
}

/// Applies the error to a state. Pauli errors are exact; other kinds go
/// through the transfer matrix on the affected qubit.
pub fn apply(state: &PauliSum, e: &ErrorSpec) -> Result<PauliSum> {
    let q = e.qubit();
    check_qubit(q, state.n())?;
    if let ErrorSpec::Pauli { letter, .. } = e {
        return state.conjugate_by(&PauliString::single(state.n(), q, *letter)?);
    }
    let r = e.transfer_matrix();
    let mut out = PauliSum::zero(state.n());
    for (p, c) in state.iter() {
        let a = p.letter(q).index();
        for b in Letter::ALL {
            let w = r[b.index()][a];
            if w != 0.0 {
                out.add_term(p.with_letter(q, b), c * w);
            }
        }
    }
    Ok(out)
}

/// `X1, Y1, Z1, X2, ...`: qubit-major, letters in X, Y, Z order.
pub fn all_single_qubit_paulis(n: usize) -> Vec<ErrorSpec> {
    (1..=n)
        .flat_map(|q| {
            [Letter::X, Letter::Y, Letter::Z]
                .into_iter()
                .map(move |l| ErrorSpec::Pauli {
                    letter: l,
                    qubit: q,
                })
        })
        .collect()
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Two orthonormal columns of length `rows` from a complex Gaussian matrix
/// (Gram-Schmidt), returned row-major.
fn random_isometry(rows: usize, rng: &mut ChaCha8Rng) -> Vec<[Complex64; 2]> {
    let mut m: Vec<[Complex64; 2]> = (0..rows).map(|_| [gaussian(rng), gaussian(rng)]).collect();
    let norm =
        |m: &[[Complex64; 2]], c: usize| m.iter().map(|r| r[c].norm_sqr()).sum::<f64>().sqrt();
    let n0 = norm(&m, 0);
    m.iter_mut().for_each(|r| r[0] /= n0);
    let proj: Complex64 = m.iter().map(|r| r[0].conj() * r[1]).sum();
    m.iter_mut().for_each(|r| r[1] -= proj * r[0]);
    let n1 = norm(&m, 1);
    m.iter_mut().for_each(|r| r[1] /= n1);
    m
}

/// A reproducible random CPTP map on one qubit: Kraus rank uniform in 1..=4,
/// operators cut from a random `2r x 2` isometry.
pub fn random_single_qubit_channel(seed: u64, qubit: usize) -> ErrorSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rng.random_range(1..=4usize);
    let v = random_isometry(2 * rank, &mut rng);
    let kraus = (0..rank).map(|i| [v[2 * i], v[2 * i + 1]]).collect();
    ErrorSpec::channel(kraus, qubit).expect("isometry blocks form a trace-preserving set")
}

/// A reproducible random single-qubit unitary.
pub fn random_single_qubit_unitary(seed: u64, qubit: usize) -> ErrorSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_isometry(2, &mut rng);
    ErrorSpec::unitary([v[0], v[1]], qubit).expect("square isometry is unitary")
}
