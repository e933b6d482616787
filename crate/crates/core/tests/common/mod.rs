#![allow(dead_code)]

use clusterdist::distance::BlockTable;
use clusterdist::linalg::DenseOperator;
use clusterdist::partition::{enumerate_partitions, Partition};
use clusterdist::{Letter, PauliString, PauliSum};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Plain nested-vector matrix used by the oracles.
pub type Mat = Vec<Vec<Complex64>>;

pub fn to_mat(a: &DenseOperator) -> Mat {
    (0..a.dim())
        .map(|i| (0..a.dim()).map(|j| a.get(i, j)).collect())
        .collect()
}

pub fn from_mat(m: &Mat) -> DenseOperator {
    DenseOperator::new(m.len(), m.iter().flatten().copied().collect()).unwrap()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn dagger(a: &Mat) -> Mat {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| a[j][i].conj()).collect())
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (da, db) = (a.len(), b.len());
    (0..da * db)
        .map(|i| {
            (0..da * db)
                .map(|j| a[i / db][j / db] * b[i % db][j % db])
                .collect()
        })
        .collect()
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn letter_mat(l: Letter) -> Mat {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match l {
        Letter::I => vec![vec![o, z], vec![z, o]],
        Letter::X => vec![vec![z, o], vec![o, z]],
        Letter::Y => vec![vec![z, c(0.0, -1.0)], vec![c(0.0, 1.0), z]],
        Letter::Z => vec![vec![o, z], vec![z, -o]],
    }
}

/// Tensor product of letter matrices, qubit 1 leftmost.
pub fn pauli_mat(p: &PauliString) -> Mat {
    (1..=p.n()).fold(vec![vec![c(1.0, 0.0)]], |acc, q| {
        kron(&acc, &letter_mat(p.letter(q)))
    })
}

pub fn sum_mat(s: &PauliSum) -> Mat {
    let d = 1usize << s.n();
    let mut out = vec![vec![c(0.0, 0.0); d]; d];
    for (p, coeff) in s.iter() {
        let m = pauli_mat(p);
        for i in 0..d {
            for j in 0..d {
                out[i][j] += m[i][j] * coeff;
            }
        }
    }
    out
}

/// Reduced matrix on `keep` (in that order) of an `n`-qubit matrix whose
/// most significant index bit is qubit 1.
pub fn dense_partial_trace(a: &Mat, n: usize, keep: &[usize]) -> Mat {
    let k = keep.len();
    let traced: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
    let full_index = |kept: usize, t: usize| -> usize {
        let mut idx = 0;
        for (m, &q) in keep.iter().enumerate() {
            let bit = kept >> (k - 1 - m) & 1;
            idx |= bit << (n - q);
        }
        for (m, &q) in traced.iter().enumerate() {
            let bit = t >> (traced.len() - 1 - m) & 1;
            idx |= bit << (n - q);
        }
        idx
    };
    let dk = 1 << k;
    let mut out = vec![vec![c(0.0, 0.0); dk]; dk];
    for i in 0..dk {
        for j in 0..dk {
            for t in 0..1usize << traced.len() {
                out[i][j] += a[full_index(i, t)][full_index(j, t)];
            }
        }
    }
    out
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G^dagger / Tr` for a `dim x rank` complex Gaussian `G`.
pub fn random_density_mat(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> Mat {
    let g: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..rank).map(|_| gaussian(rng)).collect())
        .collect();
    let mut m: Mat = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum())
                .collect()
        })
        .collect();
    let tr: f64 = (0..dim).map(|i| m[i][i].re).sum();
    m.iter_mut().flatten().for_each(|x| *x /= tr);
    m
}

/// Random `n`-qubit density operator with a random rank.
pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> PauliSum {
    let dim = 1 << n;
    let rank = rng.random_range(1..=dim);
    PauliSum::from_dense(&from_mat(&random_density_mat(dim, rank, rng))).unwrap()
}

/// Random Hermitian Pauli sum with a handful of terms.
pub fn random_sum(n: usize, rng: &mut ChaCha8Rng) -> PauliSum {
    let mut s = PauliSum::zero(n);
    for _ in 0..rng.random_range(1..=12) {
        let mask = (1u64 << n) - 1;
        let p = PauliString::from_bits(n, rng.random::<u64>() & mask, rng.random::<u64>() & mask)
            .unwrap();
        s.add_term(p, rng.random_range(-1.0..1.0));
    }
    s
}

/// Maximum of the weighted sum over every set partition.
pub fn exhaustive_max(table: &BlockTable) -> (f64, Partition) {
    enumerate_partitions(table.n())
        .unwrap()
        .map(|p| {
            let v: f64 = p
                .blocks()
                .iter()
                .map(|b| table.get_block(b) / b.len() as f64)
                .sum();
            (v, p)
        })
        .fold((f64::NEG_INFINITY, Partition::whole(1)), |best, cur| {
            if cur.0 > best.0 {
                cur
            } else {
                best
            }
        })
}
