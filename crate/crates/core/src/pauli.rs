//! Exact algebra of N-qubit Pauli operators.
//!
//! A [`PauliString`] stores its X and Z components as bit masks (bit `i`
//! belongs to qubit `i + 1`). Products are computed by XOR with the phase
//! recovered from popcounts, so every sign in a stabilizer expansion is exact.
//! Qubits are 1-based at every public entry point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::DenseOperator;

/// Largest qubit count a [`PauliString`] can hold.
pub const MAX_QUBITS: usize = 64;

/// Coefficients with magnitude below this are dropped after arithmetic.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Default cap on the qubit count for dense conversion.
pub const DEFAULT_DENSE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    /// Position in the I, X, Y, Z basis ordering.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Row-major 2x2 matrix, with Y = ((0, -i), (i, 0)).
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Letter::I => [[l, o], [o, l]],
            Letter::X => [[o, l], [l, o]],
            Letter::Y => [[o, -i], [i, o]],
            Letter::Z => [[l, o], [o, -l]],
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c.to_ascii_uppercase() {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The scalar `i^k`, k taken mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `+1.0` or `-1.0` for real phases.
    pub fn sign(self) -> Option<f64> {
        match self.0 {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Phase-free tensor product of I/X/Y/Z letters on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n: usize) -> PauliString {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliString { n, x: 0, z: 0 }
    }

    /// Builds a string from raw masks; bit `i` is qubit `i + 1`.
    pub fn from_bits(n: usize, x: u64, z: u64) -> Result<PauliString> {
        if n > MAX_QUBITS {
            return Err(Error::SizeLimit {
                kind: "Pauli string",
                n,
                limit: MAX_QUBITS,
            });
        }
        let extra = (x | z) & !low_mask(n);
        if extra != 0 {
            let qubit = 64 - extra.leading_zeros() as usize;
            return Err(Error::QubitOutOfRange { qubit, n });
        }
        Ok(PauliString { n, x, z })
    }

    /// A single letter on one (1-based) qubit, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Result<PauliString> {
        check_qubit(qubit, n)?;
        let mut p = PauliString::identity(n);
        p.set(qubit, letter);
        Ok(p)
    }

    /// Parses labeled form such as `"X1 Z2"` or `"Z1X2Z3"`; `"I"` or an empty
    /// string gives the identity.
    pub fn parse_labeled(n: usize, s: &str) -> Result<PauliString> {
        let mut p = PauliString::identity(n);
        let mut chars = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .peekable();
        let mut seen = 0u64;
        while let Some(c) = chars.next() {
            let letter = Letter::from_char(c)
                .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in {s:?}")))?;
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            if digits.is_empty() {
                if letter == Letter::I {
                    continue;
                }
                return Err(Error::Parse(format!(
                    "missing qubit index after {c} in {s:?}"
                )));
            }
            let qubit: usize = digits.parse().map_err(|_| Error::Parse(s.to_string()))?;
            check_qubit(qubit, n)?;
            let bit = 1u64 << (qubit - 1);
            if seen & bit != 0 {
                return Err(Error::DuplicateQubit(qubit));
            }
            seen |= bit;
            p.set(qubit, letter);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        let b = 1u64 << (qubit - 1);
        Letter::from_bits(self.x & b != 0, self.z & b != 0)
    }

    fn set(&mut self, qubit: usize, letter: Letter) {
        let b = 1u64 << (qubit - 1);
        let (x, z) = letter.bits();
        self.x = if x { self.x | b } else { self.x & !b };
        self.z = if z { self.z | b } else { self.z & !b };
    }

    pub fn with_letter(&self, qubit: usize, letter: Letter) -> PauliString {
        let mut p = *self;
        p.set(qubit, letter);
        p
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (1..=self.n).map(move |q| self.letter(q))
    }

    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.support_mask() == 0
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Returns `(i^k, r)` with `self * other = i^k r` as operators.
    pub fn multiply(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        check_dims(self.n, other.n)?;
        Ok(self.multiply_unchecked(other))
    }

    pub(crate) fn multiply_unchecked(&self, other: &PauliString) -> (Phase, PauliString) {
        // Each letter is i^{xz} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{z1 x2}.
        let r = PauliString {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        };
        let k = self.y_count() as i64
            + other.y_count() as i64
            + 2 * (self.z & other.x).count_ones() as i64
            - r.y_count() as i64;
        (Phase::from_exponent(k), r)
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        check_dims(self.n, other.n)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Restriction to the qubits in `keep` (1-based), relabelled in that order.
    pub(crate) fn restrict(&self, keep: &[usize]) -> PauliString {
        let mut r = PauliString::identity(keep.len());
        for (i, &q) in keep.iter().enumerate() {
            r.set(i + 1, self.letter(q));
        }
        r
    }

    /// Human-readable form such as `X1 Z2`; the identity prints as `I`.
    pub fn labeled(&self) -> String {
        if self.is_identity() {
            return "I".to_string();
        }
        (1..=self.n)
            .filter_map(|q| match self.letter(q) {
                Letter::I => None,
                l => Some(format!("{l}{q}")),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Two bits per qubit with qubit 1 most significant, I < X < Y < Z.
    fn letter_code(&self) -> u128 {
        (1..=self.n).fold(0u128, |acc, q| (acc << 2) | self.letter(q).index() as u128)
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.letter_code().cmp(&other.letter_code()))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses the dense letter form, e.g. `"XZI"`.
    fn from_str(s: &str) -> Result<PauliString> {
        let s = s.trim();
        let n = s.chars().count();
        if n > MAX_QUBITS {
            return Err(Error::SizeLimit {
                kind: "Pauli string",
                n,
                limit: MAX_QUBITS,
            });
        }
        let mut p = PauliString::identity(n);
        for (i, c) in s.chars().enumerate() {
            let l = Letter::from_char(c)
                .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in {s:?}")))?;
            p.set(i + 1, l);
        }
        Ok(p)
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn check_qubit(qubit: usize, n: usize) -> Result<()> {
    if qubit == 0 || qubit > n {
        return Err(Error::QubitOutOfRange { qubit, n });
    }
    Ok(())
}

/// Validates a 1-based qubit selection: nonempty, in range, no repeats.
pub fn check_subset(keep: &[usize], n: usize) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::EmptySubsystem);
    }
    let mut seen = 0u64;
    for &q in keep {
        check_qubit(q, n)?;
        let b = 1u64 << (q - 1);
        if seen & b != 0 {
            return Err(Error::DuplicateQubit(q));
        }
        seen |= b;
    }
    Ok(())
}

/// A Hermitian operator written as a real combination of Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn zero(n: usize) -> PauliSum {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n: usize) -> PauliSum {
        let mut s = PauliSum::zero(n);
        s.add_term(PauliString::identity(n), 0.5f64.powi(n as i32));
        s
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<PauliSum>
    where
        I: IntoIterator<Item = (PauliString, f64)>,
    {
        let mut s = PauliSum::zero(n);
        for (p, c) in terms {
            check_dims(n, p.n)?;
            s.add_term(p, c);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.get(p).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, f64)> + '_ {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    /// Adds `c * p`, merging with an existing term and pruning the result.
    pub fn add_term(&mut self, p: PauliString, c: f64) {
        assert_eq!(p.n, self.n, "term acts on the wrong number of qubits");
        let entry = self.terms.entry(p).or_insert(0.0);
        *entry += c;
        if entry.abs() < PRUNE_THRESHOLD {
            self.terms.remove(&p);
        }
    }

    pub fn scaled(&self, factor: f64) -> PauliSum {
        let mut out = PauliSum::zero(self.n);
        for (p, c) in self.iter() {
            out.add_term(*p, c * factor);
        }
        out
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        check_dims(self.n, other.n)?;
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_term(*p, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scaled(-1.0))
    }

    /// `p * self`, split into real and imaginary parts.
    pub fn mul_left(&self, p: &PauliString) -> Result<(PauliSum, PauliSum)> {
        check_dims(self.n, p.n)?;
        Ok(self.mul_with(|q| p.multiply_unchecked(q)))
    }

    /// `self * p`, split into real and imaginary parts.
    pub fn mul_right(&self, p: &PauliString) -> Result<(PauliSum, PauliSum)> {
        check_dims(self.n, p.n)?;
        Ok(self.mul_with(|q| q.multiply_unchecked(p)))
    }

    fn mul_with(&self, f: impl Fn(&PauliString) -> (Phase, PauliString)) -> (PauliSum, PauliSum) {
        let mut re = PauliSum::zero(self.n);
        let mut im = PauliSum::zero(self.n);
        for (q, c) in self.iter() {
            let (phase, r) = f(q);
            let w = phase.to_complex() * c;
            if w.re != 0.0 {
                re.add_term(r, w.re);
            }
            if w.im != 0.0 {
                im.add_term(r, w.im);
            }
        }
        (re, im)
    }

    /// `Tr(self)`.
    pub fn trace(&self) -> f64 {
        self.coefficient(&PauliString::identity(self.n)) * 2f64.powi(self.n as i32)
    }

    /// `Tr(self^2)` from the coefficients.
    pub fn purity(&self) -> f64 {
        2f64.powi(self.n as i32) * self.terms.values().map(|c| c * c).sum::<f64>()
    }

    /// `Tr(self * other)` from the coefficients of shared strings.
    pub fn overlap(&self, other: &PauliSum) -> Result<f64> {
        check_dims(self.n, other.n)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let s: f64 = small.iter().map(|(p, c)| c * large.coefficient(p)).sum();
        Ok(2f64.powi(self.n as i32) * s)
    }

    /// Traces out every qubit not in `keep`. The kept qubits are relabelled
    /// `1..=keep.len()` in the order given.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<PauliSum> {
        check_subset(keep, self.n)?;
        let keep_mask = keep.iter().fold(0u64, |m, &q| m | 1u64 << (q - 1));
        let factor = 2f64.powi((self.n - keep.len()) as i32);
        let mut out = PauliSum::zero(keep.len());
        for (p, c) in self.iter() {
            // Tr of a non-identity letter is zero.
            if p.support_mask() & !keep_mask == 0 {
                out.add_term(p.restrict(keep), c * factor);
            }
        }
        Ok(out)
    }

    /// `e * self * e`: terms anticommuting with `e` change sign.
    pub fn conjugate_by(&self, e: &PauliString) -> Result<PauliSum> {
        check_dims(self.n, e.n)?;
        let terms = self
            .terms
            .iter()
            .map(|(p, &c)| (*p, if p.commutes_unchecked(e) { c } else { -c }))
            .collect();
        Ok(PauliSum { n: self.n, terms })
    }

    /// Relabels qubits: qubit `q` of `self` becomes qubit `perm[q - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<PauliSum> {
        check_dims(self.n, perm.len())?;
        check_subset(perm, self.n)?;
        let mut out = PauliSum::zero(self.n);
        for (p, c) in self.iter() {
            let mut r = PauliString::identity(self.n);
            for q in 1..=self.n {
                r.set(perm[q - 1], p.letter(q));
            }
            out.add_term(r, c);
        }
        Ok(out)
    }

    /// Largest coefficient difference against `other`.
    pub fn max_difference(&self, other: &PauliSum) -> Result<f64> {
        check_dims(self.n, other.n)?;
        let mut worst = 0.0f64;
        for (p, c) in self.iter() {
            worst = worst.max((c - other.coefficient(p)).abs());
        }
        for (p, c) in other.iter() {
            if !self.terms.contains_key(p) {
                worst = worst.max(c.abs());
            }
        }
        Ok(worst)
    }

    pub fn to_dense(&self) -> Result<DenseOperator> {
        self.to_dense_with_limit(DEFAULT_DENSE_LIMIT)
    }

    /// Dense `2^n x 2^n` matrix with qubit 1 as the most significant index bit.
    pub fn to_dense_with_limit(&self, limit: usize) -> Result<DenseOperator> {
        if self.n > limit {
            return Err(Error::SizeLimit {
                kind: "dense",
                n: self.n,
                limit,
            });
        }
        let dim = 1usize << self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (p, c) in self.iter() {
            // Pauli words are monomial: column j has its single entry in row j ^ x.
            let x = index_mask(p.x, self.n);
            let z = index_mask(p.z, self.n);
            let base = Phase::from_exponent(p.y_count() as i64).to_complex() * c;
            for j in 0..dim {
                let v = if (z & j).count_ones().is_multiple_of(2) {
                    base
                } else {
                    -base
                };
                entries[(j ^ x) * dim + j] += v;
            }
        }
        Ok(DenseOperator::from_parts(dim, entries, true))
    }

    /// Pauli expansion of a Hermitian dense operator, `c_P = Tr(P A) / 2^n`.
    pub fn from_dense(a: &DenseOperator) -> Result<PauliSum> {
        let dim = a.dim();
        let n = dim.trailing_zeros() as usize;
        if n > DEFAULT_DENSE_LIMIT {
            return Err(Error::SizeLimit {
                kind: "dense",
                n,
                limit: DEFAULT_DENSE_LIMIT,
            });
        }
        let norm = 1.0 / dim as f64;
        let mut out = PauliSum::zero(n);
        for xb in 0..dim as u64 {
            for zb in 0..dim as u64 {
                let p = PauliString { n, x: xb, z: zb };
                let x = index_mask(xb, n);
                let z = index_mask(zb, n);
                let phase = Phase::from_exponent(p.y_count() as i64).to_complex();
                // Tr(P A) = sum_j P[j ^ x, j] * A[j, j ^ x]
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..dim {
                    let s = if (z & j).count_ones().is_multiple_of(2) {
                        phase
                    } else {
                        -phase
                    };
                    acc += s * a.get(j, j ^ x);
                }
                out.add_term(p, acc.re * norm);
            }
        }
        Ok(out)
    }

    /// Terms written as `+c XZI`, one per line, in canonical string order.
    pub fn describe(&self) -> String {
        self.iter()
            .map(|(p, c)| format!("{c:+.12} {p}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+} {}", p.labeled())?;
        }
        Ok(())
    }
}

/// Maps a qubit mask (bit i = qubit i+1) to the dense basis-index layout
/// (qubit 1 = most significant of n bits).
fn index_mask(mask: u64, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (mask.reverse_bits() >> (64 - n)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn dense_of(p: &PauliString) -> DenseOperator {
        PauliSum::from_terms(p.n(), [(*p, 1.0)])
            .unwrap()
            .to_dense()
            .unwrap()
    }

    #[test]
    fn xy_is_iz() {
        let (phase, r) = ps("X").multiply(&ps("Y")).unwrap();
        assert_eq!(phase, Phase::I);
        assert_eq!(r, ps("Z"));
        let (phase, r) = ps("Z").multiply(&ps("X")).unwrap();
        assert_eq!((phase, r), (Phase::I, ps("Y")));
        let (phase, _) = ps("Y").multiply(&ps("X")).unwrap();
        assert_eq!(phase, Phase::MINUS_I);
    }

    #[test]
    fn squares_are_identity() {
        for s in ["X", "Y", "Z", "XYZI", "YYYY", "ZXIZY"] {
            let p = ps(s);
            assert_eq!(
                p.multiply(&p).unwrap(),
                (Phase::ONE, PauliString::identity(p.n()))
            );
        }
    }

    #[test]
    fn two_qubit_product_matches_matrices() {
        // Z1 X2 * X1 Z2 = (ZX)(XZ) = (iY)(-iY) = Y1 Y2
        let p = ps("ZX");
        let q = ps("XZ");
        let (phase, r) = p.multiply(&q).unwrap();
        assert_eq!(r, ps("YY"));
        assert_eq!(phase, Phase::ONE);
        let lhs = dense_of(&p).matmul(&dense_of(&q)).unwrap();
        let rhs = dense_of(&r).scaled(phase.to_complex());
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-14);
    }

    #[test]
    fn commutation() {
        assert!(!ps("X").commutes(&ps("Z")).unwrap());
        assert!(ps("XI").commutes(&ps("IZ")).unwrap());
        assert!(!ps("ZXZ").commutes(&ps("IZI")).unwrap());
        let dim_err = ps("X").commutes(&ps("XX"));
        assert_eq!(
            dim_err,
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn labeled_parsing() {
        let p = PauliString::parse_labeled(3, "Z1 X2 Z3").unwrap();
        assert_eq!(p, ps("ZXZ"));
        assert_eq!(p.labeled(), "Z1 X2 Z3");
        assert_eq!(
            PauliString::parse_labeled(3, "I").unwrap(),
            PauliString::identity(3)
        );
        assert!(matches!(
            PauliString::parse_labeled(3, "X4"),
            Err(Error::QubitOutOfRange { qubit: 4, n: 3 })
        ));
        assert_eq!(
            PauliString::parse_labeled(3, "X1Z1"),
            Err(Error::DuplicateQubit(1))
        );
        assert!(PauliString::parse_labeled(3, "Q1").is_err());
    }

    #[test]
    fn from_bits_rejects_stray_bits() {
        assert!(PauliString::from_bits(2, 0b100, 0).is_err());
        assert!(PauliString::from_bits(2, 0b10, 0b01).is_ok());
    }

    #[test]
    fn partial_trace_errors() {
        let s = PauliSum::maximally_mixed(3);
        assert_eq!(s.partial_trace(&[]), Err(Error::EmptySubsystem));
        assert_eq!(
            s.partial_trace(&[4]),
            Err(Error::QubitOutOfRange { qubit: 4, n: 3 })
        );
        assert_eq!(s.partial_trace(&[1, 1]), Err(Error::DuplicateQubit(1)));
    }

    #[test]
    fn partial_trace_relabels_in_keep_order() {
        let s = PauliSum::from_terms(
            3,
            [
                (PauliString::identity(3), 0.125),
                (ps("XIZ"), 0.125),
                (ps("XZZ"), 0.125),
            ],
        )
        .unwrap();
        let r = s.partial_trace(&[3, 1]).unwrap();
        assert_eq!(r.coefficient(&ps("ZX")), 0.25);
        assert_eq!(r.coefficient(&ps("II")), 0.25);
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn plus_state_dense() {
        let s = PauliSum::from_terms(1, [(ps("I"), 0.5), (ps("X"), 0.5)]).unwrap();
        let d = s.to_dense().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(d.get(i, j), Complex64::new(0.5, 0.0));
            }
        }
        let id = PauliSum::from_terms(1, [(ps("I"), 1.0)])
            .unwrap()
            .to_dense()
            .unwrap();
        assert_eq!(id.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(id.get(0, 1), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn dense_limit_enforced() {
        let s = PauliSum::maximally_mixed(4);
        assert!(matches!(
            s.to_dense_with_limit(3),
            Err(Error::SizeLimit { n: 4, limit: 3, .. })
        ));
    }

    #[test]
    fn y_matrix_convention() {
        let d = dense_of(&ps("Y"));
        assert_eq!(d.get(0, 1), Complex64::new(0.0, -1.0));
        assert_eq!(d.get(1, 0), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn qubit_one_is_most_significant() {
        // Z1 on two qubits is diag(1, 1, -1, -1).
        let d = dense_of(&ps("ZI"));
        let diag: Vec<f64> = (0..4).map(|i| d.get(i, i).re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn conjugation_flips_anticommuting_terms() {
        let rho = PauliSum::from_terms(2, [(ps("II"), 0.25), (ps("XZ"), 0.25)]).unwrap();
        let out = rho.conjugate_by(&ps("ZI")).unwrap();
        assert_eq!(out.coefficient(&ps("XZ")), -0.25);
        assert_eq!(out.coefficient(&ps("II")), 0.25);
        assert_eq!(rho.conjugate_by(&ps("II")).unwrap(), rho);
    }

    #[test]
    fn pruning_removes_cancelled_terms() {
        let mut s = PauliSum::zero(1);
        s.add_term(ps("X"), 0.3);
        s.add_term(ps("X"), -0.3);
        assert!(s.is_empty());
        s.add_term(ps("Z"), 1e-15);
        assert!(s.is_empty());
    }

    #[test]
    fn dense_round_trip() {
        let s = PauliSum::from_terms(
            2,
            [
                (ps("II"), 0.25),
                (ps("XY"), -0.1),
                (ps("ZI"), 0.05),
                (ps("YZ"), 0.2),
            ],
        )
        .unwrap();
        let back = PauliSum::from_dense(&s.to_dense().unwrap()).unwrap();
        assert!(back.max_difference(&s).unwrap() < 1e-15);
    }

    #[test]
    fn canonical_order_is_weight_then_letters() {
        let mut v = [ps("XZ"), ps("IZ"), ps("II"), ps("ZI"), ps("YY")];
        v.sort();
        let names: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["II", "IZ", "ZI", "XZ", "YY"]);
    }
}
