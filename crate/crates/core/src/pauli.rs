//! Pauli-string algebra on the three spins A, B, C.
//!
//! Strings are written site-major (`ZYI` = σ_z on A, σ_y on B, identity on C)
//! and ordered lexicographically with `I < X < Y < Z` and site A most
//! significant, which is also the order of every serialized listing.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::format::{fmt_f64, parse_real};
use crate::linalg::{kron, ComplexMatrix};

/// Number of spins covered by a [`PauliString`].
pub const SITES: usize = 3;
/// Operator dimension on three spins.
pub const DIM: usize = 1 << SITES;

/// Coefficients below this modulus are dropped from a decomposition.
pub const STORAGE_ZERO: f64 = 1e-14;
/// Default threshold for claims about which interaction weights are present.
pub const WEIGHT_CLAIM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 4] = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn matrix(self) -> ComplexMatrix {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let rows = match self {
            PauliAxis::I => [[one, o], [o, one]],
            PauliAxis::X => [[o, one], [one, o]],
            PauliAxis::Y => [[o, -i], [i, o]],
            PauliAxis::Z => [[one, o], [o, -one]],
        };
        ComplexMatrix::from_rows(&rows).expect("2x2 literal")
    }

    pub fn symbol(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Tensor product of one Pauli factor per spin, in site order (A, B, C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(pub [PauliAxis; SITES]);

impl PauliString {
    pub const IDENTITY: PauliString = PauliString([PauliAxis::I; SITES]);

    pub fn new(a: PauliAxis, b: PauliAxis, c: PauliAxis) -> Self {
        PauliString([a, b, c])
    }

    /// All 64 strings in lexicographic order.
    pub fn all() -> impl Iterator<Item = PauliString> {
        (0..64).map(PauliString::from_index)
    }

    /// Inverse of [`PauliString::index`].
    pub fn from_index(k: usize) -> Self {
        assert!(k < 64);
        let ax = |d: usize| PauliAxis::ALL[(k >> (2 * d)) & 3];
        PauliString([ax(2), ax(1), ax(0)])
    }

    /// Position in the lexicographic order, 0..64.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, a| acc * 4 + a.index())
    }

    pub fn axes(&self) -> [PauliAxis; SITES] {
        self.0
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&a| a != PauliAxis::I).count()
    }

    /// The 8×8 operator `m(A) ⊗ m(B) ⊗ m(C)`.
    pub fn matrix(&self) -> ComplexMatrix {
        let [a, b, c] = self.0;
        kron(&kron(&a.matrix(), &b.matrix()), &c.matrix())
    }

    /// Column and value of the single nonzero entry in `row` of [`Self::matrix`].
    pub fn row_entry(&self, row: usize) -> (usize, Complex64) {
        let mut col = 0;
        let mut val = Complex64::new(1.0, 0.0);
        for (site, axis) in self.0.iter().enumerate() {
            let shift = SITES - 1 - site;
            let r = (row >> shift) & 1;
            let (c, v) = match axis {
                PauliAxis::I => (r, Complex64::new(1.0, 0.0)),
                PauliAxis::X => (1 - r, Complex64::new(1.0, 0.0)),
                PauliAxis::Y => (1 - r, Complex64::new(0.0, if r == 0 { -1.0 } else { 1.0 })),
                PauliAxis::Z => (r, Complex64::new(if r == 0 { 1.0 } else { -1.0 }, 0.0)),
            };
            col |= c << shift;
            val *= v;
        }
        (col, val)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.0 {
            write!(f, "{}", a.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != SITES {
            return Err(format!(
                "Pauli string must have {SITES} characters, got {s:?}"
            ));
        }
        let mut axes = [PauliAxis::I; SITES];
        for (slot, c) in axes.iter_mut().zip(chars) {
            *slot = PauliAxis::from_symbol(c)
                .ok_or_else(|| format!("unknown Pauli symbol {c:?} in {s:?}"))?;
        }
        Ok(PauliString(axes))
    }
}

/// `string_matrix` in free-function form.
pub fn string_matrix(s: &PauliString) -> ComplexMatrix {
    s.matrix()
}

/// Largest coefficient magnitude per interaction weight 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WeightProfile(pub [f64; SITES + 1]);

impl WeightProfile {
    pub fn get(&self, weight: usize) -> f64 {
        self.0[weight]
    }

    /// True when weights 0, 1 and 3 are all at most `tol`.
    pub fn two_spin_only(&self, tol: f64) -> bool {
        self.0[0] <= tol && self.0[1] <= tol && self.0[3] <= tol
    }
}

/// Operator expanded in the Pauli basis: `Σ_s c_s · s`.
///
/// Only coefficients with modulus at least [`STORAGE_ZERO`] are kept.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliDecomposition {
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliDecomposition {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a decomposition from real coefficients; repeated strings accumulate.
    pub fn from_real_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (PauliString, f64)>,
    {
        let mut d = Self::new();
        for (s, c) in terms {
            d.add(s, Complex64::new(c, 0.0));
        }
        d
    }

    pub fn add(&mut self, s: PauliString, c: Complex64) {
        let total = self.coeff(&s) + c;
        self.set(s, total);
    }

    pub fn set(&mut self, s: PauliString, c: Complex64) {
        if c.norm() < STORAGE_ZERO {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, c);
        }
    }

    pub fn coeff(&self, s: &PauliString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or_default()
    }

    pub fn real_coeff(&self, s: &PauliString) -> f64 {
        self.coeff(s).re
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored terms in lexicographic string order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.set(*k, v * s);
        }
        out
    }

    /// Largest coefficient difference over the union of both supports.
    pub fn max_coeff_diff(&self, other: &PauliDecomposition) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|s| (self.coeff(s) - other.coeff(s)).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Fails if any coefficient has an imaginary part above `tol`.
    pub fn ensure_real(&self, tol: f64) -> Result<()> {
        match self.terms.iter().find(|(_, c)| c.im.abs() > tol) {
            Some((s, c)) => Err(Error::ComplexCoefficient {
                string: s.to_string(),
                imag: c.im,
            }),
            None => Ok(()),
        }
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        reconstruct(self)
    }
}

/// Coefficients `Tr(s · m)/8` over all 64 strings.
pub fn decompose(m: &ComplexMatrix) -> Result<PauliDecomposition> {
    m.ensure_dim(DIM)?;
    let mut d = PauliDecomposition::new();
    for s in PauliString::all() {
        // one nonzero per row of the string matrix, so the trace is a single sum
        let tr: Complex64 = (0..DIM)
            .map(|i| {
                let (k, v) = s.row_entry(i);
                v * m[(k, i)]
            })
            .sum();
        d.set(s, tr / DIM as f64);
    }
    Ok(d)
}

/// `Σ_s c_s · string_matrix(s)`.
pub fn reconstruct(d: &PauliDecomposition) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(DIM);
    for (s, &c) in d.iter() {
        for i in 0..DIM {
            let (k, v) = s.row_entry(i);
            out[(i, k)] += c * v;
        }
    }
    out
}

pub fn weight_profile(d: &PauliDecomposition, tol: f64) -> WeightProfile {
    let mut w = WeightProfile::default();
    for (s, c) in d.iter() {
        let mag = c.norm();
        let k = s.weight();
        if mag > tol && mag > w.0[k] {
            w.0[k] = mag;
        }
    }
    w
}

pub const PAULI_HAM_HEADER: &str = "# pauli-ham v1";

/// Serializes a Hamiltonian with real coefficients in lexicographic string order.
pub fn write_pauli_ham(d: &PauliDecomposition) -> Result<String> {
    d.ensure_real(WEIGHT_CLAIM_TOL)?;
    let mut out = String::from(PAULI_HAM_HEADER);
    out.push('\n');
    for (s, c) in d.iter() {
        out.push_str(&format!("{s} {}\n", fmt_f64(c.re)));
    }
    Ok(out)
}

/// Parses a `pauli-ham v1` file.
///
/// Blank input is the empty Hamiltonian; otherwise the first non-blank line
/// must be the header. Later `#` lines are comments. A string may appear once.
pub fn parse_pauli_ham(text: &str) -> Result<PauliDecomposition> {
    let mut d = PauliDecomposition::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            if line != PAULI_HAM_HEADER {
                return Err(Error::parse(
                    line_no,
                    format!("expected {PAULI_HAM_HEADER:?}, found {line:?}"),
                ));
            }
            header_seen = true;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(label), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(line_no, "expected `<AAA> <coefficient>`"));
        };
        let s: PauliString = label.parse().map_err(|e| Error::parse(line_no, e))?;
        let c = parse_real(value, line_no)?;
        if !seen.insert(s) {
            return Err(Error::parse(line_no, format!("duplicate term {s}")));
        }
        d.set(s, Complex64::new(c, 0.0));
    }
    Ok(d)
}
