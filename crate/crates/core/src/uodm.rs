//! Upper off-diagonal matrices (UODMs) over `2^L` dimensions and their
//! expansion in fermion words.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::expansion::{BasisElement, OperatorExpansion};
use crate::matrix::Matrix;
use crate::operators::{
    fermion_annihilator, fermion_creator, number_operator, primitive_c, primitive_c_dag, projector_down, projector_up,
    sigma_z, Flavor,
};
use crate::scalar::{ExactComplex, ExactReal};

/// Component vector `(x_1, …, x_{2^L−1})` of a UODM.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UodmVector {
    flavors: usize,
    x: Vec<ExactReal>,
}

impl UodmVector {
    pub fn new(flavors: usize, x: Vec<ExactReal>) -> Result<Self> {
        if flavors == 0 || flavors >= usize::BITS as usize {
            return Err(Error::InvalidFlavor { flavors, alpha: 0 });
        }
        let expected = (1usize << flavors) - 1;
        if x.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "UODM vector for L={flavors} needs {expected} components, got {}",
                x.len()
            )));
        }
        Ok(Self { flavors, x })
    }

    /// Infers `L` from the length, which must be `2^L − 1`.
    pub fn from_components(x: Vec<ExactReal>) -> Result<Self> {
        let n = x.len() + 1;
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::DimensionMismatch(format!(
                "{} components is not of the form 2^L - 1",
                x.len()
            )));
        }
        Self::new(n.trailing_zeros() as usize, x)
    }

    /// Real parts of the first upper off-diagonal of `m`; fails on complex entries.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let x = off_diagonal_vector(m, 1)?
            .into_iter()
            .map(|z| {
                if z.is_real() {
                    Ok(z.re)
                } else {
                    Err(Error::DimensionMismatch("complex UODM components".into()))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_components(x)
    }

    pub fn flavors(&self) -> usize {
        self.flavors
    }

    pub fn components(&self) -> &[ExactReal] {
        &self.x
    }

    pub fn dim(&self) -> usize {
        1 << self.flavors
    }
}

/// Matrix with `x_j` at `(j, j+1)`.
pub fn build_uodm(v: &UodmVector) -> Matrix {
    let n = v.dim();
    let mut m = Matrix::zeros(n, n);
    for (j, x) in v.x.iter().enumerate() {
        if !x.is_zero() {
            m.set(j, j + 1, ExactComplex::real(x.clone()));
        }
    }
    m
}

/// Entries `m[j, j+k]`, `j = 1..dim−k`.
pub fn off_diagonal_vector(m: &Matrix, k: usize) -> Result<Vec<ExactComplex>> {
    if !m.is_square() || k == 0 || k >= m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "off-diagonal {k} of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok((0..m.rows() - k).map(|j| m.get(j, j + k).clone()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Creator,
    Annihilator,
    Number,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub alpha: usize,
    pub kind: FactorKind,
}

impl Factor {
    pub fn creator(alpha: usize) -> Self {
        Self {
            alpha,
            kind: FactorKind::Creator,
        }
    }

    pub fn annihilator(alpha: usize) -> Self {
        Self {
            alpha,
            kind: FactorKind::Annihilator,
        }
    }

    pub fn number(alpha: usize) -> Self {
        Self {
            alpha,
            kind: FactorKind::Number,
        }
    }

    fn matrix(&self, flavors: usize) -> Result<Matrix> {
        let f = Flavor::new(flavors, self.alpha)?;
        Ok(match self.kind {
            FactorKind::Creator => fermion_creator(f),
            FactorKind::Annihilator => fermion_annihilator(f),
            FactorKind::Number => number_operator(f),
        })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Creator => write!(f, "c{}+", self.alpha),
            FactorKind::Annihilator => write!(f, "c{}-", self.alpha),
            FactorKind::Number => write!(f, "n{}", self.alpha),
        }
    }
}

/// Ordered product of fermion operators at a fixed flavor count, with its matrix.
///
/// The empty word is the identity and prints as `1`.
#[derive(Clone, PartialEq, Eq)]
pub struct FermionWord {
    factors: Vec<Factor>,
    flavors: usize,
    matrix: Matrix,
}

impl FermionWord {
    pub fn new(flavors: usize, factors: Vec<Factor>) -> Result<Self> {
        let mut matrix = Matrix::identity(1 << flavors);
        for factor in &factors {
            matrix = matrix.matmul(&factor.matrix(flavors)?)?;
        }
        Ok(Self {
            factors,
            flavors,
            matrix,
        })
    }

    pub fn identity(flavors: usize) -> Self {
        Self {
            factors: Vec::new(),
            flavors,
            matrix: Matrix::identity(1 << flavors),
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn flavors(&self) -> usize {
        self.flavors
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Number of elementary `ĉ`/`ĉ†` factors; a number operator counts twice.
    pub fn f(&self) -> usize {
        self.factors
            .iter()
            .map(|x| if x.kind == FactorKind::Number { 2 } else { 1 })
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// `self · other`.
    pub fn product(&self, other: &FermionWord) -> Result<FermionWord> {
        if self.flavors != other.flavors {
            return Err(Error::DimensionMismatch(format!(
                "words at L={} and L={}",
                self.flavors, other.flavors
            )));
        }
        let factors = self.factors.iter().chain(&other.factors).copied().collect();
        Ok(Self {
            factors,
            flavors: self.flavors,
            matrix: self.matrix.matmul(&other.matrix)?,
        })
    }

    /// Parses `n1 c2+ c3-` (or `1`) at `flavors` modes.
    pub fn parse(s: &str, flavors: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("bad fermion word `{s}`"));
        let t = s.trim();
        if t == "1" {
            return Ok(Self::identity(flavors));
        }
        let mut factors = Vec::new();
        for token in t.split_whitespace() {
            let factor = if let Some(rest) = token.strip_prefix('n') {
                Factor::number(rest.parse().map_err(|_| bad())?)
            } else if let Some(rest) = token.strip_prefix('c') {
                if let Some(a) = rest.strip_suffix('+') {
                    Factor::creator(a.parse().map_err(|_| bad())?)
                } else if let Some(a) = rest.strip_suffix('-') {
                    Factor::annihilator(a.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            } else {
                return Err(bad());
            };
            factors.push(factor);
        }
        if factors.is_empty() {
            return Err(bad());
        }
        Self::new(flavors, factors)
    }
}

impl fmt::Display for FermionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FermionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FermionWord(L={}, {self})", self.flavors)
    }
}

/// Adds one flavor in front: indices shift by one and the matrix becomes
/// `σz ⊗ old` for odd `f`, `1₂ ⊗ old` for even `f`.
pub fn index_shift(w: &FermionWord) -> FermionWord {
    let left = if w.f() % 2 == 1 { sigma_z() } else { Matrix::identity(2) };
    FermionWord {
        factors: w
            .factors
            .iter()
            .map(|x| Factor {
                alpha: x.alpha + 1,
                kind: x.kind,
            })
            .collect(),
        flavors: w.flavors + 1,
        matrix: left.kron(&w.matrix),
    }
}

type BasisCache = RwLock<HashMap<usize, Arc<Vec<FermionWord>>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Fermionic basis of the `2^L − 1` dimensional UODM space.
pub fn fermionic_basis(flavors: usize) -> Result<Arc<Vec<FermionWord>>> {
    if flavors == 0 {
        return Err(Error::InvalidFlavor { flavors, alpha: 0 });
    }
    if let Some(hit) = basis_cache().read().expect("basis cache poisoned").get(&flavors) {
        return Ok(Arc::clone(hit));
    }
    let basis = if flavors == 1 {
        vec![FermionWord::new(1, vec![Factor::creator(1)])?]
    } else {
        let previous = fermionic_basis(flavors - 1)?;
        let shifted: Vec<FermionWord> = previous.iter().map(index_shift).collect();
        let n1 = FermionWord::new(flavors, vec![Factor::number(1)])?;
        let mut middle = vec![Factor::creator(1)];
        middle.extend((2..=flavors).map(Factor::annihilator));
        let mut basis = Vec::with_capacity(2 * shifted.len() + 1);
        for w in &shifted {
            basis.push(n1.product(w)?);
        }
        basis.push(FermionWord::new(flavors, middle)?);
        basis.extend(shifted);
        basis
    };
    let basis = Arc::new(basis);
    basis_cache()
        .write()
        .expect("basis cache poisoned")
        .entry(flavors)
        .or_insert_with(|| Arc::clone(&basis));
    Ok(basis)
}

/// Inverse of the matrix whose columns are the basis off-diagonal vectors,
/// built from the block recursion on `L`.
pub fn v_c_inverse(flavors: usize) -> Result<Matrix> {
    if flavors == 0 {
        return Err(Error::InvalidFlavor { flavors, alpha: 0 });
    }
    if flavors == 1 {
        return Ok(Matrix::identity(1));
    }
    let q = v_c_inverse(flavors - 1)?;
    let f_parity: Vec<bool> = fermionic_basis(flavors - 1)?.iter().map(|w| w.f() % 2 == 1).collect();
    let half = q.rows();
    let n = 2 * half + 1;
    let mut m = Matrix::zeros(n, n);
    for j in 0..half {
        for (k, &odd) in f_parity.iter().enumerate() {
            let entry = q.get(j, k);
            if entry.is_zero() {
                continue;
            }
            m.set(j, k, entry.clone());
            // A = (−1)^{f+1} Q, B = (−1)^f Q
            let (a, b) = if odd {
                (entry.clone(), -entry)
            } else {
                (-entry, entry.clone())
            };
            m.set(half + 1 + j, k, a);
            m.set(half + 1 + j, half + 1 + k, b);
        }
    }
    let centre = if flavors % 2 == 1 { 1 } else { -1 };
    m.set(half, half, ExactComplex::from_integer(centre));
    Ok(m)
}

/// Coefficients `c_k = Σ_j x_j (V_c⁻¹)_{jk}` over [`fermionic_basis`].
pub fn expand_uodm_fermionic(v: &UodmVector) -> Result<OperatorExpansion> {
    let basis = fermionic_basis(v.flavors)?;
    let inv = v_c_inverse(v.flavors)?;
    let n = basis.len();
    let mut coeffs = vec![ExactReal::zero(); n];
    for (j, x) in v.x.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, c) in coeffs.iter_mut().enumerate() {
            let entry = &inv.get(j, k).re;
            if !entry.is_zero() {
                *c += &x.checked_mul(entry)?;
            }
        }
    }
    let terms = coeffs
        .into_iter()
        .zip(basis.iter())
        .map(|(c, w)| (c, BasisElement::Fermion(w.clone())))
        .collect();
    Ok(OperatorExpansion::fermionic(v.flavors, terms))
}

/// `(1,…,1, 0, −1,…,−1)` with `2^m − 1` entries on each side of the zero.
pub fn r_vector(m: usize) -> Vec<i8> {
    let side = (1usize << m) - 1;
    let mut r = vec![1i8; side];
    r.push(0);
    r.extend(std::iter::repeat_n(-1, side));
    r
}

/// Sign pattern selecting projectors in the closed-form UODM expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatrix {
    flavors: usize,
    rows: Vec<Vec<i8>>,
}

impl PatternMatrix {
    pub fn flavors(&self) -> usize {
        self.flavors
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn column(&self, l: usize) -> Vec<i8> {
        self.rows.iter().map(|r| r[l]).collect()
    }
}

/// Column `l` (1-based) is `2^{l−1}` copies of `r_{L−l}` separated by single zeros.
pub fn pattern_matrix(flavors: usize) -> Result<PatternMatrix> {
    if flavors < 2 {
        return Err(Error::InvalidFlavor { flavors, alpha: 0 });
    }
    let n = (1usize << flavors) - 1;
    let mut rows = vec![Vec::with_capacity(flavors - 1); n];
    for l in 1..flavors {
        let r = r_vector(flavors - l);
        let mut column = Vec::with_capacity(n);
        for copy in 0..(1usize << (l - 1)) {
            if copy > 0 {
                column.push(0);
            }
            column.extend_from_slice(&r);
        }
        debug_assert_eq!(column.len(), n);
        for (row, v) in rows.iter_mut().zip(column) {
            row.push(v);
        }
    }
    Ok(PatternMatrix { flavors, rows })
}

/// `Σ_j x_j · Π_j ⊗ ĉ† ⊗ ĉ^{⊗m_j}` with `Π_j` read off the pattern matrix.
pub fn closed_form_uodm(v: &UodmVector) -> Result<Matrix> {
    let flavors = v.flavors;
    let n = v.dim();
    if flavors == 1 {
        return Ok(primitive_c_dag().scale_real(&v.x[0]));
    }
    let pattern = pattern_matrix(flavors)?;
    let (up, down, c, c_dag) = (projector_up(), projector_down(), primitive_c(), primitive_c_dag());
    let mut total = Matrix::zeros(n, n);
    for (x, row) in v.x.iter().zip(pattern.rows()) {
        if x.is_zero() {
            continue;
        }
        let mut term = Matrix::identity(1);
        let mut used = 0;
        for &sign in row {
            match sign {
                1 => term = term.kron(&up),
                -1 => term = term.kron(&down),
                _ => continue,
            }
            used += 1;
        }
        term = term.kron(&c_dag);
        for _ in 0..flavors - 1 - used {
            term = term.kron(&c);
        }
        total.add_scaled(&ExactComplex::real(x.clone()), &term)?;
    }
    Ok(total)
}
