//! Fermion operators written in terms of spin operators.
//!
//! Creators become (powers of) UODMs expanded over `S₊·S_z^{α−1}`; number
//! operators become polynomials in `S_z` through an explicit Vandermonde inverse.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expansion::{BasisElement, OperatorExpansion};
use crate::matrix::Matrix;
use crate::operators::{fermion_creator, number_operator, spin_plus, spin_z, Flavor, SpinRep};
use crate::scalar::{ExactComplex, ExactReal};
use crate::uodm::{build_uodm, UodmVector};

/// Spin basis element `S₊·S_z^{α−1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinBasisIndex {
    two_s: u32,
    alpha: usize,
    matrix: Matrix,
}

impl SpinBasisIndex {
    pub fn new(rep: SpinRep, alpha: usize) -> Result<Self> {
        if alpha == 0 || alpha > rep.two_s() as usize {
            return Err(Error::IndexOutOfRange {
                index: alpha,
                limit: rep.two_s() as usize,
            });
        }
        let z_power = spin_z(rep).pow(alpha as u32 - 1)?;
        let matrix = spin_plus(rep).matmul(&z_power)?;
        Ok(Self {
            two_s: rep.two_s(),
            alpha,
            matrix,
        })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Parses `S+`, `S+ Sz` or `S+ Sz^k`.
    pub fn parse(s: &str, rep: SpinRep) -> Result<Self> {
        let bad = || Error::Parse(format!("bad spin word `{s}`"));
        let mut tokens = s.split_whitespace();
        if tokens.next() != Some("S+") {
            return Err(bad());
        }
        let power = match tokens.next() {
            None => 0,
            Some("Sz") => 1,
            Some(t) => t.strip_prefix("Sz^").and_then(|p| p.parse().ok()).ok_or_else(bad)?,
        };
        if tokens.next().is_some() {
            return Err(bad());
        }
        Self::new(rep, power + 1)
    }
}

impl fmt::Display for SpinBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha {
            1 => f.write_str("S+"),
            2 => f.write_str("S+ Sz"),
            a => write!(f, "S+ Sz^{}", a - 1),
        }
    }
}

impl fmt::Debug for SpinBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpinBasisIndex(2s={}, {self})", self.two_s)
    }
}

type SpinBasisCache = RwLock<HashMap<u32, Arc<Vec<SpinBasisIndex>>>>;

fn spin_basis_cache() -> &'static SpinBasisCache {
    static CACHE: OnceLock<SpinBasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `S₊·S_z^{α−1}` for `α = 1..2s`.
pub fn spin_basis(rep: SpinRep) -> Result<Arc<Vec<SpinBasisIndex>>> {
    if let Some(hit) = spin_basis_cache()
        .read()
        .expect("spin basis cache poisoned")
        .get(&rep.two_s())
    {
        return Ok(Arc::clone(hit));
    }
    let basis = Arc::new(
        (1..=rep.two_s() as usize)
            .map(|alpha| SpinBasisIndex::new(rep, alpha))
            .collect::<Result<Vec<_>>>()?,
    );
    spin_basis_cache()
        .write()
        .expect("spin basis cache poisoned")
        .entry(rep.two_s())
        .or_insert_with(|| Arc::clone(&basis));
    Ok(basis)
}

/// `(V_S)_{jk} = (E_k)_{j,j+1}`.
pub fn v_s(rep: SpinRep) -> Result<Matrix> {
    let basis = spin_basis(rep)?;
    let n = basis.len();
    Ok(Matrix::from_fn(n, n, |j, k| basis[k].matrix().get(j, j + 1).clone()))
}

pub fn v_s_inverse(rep: SpinRep) -> Result<Matrix> {
    v_s(rep)?.inverse()
}

/// `λ^{∘k}(1)` with `λ: a ↦ (a, −a)`.
pub fn lambda_signs(k: usize) -> Vec<i8> {
    let mut signs = vec![1i8];
    for _ in 0..k {
        let negated: Vec<i8> = signs.iter().map(|s| -s).collect();
        signs.extend(negated);
    }
    signs
}

/// UODM components whose `2^{L−α}`-th power is `ĉ_α†`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootComponentVector {
    flavor: Flavor,
    x: Vec<ExactReal>,
}

impl RootComponentVector {
    pub fn new(flavor: Flavor, x: Vec<ExactReal>) -> Result<Self> {
        UodmVector::new(flavor.flavors(), x.clone())?;
        Ok(Self { flavor, x })
    }

    pub fn from_integers(flavor: Flavor, x: &[i64]) -> Result<Self> {
        Self::new(flavor, x.iter().map(|&v| ExactReal::from_integer(v)).collect())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn components(&self) -> &[ExactReal] {
        &self.x
    }

    /// `2^{L−α}`.
    pub fn power(&self) -> u32 {
        1 << (self.flavor.flavors() - self.flavor.alpha())
    }

    pub fn uodm(&self) -> UodmVector {
        UodmVector::new(self.flavor.flavors(), self.x.clone()).expect("length checked on construction")
    }
}

/// Canonical root: `2^{α−1}` blocks of length `2^{L−α+1} − 1` split by single
/// zeros; block `k` is all ones except its middle entry, which carries the
/// `k`-th sign of [`lambda_signs`].
pub fn root_component_vector(f: Flavor) -> Result<RootComponentVector> {
    let period = 1usize << (f.flavors() - f.alpha());
    let mut x = Vec::with_capacity((1 << f.flavors()) - 1);
    for (k, &sign) in lambda_signs(f.alpha() - 1).iter().enumerate() {
        if k > 0 {
            x.push(ExactReal::zero());
        }
        for i in 1..2 * period {
            let v = if i == period { sign as i64 } else { 1 };
            x.push(ExactReal::from_integer(v));
        }
    }
    let root = RootComponentVector::new(f, x)?;
    if !validate_root(&root)? {
        return Err(Error::RootValidationFailure {
            flavors: f.flavors(),
            alpha: f.alpha(),
        });
    }
    Ok(root)
}

/// `build_uodm(x)^{2^{L−α}} == ĉ_α†`.
pub fn validate_root(x: &RootComponentVector) -> Result<bool> {
    let power = build_uodm(&x.uodm()).pow(x.power())?;
    Ok(power == fermion_creator(x.flavor))
}

/// `ĉ_α† = (Σ_k x̃_k S₊S_z^{k−1})^{2^{L−α}}` with `x̃ = V_S⁻¹·x`.
pub fn fermion_creator_spin_expansion(x: &RootComponentVector) -> Result<OperatorExpansion> {
    let f = x.flavor;
    if !validate_root(x)? {
        return Err(Error::RootValidationFailure {
            flavors: f.flavors(),
            alpha: f.alpha(),
        });
    }
    let rep = SpinRep::for_flavors(f.flavors())?;
    let column = Matrix::column(x.x.iter().cloned().map(ExactComplex::real).collect());
    let coeffs = v_s_inverse(rep)?.matmul(&column)?;
    let basis = spin_basis(rep)?;
    let terms = basis
        .iter()
        .enumerate()
        .map(|(k, e)| (coeffs.get(k, 0).re.clone(), BasisElement::Spin(e.clone())))
        .collect();
    Ok(OperatorExpansion::spin(rep, terms, x.power()))
}

/// `e_k(values)`; `e_0 = 1`.
pub fn elementary_symmetric(values: &[ExactReal], k: usize) -> Result<ExactReal> {
    if k > values.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: values.len(),
        });
    }
    Ok(elementary_symmetric_all(values.iter()).swap_remove(k))
}

/// `e_k` of `values` with the entry at 0-based position `skip` removed.
pub fn elementary_symmetric_excluding(values: &[ExactReal], k: usize, skip: usize) -> Result<ExactReal> {
    if skip >= values.len() {
        return Err(Error::IndexOutOfRange {
            index: skip,
            limit: values.len(),
        });
    }
    if k >= values.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: values.len() - 1,
        });
    }
    let rest = values.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v);
    Ok(elementary_symmetric_all(rest).swap_remove(k))
}

/// `[e_0, …, e_n]` by the product `Π (1 + v t)`.
fn elementary_symmetric_all<'a>(values: impl Iterator<Item = &'a ExactReal>) -> Vec<ExactReal> {
    let mut e = vec![ExactReal::one()];
    for v in values {
        e.push(ExactReal::zero());
        for k in (1..e.len()).rev() {
            let add = &e[k - 1] * v;
            e[k] += &add;
        }
    }
    e
}

/// Row `j` is `(v_j^0, v_j^1, …, v_j^{n−1})`.
pub fn vandermonde_matrix(nodes: &[ExactReal]) -> Matrix {
    let n = nodes.len();
    let mut m = Matrix::zeros(n, n);
    for (j, v) in nodes.iter().enumerate() {
        let mut p = ExactReal::one();
        for k in 0..n {
            m.set(j, k, ExactComplex::real(p.clone()));
            p = &p * v;
        }
    }
    m
}

/// `(V⁻¹)_{jk} = (−1)^{j+k} e_{n−j}(nodes without v_k) / Π_{m<n, k∈{m,n}} (v_n − v_m)`.
pub fn vandermonde_inverse(nodes: &[ExactReal]) -> Result<Matrix> {
    let n = nodes.len();
    for a in 0..n {
        for b in a + 1..n {
            if nodes[a] == nodes[b] {
                return Err(Error::RepeatedNodes);
            }
        }
    }
    let mut m = Matrix::zeros(n, n);
    for k in 0..n {
        let others = nodes.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| v);
        let sym = elementary_symmetric_all(others);
        let mut denom = ExactReal::one();
        for (i, v) in nodes.iter().enumerate() {
            if i < k {
                denom = &denom * &(&nodes[k] - v);
            } else if i > k {
                denom = &denom * &(v - &nodes[k]);
            }
        }
        let inv = denom.invert()?;
        for j in 0..n {
            let mut entry = &sym[n - 1 - j] * &inv;
            if (j + k) % 2 == 1 {
                entry = -entry;
            }
            m.set(j, k, ExactComplex::real(entry));
        }
    }
    Ok(m)
}

/// Eigenvalues of `S_z` in matrix order, `s, s−1, …, −s`.
pub fn spin_nodes(rep: SpinRep) -> Vec<ExactReal> {
    rep.sz_values()
}

/// `Σ_β coeffs[β]·S_z^β` at a fixed representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinPolynomial {
    two_s: u32,
    coeffs: Vec<ExactReal>,
}

impl SpinPolynomial {
    pub fn new(rep: SpinRep, coeffs: Vec<ExactReal>) -> Result<Self> {
        if coeffs.len() != rep.dim() {
            return Err(Error::DimensionMismatch(format!(
                "spin polynomial at 2s={} needs {} coefficients, got {}",
                rep.two_s(),
                rep.dim(),
                coeffs.len()
            )));
        }
        Ok(Self {
            two_s: rep.two_s(),
            coeffs,
        })
    }

    pub fn zero(rep: SpinRep) -> Self {
        Self {
            two_s: rep.two_s(),
            coeffs: vec![ExactReal::zero(); rep.dim()],
        }
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn rep(&self) -> SpinRep {
        SpinRep::new(self.two_s).expect("validated on construction")
    }

    pub fn coeffs(&self) -> &[ExactReal] {
        &self.coeffs
    }

    /// `self + factor·other`, coefficientwise.
    pub fn add_scaled(&mut self, factor: &ExactReal, other: &SpinPolynomial) -> Result<()> {
        if self.two_s != other.two_s {
            return Err(Error::DimensionMismatch("spin polynomials at different 2s".into()));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += &factor.checked_mul(b)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        json!({"two_s": self.two_s, "coeffs": coeffs})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("spin polynomial JSON: {what}"));
        let two_s = value
            .get("two_s")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing two_s"))?;
        let rep = SpinRep::new(u32::try_from(two_s).map_err(|_| bad("two_s"))?)?;
        let coeffs = value
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(|c| c.as_str().ok_or_else(|| bad("non-string coefficient"))?.parse())
            .collect::<Result<Vec<ExactReal>>>()?;
        Self::new(rep, coeffs)
    }

    /// Non-zero terms as `c*Sz^k`, one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => "1".to_string(),
                1 => "Sz".to_string(),
                k => format!("Sz^{k}"),
            };
            out.push_str(&format!("{c}  {power}\n"));
        }
        if out.is_empty() {
            out.push_str("0\n");
        }
        out
    }
}

/// `n̂_α` as a polynomial in `S_z` of degree at most `2s`.
pub fn number_op_polynomial(rep: SpinRep, alpha: usize) -> Result<SpinPolynomial> {
    let flavors = rep.flavors()?;
    let occupations = number_operator(Flavor::new(flavors, alpha)?).diagonal_entries();
    let inv = vandermonde_inverse(&spin_nodes(rep))?;
    let coeffs = inv.matmul(&Matrix::column(occupations))?;
    SpinPolynomial::new(rep, (0..rep.dim()).map(|b| coeffs.get(b, 0).re.clone()).collect())
}

pub fn eval_spin_poly(p: &SpinPolynomial, rep: SpinRep) -> Result<Matrix> {
    if p.two_s != rep.two_s() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial at 2s={} evaluated at 2s={}",
            p.two_s,
            rep.two_s()
        )));
    }
    // diagonal evaluation; S_z is diagonal
    let values = spin_nodes(rep)
        .iter()
        .map(|v| {
            let mut acc = ExactReal::zero();
            for c in p.coeffs.iter().rev() {
                acc = &(&acc * v) + c;
            }
            ExactComplex::real(acc)
        })
        .collect();
    Ok(Matrix::diagonal(values))
}
