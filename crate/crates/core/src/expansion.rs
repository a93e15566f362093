//! Linear combinations of basis operators with exact coefficients.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fermion_to_spin::SpinBasisIndex;
use crate::matrix::Matrix;
use crate::operators::SpinRep;
use crate::scalar::{ExactComplex, ExactReal};
use crate::uodm::FermionWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Fermionic,
    Spin,
}

impl BasisKind {
    pub fn name(&self) -> &'static str {
        match self {
            BasisKind::Fermionic => "fermionic",
            BasisKind::Spin => "spin",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisElement {
    Fermion(FermionWord),
    Spin(SpinBasisIndex),
}

impl BasisElement {
    pub fn matrix(&self) -> &Matrix {
        match self {
            BasisElement::Fermion(w) => w.matrix(),
            BasisElement::Spin(s) => s.matrix(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BasisElement::Fermion(w) => w.to_string(),
            BasisElement::Spin(s) => s.to_string(),
        }
    }
}

/// `(Σ coeff · element)^outer_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorExpansion {
    kind: BasisKind,
    /// `L` for fermionic expansions, `2s` for spin expansions.
    size: u32,
    terms: Vec<(ExactReal, BasisElement)>,
    outer_power: u32,
}

impl OperatorExpansion {
    pub fn fermionic(flavors: usize, terms: Vec<(ExactReal, BasisElement)>) -> Self {
        Self {
            kind: BasisKind::Fermionic,
            size: flavors as u32,
            terms,
            outer_power: 1,
        }
    }

    pub fn spin(rep: SpinRep, terms: Vec<(ExactReal, BasisElement)>, outer_power: u32) -> Self {
        Self {
            kind: BasisKind::Spin,
            size: rep.two_s(),
            terms,
            outer_power: outer_power.max(1),
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    /// `L` (fermionic) or `2s` (spin).
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn terms(&self) -> &[(ExactReal, BasisElement)] {
        &self.terms
    }

    pub fn outer_power(&self) -> u32 {
        self.outer_power
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            BasisKind::Fermionic => 1 << self.size,
            BasisKind::Spin => self.size as usize + 1,
        }
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = &(ExactReal, BasisElement)> {
        self.terms.iter().filter(|(c, _)| !c.is_zero())
    }

    /// Sum of coefficients on elements printed as `label`.
    pub fn coefficient(&self, label: &str) -> ExactReal {
        self.terms
            .iter()
            .filter(|(_, e)| e.label() == label)
            .map(|(c, _)| c.clone())
            .sum()
    }

    pub fn reconstruct(&self) -> Result<Matrix> {
        let n = self.dim();
        let mut total = Matrix::zeros(n, n);
        for (c, e) in self.nonzero_terms() {
            let m = e.matrix();
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "element `{}` is {}x{}, expansion is {n}x{n}",
                    e.label(),
                    m.rows(),
                    m.cols()
                )));
            }
            total.add_scaled(&ExactComplex::real(c.clone()), m)?;
        }
        if self.outer_power == 1 {
            Ok(total)
        } else {
            total.pow(self.outer_power)
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .nonzero_terms()
            .map(|(c, e)| json!({"coeff": c.to_string(), "word": e.label()}))
            .collect();
        match self.kind {
            BasisKind::Fermionic => {
                let mut v = json!({"L": self.size, "basis": "fermionic", "terms": terms});
                if self.outer_power != 1 {
                    v["outer_power"] = json!(self.outer_power);
                }
                v
            }
            BasisKind::Spin => json!({
                "two_s": self.size,
                "basis": "spin",
                "outer_power": self.outer_power,
                "terms": terms,
            }),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("expansion JSON: {what}"));
        let basis = value
            .get("basis")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing basis"))?;
        let outer_power = match value.get("outer_power") {
            None => 1,
            Some(p) => p
                .as_u64()
                .and_then(|p| u32::try_from(p).ok())
                .ok_or_else(|| bad("outer_power"))?,
        };
        let raw_terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut pairs = Vec::with_capacity(raw_terms.len());
        for t in raw_terms {
            let coeff: ExactReal = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without coeff"))?
                .parse()?;
            let word = t
                .get("word")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without word"))?;
            pairs.push((coeff, word.to_owned()));
        }
        match basis {
            "fermionic" => {
                let flavors = value.get("L").and_then(Value::as_u64).ok_or_else(|| bad("missing L"))? as usize;
                let terms = pairs
                    .into_iter()
                    .map(|(c, w)| Ok((c, BasisElement::Fermion(FermionWord::parse(&w, flavors)?))))
                    .collect::<Result<_>>()?;
                let mut e = Self::fermionic(flavors, terms);
                e.outer_power = outer_power.max(1);
                Ok(e)
            }
            "spin" => {
                let two_s = value
                    .get("two_s")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("missing two_s"))?;
                let rep = SpinRep::new(u32::try_from(two_s).map_err(|_| bad("two_s"))?)?;
                let terms = pairs
                    .into_iter()
                    .map(|(c, w)| Ok((c, BasisElement::Spin(SpinBasisIndex::parse(&w, rep)?))))
                    .collect::<Result<_>>()?;
                Ok(Self::spin(rep, terms, outer_power))
            }
            other => Err(bad(&format!("unknown basis `{other}`"))),
        }
    }

    /// One `coeff  word` line per non-zero term.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, e) in self.nonzero_terms() {
            out.push_str(&format!("{c}  {}\n", e.label()));
        }
        if out.is_empty() {
            out.push_str("0\n");
        }
        if self.outer_power != 1 {
            out.push_str(&format!("^{}\n", self.outer_power));
        }
        out
    }
}
