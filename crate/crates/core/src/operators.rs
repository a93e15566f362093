//! Concrete fermion operators on `2^L` dimensions and spin operators on `2s+1`.
//!
//! Tensor factors are ordered with the `σz` string on the left:
//! `ĉ_α = σz^{⊗(α−1)} ⊗ ĉ ⊗ 1₂^{⊗(L−α)}`.

use crate::error::{Error, Result};
use crate::matrix::{anticommutator, commutator, Matrix};
use crate::scalar::{ratio, ExactComplex, ExactReal};

/// Flavor `alpha` (1-based) among `flavors` fermion modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flavor {
    flavors: usize,
    alpha: usize,
}

impl Flavor {
    pub fn new(flavors: usize, alpha: usize) -> Result<Self> {
        if flavors == 0 || alpha == 0 || alpha > flavors {
            return Err(Error::InvalidFlavor { flavors, alpha });
        }
        Ok(Self { flavors, alpha })
    }

    pub fn flavors(&self) -> usize {
        self.flavors
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }
}

/// Spin-`s` representation with `s = two_s / 2`, `two_s` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinRep {
    two_s: u32,
}

impl SpinRep {
    pub fn new(two_s: u32) -> Result<Self> {
        if two_s.is_multiple_of(2) {
            return Err(Error::InvalidSpin(two_s));
        }
        Ok(Self { two_s })
    }

    /// The representation paired with `flavors` fermion modes, `2s + 1 = 2^L`.
    pub fn for_flavors(flavors: usize) -> Result<Self> {
        if flavors == 0 || flavors > 31 {
            return Err(Error::InvalidFlavor { flavors, alpha: 1 });
        }
        Self::new((1u32 << flavors) - 1)
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn dim(&self) -> usize {
        self.two_s as usize + 1
    }

    /// `log₂(2s+1)`, or `IncompatibleRepresentation` if that is not an integer.
    pub fn flavors(&self) -> Result<usize> {
        let dim = self.dim();
        if dim.is_power_of_two() {
            Ok(dim.trailing_zeros() as usize)
        } else {
            Err(Error::IncompatibleRepresentation { dim: dim as u64 })
        }
    }

    /// Diagonal of `S_z`: `s, s−1, …, −s`.
    pub fn sz_values(&self) -> Vec<ExactReal> {
        (0..self.dim())
            .map(|j| ExactReal::from_rational(ratio(self.two_s as i64 - 2 * j as i64, 2)))
            .collect()
    }
}

pub fn sigma_z() -> Matrix {
    Matrix::from_integers(&[&[1, 0], &[0, -1]])
}

/// `ĉ = [[0, 0], [1, 0]]`.
pub fn primitive_c() -> Matrix {
    Matrix::from_integers(&[&[0, 0], &[1, 0]])
}

/// `ĉ† = [[0, 1], [0, 0]]`.
pub fn primitive_c_dag() -> Matrix {
    Matrix::from_integers(&[&[0, 1], &[0, 0]])
}

/// `P↑ = ĉ†ĉ`.
pub fn projector_up() -> Matrix {
    Matrix::from_integers(&[&[1, 0], &[0, 0]])
}

/// `P↓ = ĉĉ†`.
pub fn projector_down() -> Matrix {
    Matrix::from_integers(&[&[0, 0], &[0, 1]])
}

fn kron_chain<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
    factors.into_iter().fold(Matrix::identity(1), |acc, m| acc.kron(m))
}

fn jordan_wigner(f: Flavor, middle: &Matrix) -> Matrix {
    let sz = sigma_z();
    let id = Matrix::identity(2);
    let factors = std::iter::repeat_n(&sz, f.alpha - 1)
        .chain(std::iter::once(middle))
        .chain(std::iter::repeat_n(&id, f.flavors - f.alpha));
    kron_chain(factors)
}

/// `ĉ_α†` on `2^L` dimensions.
pub fn fermion_creator(f: Flavor) -> Matrix {
    jordan_wigner(f, &primitive_c_dag())
}

/// `ĉ_α` on `2^L` dimensions.
pub fn fermion_annihilator(f: Flavor) -> Matrix {
    jordan_wigner(f, &primitive_c())
}

/// `n̂_α = ĉ_α†ĉ_α`.
pub fn number_operator(f: Flavor) -> Matrix {
    fermion_creator(f)
        .matmul(&fermion_annihilator(f))
        .expect("square operators of equal size")
}

/// `S₊` with `(S₊)_{j,j+1} = √(j(2s+1−j))`, 1-based `j`.
pub fn spin_plus(rep: SpinRep) -> Matrix {
    let n = rep.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 1..n {
        let value = ExactReal::sqrt((j * (n - j)) as u64);
        m.set(j - 1, j, ExactComplex::real(value));
    }
    m
}

pub fn spin_minus(rep: SpinRep) -> Matrix {
    spin_plus(rep).dagger()
}

pub fn spin_z(rep: SpinRep) -> Matrix {
    Matrix::diagonal(rep.sz_values().into_iter().map(ExactComplex::real).collect())
}

/// `S_x = (S₊ + S₋)/2`.
pub fn spin_x(rep: SpinRep) -> Matrix {
    let sum = spin_plus(rep).add(&spin_minus(rep)).expect("same size");
    sum.scale_rational(&ratio(1, 2))
}

/// `S_y = (S₊ − S₋)/(2i)`.
pub fn spin_y(rep: SpinRep) -> Matrix {
    let diff = spin_plus(rep).sub(&spin_minus(rep)).expect("same size");
    // 1/(2i) = −i/2
    diff.scale(&ExactComplex::new(ExactReal::zero(), ExactReal::from_ratio(-1, 2)))
}

/// Outcome of an algebra check; `failure` names the first violated relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub passed: bool,
    pub failure: Option<String>,
}

impl AlgebraReport {
    fn pass() -> Self {
        Self {
            passed: true,
            failure: None,
        }
    }

    fn fail(what: String) -> Self {
        Self {
            passed: false,
            failure: Some(what),
        }
    }
}

/// Checks `{ĉ_α, ĉ_β†} = δ_{αβ}·1` and `{ĉ_α, ĉ_β} = 0` for the given annihilators.
pub fn verify_car_for(annihilators: &[Matrix]) -> Result<AlgebraReport> {
    let Some(first) = annihilators.first() else {
        return Ok(AlgebraReport::pass());
    };
    let identity = Matrix::identity(first.rows());
    let zero = Matrix::zeros(first.rows(), first.cols());
    for (a, ca) in annihilators.iter().enumerate() {
        for (b, cb) in annihilators.iter().enumerate() {
            let mixed = anticommutator(ca, &cb.dagger())?;
            let expect = if a == b { &identity } else { &zero };
            if &mixed != expect {
                return Ok(AlgebraReport::fail(format!("{{c{}, c{}+}}", a + 1, b + 1)));
            }
            if !anticommutator(ca, cb)?.is_zero() {
                return Ok(AlgebraReport::fail(format!("{{c{}, c{}}}", a + 1, b + 1)));
            }
        }
    }
    Ok(AlgebraReport::pass())
}

/// CAR check for the constructed operators at `flavors` modes.
pub fn verify_car(flavors: usize) -> Result<AlgebraReport> {
    let ops: Vec<Matrix> = (1..=flavors)
        .map(|alpha| Flavor::new(flavors, alpha).map(fermion_annihilator))
        .collect::<Result<_>>()?;
    verify_car_for(&ops)
}

/// Checks `[S_z, S±] = ±S±`, `[S₊, S₋] = 2S_z` and `S₊† = S₋` for given matrices.
pub fn verify_su2_for(plus: &Matrix, minus: &Matrix, z: &Matrix) -> Result<AlgebraReport> {
    if &commutator(z, plus)? != plus {
        return Ok(AlgebraReport::fail("[Sz, S+] = S+".into()));
    }
    if commutator(z, minus)? != minus.neg() {
        return Ok(AlgebraReport::fail("[Sz, S-] = -S-".into()));
    }
    if commutator(plus, minus)? != z.scale(&ExactComplex::from_integer(2)) {
        return Ok(AlgebraReport::fail("[S+, S-] = 2Sz".into()));
    }
    if &plus.dagger() != minus {
        return Ok(AlgebraReport::fail("S+^dagger = S-".into()));
    }
    Ok(AlgebraReport::pass())
}

pub fn verify_su2(rep: SpinRep) -> Result<AlgebraReport> {
    verify_su2_for(&spin_plus(rep), &spin_minus(rep), &spin_z(rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flavor(l: usize, a: usize) -> Flavor {
        Flavor::new(l, a).unwrap()
    }

    fn rep(two_s: u32) -> SpinRep {
        SpinRep::new(two_s).unwrap()
    }

    fn ints(m: &Matrix) -> Vec<i64> {
        m.entries()
            .iter()
            .map(|z| {
                let q = z.re.as_rational().unwrap();
                i64::try_from(q.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn primitives() {
        assert_eq!(
            projector_up(),
            Matrix::diagonal(vec![ExactComplex::one(), ExactComplex::zero()])
        );
        assert_eq!(projector_up().add(&projector_down()).unwrap(), Matrix::identity(2));
        assert_eq!(primitive_c_dag(), Matrix::from_integers(&[&[0, 1], &[0, 0]]));
        assert_eq!(primitive_c_dag().matmul(&primitive_c()).unwrap(), projector_up());
        assert_eq!(primitive_c().matmul(&primitive_c_dag()).unwrap(), projector_down());
    }

    #[test]
    fn creators() {
        assert_eq!(fermion_creator(flavor(1, 1)), primitive_c_dag());
        let c2 = fermion_creator(flavor(2, 2));
        assert_eq!(ints(&c2), vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0]);
        let c1 = fermion_creator(flavor(2, 1));
        assert_eq!(ints(&c1), vec![0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            fermion_annihilator(flavor(3, 2)),
            fermion_creator(flavor(3, 2)).dagger()
        );
    }

    #[test]
    fn number_operators() {
        let diag = |m: Matrix| ints(&Matrix::diagonal(m.diagonal_entries()));
        assert_eq!(
            diag(number_operator(flavor(2, 1))),
            ints(&Matrix::from_integers(&[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 0, 0],
                &[0, 0, 0, 0]
            ]))
        );
        let n2 = number_operator(flavor(2, 2));
        assert_eq!(
            n2.diagonal_entries(),
            [1, 0, 1, 0].map(ExactComplex::from_integer).to_vec()
        );
        assert_eq!(n2.pow(2).unwrap(), n2);
    }

    #[test]
    fn invalid_indices() {
        assert!(Flavor::new(2, 0).is_err());
        assert!(Flavor::new(2, 3).is_err());
        assert!(SpinRep::new(2).is_err());
        assert_eq!(rep(5).flavors(), Err(Error::IncompatibleRepresentation { dim: 6 }));
        assert_eq!(rep(7).flavors(), Ok(3));
    }

    #[test]
    fn spin_operators() {
        let sp = spin_plus(rep(3));
        let offdiag: Vec<ExactReal> = (0..3).map(|j| sp.get(j, j + 1).re.clone()).collect();
        assert_eq!(
            offdiag,
            vec![ExactReal::sqrt(3), ExactReal::from_integer(2), ExactReal::sqrt(3)]
        );
        assert_eq!(spin_plus(rep(1)), primitive_c_dag());
        let sz: Vec<String> = spin_z(rep(3))
            .diagonal_entries()
            .iter()
            .map(|z| z.re.to_string())
            .collect();
        assert_eq!(sz, ["3/2", "1/2", "-1/2", "-3/2"]);
        // S± = Sx ± iSy
        let i = ExactComplex::i();
        let rebuilt = spin_x(rep(3)).add(&spin_y(rep(3)).scale(&i)).unwrap();
        assert_eq!(rebuilt, sp);
    }

    #[test]
    fn car_checks() {
        assert!(verify_car(1).unwrap().passed);
        assert!(verify_car(4).unwrap().passed);
        // drop the σz string on the second flavor: the flavors now commute
        let broken = vec![
            fermion_annihilator(flavor(2, 1)),
            Matrix::identity(2).kron(&primitive_c()),
        ];
        let report = verify_car_for(&broken).unwrap();
        assert!(!report.passed);
        assert_eq!(report.failure.as_deref(), Some("{c1, c2+}"));
    }

    #[test]
    fn su2_checks() {
        assert!(verify_su2(rep(3)).unwrap().passed);
        assert!(verify_su2(rep(1)).unwrap().passed);
        let r = rep(3);
        let doubled = spin_plus(r).scale(&ExactComplex::from_integer(2));
        let report = verify_su2_for(&doubled, &doubled.dagger(), &spin_z(r)).unwrap();
        assert_eq!(report.failure.as_deref(), Some("[S+, S-] = 2Sz"));
    }
}
