//! Hamiltonians rewritten across the mapping: diagonal fermionic models as
//! `S_z` polynomials, a spin in a magnetic field as a cubic fermionic operator,
//! and a two-site Ising coupling in number operators.

use crate::error::{Error, Result};
use crate::expansion::{BasisElement, OperatorExpansion};
use crate::fermion_to_spin::{number_op_polynomial, SpinPolynomial};
use crate::matrix::Matrix;
use crate::operators::{spin_x, spin_y, spin_z, SpinRep};
use crate::scalar::{ExactComplex, ExactReal, Rational};
use crate::spin_to_fermion::{spin_plus_fermionic, spin_z_fermionic, spin_z_terms};

/// Magnetic field `(b_x, b_y, b_z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldVector {
    pub bx: Rational,
    pub by: Rational,
    pub bz: Rational,
}

impl FieldVector {
    pub fn new(bx: Rational, by: Rational, bz: Rational) -> Self {
        Self { bx, by, bz }
    }

    pub fn from_integers(bx: i64, by: i64, bz: i64) -> Self {
        let q = |v: i64| Rational::from_integer(v.into());
        Self::new(q(bx), q(by), q(bz))
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.bx.is_zero() && self.by.is_zero() && self.bz.is_zero()
    }
}

/// `H = Σ_α E_α n̂_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalHamiltonian {
    energies: Vec<ExactReal>,
}

impl DiagonalHamiltonian {
    pub fn new(energies: Vec<ExactReal>) -> Result<Self> {
        if energies.is_empty() || energies.len() > 31 {
            return Err(Error::InvalidFlavor {
                flavors: energies.len(),
                alpha: 0,
            });
        }
        Ok(Self { energies })
    }

    pub fn flavors(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[ExactReal] {
        &self.energies
    }
}

/// `Σ_α E_α · p_α(S_z)` with `p_α` the number-operator polynomials.
pub fn diagonal_hamiltonian_spin_poly(h: &DiagonalHamiltonian) -> Result<SpinPolynomial> {
    let rep = SpinRep::for_flavors(h.flavors())?;
    let mut total = SpinPolynomial::zero(rep);
    for (alpha, e) in h.energies.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        total.add_scaled(e, &number_op_polynomial(rep, alpha + 1)?)?;
    }
    Ok(total)
}

/// `½ S₊ z̄ + ½ S₋ z + b_z S_z` with `z = b_x + i b_y`, built from the
/// fermionic expansions of `S₊` and `S_z`.
pub fn precession_hamiltonian_fermionic(b: &FieldVector, rep: SpinRep) -> Result<Matrix> {
    let plus = spin_plus_fermionic(rep)?.reconstruct()?;
    let z = spin_z_fermionic(rep)?.reconstruct()?;
    let half = Rational::new(1.into(), 2.into());
    let zb = ExactComplex::new(
        ExactReal::from_rational(&b.bx * &half),
        ExactReal::from_rational(&b.by * &half),
    );
    let mut h = plus.scale(&zb.conj());
    h.add_scaled(&zb, &plus.dagger())?;
    h.add_scaled(&ExactComplex::real(ExactReal::from_rational(b.bz.clone())), &z)?;
    Ok(h)
}

/// `b_x S_x + b_y S_y + b_z S_z` from the spin matrices directly.
pub fn field_hamiltonian_spin(b: &FieldVector, rep: SpinRep) -> Result<Matrix> {
    let mut h = spin_x(rep).scale_rational(&b.bx);
    h.add_scaled(
        &ExactComplex::real(ExactReal::from_rational(b.by.clone())),
        &spin_y(rep),
    )?;
    h.add_scaled(
        &ExactComplex::real(ExactReal::from_rational(b.bz.clone())),
        &spin_z(rep),
    )?;
    Ok(h)
}

/// `√(b_x² + b_y² + b_z²)`, positive root.
pub fn rotated_field_magnitude(b: &FieldVector) -> Result<ExactReal> {
    if b.is_zero() {
        return Err(Error::ZeroField);
    }
    ExactReal::sqrt_rational(&(&b.bx * &b.bx + &b.by * &b.by + &b.bz * &b.bz))
}

/// Equal characteristic polynomials.
pub fn spectrum_equal(h1: &Matrix, h2: &Matrix) -> Result<bool> {
    if h1.rows() != h2.rows() || !h1.is_square() || !h2.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            h1.rows(),
            h1.cols(),
            h2.rows(),
            h2.cols()
        )));
    }
    Ok(h1.char_poly()? == h2.char_poly()?)
}

/// `S_z` of site `site` (1-based) in a chain of `sites` spins, over number
/// operators of all `sites·L` flavors.
pub fn multi_spin_sz(sites: usize, site: usize, rep: SpinRep) -> Result<OperatorExpansion> {
    let flavors = rep.flavors()?;
    if site == 0 || site > sites {
        return Err(Error::IndexOutOfRange {
            index: site,
            limit: sites,
        });
    }
    let total = sites * flavors;
    Ok(OperatorExpansion::fermionic(
        total,
        spin_z_terms(rep, flavors, (site - 1) * flavors, total)?,
    ))
}

/// `S_z ⊗ S_z` on two sites, distributed into products of number operators.
pub fn ising_zz_number_ops(rep: SpinRep) -> Result<OperatorExpansion> {
    let first = multi_spin_sz(2, 1, rep)?;
    let second = multi_spin_sz(2, 2, rep)?;
    let (a0, a) = first.terms().split_first().expect("identity term");
    let (b0, b) = second.terms().split_first().expect("identity term");
    let mut terms = vec![(&a0.0 * &b0.0, a0.1.clone())];
    for (c, w) in a {
        terms.push((c * &b0.0, w.clone()));
    }
    for (c, w) in b {
        terms.push((&a0.0 * c, w.clone()));
    }
    for (ca, wa) in a {
        for (cb, wb) in b {
            let (BasisElement::Fermion(x), BasisElement::Fermion(y)) = (wa, wb) else {
                unreachable!("number-operator expansions are fermionic")
            };
            terms.push((ca * cb, BasisElement::Fermion(x.product(y)?)));
        }
    }
    Ok(OperatorExpansion::fermionic(first.size() as usize, terms))
}
