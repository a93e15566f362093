//! Spin operators written as polynomials in fermion operators.

use crate::error::Result;
use crate::expansion::{BasisElement, OperatorExpansion};
use crate::matrix::Matrix;
use crate::operators::{spin_plus, SpinRep};
use crate::scalar::{ratio, ExactComplex, ExactReal};
use crate::uodm::{expand_uodm_fermionic, Factor, FermionWord, UodmVector};

/// `S₊` over the fermionic basis at `L = log₂(2s+1)`.
pub fn spin_plus_fermionic(rep: SpinRep) -> Result<OperatorExpansion> {
    rep.flavors()?;
    expand_uodm_fermionic(&UodmVector::from_matrix(&spin_plus(rep))?)
}

/// `S_z = −s·1 + Σ_j 2^{j−1} n̂_{L+1−j}`.
pub fn spin_z_fermionic(rep: SpinRep) -> Result<OperatorExpansion> {
    let flavors = rep.flavors()?;
    Ok(OperatorExpansion::fermionic(
        flavors,
        spin_z_terms(rep, flavors, 0, flavors)?,
    ))
}

/// `S_z` terms for one site whose flavors start after `offset` among `total`.
pub(crate) fn spin_z_terms(
    rep: SpinRep,
    flavors: usize,
    offset: usize,
    total: usize,
) -> Result<Vec<(ExactReal, BasisElement)>> {
    let mut terms = vec![(
        ExactReal::from_rational(ratio(-(rep.two_s() as i64), 2)),
        BasisElement::Fermion(FermionWord::identity(total)),
    )];
    for j in 1..=flavors {
        let weight = ExactReal::from_integer(1i64 << (j - 1));
        let word = FermionWord::new(total, vec![Factor::number(offset + flavors + 1 - j)])?;
        terms.push((weight, BasisElement::Fermion(word)));
    }
    Ok(terms)
}

/// `S₋ = S₊†` from the reconstructed fermionic `S₊`.
pub fn spin_minus_fermionic(rep: SpinRep) -> Result<Matrix> {
    Ok(spin_plus_fermionic(rep)?.reconstruct()?.dagger())
}

/// `S_x = (S₊ + S₋)/2` from the fermionic side.
pub fn spin_x_fermionic(rep: SpinRep) -> Result<Matrix> {
    let plus = spin_plus_fermionic(rep)?.reconstruct()?;
    Ok(plus.add(&plus.dagger())?.scale_rational(&ratio(1, 2)))
}

/// `S_y = (S₊ − S₋)/(2i)` from the fermionic side.
pub fn spin_y_fermionic(rep: SpinRep) -> Result<Matrix> {
    let plus = spin_plus_fermionic(rep)?.reconstruct()?;
    let minus_half_i = ExactComplex::new(ExactReal::zero(), ExactReal::from_ratio(-1, 2));
    Ok(plus.sub(&plus.dagger())?.scale(&minus_half_i))
}
