//! Class group and inner class group.
//!
//! `φ(x)_i = ℓ(q_i) λ(q_i, x)` embeds `M` in `N^(r-1)`. The class group is
//! `Z^(r-1) / φ(G(M))` and the inner class group is `φ(G(M)) / φ(G(F))`
//! where `F` is the free monoid on the rays; the latter is isomorphic to
//! `(Ap(M, Q), ⊕)`.

use serde::Serialize;

use crate::apery::{apery_box, AperyTable};
use crate::error::{Error, Result};
use crate::exact_arith::{gcd, group_from_quotient, solve_left, FiniteAbelianGroup, IntMatrix};
use crate::hilbert::HilbertBasis;
use crate::monoid::EquationSpec;

/// The morphism `φ` for a fixed monoid.
#[derive(Clone, Debug)]
pub struct Phi {
    spec: EquationSpec,
    ells: Vec<u64>,
}

impl Phi {
    pub fn new(table: &AperyTable) -> Result<Self> {
        Ok(Phi {
            spec: table.spec().clone(),
            ells: table.ells()?,
        })
    }

    pub fn ells(&self) -> &[u64] {
        &self.ells
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.spec.require_member(x)?;
        x.iter()
            .zip(self.spec.widths())
            .zip(&self.ells)
            .map(|((&xi, &w), &l)| {
                let num = l as i128 * xi as i128;
                if num % w as i128 != 0 {
                    return Err(Error::Internal(format!("ℓ = {l} does not clear λ = {xi}/{w}")));
                }
                i64::try_from(num / w as i128).map_err(|_| Error::Overflow("phi"))
            })
            .collect()
    }
}

/// `φ(x)` for a single point, computing `ℓ` from the Apéry set.
pub fn phi(spec: &EquationSpec, x: &[i64], guard: u128) -> Result<Vec<i64>> {
    spec.require_member(x)?;
    Phi::new(&apery_box(spec, guard)?)?.apply(x)
}

/// Everything needed for both class groups, computed once.
#[derive(Clone, Debug, Serialize)]
pub struct ClassGroups {
    pub ells: Vec<u64>,
    /// `φ(h)` for each Hilbert basis element (rays first).
    pub phi_images: Vec<Vec<i64>>,
    pub class_group: FiniteAbelianGroup,
    pub inner_class_group: FiniteAbelianGroup,
}

impl ClassGroups {
    pub fn from_apery(table: &AperyTable) -> Result<Self> {
        let dim = table.spec().dim();
        let phi = Phi::new(table)?;
        let basis = HilbertBasis::from_apery(table);
        let phi_images = basis.elements().map(|h| phi.apply(h)).collect::<Result<Vec<_>>>()?;

        let class_group = group_from_quotient(dim, &phi_images)?;

        // Coordinates of ℓ_i e_i in a lattice basis of φ(G(M)).
        let lattice = IntMatrix::from_rows(dim, &phi_images)?.row_lattice_basis()?;
        if lattice.rows() != dim {
            return Err(Error::Internal(format!("φ(G(M)) has rank {} < {dim}", lattice.rows())));
        }
        let mut coords = Vec::with_capacity(dim);
        for (i, &l) in phi.ells().iter().enumerate() {
            let mut target = vec![0; dim];
            target[i] = l as i64;
            let sol = solve_left(&lattice, &target)?;
            let row = sol
                .iter()
                .map(|q| {
                    if q.is_integer() {
                        Ok(q.numer())
                    } else {
                        Err(Error::Internal(format!("ℓ e_{i} has non-integral coordinate {q}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            coords.push(row);
        }
        let inner_class_group = group_from_quotient(dim, &coords)?;

        Ok(ClassGroups {
            ells: phi.ells().to_vec(),
            phi_images,
            class_group,
            inner_class_group,
        })
    }

    pub fn compute(spec: &EquationSpec, guard: u128) -> Result<Self> {
        Self::from_apery(&apery_box(spec, guard)?)
    }

    pub fn product_identity(&self) -> ProductIdentity {
        let lhs = self.ells.iter().map(|&l| l as u128).product();
        let rhs = self.class_group.order() as u128 * self.inner_class_group.order() as u128;
        ProductIdentity {
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

pub fn class_group(spec: &EquationSpec, guard: u128) -> Result<FiniteAbelianGroup> {
    Ok(ClassGroups::compute(spec, guard)?.class_group)
}

pub fn inner_class_group(spec: &EquationSpec, guard: u128) -> Result<FiniteAbelianGroup> {
    Ok(ClassGroups::compute(spec, guard)?.inner_class_group)
}

/// `∏ ℓ(q) = |Cl(M)| · |inCl(M)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductIdentity {
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
}

pub fn verify_product_identity(spec: &EquationSpec, guard: u128) -> Result<ProductIdentity> {
    Ok(ClassGroups::compute(spec, guard)?.product_identity())
}

/// For `ax + by ≡ 0 (mod c)` both class groups are `Z_{c / (gcd(a,c) gcd(b,c))}`.
pub fn two_dim_closed_form(a: i64, b: i64, c: i64) -> Result<FiniteAbelianGroup> {
    if !(1..c).contains(&a) || !(1..c).contains(&b) {
        return Err(Error::BadInput(format!("need a, b in [1, {}], got {a}, {b}", c - 1)));
    }
    if gcd(gcd(a, b), c) != 1 {
        return Err(Error::BadInput(format!("gcd({a}, {b}, {c}) is not 1")));
    }
    Ok(FiniteAbelianGroup::cyclic((c / (gcd(a, c) * gcd(b, c))) as u64))
}
