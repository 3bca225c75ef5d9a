use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebras::EtaleSpec;
use crate::coeffs::CoeffRing;
use crate::error::{Error, Result};
use crate::hopf::direct_tensor_degrees;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NmamOptions {
    /// Allow a finite coefficient field over a finite base field.
    pub relax_characteristic: bool,
}

/// `Hom(U(l), U(l')[n])` with `R` coefficients, i.e. `K_n(l ⊗ l') ⊗ R`, for
/// `n ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NmamHom {
    pub n: u32,
    pub ring: CoeffRing,
    /// Degrees of the factor fields of `l ⊗ l'` over the base.
    pub factor_degrees: Vec<usize>,
    /// `K_n` of each factor when it is finite cyclic (`q^d − 1` for `n = 1`
    /// over `F_q`).
    pub cyclic_orders: Vec<u64>,
    /// Rank over `R` of the free part after `⊗R`; `None` when symbolic.
    pub rank: Option<usize>,
    /// Cyclic orders surviving `⊗ℤ`.
    pub torsion: Vec<u64>,
    /// Set when the group is not finitely generated and is only named.
    pub symbolic: Option<String>,
}

pub fn nmam_hom(l: &EtaleSpec, lp: &EtaleSpec, n: u32, ring: CoeffRing, opts: NmamOptions) -> Result<NmamHom> {
    if n >= 2 {
        return Err(Error::Unsupported(format!(
            "K_{n} of a product of fields is not computed; only n = 0 and n = 1"
        )));
    }
    let base = l.base();
    if n == 1 && base.characteristic() != 0 && ring.characteristic() != 0 && !opts.relax_characteristic {
        return Err(Error::Characteristic(format!(
            "K₁ over {base} with {ring} coefficients; pass the relaxed guard to tabulate it"
        )));
    }
    let degrees = direct_tensor_degrees(l, lp)?;
    let mut out = NmamHom {
        n,
        ring,
        factor_degrees: degrees.clone(),
        cyclic_orders: Vec::new(),
        rank: Some(0),
        torsion: Vec::new(),
        symbolic: None,
    };
    if n == 0 {
        out.rank = Some(degrees.len());
        return Ok(out);
    }
    let q = base.characteristic();
    if q == 0 {
        out.rank = None;
        out.symbolic = Some(match ring {
            CoeffRing::Integers => String::from("⊕ K^× over the factor fields K"),
            r => format!("⊕ K^× ⊗ {} over the factor fields K", r.descriptor()),
        });
        return Ok(out);
    }
    for &d in &degrees {
        let order = q
            .checked_pow(d as u32)
            .map(|x| x - 1)
            .ok_or(Error::Overflow("q^d − 1"))?;
        out.cyclic_orders.push(order);
    }
    match ring {
        CoeffRing::Rationals => {}
        CoeffRing::PrimeField(ell) => {
            out.rank = Some(out.cyclic_orders.iter().filter(|&&o| o % ell == 0).count());
        }
        CoeffRing::Integers => {
            out.torsion = out.cyclic_orders.iter().copied().filter(|&o| o > 1).collect();
        }
    }
    Ok(out)
}
