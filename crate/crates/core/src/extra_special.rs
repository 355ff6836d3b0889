//! Extra-special groups `H_{2b+1}(Z_p)` and `G_{2b+1}(Z_p)` from their standard presentations.

use thiserror::Error;

use crate::group::{realize, FiniteGroup, GroupError};
use crate::word::{Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// All generators of order `p`.
    H,
    /// `r_b^p = t_b^p = z`.
    G,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtraSpecialError {
    #[error("b must be at least 1")]
    BadGenus,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Generators `r1 t1 … rb tb z` and the relators
/// `r_j^p, t_j^p, z^p, [r_j,z], [t_j,z], [r_j,r_k], [t_j,t_k], [r_j,t_k] z^δ`.
pub fn extra_special_presentation(
    b: usize,
    p: u32,
    variant: Variant,
) -> Result<Presentation, ExtraSpecialError> {
    if b < 1 {
        return Err(ExtraSpecialError::BadGenus);
    }
    if !is_prime(p) {
        return Err(ExtraSpecialError::NotPrime(p));
    }
    let mut names = Vec::new();
    for j in 1..=b {
        names.push(format!("r{j}"));
        names.push(format!("t{j}"));
    }
    names.push("z".into());
    let r = |j: usize| Word::gen(2 * j);
    let t = |j: usize| Word::gen(2 * j + 1);
    let z = Word::gen(2 * b);
    let pe = p as i64;
    let mut rels = Vec::new();
    for j in 0..b {
        if variant == Variant::G && j == b - 1 {
            rels.push(r(j).pow(pe).mul(&z.inverse()));
            rels.push(t(j).pow(pe).mul(&z.inverse()));
        } else {
            rels.push(r(j).pow(pe));
            rels.push(t(j).pow(pe));
        }
    }
    rels.push(z.pow(pe));
    for j in 0..b {
        rels.push(Word::commutator(&r(j), &z));
        rels.push(Word::commutator(&t(j), &z));
    }
    for j in 0..b {
        for k in j + 1..b {
            rels.push(Word::commutator(&r(j), &r(k)));
            rels.push(Word::commutator(&t(j), &t(k)));
        }
    }
    for j in 0..b {
        for k in 0..b {
            let c = Word::commutator(&r(j), &t(k));
            rels.push(if j == k { c.mul(&z) } else { c });
        }
    }
    Ok(Presentation::new(names, rels).expect("well-formed presentation"))
}

/// Realizes the extra-special group of order `p^(2b+1)`.
pub fn extra_special(
    b: usize,
    p: u32,
    variant: Variant,
    max_cosets: usize,
) -> Result<FiniteGroup, ExtraSpecialError> {
    let pres = extra_special_presentation(b, p, variant)?;
    Ok(realize(&pres, max_cosets)?)
}
