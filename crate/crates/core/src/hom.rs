//! Homomorphisms from finitely presented groups onto Cayley-table groups.

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::word::Presentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("expected {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("relator {index} does not map to the identity")]
    RelatorNotTrivial { index: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A homomorphism given by generator images, verified on every relator.
#[derive(Clone, Debug)]
pub struct Homomorphism<'g> {
    source: Presentation,
    target: &'g FiniteGroup,
    images: Vec<usize>,
}

impl<'g> Homomorphism<'g> {
    pub fn new(
        source: Presentation,
        target: &'g FiniteGroup,
        images: Vec<usize>,
    ) -> Result<Self, HomError> {
        if images.len() != source.rank() {
            return Err(HomError::WrongArity {
                expected: source.rank(),
                got: images.len(),
            });
        }
        for (index, r) in source.relators().iter().enumerate() {
            if target.evaluate_word(r, &images)? != 0 {
                return Err(HomError::RelatorNotTrivial { index });
            }
        }
        Ok(Homomorphism {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &'g FiniteGroup {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generates(&self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_presentation;

    #[test]
    fn checks_relators() {
        let p = parse_presentation("gens: x\nrel: x^2").unwrap();
        let z4 = FiniteGroup::cyclic(4);
        assert!(Homomorphism::new(p.clone(), &z4, vec![2]).unwrap().images() == [2]);
        assert_eq!(
            Homomorphism::new(p.clone(), &z4, vec![1]).unwrap_err(),
            HomError::RelatorNotTrivial { index: 0 }
        );
        assert!(!Homomorphism::new(p.clone(), &z4, vec![2]).unwrap().is_surjective());
        assert!(matches!(
            Homomorphism::new(p, &z4, vec![]),
            Err(HomError::WrongArity { .. })
        ));
    }
}
