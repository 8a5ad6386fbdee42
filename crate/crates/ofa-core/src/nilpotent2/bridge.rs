//! The odd form parameter of a classical family as a 2-step nilpotent module.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff_ring::{El, Ring};
use crate::error::Result;
use crate::form_ring::{Family, InvAlgebra};
use crate::odd_form_param::{DeltaElem, DeltaShape};
use crate::report::Report;

use super::axioms::{axioms_check, TwoStep};
use super::NIL2_EXHAUSTIVE;

impl TwoStep for DeltaShape {
    type Elem = DeltaElem;

    fn scalars(&self) -> &Ring {
        self.ring()
    }

    fn zero(&self) -> DeltaElem {
        DeltaShape::zero(self)
    }

    fn add(&self, x: &DeltaElem, y: &DeltaElem) -> DeltaElem {
        DeltaShape::add(self, x, y)
    }

    fn neg(&self, x: &DeltaElem) -> DeltaElem {
        DeltaShape::neg(self, x)
    }

    fn act(&self, x: &DeltaElem, k: El) -> DeltaElem {
        self.act_k(x, k)
    }

    /// `phi(rho(u))`.
    fn tau(&self, x: &DeltaElem) -> DeltaElem {
        DeltaShape::tau(self, x)
    }

    fn in_m0(&self, x: &DeltaElem) -> bool {
        self.aug_member(x)
    }

    fn scale0(&self, k: El, x: &DeltaElem) -> DeltaElem {
        self.act_scalar(k, x).expect("element of the augmentation")
    }
}

/// Axioms for `(Delta, D)` of a family; exhaustive when small, otherwise on
/// `samples` random elements together with random augmentation elements.
pub fn bridge_check(family: Family, ring: &Ring, samples: usize, budget: u64, seed: u64) -> Result<Report> {
    let shape = DeltaShape::new(&InvAlgebra::new(family, ring)?);
    let elems = if shape.order() <= NIL2_EXHAUSTIVE as u128 {
        shape.elements(NIL2_EXHAUSTIVE as u128)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<DeltaElem> = (0..samples).map(|_| shape.random(&mut rng)).collect();
        v.extend((0..samples / 2).map(|_| shape.random_d(&mut rng)));
        v
    };
    let mut rep = axioms_check(&shape, &elems, budget, seed);
    rep.title = format!("2-step axioms of the odd form parameter of {} over {:?}", family.name(), ring.spec());
    Ok(rep)
}
