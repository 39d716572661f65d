//! The `p`-completion functor from groups to fusion systems.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use burnside_core::VirtualBiset;
use fusion_core::FusionSystem;

use crate::error::Result;
use crate::inverse::{restrict_to_sylows, InvertibleFusionBiset};

/// `X^∧_p = X_{F_G}^{F_H} ⊙ (H_{F_H}^{F_H})⁻¹` for a `(G, H)`-biset `X`.
pub fn p_complete(x: &VirtualBiset, g: &Arc<FusionSystem>, h: &Arc<FusionSystem>) -> Result<VirtualBiset> {
    let inv = InvertibleFusionBiset::of_ambient(h)?;
    p_complete_with(x, g, &inv)
}

/// [`p_complete`] with the inverse for the target supplied.
pub fn p_complete_with(x: &VirtualBiset, g: &Arc<FusionSystem>, h: &InvertibleFusionBiset) -> Result<VirtualBiset> {
    Ok(restrict_to_sylows(x, g, &h.fusion)?.odot(&h.inverse))
}

/// Inverses keyed by fusion system, computed once each.
#[derive(Default)]
pub struct Completion {
    inverses: Mutex<HashMap<usize, (Arc<FusionSystem>, Arc<InvertibleFusionBiset>)>>,
}

impl Completion {
    pub fn new() -> Completion {
        Completion::default()
    }

    pub fn inverse(&self, h: &Arc<FusionSystem>) -> Result<Arc<InvertibleFusionBiset>> {
        let k = Arc::as_ptr(h) as usize;
        if let Some((_, v)) = self.inverses.lock().expect("poisoned").get(&k) {
            return Ok(v.clone());
        }
        let v = Arc::new(InvertibleFusionBiset::of_ambient(h)?);
        self.inverses.lock().expect("poisoned").insert(k, (h.clone(), v.clone()));
        Ok(v)
    }

    pub fn complete(&self, x: &VirtualBiset, g: &Arc<FusionSystem>, h: &Arc<FusionSystem>) -> Result<VirtualBiset> {
        p_complete_with(x, g, &*self.inverse(h)?)
    }
}
