//! `{ "left": group-ref, "right": group-ref, "terms": [{ "stab", "phi", "coeff" }] }`

use group_core::io::{group_ref, parse_group_ref};
use group_core::{canonical_generators, Hom, Subgroup};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::biset::VirtualBiset;
use crate::error::BisetError;
use crate::scalar::{format_scalar, parse_scalar};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub stab: Vec<u32>,
    pub phi: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BisetJson {
    pub left: Value,
    pub right: Value,
    pub terms: Vec<TermJson>,
}

impl VirtualBiset {
    pub fn to_json(&self) -> BisetJson {
        BisetJson {
            left: group_ref(self.left()),
            right: group_ref(self.right()),
            terms: self
                .terms()
                .iter()
                .map(|(k, c)| TermJson { stab: k.stab.clone(), phi: k.phi.clone(), coeff: format_scalar(c) })
                .collect(),
        }
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self.to_json()).expect("serializable")
    }

    /// Reads a biset. Terms need not be canonical or distinct; `phi` lists
    /// the images of the canonical generators of `stab`.
    pub fn from_json(j: &BisetJson) -> Result<VirtualBiset, BisetError> {
        let left = parse_group_ref(&j.left)?;
        let right = parse_group_ref(&j.right)?;
        let mut out = VirtualBiset::zero(&left, &right);
        for (i, t) in j.terms.iter().enumerate() {
            let err = |m: &str| BisetError::Parse(format!("term {i}: {m}"));
            if t.stab.iter().any(|&x| x as usize >= left.order()) || t.phi.iter().any(|&x| x as usize >= right.order())
            {
                return Err(err("element index out of range"));
            }
            let mut members = t.stab.clone();
            members.sort_unstable();
            members.dedup();
            if !Subgroup::is_closed(&left, &members) {
                return Err(err("stab is not a subgroup"));
            }
            let p = Subgroup::from_members(left.order(), members);
            let gens = canonical_generators(&left, p.members());
            if gens.len() != t.phi.len() {
                return Err(err(&format!("phi needs {} images, found {}", gens.len(), t.phi.len())));
            }
            let h = Hom::from_gens(&left, &right, &p, &gens, &t.phi).ok_or_else(|| err("phi is not a homomorphism"))?;
            let c = parse_scalar(&t.coeff).map_err(|_| err(&format!("bad coefficient {:?}", t.coeff)))?;
            out.add_pair(p.members(), |x| h.apply(x), c);
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<VirtualBiset, BisetError> {
        let j: BisetJson = serde_json::from_str(s)?;
        VirtualBiset::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}
