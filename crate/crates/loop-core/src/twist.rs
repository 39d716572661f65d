//! The torus `(Z/p^e)^n` of the twisted loop functor.

use std::sync::Arc;

use group_core::{cyclic_pe, direct_product, power, power_coords, power_index, Elem, Group, GroupError};

use crate::error::{LoopError, Result};

#[derive(Clone, Debug)]
pub struct Twist {
    pub p: u64,
    pub e: u32,
    pub n: usize,
    pub torus: Arc<Group>,
}

impl Twist {
    pub fn new(p: u64, e: u32, n: usize) -> Result<Twist> {
        let q = p.checked_pow(e).ok_or_else(|| LoopError::Input(format!("{p}^{e} overflows")))?;
        let bound = 1 << 16;
        match q.checked_pow(n as u32) {
            Some(m) if m <= bound => {}
            m => {
                return Err(LoopError::Group(GroupError::BoundExceeded {
                    name: format!("(Z/{q})^{n}"),
                    order: m.map_or(usize::MAX, |m| m as usize),
                    bound: bound as usize,
                }))
            }
        }
        let torus = power(&cyclic_pe(p, e), n)?;
        Ok(Twist { p, e, n, torus })
    }

    /// Least `e` with `p^e ≥ order`.
    pub fn minimal_e(p: u64, order: usize) -> u32 {
        let mut e = 0;
        while p.pow(e) < order as u64 {
            e += 1;
        }
        e
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn coords(&self, t: Elem) -> Vec<Elem> {
        power_coords(self.modulus() as usize, self.n, t)
    }

    pub fn index(&self, coords: &[Elem]) -> Elem {
        power_index(self.modulus() as usize, coords)
    }

    pub fn is_trivial(&self) -> bool {
        self.torus.order() == 1
    }

    /// `(Z/p^e)^n × C`, or `C` itself when the torus is trivial.
    pub fn over(&self, c: &Arc<Group>) -> Result<Arc<Group>> {
        if self.is_trivial() {
            return Ok(c.clone());
        }
        Ok(direct_product(&self.torus, c)?)
    }

    /// Every entry's order must divide `p^e` for the evaluation map to be
    /// defined on `Z/p^e`.
    pub fn check_tuple(&self, g: &Group, a: &[Elem]) -> Result<()> {
        let q = self.modulus();
        match a.iter().find(|&&x| q % g.elem_order(x) as u64 != 0) {
            Some(&x) => Err(LoopError::Input(format!(
                "element {x} of {} has order {} not dividing {q}; raise e",
                g.name(),
                g.elem_order(x)
            ))),
            None => Ok(()),
        }
    }
}
