//! Autonomous differential systems in one unknown.

use crate::arith::field::Q;
use crate::error::{AodeError, Result};
use crate::poly::MultiPoly;

/// Equations `F(u₀, …, u_m) = 0` where `u_i` stands for `y^(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffSystem {
    pub order: usize,
    pub equations: Vec<MultiPoly<Q>>,
}

impl DiffSystem {
    pub fn new(equations: Vec<MultiPoly<Q>>) -> Result<Self> {
        if equations.is_empty() {
            return Err(AodeError::NotDifferential("no equations".into()));
        }
        if equations.iter().any(|e| e.is_zero()) {
            return Err(AodeError::NotDifferential("equation is identically zero".into()));
        }
        let order = equations.iter().filter_map(|e| e.max_var()).max().unwrap_or(0);
        if order == 0 {
            return Err(AodeError::NotDifferential("no derivative of y occurs".into()));
        }
        Ok(DiffSystem { order, equations })
    }

    /// Number of variables `u₀ … u_m`.
    pub fn ambient_vars(&self) -> usize {
        self.order + 1
    }
}
