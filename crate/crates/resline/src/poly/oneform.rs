//! Polynomial one-forms and potential reconstruction for exact forms.

use num::Zero;
use std::collections::BTreeMap;

use super::multipoly::MultiPoly;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A one-form sum c_i dx_i over distinct variable indices.
#[derive(Clone, Debug)]
pub struct PolyOneForm<C: ExactScalar> {
    components: Vec<(usize, MultiPoly<C>)>,
}

impl<C: ExactScalar> PolyOneForm<C> {
    pub fn new(components: Vec<(usize, MultiPoly<C>)>) -> Self {
        let mut seen = std::collections::HashSet::new();
        for (v, _) in &components {
            assert!(seen.insert(*v), "duplicate variable index {v} in one-form");
        }
        PolyOneForm { components }
    }

    pub fn components(&self) -> &[(usize, MultiPoly<C>)] {
        &self.components
    }

    /// Closedness over the listed variables: d c_i / d x_j = d c_j / d x_i.
    /// Unlisted variables are treated as constants.
    pub fn check_closed(&self) -> Result<()> {
        for (a, (vi, ci)) in self.components.iter().enumerate() {
            for (vj, cj) in self.components.iter().skip(a + 1) {
                if ci.derivative(*vj)? != cj.derivative(*vi)? {
                    return Err(Error::NotClosed { i: *vi, j: *vj });
                }
            }
        }
        Ok(())
    }

    /// Potential P with dP equal to this form over the listed variables
    /// and no monomial free of all of them (integration constant zero).
    /// Computed by iterated antidifferentiation: integrate the first
    /// component, subtract its differential, recurse.
    pub fn potential(&self) -> Result<MultiPoly<C>> {
        self.check_closed()?;
        let mut remaining: BTreeMap<usize, MultiPoly<C>> = self
            .components
            .iter()
            .map(|(v, c)| (*v, c.clone()))
            .collect();
        let vars: Vec<usize> = remaining.keys().copied().collect();
        let mut total: Option<MultiPoly<C>> = None;

        for &v in &vars {
            let cv = remaining[&v].clone();
            if cv.is_zero() {
                continue;
            }
            let piece = cv.integrate(v)?;
            for &w in &vars {
                let dw = piece.derivative(w)?;
                let entry = remaining.get_mut(&w).unwrap();
                *entry = entry.sub_ref(&dw);
            }
            assert!(
                remaining[&v].is_zero(),
                "antidifferentiation must clear its own component"
            );
            total = Some(match total {
                None => piece,
                Some(t) => t.add_ref(&piece),
            });
        }

        for (v, c) in &remaining {
            if !c.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "residual component d{}{} after integration",
                    c.alphabet().letter(),
                    v
                )));
            }
        }
        Ok(total.unwrap_or_else(MultiPoly::zero))
    }
}
