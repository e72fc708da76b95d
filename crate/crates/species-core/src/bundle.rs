//! A species together with its optional composition operator and weight.

use std::rc::Rc;

use exact_arith::Poly;

use crate::error::SpeciesError;
use crate::object::{LabeledSet, OrderedBipartition, SortedBijection};
use crate::structure::Structure;

pub type EnumerateFn = Rc<dyn Fn(&LabeledSet) -> Vec<Structure>>;
pub type TransportFn = Rc<dyn Fn(&SortedBijection, &Structure) -> Structure>;
pub type EtaFn = Rc<dyn Fn(&OrderedBipartition, &Structure, &Structure) -> Structure>;
pub type WeightFn = Rc<dyn Fn(&LabeledSet, &Structure) -> Poly>;

/// A species `F` (enumerator plus transport), optionally equipped with a
/// composition operator and a weight.
///
/// `enumerate` must be finite and deterministic on every object; `transport`
/// must be functorial; when present, `eta` must land in `enumerate` of the
/// union (the check suite verifies these rather than assuming them). When no
/// weight is installed, the constant weight 1 is used, which vacuously
/// satisfies the weight axioms.
#[derive(Clone)]
pub struct SpeciesBundle {
    name: String,
    arity: usize,
    enumerate: EnumerateFn,
    transport: TransportFn,
    eta: Option<EtaFn>,
    weight: Option<WeightFn>,
}

impl SpeciesBundle {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        enumerate: EnumerateFn,
        transport: TransportFn,
    ) -> Self {
        SpeciesBundle {
            name: name.into(),
            arity,
            enumerate,
            transport,
            eta: None,
            weight: None,
        }
    }

    pub fn with_eta(mut self, eta: EtaFn) -> Self {
        self.eta = Some(eta);
        self
    }

    pub fn with_weight(mut self, weight: WeightFn) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// All structures on `omega`, in canonical order.
    pub fn enumerate(&self, omega: &LabeledSet) -> Vec<Structure> {
        let mut xs = (self.enumerate)(omega);
        xs.sort();
        xs
    }

    pub fn transport(&self, f: &SortedBijection, x: &Structure) -> Structure {
        (self.transport)(f, x)
    }

    pub fn has_eta(&self) -> bool {
        self.eta.is_some()
    }

    pub fn has_weight(&self) -> bool {
        self.weight.is_some()
    }

    pub fn eta_fn(&self) -> Result<&EtaFn, SpeciesError> {
        self.eta
            .as_ref()
            .ok_or_else(|| SpeciesError::MissingOperator(self.name.clone()))
    }

    pub fn eta(
        &self,
        bip: &OrderedBipartition,
        x1: &Structure,
        x2: &Structure,
    ) -> Result<Structure, SpeciesError> {
        Ok((self.eta_fn()?)(bip, x1, x2))
    }

    /// Structure weight; constant 1 when no weight is installed.
    pub fn weight(&self, omega: &LabeledSet, x: &Structure) -> Poly {
        match &self.weight {
            Some(w) => w(omega, x),
            None => Poly::one(),
        }
    }
}

impl std::fmt::Debug for SpeciesBundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpeciesBundle")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("eta", &self.eta.is_some())
            .field("weight", &self.weight.is_some())
            .finish()
    }
}
