//! Class rebalancing for long-tailed classification, carried out directly on
//! normalized encoder embeddings.
//!
//! Each class is modelled by a kernel density estimate on the unit
//! hypersphere whose kernels are von Mises-Fisher distributions centred on
//! the observed embeddings, each with a concentration estimated from its
//! nearest same-class neighbour. Minority classes are topped up with draws
//! from their estimate until every class has as many samples as the largest
//! one, and a multinomial logistic-regression head is fitted on the result.
//!
//! Module map:
//! * [`directional`]: vMF density, log-domain Bessel function, concentration
//!   estimates and exact sampling.
//! * [`kde`]: per-class vMF kernel density estimators.
//! * [`balance`]: vMF-KDE synthesis plus the oversampling baselines.
//! * [`classifier`]: L-BFGS logistic regression and evaluation reports.
//! * [`dataset`]: the `VMFE` embedding file format and long-tail subsets.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod balance;
pub mod classifier;
pub mod dataset;
pub mod directional;
mod error;
pub mod kde;
pub mod rng;

pub use error::{Error, Result};
pub use rng::RngHandle;
