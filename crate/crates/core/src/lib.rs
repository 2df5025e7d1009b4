//! Finite groupoid correspondences at desk scale: Haar systems, measure
//! families, the correspondence Hilbert module, the spatial hypergroupoid
//! of compact operators, the properness certificate, and the constructive
//! transfer that realizes the left representation inside the hypergroupoid
//! algebra as exact matrix identities.
//!
//! ```
//! use gcorr_core::algebra::AlgebraElem;
//! use gcorr_core::correspondence::check_proper;
//! use gcorr_core::fixtures;
//! use gcorr_core::hyper::{transfer, KtAlgebra};
//! use gcorr_core::module::left_matrix;
//! use gcorr_core::numeric::mats_close;
//!
//! let corr = fixtures::swap();
//! let cert = check_proper(&corr).expect("full support");
//! let kt = KtAlgebra::new(&corr);
//! let b = AlgebraElem::delta("s");
//! let t = transfer(&kt, &cert, &b).unwrap();
//! assert!(mats_close(&kt.act_matrix(&t), &left_matrix(&corr, &b).unwrap()));
//! ```

pub mod action;
pub mod algebra;
pub mod correspondence;
pub mod fixtures;
pub mod groupoid;
pub mod hyper;
pub mod measure;
pub mod module;
pub mod numeric;
pub mod rat;
pub mod report;
pub mod sampling;

pub use action::{Action, Side};
pub use correspondence::{Bispace, Correspondence};
pub use groupoid::{FiniteGroupoid, HaarSystem};
pub use measure::MeasureFamily;
pub use rat::Rat;
pub use report::Report;
