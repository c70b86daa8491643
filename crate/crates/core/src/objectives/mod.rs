//! Concrete objectives: k-cover, k-dominating set and k-medoid.

mod kcover;
mod kdom;
mod kmedoid;

pub use kcover::{kcover_value, KCover, SetFamily};
pub use kdom::{kdom_value, Graph, KDom, Neighborhood};
pub use kmedoid::{kmedoid_loss, kmedoid_value, sample_extras, KMedoid, PointSet};

use crate::error::Result;
use crate::oracle::SubmodularOracle;

/// How an oracle is instantiated at a node of the accumulation tree.
///
/// Coverage objectives only need the element data they are asked about and
/// are used unchanged everywhere. Objectives whose value depends on the whole
/// dataset (k-medoid) are rebuilt over the data a node actually holds.
pub trait Localize: SubmodularOracle + Clone {
    fn uses_local_data(&self) -> bool {
        false
    }

    /// Oracle whose value is computed over `subset ∪ extra` only.
    fn localize(&self, _subset: &[usize], _extra: &[usize]) -> Result<Self> {
        Ok(self.clone())
    }
}

impl Localize for KCover {}
impl Localize for KDom {}
