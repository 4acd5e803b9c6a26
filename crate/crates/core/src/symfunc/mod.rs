//! Symmetric functions in the Schur basis.

mod element;
mod generators;
mod partition;
mod straighten;
mod wedge;

pub use element::{pieri, schur_product, SymElement, SymTermJson};
pub use generators::{
    alternating_he, complete, elementary, elementary_cycle_index, generator, newton_identities_hold, parse_word,
    plethystic_elementary, power_sum, power_sum_hooks, power_sum_product, to_schur, SymGen,
};
pub use partition::{count_partitions, Partition};
pub use straighten::{straighten, straighten_entries, QuasiIndex, Straightened};
pub use wedge::wedge;

use crate::error::Result;

/// Conjugate, box complement and hat of `λ ∈ P(a, b)`.
pub fn box_duals(lambda: &Partition, a: usize, b: usize) -> Result<(Partition, Partition, Partition)> {
    let complement = lambda.complement(a, b)?;
    let hat = complement.conjugate();
    Ok((lambda.conjugate(), complement, hat))
}
