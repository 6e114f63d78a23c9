//! Brute-force ground truth: exhaustive configuration sums for short chains
//! and combinatorial checks of the gauge tensor algebra.

mod annni;
mod sum;
mod tensor;
mod zn;

pub use annni::{enumerate_annni_chain, AnnniEnumeration};
pub use sum::KahanSum;
pub use tensor::{tensor_check, TensorReport};
pub use zn::{enumerate_zn_chain, EnumerationResult};

/// Largest configuration count any enumeration will visit.
pub const MAX_CONFIGS: f64 = 1e8;

fn check_cap(base: usize, l: usize) -> crate::Result<u64> {
    let configs = (base as f64).powi(l as i32);
    if configs > MAX_CONFIGS {
        return Err(crate::Error::SizeCap {
            configs,
            cap: MAX_CONFIGS,
        });
    }
    Ok((base as u64).pow(l as u32))
}

/// Split `base^l` configurations into contiguous blocks for parallel
/// enumeration: `(block count, configurations per block)`.
fn blocks(total: u64) -> (u64, u64) {
    let per = (total / 64).max(1);
    (total.div_ceil(per), per)
}
