//! Per-cell random streams.
//!
//! Every agent × domain cell draws from its own ChaCha8 stream. The key
//! is the run seed plus a 64-bit stream id, the FNV-1a hash of
//! `"<agent>\x1f<domain>"` over the canonical labels. Because no cell
//! shares state with another, a cell's records do not depend on which
//! other cells are generated or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{AgentId, DomainId};

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

pub(crate) fn keyed(seed: u64, key: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(key.as_bytes()));
    rng
}

/// The task-generation stream for one cell.
pub fn substream(seed: u64, agent: &AgentId, domain: &DomainId) -> ChaCha8Rng {
    keyed(seed, &format!("{}\u{1f}{}", agent.as_str(), domain.as_str()))
}

/// The stream used for the held-out adaptability tasks of one cell.
pub fn adaptability_substream(seed: u64, agent: &AgentId, domain: &DomainId) -> ChaCha8Rng {
    keyed(seed, &format!("adaptability\u{1f}{}\u{1f}{}", agent.as_str(), domain.as_str()))
}
