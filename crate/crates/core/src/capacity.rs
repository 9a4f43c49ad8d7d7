use crate::Error;

/// Limits for the operations that enumerate all graded sets over a
/// universe or explore a search tree whose size is data dependent.
///
/// Exceeding a limit is reported as [`Error::Capacity`] instead of
/// exhausting memory or running unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of candidate sets an enumeration may visit.
    pub max_sets: u64,
    /// Maximum number of vertices a pseudo-intent graph may hold
    /// (adjacency is stored densely).
    pub max_graph_vertices: u64,
    /// Maximum number of recursion nodes the independent-set search may
    /// expand.
    pub max_search_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_sets: 2_000_000,
            max_graph_vertices: 20_000,
            max_search_nodes: 4_000_000,
        }
    }
}

impl Caps {
    /// A cap with `max_sets = limit` and the other limits scaled to it.
    pub fn with_max_sets(limit: u64) -> Self {
        Caps {
            max_sets: limit,
            ..Caps::default()
        }
    }

    pub(crate) fn check_sets(&self, needed: u128, what: &'static str) -> Result<(), Error> {
        if needed > self.max_sets as u128 {
            return Err(Error::Capacity {
                what,
                needed,
                cap: self.max_sets as u128,
            });
        }
        Ok(())
    }
}

/// Number of graded sets over `attribute_count` attributes on a chain
/// with `scale + 1` degrees, i.e. `(scale + 1)^attribute_count`.
pub fn set_space_size(scale: u8, attribute_count: usize) -> u128 {
    let base = scale as u128 + 1;
    let mut size: u128 = 1;
    for _ in 0..attribute_count {
        size = size.saturating_mul(base);
    }
    size
}
