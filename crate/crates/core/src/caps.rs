/// Size limits for the exponential searches. Exceeding one is an error
/// ([`crate::Error::CapExceeded`]) unless the operation documents a fallback.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCaps {
    /// Memoize piercing sub-queries on families up to this many boxes.
    pub memo_family: usize,
    /// Subsets examined while looking for a minimal violating sub-tuple
    /// before falling back to the whole index list.
    pub violation_subsets: u64,
    /// Largest family for exhaustive subset searches
    /// (`max_pierceable_subfamily` fallback, `distance_to_clusterable`).
    pub exhaustive_family: usize,
    /// Largest point set for the partition oracle.
    pub partition_points: usize,
    /// Largest family for the complete missing-tuple search.
    pub missing_tuple_family: usize,
    /// Largest number of `t`-subsets `check_helly` and exhaustive
    /// `fraction_pierceable` may enumerate.
    pub subset_enumeration: u64,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            memo_family: 24,
            violation_subsets: 200_000,
            exhaustive_family: 20,
            partition_points: 12,
            missing_tuple_family: 16,
            subset_enumeration: 5_000_000,
        }
    }
}

impl SearchCaps {
    /// Replaces every cap that can raise [`crate::Error::CapExceeded`] with
    /// `size`. The memo and violation-search limits only affect speed and
    /// minimality, so they keep their defaults.
    pub fn with_size_cap(size: usize) -> Self {
        SearchCaps {
            exhaustive_family: size,
            partition_points: size,
            missing_tuple_family: size,
            subset_enumeration: size as u64,
            ..SearchCaps::default()
        }
    }
}
