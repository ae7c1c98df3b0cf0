use thiserror::Error;

use crate::index_set::IndexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Parse(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("elements belong to different groups")]
    OwnerMismatch,

    #[error("vector {index} is zero")]
    ZeroVector { index: usize },

    #[error("the vectors do not span the ambient rational space (rank {rank} < {dim})")]
    DegenerateConfiguration { rank: usize, dim: usize },

    #[error("the collection does not generate the group")]
    NotGenerating,

    #[error("the collection is not admissible: element {index} is not reachable from the others")]
    NotAdmissible { index: usize },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("index sets overlap at {index}")]
    IndexOverlap { index: usize },

    #[error("cone {cone} is not simplicial")]
    NotSimplicial { cone: IndexSet },

    #[error("{tau} is not a facet of {sigma}")]
    NotAFacet { sigma: IndexSet, tau: IndexSet },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid Demazure root: {0}")]
    InvalidRoot(String),

    #[error("invalid G-set: {0}")]
    InvalidGSet(String),

    #[error("configurations differ")]
    ConfigurationMismatch,

    #[error("fan is not a subfan of the maximal fan: cone {cone} is missing")]
    NotSubfan { cone: IndexSet },

    #[error("{what}: size {actual} exceeds the cap {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("integer search exhausted its node budget of {nodes}")]
    SearchBudgetExhausted { nodes: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn cap(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::CapExceeded {
            what,
            limit,
            actual,
        }
    }

    pub(crate) fn check_cap(what: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(Error::cap(what, limit, actual))
        } else {
            Ok(())
        }
    }
}
