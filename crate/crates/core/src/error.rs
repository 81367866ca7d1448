use thiserror::Error;

/// Errors raised by graph construction, solvers and the verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction needs {requested} vertices, guard is {limit} (KNESERLAB_MAX_VERTICES)")]
    SizeGuard { requested: u128, limit: usize },

    #[error("graph has {count} looped vertices (first: {first}); this operation needs a loop-free graph")]
    Looped { count: usize, first: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("color {color} outside palette 1..={palette}")]
    ColorOutOfRange { color: u32, palette: u32 },

    #[error("budget exhausted after {nodes} nodes (best bounds: {lower}..={upper})", upper = fmt_upper(*.upper))]
    BudgetExceeded {
        nodes: u64,
        lower: u64,
        upper: Option<u64>,
    },

    #[error("coloring is not proper")]
    ImproperColoring,

    #[error("regime not met: functions with image in {subset:?} use only {colors_used} colors (need {needed})")]
    Regime {
        subset: Vec<u32>,
        colors_used: usize,
        needed: usize,
    },

    #[error("malformed graph data: {0}")]
    Format(String),
}

fn fmt_upper(upper: Option<u64>) -> String {
    upper.map_or_else(|| "?".to_string(), |u| u.to_string())
}

impl Error {
    /// True for outcomes that describe the mathematics of the instance rather
    /// than a tool failure: looped graphs and unmet extraction hypotheses.
    pub fn is_regime(&self) -> bool {
        matches!(self, Error::Looped { .. } | Error::Regime { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
