use thiserror::Error;

/// Errors surfaced by the library.
///
/// Violations of internal mathematical invariants (a map failing to be
/// well defined on a quotient, a functoriality failure in a constructed
/// cosheaf) indicate a bug upstream and panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: {1}")]
    InvalidModulus(u64, String),

    #[error("invalid field spec {0:?}: expected \"F<p>\" with p prime, or \"Q\"")]
    InvalidFieldSpec(String),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("denominator is not contained in numerator")]
    NotASubspace,

    #[error("simplex has repeated vertices: {0:?}")]
    DegenerateSimplex(Vec<u32>),

    #[error("vertex map is not total: domain vertex {0} has no image")]
    PartialVertexMap(u32),

    #[error("map is not simplicial: image {image:?} of simplex {simplex:?} is not a simplex of the codomain")]
    NotSimplicial { simplex: Vec<u32>, image: Vec<u32> },

    #[error("simplex {0:?} is not in the complex")]
    MissingSimplex(Vec<u32>),

    #[error("codomain is not a triangulated segment: {0}")]
    NotAPath(String),

    #[error("empty interval bar {kind}{a},{b}{close}", kind = if *closed_left {"["} else {"("}, close = if *closed_right {"]"} else {")"})]
    EmptyBar {
        closed_left: bool,
        closed_right: bool,
        a: usize,
        b: usize,
    },

    #[error("quotient of the domain is not a simplicial complex: {0}")]
    ReebQuotient(String),

    #[error("{0}")]
    Input(String),
}
