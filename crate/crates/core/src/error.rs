use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("rank mismatch: m = {left} vs m = {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("degree {degree} out of range [{min}, {max}]")]
    DegreeOutOfRange { degree: i64, min: i64, max: i64 },
    #[error("invalid rank m = {0}: need 1 <= m <= 32")]
    InvalidRank(usize),
    #[error("indices must be strictly increasing and below {bound}")]
    InvalidMonomial { bound: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("variable `{name}` at position {position} exceeds m = {m}")]
    VariableOutOfRange { name: String, position: usize, m: usize },
    #[error("class is not homogeneous")]
    NotHomogeneous,
    #[error("class is not primitive (X+ does not annihilate it)")]
    NotPrimitive,
    #[error("class is zero")]
    ZeroClass,
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not a member of the subspace")]
    NotMember,
    #[error(
        "sum E_r + X-(Lambda^(r-2)) is not a direct decomposition of Lambda^r: \
         dim E_r = {primitive}, dim image = {image}, dim intersection = {intersection}, \
         dim sum = {sum}, dim Lambda^r = {total}"
    )]
    DecompositionDefect {
        primitive: usize,
        image: usize,
        intersection: usize,
        sum: usize,
        total: usize,
    },
    #[error("catalog of {count} subspaces exceeds the enumeration bound {bound}")]
    CatalogTooLarge { count: String, bound: u64 },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DegreeOutOfRange { .. } => "degree_out_of_range",
            Error::InvalidRank(_) => "invalid_rank",
            Error::InvalidMonomial { .. } => "invalid_monomial",
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::VariableOutOfRange { .. } => "variable_out_of_range",
            Error::NotHomogeneous => "not_homogeneous",
            Error::NotPrimitive => "not_primitive",
            Error::ZeroClass => "zero_class",
            Error::ZeroVector => "zero_vector",
            Error::NotMember => "not_member",
            Error::DecompositionDefect { .. } => "decomposition_defect",
            Error::CatalogTooLarge { .. } => "catalog_too_large",
        }
    }

    /// Process exit code: 1 for a failed mathematical assertion, 3 for a
    /// refused enumeration, 2 for everything caused by the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DecompositionDefect { .. } => 1,
            Error::CatalogTooLarge { .. } => 3,
            _ => 2,
        }
    }
}
