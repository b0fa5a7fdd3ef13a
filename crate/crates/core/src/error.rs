use thiserror::Error;

#[derive(Error, Debug)]
pub enum GkzError {
    #[error("RankDeficient: point matrix has rank below k+1")]
    RankDeficient,
    #[error("NoHomogeneity: no integer functional takes value 1 on every point")]
    NoHomogeneity,
    #[error("DuplicatePoint: configuration points must be distinct")]
    DuplicatePoint,
    #[error("NotGenerating: points do not generate the full lattice")]
    NotGenerating,
    #[error("BadIndexSet: {0}")]
    BadIndexSet(String),
    #[error("SingularComplement: complement columns of the relation basis are dependent")]
    SingularComplement,
    #[error("NotATriangulation: {0}")]
    NotATriangulation(String),
    #[error("Unsolvable: no integral solution for the requested class count")]
    Unsolvable,
    #[error("NonGenericWeight: weight lies on a wall of the secondary fan")]
    NonGenericWeight,
    #[error("OnWall: weight coordinates are not pairwise distinct")]
    OnWall,
    #[error("ZeroElement: annihilator quotient by zero")]
    ZeroElement,
    #[error("TopRankNotOne: top graded piece must have rank one")]
    TopRankNotOne,
    #[error("NotNilpotent: ring element has a nonzero degree-zero part")]
    NotNilpotent,
    #[error("NonNormalizable: gamma ratio hits a pole at an integral offset")]
    NonNormalizable,
    #[error("NotUnimodular: chamber triangulation must be unimodular")]
    NotUnimodular,
    #[error("LatticeViolation: vector is not in the relation lattice")]
    LatticeViolation,
    #[error("InsufficientOrder: no truncation-interior indices to compare")]
    InsufficientOrder,
    #[error("BadLinearPart: series linear part does not match the expected sign pattern")]
    BadLinearPart,
    #[error("InvalidGamma: {0}")]
    InvalidGamma(String),
    #[error("TorsionRing: graded piece has torsion; quotient is not free")]
    TorsionRing,
    #[error("Schema: {0}")]
    Schema(String),
    #[error("Internal: {0}")]
    Internal(String),
}

impl GkzError {
    /// CLI exit code class: 2 for schema problems, 3 for mathematical
    /// precondition failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            GkzError::Schema(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, GkzError>;
