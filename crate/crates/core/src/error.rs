use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor is of finite type")]
    FiniteTypeInput,
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("invalid end space term: {0}")]
    InvalidTerm(String),

    #[error("a punctured disk needs at least 3 punctures, got {0}")]
    TooFewPunctures(usize),
    #[error("bad marks: {0}")]
    BadMarks(String),
    #[error("inessential class: {0}")]
    Inessential(String),
    #[error("arc endpoints coincide at puncture {0}")]
    SameEndpoint(u8),
    #[error("representative is not embedded: {0}")]
    NotEmbedded(String),
    #[error("classes live on different disks ({0} vs {1} punctures)")]
    DiskMismatch(usize, usize),
    #[error("bad generator `{0}`")]
    BadGenerator(String),
    #[error("endpoint {0} is not an endpoint of the arc")]
    BadEndpoint(u8),
    #[error("unicorn path step {index} is not an edge (intersection {intersection})")]
    NotAPath { index: usize, intersection: u32 },
    #[error("degenerate planar layout: {0}")]
    Degenerate(String),

    #[error("vertex kinds do not match")]
    KindMismatch,
    #[error("no seeds given")]
    EmptySeed,
    #[error("seeds fail the membership predicate: {0:?}")]
    MembershipFail(Vec<usize>),
    #[error("matrix is not unimodular (det {0})")]
    NonUnimodular(i64),
    #[error("the distance question cannot be decided soundly: {0}")]
    Undecidable(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("family undefined on pair ({0}, {1})")]
    FamilyGap(usize, usize),
    #[error("retraction image of vertex {0} is empty")]
    EmptyImage(usize),
    #[error("condition 2 fails on in-orbit pair ({0}, {1})")]
    Condition2Fail(usize, usize),
}
