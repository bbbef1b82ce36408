use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation has a cycle through element {0}")]
    Cycle(usize),
    #[error("element {elem} out of range for ground size {size}")]
    OutOfRange { elem: usize, size: usize },
    #[error("size {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("count overflowed 64 bits")]
    Overflow,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown name `{0}`")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
