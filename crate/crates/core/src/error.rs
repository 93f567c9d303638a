use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("divergent integral: {0}")]
    Divergence(String),

    #[error("infeasible field: {0}")]
    Infeasible(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("unbounded Lorentz ball: {0}")]
    UnboundedBall(String),

    #[error("mollifier kernel support exceeds grid margin: {0}")]
    KernelSupport(String),

    #[error("instance rejected: {0}")]
    InstanceRejected(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
