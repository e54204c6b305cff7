use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::classify::TheoremViolation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("bidegree ({a},{b}) is too small, need both at least {min}")]
    DegreeTooSmall { a: u32, b: u32, min: u32 },
    #[error("the zero polynomial defines no curve")]
    ZeroPolynomial,
    #[error("automorphism has infinite order")]
    NotFiniteOrder,
    #[error("{0} is not representable in a cyclotomic field at hand")]
    NotRepresentable(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the identity fixes everything")]
    IdentityHasNoProperFixedLocus,
    #[error("the fiber {0} is a component of the curve")]
    FiberIsComponent(String),
    #[error("bidegree ({a},{b}) is not symmetric")]
    BidegreeAsymmetric { a: u32, b: u32 },
    #[error("family parameter must be nonzero")]
    ParamZero,
    #[error("a={a} and b={b} are not coprime")]
    NotCoprime { a: u32, b: u32 },
    #[error("polynomial is not invariant under the automorphism")]
    NotInvariant,
    #[error("bidegree mismatch: ({0},{1}) vs ({2},{3})")]
    BidegreeMismatch(u32, u32, u32, u32),
    #[error("quotient genus is not a non-negative integer: 2g-2-S={lhs} with S={stabilizer_sum}, |G|={group_order}")]
    NonIntegralGenus {
        lhs: i64,
        group_order: u64,
        stabilizer_sum: u64,
        replay: Vec<String>,
    },
    #[error("theorem violation: {0}")]
    TheoremViolation(Box<TheoremViolation>),
}
