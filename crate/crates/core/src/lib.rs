//! The inverse Ackermann function `α`, computed in time linear in the bit
//! length of its input.
//!
//! * [`bignat`]: bit-vector naturals with a cost meter.
//! * [`oracle`]: brute-force Ackermann values under a bit budget.
//! * [`inverse`]: `Inv_{A_k}`, iterated logarithms, `α` and `α'`.
//! * [`encoding`]: Cantor pairing and the sequence code.
//! * [`witness`]: certificates for `A_k(n) < m` and the derived predicates.
//! * [`bench`] and [`cli`]: the scaling benchmark and the `invack` binary.

pub mod bench;
pub mod bignat;
pub mod cli;
pub mod encoding;
pub mod inverse;
pub mod literal;
pub mod oracle;
pub mod witness;

pub use bignat::{BigNat, BigNatError, CostMeter, DEFAULT_BIT_BUDGET};
pub use encoding::{pair, seq_encode, triple, unpair, untriple, EncodingError, SeqCode};
pub use inverse::{alpha, alpha_prime, inv_ak, inv_trace, iter_log, InvTrace};
pub use literal::{parse_literal, NumLiteral};
pub use oracle::{ack_diag, ack_eval, AckOracle, AckResult};
pub use witness::{
    build_witness, check_graph, check_lt, comput_lt_verify, BuildOutcome, Label, WitnessError,
    WitnessSeq,
};
