//! Prime generation and prime sums with explicit tail bounds.

mod sieve;
mod sums;

pub use sieve::{
    primes_up_to, primes_up_to_capped, primes_with_spf, spf_table, PrimeTable, BLOCK,
    DEFAULT_MAX_LIMIT,
};
pub use sums::{
    c2_default, c2_enclosure, c2_parts, c2_tail_bound, cp_tail_bound, cp_term, prime_sum,
    sum_cp_upper, sum_cp_upper_with, tail_inv_p4_bound, C2Parts, SumCpReport, ThetaConstants,
    C2_DEFAULT_CUTOFF, C2_FIDELITY_CUTOFF, CP_PARTIAL_LIMIT, THETA,
};
