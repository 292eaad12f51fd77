/// Resource caps shared across modules. Exceeding one yields
/// [`crate::Error::Resource`] naming the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted map degree.
    pub max_map_degree: usize,
    /// Largest iterate count for exact builds over `Q`.
    pub max_iterate_q: usize,
    /// Largest iterate count for builds modulo `p`.
    pub max_iterate_fp: usize,
    /// Largest degree `d^n` of an iterate built modulo `p`.
    pub max_iterate_degree: usize,
    /// Largest coefficient bit size tolerated while iterating over `Q`.
    pub max_coeff_bits: u64,
    /// Largest prime for which a functional graph is built.
    pub max_graph_prime: u64,
    /// Largest exponent accepted by the expression parser.
    pub max_parse_exponent: u32,
    /// Group elements the brute-force wreath enumeration may visit.
    pub wreath_budget: u128,
    /// Largest degree `d^n` of a fixed-point generating polynomial.
    pub max_fix_degree: usize,
    /// Largest denominator bit size in exact FPP recursions.
    pub max_fpp_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_map_degree: 16,
            max_iterate_q: 6,
            max_iterate_fp: 12,
            max_iterate_degree: 1 << 14,
            max_coeff_bits: 1 << 16,
            max_graph_prime: 1 << 26,
            max_parse_exponent: 256,
            wreath_budget: 10_000_000,
            max_fix_degree: 1 << 14,
            max_fpp_bits: 1 << 20,
        }
    }
}
