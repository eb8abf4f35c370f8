#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ovsat {

struct LogisticParams {
    double a = 3.71;
    int max_iters = 4096;
    double threshold = 0.5;

    void validate() const;
};

/// g(x) = a x (1 - x); throws std::domain_error outside [0,1] x [0,4].
double logistic_step(double x, double a);

/// Diagonal one-qubit density q^2 P_1 + (1 - q^2) P_0. Off-diagonals are zero
/// by construction; only the |1> population is stored.
struct QubitDensity {
    double p1 = 0.0;

    double p0() const { return 1.0 - p1; }
};

/// Lambda_CA acting on the |1> population: p1 -> g(p1).
QubitDensity amplifier_channel(QubitDensity rho, double a);

struct KBounds {
    int low = 0;   ///< floor((n - 1 - log2 r) / (log2 3.71 - 1)), clamped at 0
    int high = 0;  ///< floor(5 (n - 1) / 4)
};

KBounds k_bounds(std::uint32_t n, std::uint64_t r);

/// floor(5 (n - 1) / 4); defined for every n >= 1.
int k_window_high(std::uint32_t n);

enum class Decision { Sat, Unsat, Inconclusive };
std::string to_string(Decision d);

struct AmplifierTrace {
    std::vector<double> x;  ///< x_0 = q^2, x_{k+1} = g(x_k)
    std::optional<int> first_crossing;
    std::optional<KBounds> bounds;  ///< absent when r = 0
    int window_high = 0;
    Decision decision = Decision::Inconclusive;

    /// Amplifier applications performed (x.size() - 1).
    int iterations() const { return static_cast<int>(x.size()) - 1; }
};

/// Iterates from x_0 = q^2 until the first x_k > threshold or until
/// min(max_iters, floor(5(n-1)/4) + 1) applications.
AmplifierTrace amplify_detect(double q_squared, std::uint32_t n, const LogisticParams& params = {});

/// Model count implied by q^2 on n variables (nearest integer of q^2 2^n).
std::uint64_t implied_model_count(double q_squared, std::uint32_t n);

enum class Precision { Double, LongDouble, Quad };

/// First k with x_k > threshold from x_0 = r / 2^n, iterating at most `cap`
/// times; computed in the requested precision.
std::optional<int> first_crossing(std::uint64_t r, std::uint32_t n, double a, double threshold,
                                  int cap, Precision precision = Precision::Double);

struct BoundCheckRow {
    std::uint32_t n = 0;
    std::uint64_t r = 1;
    std::optional<int> k_star;
    int j_cap = 0;             ///< 2n
    double strict_lower = 0;   ///< (n - 1) / (log2 a - 1) for r = 1, strict form
    int window_low = 0;        ///< floor((n - 1 - log2 r) / (log2 a - 1))
    int window_high = 0;       ///< floor(5 (n - 1) / 4)
    bool exists_in_j = false;
    bool lower_ok = false;
    bool upper_ok = false;
};

struct BoundFinding {
    std::uint32_t n = 0;
    std::uint64_t r = 1;
    std::string what;
};

struct BoundReport {
    std::vector<BoundCheckRow> rows;
    std::vector<BoundFinding> findings;
    std::size_t upper_violations = 0;
    std::size_t lower_violations = 0;
    std::size_t missing_crossings = 0;
};

/// Checks, for each n in [n_lo, n_hi] and x_0 = 2^-n, that a crossing exists
/// within J = {0..2n} and sits inside the lower/upper k bounds. When
/// `all_powers_of_two` is set, r ranges over 1, 2, ..., 2^(n-1) as well.
BoundReport verify_crossing_window(std::uint32_t n_lo, std::uint32_t n_hi, const LogisticParams& params = {},
                                   bool all_powers_of_two = false,
                                   Precision precision = Precision::Double);

/// CSV "k,x_k,crossed".
void write_trace_csv(std::ostream& out, const AmplifierTrace& trace, double threshold = 0.5);

}  // namespace ovsat
