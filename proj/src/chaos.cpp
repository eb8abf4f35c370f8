#include "ovsat/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ovsat {

namespace {
constexpr double kDefaultA = 3.71;
}

void LogisticParams::validate() const {
    if (!(a >= 0.0 && a <= 4.0)) {
        throw std::invalid_argument("logistic parameter a must lie in [0, 4]");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("max_iters must be >= 1");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::invalid_argument("threshold must lie in (0, 1)");
    }
}

double logistic_step(double x, double a) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("logistic_step: x outside [0, 1]");
    }
    if (!(a >= 0.0 && a <= 4.0)) {
        throw std::domain_error("logistic_step: a outside [0, 4]");
    }
    return a * x * (1.0 - x);
}

QubitDensity amplifier_channel(QubitDensity rho, double a) {
    return QubitDensity{logistic_step(rho.p1, a)};
}

int k_window_high(std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    return static_cast<int>((5 * (static_cast<std::int64_t>(n) - 1)) / 4);
}

KBounds k_bounds(std::uint32_t n, std::uint64_t r) {
    if (n == 0) throw std::invalid_argument("k_bounds: n must be >= 1");
    if (r == 0) throw std::invalid_argument("k_bounds: undefined for r = 0");
    const double denom = std::log2(kDefaultA) - 1.0;
    const double raw = (static_cast<double>(n) - 1.0 - std::log2(static_cast<double>(r))) / denom;
    KBounds b;
    b.low = std::max(0, static_cast<int>(std::floor(raw)));
    b.high = k_window_high(n);
    return b;
}

std::string to_string(Decision d) {
    switch (d) {
        case Decision::Sat: return "SAT";
        case Decision::Unsat: return "UNSAT";
        case Decision::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::uint64_t implied_model_count(double q_squared, std::uint32_t n) {
    return static_cast<std::uint64_t>(std::llround(std::ldexp(q_squared, static_cast<int>(n))));
}

AmplifierTrace amplify_detect(double q_squared, std::uint32_t n, const LogisticParams& params) {
    params.validate();
    if (!(q_squared >= 0.0 && q_squared <= 1.0)) {
        throw std::domain_error("q^2 outside [0, 1]");
    }
    AmplifierTrace trace;
    trace.window_high = k_window_high(n);
    if (const auto r = implied_model_count(q_squared, n); r > 0) {
        trace.bounds = k_bounds(n, r);
    }
    const int cap = std::min(params.max_iters, trace.window_high + 1);
    double x = q_squared;
    trace.x.push_back(x);
    for (int k = 0;; ++k) {
        if (x > params.threshold) {
            trace.first_crossing = k;
            trace.decision = Decision::Sat;
            return trace;
        }
        if (k == cap) break;
        x = amplifier_channel(QubitDensity{x}, params.a).p1;
        trace.x.push_back(x);
    }
    trace.decision = q_squared == 0.0 ? Decision::Unsat : Decision::Inconclusive;
    return trace;
}

namespace {

template <typename Real>
std::optional<int> first_crossing_impl(std::uint64_t r, std::uint32_t n, double a_in,
                                       double threshold_in, int cap) {
    Real x = Real(r);
    for (std::uint32_t i = 0; i < n; ++i) x /= 2;
    const Real a = Real(a_in);
    const Real threshold = Real(threshold_in);
    for (int k = 0; k <= cap; ++k) {
        if (x > threshold) return k;
        x = a * x * (1 - x);
    }
    return std::nullopt;
}

}  // namespace

std::optional<int> first_crossing(std::uint64_t r, std::uint32_t n, double a, double threshold,
                                  int cap, Precision precision) {
    switch (precision) {
        case Precision::Double:
            return first_crossing_impl<double>(r, n, a, threshold, cap);
        case Precision::LongDouble:
            return first_crossing_impl<long double>(r, n, a, threshold, cap);
        case Precision::Quad:
            return first_crossing_impl<boost::multiprecision::cpp_bin_float_quad>(r, n, a,
                                                                                  threshold, cap);
    }
    return std::nullopt;
}

BoundReport verify_crossing_window(std::uint32_t n_lo, std::uint32_t n_hi, const LogisticParams& params,
                                   bool all_powers_of_two, Precision precision) {
    params.validate();
    if (n_lo == 0 || n_hi < n_lo) {
        throw std::invalid_argument("verify_crossing_window: need 1 <= n_lo <= n_hi");
    }
    if (n_hi > 900) {
        throw std::invalid_argument("verify_crossing_window: 2^-n underflows double beyond n = 900");
    }
    const double denom = std::log2(params.a) - 1.0;
    BoundReport report;
    for (std::uint32_t n = n_lo; n <= n_hi; ++n) {
        const std::uint32_t max_exp = all_powers_of_two ? n - 1 : 0;
        for (std::uint32_t e = 0; e <= max_exp && e < 63; ++e) {
            BoundCheckRow row;
            row.n = n;
            row.r = std::uint64_t{1} << e;
            row.j_cap = static_cast<int>(2 * n);
            row.strict_lower = (static_cast<double>(n) - 1.0) / denom;
            row.window_low = std::max(
                0, static_cast<int>(std::floor((static_cast<double>(n) - 1.0 - e) / denom)));
            row.window_high = k_window_high(n);
            row.k_star = first_crossing(row.r, n, params.a, params.threshold, row.j_cap, precision);
            row.exists_in_j = row.k_star.has_value();
            if (row.k_star) {
                const int k = *row.k_star;
                row.upper_ok = k <= row.window_high;
                row.lower_ok = k >= row.window_low && (e != 0 || k > row.strict_lower);
            }
            auto finding = [&](const std::string& what) {
                report.findings.push_back(BoundFinding{n, row.r, what});
            };
            if (!row.exists_in_j) {
                ++report.missing_crossings;
                finding("no k in {0.." + std::to_string(row.j_cap) + "} with x_k > threshold");
            } else {
                const int k = *row.k_star;
                if (!row.upper_ok) {
                    ++report.upper_violations;
                    finding("k* = " + std::to_string(k) + " exceeds floor(5(n-1)/4) = " +
                            std::to_string(row.window_high));
                }
                if (!row.lower_ok) {
                    ++report.lower_violations;
                    std::ostringstream msg;
                    msg << "k* = " << k << " below lower bound ";
                    if (e == 0) {
                        msg << "(n-1)/(log2 a - 1) = " << std::setprecision(6) << row.strict_lower;
                    } else {
                        msg << row.window_low;
                    }
                    finding(msg.str());
                }
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

void write_trace_csv(std::ostream& out, const AmplifierTrace& trace, double threshold) {
    out << "k,x_k,crossed\n";
    out << std::setprecision(15);
    for (std::size_t k = 0; k < trace.x.size(); ++k) {
        out << k << ',' << trace.x[k] << ',' << (trace.x[k] > threshold ? 1 : 0) << '\n';
    }
}

}  // namespace ovsat
