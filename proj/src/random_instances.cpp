#include "ovsat/random_instances.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "ovsat/sat_circuit.hpp"

namespace ovsat {

RandomInstanceGenerator::RandomInstanceGenerator(std::uint64_t seed, RandomInstanceOptions options)
    : state_(seed), options_(options) {
    if (options_.min_vars == 0 || options_.min_vars > options_.max_vars || options_.min_clauses == 0 ||
        options_.min_clauses > options_.max_clauses || options_.max_width == 0) {
        throw std::invalid_argument("inconsistent random instance options");
    }
}

// Own modulo reduction so that the stream does not depend on the standard
// library's distribution implementation.
std::uint64_t RandomInstanceGenerator::draw(std::uint64_t lo, std::uint64_t hi) {
    std::mt19937_64 engine(state_);
    const std::uint64_t raw = engine();
    state_ = engine();
    return lo + raw % (hi - lo + 1);
}

SatInstance RandomInstanceGenerator::next() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const auto n = static_cast<std::uint32_t>(draw(options_.min_vars, options_.max_vars));
        const auto m = static_cast<std::size_t>(draw(options_.min_clauses, options_.max_clauses));
        std::vector<Clause> clauses;
        for (std::size_t i = 0; i < m; ++i) {
            const auto width = static_cast<std::size_t>(draw(1, std::min<std::uint64_t>(options_.max_width, n)));
            std::vector<std::uint32_t> vars(n);
            for (std::uint32_t k = 0; k < n; ++k) vars[k] = k + 1;
            Clause c;
            for (std::size_t j = 0; j < width; ++j) {
                const auto pick = static_cast<std::size_t>(draw(j, n - 1));
                std::swap(vars[j], vars[pick]);
                c.literals.push_back(Literal{vars[j], draw(0, 1) == 1});
            }
            clauses.push_back(std::move(c));
        }
        SatInstance inst(n, std::move(clauses));
        if (layout(inst).total_qubits <= options_.qubit_budget) return inst;
    }
    throw std::runtime_error("qubit budget too small for the requested instance sizes");
}

std::vector<Clause> all_clauses(std::uint32_t n) {
    std::vector<Clause> out;
    std::uint64_t total = 1;
    for (std::uint32_t k = 0; k < n; ++k) total *= 3;
    // Base-3 digit per variable: absent, positive, negated.
    for (std::uint64_t code = 1; code < total; ++code) {
        Clause c;
        std::uint64_t rest = code;
        for (std::uint32_t k = 1; k <= n; ++k, rest /= 3) {
            if (rest % 3 != 0) c.literals.push_back(Literal{k, rest % 3 == 2});
        }
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

void extend(std::uint32_t n, const std::vector<Clause>& pool, std::size_t from, std::size_t remaining,
            std::vector<Clause>& current, const std::function<void(const SatInstance&)>& visit) {
    if (!current.empty()) visit(SatInstance(n, current));
    if (remaining == 0) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
        current.push_back(pool[i]);
        extend(n, pool, i, remaining - 1, current, visit);
        current.pop_back();
    }
}

}  // namespace

void for_each_small_instance(std::uint32_t max_vars, std::size_t max_clauses,
                             const std::function<void(const SatInstance&)>& visit) {
    for (std::uint32_t n = 1; n <= max_vars; ++n) {
        const auto pool = all_clauses(n);
        std::vector<Clause> current;
        extend(n, pool, 0, max_clauses, current, visit);
    }
}

SatInstance scaling_instance(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("scaling family needs n >= 3");
    std::vector<Clause> clauses;
    for (std::uint32_t j = 0; j < 2 * n; ++j) {
        Clause c;
        for (std::uint32_t t = 0; t < 3; ++t) {
            const std::uint32_t var = (j + t) % n + 1;
            c.literals.push_back(Literal{var, ((j + t) % 3 == 0) != (j % 2 == 1)});
        }
        clauses.push_back(std::move(c));
    }
    return SatInstance(n, std::move(clauses));
}

}  // namespace ovsat
