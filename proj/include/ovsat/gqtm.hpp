#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ovsat/config.hpp"

namespace ovsat::gqtm {

using Complex = std::complex<double>;

/// Interned tape glyph. "#" is the blank; the SAT alphabet is predefined and
/// programs may intern further glyphs.
class Symbol {
public:
    constexpr Symbol() = default;

    static Symbol intern(std::string_view name);
    std::string name() const;
    std::uint16_t id() const { return id_; }

    static constexpr Symbol blank() { return Symbol(0); }
    static Symbol zero();
    static Symbol one();
    static Symbol x();
    static Symbol y();
    static Symbol clause_start();
    static Symbol clause_end();
    static Symbol bit(bool b) { return b ? one() : zero(); }

    auto operator<=>(const Symbol&) const = default;

private:
    constexpr explicit Symbol(std::uint16_t id) : id_(id) {}
    std::uint16_t id_ = 0;
};

/// Interned processor-state label.
class State {
public:
    State() = default;

    static State intern(std::string_view name);
    std::string name() const;
    std::uint32_t id() const { return id_; }

    auto operator<=>(const State&) const = default;

private:
    explicit State(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

/// Z -> Sigma with finitely many non-blank cells. Stored densely between the
/// outermost non-blank cells so equal tapes compare equal.
class Tape {
public:
    Tape() = default;
    explicit Tape(const std::vector<Symbol>& contents, std::int64_t origin = 0);

    Symbol read(std::int64_t pos) const;
    void write(std::int64_t pos, Symbol s);
    bool is_blank() const { return cells_.empty(); }
    std::int64_t first() const { return origin_; }
    std::int64_t last() const { return origin_ + static_cast<std::int64_t>(cells_.size()) - 1; }
    /// Concatenated glyph names between the outermost non-blank cells.
    std::string to_string() const;

    auto operator<=>(const Tape&) const = default;

private:
    void trim();

    std::int64_t origin_ = 0;
    std::vector<Symbol> cells_;
};

enum class Move : int { Left = -1, None = 0, Right = 1 };
char move_char(Move m);

/// Classical configuration (q, A_1..A_T, i_1..i_T) of a multi-track machine.
struct Configuration {
    State state;
    std::vector<Tape> tapes;
    std::vector<std::int64_t> heads;

    Configuration() = default;
    Configuration(State q, std::size_t tracks) : state(q), tapes(tracks), heads(tracks, 0) {}

    auto operator<=>(const Configuration&) const = default;
};

/// Finite superposition sum phi(C)|C>. Ordered map: successor amplitudes are
/// always accumulated in canonical key order.
class ConfigSuperposition {
public:
    ConfigSuperposition() = default;
    explicit ConfigSuperposition(const Configuration& c) { branches_.emplace(c, Complex{1.0, 0.0}); }

    void add(const Configuration& c, Complex amplitude);
    void prune(double threshold);
    double norm_squared() const;
    std::size_t size() const { return branches_.size(); }
    bool empty() const { return branches_.empty(); }
    const std::map<Configuration, Complex>& branches() const { return branches_; }

    ConfigSuperposition scaled(Complex factor) const;
    /// this + other, amplitude-wise.
    ConfigSuperposition plus(const ConfigSuperposition& other) const;

private:
    std::map<Configuration, Complex> branches_;
};

struct Outcome {
    Complex amplitude{1.0, 0.0};
    State next;
    Symbol write;
    Move move = Move::None;
};

struct RuleKey {
    State state;
    Symbol read;
    auto operator<=>(const RuleKey&) const = default;
};

/// delta restricted to multi-track machines that touch one track per step:
/// every processor state declares the track its head reads and writes.
class TransitionFunction {
public:
    TransitionFunction(std::string name, std::size_t num_tracks, std::set<std::size_t> tracks);

    const std::string& name() const { return name_; }
    std::size_t num_tracks() const { return num_tracks_; }
    const std::set<std::size_t>& declared_tracks() const { return declared_tracks_; }

    /// Declares q as operating on `track` (1-based). Tracks outside the declared
    /// set are rejected.
    State declare(std::string_view name, std::size_t track);
    State declare_final(std::string_view name);

    void add_rule(State q, Symbol read, std::vector<Outcome> outcomes);
    void add_rule(State q, Symbol read, State next, Symbol write, Move move);

    bool is_final(State q) const { return finals_.count(q) != 0; }
    const std::set<State>& final_states() const { return finals_; }
    std::size_t track_of(State q) const;
    const std::vector<Outcome>* lookup(State q, Symbol read) const;
    const std::map<RuleKey, std::vector<Outcome>>& rules() const { return rules_; }
    const std::map<State, std::size_t>& state_tracks() const { return state_track_; }

private:
    std::string name_;
    std::size_t num_tracks_;
    std::set<std::size_t> declared_tracks_;
    std::map<State, std::size_t> state_track_;
    std::set<State> finals_;
    std::map<RuleKey, std::vector<Outcome>> rules_;
};

class StuckConfiguration : public std::runtime_error {
public:
    StuckConfiguration(const std::string& machine, State q, std::size_t track, Symbol read);

    State state() const { return state_; }
    Symbol read() const { return read_; }

private:
    State state_;
    Symbol read_;
};

struct NormalizationDefect {
    RuleKey key;
    double sum = 0.0;  ///< sum |delta|^2 over outcomes
};

struct OrthogonalityDefect {
    RuleKey first;
    RuleKey second;
    double magnitude = 0.0;
};

enum class MachineClass { Unitary, Linear, Nonlinear };
std::string to_string(MachineClass c);

struct WellformednessReport {
    std::vector<NormalizationDefect> normalization;
    std::vector<OrthogonalityDefect> orthogonality;
    bool unitary = false;
    bool deterministic = false;
};

/// Normalization sum_{p,b,d}|delta(q,a,p,b,d)|^2 = 1 for every (q,a), and
/// orthogonality sum delta(q',a',.)^* delta(q,a,.) = 0 for q' != q, a' != a.
WellformednessReport check_wellformed(const TransitionFunction& delta,
                                      double tolerance = kTolerances.single_op);

/// One application of U_delta. Branches already in a final state are carried
/// over unchanged.
ConfigSuperposition step(const ConfigSuperposition& psi, const TransitionFunction& delta,
                         double prune = kTolerances.prune);

struct StepRecord {
    std::size_t step = 0;
    std::size_t branch_count = 0;
    double norm = 0.0;
    double halting_prob = 0.0;
};

/// Steps until every branch is final. Throws std::runtime_error after `max_steps`.
ConfigSuperposition run_until_final(ConfigSuperposition psi, const TransitionFunction& delta,
                                    std::size_t max_steps = 100000,
                                    std::vector<StepRecord>* trace = nullptr,
                                    std::size_t step_offset = 0);

double halting_probability(const ConfigSuperposition& psi, const std::set<State>& finals);

/// rho = sum_k lambda_k |psi_k><psi_k|.
struct MixedConfiguration {
    struct Component {
        double weight = 0.0;
        ConfigSuperposition psi;
    };
    std::vector<Component> components;

    double total_weight() const;
};

double halting_probability(const MixedConfiguration& rho, const std::set<State>& finals);

/// Computational-basis measurement channel: each branch becomes its own
/// component with weight |phi(C)|^2.
MixedConfiguration dephase(const ConfigSuperposition& psi);

/// Affine lift of a transition function: each component evolves separately.
MixedConfiguration run_components(const MixedConfiguration& rho, const TransitionFunction& delta,
                                  std::size_t max_steps = 100000);

/// Merges single-branch components carrying the same configuration and drops
/// zero-weight ones; result is sorted by configuration.
MixedConfiguration merge_identical(const MixedConfiguration& rho);

/// Replaces the processor state of every branch.
ConfigSuperposition relabel(const ConfigSuperposition& psi, State q);
MixedConfiguration relabel(const MixedConfiguration& rho, State q);

/// "q Tk:a -> amp q' Tk:b M" per outcome.
void dump_rules(std::ostream& out, const TransitionFunction& delta);

std::string describe(const Configuration& c);

}  // namespace ovsat::gqtm
