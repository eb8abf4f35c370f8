#include "ovsat/gqtm.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace ovsat::gqtm {

namespace {

class Interner {
public:
    explicit Interner(std::initializer_list<std::string_view> seed) {
        for (auto s : seed) intern(s);
    }

    std::uint32_t intern(std::string_view name) {
        std::lock_guard lock(mutex_);
        auto it = ids_.find(std::string(name));
        if (it != ids_.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(names_.back(), id);
        return id;
    }

    std::string name(std::uint32_t id) const {
        std::lock_guard lock(mutex_);
        return id < names_.size() ? names_[id] : "?";
    }

private:
    mutable std::mutex mutex_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

Interner& symbols() {
    static Interner table{"#", "0", "1", "X", "Y", "C_S", "C_E"};
    return table;
}

Interner& states() {
    static Interner table{"<none>"};
    return table;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
    const auto id = symbols().intern(name);
    if (id > 0xFFFF) throw std::length_error("tape alphabet exhausted");
    return Symbol(static_cast<std::uint16_t>(id));
}

std::string Symbol::name() const { return symbols().name(id_); }

Symbol Symbol::zero() { return Symbol(1); }
Symbol Symbol::one() { return Symbol(2); }
Symbol Symbol::x() { return Symbol(3); }
Symbol Symbol::y() { return Symbol(4); }
Symbol Symbol::clause_start() { return Symbol(5); }
Symbol Symbol::clause_end() { return Symbol(6); }

State State::intern(std::string_view name) { return State(states().intern(name)); }
std::string State::name() const { return states().name(id_); }

Tape::Tape(const std::vector<Symbol>& contents, std::int64_t origin)
    : origin_(origin), cells_(contents) {
    trim();
}

Symbol Tape::read(std::int64_t pos) const {
    if (pos < origin_ || pos > last()) return Symbol::blank();
    return cells_[static_cast<std::size_t>(pos - origin_)];
}

void Tape::write(std::int64_t pos, Symbol s) {
    if (cells_.empty()) {
        if (s == Symbol::blank()) return;
        origin_ = pos;
        cells_.push_back(s);
        return;
    }
    if (pos < origin_) {
        if (s == Symbol::blank()) return;
        cells_.insert(cells_.begin(), static_cast<std::size_t>(origin_ - pos), Symbol::blank());
        origin_ = pos;
    } else if (pos > last()) {
        if (s == Symbol::blank()) return;
        cells_.resize(static_cast<std::size_t>(pos - origin_ + 1), Symbol::blank());
    }
    cells_[static_cast<std::size_t>(pos - origin_)] = s;
    if (s == Symbol::blank()) trim();
}

void Tape::trim() {
    std::size_t lo = 0;
    while (lo < cells_.size() && cells_[lo] == Symbol::blank()) ++lo;
    if (lo == cells_.size()) {
        cells_.clear();
        origin_ = 0;
        return;
    }
    std::size_t hi = cells_.size();
    while (cells_[hi - 1] == Symbol::blank()) --hi;
    cells_ = std::vector<Symbol>(cells_.begin() + static_cast<std::ptrdiff_t>(lo),
                                 cells_.begin() + static_cast<std::ptrdiff_t>(hi));
    origin_ += static_cast<std::int64_t>(lo);
}

std::string Tape::to_string() const {
    std::string out;
    for (auto s : cells_) out += s.name();
    return out;
}

char move_char(Move m) {
    switch (m) {
        case Move::Left: return 'L';
        case Move::None: return 'N';
        case Move::Right: return 'R';
    }
    return '?';
}

void ConfigSuperposition::add(const Configuration& c, Complex amplitude) {
    auto [it, inserted] = branches_.try_emplace(c, amplitude);
    if (!inserted) it->second += amplitude;
}

void ConfigSuperposition::prune(double threshold) {
    std::erase_if(branches_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
}

double ConfigSuperposition::norm_squared() const {
    double total = 0.0;
    for (const auto& [c, a] : branches_) total += std::norm(a);
    return total;
}

ConfigSuperposition ConfigSuperposition::scaled(Complex factor) const {
    ConfigSuperposition out;
    for (const auto& [c, a] : branches_) out.branches_.emplace(c, a * factor);
    return out;
}

ConfigSuperposition ConfigSuperposition::plus(const ConfigSuperposition& other) const {
    ConfigSuperposition out = *this;
    for (const auto& [c, a] : other.branches_) out.add(c, a);
    return out;
}

TransitionFunction::TransitionFunction(std::string name, std::size_t num_tracks,
                                       std::set<std::size_t> tracks)
    : name_(std::move(name)), num_tracks_(num_tracks), declared_tracks_(std::move(tracks)) {
    for (auto t : declared_tracks_) {
        if (t == 0 || t > num_tracks_) {
            throw std::invalid_argument(name_ + ": track " + std::to_string(t) + " out of range");
        }
    }
}

State TransitionFunction::declare(std::string_view name, std::size_t track) {
    if (declared_tracks_.count(track) == 0) {
        throw std::invalid_argument(name_ + ": state " + std::string(name) + " uses undeclared track " +
                                    std::to_string(track));
    }
    const State q = State::intern(name);
    auto [it, inserted] = state_track_.emplace(q, track);
    if (!inserted && it->second != track) {
        throw std::invalid_argument(name_ + ": state " + std::string(name) +
                                    " redeclared on another track");
    }
    return q;
}

State TransitionFunction::declare_final(std::string_view name) {
    const State q = State::intern(name);
    finals_.insert(q);
    return q;
}

std::size_t TransitionFunction::track_of(State q) const {
    auto it = state_track_.find(q);
    return it == state_track_.end() ? 0 : it->second;
}

void TransitionFunction::add_rule(State q, Symbol read, std::vector<Outcome> outcomes) {
    if (state_track_.count(q) == 0) {
        throw std::invalid_argument(name_ + ": rule for undeclared state " + q.name());
    }
    for (const auto& o : outcomes) {
        if (state_track_.count(o.next) == 0 && finals_.count(o.next) == 0) {
            throw std::invalid_argument(name_ + ": rule targets undeclared state " + o.next.name());
        }
    }
    auto [it, inserted] = rules_.emplace(RuleKey{q, read}, std::move(outcomes));
    if (!inserted) {
        throw std::invalid_argument(name_ + ": duplicate rule for (" + q.name() + ", " + read.name() +
                                    ")");
    }
}

void TransitionFunction::add_rule(State q, Symbol read, State next, Symbol write, Move move) {
    add_rule(q, read, std::vector<Outcome>{Outcome{Complex{1.0, 0.0}, next, write, move}});
}

const std::vector<Outcome>* TransitionFunction::lookup(State q, Symbol read) const {
    auto it = rules_.find(RuleKey{q, read});
    return it == rules_.end() ? nullptr : &it->second;
}

StuckConfiguration::StuckConfiguration(const std::string& machine, State q, std::size_t track,
                                       Symbol read)
    : std::runtime_error(machine + ": no rule for (" + q.name() + ", T" + std::to_string(track) +
                         ":" + read.name() + ")"),
      state_(q),
      read_(read) {}

std::string to_string(MachineClass c) {
    switch (c) {
        case MachineClass::Unitary: return "UQTM";
        case MachineClass::Linear: return "LQTM";
        case MachineClass::Nonlinear: return "NLQTM";
    }
    return "?";
}

WellformednessReport check_wellformed(const TransitionFunction& delta, double tolerance) {
    WellformednessReport report;
    report.deterministic = true;

    using Successor = std::tuple<State, Symbol, int>;
    std::vector<std::pair<RuleKey, std::map<Successor, Complex>>> rows;
    for (const auto& [key, outcomes] : delta.rules()) {
        double sum = 0.0;
        std::map<Successor, Complex> succ;
        for (const auto& o : outcomes) {
            sum += std::norm(o.amplitude);
            succ[{o.next, o.write, static_cast<int>(o.move)}] += o.amplitude;
        }
        if (std::abs(sum - 1.0) > tolerance) {
            report.normalization.push_back(NormalizationDefect{key, sum});
        }
        const bool classical =
            outcomes.size() == 1 && (outcomes[0].amplitude == Complex{1.0, 0.0});
        report.deterministic = report.deterministic && classical;
        rows.emplace_back(key, std::move(succ));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const auto& [k1, s1] = rows[i];
            const auto& [k2, s2] = rows[j];
            if (k1.state == k2.state || k1.read == k2.read) continue;
            if (delta.track_of(k1.state) != delta.track_of(k2.state)) continue;
            Complex inner{0.0, 0.0};
            for (const auto& [succ, amp] : s1) {
                auto it = s2.find(succ);
                if (it != s2.end()) inner += std::conj(it->second) * amp;
            }
            if (std::abs(inner) > tolerance) {
                report.orthogonality.push_back(OrthogonalityDefect{k1, k2, std::abs(inner)});
            }
        }
    }
    report.unitary = report.normalization.empty() && report.orthogonality.empty();
    return report;
}

ConfigSuperposition step(const ConfigSuperposition& psi, const TransitionFunction& delta,
                         double prune) {
    ConfigSuperposition out;
    for (const auto& [config, amp] : psi.branches()) {
        if (delta.is_final(config.state)) {
            out.add(config, amp);
            continue;
        }
        const std::size_t track = delta.track_of(config.state);
        if (track == 0 || track > config.tapes.size()) {
            throw StuckConfiguration(delta.name(), config.state, track, Symbol::blank());
        }
        const std::size_t t = track - 1;
        const std::int64_t head = config.heads[t];
        const Symbol read = config.tapes[t].read(head);
        const auto* outcomes = delta.lookup(config.state, read);
        if (outcomes == nullptr) {
            throw StuckConfiguration(delta.name(), config.state, track, read);
        }
        for (const auto& o : *outcomes) {
            Configuration next = config;
            next.state = o.next;
            next.tapes[t].write(head, o.write);
            next.heads[t] = head + static_cast<int>(o.move);
            out.add(next, amp * o.amplitude);
        }
    }
    out.prune(prune);
    return out;
}

double halting_probability(const ConfigSuperposition& psi, const std::set<State>& finals) {
    double p = 0.0;
    for (const auto& [c, a] : psi.branches()) {
        if (finals.count(c.state)) p += std::norm(a);
    }
    return p;
}

ConfigSuperposition run_until_final(ConfigSuperposition psi, const TransitionFunction& delta,
                                    std::size_t max_steps, std::vector<StepRecord>* trace,
                                    std::size_t step_offset) {
    auto all_final = [&delta](const ConfigSuperposition& s) {
        return std::all_of(s.branches().begin(), s.branches().end(),
                           [&delta](const auto& kv) { return delta.is_final(kv.first.state); });
    };
    std::size_t n = 0;
    while (!all_final(psi)) {
        if (n == max_steps) {
            throw std::runtime_error(delta.name() + ": no halt within " + std::to_string(max_steps) +
                                     " steps");
        }
        psi = step(psi, delta);
        ++n;
        if (trace) {
            trace->push_back(StepRecord{step_offset + n, psi.size(), psi.norm_squared(),
                                        halting_probability(psi, delta.final_states())});
        }
    }
    return psi;
}

double MixedConfiguration::total_weight() const {
    double w = 0.0;
    for (const auto& c : components) w += c.weight;
    return w;
}

double halting_probability(const MixedConfiguration& rho, const std::set<State>& finals) {
    double p = 0.0;
    for (const auto& c : rho.components) {
        const double norm = c.psi.norm_squared();
        if (norm > 0.0) p += c.weight * halting_probability(c.psi, finals) / norm;
    }
    return p;
}

MixedConfiguration dephase(const ConfigSuperposition& psi) {
    MixedConfiguration rho;
    for (const auto& [config, amp] : psi.branches()) {
        rho.components.push_back({std::norm(amp), ConfigSuperposition(config)});
    }
    return rho;
}

MixedConfiguration run_components(const MixedConfiguration& rho, const TransitionFunction& delta,
                                  std::size_t max_steps) {
    MixedConfiguration out;
    for (const auto& c : rho.components) {
        out.components.push_back({c.weight, run_until_final(c.psi, delta, max_steps)});
    }
    return out;
}

MixedConfiguration merge_identical(const MixedConfiguration& rho) {
    std::map<Configuration, double> pure;
    MixedConfiguration out;
    for (const auto& c : rho.components) {
        if (c.weight <= 0.0) continue;
        if (c.psi.size() == 1 && std::abs(std::abs(c.psi.branches().begin()->second) - 1.0) < 1e-12) {
            pure[c.psi.branches().begin()->first] += c.weight;
        } else {
            out.components.push_back(c);
        }
    }
    for (const auto& [config, w] : pure) {
        out.components.push_back({w, ConfigSuperposition(config)});
    }
    return out;
}

ConfigSuperposition relabel(const ConfigSuperposition& psi, State q) {
    ConfigSuperposition out;
    for (const auto& [config, amp] : psi.branches()) {
        Configuration c = config;
        c.state = q;
        out.add(c, amp);
    }
    return out;
}

MixedConfiguration relabel(const MixedConfiguration& rho, State q) {
    MixedConfiguration out;
    for (const auto& c : rho.components) out.components.push_back({c.weight, relabel(c.psi, q)});
    return out;
}

namespace {

std::string format_amplitude(Complex a) {
    std::ostringstream out;
    out << std::setprecision(12);
    if (a.imag() == 0.0) {
        out << a.real();
    } else {
        out << '(' << a.real() << ',' << a.imag() << ')';
    }
    return out.str();
}

}  // namespace

void dump_rules(std::ostream& out, const TransitionFunction& delta) {
    for (const auto& [key, outcomes] : delta.rules()) {
        const auto track = delta.track_of(key.state);
        for (const auto& o : outcomes) {
            out << key.state.name() << " T" << track << ':' << key.read.name() << " -> "
                << format_amplitude(o.amplitude) << ' ' << o.next.name() << " T" << track << ':'
                << o.write.name() << ' ' << move_char(o.move) << '\n';
        }
    }
}

std::string describe(const Configuration& c) {
    std::ostringstream out;
    out << c.state.name();
    for (std::size_t t = 0; t < c.tapes.size(); ++t) {
        out << " | T" << (t + 1) << '[' << c.tapes[t].first() << "]=" << c.tapes[t].to_string()
            << " @" << c.heads[t];
    }
    return out.str();
}

}  // namespace ovsat::gqtm
