#include "ovsat/sat_program.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ovsat/sat_circuit.hpp"

namespace ovsat::gqtm {

namespace {

constexpr std::size_t T1 = 1;
constexpr std::size_t T2 = 2;
constexpr std::size_t T3 = 3;
constexpr std::size_t T4 = 4;

Symbol mark() { return Symbol::intern("M"); }
Symbol used_mark() { return Symbol::intern("c"); }

std::string indexed(const std::string& base, int i) { return base + "_" + std::to_string(i); }

/// Step 1: writes floor(5(n-1)/4) + 1 marks 'M' on track 4 left of cell 0 by
/// walking the 0^n prefix of track 1; returns both heads to cell 0.
Phase counter_setup_phase() {
    TransitionFunction d("step1-counter-setup", kSatTracks, {T1, T4});
    const auto start = d.declare("count.start", T4);
    const auto skip = d.declare("count.skip", T1);
    State zero[4], put[4];
    for (int j = 0; j < 4; ++j) {
        zero[j] = d.declare(indexed("count.zero", j), T1);
        put[j] = d.declare(indexed("count.put", j), T4);
    }
    const auto extra = d.declare("count.extra", T4);
    const auto last = d.declare("count.last", T4);
    const auto ret = d.declare("count.return", T4);
    const auto rewind = d.declare("count.rewind", T1);
    const auto done = d.declare_final("count.done");

    const auto B = Symbol::blank(), Z = Symbol::zero(), X = Symbol::x(), M = mark();
    d.add_rule(start, B, skip, B, Move::Left);
    d.add_rule(skip, Z, zero[0], Z, Move::Right);
    for (int j = 0; j < 4; ++j) {
        d.add_rule(zero[j], Z, put[j], Z, Move::Right);
        d.add_rule(zero[j], X, last, X, Move::None);
        d.add_rule(put[j], B, j == 3 ? extra : zero[j + 1], M, Move::Left);
    }
    d.add_rule(extra, B, zero[0], M, Move::Left);
    d.add_rule(last, B, ret, M, Move::Right);
    d.add_rule(ret, M, ret, M, Move::Right);
    d.add_rule(ret, B, rewind, B, Move::None);
    d.add_rule(rewind, X, rewind, X, Move::Left);
    d.add_rule(rewind, Z, rewind, Z, Move::Left);
    d.add_rule(rewind, B, done, B, Move::Right);

    Phase p;
    p.step = 1;
    p.name = "counter-setup";
    p.provenance = Provenance::Invented;
    p.start = start;
    p.exits = {done};
    p.note = "unary counter: one mark per variable after the first, one extra per four, plus one";
    p.delta = std::move(d);
    return p;
}

/// Step 2: consumes one mark; exits through count.more or count.exhausted.
Phase counter_increment_phase() {
    TransitionFunction d("step2-counter-increment", kSatTracks, {T4});
    const auto start = d.declare("inc.start", T4);
    const auto seek = d.declare("inc.seek", T4);
    const auto peek = d.declare("inc.peek", T4);
    const auto ret_more = d.declare("inc.return_more", T4);
    const auto ret_last = d.declare("inc.return_last", T4);
    const auto more = d.declare_final("inc.more");
    const auto exhausted = d.declare_final("inc.exhausted");

    const auto B = Symbol::blank(), Z = Symbol::zero(), O = Symbol::one(), M = mark(),
               C = used_mark();
    d.add_rule(start, Z, seek, Z, Move::Left);
    d.add_rule(start, O, seek, O, Move::Left);
    d.add_rule(seek, C, seek, C, Move::Left);
    d.add_rule(seek, M, peek, C, Move::Left);
    d.add_rule(peek, M, ret_more, M, Move::Right);
    d.add_rule(peek, B, ret_last, B, Move::Right);
    for (auto [q, exit] : {std::pair{ret_more, more}, std::pair{ret_last, exhausted}}) {
        d.add_rule(q, C, q, C, Move::Right);
        d.add_rule(q, Z, exit, Z, Move::None);
        d.add_rule(q, O, exit, O, Move::None);
    }

    Phase p;
    p.step = 2;
    p.name = "counter-increment";
    p.provenance = Provenance::Invented;
    p.start = start;
    p.exits = {more, exhausted};
    p.delta = std::move(d);
    return p;
}

/// Step 3: fills track 2 with 0^n while walking the 0^n X prefix of track 1,
/// then sweeps left applying H to every track-2 cell (the q_b row).
Phase hadamard_phase() {
    TransitionFunction d("step3-dft", kSatTracks, {T1, T2});
    const auto qa = d.declare("dft.q_a", T1);
    const auto fill = d.declare("dft.fill", T2);
    const auto turn = d.declare("dft.turn", T2);
    const auto qb = d.declare("dft.q_b", T2);
    const auto qf = d.declare_final("dft.q_f");

    const auto B = Symbol::blank(), Z = Symbol::zero(), O = Symbol::one(), X = Symbol::x();
    const double h = 1.0 / std::sqrt(2.0);
    d.add_rule(qa, Z, fill, Z, Move::Right);
    d.add_rule(qa, X, turn, X, Move::None);
    d.add_rule(fill, B, qa, Z, Move::Right);
    d.add_rule(turn, B, qb, B, Move::Left);
    d.add_rule(qb, Z, {Outcome{h, qb, Z, Move::Left}, Outcome{h, qb, O, Move::Left}});
    d.add_rule(qb, O, {Outcome{h, qb, Z, Move::Left}, Outcome{-h, qb, O, Move::Left}});
    d.add_rule(qb, B, qf, B, Move::Right);

    Phase p;
    p.step = 3;
    p.name = "dft";
    p.provenance = Provenance::Repaired;
    p.start = qa;
    p.exits = {qf};
    p.note = "acts on track 2; the X sentinel is read on track 1";
    p.delta = std::move(d);
    return p;
}

/// Step 4: for each C_S G(C) C_E block, scans the eps bits on track 1 with the
/// track-2 head in lockstep, folding the OR into the processor state, and
/// appends t(C) to track 3.
Phase or_phase() {
    TransitionFunction d("step4-or", kSatTracks, {T1, T2, T3});
    const auto start = d.declare("or.start", T1);
    const auto dispatch = d.declare("or.dispatch", T1);
    State pos[2], skip_pos[2], fetch_pos[2], ystart[2], yrew[2], neg[2], skip_neg[2], fetch_neg[2],
        write[2];
    for (int acc = 0; acc < 2; ++acc) {
        pos[acc] = d.declare(indexed("or.pos", acc), T1);
        skip_pos[acc] = d.declare(indexed("or.skip_pos", acc), T2);
        fetch_pos[acc] = d.declare(indexed("or.fetch_pos", acc), T2);
        ystart[acc] = d.declare(indexed("or.y_start", acc), T2);
        yrew[acc] = d.declare(indexed("or.y_rewind", acc), T2);
        neg[acc] = d.declare(indexed("or.neg", acc), T1);
        skip_neg[acc] = d.declare(indexed("or.skip_neg", acc), T2);
        fetch_neg[acc] = d.declare(indexed("or.fetch_neg", acc), T2);
        write[acc] = d.declare(indexed("or.t3", acc), T3);
    }
    const auto estart = d.declare("or.end_start", T2);
    const auto erew = d.declare("or.end_rewind", T2);
    const auto done = d.declare_final("or.done");

    const auto B = Symbol::blank(), Z = Symbol::zero(), O = Symbol::one(), X = Symbol::x(),
               Y = Symbol::y(), CS = Symbol::clause_start(), CE = Symbol::clause_end();

    d.add_rule(start, X, dispatch, X, Move::Right);
    d.add_rule(dispatch, CS, pos[0], CS, Move::Right);
    d.add_rule(dispatch, B, done, B, Move::None);
    for (int acc = 0; acc < 2; ++acc) {
        d.add_rule(pos[acc], Z, skip_pos[acc], Z, Move::Right);
        d.add_rule(pos[acc], O, fetch_pos[acc], O, Move::Right);
        d.add_rule(pos[acc], Y, ystart[acc], Y, Move::Right);
        d.add_rule(neg[acc], Z, skip_neg[acc], Z, Move::Right);
        d.add_rule(neg[acc], O, fetch_neg[acc], O, Move::Right);
        d.add_rule(neg[acc], CE, write[acc], CE, Move::Right);
        for (int b = 0; b < 2; ++b) {
            const auto s = Symbol::bit(b != 0);
            d.add_rule(skip_pos[acc], s, pos[acc], s, Move::Right);
            d.add_rule(fetch_pos[acc], s, pos[acc | b], s, Move::Right);
            d.add_rule(skip_neg[acc], s, neg[acc], s, Move::Right);
            d.add_rule(fetch_neg[acc], s, neg[acc | (1 - b)], s, Move::Right);
            d.add_rule(yrew[acc], s, yrew[acc], s, Move::Left);
        }
        d.add_rule(ystart[acc], B, yrew[acc], B, Move::Left);
        d.add_rule(yrew[acc], B, neg[acc], B, Move::Right);
        d.add_rule(write[acc], B, estart, Symbol::bit(acc != 0), Move::Right);
    }
    d.add_rule(estart, B, erew, B, Move::Left);
    d.add_rule(erew, Z, erew, Z, Move::Left);
    d.add_rule(erew, O, erew, O, Move::Left);
    d.add_rule(erew, B, dispatch, B, Move::Right);

    Phase p;
    p.step = 4;
    p.name = "or";
    p.provenance = Provenance::Repaired;
    p.start = start;
    p.exits = {done};
    p.note = "tracks 1 and 2 scanned in lockstep; or.t3_* write each clause value";
    p.delta = std::move(d);
    return p;
}

/// Step 5: sweeps track 3 leftwards taking the AND, writes t(C) to track 4 cell 0.
Phase and_phase() {
    TransitionFunction d("step5-and", kSatTracks, {T3, T4});
    const auto start = d.declare("and.start", T3);
    State acc[2], write[2];
    for (int v = 0; v < 2; ++v) {
        acc[v] = d.declare(indexed("and.t4", v), T3);
        write[v] = d.declare(indexed("and.write", v), T4);
    }
    const auto done = d.declare_final("and.done");
    const auto B = Symbol::blank(), Z = Symbol::zero(), O = Symbol::one();

    d.add_rule(start, B, acc[1], B, Move::Left);
    for (int v = 0; v < 2; ++v) {
        d.add_rule(acc[v], Z, acc[0], Z, Move::Left);
        d.add_rule(acc[v], O, acc[v], O, Move::Left);
        d.add_rule(acc[v], B, write[v], B, Move::Right);
        d.add_rule(write[v], B, done, Symbol::bit(v != 0), Move::None);
    }

    Phase p;
    p.step = 5;
    p.name = "and";
    p.provenance = Provenance::Repaired;
    p.start = start;
    p.exits = {done};
    p.delta = std::move(d);
    return p;
}

/// Step 6: blanks tracks 1-3 and parks their heads on cell 0.
Phase erase_phase() {
    TransitionFunction d("step6-erase", kSatTracks, {T1, T2, T3});
    const std::vector<Symbol> alphabet = {Symbol::zero(), Symbol::one(),          Symbol::x(),
                                          Symbol::y(),    Symbol::clause_start(), Symbol::clause_end()};
    const auto B = Symbol::blank();
    std::vector<State> right, left;
    for (std::size_t t = 1; t <= 3; ++t) {
        right.push_back(d.declare("erase.right_t" + std::to_string(t), t));
        left.push_back(d.declare("erase.left_t" + std::to_string(t), t));
    }
    const auto done = d.declare_final("erase.done");
    for (std::size_t i = 0; i < 3; ++i) {
        const State next = i + 1 < 3 ? right[i + 1] : done;
        for (auto s : alphabet) {
            d.add_rule(right[i], s, right[i], s, Move::Right);
            d.add_rule(left[i], s, left[i], B, Move::Left);
        }
        d.add_rule(right[i], B, left[i], B, Move::Left);
        d.add_rule(left[i], B, next, B, Move::Right);
    }

    Phase p;
    p.step = 6;
    p.name = "erase";
    p.provenance = Provenance::Invented;
    p.kind = MachineClass::Linear;
    p.start = right[0];
    p.exits = {done};
    p.note = "run per component after dephasing; the workspace is traced out";
    p.delta = std::move(d);
    return p;
}

Phase amplifier_phase() {
    Phase p;
    p.step = 7;
    p.name = "chaos-amplifier";
    p.provenance = Provenance::Given;
    p.kind = MachineClass::Nonlinear;
    p.start = State::intern("q_7");
    p.exits = {p.start};
    p.note = "logistic map on the track-4 weight pair";
    return p;
}

Phase halt_test_phase() {
    TransitionFunction d("step8-halt-test", kSatTracks, {T4});
    const auto test = d.declare("halt.test", T4);
    const auto accept = d.declare_final("q_f");
    const auto cont = d.declare_final("halt.continue");
    d.add_rule(test, Symbol::one(), accept, Symbol::one(), Move::None);
    d.add_rule(test, Symbol::zero(), cont, Symbol::zero(), Move::None);

    Phase p;
    p.step = 8;
    p.name = "halt-test";
    p.provenance = Provenance::Invented;
    p.start = test;
    p.exits = {accept, cont};
    p.delta = std::move(d);
    return p;
}

SatProgram build_program() {
    SatProgram prog;
    prog.phases.push_back(counter_setup_phase());
    prog.phases.push_back(counter_increment_phase());
    prog.phases.push_back(hadamard_phase());
    prog.phases.push_back(or_phase());
    prog.phases.push_back(and_phase());
    prog.phases.push_back(erase_phase());
    prog.phases.push_back(amplifier_phase());
    prog.phases.push_back(halt_test_phase());
    for (auto& p : prog.phases) {
        if (p.delta && p.kind == MachineClass::Unitary) {
            p.kind = check_wellformed(*p.delta).unitary ? MachineClass::Unitary : MachineClass::Linear;
        }
    }
    return prog;
}

Configuration blank_configuration(State q) { return Configuration(q, kSatTracks); }

ConfigSuperposition run_phase(const ConfigSuperposition& psi, const Phase& phase,
                              std::vector<StepRecord>* trace) {
    const std::size_t offset = trace && !trace->empty() ? trace->back().step : 0;
    return run_until_final(relabel(psi, phase.start), *phase.delta, 100000, trace, offset);
}

bool track4_result(const Configuration& c) {
    return c.tapes[T4 - 1].read(0) == Symbol::one();
}

}  // namespace

std::vector<Symbol> encode_sat_input(const SatInstance& inst) {
    const auto n = inst.num_vars();
    std::vector<Symbol> out(n, Symbol::zero());
    out.push_back(Symbol::x());
    for (const auto& c : inst.clauses()) {
        std::vector<bool> pos(n, false), neg(n, false);
        for (const auto& lit : c.literals) {
            (lit.negated ? neg : pos)[lit.variable - 1] = true;
        }
        out.push_back(Symbol::clause_start());
        for (bool b : pos) out.push_back(Symbol::bit(b));
        out.push_back(Symbol::y());
        for (bool b : neg) out.push_back(Symbol::bit(b));
        out.push_back(Symbol::clause_end());
    }
    return out;
}

std::string symbols_to_string(const std::vector<Symbol>& symbols) {
    std::string s;
    for (auto sym : symbols) s += sym.name();
    return s;
}

SatInstance decode_sat_input(const std::vector<Symbol>& symbols) {
    std::size_t i = 0;
    auto expect = [&](Symbol s, const char* what) {
        if (i >= symbols.size() || symbols[i] != s) {
            throw std::invalid_argument(std::string("malformed SAT tape: expected ") + what +
                                        " at cell " + std::to_string(i));
        }
        ++i;
    };
    std::uint32_t n = 0;
    while (i < symbols.size() && symbols[i] == Symbol::zero()) {
        ++n;
        ++i;
    }
    expect(Symbol::x(), "X");
    std::vector<Clause> clauses;
    while (i < symbols.size()) {
        expect(Symbol::clause_start(), "C_S");
        Clause c;
        std::vector<Literal> negs;
        for (int half = 0; half < 2; ++half) {
            for (std::uint32_t k = 1; k <= n; ++k) {
                if (i >= symbols.size()) throw std::invalid_argument("malformed SAT tape: truncated");
                const Symbol s = symbols[i++];
                if (s == Symbol::one()) {
                    (half == 0 ? c.literals : negs).push_back(Literal{k, half == 1});
                } else if (s != Symbol::zero()) {
                    throw std::invalid_argument("malformed SAT tape: non-bit in clause block");
                }
            }
            if (half == 0) expect(Symbol::y(), "Y");
        }
        expect(Symbol::clause_end(), "C_E");
        c.literals.insert(c.literals.end(), negs.begin(), negs.end());
        clauses.push_back(std::move(c));
    }
    return SatInstance(n, std::move(clauses));
}

SatInstance canonical_form(const SatInstance& inst) {
    return decode_sat_input(encode_sat_input(inst));
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Given: return "given";
        case Provenance::Repaired: return "repaired";
        case Provenance::Invented: return "invented";
    }
    return "?";
}

const Phase& SatProgram::phase(int step) const {
    for (const auto& p : phases) {
        if (p.step == step) return p;
    }
    throw std::out_of_range("no phase for step " + std::to_string(step));
}

const SatProgram& sat_program() {
    static const SatProgram program = build_program();
    return program;
}

State accept_state() { return State::intern("q_f"); }

int counter_marks(const SatInstance& inst) {
    const auto& prog = sat_program();
    Configuration c = blank_configuration(prog.phase(1).start);
    c.tapes[T1 - 1] = Tape(encode_sat_input(inst));
    auto psi = run_until_final(ConfigSuperposition(c), *prog.phase(1).delta);
    const auto& tape = psi.branches().begin()->first.tapes[T4 - 1];
    int marks = 0;
    for (auto pos = tape.first(); pos <= tape.last(); ++pos) {
        if (tape.read(pos) == mark()) ++marks;
    }
    return marks;
}

BranchEvaluation evaluate_branch(const SatInstance& inst, const Assignment& a) {
    const auto& prog = sat_program();
    Configuration c = blank_configuration(prog.phase(4).start);
    c.tapes[T1 - 1] = Tape(encode_sat_input(inst));
    c.heads[T1 - 1] = inst.num_vars();
    std::vector<Symbol> bits;
    for (bool b : a.bits) bits.push_back(Symbol::bit(b));
    c.tapes[T2 - 1] = Tape(bits);

    auto psi = run_phase(ConfigSuperposition(c), prog.phase(4), nullptr);
    psi = run_phase(psi, prog.phase(5), nullptr);
    if (psi.size() != 1) throw std::logic_error("classical branch split");
    const auto& out = psi.branches().begin()->first;
    BranchEvaluation eval;
    for (std::size_t i = 0; i < inst.num_clauses(); ++i) {
        eval.clause_values.push_back(out.tapes[T3 - 1].read(static_cast<std::int64_t>(i)) ==
                                     Symbol::one());
    }
    eval.result = track4_result(out);
    return eval;
}

ConfigSuperposition run_unitary_part(const SatInstance& inst, std::vector<StepRecord>* trace) {
    const auto& prog = sat_program();
    Configuration c = blank_configuration(prog.phase(1).start);
    c.tapes[T1 - 1] = Tape(encode_sat_input(inst));
    ConfigSuperposition psi(c);
    for (int step : {1, 3, 4, 5}) {
        psi = run_phase(psi, prog.phase(step), trace);
    }
    return psi;
}

MixedConfiguration to_rho6(const ConfigSuperposition& after_and) {
    const auto& erase = sat_program().phase(6);
    auto rho = relabel(dephase(after_and), erase.start);
    rho = run_components(rho, *erase.delta);
    return relabel(merge_identical(rho), State::intern("q_6"));
}

double result_weight(const MixedConfiguration& rho) {
    double w = 0.0;
    for (const auto& comp : rho.components) {
        const double norm = comp.psi.norm_squared();
        if (norm <= 0.0) continue;
        double ones = 0.0;
        for (const auto& [config, amp] : comp.psi.branches()) {
            if (track4_result(config)) ones += std::norm(amp);
        }
        w += comp.weight * ones / norm;
    }
    return w;
}

MixedConfiguration apply_amplifier(const MixedConfiguration& rho, double a) {
    if (rho.components.empty()) throw std::invalid_argument("amplifier on empty configuration");
    const double p = result_weight(rho);
    const double next = amplifier_channel(QubitDensity{p}, a).p1;
    const auto& first = rho.components.front().psi;
    if (first.size() != 1) {
        throw std::invalid_argument("amplifier expects classical components on track 4");
    }
    Configuration templ = first.branches().begin()->first;
    templ.state = sat_program().phase(7).start;
    MixedConfiguration out;
    for (int bit : {0, 1}) {
        const double w = bit == 1 ? next : 1.0 - next;
        if (w <= 0.0) continue;
        Configuration c = templ;
        c.tapes[T4 - 1].write(0, Symbol::bit(bit == 1));
        out.components.push_back({w, ConfigSuperposition(c)});
    }
    return out;
}

AmplifierLoopResult run_amplifier_loop(const MixedConfiguration& rho6, const LogisticParams& params) {
    params.validate();
    const auto& prog = sat_program();
    const auto& inc = prog.phase(2);
    const auto& test = prog.phase(8);
    const std::set<State> accept{accept_state()};

    AmplifierLoopResult out;
    if (!rho6.components.empty()) {
        const auto& tape = rho6.components.front().psi.branches().begin()->first.tapes[T4 - 1];
        for (auto pos = tape.first(); pos <= tape.last(); ++pos) {
            if (tape.read(pos) == mark()) ++out.counter_max;
        }
    }

    // M_k is an expectation value: reading it does not collapse rho.
    auto probe = [&](const MixedConfiguration& rho) {
        const auto tested = run_components(relabel(rho, test.start), *test.delta);
        const double p = halting_probability(tested, accept);
        out.m_trace.push_back(result_weight(rho));
        out.halting_trace.push_back(p);
        return p > params.threshold;
    };

    MixedConfiguration rho = rho6;
    if (probe(rho)) {
        out.first_crossing = 0;
        out.final_rho = rho;
        return out;
    }
    for (int k = 1; k <= params.max_iters; ++k) {
        rho = run_components(relabel(rho, inc.start), *inc.delta);
        const bool exhausted = halting_probability(rho, {inc.exits[1]}) > 0.0;
        rho = apply_amplifier(rho, params.a);
        if (probe(rho)) {
            out.first_crossing = k;
            break;
        }
        if (exhausted) break;
    }
    out.final_rho = rho;
    return out;
}

GqtmRun run_sat_gqtm(const SatInstance& inst, const GqtmOptions& options) {
    options.params.validate();
    GqtmRun run;
    const auto n = inst.num_vars();
    MixedConfiguration rho6;

    if (n <= options.full_max_vars) {
        std::vector<StepRecord> steps;
        const auto psi = run_unitary_part(inst, &steps);
        run.unitary_steps = steps.size();
        for (const auto& s : steps) run.max_branches = std::max(run.max_branches, s.branch_count);
        if (options.record_steps) run.steps = std::move(steps);
        rho6 = to_rho6(psi);
    } else {
        // q^2 from the circuit; the machine still builds the counter and hosts the loop.
        run.hybrid = true;
        const auto circuit = run_circuit(inst, options.max_qubits);
        const auto& prog = sat_program();
        Configuration c = blank_configuration(prog.phase(1).start);
        c.tapes[T1 - 1] = Tape(encode_sat_input(inst));
        auto psi = run_until_final(ConfigSuperposition(c), *prog.phase(1).delta);
        Configuration templ = psi.branches().begin()->first;
        for (std::size_t t = 0; t < 3; ++t) {
            templ.tapes[t] = Tape();
            templ.heads[t] = 0;
        }
        templ.state = State::intern("q_6");
        for (int bit : {0, 1}) {
            const double w = bit == 1 ? circuit.q_squared : 1.0 - circuit.q_squared;
            if (w <= 0.0) continue;
            Configuration cb = templ;
            cb.tapes[T4 - 1].write(0, Symbol::bit(bit == 1));
            rho6.components.push_back({w, ConfigSuperposition(cb)});
        }
    }

    run.q_squared = result_weight(rho6);
    run.weight_t4_zero = rho6.total_weight() - run.q_squared;
    run.rho6_components = rho6.components.size();
    run.workspace_blank = std::all_of(rho6.components.begin(), rho6.components.end(), [](const auto& c) {
        return std::all_of(c.psi.branches().begin(), c.psi.branches().end(), [](const auto& kv) {
            return kv.first.tapes[0].is_blank() && kv.first.tapes[1].is_blank() &&
                   kv.first.tapes[2].is_blank();
        });
    });

    const std::uint64_t branches = std::uint64_t{1} << std::min<std::uint32_t>(n, 12);
    for (std::uint64_t idx = 0; idx < branches; ++idx) {
        const auto a = Assignment::from_index(n, idx);
        ++run.branch_checks;
        if (evaluate_branch(inst, a).result != eval_instance(inst, a)) ++run.branch_mismatches;
    }

    auto loop = run_amplifier_loop(rho6, options.params);
    run.counter_max = loop.counter_max;
    run.m_trace = std::move(loop.m_trace);
    run.halting_trace = std::move(loop.halting_trace);
    run.first_crossing = loop.first_crossing;
    if (run.first_crossing) {
        run.decision = Decision::Sat;
    } else if (run.q_squared == 0.0) {
        run.decision = Decision::Unsat;
    } else {
        run.decision = Decision::Inconclusive;
    }
    return run;
}

}  // namespace ovsat::gqtm
