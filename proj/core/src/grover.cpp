#include "qsearch/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"
#include "qsearch/sim.hpp"

namespace qsearch {

namespace {

// Z on |1...1> of `qubits`; a single qubit needs no macro.
void push_mcz(Circuit& c, std::vector<QubitId> qubits)
{
    if (qubits.size() == 1) {
        c.emit(GateKind::Z, {qubits[0]});
        return;
    }
    c.push(Gate{GateKind::Mcz, std::move(qubits)});
}

std::size_t argmax(const std::vector<double>& v)
{
    // First maximum, so ties resolve to the smallest index.
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

Circuit build_target_reflection(const QdamLayout& layout, const BitPattern& key)
{
    if (key.size() != layout.m) {
        throw CircuitError("target pattern has " + std::to_string(key.size()) +
                           " bits, data register has " + std::to_string(layout.m));
    }
    Circuit c(layout.registers());
    std::vector<QubitId> data;
    for (std::size_t j = 0; j < layout.m; ++j) data.push_back(layout.data_qubit(j));
    for (std::size_t j = 0; j < layout.m; ++j) {
        if (!key[j]) c.emit(GateKind::X, {data[j]});
    }
    push_mcz(c, data);
    for (std::size_t j = 0; j < layout.m; ++j) {
        if (!key[j]) c.emit(GateKind::X, {data[j]});
    }
    return c;
}

Circuit build_diffusion(const QdamLayout& layout)
{
    Circuit c(layout.registers());
    std::vector<QubitId> index;
    for (std::size_t k = 0; k < layout.n; ++k) index.push_back(layout.index_qubit(k));
    for (const auto& q : index) c.emit(GateKind::H, {q});
    for (const auto& q : index) c.emit(GateKind::X, {q});
    push_mcz(c, index);
    for (const auto& q : index) c.emit(GateKind::X, {q});
    for (const auto& q : index) c.emit(GateKind::H, {q});
    return c;
}

std::size_t optimal_iterations(std::size_t N)
{
    if (N < 2) throw std::invalid_argument("optimal_iterations needs N >= 2");
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(N)));
    const auto k = static_cast<std::size_t>(std::floor(std::numbers::pi / (4.0 * theta)));
    return std::max<std::size_t>(1, k);
}

SearchPlan SearchPlan::for_database(const Database& padded, std::optional<std::size_t> iterations)
{
    SearchPlan p;
    p.n = index_width(padded);
    p.m = padded.key_width();
    p.N = padded.size();
    p.iterations = iterations.value_or(optimal_iterations(p.N));
    return p;
}

KernelCircuits KernelCircuits::build(const QdamLayout& layout, const KeyTable& keys,
                                     const BitPattern& key)
{
    KernelCircuits k{layout, lower_with(build_m1(layout), layout),
                     lower_with(build_m2(layout, keys), layout), Circuit(layout.registers()),
                     Circuit(layout.registers()),
                     lower_with(build_target_reflection(layout, key), layout),
                     lower_with(build_diffusion(layout), layout)};
    k.qdam.append(k.m1);
    k.qdam.append(k.m2);
    k.qdam_dag = invert(k.qdam);
    return k;
}

Circuit KernelCircuits::kernel() const
{
    Circuit c = qdam;
    c.append(oracle);
    c.append(qdam_dag);
    c.append(diffusion);
    return c;
}

std::string_view status_name(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Solved: return "SOLVED";
    case SearchStatus::AlgorithmFailure: return "ALGORITHM_FAILURE";
    case SearchStatus::KeyNotPresent: return "KEY_NOT_PRESENT";
    }
    return "?";
}

SearchResult run_search(const Database& db, const SearchQuery& query, const SearchPlan& plan,
                        const SearchMode& mode)
{
    validate_query(db, query);
    if (plan.N != db.size() || plan.n != index_width(db) || plan.m != db.key_width()) {
        throw std::invalid_argument("search plan does not match the database");
    }
    if (plan.iterations == 0) throw std::invalid_argument("search plan needs at least one iteration");
    if (mode.shots && *mode.shots == 0) throw std::invalid_argument("shots must be positive");

    const auto layout = QdamLayout::optimized(plan.n, plan.m);
    const auto key = encode_key(db, query.key_value);
    const auto kc = KernelCircuits::build(layout, db.key_table(), key);
    const auto& regs = layout.registers();
    const std::size_t rest = regs.total() - plan.n;  // index register sits at offset 0

    auto state = SparseState::zero(regs);
    for (std::size_t k = 0; k < plan.n; ++k) {
        state.apply(Gate{GateKind::H, {layout.index_qubit(k)}});
    }

    SearchResult result;
    result.iterations = plan.iterations;
    std::vector<std::vector<double>> dists{index_distribution(state)};
    for (std::size_t it = 0; it < plan.iterations; ++it) {
        state.apply(kc.qdam);
        state.apply(kc.oracle);
        state.apply(kc.qdam_dag);
        ++result.oracle_calls;
        const double leak = probability_where(
            state, [&](const BasisPattern& p) { return p.any_in(plan.n, rest); });
        result.max_decoupling_leakage = std::max(result.max_decoupling_leakage, leak);
        state.apply(kc.diffusion);
        dists.push_back(index_distribution(state));
    }
    result.peak_support = state.peak_support();

    const auto& final_dist = dists.back();
    std::size_t candidate = argmax(final_dist);
    if (mode.shots) {
        std::mt19937_64 rng(mode.seed);
        std::discrete_distribution<std::size_t> pick(final_dist.begin(), final_dist.end());
        result.counts.assign(final_dist.size(), 0);
        for (std::size_t s = 0; s < *mode.shots; ++s) ++result.counts[pick(rng)];
        candidate = static_cast<std::size_t>(
            std::max_element(result.counts.begin(), result.counts.end()) - result.counts.begin());
    }
    result.candidate_index = candidate;
    result.success_probability = std::clamp(final_dist[candidate], 0.0, 1.0);

    // Trace follows the true target when it exists, otherwise the candidate.
    const auto tau = db.find_key(query.key_value);
    const std::size_t traced = tau.value_or(candidate);
    for (std::size_t k = 0; k < dists.size(); ++k) {
        const double p = std::clamp(dists[k][traced], 0.0, 1.0);
        result.trace.push_back({k, std::sqrt(p), p});
    }

    // Classical verification: one more data access on the measured index.
    BasisPattern probe(regs.total());
    set_register_value(probe, regs, Register::BinaryIndex, candidate);
    SparseState check(regs, probe);
    check.apply(kc.qdam);
    bool match = check.support_size() == 1;
    if (match) {
        const auto& out = check.entries().front().key;
        for (std::size_t j = 0; j < plan.m; ++j) {
            if (out.get(regs.global_index(layout.data_qubit(j))) != key[j]) match = false;
        }
    }
    if (db.records()[candidate].sentinel) match = false;

    if (match) {
        result.status = SearchStatus::Solved;
        result.returned_value = db.records()[candidate].values.at(query.return_field);
    } else {
        result.status = tau ? SearchStatus::AlgorithmFailure : SearchStatus::KeyNotPresent;
    }
    result.resources = measure(kc.parts(), plan.n, plan.m, plan.iterations, ReportMode::Measured);
    return result;
}

std::string search_result_to_json(const SearchResult& r)
{
    nlohmann::ordered_json j;
    j["status"] = status_name(r.status);
    j["candidate_index"] = r.candidate_index ? nlohmann::ordered_json(*r.candidate_index) : nullptr;
    j["returned_value"] = r.returned_value ? nlohmann::ordered_json(*r.returned_value) : nullptr;
    j["success_probability"] = r.success_probability;
    j["iterations"] = r.iterations;
    j["oracle_calls"] = r.oracle_calls;
    j["trace"] = nlohmann::ordered_json::array();
    for (const auto& t : r.trace) {
        j["trace"].push_back(
            {{"iteration", t.iteration}, {"amplitude", t.amplitude}, {"probability", t.probability}});
    }
    j["max_decoupling_leakage"] = r.max_decoupling_leakage;
    j["peak_support"] = r.peak_support;
    if (!r.counts.empty()) j["counts"] = r.counts;
    j["resources"] = nlohmann::ordered_json::parse(report_to_json(r.resources));
    return j.dump(2) + "\n";
}

}  // namespace qsearch
