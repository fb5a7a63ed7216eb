#include "qsearch/schedule.hpp"

#include <algorithm>

namespace qsearch {

Scheduler::Scheduler(const RegisterSizes& registers)
    : registers_(registers), layer_(registers.total(), 0), t_stage_(registers.total(), 0)
{
}

void Scheduler::push(const Gate& gate)
{
    if (is_macro(gate.kind)) {
        throw CircuitError("macro gate " + std::string(gate_name(gate.kind)) +
                           " must be lowered before scheduling");
    }
    std::size_t layer = 0;
    std::size_t stage = 0;
    for (const auto& q : gate.operands) {
        if (!registers_.contains(q)) {
            throw CircuitError("qubit " + to_string(q) + " outside declared register");
        }
        const auto g = registers_.global_index(q);
        layer = std::max(layer, layer_[g]);
        stage = std::max(stage, t_stage_[g]);
    }
    ++layer;
    if (is_t_gate(gate.kind)) {
        ++stage;
        ++t_count_;
    }
    if (gate.kind == GateKind::Cnot) ++cnot_count_;
    for (const auto& q : gate.operands) {
        const auto g = registers_.global_index(q);
        layer_[g] = layer;
        t_stage_[g] = stage;
    }
    layers_ = std::max(layers_, layer);
    t_depth_ = std::max(t_depth_, stage);
    last_layer_ = layer;
    last_t_stage_ = is_t_gate(gate.kind) ? stage : 0;
}

ResourceTally Scheduler::tally() const
{
    ResourceTally t;
    t.t_count = t_count_;
    t.t_depth = t_depth_;
    t.cnot_count = cnot_count_;
    t.total_qubits = registers_.total();
    t.total_layers = layers_;
    return t;
}

std::size_t t_depth(const Circuit& lowered) { return resource_tally(lowered).t_depth; }

ResourceTally resource_tally(const Circuit& lowered)
{
    Scheduler s(lowered.registers());
    for (const auto& g : lowered.gates()) s.push(g);
    return s.tally();
}

std::vector<std::size_t> asap_layers(const Circuit& lowered)
{
    Scheduler s(lowered.registers());
    std::vector<std::size_t> out;
    out.reserve(lowered.size());
    for (const auto& g : lowered.gates()) {
        s.push(g);
        out.push_back(s.last_layer());
    }
    return out;
}

std::vector<std::size_t> t_stages(const Circuit& lowered)
{
    Scheduler s(lowered.registers());
    std::vector<std::size_t> out;
    out.reserve(lowered.size());
    for (const auto& g : lowered.gates()) {
        s.push(g);
        out.push_back(s.last_t_stage());
    }
    return out;
}

}  // namespace qsearch
