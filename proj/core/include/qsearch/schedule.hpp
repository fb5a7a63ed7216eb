#pragma once

// Dependency-aware layering and the T-depth metric.
//
// Two gates depend on each other iff they share a qubit. Two layerings are
// derived from the same gate order:
//  - the ASAP layering, every gate one time step (total_layers);
//  - the T-stage layering, the ASAP layering in which Clifford gates take no
//    time, so a gate's stage is the number of T/TDG gates on the longest
//    dependency path ending at it. T-depth is the number of T-stages.

#include <cstddef>
#include <vector>

#include "qsearch/circuit.hpp"

namespace qsearch {

struct ResourceTally {
    std::size_t t_count = 0;
    std::size_t t_depth = 0;
    std::size_t cnot_count = 0;
    std::size_t total_qubits = 0;
    std::size_t total_layers = 0;

    bool operator==(const ResourceTally&) const = default;
};

/// Incremental scheduler; accepts lowered gates only.
class Scheduler final : public GateSink {
public:
    explicit Scheduler(const RegisterSizes& registers);

    void push(const Gate& gate) override;

    std::size_t t_depth() const { return t_depth_; }
    std::size_t total_layers() const { return layers_; }
    ResourceTally tally() const;

    /// Layer / T-stage of the most recently pushed gate (1-based).
    std::size_t last_layer() const { return last_layer_; }
    std::size_t last_t_stage() const { return last_t_stage_; }

private:
    RegisterSizes registers_;
    std::vector<std::size_t> layer_;    // per qubit: last occupied ASAP layer
    std::vector<std::size_t> t_stage_;  // per qubit: T-stage reached so far
    std::size_t layers_ = 0;
    std::size_t t_depth_ = 0;
    std::size_t t_count_ = 0;
    std::size_t cnot_count_ = 0;
    std::size_t last_layer_ = 0;
    std::size_t last_t_stage_ = 0;
};

/// Throws CircuitError if the circuit still contains macro gates.
std::size_t t_depth(const Circuit& lowered);
ResourceTally resource_tally(const Circuit& lowered);

/// 1-based ASAP layer of every gate, in gate order.
std::vector<std::size_t> asap_layers(const Circuit& lowered);

/// T-stage of every T/TDG gate (0 for Clifford gates), in gate order.
std::vector<std::size_t> t_stages(const Circuit& lowered);

}  // namespace qsearch
