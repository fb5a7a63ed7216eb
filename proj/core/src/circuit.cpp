#include "qsearch/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace qsearch {

namespace {

constexpr std::array<std::string_view, kRegisterCount> kRegisterNames = {
    "BINARY_INDEX", "ONEHOT_INDEX", "DATA", "DATABASE", "ANCILLA",
};

struct GateInfo {
    GateKind kind;
    std::string_view name;
    std::size_t min_arity;
    std::size_t max_arity;
};

constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

constexpr std::array<GateInfo, 11> kGateTable = {{
    {GateKind::H, "H", 1, 1},
    {GateKind::X, "X", 1, 1},
    {GateKind::Z, "Z", 1, 1},
    {GateKind::S, "S", 1, 1},
    {GateKind::Sdg, "SDG", 1, 1},
    {GateKind::T, "T", 1, 1},
    {GateKind::Tdg, "TDG", 1, 1},
    {GateKind::Cnot, "CNOT", 2, 2},
    {GateKind::Cz, "CZ", 2, 2},
    {GateKind::Toffoli, "CCX", 3, 3},
    {GateKind::Mcz, "MCZ", 2, kUnbounded},
}};

const GateInfo& info(GateKind kind)
{
    return kGateTable[static_cast<std::size_t>(kind)];
}

}  // namespace

std::string_view register_name(Register reg)
{
    return kRegisterNames[static_cast<std::size_t>(reg)];
}

std::optional<Register> parse_register(std::string_view name)
{
    for (std::size_t i = 0; i < kRegisterCount; ++i) {
        if (kRegisterNames[i] == name) return kAllRegisters[i];
    }
    return std::nullopt;
}

std::string to_string(QubitId q)
{
    return std::string(register_name(q.reg)) + ":" + std::to_string(q.offset);
}

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> parse_gate_name(std::string_view name)
{
    for (const auto& g : kGateTable) {
        if (g.name == name) return g.kind;
    }
    return std::nullopt;
}

GateKind adjoint(GateKind k)
{
    switch (k) {
    case GateKind::S: return GateKind::Sdg;
    case GateKind::Sdg: return GateKind::S;
    case GateKind::T: return GateKind::Tdg;
    case GateKind::Tdg: return GateKind::T;
    default: return k;
    }
}

RegisterSizes::RegisterSizes(std::initializer_list<std::pair<Register, std::size_t>> sizes)
{
    for (const auto& [reg, n] : sizes) set_size(reg, n);
}

std::size_t RegisterSizes::total() const
{
    return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0});
}

std::size_t RegisterSizes::base(Register reg) const
{
    return std::accumulate(sizes_.begin(), sizes_.begin() + index(reg), std::size_t{0});
}

QubitId RegisterSizes::qubit_at(std::size_t global) const
{
    for (Register reg : kAllRegisters) {
        if (global < size(reg)) return {reg, static_cast<std::uint32_t>(global)};
        global -= size(reg);
    }
    throw CircuitError("global qubit index out of range");
}

void GateSink::emit(GateKind kind, std::initializer_list<QubitId> operands)
{
    push(Gate{kind, std::vector<QubitId>(operands)});
}

void validate_gate(const Gate& gate)
{
    const auto& gi = info(gate.kind);
    const std::size_t arity = gate.operands.size();
    if (arity < gi.min_arity || arity > gi.max_arity) {
        throw CircuitError("gate " + std::string(gi.name) + " has wrong arity " +
                           std::to_string(arity));
    }
    for (std::size_t i = 0; i < arity; ++i) {
        for (std::size_t j = i + 1; j < arity; ++j) {
            if (gate.operands[i] == gate.operands[j]) {
                throw CircuitError("gate " + std::string(gi.name) + " repeats qubit " +
                                   to_string(gate.operands[i]));
            }
        }
    }
}

void Circuit::push(const Gate& gate)
{
    validate_gate(gate);
    for (const auto& q : gate.operands) {
        if (!registers_.contains(q)) {
            throw CircuitError("qubit " + to_string(q) + " outside declared register");
        }
    }
    if (is_macro(gate.kind)) ++macro_count_;
    gates_.push_back(gate);
}

void Circuit::append(const Circuit& other)
{
    for (const auto& g : other.gates()) push(g);
}

Circuit invert(const Circuit& circuit)
{
    Circuit out(circuit.registers());
    const auto gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.push(Gate{adjoint(it->kind), it->operands});
    }
    return out;
}

std::size_t count_gates(const Circuit& circuit, GateKind kind)
{
    const auto gates = circuit.gates();
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [&](const Gate& g) { return g.kind == kind; }));
}

std::string circuit_to_json(const Circuit& circuit)
{
    nlohmann::ordered_json regs = nlohmann::ordered_json::object();
    for (Register reg : kAllRegisters) {
        regs[std::string(register_name(reg))] = circuit.registers().size(reg);
    }
    nlohmann::ordered_json gates = nlohmann::ordered_json::array();
    for (const auto& g : circuit.gates()) {
        nlohmann::ordered_json qubits = nlohmann::ordered_json::array();
        for (const auto& q : g.operands) qubits.push_back(to_string(q));
        gates.push_back({{"gate", gate_name(g.kind)}, {"qubits", std::move(qubits)}});
    }
    nlohmann::ordered_json doc;
    doc["registers"] = std::move(regs);
    doc["gates"] = std::move(gates);
    return doc.dump(1) + "\n";
}

Circuit circuit_from_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CircuitError(std::string("circuit document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("registers") || !doc.contains("gates")) {
        throw CircuitError("circuit document needs \"registers\" and \"gates\"");
    }
    RegisterSizes regs;
    for (const auto& [name, size] : doc["registers"].items()) {
        auto reg = parse_register(name);
        if (!reg || !size.is_number_unsigned()) {
            throw CircuitError("bad register entry \"" + name + "\"");
        }
        regs.set_size(*reg, size.get<std::size_t>());
    }
    Circuit circuit(regs);
    for (const auto& g : doc["gates"]) {
        auto kind = parse_gate_name(g.value("gate", ""));
        if (!kind) throw CircuitError("unknown gate name in circuit document");
        Gate gate{*kind, {}};
        for (const auto& label : g.at("qubits")) {
            const auto s = label.get<std::string>();
            const auto colon = s.find(':');
            auto reg = parse_register(std::string_view(s).substr(0, colon));
            if (colon == std::string::npos || !reg) {
                throw CircuitError("bad qubit label \"" + s + "\"");
            }
            gate.operands.push_back(
                {*reg, static_cast<std::uint32_t>(std::stoul(s.substr(colon + 1)))});
        }
        circuit.push(gate);
    }
    return circuit;
}

}  // namespace qsearch
