#pragma once

// Gate-level circuit IR over named registers.
//
// Qubit ordering convention used everywhere a flat index is needed
// (unitaries, basis patterns, exports): register-major in the order of the
// Register enum, offsets ascending within a register. Global index 0 is the
// leftmost qubit, i.e. the most significant bit of a basis label.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsearch {

enum class Register : std::uint8_t {
    BinaryIndex,
    OnehotIndex,
    Data,
    Database,
    Ancilla,
};

inline constexpr std::size_t kRegisterCount = 5;

inline constexpr std::array<Register, kRegisterCount> kAllRegisters = {
    Register::BinaryIndex, Register::OnehotIndex, Register::Data,
    Register::Database,    Register::Ancilla,
};

std::string_view register_name(Register reg);
std::optional<Register> parse_register(std::string_view name);

struct QubitId {
    Register reg = Register::BinaryIndex;
    std::uint32_t offset = 0;

    auto operator<=>(const QubitId&) const = default;
};

std::string to_string(QubitId q);  // "DATA:3"

enum class GateKind : std::uint8_t {
    H,
    X,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Cz,
    Toffoli,  // macro
    Mcz,      // macro
};

/// Export name of a gate kind (Toffoli exports as "CCX").
std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_name(std::string_view name);

constexpr bool is_macro(GateKind k) { return k == GateKind::Toffoli || k == GateKind::Mcz; }
constexpr bool is_t_gate(GateKind k) { return k == GateKind::T || k == GateKind::Tdg; }
GateKind adjoint(GateKind k);

class CircuitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<QubitId> operands;  // controls before target

    bool operator==(const Gate&) const = default;
};

/// Register sizes plus the flat-index arithmetic derived from them.
class RegisterSizes {
public:
    RegisterSizes() = default;
    RegisterSizes(std::initializer_list<std::pair<Register, std::size_t>> sizes);

    std::size_t size(Register reg) const { return sizes_[index(reg)]; }
    void set_size(Register reg, std::size_t n) { sizes_[index(reg)] = n; }

    std::size_t total() const;
    std::size_t base(Register reg) const;
    bool contains(QubitId q) const { return q.offset < size(q.reg); }
    std::size_t global_index(QubitId q) const { return base(q.reg) + q.offset; }
    QubitId qubit_at(std::size_t global) const;

    bool operator==(const RegisterSizes&) const = default;

private:
    static constexpr std::size_t index(Register r) { return static_cast<std::size_t>(r); }
    std::array<std::size_t, kRegisterCount> sizes_{};
};

/// Receiver of an emitted gate stream. Circuits collect gates; schedulers
/// measure them on the fly without materializing the stream.
class GateSink {
public:
    virtual ~GateSink() = default;
    virtual void push(const Gate& gate) = 0;

    void emit(GateKind kind, std::initializer_list<QubitId> operands);
};

/// Checks arity and operand distinctness; throws CircuitError.
void validate_gate(const Gate& gate);

class Circuit final : public GateSink {
public:
    Circuit() = default;
    explicit Circuit(RegisterSizes registers) : registers_(registers) {}

    const RegisterSizes& registers() const { return registers_; }
    std::span<const Gate> gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    /// True iff no macro gate remains.
    bool is_lowered() const { return macro_count_ == 0; }

    void push(const Gate& gate) override;
    void append(const Circuit& other);

    bool operator==(const Circuit& other) const
    {
        return registers_ == other.registers_ && gates_ == other.gates_;
    }

private:
    RegisterSizes registers_;
    std::vector<Gate> gates_;
    std::size_t macro_count_ = 0;
};

/// Reverse order, each gate replaced by its adjoint (T <-> TDG, S <-> SDG).
Circuit invert(const Circuit& circuit);

std::size_t count_gates(const Circuit& circuit, GateKind kind);

/// JSON export: {"registers": {name: size}, "gates": [{"gate", "qubits"}]}.
std::string circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(std::string_view text);

}  // namespace qsearch
