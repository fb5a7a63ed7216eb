#pragma once

// Exact state-vector simulation of lowered circuits.
//
// SparseState keeps only the nonzero amplitudes, keyed by full basis
// patterns. The search state has at most O(N) branches, so this scales to
// the thousands of qubits a QDAM layout allocates.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qsearch/circuit.hpp"

namespace qsearch {

using Amplitude = std::complex<double>;

/// Packed bit assignment of every allocated qubit, indexed by global qubit
/// index (register-major, offset ascending).
class BasisPattern {
public:
    BasisPattern() = default;
    explicit BasisPattern(std::size_t num_qubits);

    std::size_t size() const { return num_qubits_; }

    bool get(std::size_t g) const { return (words_[g >> 6] >> (g & 63)) & 1U; }
    void set(std::size_t g, bool v)
    {
        const auto mask = std::uint64_t{1} << (g & 63);
        words_[g >> 6] = v ? (words_[g >> 6] | mask) : (words_[g >> 6] & ~mask);
    }
    void flip(std::size_t g) { words_[g >> 6] ^= std::uint64_t{1} << (g & 63); }

    bool any_in(std::size_t first, std::size_t count) const;

    /// '0'/'1' string, leftmost character = global qubit 0.
    std::string to_string() const;
    static BasisPattern from_string(std::string_view bits);

    /// Dense basis index, qubit 0 as most significant bit. Requires size() <= 63.
    std::uint64_t to_index() const;
    static BasisPattern from_index(std::size_t num_qubits, std::uint64_t index);

    std::size_t hash() const;

    bool operator==(const BasisPattern&) const = default;
    /// Canonical order: numeric order of the basis label.
    bool operator<(const BasisPattern& other) const;

private:
    std::size_t num_qubits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Value of a register read with offset 0 as most significant bit.
std::uint64_t register_value(const BasisPattern& p, const RegisterSizes& regs, Register reg);
void set_register_value(BasisPattern& p, const RegisterSizes& regs, Register reg,
                        std::uint64_t value);

struct BasisPatternHash {
    std::size_t operator()(const BasisPattern& p) const { return p.hash(); }
};

class SparseState {
public:
    static constexpr double kDefaultTolerance = 1e-14;

    struct Entry {
        BasisPattern key;
        Amplitude amplitude;
    };

    SparseState() = default;
    /// |input> on the given allocation.
    SparseState(const RegisterSizes& registers, BasisPattern input,
                double tolerance = kDefaultTolerance);
    static SparseState zero(const RegisterSizes& registers);

    const RegisterSizes& registers() const { return registers_; }
    double tolerance() const { return tolerance_; }

    void apply(const Gate& gate);
    void apply(const Circuit& lowered);

    std::size_t support_size() const { return entries_.size(); }
    std::size_t peak_support() const { return peak_support_; }
    double norm_squared() const;
    Amplitude amplitude(const BasisPattern& key) const;

    /// Entries sorted into canonical basis order.
    std::vector<Entry> canonical_entries() const;
    const std::vector<Entry>& entries() const { return entries_; }

private:
    void apply_hadamard(std::size_t g);
    void prune();

    RegisterSizes registers_;
    double tolerance_ = kDefaultTolerance;
    std::vector<Entry> entries_;
    std::size_t peak_support_ = 0;
};

/// Functional form of SparseState::apply.
SparseState apply_circuit(SparseState state, const Circuit& lowered);

/// Marginal distribution of the binary-index register (length 2^n), indexed
/// by the register value with offset 0 as most significant bit.
std::vector<double> index_distribution(const SparseState& state);

/// Total probability of branches where `pred` holds.
double probability_where(const SparseState& state,
                         const std::function<bool(const BasisPattern&)>& pred);

// ---------------------------------------------------------------------------
// Dense reference backend.

/// Applies one lowered gate to a dense vector over `num_qubits` qubits.
/// `bit_of[i]` maps operand i to its bit position in the basis index.
void apply_dense_gate(std::vector<Amplitude>& amps, GateKind kind,
                      std::span<const std::size_t> bit_of);

class DenseState {
public:
    DenseState(std::size_t num_qubits, std::uint64_t basis_index);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }

    /// Registers of the circuit must total num_qubits().
    void apply(const Circuit& lowered);

private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

/// Exact run of a lowered circuit on a basis input. Qubits that provably stay
/// in the computational basis are tracked as classical bits; the remaining
/// "active" qubits are held in a dense vector of dimension 2^active.
class DenseBasisRun {
public:
    DenseBasisRun(const Circuit& lowered, const BasisPattern& input,
                  std::size_t max_active_qubits);

    std::size_t active_qubits() const { return active_.size(); }
    Amplitude amplitude(const BasisPattern& key) const;

    /// Max elementwise |psi - e_expected| over the whole state.
    double deviation_from_basis(const BasisPattern& expected) const;

    /// Nonzero entries (|amp| > tol) expanded to full patterns.
    std::vector<SparseState::Entry> nonzero(double tol = 1e-14) const;

private:
    BasisPattern classical_;
    std::vector<std::size_t> active_;           // global indices, ascending
    std::vector<std::ptrdiff_t> active_slot_;   // global -> slot or -1
    std::vector<Amplitude> amps_;
    Amplitude phase_{1.0, 0.0};
};

}  // namespace qsearch
