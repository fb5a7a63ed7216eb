#include "qsearch/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace qsearch {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Amplitude kOmega{kInvSqrt2, kInvSqrt2};  // e^{i pi/4}
const Amplitude kI{0.0, 1.0};

/// Phase picked up by the |1> component under a single-qubit diagonal gate.
Amplitude diagonal_phase(GateKind kind)
{
    switch (kind) {
    case GateKind::Z: return {-1.0, 0.0};
    case GateKind::S: return kI;
    case GateKind::Sdg: return -kI;
    case GateKind::T: return kOmega;
    case GateKind::Tdg: return std::conj(kOmega);
    default: throw CircuitError("not a single-qubit diagonal gate");
    }
}

bool is_single_diagonal(GateKind k)
{
    return k == GateKind::Z || k == GateKind::S || k == GateKind::Sdg || k == GateKind::T ||
           k == GateKind::Tdg;
}

void require_lowered(const Gate& gate)
{
    if (is_macro(gate.kind)) {
        throw CircuitError("macro gate " + std::string(gate_name(gate.kind)) +
                           " must be lowered before simulation");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// BasisPattern

BasisPattern::BasisPattern(std::size_t num_qubits)
    : num_qubits_(num_qubits), words_((num_qubits + 63) / 64, 0)
{
}

bool BasisPattern::any_in(std::size_t first, std::size_t count) const
{
    for (std::size_t g = first; g < first + count; ++g) {
        if (get(g)) return true;
    }
    return false;
}

std::string BasisPattern::to_string() const
{
    std::string s(num_qubits_, '0');
    for (std::size_t g = 0; g < num_qubits_; ++g) {
        if (get(g)) s[g] = '1';
    }
    return s;
}

BasisPattern BasisPattern::from_string(std::string_view bits)
{
    BasisPattern p(bits.size());
    for (std::size_t g = 0; g < bits.size(); ++g) {
        if (bits[g] == '1') {
            p.set(g, true);
        } else if (bits[g] != '0') {
            throw std::invalid_argument("basis pattern must contain only '0'/'1'");
        }
    }
    return p;
}

std::uint64_t BasisPattern::to_index() const
{
    if (num_qubits_ > 63) throw std::out_of_range("basis pattern too wide for a dense index");
    std::uint64_t idx = 0;
    for (std::size_t g = 0; g < num_qubits_; ++g) {
        idx = (idx << 1) | (get(g) ? 1U : 0U);
    }
    return idx;
}

BasisPattern BasisPattern::from_index(std::size_t num_qubits, std::uint64_t index)
{
    BasisPattern p(num_qubits);
    for (std::size_t g = 0; g < num_qubits; ++g) {
        p.set(g, (index >> (num_qubits - 1 - g)) & 1U);
    }
    return p;
}

std::size_t BasisPattern::hash() const
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ num_qubits_;
    for (auto w : words_) {
        // splitmix64 finalizer per word
        std::uint64_t z = w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h ^= z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
}

bool BasisPattern::operator<(const BasisPattern& other) const
{
    // Qubit 0 is the most significant bit; within a word that is the lowest bit.
    for (std::size_t w = 0; w < words_.size(); ++w) {
        const auto diff = words_[w] ^ other.words_[w];
        if (diff != 0) {
            const auto low = diff & (~diff + 1);
            return (other.words_[w] & low) != 0;
        }
    }
    return false;
}

std::uint64_t register_value(const BasisPattern& p, const RegisterSizes& regs, Register reg)
{
    const auto base = regs.base(reg);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < regs.size(reg); ++i) {
        v = (v << 1) | (p.get(base + i) ? 1U : 0U);
    }
    return v;
}

void set_register_value(BasisPattern& p, const RegisterSizes& regs, Register reg,
                        std::uint64_t value)
{
    const auto base = regs.base(reg);
    const auto n = regs.size(reg);
    for (std::size_t i = 0; i < n; ++i) {
        p.set(base + i, (value >> (n - 1 - i)) & 1U);
    }
}

// ---------------------------------------------------------------------------
// SparseState

SparseState::SparseState(const RegisterSizes& registers, BasisPattern input, double tolerance)
    : registers_(registers), tolerance_(tolerance)
{
    if (input.size() != registers.total()) {
        throw CircuitError("basis pattern width does not match the register allocation");
    }
    entries_.push_back({std::move(input), Amplitude{1.0, 0.0}});
    peak_support_ = 1;
}

SparseState SparseState::zero(const RegisterSizes& registers)
{
    return SparseState(registers, BasisPattern(registers.total()));
}

void SparseState::apply(const Gate& gate)
{
    require_lowered(gate);
    std::array<std::size_t, 2> g{};
    for (std::size_t i = 0; i < gate.operands.size(); ++i) {
        if (!registers_.contains(gate.operands[i])) {
            throw CircuitError("qubit " + to_string(gate.operands[i]) +
                               " outside the simulated allocation");
        }
        g[i] = registers_.global_index(gate.operands[i]);
    }

    switch (gate.kind) {
    case GateKind::H:
        apply_hadamard(g[0]);
        break;
    case GateKind::X:
        for (auto& e : entries_) e.key.flip(g[0]);
        break;
    case GateKind::Cnot:
        for (auto& e : entries_) {
            if (e.key.get(g[0])) e.key.flip(g[1]);
        }
        break;
    case GateKind::Cz:
        for (auto& e : entries_) {
            if (e.key.get(g[0]) && e.key.get(g[1])) e.amplitude = -e.amplitude;
        }
        break;
    default: {
        const auto phase = diagonal_phase(gate.kind);
        for (auto& e : entries_) {
            if (e.key.get(g[0])) e.amplitude *= phase;
        }
        break;
    }
    }
    peak_support_ = std::max(peak_support_, entries_.size());
}

void SparseState::apply(const Circuit& lowered)
{
    if (!(lowered.registers() == registers_)) {
        throw CircuitError("circuit allocation differs from the simulated state");
    }
    for (const auto& gate : lowered.gates()) apply(gate);
}

void SparseState::apply_hadamard(std::size_t g)
{
    std::vector<Entry> next;
    next.reserve(entries_.size() * 2);
    std::unordered_map<BasisPattern, std::size_t, BasisPatternHash> slot;
    slot.reserve(entries_.size() * 2);

    auto add = [&](BasisPattern key, Amplitude a) {
        auto [it, inserted] = slot.try_emplace(key, next.size());
        if (inserted) {
            next.push_back({std::move(key), a});
        } else {
            next[it->second].amplitude += a;
        }
    };

    for (auto& e : entries_) {
        const bool one = e.key.get(g);
        const Amplitude a = e.amplitude * kInvSqrt2;
        BasisPattern k0 = e.key;
        k0.set(g, false);
        BasisPattern k1 = std::move(e.key);
        k1.set(g, true);
        add(std::move(k0), a);
        add(std::move(k1), one ? -a : a);
    }
    entries_ = std::move(next);
    prune();
}

void SparseState::prune()
{
    std::erase_if(entries_, [&](const Entry& e) { return std::abs(e.amplitude) < tolerance_; });
}

double SparseState::norm_squared() const
{
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e.amplitude);
    return s;
}

Amplitude SparseState::amplitude(const BasisPattern& key) const
{
    for (const auto& e : entries_) {
        if (e.key == key) return e.amplitude;
    }
    return {0.0, 0.0};
}

std::vector<SparseState::Entry> SparseState::canonical_entries() const
{
    auto out = entries_;
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    return out;
}

SparseState apply_circuit(SparseState state, const Circuit& lowered)
{
    state.apply(lowered);
    return state;
}

std::vector<double> index_distribution(const SparseState& state)
{
    const auto n = state.registers().size(Register::BinaryIndex);
    if (n >= 32) throw CircuitError("binary index register too wide for a distribution");
    std::vector<double> dist(std::size_t{1} << n, 0.0);
    for (const auto& e : state.entries()) {
        dist[register_value(e.key, state.registers(), Register::BinaryIndex)] +=
            std::norm(e.amplitude);
    }
    return dist;
}

double probability_where(const SparseState& state,
                         const std::function<bool(const BasisPattern&)>& pred)
{
    double p = 0.0;
    for (const auto& e : state.entries()) {
        if (pred(e.key)) p += std::norm(e.amplitude);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Dense backend

void apply_dense_gate(std::vector<Amplitude>& amps, GateKind kind,
                      std::span<const std::size_t> bit_of)
{
    const std::size_t dim = amps.size();
    switch (kind) {
    case GateKind::H: {
        const std::size_t m = std::size_t{1} << bit_of[0];
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & m) continue;
            const auto a0 = amps[i];
            const auto a1 = amps[i | m];
            amps[i] = (a0 + a1) * kInvSqrt2;
            amps[i | m] = (a0 - a1) * kInvSqrt2;
        }
        break;
    }
    case GateKind::X: {
        const std::size_t m = std::size_t{1} << bit_of[0];
        for (std::size_t i = 0; i < dim; ++i) {
            if (!(i & m)) std::swap(amps[i], amps[i | m]);
        }
        break;
    }
    case GateKind::Cnot: {
        const std::size_t c = std::size_t{1} << bit_of[0];
        const std::size_t t = std::size_t{1} << bit_of[1];
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & c) && !(i & t)) std::swap(amps[i], amps[i | t]);
        }
        break;
    }
    case GateKind::Cz: {
        const std::size_t both = (std::size_t{1} << bit_of[0]) | (std::size_t{1} << bit_of[1]);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & both) == both) amps[i] = -amps[i];
        }
        break;
    }
    default: {
        if (!is_single_diagonal(kind)) {
            throw CircuitError("dense backend accepts lowered gates only");
        }
        const auto phase = diagonal_phase(kind);
        const std::size_t m = std::size_t{1} << bit_of[0];
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & m) amps[i] *= phase;
        }
        break;
    }
    }
}

DenseState::DenseState(std::size_t num_qubits, std::uint64_t basis_index)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0})
{
    if (num_qubits > 30) throw CircuitError("dense state limited to 30 qubits");
    amps_.at(basis_index) = 1.0;
}

void DenseState::apply(const Circuit& lowered)
{
    const auto& regs = lowered.registers();
    if (regs.total() != num_qubits_) {
        throw CircuitError("circuit allocation differs from the dense state width");
    }
    std::array<std::size_t, 2> bits{};
    for (const auto& gate : lowered.gates()) {
        require_lowered(gate);
        for (std::size_t i = 0; i < gate.operands.size(); ++i) {
            bits[i] = num_qubits_ - 1 - regs.global_index(gate.operands[i]);
        }
        apply_dense_gate(amps_, gate.kind, std::span(bits.data(), gate.operands.size()));
    }
}

DenseBasisRun::DenseBasisRun(const Circuit& lowered, const BasisPattern& input,
                             std::size_t max_active_qubits)
    : classical_(input)
{
    const auto& regs = lowered.registers();
    const auto total = regs.total();
    if (input.size() != total) {
        throw CircuitError("basis pattern width does not match the register allocation");
    }

    // A qubit leaves the computational basis only through H or through a
    // CNOT whose control already left it.
    std::vector<char> active(total, 0);
    for (const auto& gate : lowered.gates()) {
        require_lowered(gate);
        if (gate.kind == GateKind::H) active[regs.global_index(gate.operands[0])] = 1;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& gate : lowered.gates()) {
            if (gate.kind != GateKind::Cnot) continue;
            const auto c = regs.global_index(gate.operands[0]);
            const auto t = regs.global_index(gate.operands[1]);
            if (active[c] && !active[t]) {
                active[t] = 1;
                changed = true;
            }
        }
    }

    active_slot_.assign(total, -1);
    for (std::size_t g = 0; g < total; ++g) {
        if (active[g]) {
            active_slot_[g] = static_cast<std::ptrdiff_t>(active_.size());
            active_.push_back(g);
        }
    }
    if (active_.size() > max_active_qubits) {
        throw CircuitError("circuit needs " + std::to_string(active_.size()) +
                           " dense qubits, cap is " + std::to_string(max_active_qubits));
    }

    const std::size_t a = active_.size();
    std::uint64_t start = 0;
    for (std::size_t s = 0; s < a; ++s) {
        start = (start << 1) | (classical_.get(active_[s]) ? 1U : 0U);
        classical_.set(active_[s], false);
    }
    amps_.assign(std::size_t{1} << a, Amplitude{0.0, 0.0});
    amps_[start] = 1.0;

    auto bit = [&](std::size_t g) { return a - 1 - static_cast<std::size_t>(active_slot_[g]); };

    for (const auto& gate : lowered.gates()) {
        std::array<std::size_t, 2> g{};
        for (std::size_t i = 0; i < gate.operands.size(); ++i) {
            g[i] = regs.global_index(gate.operands[i]);
        }
        const bool act0 = active[g[0]] != 0;
        switch (gate.kind) {
        case GateKind::H: {
            const std::size_t b = bit(g[0]);
            apply_dense_gate(amps_, GateKind::H, std::span(&b, 1));
            break;
        }
        case GateKind::Cnot: {
            const bool act1 = active[g[1]] != 0;
            if (act0) {
                const std::array<std::size_t, 2> b{bit(g[0]), bit(g[1])};
                apply_dense_gate(amps_, GateKind::Cnot, b);
            } else if (classical_.get(g[0])) {
                if (act1) {
                    const std::size_t b = bit(g[1]);
                    apply_dense_gate(amps_, GateKind::X, std::span(&b, 1));
                } else {
                    classical_.flip(g[1]);
                }
            }
            break;
        }
        case GateKind::Cz: {
            const bool act1 = active[g[1]] != 0;
            if (act0 && act1) {
                const std::array<std::size_t, 2> b{bit(g[0]), bit(g[1])};
                apply_dense_gate(amps_, GateKind::Cz, b);
            } else if (act0 || act1) {
                const auto cl = act0 ? g[1] : g[0];
                const auto qu = act0 ? g[0] : g[1];
                if (classical_.get(cl)) {
                    const std::size_t b = bit(qu);
                    apply_dense_gate(amps_, GateKind::Z, std::span(&b, 1));
                }
            } else if (classical_.get(g[0]) && classical_.get(g[1])) {
                phase_ = -phase_;
            }
            break;
        }
        case GateKind::X:
            if (act0) {
                const std::size_t b = bit(g[0]);
                apply_dense_gate(amps_, GateKind::X, std::span(&b, 1));
            } else {
                classical_.flip(g[0]);
            }
            break;
        default:
            if (act0) {
                const std::size_t b = bit(g[0]);
                apply_dense_gate(amps_, gate.kind, std::span(&b, 1));
            } else if (classical_.get(g[0])) {
                phase_ *= diagonal_phase(gate.kind);
            }
            break;
        }
    }
}

Amplitude DenseBasisRun::amplitude(const BasisPattern& key) const
{
    std::uint64_t idx = 0;
    for (std::size_t g = 0; g < key.size(); ++g) {
        if (active_slot_[g] >= 0) {
            idx = (idx << 1) | (key.get(g) ? 1U : 0U);
        } else if (key.get(g) != classical_.get(g)) {
            return {0.0, 0.0};
        }
    }
    return phase_ * amps_[idx];
}

double DenseBasisRun::deviation_from_basis(const BasisPattern& expected) const
{
    bool classical_match = true;
    std::uint64_t target = 0;
    for (std::size_t g = 0; g < expected.size(); ++g) {
        if (active_slot_[g] >= 0) {
            target = (target << 1) | (expected.get(g) ? 1U : 0U);
        } else if (expected.get(g) != classical_.get(g)) {
            classical_match = false;
        }
    }
    double worst = classical_match ? 0.0 : 1.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const Amplitude want = (classical_match && i == target) ? Amplitude{1.0, 0.0}
                                                                : Amplitude{0.0, 0.0};
        worst = std::max(worst, std::abs(phase_ * amps_[i] - want));
    }
    return worst;
}

std::vector<SparseState::Entry> DenseBasisRun::nonzero(double tol) const
{
    std::vector<SparseState::Entry> out;
    const std::size_t a = active_.size();
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (std::abs(amps_[i]) <= tol) continue;
        BasisPattern key = classical_;
        for (std::size_t s = 0; s < a; ++s) {
            key.set(active_[s], (i >> (a - 1 - s)) & 1U);
        }
        out.push_back({std::move(key), phase_ * amps_[i]});
    }
    return out;
}

}  // namespace qsearch
