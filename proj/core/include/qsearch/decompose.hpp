#pragma once

// Lowering of macro gates to Clifford+T.
//
// Every Toffoli is realized as H(target) . CCZ . H(target), with CCZ as the
// exact 7-T phase polynomial of T-depth 3. Commuting Toffolis that share
// qubits are parallelized by fanning each shared qubit out onto borrowed
// ancillas, so the whole block still costs T-depth 3.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qsearch/circuit.hpp"

namespace qsearch {

enum class LeaseContract {
    BorrowedZeroReturnedZero,
    Persistent,
};

struct AncillaLease {
    std::vector<QubitId> qubits;
    LeaseContract contract = LeaseContract::BorrowedZeroReturnedZero;

    std::size_t size() const { return qubits.size(); }
};

/// Contiguous slice of the ANCILLA register.
AncillaLease ancilla_range(std::uint32_t first, std::uint32_t count);

struct ToffoliOp {
    QubitId control0;
    QubitId control1;  // never a CNOT target in the lowered form
    QubitId target;
};

/// (second control, target) for shared_control_layer.
using ControlTargetPair = std::pair<QubitId, QubitId>;

// Emitters append lowered gates to a sink.

void emit_ccz(GateSink& out, QubitId a, QubitId anchor, QubitId c);
void emit_toffoli(GateSink& out, const ToffoliOp& op);

/// Ancillas needed to run all ops in one T-depth-3 stage.
std::size_t toffoli_block_ancillas(std::span<const ToffoliOp> ops);

/// True iff no op's target is another op's control (so all ops commute).
bool is_commuting_block(std::span<const ToffoliOp> ops);

void emit_toffoli_block(GateSink& out, std::span<const ToffoliOp> ops, const AncillaLease& pool);

/// Ancillas used by emit_mcz on k qubits.
constexpr std::size_t mcz_ancillas(std::size_t k) { return k > 3 ? k - 3 : 0; }

/// Z on |1...1> of `qubits` (k = c + 1 qubits, c controls).
void emit_mcz(GateSink& out, std::span<const QubitId> qubits, const AncillaLease& ladder);

// Fragment builders.

Circuit decompose_toffoli(const RegisterSizes& regs, QubitId control0, QubitId control1,
                          QubitId target);

Circuit shared_control_layer(const RegisterSizes& regs, QubitId shared_control,
                             std::span<const ControlTargetPair> pairs,
                             const AncillaLease& fanout_ancillas);

Circuit mcz_ladder(const RegisterSizes& regs, std::span<const QubitId> qubits,
                   const AncillaLease& ladder_ancillas);

struct LoweringPools {
    AncillaLease block;   // fan-out copies for parallel Toffoli runs
    AncillaLease ladder;  // AND-tree ancillas for MCZ
};

/// Lowers every macro gate. Each maximal run of consecutive, mutually
/// commuting Toffolis becomes one parallel block when `pools.block` is large
/// enough; otherwise the run is lowered one Toffoli at a time.
void lower_into(const Circuit& macro, const LoweringPools& pools, GateSink& out);
Circuit lower(const Circuit& macro, const LoweringPools& pools = {});

}  // namespace qsearch
