#pragma once

// Quantum data-access machine (QDAM): entangles the binary index register
// with the key bits of the matching database record.
//
//   [M.1]  |q>|0...0>_onehot      -> |q>|u_q>        (q = 0 sets u_0, the leftmost)
//   [M.2]  |u_q>|0>_data|Xi_D>    -> |u_q>|d_q>|Xi_D>
//
// The optimized builders emit macro Toffolis grouped so that lowering turns
// every step into a single T-depth-3 block. The naive baseline writes every
// record bit with its own (n+1)-controlled Toffoli.

#include <cstddef>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/database.hpp"
#include "qsearch/decompose.hpp"

namespace qsearch {

/// Key bits per record: 2^n rows of width m.
using KeyTable = std::vector<BitPattern>;

/// All-zero key table; used when only resources are measured.
KeyTable zero_keys(std::size_t n, std::size_t m);

struct QdamLayout {
    std::size_t n = 0;                 // binary index width
    std::size_t m = 0;                 // data (key) width
    std::size_t onehot_size = 0;       // 2^n, or 0 for the naive layout
    std::size_t database_qubits = 0;   // m * 2^n
    std::size_t load_ancillas = 0;     // m * 2^n
    std::size_t fanout_ancillas = 0;   // max(2^(n-1), m * 2^n) - 1
    std::size_t ladder_ancillas = 0;   // AND-tree ancillas for reflections

    static QdamLayout optimized(std::size_t n, std::size_t m);
    static QdamLayout naive(std::size_t n, std::size_t m);

    std::size_t records() const { return std::size_t{1} << n; }
    RegisterSizes registers() const;
    std::size_t total_qubits() const { return registers().total(); }

    QubitId index_qubit(std::size_t k) const;  // k = 0 is q_1, the most significant bit
    QubitId onehot_qubit(std::size_t j) const;
    QubitId data_qubit(std::size_t j) const;   // j = 0 is d_1
    QubitId database_qubit(std::size_t record, std::size_t bit) const;

    AncillaLease block_pool() const;   // load + fan-out regions
    AncillaLease ladder_pool() const;
    LoweringPools pools() const { return {block_pool(), ladder_pool()}; }
};

Circuit build_m1(const QdamLayout& layout);
Circuit build_m2(const QdamLayout& layout, const KeyTable& keys);
Circuit build_m2(const QdamLayout& layout, const Database& db);
Circuit build_qdam(const QdamLayout& layout, const KeyTable& keys);
Circuit build_qdam(const QdamLayout& layout, const Database& db);
Circuit build_naive_qdam(const QdamLayout& layout, const KeyTable& keys);
Circuit build_naive_qdam(const QdamLayout& layout, const Database& db);

/// Lowers with the layout's ancilla pools.
Circuit lower_with(const Circuit& macro, const QdamLayout& layout);

/// Layout-consistent key table of a padded database (throws on mismatch).
KeyTable keys_for(const QdamLayout& layout, const Database& db);

}  // namespace qsearch
