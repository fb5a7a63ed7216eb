#pragma once

// Search over the QDAM-entangled index register.
//
// One kernel iteration is  D . M^dag . O' . M :
//   O' = 1 - 2|d_tau><d_tau| on the data register (phase pi),
//   D  = 1 - 2|psi0><psi0| on the binary index register.
// M^dag restores every register but the index, so O' acts as a phase oracle
// on the index register alone.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/database.hpp"
#include "qsearch/qdam.hpp"
#include "qsearch/resources.hpp"

namespace qsearch {

/// Macro-level reflections; lower them with the layout's pools.
Circuit build_target_reflection(const QdamLayout& layout, const BitPattern& key);
Circuit build_diffusion(const QdamLayout& layout);

/// floor(pi / (4 asin(1/sqrt(N)))), at least 1. Throws for N < 2.
std::size_t optimal_iterations(std::size_t N);

struct SearchPlan {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t N = 0;
    std::size_t iterations = 0;

    static SearchPlan for_database(const Database& padded,
                                   std::optional<std::size_t> iterations = std::nullopt);
};

/// Lowered circuits of one kernel iteration.
struct KernelCircuits {
    QdamLayout layout;
    Circuit m1;
    Circuit m2;
    Circuit qdam;       // m1 then m2
    Circuit qdam_dag;
    Circuit oracle;
    Circuit diffusion;

    static KernelCircuits build(const QdamLayout& layout, const KeyTable& keys, const BitPattern& key);

    /// M, O', M^dag, D in one circuit.
    Circuit kernel() const;
    KernelParts parts() const { return {&m1, &m2, &oracle, &diffusion}; }
};

enum class SearchStatus { Solved, AlgorithmFailure, KeyNotPresent };
std::string_view status_name(SearchStatus s);  // "SOLVED", ...

struct SearchMode {
    std::optional<std::size_t> shots;  // unset: exact probabilities
    std::uint64_t seed = 0;
};

struct TraceEntry {
    std::size_t iteration = 0;
    double amplitude = 0;    // |gamma_tau|
    double probability = 0;  // |gamma_tau|^2
};

struct SearchResult {
    SearchStatus status = SearchStatus::AlgorithmFailure;
    std::optional<std::size_t> candidate_index;
    std::optional<std::string> returned_value;
    double success_probability = 0;
    std::size_t iterations = 0;
    std::vector<TraceEntry> trace;
    ResourceReport resources;

    std::size_t oracle_calls = 0;
    double max_decoupling_leakage = 0;  // worst probability outside the index register after M^dag
    std::size_t peak_support = 0;
    std::vector<std::size_t> counts;    // sample counts per index (sampled mode only)
};

/// `db` must already be padded to a power of two.
SearchResult run_search(const Database& db, const SearchQuery& query, const SearchPlan& plan,
                        const SearchMode& mode = {});

std::string search_result_to_json(const SearchResult& r);

}  // namespace qsearch
