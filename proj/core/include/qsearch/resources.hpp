#pragma once

// T-depth, query count and T-Cost accounting.
//
// T-Cost = K * T_d, with the kernel depth T_d = 2 T_d(M) + T_d(O') + T_d(D).
// M and its inverse have the same T-depth, so the measured kernel uses the
// same sum with scheduler values in place of the closed-form bounds.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsearch/circuit.hpp"

namespace qsearch {

enum class ReportMode { BoundFormula, Measured, NaiveMeasured };

std::string_view report_mode_name(ReportMode mode);  // "BOUND_FORMULA", ...

struct ResourceReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t N = 0;
    std::size_t t_depth_m1 = 0;
    std::size_t t_depth_m2 = 0;
    std::size_t t_depth_qdam = 0;
    std::size_t t_depth_oracle_reflection = 0;
    std::size_t t_depth_diffusion = 0;
    std::size_t t_depth_kernel = 0;
    std::size_t query_count = 0;
    std::size_t t_cost = 0;
    ReportMode mode = ReportMode::BoundFormula;
    std::size_t qubit_total = 0;
    std::size_t t_count_total = 0;  // T gates over all K kernel iterations

    bool operator==(const ResourceReport&) const = default;
};

/// Reflection bound 6(k-1) with the small-register clamps: 0 for k <= 2, 3 for k = 3.
std::size_t reflection_bound(std::size_t k);

ResourceReport estimate_bounds(std::size_t n, std::size_t m);

/// Lowered subroutines of one kernel iteration. For the naive baseline `m1`
/// is empty and `m2` holds the whole access circuit.
struct KernelParts {
    const Circuit* m1 = nullptr;
    const Circuit* m2 = nullptr;
    const Circuit* oracle = nullptr;
    const Circuit* diffusion = nullptr;
};

ResourceReport measure(const KernelParts& parts, std::size_t n, std::size_t m,
                       std::size_t iterations, ReportMode mode);

/// Builds the resource-mode kernel (all-zero keys) and measures it while
/// streaming the lowered gates, so no lowered circuit is held in memory.
ResourceReport measure_layout(std::size_t n, std::size_t m, ReportMode mode);

struct BenchRow {
    std::size_t N = 0;
    std::size_t K = 0;
    std::size_t td_opt = 0;
    std::size_t td_naive = 0;
    std::size_t tcost_opt = 0;
    std::size_t tcost_naive = 0;
    bool flagged = false;  // optimized kernel depth exceeds sqrt(N)

    double ratio() const { return static_cast<double>(tcost_naive) / static_cast<double>(tcost_opt); }
};

std::vector<BenchRow> bench_scaling(std::size_t n_min, std::size_t n_max, std::size_t m);

inline constexpr std::string_view kBenchCsvHeader = "N,K,td_opt,td_naive,tcost_opt,tcost_naive";
std::string bench_to_csv(const std::vector<BenchRow>& rows);

std::string report_to_json(const ResourceReport& r);
std::string report_to_csv(const ResourceReport& r);  // header line + one row

/// Least-squares y = a x + b.
struct LinearFit {
    double slope = 0;
    double intercept = 0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qsearch
