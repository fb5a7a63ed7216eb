#include "qsearch/resources.hpp"

#include <cmath>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qsearch/decompose.hpp"
#include "qsearch/grover.hpp"
#include "qsearch/qdam.hpp"
#include "qsearch/schedule.hpp"

namespace qsearch {

namespace {

// Forwards every gate to several schedulers.
class TeeSink final : public GateSink {
public:
    TeeSink(std::initializer_list<Scheduler*> outs) : outs_(outs) {}
    void push(const Gate& gate) override
    {
        for (auto* s : outs_) s->push(gate);
    }

private:
    std::vector<Scheduler*> outs_;
};

void feed(const Circuit& c, Scheduler& s)
{
    for (const auto& g : c.gates()) s.push(g);
}

void check_widths(std::size_t n, std::size_t m)
{
    if (n < 1 || m < 1) throw std::invalid_argument("resource estimates need n >= 1 and m >= 1");
}

void finish(ResourceReport& r, std::size_t iterations, std::size_t qdam_t, std::size_t oracle_t,
            std::size_t diffusion_t)
{
    r.t_depth_kernel = 2 * r.t_depth_qdam + r.t_depth_oracle_reflection + r.t_depth_diffusion;
    r.query_count = iterations;
    r.t_cost = r.query_count * r.t_depth_kernel;
    r.t_count_total = iterations * (2 * qdam_t + oracle_t + diffusion_t);
}

}  // namespace

std::string_view report_mode_name(ReportMode mode)
{
    switch (mode) {
    case ReportMode::BoundFormula: return "BOUND_FORMULA";
    case ReportMode::Measured: return "MEASURED";
    case ReportMode::NaiveMeasured: return "NAIVE_MEASURED";
    }
    return "?";
}

std::size_t reflection_bound(std::size_t k)
{
    if (k <= 2) return 0;
    if (k == 3) return 3;
    return 6 * (k - 1);
}

ResourceReport estimate_bounds(std::size_t n, std::size_t m)
{
    check_widths(n, m);
    if (n > 40) throw std::invalid_argument("n too large");
    ResourceReport r;
    r.n = n;
    r.m = m;
    r.N = std::size_t{1} << n;
    r.mode = ReportMode::BoundFormula;
    r.t_depth_m1 = 4 * (n - 1);
    r.t_depth_m2 = 4;
    r.t_depth_qdam = 4 * n;
    r.t_depth_oracle_reflection = reflection_bound(m);
    r.t_depth_diffusion = reflection_bound(n);
    // Qubit count follows the optimized layout formula; the bound says nothing about T-count.
    const std::size_t load = m * r.N;
    r.qubit_total = n + r.N + m + m * r.N + load + (std::max(r.N / 2, load) - 1) +
                    (std::max(n, m) > 2 ? std::max(n, m) - 2 : 0);
    finish(r, optimal_iterations(r.N), 0, 0, 0);
    return r;
}

ResourceReport measure(const KernelParts& parts, std::size_t n, std::size_t m,
                       std::size_t iterations, ReportMode mode)
{
    check_widths(n, m);
    if (!parts.m2 || !parts.oracle || !parts.diffusion) {
        throw std::invalid_argument("measure needs the access, oracle and diffusion circuits");
    }
    const auto& regs = parts.m2->registers();
    Scheduler s1(regs), s2(regs), sq(regs), so(regs), sd(regs);
    if (parts.m1) {
        feed(*parts.m1, s1);
        feed(*parts.m1, sq);
    }
    feed(*parts.m2, s2);
    feed(*parts.m2, sq);
    feed(*parts.oracle, so);
    feed(*parts.diffusion, sd);

    ResourceReport r;
    r.n = n;
    r.m = m;
    r.N = std::size_t{1} << n;
    r.mode = mode;
    r.t_depth_m1 = s1.t_depth();
    r.t_depth_m2 = s2.t_depth();
    r.t_depth_qdam = sq.t_depth();
    r.t_depth_oracle_reflection = so.t_depth();
    r.t_depth_diffusion = sd.t_depth();
    r.qubit_total = regs.total();
    finish(r, iterations, sq.tally().t_count, so.tally().t_count, sd.tally().t_count);
    return r;
}

ResourceReport measure_layout(std::size_t n, std::size_t m, ReportMode mode)
{
    check_widths(n, m);
    if (mode == ReportMode::BoundFormula) return estimate_bounds(n, m);
    const bool naive = mode == ReportMode::NaiveMeasured;
    const auto layout = naive ? QdamLayout::naive(n, m) : QdamLayout::optimized(n, m);
    const auto regs = layout.registers();
    const auto pools = layout.pools();
    const auto keys = zero_keys(n, m);

    Scheduler s1(regs), s2(regs), sq(regs), so(regs), sd(regs);
    if (naive) {
        TeeSink tee{&s2, &sq};
        lower_into(build_naive_qdam(layout, keys), pools, tee);
    } else {
        TeeSink tee1{&s1, &sq};
        lower_into(build_m1(layout), pools, tee1);
        TeeSink tee2{&s2, &sq};
        lower_into(build_m2(layout, keys), pools, tee2);
    }
    lower_into(build_target_reflection(layout, BitPattern(m, true)), pools, so);
    lower_into(build_diffusion(layout), pools, sd);

    ResourceReport r;
    r.n = n;
    r.m = m;
    r.N = layout.records();
    r.mode = mode;
    r.t_depth_m1 = s1.t_depth();
    r.t_depth_m2 = s2.t_depth();
    r.t_depth_qdam = sq.t_depth();
    r.t_depth_oracle_reflection = so.t_depth();
    r.t_depth_diffusion = sd.t_depth();
    r.qubit_total = regs.total();
    finish(r, optimal_iterations(r.N), sq.tally().t_count, so.tally().t_count, sd.tally().t_count);
    return r;
}

std::vector<BenchRow> bench_scaling(std::size_t n_min, std::size_t n_max, std::size_t m)
{
    if (n_min < 1 || n_min > n_max || n_max > 12) {
        throw std::invalid_argument("bench range must satisfy 1 <= n-min <= n-max <= 12");
    }
    if (m < 1) throw std::invalid_argument("bench needs m >= 1");
    std::vector<BenchRow> rows;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        const auto opt = measure_layout(n, m, ReportMode::Measured);
        const auto naive = measure_layout(n, m, ReportMode::NaiveMeasured);
        BenchRow row;
        row.N = opt.N;
        row.K = opt.query_count;
        row.td_opt = opt.t_depth_kernel;
        row.td_naive = naive.t_depth_kernel;
        row.tcost_opt = opt.t_cost;
        row.tcost_naive = naive.t_cost;
        row.flagged = static_cast<double>(row.td_opt) > std::sqrt(static_cast<double>(row.N));
        rows.push_back(row);
    }
    return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows)
{
    std::ostringstream out;
    out << kBenchCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.N << ',' << r.K << ',' << r.td_opt << ',' << r.td_naive << ',' << r.tcost_opt << ','
            << r.tcost_naive << '\n';
    }
    return out.str();
}

std::string report_to_json(const ResourceReport& r)
{
    nlohmann::ordered_json j;
    j["mode"] = report_mode_name(r.mode);
    j["n"] = r.n;
    j["m"] = r.m;
    j["N"] = r.N;
    j["t_depth_m1"] = r.t_depth_m1;
    j["t_depth_m2"] = r.t_depth_m2;
    j["t_depth_qdam"] = r.t_depth_qdam;
    j["t_depth_oracle_reflection"] = r.t_depth_oracle_reflection;
    j["t_depth_diffusion"] = r.t_depth_diffusion;
    j["t_depth_kernel"] = r.t_depth_kernel;
    j["query_count"] = r.query_count;
    j["t_cost"] = r.t_cost;
    j["qubit_total"] = r.qubit_total;
    j["t_count_total"] = r.t_count_total;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const ResourceReport& r)
{
    std::ostringstream out;
    out << "mode,n,m,N,t_depth_m1,t_depth_m2,t_depth_qdam,t_depth_oracle_reflection,"
           "t_depth_diffusion,t_depth_kernel,query_count,t_cost,qubit_total,t_count_total\n";
    out << report_mode_name(r.mode) << ',' << r.n << ',' << r.m << ',' << r.N << ',' << r.t_depth_m1
        << ',' << r.t_depth_m2 << ',' << r.t_depth_qdam << ',' << r.t_depth_oracle_reflection << ','
        << r.t_depth_diffusion << ',' << r.t_depth_kernel << ',' << r.query_count << ',' << r.t_cost
        << ',' << r.qubit_total << ',' << r.t_count_total << '\n';
    return out.str();
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line needs at least two paired samples");
    }
    const double k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = k * sxx - sx * sx;
    if (den == 0) throw std::invalid_argument("fit_line: x values are all equal");
    LinearFit f;
    f.slope = (k * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / k;
    return f;
}

}  // namespace qsearch
