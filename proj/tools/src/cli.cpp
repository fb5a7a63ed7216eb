#include "qsearch/cli.hpp"

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qsearch/database.hpp"
#include "qsearch/grover.hpp"
#include "qsearch/qdam.hpp"
#include "qsearch/resources.hpp"

namespace qsearch {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
    if (!f) throw InputError("failed writing " + path);
}

struct EstimateArgs {
    std::size_t n = 0, m = 0;
    std::string mode = "bound";
    std::string format = "json";
};

struct SearchArgs {
    std::string db, key, field, out;
    std::optional<std::size_t> iterations, shots;
    std::uint64_t seed = 0;
};

struct CompileArgs {
    std::string db, key, part = "qdam", out;
    bool macro = false;
};

struct BenchArgs {
    std::size_t n_min = 0, n_max = 0, m = 0;
    std::string out;
};

int do_estimate(const EstimateArgs& a, std::ostream& out)
{
    const ReportMode mode = a.mode == "bound"      ? ReportMode::BoundFormula
                            : a.mode == "measured" ? ReportMode::Measured
                                                   : ReportMode::NaiveMeasured;
    if (a.n > 12 && mode != ReportMode::BoundFormula) {
        throw InputError("measured estimates are limited to n <= 12");
    }
    const auto r = measure_layout(a.n, a.m, mode);
    out << (a.format == "csv" ? report_to_csv(r) : report_to_json(r));
    return kExitOk;
}

int do_search(const SearchArgs& a, std::ostream& out)
{
    const auto db = pad_to_power_of_two(load_database_file(a.db));
    const SearchQuery query{a.key, a.field};
    validate_query(db, query);
    const auto plan = SearchPlan::for_database(db, a.iterations);
    SearchMode mode;
    mode.shots = a.shots;
    mode.seed = a.seed;
    const auto result = run_search(db, query, plan, mode);
    const auto doc = search_result_to_json(result);
    if (a.out.empty()) {
        out << doc;
    } else {
        write_file(a.out, doc);
    }
    return result.status == SearchStatus::Solved ? kExitOk : kExitSearchFailed;
}

int do_compile(const CompileArgs& a)
{
    const auto db = pad_to_power_of_two(load_database_file(a.db));
    const auto key = encode_key(db, a.key);
    const std::size_t n = index_width(db);
    const std::size_t m = db.key_width();
    const auto keys = db.key_table();

    const bool naive = a.part == "naive";
    const auto layout = naive ? QdamLayout::naive(n, m) : QdamLayout::optimized(n, m);
    Circuit macro(layout.registers());
    if (a.part == "m1") {
        macro = build_m1(layout);
    } else if (a.part == "m2") {
        macro = build_m2(layout, keys);
    } else if (a.part == "qdam") {
        macro = build_qdam(layout, keys);
    } else if (a.part == "oracle") {
        macro = build_target_reflection(layout, key);
    } else if (a.part == "diffusion") {
        macro = build_diffusion(layout);
    } else if (a.part == "naive") {
        macro = build_naive_qdam(layout, keys);
    } else {  // kernel
        const auto qdam = build_qdam(layout, keys);
        macro = qdam;
        macro.append(build_target_reflection(layout, key));
        macro.append(invert(qdam));
        macro.append(build_diffusion(layout));
    }
    write_file(a.out, circuit_to_json(a.macro ? macro : lower_with(macro, layout)));
    return kExitOk;
}

int do_bench(const BenchArgs& a)
{
    write_file(a.out, bench_to_csv(bench_scaling(a.n_min, a.n_max, a.m)));
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Database search with a T-depth-optimized quantum data-access machine"};
    app.name("qsearch");
    app.require_subcommand(1);

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "T-depth and T-Cost report");
    estimate->add_option("--n", est.n, "Binary index width")->required()->check(CLI::PositiveNumber);
    estimate->add_option("--m", est.m, "Key width")->required()->check(CLI::PositiveNumber);
    estimate->add_option("--mode", est.mode)->check(CLI::IsMember({"bound", "measured", "naive"}));
    estimate->add_option("--format", est.format)->check(CLI::IsMember({"json", "csv"}));

    SearchArgs srch;
    auto* search = app.add_subcommand("search", "Run the search on a database");
    search->add_option("--db", srch.db)->required();
    search->add_option("--key", srch.key, "Key bits to look up")->required();
    search->add_option("--return", srch.field, "Field to return")->required();
    search->add_option("--iterations", srch.iterations)->check(CLI::PositiveNumber);
    auto* shots = search->add_option("--shots", srch.shots, "Sample the index register")
                      ->check(CLI::PositiveNumber);
    search->add_option("--seed", srch.seed)->needs(shots);
    search->add_option("--out", srch.out, "Write the result here instead of stdout");

    CompileArgs comp;
    auto* compile = app.add_subcommand("compile", "Export a circuit as JSON");
    compile->add_option("--db", comp.db)->required();
    compile->add_option("--key", comp.key)->required();
    compile->add_option("--part", comp.part)
        ->check(CLI::IsMember({"m1", "m2", "qdam", "oracle", "diffusion", "kernel", "naive"}));
    compile->add_option("--out", comp.out)->required();
    compile->add_flag("--macro", comp.macro, "Keep Toffoli/MCZ macros unlowered");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Optimized vs naive scaling table (CSV)");
    bench_cmd->add_option("--n-min", bench.n_min)->required();
    bench_cmd->add_option("--n-max", bench.n_max)->required();
    bench_cmd->add_option("--m", bench.m)->required();
    bench_cmd->add_option("--out", bench.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*estimate) return do_estimate(est, out);
        if (*search) return do_search(srch, out);
        if (*compile) return do_compile(comp);
        return do_bench(bench);
    } catch (const std::exception& e) {
        // Database, circuit and argument errors are all input problems.
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace qsearch
