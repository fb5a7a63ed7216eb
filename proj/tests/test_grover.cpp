#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "qsearch/grover.hpp"
#include "qsearch/schedule.hpp"
#include "qsearch/sim.hpp"
#include "qsearch/unitary.hpp"

using namespace qsearch;

namespace {

constexpr std::size_t kActiveCap = 20;

// Matrix of `c` restricted to `reg` with every other qubit at |0>. Fails the
// test if any output leaves that subspace.
Eigen::MatrixXcd restricted(const Circuit& c, Register reg)
{
    const auto& r = c.registers();
    const std::size_t k = r.size(reg);
    const std::size_t dim = std::size_t{1} << k;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        BasisPattern in(r.total());
        set_register_value(in, r, reg, col);
        DenseBasisRun run(c, in, kActiveCap);
        for (const auto& e : run.nonzero(1e-14)) {
            auto rest = e.key;
            set_register_value(rest, r, reg, 0);
            CHECK_MESSAGE(!rest.any_in(0, r.total()), "output leaves the register subspace");
            u(static_cast<Eigen::Index>(register_value(e.key, r, reg)), static_cast<Eigen::Index>(col)) =
                e.amplitude;
        }
    }
    return u;
}

Eigen::MatrixXcd reflection_about(const Eigen::VectorXcd& v)
{
    const auto dim = v.size();
    return Eigen::MatrixXcd::Identity(dim, dim) - 2.0 * v * v.adjoint();
}

Database padded(const std::vector<std::string>& keys) { return pad_to_power_of_two(oracle::make_db(keys)); }

}  // namespace

TEST_CASE("target reflection examples")
{
    const auto l1 = QdamLayout::optimized(1, 1);
    const auto z = build_target_reflection(l1, parse_bits("1"));
    REQUIRE(z.size() == 1);
    CHECK(z.gates()[0] == Gate{GateKind::Z, {l1.data_qubit(0)}});

    const auto l2 = QdamLayout::optimized(1, 2);
    const auto o = lower_with(build_target_reflection(l2, parse_bits("10")), l2);
    CHECK(t_depth(o) == 0);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Identity(4, 4);
    want(2, 2) = -1;
    CHECK((restricted(o, Register::Data) - want).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(build_target_reflection(l2, parse_bits("1")), CircuitError);
}

TEST_CASE("target reflection is 1 - 2|d><d| with bounded T-depth")
{
    for (std::size_t m = 1; m <= 6; ++m) {
        const auto l = QdamLayout::optimized(2, m);
        const std::string key = oracle::bits_of((std::size_t{1} << m) / 3, m);
        const auto o = lower_with(build_target_reflection(l, parse_bits(key)), l);
        CAPTURE(m);
        CHECK(t_depth(o) <= (m <= 2 ? 0 : m == 3 ? 3 : 6 * (m - 1)));
        if (m == 3) CHECK(t_depth(o) <= 12);
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(1 << m);
        e((std::size_t{1} << m) / 3) = 1;
        CHECK((restricted(o, Register::Data) - reflection_about(e)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("diffusion is 1 - 2|psi0><psi0| with bounded T-depth")
{
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto l = QdamLayout::optimized(n, 1);
        const auto d = lower_with(build_diffusion(l), l);
        CAPTURE(n);
        CHECK(t_depth(d) <= (n <= 2 ? 0 : n == 3 ? 3 : 6 * (n - 1)));
        if (n == 4) CHECK(t_depth(d) <= 18);
        const auto dim = Eigen::Index{1} << n;
        const Eigen::VectorXcd psi0 = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
        CHECK((restricted(d, Register::BinaryIndex) - reflection_about(psi0)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("optimal iteration count")
{
    CHECK(optimal_iterations(4) == 1);
    CHECK(optimal_iterations(16) == 3);
    CHECK(optimal_iterations(64) == 6);
    CHECK(optimal_iterations(2) == 1);
    for (std::size_t n = 1; n <= 20; ++n) {
        const std::size_t N = std::size_t{1} << n;
        CHECK(optimal_iterations(N) == oracle::grover_iterations(N));
        CHECK(static_cast<double>(optimal_iterations(N)) <= std::ceil(std::numbers::pi / 4 * std::sqrt(double(N))));
    }
    CHECK_THROWS(optimal_iterations(1));
}

TEST_CASE("kernel equals the textbook search operator on the index register")
{
    for (std::size_t n = 1; n <= 2; ++n) {
        for (std::size_t m = n; m <= 2; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            const auto l = QdamLayout::optimized(n, m);
            KeyTable keys;
            for (std::size_t i = 0; i < l.records(); ++i) {
                keys.push_back(parse_bits(oracle::bits_of((3 * i + 1) % (std::size_t{1} << m), m)));
            }
            const std::size_t tau = l.records() - 1;
            const auto kc = KernelCircuits::build(l, keys, keys[tau]);

            Circuit phase = kc.qdam;
            phase.append(kc.oracle);
            phase.append(kc.qdam_dag);
            const Eigen::MatrixXcd u = restricted(kc.diffusion, Register::BinaryIndex) * restricted(phase, Register::BinaryIndex);

            const auto dim = static_cast<Eigen::Index>(l.records());
            const Eigen::VectorXcd psi0 = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
            e(static_cast<Eigen::Index>(tau)) = 1;
            const Eigen::MatrixXcd textbook = -reflection_about(psi0) * reflection_about(e);
            CHECK(distance_up_to_phase(u, textbook) < 1e-10);
        }
    }
}

TEST_CASE("search on four records is exact")
{
    const auto db = padded({"10", "00", "11", "01"});
    const auto plan = SearchPlan::for_database(db);
    CHECK(plan.iterations == 1);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto r = run_search(db, {db.key_of(i), "payload"}, plan);
        CHECK(r.status == SearchStatus::Solved);
        CHECK(r.candidate_index == i);
        CHECK(r.returned_value == db.records()[i].values.at("payload"));
        CHECK(std::abs(r.success_probability - 1.0) < 1e-9);
        CHECK(r.oracle_calls == 1);
    }
}

TEST_CASE("success probability follows the closed form")
{
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto db = padded(oracle::scrambled_keys(n));
        const auto plan = SearchPlan::for_database(db);
        const auto r = run_search(db, {db.key_of(db.size() / 3), "payload"}, plan);
        CAPTURE(n);
        CHECK(r.status == SearchStatus::Solved);
        CHECK(r.oracle_calls == plan.iterations);
        REQUIRE(r.trace.size() == plan.iterations + 1);
        for (const auto& t : r.trace) {
            CHECK(std::abs(t.probability - oracle::grover_success(db.size(), t.iteration)) < 1e-9);
        }
        for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].amplitude > r.trace[k - 1].amplitude);
        CHECK(r.max_decoupling_leakage < 1e-12);
        CHECK(r.peak_support <= 4 * db.size());
        if (n == 4) CHECK(std::abs(r.success_probability - 0.9613) < 1e-3);
    }
}

TEST_CASE("support stays within 4N up to n = 8")
{
    for (std::size_t n = 7; n <= 8; ++n) {
        const auto db = padded(oracle::scrambled_keys(n));
        const auto r = run_search(db, {db.key_of(5), "payload"}, SearchPlan::for_database(db, 1));
        CHECK(r.peak_support <= 4 * db.size());
        CHECK(std::abs(r.success_probability - oracle::grover_success(db.size(), 1)) < 1e-9);
    }
}

TEST_CASE("failure statuses")
{
    // Absent key.
    const auto four = padded({"10", "00", "11", "01"});
    const auto absent = padded({"100", "000", "111", "011"});
    auto r = run_search(absent, {"110", "payload"}, SearchPlan::for_database(absent));
    CHECK(r.status == SearchStatus::KeyNotPresent);
    CHECK_FALSE(r.returned_value.has_value());

    // A sentinel's key is never a match.
    const auto three = padded({"10", "00", "11"});
    REQUIRE(three.records()[3].sentinel);
    r = run_search(three, {three.key_of(3), "payload"}, SearchPlan::for_database(three));
    CHECK(r.status == SearchStatus::KeyNotPresent);
    CHECK(r.candidate_index == 3u);

    // Over-rotation leaves the target unlikely; verification catches it.
    const auto eight = padded(oracle::scrambled_keys(3));
    r = run_search(eight, {eight.key_of(6), "payload"}, SearchPlan::for_database(eight, 4));
    CHECK(r.status == SearchStatus::AlgorithmFailure);
    CHECK(r.oracle_calls == 4);
    CHECK(std::abs(r.trace.back().probability - oracle::grover_success(8, 4)) < 1e-9);

    CHECK_THROWS_AS(run_search(four, {"1", "payload"}, SearchPlan::for_database(four)), DatabaseError);
    CHECK_THROWS_AS(run_search(four, {"10", "nope"}, SearchPlan::for_database(four)), DatabaseError);
    CHECK_THROWS(run_search(four, {"10", "payload"}, SearchPlan::for_database(eight)));
}

TEST_CASE("sampled mode is deterministic per seed")
{
    const auto db = padded(oracle::scrambled_keys(4));
    const auto plan = SearchPlan::for_database(db);
    const SearchQuery q{db.key_of(9), "payload"};
    const auto a = run_search(db, q, plan, {500, 11});
    const auto b = run_search(db, q, plan, {500, 11});
    CHECK(a.counts == b.counts);
    CHECK(search_result_to_json(a) == search_result_to_json(b));
    std::size_t total = 0;
    for (auto c : a.counts) total += c;
    CHECK(total == 500);
    CHECK(a.status == SearchStatus::Solved);
    CHECK(a.candidate_index == 9u);
}

TEST_CASE("result document")
{
    const auto db = padded({"10", "00", "11", "01"});
    const auto r = run_search(db, {"11", "payload"}, SearchPlan::for_database(db));
    const auto doc = search_result_to_json(r);
    for (const char* field : {"\"status\": \"SOLVED\"", "\"candidate_index\": 2", "\"returned_value\": \"010\"",
                              "\"success_probability\"", "\"iterations\": 1", "\"trace\"", "\"resources\"",
                              "\"t_cost\""}) {
        CAPTURE(field);
        CHECK(doc.find(field) != std::string::npos);
    }
    CHECK(r.resources.mode == ReportMode::Measured);
    CHECK(r.resources.query_count == 1);
}
