#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "qsearch/qdam.hpp"
#include "qsearch/resources.hpp"
#include "qsearch/schedule.hpp"
#include "qsearch/sim.hpp"

using namespace qsearch;

namespace {

constexpr std::size_t kActiveCap = 24;

KeyTable table(std::initializer_list<const char*> rows)
{
    KeyTable t;
    for (const char* r : rows) t.push_back(parse_bits(r));
    return t;
}

KeyTable scrambled(std::size_t n, std::size_t m)
{
    KeyTable t;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        t.push_back(parse_bits(oracle::bits_of((5 * i + 3) % (std::size_t{1} << m), m)));
    }
    return t;
}

BasisPattern index_input(const QdamLayout& l, std::uint64_t q)
{
    const auto r = l.registers();
    BasisPattern p(r.total());
    set_register_value(p, r, Register::BinaryIndex, q);
    return p;
}

// |q, u_q, d_q, Xi> with the database holding the key bits.
BasisPattern expected_branch(const QdamLayout& l, const KeyTable& keys, std::uint64_t q, bool onehot)
{
    const auto r = l.registers();
    auto p = index_input(l, q);
    if (onehot) p.set(r.global_index(l.onehot_qubit(q)), true);
    for (std::size_t j = 0; j < l.m; ++j) {
        if (keys[q][j]) p.set(r.global_index(l.data_qubit(j)), true);
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t j = 0; j < l.m; ++j) {
            if (keys[i][j]) p.set(r.global_index(l.database_qubit(i, j)), true);
        }
    }
    return p;
}

std::size_t macro_toffolis(const Circuit& c) { return count_gates(c, GateKind::Toffoli); }

}  // namespace

TEST_CASE("optimized layout sizes")
{
    const auto l = QdamLayout::optimized(3, 2);
    CHECK(l.onehot_size == 8);
    CHECK(l.database_qubits == 16);
    CHECK(l.load_ancillas == 16);
    CHECK(l.fanout_ancillas == 15);
    CHECK(l.ladder_ancillas == 1);
    CHECK(l.total_qubits() == 3 + 8 + 2 + 16 + 32);
    CHECK(l.block_pool().size() == 31);
    CHECK(l.ladder_pool().size() == 1);
    CHECK(l.ladder_pool().qubits.front() == QubitId{Register::Ancilla, 31});

    const auto naive = QdamLayout::naive(3, 2);
    CHECK(naive.onehot_size == 0);
    CHECK(naive.ladder_ancillas == 2);
    CHECK_THROWS_AS(QdamLayout::optimized(0, 2), CircuitError);
    CHECK_THROWS_AS(build_m1(naive), CircuitError);
}

TEST_CASE("[M.1] one-hot mapping")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto l = QdamLayout::optimized(n, 1);
        const auto m1 = lower_with(build_m1(l), l);
        for (std::uint64_t q = 0; q < l.records(); ++q) {
            CAPTURE(n);
            CAPTURE(q);
            auto want = index_input(l, q);
            want.set(l.registers().global_index(l.onehot_qubit(q)), true);
            DenseBasisRun run(m1, index_input(l, q), kActiveCap);
            CHECK(run.deviation_from_basis(want) < 1e-12);
        }
    }
    // n = 2: 00,01,10,11 -> 1000,0100,0010,0001
    const auto l = QdamLayout::optimized(2, 1);
    const auto m1 = lower_with(build_m1(l), l);
    const auto r = l.registers();
    for (std::uint64_t q = 0; q < 4; ++q) {
        SparseState s(r, index_input(l, q));
        s.apply(m1);
        REQUIRE(s.support_size() == 1);
        CHECK(register_value(s.entries()[0].key, r, Register::OnehotIndex) == (8U >> q));
    }
}

TEST_CASE("[M.1] structure and T-depth")
{
    CHECK(t_depth(lower_with(build_m1(QdamLayout::optimized(1, 1)), QdamLayout::optimized(1, 1))) == 0);
    const auto l3 = QdamLayout::optimized(3, 1);
    CHECK(macro_toffolis(build_m1(l3)) == 6);
    CHECK(t_depth(lower_with(build_m1(l3), l3)) <= 8);
}

TEST_CASE("[M.2] loads the addressed record")
{
    const auto l = QdamLayout::optimized(2, 2);
    const auto keys = table({"11", "01", "10", "00"});
    const auto qdam = lower_with(build_qdam(l, keys), l);
    const auto r = l.registers();
    for (std::uint64_t q = 0; q < 4; ++q) {
        SparseState s(r, index_input(l, q));
        s.apply(qdam);
        REQUIRE(s.support_size() == 1);
        CHECK(s.entries()[0].key == expected_branch(l, keys, q, true));
        CHECK(oracle::bits_of(register_value(s.entries()[0].key, r, Register::Data), 2) ==
              format_bits(keys[q]));
    }
}

TEST_CASE("[M.2] with all-zero keys leaves the data register empty")
{
    const auto l = QdamLayout::optimized(2, 2);
    const auto keys = zero_keys(2, 2);
    const auto m2 = lower_with(build_m2(l, keys), l);
    CHECK(t_depth(m2) <= 4);
    const auto qdam = lower_with(build_qdam(l, keys), l);
    for (std::uint64_t q = 0; q < 4; ++q) {
        SparseState s(l.registers(), index_input(l, q));
        s.apply(qdam);
        CHECK(register_value(s.entries()[0].key, l.registers(), Register::Data) == 0);
    }
}

TEST_CASE("[M.2] structure")
{
    const auto l = QdamLayout::optimized(3, 2);
    const auto m2 = build_m2(l, scrambled(3, 2));
    CHECK(macro_toffolis(m2) == 16);
    CHECK(t_depth(lower_with(m2, l)) <= 4);
    CHECK_THROWS_AS(build_m2(l, zero_keys(2, 2)), CircuitError);
    CHECK_THROWS_AS(build_m2(l, zero_keys(3, 1)), CircuitError);
}

TEST_CASE("lowered QDAM is exact on every basis index (classically elided dense run)")
{
    for (std::size_t n = 1; n <= 2; ++n) {
        for (std::size_t m = 1; m <= 2; ++m) {
            const auto l = QdamLayout::optimized(n, m);
            const auto keys = scrambled(n, m);
            const auto qdam = lower_with(build_qdam(l, keys), l);
            const auto undo = invert(qdam);
            for (std::uint64_t q = 0; q < l.records(); ++q) {
                CAPTURE(n);
                CAPTURE(m);
                CAPTURE(q);
                DenseBasisRun run(qdam, index_input(l, q), kActiveCap);
                CHECK(run.deviation_from_basis(expected_branch(l, keys, q, true)) < 1e-12);

                auto round_trip = qdam;
                round_trip.append(undo);
                DenseBasisRun back(round_trip, index_input(l, q), kActiveCap);
                CHECK(back.deviation_from_basis(index_input(l, q)) < 1e-12);
            }
        }
    }
}

TEST_CASE("T-depth bounds on the optimized access circuit")
{
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t m : {1, 2, 5}) {
            CAPTURE(n);
            CAPTURE(m);
            const auto r = measure_layout(n, m, ReportMode::Measured);
            CHECK(r.t_depth_m1 <= 4 * (n - 1));
            CHECK(r.t_depth_m2 <= 4);
            CHECK(r.t_depth_qdam <= 4 * n);
        }
    }
}

TEST_CASE("naive QDAM has the same index/data semantics")
{
    for (std::size_t n = 1; n <= 2; ++n) {
        for (std::size_t m = 1; m <= 2; ++m) {
            const auto l = QdamLayout::naive(n, m);
            const auto keys = scrambled(n, m);
            const auto macro = build_naive_qdam(l, keys);
            CHECK(count_gates(macro, GateKind::Mcz) == m << n);
            const auto c = lower_with(macro, l);
            for (std::uint64_t q = 0; q < l.records(); ++q) {
                DenseBasisRun run(c, index_input(l, q), kActiveCap);
                CHECK(run.deviation_from_basis(expected_branch(l, keys, q, false)) < 1e-12);
            }
        }
    }
    const auto l3 = QdamLayout::naive(3, 2);
    CHECK(count_gates(build_naive_qdam(l3, scrambled(3, 2)), GateKind::Mcz) == 16);
}

TEST_CASE("naive/optimized T-depth ratio grows with n")
{
    double last = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto opt = measure_layout(n, 2, ReportMode::Measured);
        const auto naive = measure_layout(n, 2, ReportMode::NaiveMeasured);
        const double ratio = static_cast<double>(naive.t_depth_qdam) / static_cast<double>(opt.t_depth_qdam);
        CAPTURE(n);
        CHECK(ratio > last);
        last = ratio;
    }
}
