#pragma once

// Reference models that do not go through the library's simulators:
// classical bit-permutation semantics, closed-form search probabilities and
// direct table lookups.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsearch/circuit.hpp"
#include "qsearch/database.hpp"

namespace oracle {

using qsearch::QubitId;
using qsearch::RegisterSizes;

/// Bit mask of qubit q inside a dense basis index (qubit 0 is the MSB).
inline std::uint64_t mask(const RegisterSizes& r, QubitId q)
{
    return std::uint64_t{1} << (r.total() - 1 - r.global_index(q));
}

inline bool bit(const RegisterSizes& r, std::uint64_t x, QubitId q) { return (x & mask(r, q)) != 0; }

struct Ccx {
    QubitId c0, c1, t;
};

inline std::uint64_t apply_ccx(const RegisterSizes& r, std::uint64_t x, const std::vector<Ccx>& ops)
{
    for (const auto& op : ops) {
        if (bit(r, x, op.c0) && bit(r, x, op.c1)) x ^= mask(r, op.t);
    }
    return x;
}

/// Column-wise check of U against a map input -> (output, phase) on the inputs
/// selected by `domain`. Returns the max elementwise error over those columns.
inline double column_error(const Eigen::MatrixXcd& u,
                           const std::function<bool(std::uint64_t)>& domain,
                           const std::function<std::pair<std::uint64_t, std::complex<double>>(std::uint64_t)>& expect)
{
    double worst = 0;
    for (Eigen::Index col = 0; col < u.cols(); ++col) {
        const auto x = static_cast<std::uint64_t>(col);
        if (!domain(x)) continue;
        const auto [y, phase] = expect(x);
        for (Eigen::Index row = 0; row < u.rows(); ++row) {
            const std::complex<double> want = static_cast<std::uint64_t>(row) == y ? phase : 0.0;
            worst = std::max(worst, std::abs(u(row, col) - want));
        }
    }
    return worst;
}

inline double grover_success(std::size_t N, std::size_t k)
{
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(N)));
    const double s = std::sin(static_cast<double>(2 * k + 1) * theta);
    return s * s;
}

inline std::size_t grover_iterations(std::size_t N)
{
    // Same count, found by scanning instead of the closed form floor.
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(N)));
    std::size_t k = 0;
    while (static_cast<double>(k + 1) * 4.0 * theta <= std::numbers::pi) ++k;
    return k == 0 ? 1 : k;
}

inline std::string bits_of(std::uint64_t v, std::size_t width)
{
    std::string s(width, '0');
    for (std::size_t b = 0; b < width; ++b) {
        if ((v >> b) & 1U) s[width - 1 - b] = '1';
    }
    return s;
}

/// Database with the given keys and a 3-bit "payload" field equal to i mod 8.
inline qsearch::Database make_db(const std::vector<std::string>& keys)
{
    std::vector<qsearch::Record> records;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        qsearch::Record r;
        r.values["key"] = keys[i];
        r.values["payload"] = bits_of(i % 8, 3);
        records.push_back(std::move(r));
    }
    return qsearch::Database({{"key", keys.front().size()}, {"payload", 3}}, "key", std::move(records));
}

/// 2^n distinct n-bit keys in a scrambled order (i -> (5i + 3) mod 2^n).
inline std::vector<std::string> scrambled_keys(std::size_t n)
{
    const std::size_t N = std::size_t{1} << n;
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < N; ++i) keys.push_back(bits_of((5 * i + 3) % N, n));
    return keys;
}

/// Random lowered circuit over `qubits` qubits split across two registers.
inline qsearch::Circuit random_lowered_circuit(std::mt19937_64& rng, std::size_t qubits, std::size_t gates)
{
    using qsearch::GateKind;
    const std::size_t first = qubits / 2;
    qsearch::Circuit c({{qsearch::Register::BinaryIndex, first}, {qsearch::Register::Ancilla, qubits - first}});
    const auto& r = c.registers();
    static constexpr GateKind one[] = {GateKind::H, GateKind::X, GateKind::Z, GateKind::S,
                                       GateKind::Sdg, GateKind::T, GateKind::Tdg};
    for (std::size_t i = 0; i < gates; ++i) {
        const auto a = r.qubit_at(rng() % qubits);
        if (qubits < 2 || rng() % 3 != 0) {
            c.emit(one[rng() % std::size(one)], {a});
            continue;
        }
        auto b = a;
        while (b == a) b = r.qubit_at(rng() % qubits);
        c.emit(rng() % 2 ? GateKind::Cnot : GateKind::Cz, {a, b});
    }
    return c;
}

}  // namespace oracle
