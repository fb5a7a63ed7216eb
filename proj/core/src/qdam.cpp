#include "qsearch/qdam.hpp"

#include <algorithm>
#include <string>

namespace qsearch {

namespace {

std::uint32_t u32(std::size_t v) { return static_cast<std::uint32_t>(v); }

void check_widths(std::size_t n, std::size_t m)
{
    if (n < 1 || m < 1) throw CircuitError("QDAM layout needs n >= 1 and m >= 1");
    if (n > 20) throw CircuitError("QDAM layout limited to n <= 20");
}

void check_keys(const QdamLayout& layout, const KeyTable& keys)
{
    if (keys.size() != layout.records()) {
        throw CircuitError("key table has " + std::to_string(keys.size()) + " rows, layout needs " +
                           std::to_string(layout.records()));
    }
    for (const auto& row : keys) {
        if (row.size() != layout.m) throw CircuitError("key table row width differs from m");
    }
}

void prepare_database(Circuit& c, const QdamLayout& layout, const KeyTable& keys)
{
    for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t j = 0; j < layout.m; ++j) {
            if (keys[i][j]) c.emit(GateKind::X, {layout.database_qubit(i, j)});
        }
    }
}

}  // namespace

KeyTable zero_keys(std::size_t n, std::size_t m)
{
    return KeyTable(std::size_t{1} << n, BitPattern(m, false));
}

QdamLayout QdamLayout::optimized(std::size_t n, std::size_t m)
{
    check_widths(n, m);
    QdamLayout l;
    l.n = n;
    l.m = m;
    l.onehot_size = std::size_t{1} << n;
    l.database_qubits = m << n;
    l.load_ancillas = m << n;
    l.fanout_ancillas = std::max(std::size_t{1} << (n - 1), m << n) - 1;
    l.ladder_ancillas = std::max(n, m) > 2 ? std::max(n, m) - 2 : 0;
    return l;
}

QdamLayout QdamLayout::naive(std::size_t n, std::size_t m)
{
    check_widths(n, m);
    QdamLayout l;
    l.n = n;
    l.m = m;
    l.database_qubits = m << n;
    l.ladder_ancillas = std::max({mcz_ancillas(n + 2), mcz_ancillas(n), mcz_ancillas(m)});
    return l;
}

RegisterSizes QdamLayout::registers() const
{
    return {
        {Register::BinaryIndex, n},
        {Register::OnehotIndex, onehot_size},
        {Register::Data, m},
        {Register::Database, database_qubits},
        {Register::Ancilla, load_ancillas + fanout_ancillas + ladder_ancillas},
    };
}

QubitId QdamLayout::index_qubit(std::size_t k) const { return {Register::BinaryIndex, u32(k)}; }
QubitId QdamLayout::onehot_qubit(std::size_t j) const { return {Register::OnehotIndex, u32(j)}; }
QubitId QdamLayout::data_qubit(std::size_t j) const { return {Register::Data, u32(j)}; }

QubitId QdamLayout::database_qubit(std::size_t record, std::size_t bit) const
{
    return {Register::Database, u32(record * m + bit)};
}

AncillaLease QdamLayout::block_pool() const
{
    return ancilla_range(0, u32(load_ancillas + fanout_ancillas));
}

AncillaLease QdamLayout::ladder_pool() const
{
    return ancilla_range(u32(load_ancillas + fanout_ancillas), u32(ladder_ancillas));
}

Circuit build_m1(const QdamLayout& layout)
{
    if (layout.onehot_size != layout.records()) {
        throw CircuitError("[M.1] needs a layout with a one-hot register");
    }
    Circuit c(layout.registers());
    c.emit(GateKind::X, {layout.onehot_qubit(0)});
    // Step l reads index bit q_{n-l+1} (least significant first) and moves
    // the set position p < 2^(l-1) to p + 2^(l-1) when the bit is one.
    for (std::size_t l = 1; l <= layout.n; ++l) {
        const auto q = layout.index_qubit(layout.n - l);
        const std::size_t half = std::size_t{1} << (l - 1);
        if (l == 1) {
            // u_0 is known to be set here, so the Toffoli reduces to a CNOT.
            c.emit(GateKind::Cnot, {q, layout.onehot_qubit(1)});
        } else {
            for (std::size_t j = 0; j < half; ++j) {
                c.emit(GateKind::Toffoli,
                       {layout.onehot_qubit(j), q, layout.onehot_qubit(j + half)});
            }
        }
        for (std::size_t j = 0; j < half; ++j) {
            c.emit(GateKind::Cnot, {layout.onehot_qubit(j + half), layout.onehot_qubit(j)});
        }
    }
    return c;
}

Circuit build_m2(const QdamLayout& layout, const KeyTable& keys)
{
    if (layout.onehot_size != layout.records()) {
        throw CircuitError("[M.2] needs a layout with a one-hot register");
    }
    check_keys(layout, keys);
    Circuit c(layout.registers());
    prepare_database(c, layout, keys);
    // Every (record, bit) pair gets a Toffoli, zero bits included: the
    // database is quantum data as far as the access circuit is concerned.
    for (std::size_t i = 0; i < layout.records(); ++i) {
        for (std::size_t j = 0; j < layout.m; ++j) {
            c.emit(GateKind::Toffoli,
                   {layout.onehot_qubit(i), layout.database_qubit(i, j), layout.data_qubit(j)});
        }
    }
    return c;
}

Circuit build_m2(const QdamLayout& layout, const Database& db)
{
    return build_m2(layout, keys_for(layout, db));
}

Circuit build_qdam(const QdamLayout& layout, const KeyTable& keys)
{
    Circuit c = build_m1(layout);
    c.append(build_m2(layout, keys));
    return c;
}

Circuit build_qdam(const QdamLayout& layout, const Database& db)
{
    return build_qdam(layout, keys_for(layout, db));
}

Circuit build_naive_qdam(const QdamLayout& layout, const KeyTable& keys)
{
    check_keys(layout, keys);
    Circuit c(layout.registers());
    prepare_database(c, layout, keys);
    for (std::size_t i = 0; i < layout.records(); ++i) {
        // X-conjugate the index bits that are zero in i, so |q = i> reads as all ones.
        std::vector<QubitId> flips;
        for (std::size_t k = 0; k < layout.n; ++k) {
            if (!((i >> (layout.n - 1 - k)) & 1U)) flips.push_back(layout.index_qubit(k));
        }
        for (const auto& q : flips) c.emit(GateKind::X, {q});
        for (std::size_t j = 0; j < layout.m; ++j) {
            Gate mcz{GateKind::Mcz, {}};
            for (std::size_t k = 0; k < layout.n; ++k) mcz.operands.push_back(layout.index_qubit(k));
            mcz.operands.push_back(layout.database_qubit(i, j));
            mcz.operands.push_back(layout.data_qubit(j));
            c.emit(GateKind::H, {layout.data_qubit(j)});
            c.push(mcz);
            c.emit(GateKind::H, {layout.data_qubit(j)});
        }
        for (const auto& q : flips) c.emit(GateKind::X, {q});
    }
    return c;
}

Circuit build_naive_qdam(const QdamLayout& layout, const Database& db)
{
    return build_naive_qdam(layout, keys_for(layout, db));
}

Circuit lower_with(const Circuit& macro, const QdamLayout& layout)
{
    return lower(macro, layout.pools());
}

KeyTable keys_for(const QdamLayout& layout, const Database& db)
{
    if (db.size() != layout.records()) {
        throw CircuitError("database has " + std::to_string(db.size()) +
                           " records, layout expects " + std::to_string(layout.records()) +
                           " (pad it first)");
    }
    if (db.key_width() != layout.m) {
        throw CircuitError("key width " + std::to_string(db.key_width()) +
                           " does not match layout m = " + std::to_string(layout.m));
    }
    return db.key_table();
}

}  // namespace qsearch
