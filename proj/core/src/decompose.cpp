#include "qsearch/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qsearch {

namespace {

void require_distinct(std::initializer_list<QubitId> qs, const char* what)
{
    std::set<QubitId> seen;
    for (const auto& q : qs) {
        if (!seen.insert(q).second) {
            throw CircuitError(std::string(what) + ": duplicate operand " + to_string(q));
        }
    }
}

void require_lease(const AncillaLease& lease, std::size_t needed, const std::set<QubitId>& busy,
                   const char* what)
{
    if (lease.size() < needed) {
        throw CircuitError(std::string(what) + ": needs " + std::to_string(needed) +
                           " ancillas, lease has " + std::to_string(lease.size()));
    }
    std::set<QubitId> seen;
    for (std::size_t i = 0; i < needed; ++i) {
        const auto& q = lease.qubits[i];
        if (q.reg != Register::Ancilla) {
            throw CircuitError(std::string(what) + ": lease qubit " + to_string(q) +
                               " is not an ancilla");
        }
        if (busy.contains(q) || !seen.insert(q).second) {
            throw CircuitError(std::string(what) + ": lease qubit " + to_string(q) +
                               " overlaps the operands");
        }
    }
}

/// CNOTs copying `source` onto `copies` in logarithmically many rounds.
std::vector<std::pair<QubitId, QubitId>> fanout_plan(QubitId source,
                                                     std::span<const QubitId> copies)
{
    std::vector<std::pair<QubitId, QubitId>> plan;
    std::vector<QubitId> holders{source};
    std::size_t next = 0;
    while (next < copies.size()) {
        const auto round = holders.size();
        for (std::size_t h = 0; h < round && next < copies.size(); ++h) {
            plan.emplace_back(holders[h], copies[next]);
            holders.push_back(copies[next]);
            ++next;
        }
    }
    return plan;
}

void emit_cnots(GateSink& out, const std::vector<std::pair<QubitId, QubitId>>& plan, bool reverse)
{
    if (reverse) {
        for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
            out.emit(GateKind::Cnot, {it->first, it->second});
        }
    } else {
        for (const auto& [c, t] : plan) out.emit(GateKind::Cnot, {c, t});
    }
}

}  // namespace

AncillaLease ancilla_range(std::uint32_t first, std::uint32_t count)
{
    AncillaLease lease;
    lease.qubits.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) lease.qubits.push_back({Register::Ancilla, first + i});
    return lease;
}

void emit_ccz(GateSink& out, QubitId a, QubitId b, QubitId c)
{
    require_distinct({a, b, c}, "CCZ");
    // (-1)^{abc} = w^{a + b + c - (a^b) - (a^c) - (b^c) + (a^b^c)}, w = e^{i pi/4}.
    // Parities live on a and c only; b stays a pure control.
    out.emit(GateKind::T, {a});
    out.emit(GateKind::T, {b});
    out.emit(GateKind::T, {c});
    out.emit(GateKind::Cnot, {b, a});
    out.emit(GateKind::Cnot, {a, c});
    out.emit(GateKind::Cnot, {b, c});  // a = a^b, c = a^c
    out.emit(GateKind::Tdg, {a});
    out.emit(GateKind::Tdg, {c});
    out.emit(GateKind::Cnot, {c, a});
    out.emit(GateKind::Cnot, {b, c});  // a = b^c, c = a^b^c
    out.emit(GateKind::Tdg, {a});
    out.emit(GateKind::T, {c});
    out.emit(GateKind::Cnot, {b, c});
    out.emit(GateKind::Cnot, {c, a});
    out.emit(GateKind::Cnot, {b, a});
    out.emit(GateKind::Cnot, {a, c});
}

void emit_toffoli(GateSink& out, const ToffoliOp& op)
{
    require_distinct({op.control0, op.control1, op.target}, "Toffoli");
    out.emit(GateKind::H, {op.target});
    emit_ccz(out, op.control0, op.control1, op.target);
    out.emit(GateKind::H, {op.target});
}

bool is_commuting_block(std::span<const ToffoliOp> ops)
{
    std::set<QubitId> controls;
    std::set<QubitId> targets;
    for (const auto& op : ops) {
        controls.insert(op.control0);
        controls.insert(op.control1);
        targets.insert(op.target);
    }
    return std::none_of(targets.begin(), targets.end(),
                        [&](const QubitId& t) { return controls.contains(t); });
}

std::size_t toffoli_block_ancillas(std::span<const ToffoliOp> ops)
{
    std::map<QubitId, std::size_t> uses;
    for (const auto& op : ops) {
        ++uses[op.control0];
        ++uses[op.control1];
        ++uses[op.target];
    }
    std::size_t copies = 0;
    for (const auto& [q, k] : uses) copies += k - 1;
    return copies;
}

void emit_toffoli_block(GateSink& out, std::span<const ToffoliOp> ops, const AncillaLease& pool)
{
    if (ops.empty()) return;
    for (const auto& op : ops) require_distinct({op.control0, op.control1, op.target}, "Toffoli");
    if (!is_commuting_block(ops)) {
        throw CircuitError("Toffoli block: a target is also used as a control");
    }
    if (ops.size() == 1) {
        emit_toffoli(out, ops.front());
        return;
    }

    // Qubits in first-use order with their use counts.
    std::vector<QubitId> order;
    std::map<QubitId, std::size_t> uses;
    auto note = [&](const QubitId& q) {
        if (uses[q]++ == 0) order.push_back(q);
    };
    for (const auto& op : ops) {
        note(op.control0);
        note(op.control1);
        note(op.target);
    }
    const std::size_t needed = toffoli_block_ancillas(ops);
    require_lease(pool, needed, std::set<QubitId>(order.begin(), order.end()), "Toffoli block");

    // Instance 0 of every qubit is the qubit itself; the rest are copies.
    std::map<QubitId, std::vector<QubitId>> instances;
    std::size_t next = 0;
    for (const auto& q : order) {
        auto& inst = instances[q];
        inst.push_back(q);
        for (std::size_t k = 1; k < uses[q]; ++k) inst.push_back(pool.qubits[next++]);
    }
    std::map<QubitId, std::size_t> handed_out;
    auto take = [&](const QubitId& q) { return instances[q][handed_out[q]++]; };

    std::set<QubitId> target_set;
    for (const auto& op : ops) target_set.insert(op.target);

    std::vector<std::vector<std::pair<QubitId, QubitId>>> control_fanouts;
    for (const auto& q : order) {
        if (target_set.contains(q) || instances[q].size() == 1) continue;
        control_fanouts.push_back(
            fanout_plan(q, std::span(instances[q]).subspan(1)));
        emit_cnots(out, control_fanouts.back(), false);
    }

    // Ops sharing a target run inside one H-conjugated window. Different
    // windows are independent in T-stages, and keeping them sequential in
    // gate order bounds sparse-simulation support.
    std::vector<QubitId> target_order;
    std::map<QubitId, std::vector<std::size_t>> by_target;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        auto& group = by_target[ops[i].target];
        if (group.empty()) target_order.push_back(ops[i].target);
        group.push_back(i);
    }
    for (const auto& t : target_order) {
        out.emit(GateKind::H, {t});
        const auto plan = fanout_plan(t, std::span(instances[t]).subspan(1));
        emit_cnots(out, plan, false);
        for (const auto i : by_target[t]) {
            const auto a = take(ops[i].control0);
            const auto b = take(ops[i].control1);
            const auto c = take(ops[i].target);
            emit_ccz(out, a, b, c);
        }
        emit_cnots(out, plan, true);
        out.emit(GateKind::H, {t});
    }

    for (auto it = control_fanouts.rbegin(); it != control_fanouts.rend(); ++it) {
        emit_cnots(out, *it, true);
    }
}

void emit_mcz(GateSink& out, std::span<const QubitId> qubits, const AncillaLease& ladder)
{
    const std::size_t k = qubits.size();
    {
        std::set<QubitId> seen;
        for (const auto& q : qubits) {
            if (!seen.insert(q).second) {
                throw CircuitError("MCZ: duplicate operand " + to_string(q));
            }
        }
    }
    switch (k) {
    case 0: throw CircuitError("MCZ needs at least one qubit");
    case 1: out.emit(GateKind::Z, {qubits[0]}); return;
    case 2: out.emit(GateKind::Cz, {qubits[0], qubits[1]}); return;
    case 3: emit_ccz(out, qubits[0], qubits[1], qubits[2]); return;
    default: break;
    }

    require_lease(ladder, mcz_ancillas(k), std::set<QubitId>(qubits.begin(), qubits.end()),
                  "MCZ ladder");

    // AND-tree over the first k-2 qubits, apex CCZ with the last two.
    std::vector<ToffoliOp> tree;
    std::vector<QubitId> level(qubits.begin(), qubits.end() - 2);
    std::size_t next = 0;
    while (level.size() > 1) {
        std::vector<QubitId> up;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            const auto anc = ladder.qubits[next++];
            tree.push_back({level[i], level[i + 1], anc});
            up.push_back(anc);
        }
        if (level.size() % 2 == 1) up.push_back(level.back());
        level = std::move(up);
    }
    for (const auto& op : tree) emit_toffoli(out, op);
    emit_ccz(out, level.front(), qubits[k - 2], qubits[k - 1]);
    for (auto it = tree.rbegin(); it != tree.rend(); ++it) emit_toffoli(out, *it);
}

Circuit decompose_toffoli(const RegisterSizes& regs, QubitId control0, QubitId control1,
                          QubitId target)
{
    Circuit c(regs);
    emit_toffoli(c, {control0, control1, target});
    return c;
}

Circuit shared_control_layer(const RegisterSizes& regs, QubitId shared_control,
                             std::span<const ControlTargetPair> pairs,
                             const AncillaLease& fanout_ancillas)
{
    std::set<QubitId> seen{shared_control};
    std::vector<ToffoliOp> ops;
    for (const auto& [second, target] : pairs) {
        if (!seen.insert(second).second || !seen.insert(target).second) {
            throw CircuitError("shared_control_layer: pairs overlap");
        }
        ops.push_back({second, shared_control, target});
    }
    if (!pairs.empty() && fanout_ancillas.size() < pairs.size() - 1) {
        throw CircuitError("shared_control_layer: needs " + std::to_string(pairs.size() - 1) +
                           " fan-out ancillas");
    }
    Circuit c(regs);
    emit_toffoli_block(c, ops, fanout_ancillas);
    return c;
}

Circuit mcz_ladder(const RegisterSizes& regs, std::span<const QubitId> qubits,
                   const AncillaLease& ladder_ancillas)
{
    Circuit c(regs);
    emit_mcz(c, qubits, ladder_ancillas);
    return c;
}

void lower_into(const Circuit& macro, const LoweringPools& pools, GateSink& out)
{
    std::vector<ToffoliOp> run;
    std::set<QubitId> run_controls;
    std::set<QubitId> run_targets;

    auto flush = [&] {
        if (run.empty()) return;
        if (run.size() > 1 && toffoli_block_ancillas(run) <= pools.block.size()) {
            emit_toffoli_block(out, run, pools.block);
        } else {
            for (const auto& op : run) emit_toffoli(out, op);
        }
        run.clear();
        run_controls.clear();
        run_targets.clear();
    };

    for (const auto& g : macro.gates()) {
        if (g.kind == GateKind::Toffoli) {
            const ToffoliOp op{g.operands[0], g.operands[1], g.operands[2]};
            const bool conflicts = run_controls.contains(op.target) ||
                                   run_targets.contains(op.control0) ||
                                   run_targets.contains(op.control1);
            if (conflicts) flush();
            run.push_back(op);
            run_controls.insert(op.control0);
            run_controls.insert(op.control1);
            run_targets.insert(op.target);
            continue;
        }
        flush();
        if (g.kind == GateKind::Mcz) {
            emit_mcz(out, g.operands, pools.ladder);
        } else {
            out.push(g);
        }
    }
    flush();
}

Circuit lower(const Circuit& macro, const LoweringPools& pools)
{
    Circuit out(macro.registers());
    lower_into(macro, pools, out);
    return out;
}

}  // namespace qsearch
