#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qsearch/circuit.hpp"

namespace qsearch {

inline constexpr std::size_t kDefaultMaxDenseQubits = 14;

/// Cap for dense checks: QSEARCH_MAX_DENSE_QUBITS if set, else 14.
std::size_t max_dense_qubits_from_env();

/// Dense unitary of a lowered circuit over all allocated qubits. Row/column
/// labels follow the global qubit order with qubit 0 most significant.
/// Throws CircuitError when the qubit count exceeds max_qubits.
Eigen::MatrixXcd to_unitary(const Circuit& lowered,
                            std::size_t max_qubits = kDefaultMaxDenseQubits);

/// max |(U^dagger U - I)_{ij}|
double unitarity_error(const Eigen::MatrixXcd& u);

/// Max elementwise deviation between a and b after removing the global phase
/// that best aligns them (taken from the largest entry of b).
double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qsearch
