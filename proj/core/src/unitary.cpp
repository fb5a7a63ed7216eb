#include "qsearch/unitary.hpp"

#include <cstdlib>
#include <string>

#include "qsearch/sim.hpp"

namespace qsearch {

std::size_t max_dense_qubits_from_env()
{
    if (const char* v = std::getenv("QSEARCH_MAX_DENSE_QUBITS")) {
        try {
            return static_cast<std::size_t>(std::stoul(v));
        } catch (const std::exception&) {
            // fall through to the default on garbage
        }
    }
    return kDefaultMaxDenseQubits;
}

Eigen::MatrixXcd to_unitary(const Circuit& lowered, std::size_t max_qubits)
{
    const auto k = lowered.registers().total();
    if (k > max_qubits) {
        throw CircuitError("circuit has " + std::to_string(k) + " qubits, dense cap is " +
                           std::to_string(max_qubits) + "; use the sparse simulator");
    }
    if (!lowered.is_lowered()) throw CircuitError("to_unitary needs a lowered circuit");
    const std::size_t dim = std::size_t{1} << k;
    Eigen::MatrixXcd u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        DenseState s(k, col);
        s.apply(lowered);
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = s.amplitudes()[row];
    }
    return u;
}

double unitarity_error(const Eigen::MatrixXcd& u)
{
    const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    std::complex<double> phase{1.0, 0.0};
    if (std::abs(a(r, c)) > 0.0) {
        phase = b(r, c) / a(r, c);
        phase /= std::abs(phase);
    }
    return (a * phase - b).cwiseAbs().maxCoeff();
}

}  // namespace qsearch
