#include "cvbell/fock.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

namespace cvbell {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// op on `mode`, identity elsewhere, in the row-major mode ordering.
Matrix embed_single_mode(const ModeSystem& system, int mode, const Matrix& op) {
    Matrix out = Matrix::Identity(1, 1);
    for (int m = 0; m < system.num_modes(); ++m) {
        if (m == mode) {
            out = kron(out, op);
        } else {
            out = kron(out, Matrix::Identity(system.dim(m), system.dim(m)));
        }
    }
    return out;
}

Matrix single_mode_annihilation(int dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

void check_mode(const ModeSystem& system, int mode, const char* where) {
    if (mode < 0 || mode >= system.num_modes()) {
        throw std::invalid_argument(std::string(where) + ": mode index " +
                                    std::to_string(mode) + " out of range for " +
                                    std::to_string(system.num_modes()) + " modes");
    }
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace

ModeSystem::ModeSystem(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw std::invalid_argument("ModeSystem: dims must be nonempty");
    }
    long long total = 1;
    for (int d : dims_) {
        if (d < 1) {
            throw std::invalid_argument("ModeSystem: every dim must be >= 1");
        }
        total *= d;
        if (total > (1 << 20)) {
            throw std::invalid_argument(
                "ModeSystem: total dimension exceeds the dense-matrix budget");
        }
    }
    total_dim_ = static_cast<int>(total);
}

Operator::Operator(ModeSystem system, Matrix matrix)
    : system_(std::move(system)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != system_.total_dim() || matrix_.cols() != system_.total_dim()) {
        throw std::invalid_argument("Operator: matrix dimension " +
                                    std::to_string(matrix_.rows()) + "x" +
                                    std::to_string(matrix_.cols()) +
                                    " does not match system total_dim " +
                                    std::to_string(system_.total_dim()));
    }
}

double Operator::hermiticity_defect() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

namespace {
void check_same_system(const Operator& a, const Operator& b, const char* where) {
    if (a.system() != b.system()) {
        throw std::invalid_argument(std::string(where) +
                                    ": operators live on different systems");
    }
}
}  // namespace

Operator operator*(const Operator& a, const Operator& b) {
    check_same_system(a, b, "operator*");
    return Operator(a.system(), a.matrix() * b.matrix());
}

Operator operator+(const Operator& a, const Operator& b) {
    check_same_system(a, b, "operator+");
    return Operator(a.system(), a.matrix() + b.matrix());
}

QuantumState QuantumState::pure(ModeSystem system, const CVector& amplitudes) {
    if (amplitudes.size() != system.total_dim()) {
        throw std::invalid_argument("pure: amplitude count " +
                                    std::to_string(amplitudes.size()) +
                                    " does not match total_dim " +
                                    std::to_string(system.total_dim()));
    }
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("pure: amplitude vector must have nonzero finite norm");
    }
    const CVector psi = amplitudes / norm;
    Matrix rho = psi * psi.adjoint();
    return QuantumState(std::move(system), std::move(rho), /*purity_hint=*/true,
                        /*truncation_loss=*/0.0);
}

QuantumState QuantumState::from_density(ModeSystem system, Matrix rho,
                                        double truncation_loss,
                                        const ValidationLimits& limits) {
    if (rho.rows() != system.total_dim() || rho.cols() != system.total_dim()) {
        throw std::invalid_argument("from_density: matrix dimension does not match system");
    }
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm <= limits.hermiticity)) {
        throw std::invalid_argument("from_density: matrix is not Hermitian (defect " +
                                    std::to_string(herm) + ")");
    }
    const double trace_err = std::abs(rho.trace() - Complex{1.0, 0.0});
    if (!(trace_err <= limits.trace)) {
        throw std::invalid_argument("from_density: trace deviates from 1 by " +
                                    std::to_string(trace_err));
    }
    const double min_eig = min_eigenvalue(rho);
    if (!(min_eig >= -limits.positivity)) {
        throw std::invalid_argument("from_density: negative eigenvalue " +
                                    std::to_string(min_eig));
    }
    if (!(truncation_loss >= 0.0)) {
        throw std::invalid_argument("from_density: truncation_loss must be >= 0");
    }
    return QuantumState(std::move(system), std::move(rho), /*purity_hint=*/false,
                        truncation_loss);
}

Operator annihilation(const ModeSystem& system, int mode) {
    check_mode(system, mode, "annihilation");
    return Operator(system,
                    embed_single_mode(system, mode, single_mode_annihilation(system.dim(mode))));
}

AmplitudeObservables amplitude_observables(const ModeSystem& system, int mode,
                                           int order_k) {
    check_mode(system, mode, "amplitude_observables");
    if (order_k < 1) {
        throw std::invalid_argument("amplitude_observables: order k must be >= 1");
    }
    const int d = system.dim(mode);
    const Matrix a = single_mode_annihilation(d);
    Matrix c = Matrix::Identity(d, d);
    for (int t = 0; t < order_k; ++t) c = c * a;
    const Matrix cdag = c.adjoint();
    const Matrix x = 0.5 * (c + cdag);
    const Matrix y = Complex{0.0, -0.5} * (c - cdag);
    const Matrix n = cdag * c;
    return AmplitudeObservables{
        Operator(system, embed_single_mode(system, mode, x)),
        Operator(system, embed_single_mode(system, mode, y)),
        Operator(system, embed_single_mode(system, mode, n)),
    };
}

Complex expectation(const QuantumState& state, const Operator& op) {
    if (state.system() != op.system()) {
        throw std::invalid_argument("expectation: state and operator systems differ");
    }
    // tr(rho * op) without forming the product.
    return (state.rho().transpose().cwiseProduct(op.matrix())).sum();
}

QuantumState tmsv_state(const ModeSystem& system, double r, double tail_tolerance) {
    if (system.num_modes() != 2) {
        throw std::invalid_argument("tmsv_state: system must have exactly two modes");
    }
    if (system.dim(0) != system.dim(1)) {
        throw std::invalid_argument("tmsv_state: mode dimensions must be equal");
    }
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("tmsv_state: squeezing parameter must be finite and >= 0");
    }
    const int d = system.dim(0);
    const double lambda = std::tanh(r);
    // Geometric tail of the exact photon-number distribution.
    const double loss = std::pow(lambda, 2 * d);
    if (loss > tail_tolerance) {
        throw TruncationError("tmsv_state: discarded tail mass " + std::to_string(loss) +
                              " exceeds tolerance " + std::to_string(tail_tolerance) +
                              "; raise the Fock cutoff or lower r");
    }
    CVector amps = CVector::Zero(system.total_dim());
    double weight = 1.0;
    for (int n = 0; n < d; ++n) {
        amps(n * d + n) = weight;
        weight *= lambda;
    }
    amps /= amps.norm();
    Matrix rho = amps * amps.adjoint();
    return QuantumState::trusted(system, std::move(rho), /*purity_hint=*/true, loss);
}

QuantumState apply_loss(const QuantumState& state, int mode, double eta) {
    const ModeSystem& system = state.system();
    check_mode(system, mode, "apply_loss");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("apply_loss: eta must lie in [0, 1]");
    }
    const int d = system.dim(mode);
    const int total = system.total_dim();
    int stride = 1;
    for (int m = mode + 1; m < system.num_modes(); ++m) stride *= system.dim(m);

    // kappa(l, n) = sqrt(C(n,l) eta^(n-l) (1-eta)^l): the only nonzero entry
    // of Kraus operator K_l in column n. The Kraus operators are diagonal
    // bands, so the channel contracts in O(d * total^2) by index arithmetic.
    std::vector<double> kappa(static_cast<std::size_t>(d) * d, 0.0);
    for (int l = 0; l < d; ++l) {
        for (int n = l; n < d; ++n) {
            double binom = 1.0;
            for (int t = 1; t <= l; ++t) binom *= static_cast<double>(n - l + t) / t;
            const double w = binom * std::pow(eta, n - l) * std::pow(1.0 - eta, l);
            kappa[static_cast<std::size_t>(l) * d + n] = std::sqrt(w);
        }
    }

    const Matrix& rho = state.rho();
    Matrix out = Matrix::Zero(total, total);
    for (int l = 0; l < d; ++l) {
        const double* row = kappa.data() + static_cast<std::size_t>(l) * d;
        for (int i = 0; i < total; ++i) {
            const int ni = (i / stride) % d;
            if (ni < l || row[ni] == 0.0) continue;
            const int it = i - l * stride;
            for (int j = 0; j < total; ++j) {
                const int nj = (j / stride) % d;
                if (nj < l || row[nj] == 0.0) continue;
                out(it, j - l * stride) += row[ni] * row[nj] * rho(i, j);
            }
        }
    }
    return QuantumState::from_density(system, std::move(out), state.truncation_loss());
}

Matrix partial_transpose(const Matrix& m, const ModeSystem& system, int mode) {
    if (system.num_modes() != 2) {
        throw std::invalid_argument("partial_transpose: only two-mode systems supported");
    }
    check_mode(system, mode, "partial_transpose");
    if (m.rows() != system.total_dim() || m.cols() != system.total_dim()) {
        throw std::invalid_argument("partial_transpose: matrix dimension mismatch");
    }
    const int da = system.dim(0);
    const int db = system.dim(1);
    Matrix out(m.rows(), m.cols());
    for (int n0 = 0; n0 < da; ++n0)
        for (int n1 = 0; n1 < db; ++n1)
            for (int m0 = 0; m0 < da; ++m0)
                for (int m1 = 0; m1 < db; ++m1) {
                    const Complex value = m(n0 * db + n1, m0 * db + m1);
                    if (mode == 0) {
                        out(m0 * db + n1, n0 * db + m1) = value;
                    } else {
                        out(n0 * db + m1, m0 * db + n1) = value;
                    }
                }
    return out;
}

double partial_transpose_min_eig(const QuantumState& state, int mode) {
    if (state.system().num_modes() != 2) {
        throw std::invalid_argument(
            "partial_transpose_min_eig: only two-mode states supported");
    }
    return min_eigenvalue(partial_transpose(state.rho(), state.system(), mode));
}

QuantumState embed_with_headroom(const QuantumState& state, int extra_levels) {
    if (extra_levels < 0) {
        throw std::invalid_argument("embed_with_headroom: extra_levels must be >= 0");
    }
    if (extra_levels == 0) return state;
    const ModeSystem& old_system = state.system();
    std::vector<int> new_dims = old_system.dims();
    for (int& d : new_dims) d += extra_levels;
    ModeSystem new_system(std::move(new_dims));

    const int modes = old_system.num_modes();
    // Flat-index map old -> new under the common row-major ordering.
    std::vector<int> index_map(static_cast<std::size_t>(old_system.total_dim()));
    std::vector<int> digits(static_cast<std::size_t>(modes), 0);
    for (int flat = 0; flat < old_system.total_dim(); ++flat) {
        int rem = flat;
        for (int m = modes - 1; m >= 0; --m) {
            digits[static_cast<std::size_t>(m)] = rem % old_system.dim(m);
            rem /= old_system.dim(m);
        }
        int out = 0;
        for (int m = 0; m < modes; ++m) {
            out = out * new_system.dim(m) + digits[static_cast<std::size_t>(m)];
        }
        index_map[static_cast<std::size_t>(flat)] = out;
    }

    Matrix rho = Matrix::Zero(new_system.total_dim(), new_system.total_dim());
    for (int i = 0; i < old_system.total_dim(); ++i)
        for (int j = 0; j < old_system.total_dim(); ++j)
            rho(index_map[static_cast<std::size_t>(i)],
                index_map[static_cast<std::size_t>(j)]) = state.rho()(i, j);
    return QuantumState::trusted(std::move(new_system), std::move(rho),
                                 state.purity_hint(), state.truncation_loss());
}

}  // namespace cvbell
