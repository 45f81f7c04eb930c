#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cvbell {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Default numerical tolerances. Every check that uses one of these takes it
// as a defaulted parameter, so callers can tighten or loosen locally.
namespace tol {
inline constexpr double kHermiticity = 1e-12;  // max |O - O^dag| entry
inline constexpr double kTrace = 1e-10;        // |tr(rho) - 1|
inline constexpr double kPositivity = 1e-10;   // min eigenvalue >= -kPositivity
inline constexpr double kTmsvTail = 1e-10;     // discarded tail mass
inline constexpr double kImagResidue = 1e-8;   // imaginary part of a real bracket
inline constexpr double kViolation = 1e-9;     // inequality margin threshold
}  // namespace tol

// Construction was asked to discard more probability mass than the caller
// allows; raise the Fock cutoff or reduce the state parameter.
class TruncationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quantity that must be real (or otherwise consistent) by construction
// came out numerically inconsistent; indicates corrupted inputs.
class NumericalConsistencyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tensor product of single-mode Fock spaces truncated to dims[j] levels
// (occupation 0 .. dims[j]-1). Basis ordering is row-major over mode
// indices: mode 0 is the most significant digit, fixed for the lifetime
// of the system.
class ModeSystem {
public:
    explicit ModeSystem(std::vector<int> dims);

    int num_modes() const { return static_cast<int>(dims_.size()); }
    int dim(int mode) const { return dims_[static_cast<std::size_t>(mode)]; }
    int total_dim() const { return total_dim_; }
    const std::vector<int>& dims() const { return dims_; }

    bool operator==(const ModeSystem& other) const { return dims_ == other.dims_; }
    bool operator!=(const ModeSystem& other) const { return !(*this == other); }

private:
    std::vector<int> dims_;
    int total_dim_ = 0;
};

// Dense complex matrix on the full tensor-product basis of a ModeSystem.
// Immutable after construction.
class Operator {
public:
    Operator(ModeSystem system, Matrix matrix);

    const ModeSystem& system() const { return system_; }
    const Matrix& matrix() const { return matrix_; }

    Operator dagger() const { return Operator(system_, matrix_.adjoint()); }

    // max_ij |O - O^dag|; 0 for exactly Hermitian matrices.
    double hermiticity_defect() const;
    bool is_hermitian(double tolerance = tol::kHermiticity) const {
        return hermiticity_defect() <= tolerance;
    }

private:
    ModeSystem system_;
    Matrix matrix_;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);

// Acceptance thresholds for density-matrix validation.
struct ValidationLimits {
    double hermiticity = tol::kHermiticity;
    double trace = tol::kTrace;
    double positivity = tol::kPositivity;
};

// Density matrix with enforced invariants: unit trace (1e-10), Hermitian
// (1e-12), positive semidefinite (min eigenvalue >= -1e-10).
// truncation_loss records probability mass discarded when the state was
// projected into the finite basis at construction.
class QuantumState {
public:
    // Normalizes the amplitude vector and forms |psi><psi|.
    static QuantumState pure(ModeSystem system, const CVector& amplitudes);

    // Validates all density-matrix invariants before accepting.
    static QuantumState from_density(ModeSystem system, Matrix rho,
                                     double truncation_loss = 0.0,
                                     const ValidationLimits& limits = {});

    const ModeSystem& system() const { return system_; }
    const Matrix& rho() const { return rho_; }
    bool purity_hint() const { return purity_hint_; }
    double truncation_loss() const { return truncation_loss_; }

private:
    QuantumState(ModeSystem system, Matrix rho, bool purity_hint,
                 double truncation_loss)
        : system_(std::move(system)),
          rho_(std::move(rho)),
          purity_hint_(purity_hint),
          truncation_loss_(truncation_loss) {}

    // Construction paths that preserve invariants exactly (basis padding)
    // skip revalidation through this hook.
    static QuantumState trusted(ModeSystem system, Matrix rho, bool purity_hint,
                                double truncation_loss) {
        return QuantumState(std::move(system), std::move(rho), purity_hint,
                            truncation_loss);
    }

    friend QuantumState embed_with_headroom(const QuantumState&, int);
    friend QuantumState tmsv_state(const ModeSystem&, double, double);

    ModeSystem system_;
    Matrix rho_;
    bool purity_hint_ = false;
    double truncation_loss_ = 0.0;
};

// Mode annihilation operator: <n-1| a |n> = sqrt(n) on the given mode,
// identity on all others.
Operator annihilation(const ModeSystem& system, int mode);

// Generalized amplitude observables for C = a^k:
//   x = (C + C^dag)/2,  y = (C - C^dag)/(2i),  n = C^dag C.
// All exactly Hermitian by construction.
struct AmplitudeObservables {
    Operator x;
    Operator y;
    Operator n;
};
AmplitudeObservables amplitude_observables(const ModeSystem& system, int mode,
                                           int order_k);

// tr(rho * op). Imaginary part is reported as-is; callers asserting reality
// are responsible for checking it.
Complex expectation(const QuantumState& state, const Operator& op);

// Two-mode squeezed vacuum truncated to the system dimensions. Amplitudes
// are proportional to tanh(r)^n on |n,n>. The discarded tail mass of the
// untruncated distribution, tanh(r)^(2d), is recorded as truncation_loss and
// must not exceed tail_tolerance.
QuantumState tmsv_state(const ModeSystem& system, double r,
                        double tail_tolerance = tol::kTmsvTail);

// Pure-loss channel of transmissivity eta on one mode, via the binomial
// Kraus family K_l |n> = sqrt(C(n,l) eta^(n-l) (1-eta)^l) |n-l>.
QuantumState apply_loss(const QuantumState& state, int mode, double eta);

// Transpose the indices of one mode of a two-mode matrix. An involution.
Matrix partial_transpose(const Matrix& m, const ModeSystem& system, int mode);

// Minimum eigenvalue of the partial transpose; a negative value witnesses
// NPT entanglement.
double partial_transpose_min_eig(const QuantumState& state, int mode);

// Same state on a system with extra_levels additional Fock levels per mode
// (zero population above the original cutoffs). Lets observables of order
// up to extra_levels in the raising operator be evaluated without
// truncation artifacts.
QuantumState embed_with_headroom(const QuantumState& state, int extra_levels);

}  // namespace cvbell
