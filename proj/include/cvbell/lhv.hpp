#pragma once

#include <cstdint>
#include <vector>

#include "cvbell/inequality.hpp"

namespace cvbell {

// One local-realistic outcome: quadrature amplitudes and intensities at the
// two sites. Intensities are nonnegative; amplitudes unrestricted.
struct LhvAssignment {
    double x1 = 0.0;
    double y1 = 0.0;
    double n1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;
    double n2 = 0.0;
};

struct WeightedPoint {
    double weight = 0.0;
    LhvAssignment point;
};

// Normalized mixture of assignments. Construction rejects empty point sets,
// nonpositive weights and negative intensities, then normalizes the weights
// (long-double accumulation keeps the sum within 1e-12 of one).
class LhvEnsemble {
public:
    explicit LhvEnsemble(std::vector<WeightedPoint> points);

    const std::vector<WeightedPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    std::vector<WeightedPoint> points_;
};

// The two-site model X_j = Y_j = 1, N_j = 0 as a single-point ensemble.
LhvEnsemble cs_counter_model();

// max over points and sites of |x^2 + y^2 - n|.
double constraint_residual(const LhvEnsemble& ensemble);

// Ensemble-level test of the relation x^2 + y^2 = n: signed ensemble mean of
// the residual per site, and the worst per-point residual. Passes iff the
// max residual is below the tolerance.
struct EnsembleConstraintReport {
    double mean_residual_site1 = 0.0;  // <x1^2 + y1^2 - n1>
    double mean_residual_site2 = 0.0;
    double mean_residual = 0.0;  // average of the two site means
    double max_residual = 0.0;
    bool pass = false;
};
EnsembleConstraintReport ensemble_level_constraint_test(
    const LhvEnsemble& ensemble, double tolerance = tol::kViolation);

// Classical reading of every bracket: weighted moments of the assignments,
// with s_j = <x_j^2 + y_j^2>.
CorrelatorSet ensemble_correlators(const LhvEnsemble& ensemble);

// Equal-weight sample of `count` assignments with x, y independent uniform
// in [-amplitude_scale, amplitude_scale] at each site and n = x^2 + y^2.
// Bit-identical for a fixed seed.
LhvEnsemble sample_constrained(int count, std::uint64_t seed,
                               double amplitude_scale);

struct SearchBounds {
    double amplitude = 1.0;      // |x|, |y| <= amplitude
    double intensity_max = 2.0;  // n in [0, intensity_max] (unconstrained mode)
};

struct SearchOutcome {
    LhvEnsemble best_ensemble;
    double best_score = 0.0;  // wave_lhs - rhs_variant of best_ensemble
    long evaluations_used = 0;
    std::uint64_t seed = 0;
};

// Multi-start stochastic local search over ensembles of at most four points,
// maximizing wave_lhs - rhs. In constrained mode the intensities are forced
// to x^2 + y^2 (the intensity bound does not apply); otherwise they are free
// in [0, intensity_max]. Deterministic under seed; spends at most `budget`
// objective evaluations.
SearchOutcome adversarial_search(bool constrained, Variant variant, long budget,
                                 const SearchBounds& bounds, std::uint64_t seed);

}  // namespace cvbell
