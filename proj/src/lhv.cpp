#include "cvbell/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvbell/rng.hpp"

namespace cvbell {

LhvEnsemble::LhvEnsemble(std::vector<WeightedPoint> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw std::invalid_argument("LhvEnsemble: at least one point required");
    }
    long double sum = 0.0L;
    for (const auto& wp : points_) {
        if (!(wp.weight > 0.0) || !std::isfinite(wp.weight)) {
            throw std::invalid_argument("LhvEnsemble: weights must be positive and finite");
        }
        if (wp.point.n1 < 0.0 || wp.point.n2 < 0.0) {
            throw std::invalid_argument("LhvEnsemble: intensities must be nonnegative");
        }
        sum += wp.weight;
    }
    for (auto& wp : points_) {
        wp.weight = static_cast<double>(static_cast<long double>(wp.weight) / sum);
    }
}

LhvEnsemble cs_counter_model() {
    return LhvEnsemble({WeightedPoint{1.0, LhvAssignment{1.0, 1.0, 0.0, 1.0, 1.0, 0.0}}});
}

namespace {

double site1_residual(const LhvAssignment& p) {
    return p.x1 * p.x1 + p.y1 * p.y1 - p.n1;
}

double site2_residual(const LhvAssignment& p) {
    return p.x2 * p.x2 + p.y2 * p.y2 - p.n2;
}

}  // namespace

double constraint_residual(const LhvEnsemble& ensemble) {
    double worst = 0.0;
    for (const auto& wp : ensemble.points()) {
        worst = std::max(worst, std::abs(site1_residual(wp.point)));
        worst = std::max(worst, std::abs(site2_residual(wp.point)));
    }
    return worst;
}

EnsembleConstraintReport ensemble_level_constraint_test(const LhvEnsemble& ensemble,
                                                        double tolerance) {
    EnsembleConstraintReport report;
    long double mean1 = 0.0L;
    long double mean2 = 0.0L;
    for (const auto& wp : ensemble.points()) {
        mean1 += static_cast<long double>(wp.weight) * site1_residual(wp.point);
        mean2 += static_cast<long double>(wp.weight) * site2_residual(wp.point);
        report.max_residual = std::max({report.max_residual,
                                        std::abs(site1_residual(wp.point)),
                                        std::abs(site2_residual(wp.point))});
    }
    report.mean_residual_site1 = static_cast<double>(mean1);
    report.mean_residual_site2 = static_cast<double>(mean2);
    report.mean_residual = 0.5 * (report.mean_residual_site1 + report.mean_residual_site2);
    report.pass = report.max_residual < tolerance;
    return report;
}

CorrelatorSet ensemble_correlators(const LhvEnsemble& ensemble) {
    CorrelatorSet cs;
    cs.order_k = 1;
    for (const auto& [w, p] : ensemble.points()) {
        cs.xx += w * p.x1 * p.x2;
        cs.yy += w * p.y1 * p.y2;
        cs.xy += w * p.x1 * p.y2;
        cs.yx += w * p.y1 * p.x2;
        cs.n1n2 += w * p.n1 * p.n2;
        cs.n1 += w * p.n1;
        cs.n2 += w * p.n2;
        const double sq1 = p.x1 * p.x1 + p.y1 * p.y1;
        const double sq2 = p.x2 * p.x2 + p.y2 * p.y2;
        cs.s1 += w * sq1;
        cs.s2 += w * sq2;
        cs.s1s2 += w * sq1 * sq2;
    }
    return cs;
}

LhvEnsemble sample_constrained(int count, std::uint64_t seed, double amplitude_scale) {
    if (count < 1) {
        throw std::invalid_argument("sample_constrained: count must be >= 1");
    }
    if (!(amplitude_scale > 0.0) || !std::isfinite(amplitude_scale)) {
        throw std::invalid_argument("sample_constrained: amplitude_scale must be positive");
    }
    Rng rng(seed);
    std::vector<WeightedPoint> points;
    points.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        LhvAssignment p;
        p.x1 = rng.uniform(-amplitude_scale, amplitude_scale);
        p.y1 = rng.uniform(-amplitude_scale, amplitude_scale);
        p.x2 = rng.uniform(-amplitude_scale, amplitude_scale);
        p.y2 = rng.uniform(-amplitude_scale, amplitude_scale);
        p.n1 = p.x1 * p.x1 + p.y1 * p.y1;
        p.n2 = p.x2 * p.x2 + p.y2 * p.y2;
        points.push_back(WeightedPoint{1.0, p});
    }
    return LhvEnsemble(std::move(points));
}

namespace {

// Genome layout for the optimizer: kPoints blocks of per-point coordinates
// followed by kPoints raw weights. Constrained blocks hold (x1,y1,x2,y2);
// unconstrained blocks add (n1,n2).
constexpr int kPoints = 4;
constexpr double kWeightFloor = 0.05;

struct SearchSpace {
    bool constrained;
    SearchBounds bounds;

    int coords_per_point() const { return constrained ? 4 : 6; }
    int genome_size() const { return kPoints * coords_per_point() + kPoints; }

    double lo(int index) const {
        const int per = coords_per_point();
        if (index >= kPoints * per) return kWeightFloor;  // weight block
        const int offset = index % per;
        return offset < 4 ? -bounds.amplitude : 0.0;  // (x,y) vs n coordinates
    }
    double hi(int index) const {
        const int per = coords_per_point();
        if (index >= kPoints * per) return 1.0;
        const int offset = index % per;
        return offset < 4 ? bounds.amplitude : bounds.intensity_max;
    }

    LhvEnsemble to_ensemble(const std::vector<double>& g) const {
        const int per = coords_per_point();
        std::vector<WeightedPoint> points;
        points.reserve(kPoints);
        for (int i = 0; i < kPoints; ++i) {
            const double* block = g.data() + i * per;
            LhvAssignment p;
            p.x1 = block[0];
            p.y1 = block[1];
            p.x2 = block[2];
            p.y2 = block[3];
            if (constrained) {
                p.n1 = p.x1 * p.x1 + p.y1 * p.y1;
                p.n2 = p.x2 * p.x2 + p.y2 * p.y2;
            } else {
                p.n1 = block[4];
                p.n2 = block[5];
            }
            points.push_back(WeightedPoint{g[static_cast<std::size_t>(kPoints * per + i)], p});
        }
        return LhvEnsemble(std::move(points));
    }
};

}  // namespace

SearchOutcome adversarial_search(bool constrained, Variant variant, long budget,
                                 const SearchBounds& bounds, std::uint64_t seed) {
    if (budget < 1) {
        throw std::invalid_argument("adversarial_search: budget must be >= 1");
    }
    if (!(bounds.amplitude > 0.0) || !std::isfinite(bounds.amplitude) ||
        !(bounds.intensity_max >= 0.0) || !std::isfinite(bounds.intensity_max)) {
        throw std::invalid_argument("adversarial_search: bounds must be finite, "
                                    "amplitude > 0 and intensity_max >= 0");
    }

    const SearchSpace space{constrained, bounds};
    const int size = space.genome_size();
    Rng rng(seed);

    auto random_genome = [&] {
        std::vector<double> g(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) g[static_cast<std::size_t>(i)] = rng.uniform(space.lo(i), space.hi(i));
        return g;
    };
    auto score = [&](const std::vector<double>& g) {
        const CorrelatorSet cs = ensemble_correlators(space.to_ensemble(g));
        return wave_lhs(cs) - rhs_value(cs, variant);
    };

    long evals = 0;
    std::vector<double> best_genome;
    double best_score = -std::numeric_limits<double>::infinity();

    // Multi-start local search. Each restart runs a Gaussian (1+1) climb for
    // exploration, then a compass (per-coordinate pattern) polish that walks
    // coordinates onto the box faces where the objective peaks.
    while (evals < budget) {
        std::vector<double> current = random_genome();
        double current_score = score(current);
        ++evals;

        double step = 0.35;
        int stall = 0;
        std::vector<double> candidate(current.size());
        long explore_left = std::min<long>(1000, budget - evals);
        while (explore_left > 0 && step > 1e-6 && stall < 80) {
            for (int i = 0; i < size; ++i) {
                const double span = space.hi(i) - space.lo(i);
                const double v = current[static_cast<std::size_t>(i)] +
                                 step * span * rng.normal();
                candidate[static_cast<std::size_t>(i)] =
                    std::clamp(v, space.lo(i), space.hi(i));
            }
            const double candidate_score = score(candidate);
            ++evals;
            --explore_left;
            if (candidate_score > current_score) {
                current.swap(candidate);
                current_score = candidate_score;
                step = std::min(step * 1.25, 0.5);
                stall = 0;
            } else {
                step *= 0.82;
                ++stall;
            }
        }

        double h = 0.25;
        while (evals < budget && h > 1e-10) {
            bool improved = false;
            for (int i = 0; i < size && evals < budget; ++i) {
                const double span = space.hi(i) - space.lo(i);
                const double original = current[static_cast<std::size_t>(i)];
                for (double direction : {1.0, -1.0}) {
                    if (evals >= budget) break;
                    const double v = std::clamp(original + direction * h * span,
                                                space.lo(i), space.hi(i));
                    if (v == original) continue;
                    current[static_cast<std::size_t>(i)] = v;
                    const double trial = score(current);
                    ++evals;
                    if (trial > current_score) {
                        current_score = trial;
                        improved = true;
                        break;
                    }
                    current[static_cast<std::size_t>(i)] = original;
                }
            }
            if (!improved) h *= 0.5;
        }

        if (current_score > best_score) {
            best_score = current_score;
            best_genome = current;
        }
    }

    SearchOutcome outcome{space.to_ensemble(best_genome), best_score, evals, seed};
    return outcome;
}

}  // namespace cvbell
