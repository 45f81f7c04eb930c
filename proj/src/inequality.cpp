#include "cvbell/inequality.hpp"

#include <cctype>
#include <cmath>

namespace cvbell {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::R1: return "R1";
        case Variant::R2: return "R2";
        case Variant::R3: return "R3";
        case Variant::R4: return "R4";
    }
    throw std::invalid_argument("variant_name: unknown variant");
}

Variant parse_variant(const std::string& name) {
    std::string up;
    up.reserve(name.size());
    for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "R1") return Variant::R1;
    if (up == "R2") return Variant::R2;
    if (up == "R3") return Variant::R3;
    if (up == "R4") return Variant::R4;
    throw std::invalid_argument("parse_variant: unknown variant '" + name + "'");
}

namespace {

double real_bracket(const QuantumState& state, const Operator& op, const char* label) {
    const Complex value = expectation(state, op);
    if (std::abs(value.imag()) > tol::kImagResidue) {
        throw NumericalConsistencyError(std::string("correlator ") + label +
                                        " has imaginary residue " +
                                        std::to_string(value.imag()));
    }
    return value.real();
}

void check_two_mode(const QuantumState& state, const char* where) {
    if (state.system().num_modes() != 2) {
        throw std::invalid_argument(std::string(where) + ": two-mode state required");
    }
}

// C_j = a_j^k on the given (already padded) system.
Operator amplitude_power(const ModeSystem& system, int mode, int order_k) {
    Operator c = annihilation(system, mode);
    for (int t = 1; t < order_k; ++t) c = c * annihilation(system, mode);
    return c;
}

}  // namespace

CorrelatorSet correlator_set(const QuantumState& state, int order_k) {
    check_two_mode(state, "correlator_set");
    if (order_k < 1) {
        throw std::invalid_argument("correlator_set: order k must be >= 1");
    }
    // k extra levels per mode: every bracket below contains at most k raising
    // operators per mode, so the padded matrix elements are truncation-exact
    // for any state supported on the original dims.
    const QuantumState padded = embed_with_headroom(state, order_k);
    const AmplitudeObservables m1 = amplitude_observables(padded.system(), 0, order_k);
    const AmplitudeObservables m2 = amplitude_observables(padded.system(), 1, order_k);
    const Operator s1 = m1.x * m1.x + m1.y * m1.y;
    const Operator s2 = m2.x * m2.x + m2.y * m2.y;

    CorrelatorSet cs;
    cs.order_k = order_k;
    cs.xx = real_bracket(padded, m1.x * m2.x, "xx");
    cs.yy = real_bracket(padded, m1.y * m2.y, "yy");
    cs.xy = real_bracket(padded, m1.x * m2.y, "xy");
    cs.yx = real_bracket(padded, m1.y * m2.x, "yx");
    cs.n1n2 = real_bracket(padded, m1.n * m2.n, "n1n2");
    cs.n1 = real_bracket(padded, m1.n, "n1");
    cs.n2 = real_bracket(padded, m2.n, "n2");
    cs.s1s2 = real_bracket(padded, s1 * s2, "s1s2");
    cs.s1 = real_bracket(padded, s1, "s1");
    cs.s2 = real_bracket(padded, s2, "s2");
    return cs;
}

double wave_lhs(const CorrelatorSet& cs) {
    const double sum = cs.xx + cs.yy;
    const double diff = cs.xy - cs.yx;
    return sum * sum + diff * diff;
}

double rhs_value(const CorrelatorSet& cs, Variant variant) {
    switch (variant) {
        case Variant::R1: return cs.n1n2;
        case Variant::R2: return cs.n1 * cs.n2;
        case Variant::R3: return cs.s1s2;
        case Variant::R4: return cs.s1 * cs.s2;
    }
    throw std::invalid_argument("rhs_value: unknown variant");
}

InequalityReport evaluate(const CorrelatorSet& cs, std::span<const Variant> variants,
                          std::string source_label, double violation_tolerance) {
    InequalityReport report;
    report.lhs = wave_lhs(cs);
    report.order_k = cs.order_k;
    report.source_label = std::move(source_label);
    for (Variant v : kAllVariants) {
        const auto i = static_cast<std::size_t>(v);
        report.rhs[i] = rhs_value(cs, v);
        report.margin[i] = report.lhs - report.rhs[i];
        report.violated[i] = report.margin[i] > violation_tolerance;
    }
    for (Variant v : variants) {
        report.requested[static_cast<std::size_t>(v)] = true;
    }
    return report;
}

InequalityReport evaluate(const QuantumState& state, int order_k,
                          std::span<const Variant> variants, std::string source_label,
                          double violation_tolerance) {
    return evaluate(correlator_set(state, order_k), variants, std::move(source_label),
                    violation_tolerance);
}

Complex cross_amplitude(const QuantumState& state, int order_k) {
    check_two_mode(state, "cross_amplitude");
    if (order_k < 1) {
        throw std::invalid_argument("cross_amplitude: order k must be >= 1");
    }
    const QuantumState padded = embed_with_headroom(state, order_k);
    const Operator c1 = amplitude_power(padded.system(), 0, order_k);
    const Operator c2 = amplitude_power(padded.system(), 1, order_k);
    return expectation(padded, c1 * c2.dagger());
}

double lhs_identity_check(const QuantumState& state, int order_k) {
    const double lhs = wave_lhs(correlator_set(state, order_k));
    const Complex cross = cross_amplitude(state, order_k);
    return std::abs(lhs - std::norm(cross));
}

}  // namespace cvbell
