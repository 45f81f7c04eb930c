#pragma once

#include <array>
#include <span>
#include <string>

#include "cvbell/fock.hpp"

namespace cvbell {

// Right-hand-side variants of the wave-correlation inequality
//   (<X1X2> + <Y1Y2>)^2 + (<X1Y2> - <Y1X2>)^2  <=  RHS
//
//   R1: <N1 N2>            constrained form (joint intensity correlation)
//   R2: <N1><N2>           product-form companion, off by default
//   R3: <S1 S2>            constraint-free, S_j = C_jx^2 + C_jy^2
//   R4: <S1><S2>           constraint-free product form
enum class Variant { R1 = 0, R2 = 1, R3 = 2, R4 = 3 };

inline constexpr std::array<Variant, 4> kAllVariants{Variant::R1, Variant::R2,
                                                     Variant::R3, Variant::R4};
// R2 is a reconstruction and stays off unless explicitly requested.
inline constexpr std::array<Variant, 3> kDefaultVariants{Variant::R1, Variant::R3,
                                                         Variant::R4};

const char* variant_name(Variant v);
Variant parse_variant(const std::string& name);  // "R1".."R4", case-insensitive

// The eight ensemble averages entering the LHS and every RHS variant, plus
// the evaluation order k. All brackets are real; imaginary residue beyond
// tol::kImagResidue at construction is an error.
struct CorrelatorSet {
    double xx = 0.0;  // <X1 X2>
    double yy = 0.0;  // <Y1 Y2>
    double xy = 0.0;  // <X1 Y2>
    double yx = 0.0;  // <Y1 X2>
    double n1n2 = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    double s1s2 = 0.0;  // <S1 S2>, S_j = C_jx^2 + C_jy^2
    double s1 = 0.0;
    double s2 = 0.0;
    int order_k = 1;
};

// All nine quantum brackets of a two-mode state, evaluated with k extra Fock
// levels of headroom per mode so that the truncated basis does not corrupt
// the raising-operator matrix elements at the cutoff.
CorrelatorSet correlator_set(const QuantumState& state, int order_k);

// (xx + yy)^2 + (xy - yx)^2; always >= 0.
double wave_lhs(const CorrelatorSet& cs);

double rhs_value(const CorrelatorSet& cs, Variant variant);

struct InequalityReport {
    double lhs = 0.0;
    std::array<double, 4> rhs{};     // indexed by Variant
    std::array<double, 4> margin{};  // lhs - rhs
    std::array<bool, 4> violated{};  // margin > violation tolerance
    std::array<bool, 4> requested{};
    int order_k = 1;
    std::string source_label;

    double rhs_of(Variant v) const { return rhs[static_cast<std::size_t>(v)]; }
    double margin_of(Variant v) const { return margin[static_cast<std::size_t>(v)]; }
    bool violated_of(Variant v) const { return violated[static_cast<std::size_t>(v)]; }
    bool requested_of(Variant v) const { return requested[static_cast<std::size_t>(v)]; }
};

InequalityReport evaluate(const QuantumState& state, int order_k,
                          std::span<const Variant> variants = kDefaultVariants,
                          std::string source_label = {},
                          double violation_tolerance = tol::kViolation);

InequalityReport evaluate(const CorrelatorSet& cs,
                          std::span<const Variant> variants = kDefaultVariants,
                          std::string source_label = {},
                          double violation_tolerance = tol::kViolation);

// <C1 C2^dag> evaluated with the same headroom convention as correlator_set.
Complex cross_amplitude(const QuantumState& state, int order_k);

// | wave_lhs - |<C1 C2^dag>|^2 |. Algebraically zero for every state; the
// two sides reach the number through different routes, so the residual is a
// numerical cross-check of the whole correlator pipeline.
double lhs_identity_check(const QuantumState& state, int order_k);

}  // namespace cvbell
