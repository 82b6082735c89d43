#pragma once

#include <span>
#include <string>
#include <vector>

#include "qbaf/core.hpp"

namespace qbaf {

enum class SemanticsKind { kQuadraticEnergy, kEulerBased, kDfQuad };

// Canonical token as used on the command line: "qe", "eb" or "dfquad".
const char* to_string(SemanticsKind kind);
SemanticsKind semantics_from_string(const std::string& name);

// One evaluation step of each gradual semantics: the final strength of an
// argument with base score tau whose attackers/supporters already carry the
// given final strengths. All inputs and outputs lie in [0,1].
//
// Quadratic energy: sum aggregation E = sum(sup) - sum(att) with the 2-max
// influence h(x) = max(0,x)^2 / (1 + max(0,x)^2):
//   sigma = tau - tau*h(-E) + (1-tau)*h(E)
double combine_qe(double tau, std::span<const double> attackers,
                  std::span<const double> supporters);

// Euler-based: sigma = 1 - (1 - tau^2) / (1 + tau*exp(E))
double combine_eb(double tau, std::span<const double> attackers,
                  std::span<const double> supporters);

// DF-QuAD: product aggregation F(v) = 1 - prod(1 - v_i), F({}) = 0;
//   sigma = tau - tau*(fa - fs)       if fa >= fs
//           tau + (1 - tau)*(fs - fa) otherwise
double combine_dfquad(double tau, std::span<const double> attackers,
                      std::span<const double> supporters);

double combine(SemanticsKind kind, double tau, std::span<const double> attackers,
               std::span<const double> supporters);

// Final strengths of every argument of an acyclic framework, computed in a
// single pass over a topological order. `scores` must cover all arguments.
StrengthAssignment evaluate(const BipolarFramework& framework, const ScoreAssignment& scores,
                            SemanticsKind kind);

struct DecisionOutcome {
    std::vector<ArgumentId> winners;             // argmax set, in decision order
    std::vector<std::pair<ArgumentId, double>> strengths; // all decisions, in order
    bool tie = false;

    // Single winner id, or "TIE" when the argmax is not unique.
    std::string label() const;
};

// Selects the decision arguments with the highest strength (1e-9 tolerance).
DecisionOutcome decide(const StrengthAssignment& strengths,
                       const std::vector<ArgumentId>& decisions);

enum class Polarity { kAttack, kSupport };

const char* to_string(Polarity polarity);

struct CurvePoint {
    double tau;
    double sigma;
};

// Final strength of an argument under a single influencer of fixed strength,
// sampled at grid_size base scores evenly spaced over [0,1].
std::vector<CurvePoint> influence_curve(SemanticsKind kind, Polarity polarity,
                                        double influencer_strength, int grid_size);

} // namespace qbaf
