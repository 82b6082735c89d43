#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qbaf/core.hpp"
#include "qbaf/preferences.hpp"

namespace qbaf {

// Distance increments applied between consecutive tiers: `greater_step`
// per '>' gap and `much_greater_step` per '>>' gap. Both must be positive;
// relation coherence (axiom 2) additionally needs
// much_greater_step > greater_step, which is reported, not enforced.
struct GapWeights {
    double greater_step = 1.0;
    double much_greater_step = 3.0;

    void validate() const;
    bool relation_coherence_at_risk() const { return much_greater_step <= greater_step; }
};

// Per-argument distance from the most preferred tier (d = 1) plus the
// maximum span. Members of one tier share one distance; the least
// preferred tier sits exactly at the span.
struct DistanceAssignment {
    std::map<ArgumentId, double> distance;
    double span = 1.0;
};

DistanceAssignment assign_distances(const PreferenceOrdering& ordering,
                                    const GapWeights& weights);

// Parameters of the range-anchored extraction: scores are placed linearly
// between `bottom` and `top`, 0 <= bottom <= top <= 1.
struct RangeParams {
    double top = 1.0;
    double bottom = 0.0;

    void validate() const;
};

// Parameters of the squeezing extraction tau = (span - d + alpha)/(span - 1 + beta):
// beta compresses the scores, alpha pushes them towards 1. Requires
// 0 <= alpha <= beta.
struct SqueezeParams {
    double alpha = 0.0;
    double beta = 0.0;

    void validate() const;
};

enum class BsefKind { kNu1, kNu2 };

struct ExtractionConfig {
    GapWeights weights;
    std::variant<RangeParams, SqueezeParams> function = RangeParams{};

    BsefKind kind() const {
        return std::holds_alternative<RangeParams>(function) ? BsefKind::kNu1 : BsefKind::kNu2;
    }
    void validate() const;
};

// The two base score extraction functions. Both are strictly decreasing in
// the distance; nu1 hits `top`/`bottom` exactly on the extreme tiers, nu2's
// achieved limits are (span-1+alpha)/(span-1+beta) and alpha/(span-1+beta).
ScoreAssignment nu1(const PreferenceOrdering& ordering, const DistanceAssignment& distances,
                    const RangeParams& params);
ScoreAssignment nu2(const PreferenceOrdering& ordering, const DistanceAssignment& distances,
                    const SqueezeParams& params);

// Distances plus the configured extraction function in one step.
ScoreAssignment extract_scores(const PreferenceOrdering& ordering,
                               const ExtractionConfig& config);

// Scores actually reached on the extreme tiers under `config`.
struct AchievedLimits {
    double top;
    double bottom;
};
AchievedLimits achieved_limits(const DistanceAssignment& distances,
                               const ExtractionConfig& config);

// Full pipeline: extract scores for the non-decision arguments of the
// framework and pin every decision argument at 0.5. The ordering must cover
// exactly the non-decision arguments and the framework must pass
// validate_for_decisions.
ScoreAssignment extract_qbaf(const BipolarFramework& framework,
                             const PreferenceOrdering& ordering,
                             const ExtractionConfig& config);

struct CheckReport {
    enum class Status { kPass, kFail, kNotApplicable };
    Status status = Status::kPass;
    std::vector<std::string> counterexamples;

    bool passed() const { return status == Status::kPass; }
};

// Preference coherence: strict preference means strictly greater score,
// indifference means equal score (1e-9 equality tolerance).
CheckReport check_axiom1(const PreferenceOrdering& ordering, const ScoreAssignment& scores);

// Relation coherence, generalised over all adjacent pairs: every
// much-greater score difference strictly exceeds every greater difference,
// and greater differences strictly exceed zero.
CheckReport check_axiom2(const PreferenceOrdering& ordering, const ScoreAssignment& scores);

// Structure coherence: non-isomorphic orderings over the same argument set
// must extract different score assignments. Isomorphic inputs are reported
// as not applicable.
CheckReport check_axiom3(const ExtractionConfig& config, const PreferenceOrdering& o1,
                         const PreferenceOrdering& o2);

struct PropertyReport {
    bool normalisation = false;  // achieved limits are exactly (1, 0)
    bool centralisation = false; // achieved top == 1 - achieved bottom
    bool regularity = false;     // same-kind adjacent pairs share one difference
    bool stability = false;      // adding an indifferent argument keeps scores
};

PropertyReport check_properties(const PreferenceOrdering& ordering, const ScoreAssignment& scores,
                                const ExtractionConfig& config);

} // namespace qbaf
