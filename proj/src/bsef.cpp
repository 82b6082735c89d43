#include "qbaf/bsef.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace qbaf {

namespace {

constexpr double kScoreEqualityTolerance = 1e-9;

std::string format_pair(const ArgumentId& a, const ArgumentId& b) {
    return "(" + a + ", " + b + ")";
}

} // namespace

void GapWeights::validate() const {
    if (!(greater_step > 0.0) || !std::isfinite(greater_step))
        throw ParamError("greater-step must be a positive finite number");
    if (!(much_greater_step > 0.0) || !std::isfinite(much_greater_step))
        throw ParamError("much-greater-step must be a positive finite number");
}

void RangeParams::validate() const {
    if (!std::isfinite(top) || !std::isfinite(bottom))
        throw ParamError("range limits must be finite");
    if (!(0.0 <= bottom && bottom <= top && top <= 1.0))
        throw ParamError("range limits must satisfy 0 <= bottom <= top <= 1");
}

void SqueezeParams::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw ParamError("squeeze parameters must be finite");
    if (!(alpha >= 0.0) || !(beta >= 0.0))
        throw ParamError("squeeze parameters must be non-negative");
    if (alpha > beta)
        throw ParamError("alpha must not exceed beta, otherwise scores leave [0,1]");
}

void ExtractionConfig::validate() const {
    weights.validate();
    std::visit([](const auto& params) { params.validate(); }, function);
}

DistanceAssignment assign_distances(const PreferenceOrdering& ordering,
                                    const GapWeights& weights) {
    weights.validate();
    if (ordering.tiers().size() < 2)
        throw SingleTierError("distance assignment needs at least two tiers");

    DistanceAssignment out;
    double d = 1.0;
    for (std::size_t t = 0; t < ordering.tiers().size(); ++t) {
        if (t > 0)
            d += ordering.gaps()[t - 1] == GapKind::kGreater ? weights.greater_step
                                                             : weights.much_greater_step;
        for (const auto& id : ordering.tiers()[t]) out.distance[id] = d;
    }
    // The span is the accumulated distance of the last tier, which equals
    // 1 + n*greater_step + m*much_greater_step.
    out.span = d;
    return out;
}

ScoreAssignment nu1(const PreferenceOrdering& ordering, const DistanceAssignment& distances,
                    const RangeParams& params) {
    params.validate();
    const double span = distances.span;
    ScoreAssignment scores;
    const std::size_t last = ordering.tiers().size() - 1;
    for (std::size_t t = 0; t < ordering.tiers().size(); ++t) {
        double tau;
        if (t == 0) {
            tau = params.top; // extreme tiers hit the limits exactly
        } else if (t == last) {
            tau = params.bottom;
        } else {
            const double d = distances.distance.at(*ordering.tiers()[t].begin());
            tau = params.bottom + (params.top - params.bottom) * (span - d) / (span - 1.0);
            tau = std::clamp(tau, params.bottom, params.top);
        }
        for (const auto& id : ordering.tiers()[t]) scores[id] = tau;
    }
    return scores;
}

ScoreAssignment nu2(const PreferenceOrdering& ordering, const DistanceAssignment& distances,
                    const SqueezeParams& params) {
    params.validate();
    const double denom = distances.span - 1.0 + params.beta;
    ScoreAssignment scores;
    for (const auto& tier : ordering.tiers()) {
        const double d = distances.distance.at(*tier.begin());
        const double tau = (distances.span - d + params.alpha) / denom;
        for (const auto& id : tier) scores[id] = tau;
    }
    return scores;
}

ScoreAssignment extract_scores(const PreferenceOrdering& ordering,
                               const ExtractionConfig& config) {
    config.validate();
    const DistanceAssignment distances = assign_distances(ordering, config.weights);
    if (const auto* range = std::get_if<RangeParams>(&config.function))
        return nu1(ordering, distances, *range);
    return nu2(ordering, distances, std::get<SqueezeParams>(config.function));
}

AchievedLimits achieved_limits(const DistanceAssignment& distances,
                               const ExtractionConfig& config) {
    if (const auto* range = std::get_if<RangeParams>(&config.function))
        return {range->top, range->bottom};
    const auto& squeeze = std::get<SqueezeParams>(config.function);
    const double denom = distances.span - 1.0 + squeeze.beta;
    return {(distances.span - 1.0 + squeeze.alpha) / denom, squeeze.alpha / denom};
}

ScoreAssignment extract_qbaf(const BipolarFramework& framework,
                             const PreferenceOrdering& ordering,
                             const ExtractionConfig& config) {
    const auto covered = ordering.argument_set();
    for (const auto& id : covered) {
        if (!framework.contains(id))
            throw CoverageError("ordering mentions '" + id + "', which is not in the framework");
        if (framework.is_decision(id))
            throw CoverageError("ordering must not mention decision argument '" + id + "'");
    }
    for (const auto& id : framework.non_decision_arguments()) {
        if (covered.count(id) == 0)
            throw CoverageError("ordering misses argument '" + id + "'");
    }
    const ValidationReport report = validate_for_decisions(framework);
    if (!report.ok)
        throw ValidationError("framework is not evaluable: " + report.violations.front().detail);

    ScoreAssignment scores = extract_scores(ordering, config);
    for (const auto& d : framework.decisions()) scores[d] = 0.5;
    return scores;
}

CheckReport check_axiom1(const PreferenceOrdering& ordering, const ScoreAssignment& scores) {
    CheckReport report;
    const auto args = ordering.argument_set();
    for (const auto& id : args) {
        if (scores.count(id) == 0)
            throw CoverageError("scores miss argument '" + id + "'");
    }
    for (auto it = args.begin(); it != args.end(); ++it) {
        for (auto jt = std::next(it); jt != args.end(); ++jt) {
            const Relation rel = relation(ordering, *it, *jt);
            const double diff = scores.at(*it) - scores.at(*jt);
            bool violated = false;
            bool reversed = false;
            switch (rel) {
                case Relation::kEqual:
                    violated = std::abs(diff) > kScoreEqualityTolerance;
                    break;
                case Relation::kGreater:
                case Relation::kMuchGreater:
                    violated = diff <= kScoreEqualityTolerance;
                    break;
                case Relation::kReversedGreater:
                case Relation::kReversedMuchGreater:
                    violated = -diff <= kScoreEqualityTolerance;
                    reversed = true;
                    break;
            }
            if (violated) {
                report.status = CheckReport::Status::kFail;
                // Preferred argument first.
                report.counterexamples.push_back(reversed ? format_pair(*jt, *it)
                                                          : format_pair(*it, *jt));
            }
        }
    }
    return report;
}

CheckReport check_axiom2(const PreferenceOrdering& ordering, const ScoreAssignment& scores) {
    CheckReport report;
    struct Diff {
        AdjacentPair pair;
        double value;
    };
    std::vector<Diff> greater, much_greater;
    for (const auto& pair : adjacent_pairs(ordering)) {
        if (pair.rel == PairRelation::kEqual) continue;
        const double diff = scores.at(pair.first) - scores.at(pair.second);
        (pair.rel == PairRelation::kGreater ? greater : much_greater).push_back({pair, diff});
    }

    // Every much-greater difference must strictly exceed every greater
    // difference, and greater differences must strictly exceed the (zero)
    // difference of indifferent pairs.
    for (const auto& g : greater) {
        if (g.value <= kScoreEqualityTolerance) {
            report.status = CheckReport::Status::kFail;
            std::ostringstream msg;
            msg << "difference of '>' pair " << format_pair(g.pair.first, g.pair.second)
                << " is " << g.value << ", not strictly positive";
            report.counterexamples.push_back(msg.str());
        }
        for (const auto& mg : much_greater) {
            if (mg.value <= g.value + kScoreEqualityTolerance) {
                report.status = CheckReport::Status::kFail;
                std::ostringstream msg;
                msg << "difference of '>>' pair " << format_pair(mg.pair.first, mg.pair.second)
                    << " (" << mg.value << ") does not exceed '>' pair "
                    << format_pair(g.pair.first, g.pair.second) << " (" << g.value << ")";
                report.counterexamples.push_back(msg.str());
            }
        }
    }
    return report;
}

CheckReport check_axiom3(const ExtractionConfig& config, const PreferenceOrdering& o1,
                         const PreferenceOrdering& o2) {
    if (o1.argument_set() != o2.argument_set())
        throw CoverageError("axiom 3 compares orderings over the same argument set");
    CheckReport report;
    if (are_isomorphic(o1, o2)) {
        report.status = CheckReport::Status::kNotApplicable;
        return report;
    }
    const ScoreAssignment s1 = extract_scores(o1, config);
    const ScoreAssignment s2 = extract_scores(o2, config);
    for (const auto& [id, tau] : s1) {
        if (std::abs(tau - s2.at(id)) > kScoreEqualityTolerance) return report; // pass
    }
    report.status = CheckReport::Status::kFail;
    report.counterexamples.push_back("non-isomorphic orderings extracted identical scores");
    return report;
}

PropertyReport check_properties(const PreferenceOrdering& ordering, const ScoreAssignment& scores,
                                const ExtractionConfig& config) {
    PropertyReport report;

    const double achieved_top = scores.at(*ordering.tiers().front().begin());
    const double achieved_bottom = scores.at(*ordering.tiers().back().begin());
    report.normalisation = achieved_top == 1.0 && achieved_bottom == 0.0;
    report.centralisation = std::abs(achieved_top - (1.0 - achieved_bottom)) <= kScoreEqualityTolerance;

    report.regularity = true;
    std::optional<double> greater_diff, much_greater_diff;
    for (const auto& pair : adjacent_pairs(ordering)) {
        const double diff = scores.at(pair.first) - scores.at(pair.second);
        std::optional<double>* slot = nullptr;
        switch (pair.rel) {
            case PairRelation::kEqual:
                if (std::abs(diff) > kScoreEqualityTolerance) report.regularity = false;
                continue;
            case PairRelation::kGreater: slot = &greater_diff; break;
            case PairRelation::kMuchGreater: slot = &much_greater_diff; break;
        }
        if (!*slot)
            *slot = diff;
        else if (std::abs(**slot - diff) > kScoreEqualityTolerance)
            report.regularity = false;
    }

    // Stability is checked constructively: one fresh argument per tier,
    // anchored inside it, must leave every original score unchanged.
    report.stability = true;
    const auto args = ordering.argument_set();
    std::size_t counter = 0;
    auto fresh_id = [&]() {
        ArgumentId id;
        do {
            id = "aux" + std::to_string(counter++);
        } while (args.count(id) > 0);
        return id;
    };
    for (const auto& tier : ordering.tiers()) {
        const PreferenceOrdering extended = extend_with_equal(ordering, fresh_id(), *tier.begin());
        const ScoreAssignment rescored = extract_scores(extended, config);
        for (const auto& id : args) {
            if (std::abs(rescored.at(id) - scores.at(id)) > kScoreEqualityTolerance) {
                report.stability = false;
                break;
            }
        }
        if (!report.stability) break;
    }

    return report;
}

} // namespace qbaf
