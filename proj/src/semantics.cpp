#include "qbaf/semantics.hpp"

#include <algorithm>
#include <cmath>

#include "qbaf/errors.hpp"

namespace qbaf {

const char* to_string(SemanticsKind kind) {
    switch (kind) {
        case SemanticsKind::kQuadraticEnergy: return "qe";
        case SemanticsKind::kEulerBased: return "eb";
        case SemanticsKind::kDfQuad: return "dfquad";
    }
    return "?";
}

SemanticsKind semantics_from_string(const std::string& name) {
    if (name == "qe") return SemanticsKind::kQuadraticEnergy;
    if (name == "eb") return SemanticsKind::kEulerBased;
    if (name == "dfquad" || name == "df") return SemanticsKind::kDfQuad;
    throw DomainError("unknown semantics '" + name + "' (expected qe, eb or dfquad)");
}

namespace {

void require_unit(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0))
        throw DomainError(std::string(what) + " must lie in [0,1]");
}

void require_unit_all(std::span<const double> values, const char* what) {
    for (double v : values) require_unit(v, what);
}

double energy(std::span<const double> attackers, std::span<const double> supporters) {
    double support = 0.0, attack = 0.0;
    for (double s : supporters) support += s;
    for (double a : attackers) attack += a;
    return support - attack;
}

// 2-max influence: h(x) = max(0,x)^2 / (1 + max(0,x)^2).
double two_max(double x) {
    const double p = std::max(0.0, x);
    return p * p / (1.0 + p * p);
}

// Product aggregation: F(v) = 1 - prod(1 - v_i), F({}) = 0.
double product_aggregate(std::span<const double> values) {
    double residual = 1.0;
    for (double v : values) residual *= 1.0 - v;
    return 1.0 - residual;
}

} // namespace

double combine_qe(double tau, std::span<const double> attackers,
                  std::span<const double> supporters) {
    require_unit(tau, "base score");
    require_unit_all(attackers, "attacker strength");
    require_unit_all(supporters, "supporter strength");
    const double e = energy(attackers, supporters);
    return tau - tau * two_max(-e) + (1.0 - tau) * two_max(e);
}

double combine_eb(double tau, std::span<const double> attackers,
                  std::span<const double> supporters) {
    require_unit(tau, "base score");
    require_unit_all(attackers, "attacker strength");
    require_unit_all(supporters, "supporter strength");
    const double e = energy(attackers, supporters);
    // 1 - (1 - tau^2) / (1 + tau*exp(E)), rewritten so that a zero energy
    // divides out exactly and sigma == tau holds bit-for-bit on leaves.
    const double boost = std::exp(e);
    return std::min(1.0, tau * ((boost + tau) / (1.0 + tau * boost)));
}

double combine_dfquad(double tau, std::span<const double> attackers,
                      std::span<const double> supporters) {
    require_unit(tau, "base score");
    require_unit_all(attackers, "attacker strength");
    require_unit_all(supporters, "supporter strength");
    const double fa = product_aggregate(attackers);
    const double fs = product_aggregate(supporters);
    if (fa >= fs) return tau - tau * (fa - fs);
    return tau + (1.0 - tau) * (fs - fa);
}

double combine(SemanticsKind kind, double tau, std::span<const double> attackers,
               std::span<const double> supporters) {
    switch (kind) {
        case SemanticsKind::kQuadraticEnergy: return combine_qe(tau, attackers, supporters);
        case SemanticsKind::kEulerBased: return combine_eb(tau, attackers, supporters);
        case SemanticsKind::kDfQuad: return combine_dfquad(tau, attackers, supporters);
    }
    throw DomainError("unknown semantics kind");
}

StrengthAssignment evaluate(const BipolarFramework& framework, const ScoreAssignment& scores,
                            SemanticsKind kind) {
    for (const auto& id : framework.arguments()) {
        if (scores.count(id) == 0)
            throw CoverageError("scores miss argument '" + id + "'");
    }

    StrengthAssignment strengths;
    for (const auto& id : topological_order(framework)) {
        std::vector<double> attackers, supporters;
        for (const auto& a : framework.attackers_of(id)) attackers.push_back(strengths.at(a));
        for (const auto& s : framework.supporters_of(id)) supporters.push_back(strengths.at(s));
        strengths[id] = combine(kind, scores.at(id), attackers, supporters);
    }
    return strengths;
}

std::string DecisionOutcome::label() const {
    return tie ? std::string("TIE") : winners.front();
}

DecisionOutcome decide(const StrengthAssignment& strengths,
                       const std::vector<ArgumentId>& decisions) {
    if (decisions.empty()) throw EmptyDecisionError("no decision arguments given");

    DecisionOutcome outcome;
    double best = 0.0;
    bool first = true;
    for (const auto& d : decisions) {
        auto it = strengths.find(d);
        if (it == strengths.end())
            throw CoverageError("strengths miss decision argument '" + d + "'");
        outcome.strengths.emplace_back(d, it->second);
        if (first || it->second > best) best = it->second;
        first = false;
    }
    constexpr double kTieTolerance = 1e-9;
    for (const auto& [id, sigma] : outcome.strengths) {
        if (sigma >= best - kTieTolerance) outcome.winners.push_back(id);
    }
    outcome.tie = outcome.winners.size() > 1;
    return outcome;
}

const char* to_string(Polarity polarity) {
    return polarity == Polarity::kAttack ? "attack" : "support";
}

std::vector<CurvePoint> influence_curve(SemanticsKind kind, Polarity polarity,
                                        double influencer_strength, int grid_size) {
    require_unit(influencer_strength, "influencer strength");
    if (grid_size < 2) throw DomainError("grid size must be at least 2");

    const double influencer[] = {influencer_strength};
    const std::span<const double> one(influencer, 1);
    const std::span<const double> none;

    std::vector<CurvePoint> curve;
    curve.reserve(static_cast<std::size_t>(grid_size));
    for (int i = 0; i < grid_size; ++i) {
        const double tau = static_cast<double>(i) / (grid_size - 1);
        const double sigma = polarity == Polarity::kAttack ? combine(kind, tau, one, none)
                                                           : combine(kind, tau, none, one);
        curve.push_back({tau, sigma});
    }
    return curve;
}

} // namespace qbaf
