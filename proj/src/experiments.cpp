#include "qbaf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "qbaf/format.hpp"

namespace qbaf {

BipolarFramework feeding_example_framework() {
    return BipolarFramework(
        {"a", "b", "c", "d", "e", "f", "D1", "D2"},
        {{"a", "D1"}, {"e", "b"}, {"f", "D2"}},
        {{"c", "b"}, {"b", "D1"}, {"e", "d"}, {"d", "D2"}},
        {"D1", "D2"});
}

void StudyConfig::validate() const {
    if (sample_count == 0) throw ConfigError("sample count must be positive");
    auto check_interval = [](std::pair<double, double> r, const char* name) {
        if (!(0.0 <= r.first && r.first <= r.second && r.second <= 1.0))
            throw ConfigError(std::string(name) + " must be an interval within [0,1]");
    };
    check_interval(top_range, "top range");
    check_interval(bottom_range, "bottom range");
    if (centralisation) {
        if (top_range.first < 0.5)
            throw ConfigError("centralisation needs the top range above 0.5");
    } else if (bottom_range.second > top_range.first) {
        throw ConfigError("bottom range must lie entirely below the top range");
    }
    if (ratio_choices.empty()) throw ConfigError("no much-greater ratios to sample from");
    for (double r : ratio_choices)
        if (!(r > 1.0)) throw ConfigError("much-greater ratios must exceed 1");
    if (!(greater_step > 0.0)) throw ConfigError("greater-step must be positive");
    const std::size_t n = framework.non_decision_arguments().size();
    if (n < 2) throw ConfigError("need at least two non-decision arguments to order");
    if (n > 16) throw ConfigError("ordering sampler supports at most 16 arguments");
    for (const auto& d : framework.decisions())
        if (d == "TIE") throw ConfigError("'TIE' is reserved for tied decisions");
}

namespace {

// Weights k! * S(n,k) of ordered set partitions of n elements into exactly
// k tiers; uniformity over all ordered partitions with >= 2 tiers follows
// from drawing k proportionally and then a uniform surjection onto k tiers.
std::vector<std::uint64_t> ordered_partition_weights(std::size_t n) {
    std::vector<std::vector<std::uint64_t>> stirling(n + 1,
                                                     std::vector<std::uint64_t>(n + 1, 0));
    stirling[0][0] = 1;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 1; k <= i; ++k)
            stirling[i][k] = stirling[i - 1][k - 1] + k * stirling[i - 1][k];
    std::vector<std::uint64_t> weights(n + 1, 0);
    std::uint64_t factorial = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        factorial *= k;
        weights[k] = factorial * stirling[n][k];
    }
    return weights;
}

std::size_t draw_tier_count(Rng& rng, const std::vector<std::uint64_t>& weights) {
    std::uint64_t total = 0;
    for (std::size_t k = 2; k < weights.size(); ++k) total += weights[k];
    std::uint64_t r = rng.below(total);
    for (std::size_t k = 2; k < weights.size(); ++k) {
        if (r < weights[k]) return k;
        r -= weights[k];
    }
    return weights.size() - 1;
}

} // namespace

std::pair<PreferenceOrdering, ExtractionConfig> sample_scenario(Rng& rng,
                                                                const StudyConfig& config) {
    config.validate();
    const std::vector<ArgumentId> args = config.framework.non_decision_arguments();
    const std::size_t n = args.size();

    static thread_local std::vector<std::uint64_t> weights_cache;
    static thread_local std::size_t weights_cache_n = 0;
    if (weights_cache_n != n) {
        weights_cache = ordered_partition_weights(n);
        weights_cache_n = n;
    }
    const std::size_t tier_count = draw_tier_count(rng, weights_cache);

    // Uniform surjection onto the tiers, by rejection.
    std::vector<std::size_t> assignment(n);
    for (;;) {
        std::vector<bool> hit(tier_count, false);
        for (std::size_t i = 0; i < n; ++i) {
            assignment[i] = rng.below(tier_count);
            hit[assignment[i]] = true;
        }
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) break;
    }
    std::vector<std::set<ArgumentId>> tiers(tier_count);
    for (std::size_t i = 0; i < n; ++i) tiers[assignment[i]].insert(args[i]);

    std::vector<GapKind> gaps(tier_count - 1);
    for (auto& gap : gaps)
        gap = rng.below(2) == 0 ? GapKind::kGreater : GapKind::kMuchGreater;

    RangeParams range;
    range.top = rng.range(config.top_range.first, config.top_range.second);
    if (config.centralisation) {
        range.bottom = 1.0 - range.top;
    } else {
        range.bottom =
            rng.range(config.bottom_range.first, std::min(config.bottom_range.second, range.top));
    }

    const double ratio = config.ratio_choices[rng.below(config.ratio_choices.size())];

    ExtractionConfig extraction;
    extraction.weights.greater_step = config.greater_step;
    extraction.weights.much_greater_step = ratio * config.greater_step;
    extraction.function = range;

    return {PreferenceOrdering(std::move(tiers), std::move(gaps)), extraction};
}

double pairwise_agreement(const std::vector<std::string>& labels1,
                          const std::vector<std::string>& labels2) {
    if (labels1.size() != labels2.size())
        throw LengthMismatchError("label sequences differ in length");
    if (labels1.empty()) throw EmptyError("label sequences are empty");
    std::size_t equal = 0;
    for (std::size_t i = 0; i < labels1.size(); ++i)
        if (labels1[i] == labels2[i]) ++equal;
    return static_cast<double>(equal) / static_cast<double>(labels1.size());
}

double cohen_kappa(const std::vector<std::string>& labels1,
                   const std::vector<std::string>& labels2) {
    if (labels1.size() != labels2.size())
        throw LengthMismatchError("label sequences differ in length");
    if (labels1.empty()) throw EmptyError("label sequences are empty");

    const double n = static_cast<double>(labels1.size());
    std::map<std::string, std::size_t> marginal1, marginal2;
    std::size_t equal = 0;
    for (std::size_t i = 0; i < labels1.size(); ++i) {
        if (labels1[i] == labels2[i]) ++equal;
        ++marginal1[labels1[i]];
        ++marginal2[labels2[i]];
    }
    const double observed = equal / n;
    double expected = 0.0;
    for (const auto& [label, count] : marginal1) {
        auto it = marginal2.find(label);
        if (it != marginal2.end()) expected += (count / n) * (it->second / n);
    }
    if (expected >= 1.0) return observed == 1.0 ? 1.0 : 0.0;
    return (observed - expected) / (1.0 - expected);
}

namespace {

struct SampleLabels {
    std::string qe, eb, df;
};

SampleLabels evaluate_sample(const StudyConfig& config, std::uint64_t index) {
    Rng rng = derive_stream(config.seed, index);
    const auto [ordering, extraction] = sample_scenario(rng, config);
    const ScoreAssignment scores = extract_qbaf(config.framework, ordering, extraction);
    SampleLabels labels;
    const auto& decisions = config.framework.decisions();
    labels.qe =
        decide(evaluate(config.framework, scores, SemanticsKind::kQuadraticEnergy), decisions)
            .label();
    labels.eb =
        decide(evaluate(config.framework, scores, SemanticsKind::kEulerBased), decisions).label();
    labels.df =
        decide(evaluate(config.framework, scores, SemanticsKind::kDfQuad), decisions).label();
    return labels;
}

} // namespace

StudyReport run_agreement_study(const StudyConfig& config, unsigned workers) {
    config.validate();
    const std::size_t n = config.sample_count;
    std::vector<SampleLabels> labels(n);

    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) labels[i] = evaluate_sample(config, i);
    } else {
        // Indexed slots: the partition into chunks cannot affect the report.
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(n, w * chunk);
            const std::size_t end = std::min(n, begin + chunk);
            if (begin == end) break;
            pool.emplace_back([&, begin, end] {
                for (std::size_t i = begin; i < end; ++i) labels[i] = evaluate_sample(config, i);
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<std::string> qe(n), eb(n), df(n);
    for (std::size_t i = 0; i < n; ++i) {
        qe[i] = labels[i].qe;
        eb[i] = labels[i].eb;
        df[i] = labels[i].df;
    }

    StudyReport report;
    report.sample_count = n;
    report.seed = config.seed;
    report.centralisation = config.centralisation;
    report.qe_eb = {pairwise_agreement(qe, eb), cohen_kappa(qe, eb)};
    report.qe_df = {pairwise_agreement(qe, df), cohen_kappa(qe, df)};
    report.eb_df = {pairwise_agreement(eb, df), cohen_kappa(eb, df)};
    for (const auto& [kind, sequence] :
         {std::pair{std::string("qe"), &qe}, {std::string("eb"), &eb},
          {std::string("dfquad"), &df}}) {
        auto& counts = report.decision_counts[kind];
        for (const auto& label : *sequence) ++counts[label];
    }
    return report;
}

double table_tolerance(int paper_decimals) {
    // Published values carry their print precision: +-0.02 against two
    // decimals, +-0.05 where only one decimal was printed.
    return paper_decimals >= 2 ? 0.02 : 0.05;
}

namespace {

struct PublishedValue {
    double value;
    int decimals;
};

struct PublishedRow {
    const char* ordering; // DSL, or "-" when all arguments are indifferent
    double top, bottom, ratio;
    bool bold_fast; // published selection: true = fast, false = slow
    PublishedValue qe_slow, qe_fast, eb_slow, eb_fast, df_slow, df_fast;
};

constexpr PublishedRow kPublishedRows[] = {
    {"-", 0, 0, 0, true,
     {0.5, 1}, {0.51, 2}, {0.50, 2}, {0.52, 2}, {0.44, 2}, {0.63, 2}},
    {"c=f >> b=e > a=d", 0.9, 0.1, 3, false,
     {0.58, 2}, {0.33, 2}, {0.56, 2}, {0.39, 2}, {0.78, 2}, {0.23, 2}},
    {"c=f >> b=e > a=d", 0.9, 0.1, 5, false,
     {0.57, 2}, {0.32, 2}, {0.55, 2}, {0.39, 2}, {0.79, 2}, {0.2, 1}},
    {"c=f >> b=e > a=d", 0.75, 0.25, 5, false,
     {0.52, 2}, {0.4, 1}, {0.53, 2}, {0.43, 2}, {0.63, 2}, {0.38, 2}},
    {"b=e > a=d >> c=f", 0.8, 0.2, 3, true,
     {0.5, 1}, {0.63, 2}, {0.52, 2}, {0.60, 2}, {0.28, 2}, {0.87, 2}},
    {"b=e > a=d >> c=f", 0.6, 0.4, 3, true,
     {0.5, 1}, {0.53, 2}, {0.5, 1}, {0.54, 2}, {0.40, 2}, {0.71, 2}},
    {"a=d >> c=f > b=e", 0.8, 0.2, 4, true,
     {0.36, 2}, {0.6, 1}, {0.4, 1}, {0.59, 2}, {0.15, 2}, {0.76, 2}},
    {"a=d >> c=f > b=e", 1.0, 0.0, 4, true,
     {0.25, 2}, {0.7, 1}, {0.37, 2}, {0.65, 2}, {0.0, 0}, {0.9, 1}},
};

} // namespace

std::size_t ReproductionReport::decision_cell_count() const { return cells.size() / 2; }

std::size_t ReproductionReport::decision_match_count() const {
    std::size_t count = 0;
    for (const auto& cell : cells)
        if (cell.option == "slow" && cell.decision_match) ++count;
    return count;
}

std::vector<const TableCell*> ReproductionReport::strength_mismatches() const {
    std::vector<const TableCell*> out;
    for (const auto& cell : cells)
        if (!cell.within_tolerance) out.push_back(&cell);
    return out;
}

ReproductionReport reproduce_paper_tables() {
    const BipolarFramework framework = feeding_example_framework();
    ReproductionReport report;

    int row_index = 0;
    for (const auto& row : kPublishedRows) {
        ++row_index;
        ScoreAssignment scores;
        if (std::string_view(row.ordering) == "-") {
            for (const auto& id : framework.arguments()) scores[id] = 0.5;
        } else {
            ExtractionConfig config;
            config.weights.greater_step = 1.0;
            config.weights.much_greater_step = row.ratio;
            config.function = RangeParams{row.top, row.bottom};
            scores = extract_qbaf(framework, PreferenceOrdering::parse(row.ordering), config);
        }

        const struct {
            SemanticsKind kind;
            PublishedValue slow, fast;
        } columns[] = {
            {SemanticsKind::kQuadraticEnergy, row.qe_slow, row.qe_fast},
            {SemanticsKind::kEulerBased, row.eb_slow, row.eb_fast},
            {SemanticsKind::kDfQuad, row.df_slow, row.df_fast},
        };
        for (const auto& column : columns) {
            const StrengthAssignment strengths = evaluate(framework, scores, column.kind);
            const double slow = strengths.at("D1");
            const double fast = strengths.at("D2");
            const bool computed_fast = fast > slow;
            const bool decision_match = computed_fast == row.bold_fast;

            auto push = [&](const char* option, double computed, PublishedValue published,
                            bool bold) {
                TableCell cell;
                cell.row = row_index;
                cell.ordering = row.ordering;
                cell.semantics = column.kind;
                cell.option = option;
                cell.computed = computed;
                cell.paper = published.value;
                cell.paper_decimals = published.decimals;
                cell.delta = computed - published.value;
                cell.bold = bold;
                cell.decision_match = decision_match;
                cell.within_tolerance =
                    std::abs(cell.delta) <= table_tolerance(published.decimals);
                report.cells.push_back(std::move(cell));
            };
            push("slow", slow, column.slow, !row.bold_fast);
            push("fast", fast, column.fast, row.bold_fast);
        }
    }
    return report;
}

std::string to_csv(const ReproductionReport& report) {
    std::ostringstream out;
    out << "row,semantics,option,computed,paper,delta,decision_match\n";
    for (const auto& cell : report.cells) {
        out << cell.row << ',' << to_string(cell.semantics) << ',' << cell.option << ','
            << format_number(cell.computed) << ','
            << format_fixed(cell.paper, cell.paper_decimals) << ',' << format_number(cell.delta)
            << ',' << (cell.decision_match ? "true" : "false") << '\n';
    }
    return out.str();
}

} // namespace qbaf
