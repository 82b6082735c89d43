#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qbaf/bsef.hpp"
#include "qbaf/core.hpp"
#include "qbaf/preferences.hpp"
#include "qbaf/rng.hpp"
#include "qbaf/semantics.hpp"

namespace qbaf {

// The assistive-feeding framework used throughout: six arguments a..f
// feeding into the decision arguments D1 (slow) and D2 (fast).
BipolarFramework feeding_example_framework();

// Configuration of the semantics-agreement study. Each sample draws a
// preference ordering over the framework's non-decision arguments plus a
// range-based extraction config, evaluates all three semantics and records
// the selected decision.
struct StudyConfig {
    BipolarFramework framework;
    std::size_t sample_count = 30000;
    std::uint64_t seed = 0;
    // With centralisation on, bottom = 1 - top; otherwise bottom is drawn
    // from bottom_range (truncated to stay below top).
    bool centralisation = true;
    std::pair<double, double> top_range{0.55, 1.0};
    std::pair<double, double> bottom_range{0.0, 0.45};
    std::vector<double> ratio_choices{2.0, 3.0, 4.0, 5.0, 6.0};
    double greater_step = 1.0;

    void validate() const;
};

// One random scenario: a uniformly random ordered partition of the
// non-decision arguments into >= 2 tiers with i.i.d. gap kinds, plus
// sampled range limits and much-greater ratio.
std::pair<PreferenceOrdering, ExtractionConfig> sample_scenario(Rng& rng,
                                                                const StudyConfig& config);

// Fraction of positions where the two equal-length label sequences agree.
double pairwise_agreement(const std::vector<std::string>& labels1,
                          const std::vector<std::string>& labels2);

// Cohen's kappa for two equal-length label sequences. The degenerate case
// (chance agreement 1) returns 1 when the sequences agree everywhere, 0
// otherwise.
double cohen_kappa(const std::vector<std::string>& labels1,
                   const std::vector<std::string>& labels2);

struct PairStats {
    double agreement = 0.0;
    double kappa = 0.0;
};

struct StudyReport {
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    bool centralisation = true;
    PairStats qe_eb, qe_df, eb_df;
    // Per semantics: decision label ("D1", "D2", ..., or "TIE") -> count.
    std::map<std::string, std::map<std::string, std::size_t>> decision_counts;
};

// Runs the agreement study. The report is identical for any worker count:
// per-sample generators are derived from (seed, index) and results land in
// indexed slots.
StudyReport run_agreement_study(const StudyConfig& config, unsigned workers = 1);

// Reproduction of the published evaluation table on the feeding example:
// eight preference/design-choice rows evaluated under all three semantics.
struct TableCell {
    int row = 0;                 // 1-based row index
    std::string ordering;        // DSL of the row's ordering, or "-" for flat
    SemanticsKind semantics = SemanticsKind::kQuadraticEnergy;
    std::string option;          // "slow" or "fast"
    double computed = 0.0;
    double paper = 0.0;          // value as printed in the published table
    int paper_decimals = 2;      // printed precision of that value
    double delta = 0.0;          // computed - paper
    bool bold = false;           // option selected in the published table
    bool decision_match = false; // computed argmax equals the published one
    bool within_tolerance = false;
};

struct ReproductionReport {
    std::vector<TableCell> cells;

    std::size_t decision_cell_count() const;  // rows x semantics
    std::size_t decision_match_count() const; // how many of those agree
    std::vector<const TableCell*> strength_mismatches() const;
};

// Strength tolerance: 0.02 for two-decimal published values, widened to the
// print quantisation (0.05) for one-decimal values.
double table_tolerance(int paper_decimals);

ReproductionReport reproduce_paper_tables();

// CSV with the fixed header row,semantics,option,computed,paper,delta,decision_match.
std::string to_csv(const ReproductionReport& report);

} // namespace qbaf
