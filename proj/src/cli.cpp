#include "qbaf/cli.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbaf/experiments.hpp"
#include "qbaf/format.hpp"
#include "qbaf/io.hpp"

namespace qbaf {

namespace {

// Writes either to the given stream ("-") or to a file.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw IoError("cannot open '" + path + "' for writing");
            stream_ = file_.get();
        }
    }

    std::ostream& stream() { return *stream_; }

    void finish() {
        stream_->flush();
        if (!*stream_) throw IoError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

ScoreAssignment scores_from_document(const LoadedDocument& doc) {
    if (doc.base_scores) return *doc.base_scores;
    if (!doc.preferences)
        throw ValidationError("document has neither base scores nor a preferences string");
    if (!doc.extraction)
        throw ValidationError("document has no extraction config");
    return extract_qbaf(doc.framework, *doc.preferences, *doc.extraction);
}

void print_check_report(std::ostream& out, const char* name, const CheckReport& report) {
    const char* status = "pass";
    if (report.status == CheckReport::Status::kFail) status = "fail";
    if (report.status == CheckReport::Status::kNotApplicable) status = "not-applicable";
    out << name << " " << status << "\n";
    for (const auto& example : report.counterexamples)
        out << "  counterexample: " << example << "\n";
}

nlohmann::json study_report_to_json(const StudyReport& report) {
    nlohmann::json doc;
    doc["samples"] = report.sample_count;
    doc["seed"] = report.seed;
    doc["centralisation"] = report.centralisation;
    doc["agreement"] = {{"QE-EB", report.qe_eb.agreement},
                        {"QE-DF", report.qe_df.agreement},
                        {"EB-DF", report.eb_df.agreement}};
    doc["kappa"] = {{"QE-EB", report.qe_eb.kappa},
                    {"QE-DF", report.qe_df.kappa},
                    {"EB-DF", report.eb_df.kappa}};
    doc["decisions"] = nlohmann::json::object();
    for (const auto& [kind, counts] : report.decision_counts) {
        nlohmann::json& entry = doc["decisions"][kind] = nlohmann::json::object();
        for (const auto& [label, count] : counts) entry[label] = count;
    }
    return doc;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"preference-driven decision making over bipolar argumentation frameworks"};
    app.require_subcommand(1);
    std::function<void()> action;

    // extract: framework + preferences -> QBAF document with base scores
    {
        auto* cmd = app.add_subcommand(
            "extract", "extract base scores from the document's preference ordering");
        auto input = std::make_shared<std::string>();
        auto output = std::make_shared<std::string>("-");
        cmd->add_option("input", *input, "framework document (JSON)")->required();
        cmd->add_option("--out", *output, "output path, '-' for stdout");
        cmd->callback([&action, input, output, &out] {
            action = [input, output, &out] {
                const LoadedDocument doc = load_framework_file(*input);
                if (!doc.preferences)
                    throw ValidationError("document has no preferences string");
                if (!doc.extraction) throw ValidationError("document has no extraction config");
                const ScoreAssignment scores =
                    extract_qbaf(doc.framework, *doc.preferences, *doc.extraction);
                OutputTarget target(*output, out);
                save_qbaf(doc.framework, scores, target.stream(), doc.labels);
                target.finish();
            };
        });
    }

    // decide: QBAF (or framework + preferences) -> winner and strengths
    {
        auto* cmd = app.add_subcommand("decide", "evaluate strengths and pick the decision");
        auto input = std::make_shared<std::string>();
        auto semantics = std::make_shared<std::string>("qe");
        auto output = std::make_shared<std::string>("-");
        cmd->add_option("input", *input, "framework or QBAF document (JSON)")->required();
        cmd->add_option("--semantics", *semantics, "qe, eb or dfquad")
            ->check(CLI::IsMember({"qe", "eb", "dfquad"}));
        cmd->add_option("--out", *output, "output path, '-' for stdout");
        cmd->callback([&action, input, semantics, output, &out] {
            action = [input, semantics, output, &out] {
                const LoadedDocument doc = load_framework_file(*input);
                const ValidationReport validation = validate_for_decisions(doc.framework);
                if (!validation.ok)
                    throw ValidationError("framework is not evaluable: " +
                                          validation.violations.front().detail);
                const ScoreAssignment scores = scores_from_document(doc);
                const StrengthAssignment strengths =
                    evaluate(doc.framework, scores, semantics_from_string(*semantics));
                const DecisionOutcome outcome = decide(strengths, doc.framework.decisions());
                OutputTarget target(*output, out);
                target.stream() << "winner " << outcome.label() << "\n";
                for (const auto& [id, sigma] : outcome.strengths)
                    target.stream() << id << " " << format_number(sigma) << "\n";
                target.finish();
            };
        });
    }

    // check: axiom and property report for the document's ordering/config
    {
        auto* cmd = app.add_subcommand("check", "axiom and property report");
        auto input = std::make_shared<std::string>();
        auto against = std::make_shared<std::string>();
        cmd->add_option("input", *input, "framework document (JSON)")->required();
        cmd->add_option("--against", *against,
                        "second preference ordering (DSL) for the structure axiom");
        cmd->callback([&action, input, against, &out, &err] {
            action = [input, against, &out, &err] {
                const LoadedDocument doc = load_framework_file(*input);
                if (!doc.preferences)
                    throw ValidationError("document has no preferences string");
                if (!doc.extraction) throw ValidationError("document has no extraction config");
                if (doc.extraction->weights.relation_coherence_at_risk())
                    err << "warning: much-greater step does not exceed greater step\n";
                const ScoreAssignment scores = extract_scores(*doc.preferences, *doc.extraction);
                print_check_report(out, "axiom1", check_axiom1(*doc.preferences, scores));
                print_check_report(out, "axiom2", check_axiom2(*doc.preferences, scores));
                if (!against->empty())
                    print_check_report(out, "axiom3",
                                       check_axiom3(*doc.extraction, *doc.preferences,
                                                    PreferenceOrdering::parse(*against)));
                const PropertyReport properties =
                    check_properties(*doc.preferences, scores, *doc.extraction);
                out << "normalisation " << (properties.normalisation ? "true" : "false") << "\n";
                out << "centralisation " << (properties.centralisation ? "true" : "false")
                    << "\n";
                out << "regularity " << (properties.regularity ? "true" : "false") << "\n";
                out << "stability " << (properties.stability ? "true" : "false") << "\n";
            };
        });
    }

    // experiment: semantics agreement study
    {
        auto* cmd = app.add_subcommand("experiment", "run the semantics agreement study");
        auto samples = std::make_shared<std::size_t>(30000);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto centralisation = std::make_shared<bool>(false);
        auto threads = std::make_shared<unsigned>(1);
        auto output = std::make_shared<std::string>("-");
        auto input = std::make_shared<std::string>();
        cmd->add_option("--samples", *samples, "number of sampled scenarios");
        cmd->add_option("--seed", *seed, "random seed");
        cmd->add_flag("--centralisation", *centralisation,
                      "force bottom = 1 - top in sampled ranges");
        cmd->add_option("--threads", *threads, "worker threads (report is thread-invariant)");
        cmd->add_option("--out", *output, "output path, '-' for stdout");
        cmd->add_option("--input", *input, "framework document (defaults to the built-in one)");
        cmd->callback([&action, samples, seed, centralisation, threads, output, input, &out] {
            action = [samples, seed, centralisation, threads, output, input, &out] {
                StudyConfig config{input->empty() ? feeding_example_framework()
                                                  : load_framework_file(*input).framework};
                config.sample_count = *samples;
                config.seed = *seed;
                config.centralisation = *centralisation;
                const StudyReport report =
                    run_agreement_study(config, std::max(1u, *threads));
                OutputTarget target(*output, out);
                target.stream() << study_report_to_json(report).dump(2) << "\n";
                target.finish();
            };
        });
    }

    // curves: influence of a single attacker/supporter as CSV
    {
        auto* cmd = app.add_subcommand("curves", "influence curves as CSV");
        auto semantics = std::make_shared<std::vector<std::string>>();
        auto polarity = std::make_shared<std::string>("both");
        auto influencers = std::make_shared<std::vector<double>>();
        auto grid = std::make_shared<int>(101);
        auto output = std::make_shared<std::string>("-");
        cmd->add_option("--semantics", *semantics, "qe, eb, dfquad (repeatable; default all)")
            ->check(CLI::IsMember({"qe", "eb", "dfquad"}));
        cmd->add_option("--polarity", *polarity, "attack, support or both")
            ->check(CLI::IsMember({"attack", "support", "both"}));
        cmd->add_option("--influencer", *influencers,
                        "influencer strengths (default 0 0.25 0.5 0.75 1)");
        cmd->add_option("--grid", *grid, "points per curve");
        cmd->add_option("--out", *output, "output path, '-' for stdout");
        cmd->callback([&action, semantics, polarity, influencers, grid, output, &out] {
            action = [semantics, polarity, influencers, grid, output, &out] {
                std::vector<SemanticsKind> kinds;
                if (semantics->empty()) {
                    kinds = {SemanticsKind::kDfQuad, SemanticsKind::kQuadraticEnergy,
                             SemanticsKind::kEulerBased};
                } else {
                    for (const auto& name : *semantics)
                        kinds.push_back(semantics_from_string(name));
                }
                std::vector<Polarity> polarities;
                if (*polarity == "attack" || *polarity == "both")
                    polarities.push_back(Polarity::kAttack);
                if (*polarity == "support" || *polarity == "both")
                    polarities.push_back(Polarity::kSupport);
                std::vector<double> strengths = *influencers;
                if (strengths.empty()) strengths = {0.0, 0.25, 0.5, 0.75, 1.0};

                OutputTarget target(*output, out);
                target.stream() << "semantics,polarity,influencer,tau,sigma\n";
                for (const SemanticsKind kind : kinds)
                    for (const Polarity pol : polarities)
                        for (const double s : strengths)
                            for (const CurvePoint& point : influence_curve(kind, pol, s, *grid))
                                target.stream()
                                    << to_string(kind) << ',' << to_string(pol) << ','
                                    << format_number(s) << ',' << format_number(point.tau) << ','
                                    << format_number(point.sigma) << "\n";
                target.finish();
            };
        });
    }

    // table: reproduction of the published evaluation table
    {
        auto* cmd = app.add_subcommand("table", "published-table reproduction as CSV");
        auto output = std::make_shared<std::string>("-");
        cmd->add_option("--out", *output, "output path, '-' for stdout");
        cmd->callback([&action, output, &out] {
            action = [output, &out] {
                OutputTarget target(*output, out);
                target.stream() << to_csv(reproduce_paper_tables());
                target.finish();
            };
        });
    }

    std::vector<const char*> argv;
    argv.push_back("qbaf");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        action();
        return 0;
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace qbaf
