#include "qbaf/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbaf/format.hpp"

namespace qbaf {

namespace {

using nlohmann::json;

// Round to the serialised precision so that dumped numbers never carry
// more than 12 significant digits.
double quantize(double value) {
    return std::strtod(format_number(value).c_str(), nullptr);
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                         const std::string& path) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (key == name) known = true;
        if (!known) throw SchemaError("unknown field '" + key + "' at " + path);
    }
}

const json& require_field(const json& object, const char* name, const std::string& path) {
    auto it = object.find(name);
    if (it == object.end())
        throw SchemaError("missing field '" + std::string(name) + "' at " + path);
    return *it;
}

std::string require_string(const json& value, const std::string& path) {
    if (!value.is_string()) throw SchemaError("expected a string at " + path);
    return value.get<std::string>();
}

double require_number(const json& value, const std::string& path) {
    if (!value.is_number()) throw SchemaError("expected a number at " + path);
    return value.get<double>();
}

std::set<Edge> read_edges(const json& value, const std::string& path) {
    if (!value.is_array()) throw SchemaError("expected an array at " + path);
    std::set<Edge> edges;
    for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string entry_path = path + "/" + std::to_string(i);
        const json& entry = value[i];
        if (!entry.is_array() || entry.size() != 2)
            throw SchemaError("expected a [source, target] pair at " + entry_path);
        edges.insert({require_string(entry[0], entry_path + "/0"),
                      require_string(entry[1], entry_path + "/1")});
    }
    return edges;
}

// Fields of the extraction object; absent and null are both "unused".
std::optional<double> optional_number(const json& object, const char* name,
                                      const std::string& path) {
    auto it = object.find(name);
    if (it == object.end() || it->is_null()) return std::nullopt;
    return require_number(*it, path + "/" + name);
}

ExtractionConfig read_extraction(const json& object, const std::string& path) {
    if (!object.is_object()) throw SchemaError("expected an object at " + path);
    reject_unknown_keys(object, {"delta", "Delta", "function", "top", "bot", "alpha", "beta"},
                        path);
    ExtractionConfig config;
    config.weights.greater_step =
        require_number(require_field(object, "delta", path), path + "/delta");
    config.weights.much_greater_step =
        require_number(require_field(object, "Delta", path), path + "/Delta");
    const std::string function =
        require_string(require_field(object, "function", path), path + "/function");

    const auto top = optional_number(object, "top", path);
    const auto bot = optional_number(object, "bot", path);
    const auto alpha = optional_number(object, "alpha", path);
    const auto beta = optional_number(object, "beta", path);

    if (function == "nu1") {
        if (!top || !bot)
            throw SchemaError("function nu1 needs 'top' and 'bot' at " + path);
        if (alpha || beta)
            throw SchemaError("function nu1 does not take 'alpha'/'beta' at " + path);
        config.function = RangeParams{*top, *bot};
    } else if (function == "nu2") {
        if (!alpha || !beta)
            throw SchemaError("function nu2 needs 'alpha' and 'beta' at " + path);
        if (top || bot)
            throw SchemaError("function nu2 does not take 'top'/'bot' at " + path);
        config.function = SqueezeParams{*alpha, *beta};
    } else {
        throw SchemaError("field 'function' must be \"nu1\" or \"nu2\" at " + path);
    }
    try {
        config.validate();
    } catch (const ParamError& e) {
        throw ValidationError(std::string(e.what()) + " at " + path);
    }
    return config;
}

LoadedDocument from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("document root must be an object");
    reject_unknown_keys(doc,
                        {"arguments", "attacks", "supports", "decisions", "preferences",
                         "extraction", "base_scores"},
                        "/");

    const json& arguments = require_field(doc, "arguments", "/");
    if (!arguments.is_array()) throw SchemaError("expected an array at /arguments");
    std::set<ArgumentId> ids;
    std::map<ArgumentId, std::string> labels;
    for (std::size_t i = 0; i < arguments.size(); ++i) {
        const std::string path = "/arguments/" + std::to_string(i);
        const json& entry = arguments[i];
        if (!entry.is_object()) throw SchemaError("expected an object at " + path);
        reject_unknown_keys(entry, {"id", "label"}, path);
        const std::string id = require_string(require_field(entry, "id", path), path + "/id");
        if (!ids.insert(id).second)
            throw ValidationError("duplicate argument id '" + id + "' at " + path);
        if (auto it = entry.find("label"); it != entry.end() && !it->is_null())
            labels[id] = require_string(*it, path + "/label");
    }

    std::set<Edge> attacks = read_edges(require_field(doc, "attacks", "/"), "/attacks");
    std::set<Edge> supports = read_edges(require_field(doc, "supports", "/"), "/supports");

    const json& decisions_json = require_field(doc, "decisions", "/");
    if (!decisions_json.is_array()) throw SchemaError("expected an array at /decisions");
    std::vector<ArgumentId> decisions;
    for (std::size_t i = 0; i < decisions_json.size(); ++i)
        decisions.push_back(
            require_string(decisions_json[i], "/decisions/" + std::to_string(i)));

    LoadedDocument loaded{
        BipolarFramework(std::move(ids), std::move(attacks), std::move(supports),
                         std::move(decisions)),
        std::move(labels), std::nullopt, std::nullopt, std::nullopt};

    if (auto it = doc.find("preferences"); it != doc.end() && !it->is_null()) {
        const std::string text = require_string(*it, "/preferences");
        try {
            loaded.preferences = PreferenceOrdering::parse(text);
        } catch (const Error& e) {
            throw ValidationError("bad preferences string: " + std::string(e.what()));
        }
    }

    if (auto it = doc.find("extraction"); it != doc.end() && !it->is_null())
        loaded.extraction = read_extraction(*it, "/extraction");

    if (auto it = doc.find("base_scores"); it != doc.end() && !it->is_null()) {
        if (!it->is_object()) throw SchemaError("expected an object at /base_scores");
        ScoreAssignment scores;
        for (const auto& [id, value] : it->items()) {
            if (!loaded.framework.contains(id))
                throw ValidationError("base score for unknown argument '" + id + "'");
            scores[id] = require_number(value, "/base_scores/" + id);
        }
        for (const auto& id : loaded.framework.arguments()) {
            auto score = scores.find(id);
            if (score == scores.end())
                throw ValidationError("base score missing for argument '" + id + "'");
            if (!(score->second >= 0.0 && score->second <= 1.0))
                throw ValidationError("base score of '" + id + "' is outside [0,1]");
            if (loaded.framework.is_decision(id) && score->second != 0.5)
                throw ValidationError("decision argument '" + id +
                                      "' must have base score 0.5");
        }
        loaded.base_scores = std::move(scores);
    }

    return loaded;
}

} // namespace

LoadedDocument load_framework(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    return from_json(doc);
}

LoadedDocument load_framework(const std::string& text) {
    std::istringstream in(text);
    return load_framework(in);
}

LoadedDocument load_framework_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_framework(in);
}

std::string qbaf_to_json(const BipolarFramework& framework, const ScoreAssignment& scores,
                         const std::map<ArgumentId, std::string>& labels) {
    for (const auto& id : framework.arguments()) {
        if (scores.count(id) == 0)
            throw CoverageError("base scores miss argument '" + id + "'");
    }
    for (const auto& [id, value] : scores) {
        if (!framework.contains(id))
            throw CoverageError("base score for unknown argument '" + id + "'");
        if (!(value >= 0.0 && value <= 1.0))
            throw CoverageError("base score of '" + id + "' is outside [0,1]");
    }

    json doc;
    doc["arguments"] = json::array();
    for (const auto& id : framework.arguments()) {
        json entry{{"id", id}};
        if (auto it = labels.find(id); it != labels.end()) entry["label"] = it->second;
        doc["arguments"].push_back(std::move(entry));
    }
    auto edge_array = [](const std::set<Edge>& edges) {
        json out = json::array();
        for (const auto& e : edges) out.push_back({e.source, e.target});
        return out;
    };
    doc["attacks"] = edge_array(framework.attacks());
    doc["supports"] = edge_array(framework.supports());
    doc["decisions"] = framework.decisions();
    json& base_scores = doc["base_scores"] = json::object();
    for (const auto& [id, value] : scores) base_scores[id] = quantize(value);
    return doc.dump(2) + "\n";
}

void save_qbaf(const BipolarFramework& framework, const ScoreAssignment& scores,
               std::ostream& out, const std::map<ArgumentId, std::string>& labels) {
    out << qbaf_to_json(framework, scores, labels);
    if (!out) throw IoError("write failed");
}

void save_qbaf_file(const BipolarFramework& framework, const ScoreAssignment& scores,
                    const std::string& path, const std::map<ArgumentId, std::string>& labels) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_qbaf(framework, scores, out, labels);
}

std::string extraction_to_json(const ExtractionConfig& config) {
    json out;
    out["delta"] = quantize(config.weights.greater_step);
    out["Delta"] = quantize(config.weights.much_greater_step);
    if (const auto* range = std::get_if<RangeParams>(&config.function)) {
        out["function"] = "nu1";
        out["top"] = quantize(range->top);
        out["bot"] = quantize(range->bottom);
        out["alpha"] = nullptr;
        out["beta"] = nullptr;
    } else {
        const auto& squeeze = std::get<SqueezeParams>(config.function);
        out["function"] = "nu2";
        out["top"] = nullptr;
        out["bot"] = nullptr;
        out["alpha"] = quantize(squeeze.alpha);
        out["beta"] = quantize(squeeze.beta);
    }
    return out.dump(2) + "\n";
}

} // namespace qbaf
