#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qbaf/bsef.hpp"
#include "qbaf/core.hpp"
#include "qbaf/preferences.hpp"

namespace qbaf {

// In-memory form of a framework document. The JSON schema is strict:
//   arguments  [{"id": str, "label"?: str}, ...]   required
//   attacks    [[source, target], ...]             required
//   supports   [[source, target], ...]             required
//   decisions  [id, ...]                           required
//   preferences  DSL string                        optional
//   extraction   {"delta","Delta","function","top","bot","alpha","beta"}  optional
//   base_scores  {id: number, ...}                 optional
// Unknown fields are rejected, with the offending JSON path in the message.
struct LoadedDocument {
    BipolarFramework framework;
    std::map<ArgumentId, std::string> labels;
    std::optional<PreferenceOrdering> preferences;
    std::optional<ExtractionConfig> extraction;
    std::optional<ScoreAssignment> base_scores;
};

LoadedDocument load_framework(std::istream& in);
LoadedDocument load_framework(const std::string& text);
LoadedDocument load_framework_file(const std::string& path);

// Serialises a framework plus base scores as a framework document with a
// "base_scores" field. Output is byte-reproducible: object keys and edge
// lists are ordered, numbers carry at most 12 significant digits.
std::string qbaf_to_json(const BipolarFramework& framework, const ScoreAssignment& scores,
                         const std::map<ArgumentId, std::string>& labels = {});
void save_qbaf(const BipolarFramework& framework, const ScoreAssignment& scores,
               std::ostream& out, const std::map<ArgumentId, std::string>& labels = {});
void save_qbaf_file(const BipolarFramework& framework, const ScoreAssignment& scores,
                    const std::string& path,
                    const std::map<ArgumentId, std::string>& labels = {});

// JSON form of an extraction config, matching the schema above.
std::string extraction_to_json(const ExtractionConfig& config);

} // namespace qbaf
