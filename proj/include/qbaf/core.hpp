#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qbaf/errors.hpp"

namespace qbaf {

// Arguments are identified by short case-sensitive tokens of
// letters, digits and underscores.
using ArgumentId = std::string;

bool is_valid_argument_id(const ArgumentId& id);

struct Edge {
    ArgumentId source;
    ArgumentId target;

    auto operator<=>(const Edge&) const = default;
};

// A bipolar argumentation framework: a finite argument set with directed
// attack and support relations, plus the designated decision arguments.
// Immutable after construction; the constructor enforces the structural
// invariants (endpoints resolve, no self-edges, no edge is both attack
// and support, decisions are a non-empty duplicate-free subset).
class BipolarFramework {
public:
    BipolarFramework(std::set<ArgumentId> arguments,
                     std::set<Edge> attacks,
                     std::set<Edge> supports,
                     std::vector<ArgumentId> decisions);

    const std::set<ArgumentId>& arguments() const { return arguments_; }
    const std::set<Edge>& attacks() const { return attacks_; }
    const std::set<Edge>& supports() const { return supports_; }
    const std::vector<ArgumentId>& decisions() const { return decisions_; }

    bool contains(const ArgumentId& id) const { return arguments_.count(id) > 0; }
    bool is_decision(const ArgumentId& id) const;

    // All arguments that are not decision arguments, sorted.
    std::vector<ArgumentId> non_decision_arguments() const;

    // Incoming influencers of an argument, split by edge kind, sorted.
    std::vector<ArgumentId> attackers_of(const ArgumentId& id) const;
    std::vector<ArgumentId> supporters_of(const ArgumentId& id) const;

    bool operator==(const BipolarFramework&) const = default;

private:
    std::set<ArgumentId> arguments_;
    std::set<Edge> attacks_;
    std::set<Edge> supports_;
    std::vector<ArgumentId> decisions_;
};

// Base scores (tau) and final strengths (sigma), both argument -> [0,1].
using ScoreAssignment = std::map<ArgumentId, double>;
using StrengthAssignment = std::map<ArgumentId, double>;

enum class DecisionCondition {
    kNoEdgeFromDecision, // (i) decision arguments have no outgoing edges
    kPathToDecision,     // (ii) every other argument reaches some decision
    kAcyclic,            // (iii) no directed cycle
};

const char* to_string(DecisionCondition condition);

struct Violation {
    DecisionCondition condition;
    std::string detail; // names the offending argument or edge
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

// Checks the three conditions a framework must meet before its decision
// arguments can be evaluated. Violations are reported as data, never thrown.
ValidationReport validate_for_decisions(const BipolarFramework& framework);

// Deterministic topological order: arguments grouped by dependency depth,
// each group sorted lexicographically. Throws CycleError on cyclic input,
// naming an argument that lies on a cycle.
std::vector<ArgumentId> topological_order(const BipolarFramework& framework);

} // namespace qbaf
