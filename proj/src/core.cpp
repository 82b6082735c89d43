#include "qbaf/core.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace qbaf {

bool is_valid_argument_id(const ArgumentId& id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

BipolarFramework::BipolarFramework(std::set<ArgumentId> arguments,
                                   std::set<Edge> attacks,
                                   std::set<Edge> supports,
                                   std::vector<ArgumentId> decisions)
    : arguments_(std::move(arguments)),
      attacks_(std::move(attacks)),
      supports_(std::move(supports)),
      decisions_(std::move(decisions)) {
    for (const auto& id : arguments_) {
        if (!is_valid_argument_id(id))
            throw ValidationError("invalid argument id '" + id + "'");
    }
    auto check_edges = [&](const std::set<Edge>& edges, const char* kind) {
        for (const auto& e : edges) {
            if (!contains(e.source) || !contains(e.target))
                throw ValidationError(std::string(kind) + " edge (" + e.source + ", " +
                                      e.target + ") has an endpoint outside the argument set");
            if (e.source == e.target)
                throw ValidationError(std::string(kind) + " self-edge on '" + e.source + "'");
        }
    };
    check_edges(attacks_, "attack");
    check_edges(supports_, "support");
    for (const auto& e : attacks_) {
        if (supports_.count(e) > 0)
            throw ValidationError("edge (" + e.source + ", " + e.target +
                                  ") is both an attack and a support");
    }
    if (decisions_.empty())
        throw ValidationError("decision argument list is empty");
    std::set<ArgumentId> seen;
    for (const auto& d : decisions_) {
        if (!contains(d))
            throw ValidationError("decision argument '" + d + "' is not in the argument set");
        if (!seen.insert(d).second)
            throw ValidationError("duplicate decision argument '" + d + "'");
    }
}

bool BipolarFramework::is_decision(const ArgumentId& id) const {
    return std::find(decisions_.begin(), decisions_.end(), id) != decisions_.end();
}

std::vector<ArgumentId> BipolarFramework::non_decision_arguments() const {
    std::vector<ArgumentId> out;
    for (const auto& id : arguments_)
        if (!is_decision(id)) out.push_back(id);
    return out;
}

std::vector<ArgumentId> BipolarFramework::attackers_of(const ArgumentId& id) const {
    std::vector<ArgumentId> out;
    for (const auto& e : attacks_)
        if (e.target == id) out.push_back(e.source);
    return out;
}

std::vector<ArgumentId> BipolarFramework::supporters_of(const ArgumentId& id) const {
    std::vector<ArgumentId> out;
    for (const auto& e : supports_)
        if (e.target == id) out.push_back(e.source);
    return out;
}

const char* to_string(DecisionCondition condition) {
    switch (condition) {
        case DecisionCondition::kNoEdgeFromDecision: return "no-edge-from-decision";
        case DecisionCondition::kPathToDecision: return "path-to-decision";
        case DecisionCondition::kAcyclic: return "acyclic";
    }
    return "?";
}

namespace {

std::vector<Edge> all_edges(const BipolarFramework& f) {
    std::vector<Edge> edges(f.attacks().begin(), f.attacks().end());
    edges.insert(edges.end(), f.supports().begin(), f.supports().end());
    return edges;
}

// Finds one argument on a directed cycle of the subgraph induced by `nodes`,
// in which every node is known to keep at least one predecessor. Walking
// backwards |nodes| steps must revisit a node; that node lies on a cycle.
ArgumentId node_on_cycle(const std::set<ArgumentId>& nodes,
                         const std::map<ArgumentId, std::vector<ArgumentId>>& predecessors) {
    ArgumentId current = *nodes.begin();
    std::set<ArgumentId> visited;
    while (visited.insert(current).second) {
        for (const auto& p : predecessors.at(current)) {
            if (nodes.count(p) > 0) {
                current = p;
                break;
            }
        }
    }
    return current;
}

} // namespace

ValidationReport validate_for_decisions(const BipolarFramework& framework) {
    ValidationReport report;
    auto add = [&](DecisionCondition c, std::string detail) {
        report.ok = false;
        report.violations.push_back({c, std::move(detail)});
    };

    const auto edges = all_edges(framework);

    // (i) decisions are sinks: no outgoing edges at all, including towards
    // other decisions.
    for (const auto& e : edges) {
        if (framework.is_decision(e.source))
            add(DecisionCondition::kNoEdgeFromDecision,
                "edge (" + e.source + ", " + e.target + ") leaves decision argument '" +
                    e.source + "'");
    }

    // (ii) every non-decision argument has a directed path to a decision.
    // Reachability backwards from the decision set.
    std::map<ArgumentId, std::vector<ArgumentId>> predecessors;
    for (const auto& id : framework.arguments()) predecessors[id] = {};
    for (const auto& e : edges) predecessors[e.target].push_back(e.source);

    std::set<ArgumentId> reaches;
    std::deque<ArgumentId> queue(framework.decisions().begin(), framework.decisions().end());
    for (const auto& d : framework.decisions()) reaches.insert(d);
    while (!queue.empty()) {
        ArgumentId id = queue.front();
        queue.pop_front();
        for (const auto& p : predecessors[id]) {
            if (reaches.insert(p).second) queue.push_back(p);
        }
    }
    for (const auto& id : framework.arguments()) {
        if (!framework.is_decision(id) && reaches.count(id) == 0)
            add(DecisionCondition::kPathToDecision,
                "argument '" + id + "' has no path to any decision argument");
    }

    // (iii) acyclicity, via iterative removal of sources.
    std::map<ArgumentId, std::size_t> indegree;
    for (const auto& id : framework.arguments()) indegree[id] = 0;
    for (const auto& e : edges) ++indegree[e.target];
    std::deque<ArgumentId> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push_back(id);
    std::size_t removed = 0;
    std::map<ArgumentId, std::vector<ArgumentId>> successors;
    for (const auto& e : edges) successors[e.source].push_back(e.target);
    while (!ready.empty()) {
        ArgumentId id = ready.front();
        ready.pop_front();
        ++removed;
        for (const auto& s : successors[id])
            if (--indegree[s] == 0) ready.push_back(s);
    }
    if (removed < framework.arguments().size()) {
        std::set<ArgumentId> remaining;
        for (const auto& [id, deg] : indegree)
            if (deg > 0) remaining.insert(id);
        add(DecisionCondition::kAcyclic,
            "argument '" + node_on_cycle(remaining, predecessors) + "' lies on a directed cycle");
    }

    return report;
}

std::vector<ArgumentId> topological_order(const BipolarFramework& framework) {
    const auto edges = all_edges(framework);
    std::map<ArgumentId, std::size_t> indegree;
    std::map<ArgumentId, std::vector<ArgumentId>> successors;
    std::map<ArgumentId, std::vector<ArgumentId>> predecessors;
    for (const auto& id : framework.arguments()) {
        indegree[id] = 0;
        predecessors[id] = {};
    }
    for (const auto& e : edges) {
        ++indegree[e.target];
        successors[e.source].push_back(e.target);
        predecessors[e.target].push_back(e.source);
    }

    // Layered Kahn: emit one full dependency layer at a time, each layer
    // sorted by id, so ties always break lexicographically.
    std::vector<ArgumentId> order;
    std::vector<ArgumentId> layer;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) layer.push_back(id);
    std::sort(layer.begin(), layer.end());
    while (!layer.empty()) {
        std::vector<ArgumentId> next;
        for (const auto& id : layer) {
            order.push_back(id);
            for (const auto& s : successors[id])
                if (--indegree[s] == 0) next.push_back(s);
        }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
    }

    if (order.size() < framework.arguments().size()) {
        std::set<ArgumentId> remaining;
        for (const auto& [id, deg] : indegree)
            if (deg > 0) remaining.insert(id);
        throw CycleError("cycle through argument '" + node_on_cycle(remaining, predecessors) +
                         "'");
    }
    return order;
}

} // namespace qbaf
