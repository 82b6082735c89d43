#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbaf/core.hpp"
#include "qbaf/errors.hpp"

namespace qbaf {

// Kind of the gap between two consecutive preference tiers.
enum class GapKind { kGreater, kMuchGreater };

// A total preference ordering over a set of arguments: a sequence of
// indifference tiers, most preferred first, with a gap kind between each
// pair of consecutive tiers. Immutable after construction.
//
// Concrete syntax: `tier (('>' | '>>') tier)*` with `tier = id ('=' id)*`,
// whitespace-insensitive, e.g. "c = f >> b = e > a = d".
class PreferenceOrdering {
public:
    PreferenceOrdering(std::vector<std::set<ArgumentId>> tiers, std::vector<GapKind> gaps);

    static PreferenceOrdering parse(std::string_view text);
    std::string render() const;

    const std::vector<std::set<ArgumentId>>& tiers() const { return tiers_; }
    const std::vector<GapKind>& gaps() const { return gaps_; }

    std::set<ArgumentId> argument_set() const;
    std::size_t argument_count() const;
    bool contains(const ArgumentId& id) const;
    // Index of the tier holding `id` (0 = most preferred); throws
    // UnknownArgumentError when absent.
    std::size_t tier_of(const ArgumentId& id) const;

    bool operator==(const PreferenceOrdering&) const = default;

private:
    std::vector<std::set<ArgumentId>> tiers_;
    std::vector<GapKind> gaps_;
};

enum class Relation {
    kEqual,
    kGreater,
    kMuchGreater,
    kReversedGreater,
    kReversedMuchGreater,
};

// Derived relation between two arguments of the ordering. Across several
// tiers the relation is much-greater as soon as one intervening gap is
// much-greater.
Relation relation(const PreferenceOrdering& ordering, const ArgumentId& a, const ArgumentId& b);

// Relation label carried by an adjacent pair.
enum class PairRelation { kEqual, kGreater, kMuchGreater };

struct AdjacentPair {
    ArgumentId first;
    ArgumentId second;
    PairRelation rel;

    bool operator==(const AdjacentPair&) const = default;
};

// All adjacent pairs: the unordered pairs inside each tier (labelled equal)
// and all cross pairs between consecutive tiers (labelled with the gap).
std::vector<AdjacentPair> adjacent_pairs(const PreferenceOrdering& ordering);

// (most preferred tier, least preferred tier).
std::pair<std::set<ArgumentId>, std::set<ArgumentId>> extremes(const PreferenceOrdering& ordering);

// True when a bijection between the argument sets preserves the weak
// preference relation; equivalently, the tier size sequences coincide.
// Gap kinds are deliberately not compared.
bool are_isomorphic(const PreferenceOrdering& a, const PreferenceOrdering& b);

// Returns a copy with `new_arg` inserted into the tier of `anchor`.
PreferenceOrdering extend_with_equal(const PreferenceOrdering& ordering,
                                     const ArgumentId& new_arg, const ArgumentId& anchor);

} // namespace qbaf
