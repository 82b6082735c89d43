#pragma once

#include <set>
#include <string>
#include <vector>

#include "qbaf/bsef.hpp"
#include "qbaf/experiments.hpp"
#include "qbaf/preferences.hpp"
#include "qbaf/rng.hpp"

namespace qbaf::test {

inline BipolarFramework fixture() { return feeding_example_framework(); }

// Random total ordering over the given arguments: a random ordered partition
// (not necessarily uniform; every shape reachable) with random gap kinds.
inline PreferenceOrdering random_ordering(Rng& rng, const std::vector<ArgumentId>& args) {
    const std::size_t n = args.size();
    const std::size_t tier_count = 2 + rng.below(n - 1); // 2..n
    std::vector<std::set<ArgumentId>> tiers(tier_count);
    // One argument per tier first so none is empty, the rest anywhere.
    std::vector<std::size_t> slots(n);
    for (std::size_t i = 0; i < n; ++i) slots[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(slots[i - 1], slots[rng.below(i)]);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t tier = i < tier_count ? i : rng.below(tier_count);
        tiers[tier].insert(args[slots[i]]);
    }
    std::vector<GapKind> gaps(tier_count - 1);
    for (auto& gap : gaps)
        gap = rng.below(2) == 0 ? GapKind::kGreater : GapKind::kMuchGreater;
    return PreferenceOrdering(std::move(tiers), std::move(gaps));
}

inline std::vector<ArgumentId> letters(std::size_t n) {
    std::vector<ArgumentId> args;
    for (std::size_t i = 0; i < n; ++i) args.push_back(std::string(1, char('a' + i)));
    return args;
}

// Brute-force oracle for ordering isomorphism: search all bijections between
// the argument sets for one preserving the weak preference relation.
inline bool isomorphic_by_bijection(const PreferenceOrdering& o1, const PreferenceOrdering& o2) {
    std::vector<ArgumentId> a1, a2;
    for (const auto& id : o1.argument_set()) a1.push_back(id);
    for (const auto& id : o2.argument_set()) a2.push_back(id);
    if (a1.size() != a2.size()) return false;

    auto weakly_above = [](const PreferenceOrdering& o, const ArgumentId& x,
                           const ArgumentId& y) { return o.tier_of(x) <= o.tier_of(y); };

    std::sort(a2.begin(), a2.end());
    do {
        bool preserves = true;
        for (std::size_t i = 0; i < a1.size() && preserves; ++i)
            for (std::size_t j = 0; j < a1.size() && preserves; ++j)
                if (weakly_above(o1, a1[i], a1[j]) != weakly_above(o2, a2[i], a2[j]))
                    preserves = false;
        if (preserves) return true;
    } while (std::next_permutation(a2.begin(), a2.end()));
    return false;
}

} // namespace qbaf::test
