#include "qbaf/preferences.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qbaf {

PreferenceOrdering::PreferenceOrdering(std::vector<std::set<ArgumentId>> tiers,
                                       std::vector<GapKind> gaps)
    : tiers_(std::move(tiers)), gaps_(std::move(gaps)) {
    if (tiers_.size() < 2)
        throw SingleTierError("an ordering needs at least two tiers");
    if (gaps_.size() != tiers_.size() - 1)
        throw SyntaxError("gap count must be one less than the tier count");
    std::set<ArgumentId> seen;
    for (const auto& tier : tiers_) {
        if (tier.empty()) throw SyntaxError("empty preference tier");
        for (const auto& id : tier) {
            if (!is_valid_argument_id(id))
                throw SyntaxError("invalid argument id '" + id + "'");
            if (!seen.insert(id).second)
                throw DuplicateArgumentError("argument '" + id + "' appears in two tiers");
        }
    }
}

namespace {

struct Token {
    enum Kind { kId, kEqual, kGreater, kMuchGreater, kEnd } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = text[i];
        if (std::isspace(c)) {
            ++i;
        } else if (c == '=') {
            tokens.push_back({Token::kEqual, "=", i});
            ++i;
        } else if (c == '>') {
            if (i + 1 < text.size() && text[i + 1] == '>') {
                tokens.push_back({Token::kMuchGreater, ">>", i});
                i += 2;
            } else {
                tokens.push_back({Token::kGreater, ">", i});
                ++i;
            }
        } else if (std::isalnum(c) || c == '_') {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            tokens.push_back({Token::kId, std::string(text.substr(start, i - start)), start});
        } else {
            throw SyntaxError("unexpected character '" + std::string(1, text[i]) +
                              "' at position " + std::to_string(i));
        }
    }
    tokens.push_back({Token::kEnd, "", text.size()});
    return tokens;
}

} // namespace

PreferenceOrdering PreferenceOrdering::parse(std::string_view text) {
    const auto tokens = tokenize(text);
    std::size_t i = 0;
    auto expect_id = [&]() -> const std::string& {
        if (tokens[i].kind != Token::kId)
            throw SyntaxError("expected an argument id at position " +
                              std::to_string(tokens[i].pos));
        return tokens[i++].text;
    };

    std::vector<std::set<ArgumentId>> tiers;
    std::vector<GapKind> gaps;
    std::set<ArgumentId> seen;

    auto parse_tier = [&]() {
        std::set<ArgumentId> tier;
        for (;;) {
            const std::string& id = expect_id();
            if (!seen.insert(id).second)
                throw DuplicateArgumentError("argument '" + id + "' listed twice");
            tier.insert(id);
            if (tokens[i].kind != Token::kEqual) break;
            ++i;
        }
        tiers.push_back(std::move(tier));
    };

    parse_tier();
    while (tokens[i].kind == Token::kGreater || tokens[i].kind == Token::kMuchGreater) {
        gaps.push_back(tokens[i].kind == Token::kGreater ? GapKind::kGreater
                                                         : GapKind::kMuchGreater);
        ++i;
        parse_tier();
    }
    if (tokens[i].kind != Token::kEnd)
        throw SyntaxError("unexpected token '" + tokens[i].text + "' at position " +
                          std::to_string(tokens[i].pos));
    if (tiers.size() < 2)
        throw SingleTierError("ordering relates no pair of arguments: '" +
                              std::string(text) + "'");
    return PreferenceOrdering(std::move(tiers), std::move(gaps));
}

std::string PreferenceOrdering::render() const {
    std::ostringstream out;
    for (std::size_t t = 0; t < tiers_.size(); ++t) {
        if (t > 0) out << (gaps_[t - 1] == GapKind::kGreater ? " > " : " >> ");
        bool first = true;
        for (const auto& id : tiers_[t]) {
            if (!first) out << " = ";
            out << id;
            first = false;
        }
    }
    return out.str();
}

std::set<ArgumentId> PreferenceOrdering::argument_set() const {
    std::set<ArgumentId> out;
    for (const auto& tier : tiers_) out.insert(tier.begin(), tier.end());
    return out;
}

std::size_t PreferenceOrdering::argument_count() const {
    std::size_t n = 0;
    for (const auto& tier : tiers_) n += tier.size();
    return n;
}

bool PreferenceOrdering::contains(const ArgumentId& id) const {
    return std::any_of(tiers_.begin(), tiers_.end(),
                       [&](const auto& tier) { return tier.count(id) > 0; });
}

std::size_t PreferenceOrdering::tier_of(const ArgumentId& id) const {
    for (std::size_t t = 0; t < tiers_.size(); ++t)
        if (tiers_[t].count(id) > 0) return t;
    throw UnknownArgumentError("argument '" + id + "' is not in the ordering");
}

Relation relation(const PreferenceOrdering& ordering, const ArgumentId& a, const ArgumentId& b) {
    const std::size_t ta = ordering.tier_of(a);
    const std::size_t tb = ordering.tier_of(b);
    if (ta == tb) return Relation::kEqual;
    const std::size_t lo = std::min(ta, tb), hi = std::max(ta, tb);
    bool much = false;
    for (std::size_t g = lo; g < hi; ++g)
        if (ordering.gaps()[g] == GapKind::kMuchGreater) much = true;
    if (ta < tb) return much ? Relation::kMuchGreater : Relation::kGreater;
    return much ? Relation::kReversedMuchGreater : Relation::kReversedGreater;
}

std::vector<AdjacentPair> adjacent_pairs(const PreferenceOrdering& ordering) {
    std::vector<AdjacentPair> out;
    for (const auto& tier : ordering.tiers()) {
        for (auto it = tier.begin(); it != tier.end(); ++it) {
            auto jt = it;
            for (++jt; jt != tier.end(); ++jt)
                out.push_back({*it, *jt, PairRelation::kEqual});
        }
    }
    for (std::size_t g = 0; g < ordering.gaps().size(); ++g) {
        const PairRelation rel = ordering.gaps()[g] == GapKind::kGreater
                                     ? PairRelation::kGreater
                                     : PairRelation::kMuchGreater;
        for (const auto& upper : ordering.tiers()[g])
            for (const auto& lower : ordering.tiers()[g + 1])
                out.push_back({upper, lower, rel});
    }
    return out;
}

std::pair<std::set<ArgumentId>, std::set<ArgumentId>> extremes(
    const PreferenceOrdering& ordering) {
    return {ordering.tiers().front(), ordering.tiers().back()};
}

bool are_isomorphic(const PreferenceOrdering& a, const PreferenceOrdering& b) {
    if (a.tiers().size() != b.tiers().size()) return false;
    for (std::size_t t = 0; t < a.tiers().size(); ++t)
        if (a.tiers()[t].size() != b.tiers()[t].size()) return false;
    return true;
}

PreferenceOrdering extend_with_equal(const PreferenceOrdering& ordering,
                                     const ArgumentId& new_arg, const ArgumentId& anchor) {
    if (ordering.contains(new_arg))
        throw DuplicateArgumentError("argument '" + new_arg + "' is already in the ordering");
    auto tiers = ordering.tiers();
    tiers[ordering.tier_of(anchor)].insert(new_arg);
    return PreferenceOrdering(std::move(tiers), ordering.gaps());
}

} // namespace qbaf
