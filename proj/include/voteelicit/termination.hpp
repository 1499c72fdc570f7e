#ifndef VOTEELICIT_TERMINATION_HPP
#define VOTEELICIT_TERMINATION_HPP

// Deciding whether elicitation can stop: given known ballots and t unknown
// ones, can the unknown ballots still be cast so that a candidate h does not
// win? Polynomial for Plurality, Borda, Copeland, Maximin and Approval;
// exhaustive for STV.

#include "voteelicit/core.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace voteelicit {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

struct PreventionResult {
    bool preventable = false;
    std::optional<std::vector<Ballot>> witness; ///< the t unknown ballots, when preventable
    std::optional<Candidate> challenger;        ///< winner of known + witness
};

namespace termination_detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

/// Number of multisets of size t drawn from v kinds, saturating at UINT64_MAX.
inline std::uint64_t multiset_count(std::uint64_t v, std::uint64_t t) {
    if (t == 0) return 1;
    if (v == 0) return 0;
    // C(v + t - 1, t), computed incrementally so every intermediate is integral.
    std::uint64_t k = std::min(t, v - 1);
    std::uint64_t n = v + t - 1;
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(c);
}

inline std::uint64_t tuple_count(std::uint64_t v, std::uint64_t t) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < t; ++i) c = saturating_mul(c, v);
    return c;
}

inline void check_budget(std::uint64_t needed, std::uint64_t budget, const char* what) {
    if (needed > budget)
        throw BudgetExceeded(std::string(what) + " needs " +
                             (needed == UINT64_MAX ? std::string("more than 2^64") : std::to_string(needed)) +
                             " completions; budget is " + std::to_string(budget));
}

/// Visits nondecreasing index sequences of length t over [0, v) in
/// lexicographic order until the visitor returns true.
inline bool for_each_multiset(int v, int t, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> idx(static_cast<std::size_t>(t), 0);
    if (t == 0) return visit(idx);
    if (v == 0) return false;
    while (true) {
        if (visit(idx)) return true;
        int i = t - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == v - 1) --i;
        if (i < 0) return false;
        int next = idx[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < t; ++j) idx[static_cast<std::size_t>(j)] = next;
    }
}

/// Visits all index sequences of length t over [0, v) in lexicographic order.
inline bool for_each_tuple(int v, int t, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> idx(static_cast<std::size_t>(t), 0);
    if (t == 0) return visit(idx);
    if (v == 0) return false;
    while (true) {
        if (visit(idx)) return true;
        int i = t - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == v - 1) idx[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
    }
}

inline int sign(std::int64_t x) { return (x > 0) - (x < 0); }

inline void check_target(const PartialProfile& p, Candidate h) {
    validate(p);
    if (h < 0 || h >= p.m) throw ElectionError("candidate " + std::to_string(h) + " out of range");
}

inline std::vector<Ballot> with_completion(const PartialProfile& p, const std::vector<Ballot>& space,
                                           const std::vector<int>& pick) {
    std::vector<Ballot> all = p.known;
    all.reserve(all.size() + pick.size());
    for (int i : pick) all.push_back(space[static_cast<std::size_t>(i)]);
    return all;
}

} // namespace termination_detail

/// The t unknown ballots most favorable to g against h: g first, h last,
/// everyone else in ascending index order (Approval: approve exactly {g}).
inline std::vector<Ballot> adversarial_completion(const PartialProfile& partial, Candidate g, Candidate h) {
    termination_detail::check_target(partial, g);
    termination_detail::check_target(partial, h);
    if (g == h) throw ElectionError("challenger and target must differ");
    if (partial.protocol == Protocol::STV) throw ElectionError("no greedy completion exists for STV");
    Ballot vote;
    if (partial.protocol == Protocol::Approval) {
        vote = ApprovalBallot{{g}};
    } else {
        RankingBallot r;
        r.order.push_back(g);
        for (int c = 0; c < partial.m; ++c)
            if (c != g && c != h) r.order.push_back(c);
        r.order.push_back(h);
        vote = std::move(r);
    }
    return std::vector<Ballot>(static_cast<std::size_t>(partial.unknown_count), vote);
}

/// Exhaustive ELICITATION-NOT-DONE over all ordered completions; any protocol.
inline PreventionResult brute_force_prevent(const PartialProfile& partial, Candidate h,
                                            std::uint64_t budget = kDefaultSearchBudget) {
    using namespace termination_detail;
    check_target(partial, h);
    auto space = vote_space(partial.protocol, partial.m);
    check_budget(tuple_count(space.size(), static_cast<std::uint64_t>(partial.unknown_count)), budget,
                 "brute-force prevention");
    PreventionResult result;
    for_each_tuple(static_cast<int>(space.size()), partial.unknown_count, [&](const std::vector<int>& pick) {
        auto all = with_completion(partial, space, pick);
        auto out = winner(partial.protocol, all, partial.m);
        if (out.tiebreak_winner == h) return false;
        result.preventable = true;
        result.witness = std::vector<Ballot>(all.begin() + static_cast<std::ptrdiff_t>(partial.known.size()), all.end());
        result.challenger = out.tiebreak_winner;
        return true;
    });
    return result;
}

/// ELICITATION-NOT-DONE: can the unknown ballots be cast so that h is not the
/// (lowest-index tie-broken) winner?
///
/// Non-STV protocols use the per-challenger extremal completion. Every
/// challenger g gains the most it can and h the least it can when all unknown
/// ballots put g first and h last, so h can be beaten iff some g beats it that
/// way. STV enumerates multisets of unknown rankings and throws BudgetExceeded
/// past `budget` simulated elections.
inline PreventionResult can_prevent_win(const PartialProfile& partial, Candidate h,
                                        std::uint64_t budget = kDefaultSearchBudget) {
    using namespace termination_detail;
    check_target(partial, h);
    const int m = partial.m;
    const std::int64_t t = partial.unknown_count;
    PreventionResult result;
    if (m == 1) return result;

    if (t == 0) {
        auto out = winner(partial.protocol, partial.known, m);
        if (out.tiebreak_winner != h) {
            result.preventable = true;
            result.witness = std::vector<Ballot>{};
            result.challenger = out.tiebreak_winner;
        }
        return result;
    }

    if (partial.protocol == Protocol::STV) {
        auto space = vote_space(Protocol::STV, m);
        check_budget(multiset_count(space.size(), static_cast<std::uint64_t>(t)), budget, "STV prevention search");
        for_each_multiset(static_cast<int>(space.size()), static_cast<int>(t), [&](const std::vector<int>& pick) {
            auto all = with_completion(partial, space, pick);
            auto out = stv_run(all, m);
            if (out.tiebreak_winner == h) return false;
            result.preventable = true;
            result.witness =
                std::vector<Ballot>(all.begin() + static_cast<std::ptrdiff_t>(partial.known.size()), all.end());
            result.challenger = out.tiebreak_winner;
            return true;
        });
        return result;
    }

    // Final scores of g and h when every unknown ballot is g first, h last.
    std::vector<std::int64_t> base;
    PairwiseMatrix tallies;
    const bool pairwise = partial.protocol == Protocol::Copeland || partial.protocol == Protocol::Maximin;
    if (pairwise) tallies = pairwise_tallies(partial.known, m);
    else base = score(partial.protocol, partial.known, m).scores;

    auto challenger_final = [&](Candidate g) -> std::int64_t {
        switch (partial.protocol) {
        case Protocol::Plurality:
        case Protocol::Approval: return base[static_cast<std::size_t>(g)] + t;
        case Protocol::Borda: return base[static_cast<std::size_t>(g)] + t * (m - 1);
        case Protocol::Copeland: {
            std::int64_t s = 0;
            for (int x = 0; x < m; ++x)
                if (x != g) s += sign(tallies(g, x) + t - tallies(x, g));
            return s;
        }
        case Protocol::Maximin: {
            std::int64_t s = INT64_MAX;
            for (int x = 0; x < m; ++x)
                if (x != g) s = std::min(s, tallies(g, x) + t);
            return s;
        }
        case Protocol::STV: break;
        }
        throw std::logic_error("unreachable");
    };
    std::int64_t target_final = 0;
    switch (partial.protocol) {
    case Protocol::Copeland:
        for (int x = 0; x < m; ++x)
            if (x != h) target_final += sign(tallies(h, x) - tallies(x, h) - t);
        break;
    case Protocol::Maximin:
        target_final = INT64_MAX;
        for (int x = 0; x < m; ++x)
            if (x != h) target_final = std::min(target_final, tallies(h, x));
        break;
    default: target_final = base[static_cast<std::size_t>(h)];
    }

    for (Candidate g = 0; g < m; ++g) {
        if (g == h) continue;
        std::int64_t gs = challenger_final(g);
        if (gs > target_final || (gs == target_final && g < h)) {
            auto witness = adversarial_completion(partial, g, h);
            std::vector<Ballot> all = partial.known;
            all.insert(all.end(), witness.begin(), witness.end());
            auto out = winner(partial.protocol, all, m);
            if (out.tiebreak_winner == h) throw std::logic_error("greedy completion failed to replay");
            result.preventable = true;
            result.witness = std::move(witness);
            result.challenger = out.tiebreak_winner;
            return result;
        }
    }
    return result;
}

/// The candidate that wins under every completion of the unknown ballots, if
/// there is one.
inline std::optional<Candidate> decided(const PartialProfile& partial, std::uint64_t budget = kDefaultSearchBudget) {
    validate(partial);
    std::vector<Ballot> fill = partial.known;
    Ballot filler = uses_rankings(partial.protocol) ? Ballot{index_order_ranking(partial.m)} : Ballot{ApprovalBallot{}};
    fill.insert(fill.end(), static_cast<std::size_t>(partial.unknown_count), filler);
    Candidate w = winner(partial.protocol, fill, partial.m).tiebreak_winner;
    if (partial.unknown_count == 0) return w;
    if (can_prevent_win(partial, w, budget).preventable) return std::nullopt;
    return w;
}

/// The co-winner set shared by every completion of the unknown ballots, if
/// there is one. Exhaustive over multisets of unknown ballots. This is the
/// stopping notion for elections whose ties are broken at random.
inline std::optional<std::vector<Candidate>> decided_winner_set(const PartialProfile& partial,
                                                                std::uint64_t budget = kDefaultSearchBudget) {
    using namespace termination_detail;
    validate(partial);
    auto space = vote_space(partial.protocol, partial.m);
    check_budget(multiset_count(space.size(), static_cast<std::uint64_t>(partial.unknown_count)), budget,
                 "winner-set determination");
    std::optional<std::vector<Candidate>> common;
    bool differs = for_each_multiset(static_cast<int>(space.size()), partial.unknown_count,
                                     [&](const std::vector<int>& pick) {
                                         auto ws = winner(partial.protocol, with_completion(partial, space, pick),
                                                          partial.m)
                                                       .winner_set;
                                         if (!common) common = ws;
                                         return ws != *common;
                                     });
    if (differs) return std::nullopt;
    return common;
}

} // namespace voteelicit

#endif // VOTEELICIT_TERMINATION_HPP
