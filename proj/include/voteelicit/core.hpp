#ifndef VOTEELICIT_CORE_HPP
#define VOTEELICIT_CORE_HPP

// Ballots, profiles, scoring and winner determination for the six protocols:
// Plurality, Borda, Copeland, Maximin, STV and Approval.
//
// Candidates are dense indices 0..m-1. Whenever a resolute winner is needed the
// lowest index in the co-winner set is taken.

#include "voteelicit/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace voteelicit {

using Candidate = int;

enum class Protocol { Plurality, Borda, Copeland, Maximin, STV, Approval };

inline constexpr Protocol kAllProtocols[] = {Protocol::Plurality, Protocol::Borda, Protocol::Copeland,
                                             Protocol::Maximin, Protocol::STV, Protocol::Approval};

inline std::string_view protocol_name(Protocol p) {
    switch (p) {
    case Protocol::Plurality: return "plurality";
    case Protocol::Borda: return "borda";
    case Protocol::Copeland: return "copeland";
    case Protocol::Maximin: return "maximin";
    case Protocol::STV: return "stv";
    case Protocol::Approval: return "approval";
    }
    return "?";
}

inline std::optional<Protocol> protocol_from_name(std::string_view name) {
    for (Protocol p : kAllProtocols) {
        if (protocol_name(p) == name) return p;
    }
    return std::nullopt;
}

inline bool uses_rankings(Protocol p) { return p != Protocol::Approval; }

/// Complete preference order, most preferred first.
struct RankingBallot {
    std::vector<Candidate> order;
    friend bool operator==(const RankingBallot&, const RankingBallot&) = default;
    friend auto operator<=>(const RankingBallot&, const RankingBallot&) = default;
};

/// Set of approved candidates, kept in ascending order.
struct ApprovalBallot {
    std::vector<Candidate> approved;

    bool approves(Candidate c) const { return std::binary_search(approved.begin(), approved.end(), c); }

    friend bool operator==(const ApprovalBallot&, const ApprovalBallot&) = default;
    friend auto operator<=>(const ApprovalBallot&, const ApprovalBallot&) = default;
};

using Ballot = std::variant<RankingBallot, ApprovalBallot>;

inline Ballot ranking(std::vector<Candidate> order) { return RankingBallot{std::move(order)}; }

inline Ballot approval(std::vector<Candidate> approved) {
    std::sort(approved.begin(), approved.end());
    return ApprovalBallot{std::move(approved)};
}

/// The ballot 0 > 1 > ... > m-1.
inline RankingBallot index_order_ranking(int m) {
    RankingBallot b;
    b.order.resize(static_cast<std::size_t>(m));
    std::iota(b.order.begin(), b.order.end(), 0);
    return b;
}

inline void validate_ballot(Protocol protocol, int m, const Ballot& ballot) {
    if (uses_rankings(protocol)) {
        const auto* r = std::get_if<RankingBallot>(&ballot);
        if (r == nullptr) throw ElectionError("approval ballot given to a ranking protocol");
        if (static_cast<int>(r->order.size()) != m)
            throw ElectionError("ranking has " + std::to_string(r->order.size()) + " entries, expected " +
                                std::to_string(m));
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        for (Candidate c : r->order) {
            if (c < 0 || c >= m) throw ElectionError("candidate index " + std::to_string(c) + " out of range");
            if (seen[static_cast<std::size_t>(c)])
                throw ElectionError("ranking is not a permutation: candidate " + std::to_string(c) + " repeated");
            seen[static_cast<std::size_t>(c)] = true;
        }
    } else {
        const auto* a = std::get_if<ApprovalBallot>(&ballot);
        if (a == nullptr) throw ElectionError("ranking ballot given to the approval protocol");
        for (std::size_t i = 0; i < a->approved.size(); ++i) {
            Candidate c = a->approved[i];
            if (c < 0 || c >= m) throw ElectionError("candidate index " + std::to_string(c) + " out of range");
            if (i > 0 && a->approved[i - 1] >= c) throw ElectionError("approval set is not strictly ascending");
        }
    }
}

inline void validate_ballots(Protocol protocol, int m, std::span<const Ballot> ballots) {
    if (m < 1) throw ElectionError("an election needs at least one candidate");
    for (const Ballot& b : ballots) validate_ballot(protocol, m, b);
}

/// Known ballots plus a count of ballots not yet elicited.
struct PartialProfile {
    Protocol protocol = Protocol::Plurality;
    int m = 0;
    std::vector<std::string> names; ///< optional display labels; empty or size m
    std::vector<Ballot> known;
    int unknown_count = 0;

    int n() const { return static_cast<int>(known.size()) + unknown_count; }

    friend bool operator==(const PartialProfile&, const PartialProfile&) = default;
};

inline void validate(const PartialProfile& p) {
    if (!p.names.empty() && static_cast<int>(p.names.size()) != p.m)
        throw ElectionError("candidate name list does not match m");
    if (p.unknown_count < 0) throw ElectionError("negative unknown vote count");
    validate_ballots(p.protocol, p.m, p.known);
}

/// Display name for a candidate: the label if present, otherwise "c<index>".
inline std::string candidate_name(std::span<const std::string> names, Candidate c) {
    if (c >= 0 && static_cast<std::size_t>(c) < names.size()) return names[static_cast<std::size_t>(c)];
    return "c" + std::to_string(c);
}

/// Every possible vote for (protocol, m). Rankings in lexicographic order,
/// approval sets in increasing bitmask order (bit i = candidate i).
inline std::vector<Ballot> vote_space(Protocol protocol, int m) {
    std::vector<Ballot> out;
    if (uses_rankings(protocol)) {
        if (m > 10) throw BudgetExceeded("ranking vote space too large to enumerate (m > 10)");
        RankingBallot b = index_order_ranking(m);
        do {
            out.emplace_back(b);
        } while (std::next_permutation(b.order.begin(), b.order.end()));
    } else {
        if (m > 20) throw BudgetExceeded("approval vote space too large to enumerate (m > 20)");
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            ApprovalBallot a;
            for (int c = 0; c < m; ++c)
                if (mask & (1u << c)) a.approved.push_back(c);
            out.emplace_back(std::move(a));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scoring

struct ScoreVector {
    std::vector<std::int64_t> scores;
    Protocol semantics = Protocol::Plurality;
    friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

/// N(x, y): number of ballots ranking x above y.
class PairwiseMatrix {
public:
    explicit PairwiseMatrix(int m = 0) : m_(m), data_(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0) {}

    int size() const { return m_; }
    std::int64_t operator()(Candidate x, Candidate y) const { return data_[index(x, y)]; }
    std::int64_t& at(Candidate x, Candidate y) { return data_[index(x, y)]; }

    friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) = default;

private:
    std::size_t index(Candidate x, Candidate y) const {
        return static_cast<std::size_t>(x) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(y);
    }
    int m_;
    std::vector<std::int64_t> data_;
};

inline PairwiseMatrix pairwise_tallies(std::span<const Ballot> ballots, int m) {
    validate_ballots(Protocol::Borda, m, ballots);
    PairwiseMatrix n(m);
    std::vector<int> pos(static_cast<std::size_t>(m));
    for (const Ballot& b : ballots) {
        const auto& order = std::get<RankingBallot>(b).order;
        for (int p = 0; p < m; ++p) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                if (pos[static_cast<std::size_t>(x)] < pos[static_cast<std::size_t>(y)]) ++n.at(x, y);
    }
    return n;
}

inline std::int64_t copeland_score(const PairwiseMatrix& n, Candidate x) {
    std::int64_t s = 0;
    for (int y = 0; y < n.size(); ++y) {
        if (y == x) continue;
        if (n(x, y) > n(y, x)) ++s;
        else if (n(x, y) < n(y, x)) --s;
    }
    return s;
}

/// Lowest pairwise score; 0 when there is no opponent (m = 1).
inline std::int64_t maximin_score(const PairwiseMatrix& n, Candidate x) {
    std::int64_t s = std::numeric_limits<std::int64_t>::max();
    for (int y = 0; y < n.size(); ++y)
        if (y != x) s = std::min(s, n(x, y));
    return n.size() == 1 ? 0 : s;
}

inline ScoreVector score(Protocol protocol, std::span<const Ballot> ballots, int m) {
    if (protocol == Protocol::STV) throw ElectionError("STV has no single score vector; use stv_run");
    validate_ballots(protocol, m, ballots);
    ScoreVector sv{std::vector<std::int64_t>(static_cast<std::size_t>(m), 0), protocol};
    auto& s = sv.scores;
    switch (protocol) {
    case Protocol::Plurality:
        for (const Ballot& b : ballots) ++s[static_cast<std::size_t>(std::get<RankingBallot>(b).order.front())];
        break;
    case Protocol::Borda:
        for (const Ballot& b : ballots) {
            const auto& order = std::get<RankingBallot>(b).order;
            for (int p = 0; p < m; ++p) s[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] += m - 1 - p;
        }
        break;
    case Protocol::Copeland:
    case Protocol::Maximin: {
        PairwiseMatrix n = pairwise_tallies(ballots, m);
        for (int x = 0; x < m; ++x)
            s[static_cast<std::size_t>(x)] =
                protocol == Protocol::Copeland ? copeland_score(n, x) : maximin_score(n, x);
        break;
    }
    case Protocol::Approval:
        for (const Ballot& b : ballots)
            for (Candidate c : std::get<ApprovalBallot>(b).approved) ++s[static_cast<std::size_t>(c)];
        break;
    case Protocol::STV:
        break;
    }
    return sv;
}

// ---------------------------------------------------------------------------
// STV

struct StvRound {
    std::vector<Candidate> remaining;  ///< ascending
    std::vector<std::int64_t> scores;  ///< aligned with remaining
    Candidate eliminated = -1;
    friend bool operator==(const StvRound&, const StvRound&) = default;
};

struct StvTrace {
    std::vector<StvRound> rounds;
    friend bool operator==(const StvTrace&, const StvTrace&) = default;
};

struct ElectionOutcome {
    std::vector<Candidate> winner_set; ///< ascending, nonempty
    Candidate tiebreak_winner = -1;
    std::optional<ScoreVector> scores; ///< absent for STV
    std::optional<StvTrace> stv_trace;
    friend bool operator==(const ElectionOutcome&, const ElectionOutcome&) = default;
};

/// Eliminates one candidate per round; among those tied for the lowest score
/// the highest index goes.
inline ElectionOutcome stv_run(std::span<const Ballot> ballots, int m) {
    validate_ballots(Protocol::STV, m, ballots);
    std::vector<bool> alive(static_cast<std::size_t>(m), true);
    StvTrace trace;
    std::vector<std::int64_t> tally(static_cast<std::size_t>(m));
    for (int round = 0; round < m - 1; ++round) {
        std::fill(tally.begin(), tally.end(), 0);
        for (const Ballot& b : ballots) {
            for (Candidate c : std::get<RankingBallot>(b).order) {
                if (alive[static_cast<std::size_t>(c)]) {
                    ++tally[static_cast<std::size_t>(c)];
                    break;
                }
            }
        }
        StvRound r;
        for (int c = 0; c < m; ++c) {
            if (!alive[static_cast<std::size_t>(c)]) continue;
            r.remaining.push_back(c);
            r.scores.push_back(tally[static_cast<std::size_t>(c)]);
            if (r.eliminated < 0 || tally[static_cast<std::size_t>(c)] <= tally[static_cast<std::size_t>(r.eliminated)])
                r.eliminated = c;
        }
        alive[static_cast<std::size_t>(r.eliminated)] = false;
        trace.rounds.push_back(std::move(r));
    }
    Candidate survivor = static_cast<Candidate>(std::find(alive.begin(), alive.end(), true) - alive.begin());
    ElectionOutcome out;
    out.winner_set = {survivor};
    out.tiebreak_winner = survivor;
    out.stv_trace = std::move(trace);
    return out;
}

// ---------------------------------------------------------------------------
// Winner determination

inline ElectionOutcome winner(Protocol protocol, std::span<const Ballot> ballots, int m) {
    if (protocol == Protocol::STV) return stv_run(ballots, m);
    ElectionOutcome out;
    out.scores = score(protocol, ballots, m);
    const auto& s = out.scores->scores;
    std::int64_t best = *std::max_element(s.begin(), s.end());
    for (int c = 0; c < m; ++c)
        if (s[static_cast<std::size_t>(c)] == best) out.winner_set.push_back(c);
    out.tiebreak_winner = out.winner_set.front();
    return out;
}

inline ElectionOutcome winner(const PartialProfile& p) {
    if (p.unknown_count != 0) throw ElectionError("profile still has unknown votes");
    return winner(p.protocol, p.known, p.m);
}

} // namespace voteelicit

#endif // VOTEELICIT_CORE_HPP
