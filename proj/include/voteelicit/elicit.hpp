#ifndef VOTEELICIT_ELICIT_HPP
#define VOTEELICIT_ELICIT_HPP

// Elicitation with perfect suspicions: minimal deciding vote subsets, the
// Plurality elicitation order, and simulators for coarse (whole-ballot) and
// fine (single-question) elicitation policies.

#include "voteelicit/core.hpp"
#include "voteelicit/election_io.hpp"
#include "voteelicit/termination.hpp"

#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace voteelicit {

/// A predicted (perfectly suspected) full profile and a query budget k.
struct ElicitationInstance {
    Protocol protocol = Protocol::Plurality;
    int m = 0;
    std::vector<std::string> names;
    std::vector<Ballot> predicted;
    int k = 0;
    std::optional<Candidate> tagged_candidate;

    int n() const { return static_cast<int>(predicted.size()); }

    /// The instance as an election file body (no unknown votes).
    PartialProfile as_profile() const { return PartialProfile{protocol, m, names, predicted, 0}; }
};

inline void validate(const ElicitationInstance& inst) {
    validate_ballots(inst.protocol, inst.m, inst.predicted);
    if (inst.k < 0 || inst.k > inst.n()) throw ElectionError("budget k must lie in [0, n]");
}

/// Profile that knows exactly the listed voters of `predicted`.
inline PartialProfile reveal(Protocol protocol, int m, std::span<const Ballot> predicted,
                             std::span<const int> voters) {
    PartialProfile p{protocol, m, {}, {}, static_cast<int>(predicted.size() - voters.size())};
    for (int v : voters) p.known.push_back(predicted[static_cast<std::size_t>(v)]);
    return p;
}

namespace elicit_detail {

/// Visits all size-k subsets of [0, n) in lexicographic order.
inline void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

/// Whom a ballot "supports" for ordering purposes: first choice for rankings,
/// `preferred` if approved, else the lowest approved candidate; -1 for an
/// empty approval ballot.
inline Candidate support_of(const Ballot& b, Candidate preferred) {
    if (const auto* r = std::get_if<RankingBallot>(&b)) return r->order.front();
    const auto& a = std::get<ApprovalBallot>(b);
    if (a.approves(preferred)) return preferred;
    return a.approved.empty() ? -1 : a.approved.front();
}

} // namespace elicit_detail

/// Smallest subset of voters (at most k) whose ballots decide the election,
/// or nullopt. Among minimum-size subsets the lexicographically least is
/// returned.
///
/// Knowing more true ballots never un-decides an election, so deciding
/// subsets are closed under supersets: existence is settled at size k, and
/// every deciding subset of size j - 1 lies inside one of size j.
inline std::optional<std::vector<int>> min_deciding_subset(const ElicitationInstance& inst,
                                                           std::uint64_t budget = kDefaultSearchBudget) {
    validate(inst);
    const int n = inst.n();
    const Candidate w = winner(inst.protocol, inst.predicted, inst.m).tiebreak_winner;
    auto decides = [&](const std::vector<int>& subset) {
        return decided(reveal(inst.protocol, inst.m, inst.predicted, subset), budget) == w;
    };

    std::set<std::vector<int>> frontier;
    elicit_detail::for_each_combination(n, inst.k, [&](const std::vector<int>& s) {
        if (decides(s)) frontier.insert(s);
    });
    if (frontier.empty()) return std::nullopt;
    while (true) {
        std::set<std::vector<int>> tried;
        std::set<std::vector<int>> next;
        for (const auto& s : frontier) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> smaller;
                smaller.reserve(s.size() - 1);
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) smaller.push_back(s[i]);
                if (!tried.insert(smaller).second) continue;
                if (decides(smaller)) next.insert(std::move(smaller));
            }
        }
        if (next.empty()) return *frontier.begin();
        frontier = std::move(next);
    }
}

/// Reference search: every subset by increasing size, each checked against
/// all ordered completions. Exponential in both n and t.
inline std::optional<std::vector<int>> exhaustive_min_deciding_subset(const ElicitationInstance& inst,
                                                                      std::uint64_t budget = kDefaultSearchBudget) {
    validate(inst);
    const Candidate w = winner(inst.protocol, inst.predicted, inst.m).tiebreak_winner;
    for (int size = 0; size <= inst.k; ++size) {
        std::optional<std::vector<int>> found;
        elicit_detail::for_each_combination(inst.n(), size, [&](const std::vector<int>& s) {
            if (found) return;
            auto p = reveal(inst.protocol, inst.m, inst.predicted, s);
            if (!brute_force_prevent(p, w, budget).preventable) found = s;
        });
        if (found) return found;
    }
    return std::nullopt;
}

/// Predicted-winner supporters first (voter index order), then round-robin
/// over the other candidates' supporters, starting with the candidate after
/// the winner in cyclic index order. Voters supporting nobody come last.
inline std::vector<int> predicted_winner_first_order(Protocol protocol, int m, std::span<const Ballot> predicted) {
    validate_ballots(protocol, m, predicted);
    const Candidate w = winner(protocol, predicted, m).tiebreak_winner;
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(m));
    std::vector<int> order, unsupported;
    for (int v = 0; v < static_cast<int>(predicted.size()); ++v) {
        Candidate s = elicit_detail::support_of(predicted[static_cast<std::size_t>(v)], w);
        if (s == w) order.push_back(v);
        else if (s < 0) unsupported.push_back(v);
        else buckets[static_cast<std::size_t>(s)].push_back(v);
    }
    std::vector<std::size_t> taken(static_cast<std::size_t>(m), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (int step = 1; step < m; ++step) {
            auto c = static_cast<std::size_t>((w + step) % m);
            if (taken[c] < buckets[c].size()) {
                order.push_back(buckets[c][taken[c]++]);
                progress = true;
            }
        }
    }
    order.insert(order.end(), unsupported.begin(), unsupported.end());
    return order;
}

/// Round-robin over all candidates in ascending index order, ignoring who is
/// predicted to win.
inline std::vector<int> round_robin_order(Protocol protocol, int m, std::span<const Ballot> predicted) {
    validate_ballots(protocol, m, predicted);
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(m));
    std::vector<int> order, unsupported;
    for (int v = 0; v < static_cast<int>(predicted.size()); ++v) {
        Candidate s = elicit_detail::support_of(predicted[static_cast<std::size_t>(v)], 0);
        if (s < 0) unsupported.push_back(v);
        else buckets[static_cast<std::size_t>(s)].push_back(v);
    }
    std::vector<std::size_t> taken(static_cast<std::size_t>(m), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < buckets.size(); ++c) {
            if (taken[c] < buckets[c].size()) {
                order.push_back(buckets[c][taken[c]++]);
                progress = true;
            }
        }
    }
    order.insert(order.end(), unsupported.begin(), unsupported.end());
    return order;
}

inline std::vector<int> random_order(int n, std::uint64_t seed) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    for (int i = n - 1; i > 0; --i) {
        auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    return order;
}

struct PluralityElicitation {
    std::vector<int> order;
    int stop_index = 0; ///< length of the first deciding prefix of `order`
};

inline PluralityElicitation plurality_elicit_order(const ElicitationInstance& inst) {
    if (inst.protocol != Protocol::Plurality) throw ElectionError("plurality_elicit_order needs a Plurality instance");
    validate_ballots(inst.protocol, inst.m, inst.predicted);
    PluralityElicitation out;
    out.order = predicted_winner_first_order(inst.protocol, inst.m, inst.predicted);
    const int n = inst.n();
    for (int s = 0; s <= n; ++s) {
        std::span<const int> prefix(out.order.data(), static_cast<std::size_t>(s));
        if (decided(reveal(inst.protocol, inst.m, inst.predicted, prefix)).has_value()) {
            out.stop_index = s;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simulation

/// When an elicitor may stop. TiebreakWinner: the lowest-index tie-broken
/// winner is fixed. WinnerSet: the whole co-winner set is fixed, which is what
/// an election with random tie-breaking needs.
enum class StopRule { TiebreakWinner, WinnerSet };

struct CoarseStep {
    int voter = 0;
    Ballot ballot;
};

/// Next voter to query given the responses so far; nullopt when the policy
/// has nobody left to ask.
using CoarsePolicy = std::function<std::optional<int>(std::span<const CoarseStep>)>;

inline CoarsePolicy order_policy(std::vector<int> order) {
    return [order = std::move(order)](std::span<const CoarseStep> history) -> std::optional<int> {
        for (int v : order) {
            bool asked = std::any_of(history.begin(), history.end(), [v](const CoarseStep& s) { return s.voter == v; });
            if (!asked) return v;
        }
        return std::nullopt;
    };
}

inline CoarsePolicy fixed_order_policy(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return order_policy(std::move(order));
}

inline CoarsePolicy predicted_winner_first_policy(Protocol protocol, int m, std::span<const Ballot> predicted) {
    return order_policy(predicted_winner_first_order(protocol, m, predicted));
}

inline CoarsePolicy round_robin_policy(Protocol protocol, int m, std::span<const Ballot> predicted) {
    return order_policy(round_robin_order(protocol, m, predicted));
}

inline CoarsePolicy random_policy(int n, std::uint64_t seed) { return order_policy(random_order(n, seed)); }

/// Three-voter Approval policy (voters i=0, j=1, k=2; candidate c=2): ask i;
/// if i approves exactly {c} ask j, otherwise ask k; then the last voter.
inline CoarsePolicy theorem7_coarse_policy() {
    return [](std::span<const CoarseStep> history) -> std::optional<int> {
        if (history.empty()) return 0;
        const auto& first = std::get<ApprovalBallot>(history.front().ballot);
        bool only_c = first.approved == std::vector<Candidate>{2};
        if (history.size() == 1) return only_c ? 1 : 2;
        if (history.size() == 2) return only_c ? 2 : 1;
        return std::nullopt;
    };
}

struct FineQuery {
    enum class Kind { ApproveCandidate, NextPreferred };
    Kind kind = Kind::ApproveCandidate;
    int voter = 0;
    Candidate candidate = -1; ///< ApproveCandidate only

    static FineQuery approve(int voter, Candidate c) { return {Kind::ApproveCandidate, voter, c}; }
    static FineQuery next_preferred(int voter) { return {Kind::NextPreferred, voter, -1}; }

    friend bool operator==(const FineQuery&, const FineQuery&) = default;
    friend auto operator<=>(const FineQuery&, const FineQuery&) = default;
};

struct FineAnswer {
    bool approved = false;   ///< ApproveCandidate
    Candidate reported = -1; ///< NextPreferred
    friend bool operator==(const FineAnswer&, const FineAnswer&) = default;
};

struct FineStep {
    FineQuery query;
    FineAnswer answer;
};

using FinePolicy = std::function<std::optional<FineQuery>(std::span<const FineStep>)>;

inline FineAnswer answer_truthfully(const FineQuery& q, const Ballot& ballot, std::span<const FineStep> history) {
    FineAnswer a;
    if (q.kind == FineQuery::Kind::ApproveCandidate) {
        a.approved = std::get<ApprovalBallot>(ballot).approves(q.candidate);
        return a;
    }
    std::size_t already = 0;
    for (const auto& s : history)
        if (s.query.voter == q.voter && s.query.kind == FineQuery::Kind::NextPreferred) ++already;
    a.reported = std::get<RankingBallot>(ballot).order.at(already);
    return a;
}

/// What an elicitor knows per voter: tri-state approval cells, or a known
/// prefix of the ranking.
class VoteKnowledge {
public:
    VoteKnowledge(Protocol protocol, int m, int n)
        : protocol_(protocol), m_(m), n_(n),
          cells_(uses_rankings(protocol) ? 0 : static_cast<std::size_t>(n),
                 std::vector<signed char>(static_cast<std::size_t>(m), -1)),
          prefixes_(uses_rankings(protocol) ? static_cast<std::size_t>(n) : 0) {}

    Protocol protocol() const { return protocol_; }
    int m() const { return m_; }
    int n() const { return n_; }

    /// Unknown cell = -1, otherwise 0/1.
    signed char cell(int voter, Candidate c) const {
        return cells_[static_cast<std::size_t>(voter)][static_cast<std::size_t>(c)];
    }
    const std::vector<Candidate>& prefix(int voter) const { return prefixes_[static_cast<std::size_t>(voter)]; }

    bool ballot_known(int voter) const {
        if (uses_rankings(protocol_)) return static_cast<int>(prefix(voter).size()) >= m_ - 1;
        const auto& row = cells_[static_cast<std::size_t>(voter)];
        return std::none_of(row.begin(), row.end(), [](signed char x) { return x < 0; });
    }

    /// Whether the query would tell the elicitor anything new.
    bool informative(const FineQuery& q) const {
        if (q.voter < 0 || q.voter >= n_) return false;
        if (q.kind == FineQuery::Kind::ApproveCandidate)
            return !uses_rankings(protocol_) && q.candidate >= 0 && q.candidate < m_ && cell(q.voter, q.candidate) < 0;
        return uses_rankings(protocol_) && !ballot_known(q.voter);
    }

    void record(const FineQuery& q, const FineAnswer& a) {
        if (!informative(q)) throw ElectionError("query is redundant or does not fit the protocol");
        if (q.kind == FineQuery::Kind::ApproveCandidate) {
            cells_[static_cast<std::size_t>(q.voter)][static_cast<std::size_t>(q.candidate)] = a.approved ? 1 : 0;
        } else {
            auto& p = prefixes_[static_cast<std::size_t>(q.voter)];
            if (a.reported < 0 || a.reported >= m_ || std::find(p.begin(), p.end(), a.reported) != p.end())
                throw ElectionError("inconsistent next-preferred answer");
            p.push_back(a.reported);
        }
    }

    void set_cell(int voter, Candidate c, signed char v) {
        cells_[static_cast<std::size_t>(voter)][static_cast<std::size_t>(c)] = v;
    }
    void set_prefix(int voter, std::vector<Candidate> p) { prefixes_[static_cast<std::size_t>(voter)] = std::move(p); }

    /// The ballot a fully known voter cast.
    Ballot known_ballot(int voter) const {
        if (uses_rankings(protocol_)) {
            RankingBallot r{prefix(voter)};
            for (int c = 0; c < m_; ++c)
                if (std::find(r.order.begin(), r.order.end(), c) == r.order.end()) r.order.push_back(c);
            return r;
        }
        ApprovalBallot a;
        for (int c = 0; c < m_; ++c)
            if (cell(voter, c) == 1) a.approved.push_back(c);
        return a;
    }

    /// Per-candidate [lower, upper] score bounds over every consistent
    /// completion. Exact per candidate for Approval, Plurality and Borda;
    /// conservative for Copeland and Maximin. Not defined for STV.
    std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> score_bounds() const {
        const auto m = static_cast<std::size_t>(m_);
        std::vector<std::int64_t> lo(m, 0), hi(m, 0);
        switch (protocol_) {
        case Protocol::Approval:
            for (const auto& row : cells_)
                for (std::size_t c = 0; c < m; ++c) {
                    if (row[c] == 1) ++lo[c];
                    if (row[c] != 0) ++hi[c];
                }
            break;
        case Protocol::Plurality:
            for (const auto& p : prefixes_) {
                if (!p.empty()) {
                    ++lo[static_cast<std::size_t>(p.front())];
                    ++hi[static_cast<std::size_t>(p.front())];
                } else {
                    for (auto& h : hi) ++h;
                }
            }
            break;
        case Protocol::Borda:
            for (const auto& p : prefixes_) {
                std::vector<bool> placed(m, false);
                for (std::size_t pos = 0; pos < p.size(); ++pos) {
                    auto c = static_cast<std::size_t>(p[pos]);
                    placed[c] = true;
                    lo[c] += static_cast<std::int64_t>(m - 1 - pos);
                    hi[c] += static_cast<std::int64_t>(m - 1 - pos);
                }
                for (std::size_t c = 0; c < m; ++c)
                    if (!placed[c]) hi[c] += static_cast<std::int64_t>(m - 1 - p.size());
            }
            break;
        case Protocol::Copeland:
        case Protocol::Maximin: {
            PairwiseMatrix known_above(m_), undecided(m_);
            for (const auto& p : prefixes_) {
                std::vector<int> pos(m, m_);
                for (std::size_t i = 0; i < p.size(); ++i) pos[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
                for (int x = 0; x < m_; ++x)
                    for (int y = 0; y < m_; ++y) {
                        if (x == y) continue;
                        int px = pos[static_cast<std::size_t>(x)], py = pos[static_cast<std::size_t>(y)];
                        if (px < py) ++known_above.at(x, y);
                        else if (px == m_ && py == m_) ++undecided.at(x, y);
                    }
            }
            for (int x = 0; x < m_; ++x) {
                std::int64_t clo = 0, chi = 0;
                std::int64_t mlo = INT64_MAX, mhi = INT64_MAX;
                for (int y = 0; y < m_; ++y) {
                    if (y == x) continue;
                    std::int64_t nlo = known_above(x, y), nhi = nlo + undecided(x, y);
                    clo += termination_detail::sign(2 * nlo - n_);
                    chi += termination_detail::sign(2 * nhi - n_);
                    mlo = std::min(mlo, nlo);
                    mhi = std::min(mhi, nhi);
                }
                auto xi = static_cast<std::size_t>(x);
                if (protocol_ == Protocol::Copeland) {
                    lo[xi] = clo;
                    hi[xi] = chi;
                } else {
                    lo[xi] = m_ == 1 ? 0 : mlo;
                    hi[xi] = m_ == 1 ? 0 : mhi;
                }
            }
            break;
        }
        case Protocol::STV: throw ElectionError("score bounds are not defined for STV");
        }
        return {lo, hi};
    }

    /// The fixed outcome, if the known information already fixes it under
    /// `rule`. Returns the co-winner set (WinnerSet) or the single tie-broken
    /// winner (TiebreakWinner). STV is only resolved once every ballot is
    /// known.
    std::optional<std::vector<Candidate>> determined(StopRule rule) const {
        if (m_ == 1) return std::vector<Candidate>{0};
        if (protocol_ == Protocol::STV) {
            for (int v = 0; v < n_; ++v)
                if (!ballot_known(v)) return std::nullopt;
            std::vector<Ballot> all;
            for (int v = 0; v < n_; ++v) all.push_back(known_ballot(v));
            return stv_run(all, m_).winner_set;
        }
        auto [lo, hi] = score_bounds();
        const std::size_t m = lo.size();
        if (rule == StopRule::TiebreakWinner) {
            for (std::size_t w = 0; w < m; ++w) {
                bool beats_all = true;
                for (std::size_t y = 0; y < m && beats_all; ++y) {
                    if (y == w) continue;
                    beats_all = hi[y] < lo[w] || (hi[y] == lo[w] && w < y);
                }
                if (beats_all) return std::vector<Candidate>{static_cast<Candidate>(w)};
            }
            return std::nullopt;
        }
        std::int64_t top = *std::max_element(lo.begin(), lo.end());
        std::vector<Candidate> set;
        for (std::size_t c = 0; c < m; ++c) {
            if (lo[c] == hi[c] && lo[c] == top) set.push_back(static_cast<Candidate>(c));
            else if (hi[c] >= top) return std::nullopt;
        }
        if (set.empty()) return std::nullopt;
        return set;
    }

private:
    Protocol protocol_;
    int m_;
    int n_;
    std::vector<std::vector<signed char>> cells_;
    std::vector<std::vector<Candidate>> prefixes_;
};

struct ElicitationTranscript {
    std::vector<std::variant<CoarseStep, FineStep>> steps;
    int queries_used = 0;
    ElectionOutcome outcome;
    bool terminated_early = false;
};

/// Queries whole ballots from `true_profile` in policy order until the
/// revealed ballots fix the outcome under `rule`.
inline ElicitationTranscript simulate_coarse(const CoarsePolicy& policy, Protocol protocol, int m,
                                             std::span<const Ballot> true_profile,
                                             StopRule rule = StopRule::TiebreakWinner,
                                             std::uint64_t budget = kDefaultSearchBudget) {
    validate_ballots(protocol, m, true_profile);
    const int n = static_cast<int>(true_profile.size());
    ElicitationTranscript tr;
    std::vector<CoarseStep> history;
    std::vector<int> asked;
    while (true) {
        PartialProfile p = reveal(protocol, m, true_profile, asked);
        bool done = rule == StopRule::TiebreakWinner ? decided(p, budget).has_value()
                                                     : decided_winner_set(p, budget).has_value();
        if (done) break;
        auto next = policy(history);
        if (!next) throw ElectionError("coarse policy ran out of voters before the outcome was determined");
        if (*next < 0 || *next >= n || std::find(asked.begin(), asked.end(), *next) != asked.end())
            throw ElectionError("coarse policy asked an invalid or repeated voter");
        asked.push_back(*next);
        history.push_back(CoarseStep{*next, true_profile[static_cast<std::size_t>(*next)]});
        tr.steps.emplace_back(history.back());
    }
    tr.queries_used = static_cast<int>(asked.size());
    tr.terminated_early = tr.queries_used < n;
    tr.outcome = winner(protocol, true_profile, m);
    return tr;
}

/// Asks single questions from `true_profile` until the answers fix the
/// outcome under `rule`.
inline ElicitationTranscript simulate_fine(const FinePolicy& policy, Protocol protocol, int m,
                                           std::span<const Ballot> true_profile,
                                           StopRule rule = StopRule::WinnerSet) {
    validate_ballots(protocol, m, true_profile);
    const int n = static_cast<int>(true_profile.size());
    VoteKnowledge know(protocol, m, n);
    ElicitationTranscript tr;
    std::vector<FineStep> history;
    int total_queries = uses_rankings(protocol) ? n * std::max(0, m - 1) : n * m;
    while (!know.determined(rule)) {
        auto q = policy(history);
        if (!q) throw ElectionError("fine policy ran out of queries before the outcome was determined");
        if (!know.informative(*q)) throw ElectionError("fine policy asked a redundant or ill-typed query");
        FineAnswer a = answer_truthfully(*q, true_profile[static_cast<std::size_t>(q->voter)], history);
        know.record(*q, a);
        history.push_back(FineStep{*q, a});
        tr.steps.emplace_back(history.back());
    }
    tr.queries_used = static_cast<int>(history.size());
    tr.terminated_early = tr.queries_used < total_queries;
    tr.outcome = winner(protocol, true_profile, m);
    return tr;
}

/// Fixed schedule of ApproveCandidate queries; entries already asked are skipped.
inline FinePolicy fine_schedule_policy(std::vector<FineQuery> schedule) {
    return [schedule = std::move(schedule)](std::span<const FineStep> history) -> std::optional<FineQuery> {
        for (const auto& q : schedule) {
            bool asked = std::any_of(history.begin(), history.end(), [&](const FineStep& s) { return s.query == q; });
            if (!asked) return q;
        }
        return std::nullopt;
    };
}

/// Asks every voter about every candidate in ascending candidate order,
/// interleaving voters: Q(0,0), Q(1,0), ..., Q(0,1), ... For ranking
/// protocols it asks NextPreferred of each voter in turn.
inline FinePolicy fixed_order_fine_policy(Protocol protocol, int m, int n) {
    if (!uses_rankings(protocol)) {
        std::vector<FineQuery> schedule;
        for (int c = 0; c < m; ++c)
            for (int v = 0; v < n; ++v) schedule.push_back(FineQuery::approve(v, c));
        return fine_schedule_policy(std::move(schedule));
    }
    return [m, n](std::span<const FineStep> history) -> std::optional<FineQuery> {
        std::vector<int> asked(static_cast<std::size_t>(n), 0);
        for (const auto& s : history) ++asked[static_cast<std::size_t>(s.query.voter)];
        for (int round = 0; round < m - 1; ++round)
            for (int v = 0; v < n; ++v)
                if (asked[static_cast<std::size_t>(v)] == round) return FineQuery::next_preferred(v);
        return std::nullopt;
    };
}

/// A seeded random schedule fixed in advance. Approval: every (voter,
/// candidate) question in shuffled order. Rankings: each voter appears m - 1
/// times in shuffled order and is asked for its next preferred candidate.
inline FinePolicy random_fixed_order_fine_policy(Protocol protocol, int m, int n, std::uint64_t seed) {
    if (!uses_rankings(protocol)) {
        std::vector<FineQuery> all;
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < m; ++c) all.push_back(FineQuery::approve(v, c));
        auto perm = random_order(static_cast<int>(all.size()), seed);
        std::vector<FineQuery> schedule;
        for (int i : perm) schedule.push_back(all[static_cast<std::size_t>(i)]);
        return fine_schedule_policy(std::move(schedule));
    }
    std::vector<int> slots;
    for (int v = 0; v < n; ++v)
        for (int r = 0; r + 1 < m; ++r) slots.push_back(v);
    auto perm = random_order(static_cast<int>(slots.size()), seed);
    std::vector<int> voters;
    for (int i : perm) voters.push_back(slots[static_cast<std::size_t>(i)]);
    return [voters](std::span<const FineStep> history) -> std::optional<FineQuery> {
        if (history.size() >= voters.size()) return std::nullopt;
        return FineQuery::next_preferred(voters[history.size()]);
    };
}

/// Two-voter Approval policy (i=0, j=1; a=0, b=1, c=2): ask Q(i,a); on 'no'
/// ask Q(i,b), Q(j,b), Q(j,c); on 'yes' ask Q(j,a), Q(i,b), Q(j,b), Q(i,c);
/// then whatever remains.
inline FinePolicy theorem9_fine_policy() {
    return [](std::span<const FineStep> history) -> std::optional<FineQuery> {
        using Q = FineQuery;
        std::vector<Q> script{Q::approve(0, 0)};
        if (!history.empty()) {
            if (!history.front().answer.approved)
                script.insert(script.end(), {Q::approve(0, 1), Q::approve(1, 1), Q::approve(1, 2)});
            else
                script.insert(script.end(), {Q::approve(1, 0), Q::approve(0, 1), Q::approve(1, 1), Q::approve(0, 2)});
        }
        for (int v = 0; v < 2; ++v)
            for (int c = 0; c < 3; ++c) script.push_back(Q::approve(v, c));
        for (const auto& q : script) {
            bool asked = std::any_of(history.begin(), history.end(), [&](const FineStep& s) { return s.query == q; });
            if (!asked) return q;
        }
        return std::nullopt;
    };
}

} // namespace voteelicit

#endif // VOTEELICIT_ELICIT_HPP
