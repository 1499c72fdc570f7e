#ifndef VOTEELICIT_STRATEGY_HPP
#define VOTEELICIT_STRATEGY_HPP

// Voting games with private types and a common prior, played through an
// elicitation mechanism. Expected utilities are exact rationals; ties in the
// election are broken uniformly at random.

#include "voteelicit/core.hpp"
#include "voteelicit/elicit.hpp"
#include "voteelicit/election_io.hpp"
#include "voteelicit/termination.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace voteelicit {

using Rational = boost::rational<std::int64_t>;

inline std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct AgentType {
    std::string label;
    std::vector<Rational> utility; ///< per candidate
};

struct PriorEntry {
    std::vector<int> types; ///< one type index per agent
    Rational probability;
};

struct FullMechanism {};

/// Coarse elicitation where a queried agent learns how many agents were
/// queried before it.
struct CoarsePositionMechanism {
    CoarsePolicy policy;
};

/// Fine (single-question) elicitation where an agent sees the queries
/// addressed to it, in order. Approval elections only.
struct FineTreeMechanism {
    FinePolicy policy;
};

using Mechanism = std::variant<FullMechanism, CoarsePositionMechanism, FineTreeMechanism>;

struct VotingGame {
    std::vector<std::string> agents;
    std::vector<std::vector<AgentType>> type_space;
    std::vector<PriorEntry> prior;
    Protocol protocol = Protocol::Approval;
    int m = 0;
    std::vector<std::string> candidates;
    Mechanism mechanism;

    int agent_count() const { return static_cast<int>(agents.size()); }
};

inline void validate(const VotingGame& game) {
    const auto n = game.agents.size();
    if (game.type_space.size() != n) throw ElectionError("game: one type space per agent required");
    for (const auto& types : game.type_space) {
        if (types.empty()) throw ElectionError("game: empty type space");
        for (const auto& t : types)
            if (static_cast<int>(t.utility.size()) != game.m) throw ElectionError("game: utility vector must have m entries");
    }
    Rational total = 0;
    for (const auto& e : game.prior) {
        if (e.types.size() != n) throw ElectionError("game: prior entry has wrong arity");
        for (std::size_t a = 0; a < n; ++a)
            if (e.types[a] < 0 || e.types[a] >= static_cast<int>(game.type_space[a].size()))
                throw ElectionError("game: prior entry names an unknown type");
        if (e.probability < Rational(0)) throw ElectionError("game: negative prior probability");
        total += e.probability;
    }
    if (total != Rational(1)) throw ElectionError("game: prior does not sum to 1");
    if (std::holds_alternative<FineTreeMechanism>(game.mechanism) && game.protocol != Protocol::Approval)
        throw ElectionError("game: fine mechanism is implemented for Approval only");
}

/// Product prior from independent per-agent marginals, expanded to a table.
inline std::vector<PriorEntry> independent_prior(const std::vector<std::vector<Rational>>& marginals) {
    std::vector<PriorEntry> table{PriorEntry{{}, Rational(1)}};
    for (const auto& marginal : marginals) {
        std::vector<PriorEntry> next;
        for (const auto& e : table)
            for (std::size_t t = 0; t < marginal.size(); ++t) {
                if (marginal[t] == Rational(0)) continue;
                PriorEntry x = e;
                x.types.push_back(static_cast<int>(t));
                x.probability *= marginal[t];
                next.push_back(std::move(x));
            }
        table = std::move(next);
    }
    return table;
}

/// What an agent has seen when it must answer.
struct Observation {
    enum class Kind { Full, Position, Queries };
    Kind kind = Kind::Full;
    int position = 0;                 ///< Position: 1-based query position; 0 = never queried
    std::vector<Candidate> queries;   ///< Queries: candidates asked about so far, current one last

    static Observation full() { return {}; }
    static Observation at_position(int p) { return {Kind::Position, p, {}}; }
    static Observation after_queries(std::vector<Candidate> q) { return {Kind::Queries, 0, std::move(q)}; }

    friend bool operator==(const Observation&, const Observation&) = default;
    friend auto operator<=>(const Observation&, const Observation&) = default;
};

inline std::string ordinal(int p) {
    static const char* words[] = {"never", "first", "second", "third", "fourth", "fifth"};
    if (p >= 0 && p < 6) return words[p];
    return std::to_string(p) + "th";
}

inline std::string describe(const Observation& o, const std::string& agent, std::span<const std::string> names) {
    switch (o.kind) {
    case Observation::Kind::Full: return "under full elicitation";
    case Observation::Kind::Position: return o.position == 0 ? "when not queried" : "when queried " + ordinal(o.position);
    case Observation::Kind::Queries: {
        std::string s = "after queries ";
        for (std::size_t i = 0; i < o.queries.size(); ++i) {
            if (i) s += ", ";
            s += "Q(" + agent + "," + candidate_name(names, o.queries[i]) + ")";
        }
        return s;
    }
    }
    return "";
}

/// Ballot per (type, observation): a default per type plus overrides.
struct AgentStrategy {
    std::vector<Ballot> by_type;
    std::map<std::pair<int, Observation>, Ballot> overrides;

    const Ballot& at(int type, const Observation& obs) const {
        if (auto it = overrides.find({type, obs}); it != overrides.end()) return it->second;
        if (type < 0 || type >= static_cast<int>(by_type.size()))
            throw ElectionError("strategy has no ballot for type " + std::to_string(type));
        return by_type[static_cast<std::size_t>(type)];
    }
};

using StrategyProfile = std::vector<AgentStrategy>;

/// Approve exactly the candidates worth at least 1/2 to the agent.
inline AgentStrategy truthful_strategy(const VotingGame& game, int agent) {
    if (game.protocol != Protocol::Approval) throw ElectionError("truthful strategy is defined for Approval only");
    AgentStrategy s;
    for (const auto& type : game.type_space.at(static_cast<std::size_t>(agent))) {
        ApprovalBallot b;
        for (int c = 0; c < game.m; ++c)
            if (type.utility[static_cast<std::size_t>(c)] >= Rational(1, 2)) b.approved.push_back(c);
        s.by_type.emplace_back(std::move(b));
    }
    return s;
}

inline StrategyProfile truthful_profile(const VotingGame& game) {
    StrategyProfile p;
    for (int a = 0; a < game.agent_count(); ++a) p.push_back(truthful_strategy(game, a));
    return p;
}

/// Uniform distribution over the co-winner set, indexed by candidate.
inline std::vector<Rational> outcome_distribution(Protocol protocol, std::span<const Ballot> ballots, int m) {
    auto out = winner(protocol, ballots, m);
    std::vector<Rational> dist(static_cast<std::size_t>(m), Rational(0));
    Rational share(1, static_cast<std::int64_t>(out.winner_set.size()));
    for (Candidate c : out.winner_set) dist[static_cast<std::size_t>(c)] = share;
    return dist;
}

/// One play of the mechanism for a fixed type profile.
struct Play {
    std::vector<Ballot> ballots;                        ///< effective ballots counted
    std::vector<std::vector<Observation>> observations; ///< per agent, in order seen
    int queries = 0;
    std::vector<Rational> outcome;
};

namespace strategy_detail {

inline void check_ballot(const VotingGame& game, const Ballot& b) { validate_ballot(game.protocol, game.m, b); }

inline Play play_full(const VotingGame& game, const StrategyProfile& s, const std::vector<int>& types) {
    Play play;
    play.observations.resize(game.agents.size());
    for (std::size_t a = 0; a < game.agents.size(); ++a) {
        play.ballots.push_back(s[a].at(types[a], Observation::full()));
        check_ballot(game, play.ballots.back());
        play.observations[a].push_back(Observation::full());
    }
    play.queries = game.agent_count();
    return play;
}

inline Play play_coarse(const VotingGame& game, const CoarsePositionMechanism& mech, const StrategyProfile& s,
                        const std::vector<int>& types) {
    const int n = game.agent_count();
    Play play;
    play.observations.resize(static_cast<std::size_t>(n));
    std::vector<CoarseStep> history;
    std::vector<bool> queried(static_cast<std::size_t>(n), false);
    while (true) {
        PartialProfile p{game.protocol, game.m, {}, {}, n - static_cast<int>(history.size())};
        for (const auto& st : history) p.known.push_back(st.ballot);
        if (decided_winner_set(p)) break;
        auto next = mech.policy(history);
        if (!next || *next < 0 || *next >= n || queried[static_cast<std::size_t>(*next)])
            throw ElectionError("coarse mechanism policy returned an invalid voter");
        auto a = static_cast<std::size_t>(*next);
        Observation obs = Observation::at_position(static_cast<int>(history.size()) + 1);
        Ballot b = s[a].at(types[a], obs);
        check_ballot(game, b);
        queried[a] = true;
        play.observations[a].push_back(obs);
        history.push_back(CoarseStep{*next, std::move(b)});
    }
    play.queries = static_cast<int>(history.size());
    play.ballots.resize(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a)
        if (!queried[a]) play.ballots[a] = s[a].at(types[a], Observation::at_position(0));
    for (const auto& st : history) play.ballots[static_cast<std::size_t>(st.voter)] = st.ballot;
    return play;
}

inline Play play_fine(const VotingGame& game, const FineTreeMechanism& mech, const StrategyProfile& s,
                      const std::vector<int>& types) {
    const int n = game.agent_count();
    Play play;
    play.observations.resize(static_cast<std::size_t>(n));
    VoteKnowledge know(game.protocol, game.m, n);
    std::vector<FineStep> history;
    std::vector<std::vector<Candidate>> asked(static_cast<std::size_t>(n));
    while (!know.determined(StopRule::WinnerSet)) {
        auto q = mech.policy(history);
        if (!q || !know.informative(*q)) throw ElectionError("fine mechanism policy returned an invalid query");
        auto a = static_cast<std::size_t>(q->voter);
        asked[a].push_back(q->candidate);
        Observation obs = Observation::after_queries(asked[a]);
        const Ballot& b = s[a].at(types[a], obs);
        check_ballot(game, b);
        FineAnswer ans;
        ans.approved = std::get<ApprovalBallot>(b).approves(q->candidate);
        know.record(*q, ans);
        history.push_back(FineStep{*q, ans});
        play.observations[a].push_back(std::move(obs));
    }
    play.queries = static_cast<int>(history.size());
    // Unasked cells cannot change the (already fixed) winner set; fill them
    // from the agent's last ballot.
    for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a) {
        Observation last = play.observations[a].empty() ? Observation::after_queries({}) : play.observations[a].back();
        const auto& fallback = std::get<ApprovalBallot>(s[a].at(types[a], last));
        ApprovalBallot b;
        for (int c = 0; c < game.m; ++c) {
            signed char cell = know.cell(static_cast<int>(a), c);
            if (cell == 1 || (cell < 0 && fallback.approves(c))) b.approved.push_back(c);
        }
        play.ballots.emplace_back(std::move(b));
    }
    return play;
}

} // namespace strategy_detail

inline Play run_mechanism(const VotingGame& game, const StrategyProfile& strategies, const std::vector<int>& types) {
    if (strategies.size() != game.agents.size()) throw ElectionError("strategy profile needs one entry per agent");
    Play play = std::visit(
        [&](const auto& mech) -> Play {
            using M = std::decay_t<decltype(mech)>;
            if constexpr (std::is_same_v<M, FullMechanism>) return strategy_detail::play_full(game, strategies, types);
            else if constexpr (std::is_same_v<M, CoarsePositionMechanism>)
                return strategy_detail::play_coarse(game, mech, strategies, types);
            else return strategy_detail::play_fine(game, mech, strategies, types);
        },
        game.mechanism);
    play.outcome = outcome_distribution(game.protocol, play.ballots, game.m);
    return play;
}

/// E[u_agent(type, outcome) | agent has `type`, and every agent in `given`
/// has the listed type].
inline Rational expected_utility(const VotingGame& game, const StrategyProfile& strategies, int agent, int type,
                                 const std::map<int, int>& given = {}) {
    validate(game);
    Rational weight = 0, total = 0;
    const auto& utility = game.type_space.at(static_cast<std::size_t>(agent)).at(static_cast<std::size_t>(type)).utility;
    for (const auto& e : game.prior) {
        if (e.types[static_cast<std::size_t>(agent)] != type || e.probability == Rational(0)) continue;
        bool match = std::all_of(given.begin(), given.end(),
                                 [&](const auto& kv) { return e.types.at(static_cast<std::size_t>(kv.first)) == kv.second; });
        if (!match) continue;
        Play play = run_mechanism(game, strategies, e.types);
        Rational u = 0;
        for (int c = 0; c < game.m; ++c) u += play.outcome[static_cast<std::size_t>(c)] * utility[static_cast<std::size_t>(c)];
        total += e.probability * u;
        weight += e.probability;
    }
    if (weight == Rational(0)) throw ElectionError("conditioning event has zero probability");
    return total / weight;
}

struct Deviation {
    int agent = 0;
    int type = 0;
    std::vector<std::pair<Observation, Ballot>> changes; ///< only entries that differ from the strategy
    Rational baseline;
    Rational deviated;
    Rational gain() const { return deviated - baseline; }
};

struct BneResult {
    bool is_bne = true;
    std::optional<Deviation> counterexample;
};

namespace strategy_detail {

struct UnassignedObservation {
    Observation obs;
};

/// Observations the agent can face at `type` given the others' strategies,
/// over every way it might itself respond.
inline std::vector<Observation> reachable_observations(const VotingGame& game, const StrategyProfile& s, int agent,
                                                       int type) {
    std::set<Observation> seen;
    const auto a = static_cast<std::size_t>(agent);
    if (std::holds_alternative<FullMechanism>(game.mechanism)) return {Observation::full()};
    if (std::holds_alternative<CoarsePositionMechanism>(game.mechanism)) {
        for (const auto& e : game.prior) {
            if (e.types[a] != type || e.probability == Rational(0)) continue;
            Play play = run_mechanism(game, s, e.types);
            for (const auto& o : play.observations[a]) seen.insert(o);
        }
        return {seen.begin(), seen.end()};
    }
    // Fine: the agent's own answers steer later queries, so branch on each.
    const auto& mech = std::get<FineTreeMechanism>(game.mechanism);
    auto explore = [&](auto&& self, std::map<Observation, bool> answers) -> void {
        for (const auto& e : game.prior) {
            if (e.types[a] != type || e.probability == Rational(0)) continue;
            StrategyProfile probe = s;
            for (const auto& [obs, yes] : answers) {
                ApprovalBallot b;
                if (yes) b.approved.push_back(obs.queries.back());
                probe[a].overrides[{type, obs}] = b;
            }
            // Any observation without an assigned answer interrupts the run.
            VotingGame g = game;
            g.mechanism = FineTreeMechanism{[&, inner = mech.policy](std::span<const FineStep> h) {
                auto q = inner(h);
                if (q && q->voter == agent) {
                    std::vector<Candidate> mine;
                    for (const auto& st : h)
                        if (st.query.voter == agent) mine.push_back(st.query.candidate);
                    mine.push_back(q->candidate);
                    Observation obs = Observation::after_queries(mine);
                    if (!answers.count(obs)) throw UnassignedObservation{obs};
                }
                return q;
            }};
            try {
                Play play = run_mechanism(g, probe, e.types);
                for (const auto& o : play.observations[a]) seen.insert(o);
            } catch (const UnassignedObservation& u) {
                seen.insert(u.obs);
                for (bool yes : {false, true}) {
                    auto next = answers;
                    next[u.obs] = yes;
                    self(self, next);
                }
                return;
            }
        }
    };
    explore(explore, {});
    return {seen.begin(), seen.end()};
}

inline int ballot_distance(const Ballot& x, const Ballot& y) {
    if (x == y) return 0;
    if (const auto* ax = std::get_if<ApprovalBallot>(&x)) {
        const auto& ay = std::get<ApprovalBallot>(y);
        std::vector<Candidate> diff;
        std::set_symmetric_difference(ax->approved.begin(), ax->approved.end(), ay.approved.begin(), ay.approved.end(),
                                      std::back_inserter(diff));
        return static_cast<int>(diff.size());
    }
    return 1;
}

} // namespace strategy_detail

/// Bayes-Nash check over every observation-contingent pure deviation. For the
/// first (agent, type) in index order that can gain, reports the deviation
/// with the largest gain, preferring the one closest to the original
/// strategy.
inline BneResult is_bne(const VotingGame& game, const StrategyProfile& strategies,
                        std::uint64_t budget = kDefaultSearchBudget) {
    validate(game);
    const bool fine = std::holds_alternative<FineTreeMechanism>(game.mechanism);
    auto space = vote_space(game.protocol, game.m);
    for (int agent = 0; agent < game.agent_count(); ++agent) {
        const auto a = static_cast<std::size_t>(agent);
        for (int type = 0; type < static_cast<int>(game.type_space[a].size()); ++type) {
            bool possible = std::any_of(game.prior.begin(), game.prior.end(), [&](const PriorEntry& e) {
                return e.types[a] == type && e.probability != Rational(0);
            });
            if (!possible) continue;
            Rational base = expected_utility(game, strategies, agent, type);
            auto reach = strategy_detail::reachable_observations(game, strategies, agent, type);

            std::vector<std::vector<Ballot>> options;
            for (const auto& obs : reach) {
                if (!fine) {
                    options.push_back(space);
                    continue;
                }
                const auto& current = std::get<ApprovalBallot>(strategies[a].at(type, obs));
                Candidate d = obs.queries.back();
                ApprovalBallot yes = current, no = current;
                if (!yes.approves(d)) {
                    yes.approved.push_back(d);
                    std::sort(yes.approved.begin(), yes.approved.end());
                }
                no.approved.erase(std::remove(no.approved.begin(), no.approved.end(), d), no.approved.end());
                options.push_back({Ballot{no}, Ballot{yes}});
            }
            std::uint64_t count = 1;
            for (const auto& o : options) count = termination_detail::saturating_mul(count, o.size());
            termination_detail::check_budget(count, budget, "BNE deviation search");

            std::optional<Deviation> best;
            int best_distance = 0;
            std::vector<std::size_t> pick(options.size(), 0);
            while (true) {
                StrategyProfile dev = strategies;
                Deviation d{agent, type, {}, base, 0};
                int distance = 0;
                for (std::size_t i = 0; i < reach.size(); ++i) {
                    const Ballot& b = options[i][pick[i]];
                    const Ballot& orig = strategies[a].at(type, reach[i]);
                    dev[a].overrides[{type, reach[i]}] = b;
                    if (b != orig) {
                        d.changes.emplace_back(reach[i], b);
                        distance += strategy_detail::ballot_distance(b, orig);
                    }
                }
                if (!d.changes.empty()) {
                    d.deviated = expected_utility(game, dev, agent, type);
                    if (d.gain() > Rational(0) &&
                        (!best || d.gain() > best->gain() || (d.gain() == best->gain() && distance < best_distance))) {
                        best = d;
                        best_distance = distance;
                    }
                }
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
                if (i == pick.size()) break;
            }
            if (best) return BneResult{false, best};
        }
    }
    return BneResult{true, std::nullopt};
}

/// Three-voter Approval game (i, j, k over a, b, c). i: utility 1 for c only
/// or 1 for a only; j: 1 for c only or 1 for b and c; each with probability
/// 1/2, independently. k always has a:1, b:1/4, c:0. Elicited coarsely by
/// asking i, then j if i approved only c and k otherwise, then the last voter
/// if needed.
inline VotingGame theorem7_game() {
    using R = Rational;
    VotingGame g;
    g.agents = {"i", "j", "k"};
    g.candidates = {"a", "b", "c"};
    g.m = 3;
    g.protocol = Protocol::Approval;
    g.type_space = {
        {AgentType{"c-only", {R(0), R(0), R(1)}}, AgentType{"a-only", {R(1), R(0), R(0)}}},
        {AgentType{"c-only", {R(0), R(0), R(1)}}, AgentType{"b-and-c", {R(0), R(1), R(1)}}},
        {AgentType{"a-first", {R(1), R(1, 4), R(0)}}},
    };
    g.prior = independent_prior({{R(1, 2), R(1, 2)}, {R(1, 2), R(1, 2)}, {R(1)}});
    g.mechanism = CoarsePositionMechanism{theorem7_coarse_policy()};
    return g;
}

/// Two-voter Approval game (i, j over a, b, c). i: utility 1 for b and c or 1
/// for a and b, each with probability 1/2. j always has a:1, b:3/4, c:0.
/// Elicited one approval question at a time.
inline VotingGame theorem9_game() {
    using R = Rational;
    VotingGame g;
    g.agents = {"i", "j"};
    g.candidates = {"a", "b", "c"};
    g.m = 3;
    g.protocol = Protocol::Approval;
    g.type_space = {
        {AgentType{"b-and-c", {R(0), R(1), R(1)}}, AgentType{"a-and-b", {R(1), R(1), R(0)}}},
        {AgentType{"a-first", {R(1), R(3, 4), R(0)}}},
    };
    g.prior = independent_prior({{R(1, 2), R(1, 2)}, {R(1)}});
    g.mechanism = FineTreeMechanism{theorem9_fine_policy()};
    return g;
}

inline VotingGame with_mechanism(VotingGame game, Mechanism mechanism) {
    game.mechanism = std::move(mechanism);
    return game;
}

} // namespace voteelicit

#endif // VOTEELICIT_STRATEGY_HPP
