#ifndef VOTEELICIT_TREES_HPP
#define VOTEELICIT_TREES_HPP

// Explicit elicitation trees for tiny elections. Coarse trees query whole
// ballots; fine trees query partitions of an agent's still-consistent votes.
// Votes are referred to by their index in vote_space(protocol, m).

#include "voteelicit/core.hpp"
#include "voteelicit/elicit.hpp"
#include "voteelicit/termination.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace voteelicit {

inline constexpr std::uint64_t kDefaultNodeGuard = 1'000'000;

struct CoarseTreeNode {
    std::optional<int> agent;              ///< nullopt marks a leaf
    std::vector<CoarseTreeNode> children;  ///< one per vote, in vote_space order
};

struct FineTreeNode {
    std::optional<int> agent;                 ///< nullopt marks a leaf
    std::vector<int> consistent;              ///< the agent's votes consistent so far
    std::vector<std::vector<int>> partition;  ///< the query
    std::vector<FineTreeNode> children;       ///< one per partition element
};

namespace tree_detail {

class NodeCounter {
public:
    explicit NodeCounter(std::uint64_t guard) : guard_(guard) {}
    void tick() {
        if (++count_ > guard_) throw BudgetExceeded("elicitation tree exceeds " + std::to_string(guard_) + " nodes");
    }

private:
    std::uint64_t guard_;
    std::uint64_t count_ = 0;
};

inline void build_coarse(CoarseTreeNode& node, const CoarsePolicy& policy, Protocol protocol, int m, int n,
                         const std::vector<Ballot>& space, std::vector<CoarseStep>& history, StopRule rule,
                         NodeCounter& counter) {
    counter.tick();
    PartialProfile p{protocol, m, {}, {}, n - static_cast<int>(history.size())};
    for (const auto& s : history) p.known.push_back(s.ballot);
    bool done = rule == StopRule::TiebreakWinner ? decided(p).has_value() : decided_winner_set(p).has_value();
    if (done) return;
    auto next = policy(history);
    if (!next) return;
    node.agent = *next;
    node.children.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        history.push_back(CoarseStep{*next, space[i]});
        build_coarse(node.children[i], policy, protocol, m, n, space, history, rule, counter);
        history.pop_back();
    }
}

inline bool check_coarse(const CoarseTreeNode& node, Protocol protocol, int m, int n, const std::vector<Ballot>& space,
                         std::vector<int>& path_agents, std::vector<Ballot>& path_votes, NodeCounter& counter) {
    counter.tick();
    if (!node.agent) {
        PartialProfile p{protocol, m, {}, path_votes, n - static_cast<int>(path_votes.size())};
        return decided(p).has_value();
    }
    int a = *node.agent;
    if (a < 0 || a >= n) return false;
    if (std::find(path_agents.begin(), path_agents.end(), a) != path_agents.end()) return false;
    if (node.children.size() != space.size()) return false;
    path_agents.push_back(a);
    bool ok = true;
    for (std::size_t i = 0; i < space.size() && ok; ++i) {
        path_votes.push_back(space[i]);
        ok = check_coarse(node.children[i], protocol, m, n, space, path_agents, path_votes, counter);
        path_votes.pop_back();
    }
    path_agents.pop_back();
    return ok;
}

/// Knowledge implied by per-agent consistent vote sets: agreed approval
/// cells, or the common prefix of the consistent rankings.
inline VoteKnowledge knowledge_of(Protocol protocol, int m, const std::vector<Ballot>& space,
                                  const std::vector<std::vector<int>>& consistent) {
    VoteKnowledge k(protocol, m, static_cast<int>(consistent.size()));
    for (std::size_t v = 0; v < consistent.size(); ++v) {
        const auto& set = consistent[v];
        if (uses_rankings(protocol)) {
            std::vector<Candidate> prefix = std::get<RankingBallot>(space[static_cast<std::size_t>(set.front())]).order;
            for (int idx : set) {
                const auto& o = std::get<RankingBallot>(space[static_cast<std::size_t>(idx)]).order;
                std::size_t l = 0;
                while (l < prefix.size() && prefix[l] == o[l]) ++l;
                prefix.resize(l);
            }
            k.set_prefix(static_cast<int>(v), std::move(prefix));
        } else {
            for (int c = 0; c < m; ++c) {
                int yes = 0;
                for (int idx : set) yes += std::get<ApprovalBallot>(space[static_cast<std::size_t>(idx)]).approves(c);
                signed char cell = yes == 0 ? 0 : (yes == static_cast<int>(set.size()) ? 1 : -1);
                k.set_cell(static_cast<int>(v), c, cell);
            }
        }
    }
    return k;
}

inline std::vector<std::vector<int>> query_partition(const FineQuery& q, const VoteKnowledge& know,
                                                     const std::vector<Ballot>& space, const std::vector<int>& set) {
    if (q.kind == FineQuery::Kind::ApproveCandidate) {
        std::vector<int> yes, no;
        for (int idx : set)
            (std::get<ApprovalBallot>(space[static_cast<std::size_t>(idx)]).approves(q.candidate) ? yes : no).push_back(idx);
        return {yes, no};
    }
    std::size_t depth = know.prefix(q.voter).size();
    std::map<Candidate, std::vector<int>> groups;
    for (int idx : set) groups[std::get<RankingBallot>(space[static_cast<std::size_t>(idx)]).order[depth]].push_back(idx);
    std::vector<std::vector<int>> out;
    for (auto& [c, g] : groups) out.push_back(std::move(g));
    return out;
}

inline void build_fine(FineTreeNode& node, const FinePolicy& policy, Protocol protocol, int m,
                       const std::vector<Ballot>& space, std::vector<std::vector<int>>& consistent,
                       std::vector<FineStep>& history, StopRule rule, NodeCounter& counter) {
    counter.tick();
    VoteKnowledge know = knowledge_of(protocol, m, space, consistent);
    if (know.determined(rule)) return;
    auto q = policy(history);
    if (!q) return;
    if (!know.informative(*q)) throw ElectionError("fine policy asked a redundant or ill-typed query");
    auto& set = consistent[static_cast<std::size_t>(q->voter)];
    node.agent = q->voter;
    node.consistent = set;
    node.partition = query_partition(*q, know, space, set);
    node.children.resize(node.partition.size());
    const std::vector<int> saved = set;
    std::size_t depth = uses_rankings(protocol) ? know.prefix(q->voter).size() : 0;
    for (std::size_t i = 0; i < node.partition.size(); ++i) {
        const auto& part = node.partition[i];
        FineAnswer a;
        if (q->kind == FineQuery::Kind::ApproveCandidate) a.approved = (i == 0);
        else a.reported = std::get<RankingBallot>(space[static_cast<std::size_t>(part.front())]).order[depth];
        set = part;
        history.push_back(FineStep{*q, a});
        build_fine(node.children[i], policy, protocol, m, space, consistent, history, rule, counter);
        history.pop_back();
    }
    set = saved;
}

/// Exact: enumerates every combination of consistent votes.
inline bool outcome_fixed(Protocol protocol, int m, const std::vector<Ballot>& space,
                          const std::vector<std::vector<int>>& consistent, StopRule rule, std::uint64_t guard) {
    std::uint64_t combos = 1;
    for (const auto& s : consistent) combos = termination_detail::saturating_mul(combos, s.size());
    termination_detail::check_budget(combos, guard, "fine-tree leaf check");
    std::vector<std::size_t> idx(consistent.size(), 0);
    std::optional<std::vector<Candidate>> common;
    std::vector<Ballot> ballots(consistent.size());
    while (true) {
        for (std::size_t v = 0; v < consistent.size(); ++v)
            ballots[v] = space[static_cast<std::size_t>(consistent[v][idx[v]])];
        auto out = winner(protocol, ballots, m);
        std::vector<Candidate> key = rule == StopRule::WinnerSet ? out.winner_set
                                                                 : std::vector<Candidate>{out.tiebreak_winner};
        if (!common) common = key;
        else if (*common != key) return false;
        std::size_t v = 0;
        while (v < idx.size() && ++idx[v] == consistent[v].size()) idx[v++] = 0;
        if (v == idx.size()) return true;
    }
}

inline bool check_fine(const FineTreeNode& node, Protocol protocol, int m, const std::vector<Ballot>& space,
                       std::vector<std::vector<int>>& consistent, StopRule rule, NodeCounter& counter,
                       std::uint64_t guard) {
    counter.tick();
    const int n = static_cast<int>(consistent.size());
    if (!node.agent) return outcome_fixed(protocol, m, space, consistent, rule, guard);
    int a = *node.agent;
    if (a < 0 || a >= n) return false;
    auto& set = consistent[static_cast<std::size_t>(a)];
    if (node.consistent != set) return false;
    if (node.partition.size() < 2 || node.children.size() != node.partition.size()) return false;
    std::vector<int> merged;
    for (const auto& part : node.partition) {
        if (part.empty()) return false;
        merged.insert(merged.end(), part.begin(), part.end());
    }
    std::sort(merged.begin(), merged.end());
    std::vector<int> sorted_set = set;
    std::sort(sorted_set.begin(), sorted_set.end());
    if (merged != sorted_set) return false;
    const std::vector<int> saved = set;
    bool ok = true;
    for (std::size_t i = 0; i < node.partition.size() && ok; ++i) {
        set = node.partition[i];
        ok = check_fine(node.children[i], protocol, m, space, consistent, rule, counter, guard);
    }
    set = saved;
    return ok;
}

using AgentHistory = std::vector<std::pair<std::vector<std::vector<int>>, std::size_t>>;

inline bool check_nondivulging(const FineTreeNode& node, std::map<std::pair<int, AgentHistory>,
                                                                  const std::vector<std::vector<int>>*>& next_query,
                               std::map<int, AgentHistory>& histories, NodeCounter& counter) {
    counter.tick();
    if (!node.agent) return true;
    int a = *node.agent;
    auto& hist = histories[a];
    auto [it, inserted] = next_query.emplace(std::make_pair(a, hist), &node.partition);
    if (!inserted && *it->second != node.partition) return false;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        histories[a].emplace_back(node.partition, i);
        bool ok = check_nondivulging(node.children[i], next_query, histories, counter);
        histories[a].pop_back();
        if (!ok) return false;
    }
    return true;
}

} // namespace tree_detail

/// Expands a coarse policy into its explicit tree. Leaves are placed where the
/// revealed ballots fix the outcome under `rule`, or where the policy stops.
inline CoarseTreeNode materialize_coarse_tree(const CoarsePolicy& policy, Protocol protocol, int m, int n,
                                              StopRule rule = StopRule::TiebreakWinner,
                                              std::uint64_t guard = kDefaultNodeGuard) {
    CoarseTreeNode root;
    auto space = vote_space(protocol, m);
    std::vector<CoarseStep> history;
    tree_detail::NodeCounter counter(guard);
    tree_detail::build_coarse(root, policy, protocol, m, n, space, history, rule, counter);
    return root;
}

/// True iff no agent repeats on a root-to-leaf path, every inner node has one
/// child per possible vote, and every leaf's votes decide the election.
inline bool validate_coarse_tree(const CoarseTreeNode& tree, Protocol protocol, int m, int n,
                                 std::uint64_t guard = kDefaultNodeGuard) {
    auto space = vote_space(protocol, m);
    std::vector<int> agents;
    std::vector<Ballot> votes;
    tree_detail::NodeCounter counter(guard);
    return tree_detail::check_coarse(tree, protocol, m, n, space, agents, votes, counter);
}

inline FineTreeNode materialize_fine_tree(const FinePolicy& policy, Protocol protocol, int m, int n,
                                          StopRule rule = StopRule::WinnerSet,
                                          std::uint64_t guard = kDefaultNodeGuard) {
    FineTreeNode root;
    auto space = vote_space(protocol, m);
    std::vector<int> all(space.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> consistent(static_cast<std::size_t>(n), all);
    std::vector<FineStep> history;
    tree_detail::NodeCounter counter(guard);
    tree_detail::build_fine(root, policy, protocol, m, space, consistent, history, rule, counter);
    return root;
}

/// Checks the fine-tree rules (consistent sets follow the path, queries are
/// partitions with at least two parts) and that every leaf fixes the outcome,
/// by exhaustive enumeration of the consistent votes.
inline bool validate_fine_tree(const FineTreeNode& tree, Protocol protocol, int m, int n,
                               StopRule rule = StopRule::WinnerSet, std::uint64_t guard = kDefaultNodeGuard) {
    auto space = vote_space(protocol, m);
    std::vector<int> all(space.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> consistent(static_cast<std::size_t>(n), all);
    tree_detail::NodeCounter counter(guard);
    return tree_detail::check_fine(tree, protocol, m, space, consistent, rule, counter, guard);
}

/// True iff, for every agent, the next query it receives depends only on its
/// own earlier queries and answers.
inline bool is_nondivulging(const FineTreeNode& tree, std::uint64_t guard = kDefaultNodeGuard) {
    std::map<std::pair<int, tree_detail::AgentHistory>, const std::vector<std::vector<int>>*> next_query;
    std::map<int, tree_detail::AgentHistory> histories;
    tree_detail::NodeCounter counter(guard);
    return tree_detail::check_nondivulging(tree, next_query, histories, counter);
}

} // namespace voteelicit

#endif // VOTEELICIT_TREES_HPP
