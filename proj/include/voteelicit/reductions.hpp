#ifndef VOTEELICIT_REDUCTIONS_HPP
#define VOTEELICIT_REDUCTIONS_HPP

// Instance generators for the hardness reductions, and exhaustive solvers for
// their source problems:
//
//   3-COVER              -> Approval / Borda effective elicitation
//   EFFECTIVE-PREFERENCE -> STV elicitation-not-done with one unknown vote

#include "voteelicit/core.hpp"
#include "voteelicit/elicit.hpp"
#include "voteelicit/election_io.hpp"
#include "voteelicit/termination.hpp"

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace voteelicit {

/// Universe {0, ..., 3q-1}; each subset holds three distinct elements.
struct ThreeCoverInstance {
    int q = 0;
    std::vector<std::array<int, 3>> subsets;

    int universe_size() const { return 3 * q; }
    int r() const { return static_cast<int>(subsets.size()); }
    friend bool operator==(const ThreeCoverInstance&, const ThreeCoverInstance&) = default;
};

inline void validate(const ThreeCoverInstance& tc) {
    if (tc.q < 0) throw ElectionError("3-cover: q must be nonnegative");
    for (const auto& s : tc.subsets) {
        for (int e : s)
            if (e < 0 || e >= tc.universe_size()) throw ElectionError("3-cover: subset element out of range");
        if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
            throw ElectionError("3-cover: every subset must have exactly 3 distinct elements");
    }
}

/// STV election S over candidates C with one vote still to be cast; asks
/// whether that vote can make `c` win.
struct EPInstance {
    int m = 0;
    std::vector<std::string> names;
    std::vector<Ballot> votes;
    Candidate c = 0;
};

inline void validate(const EPInstance& ep) {
    validate_ballots(Protocol::STV, ep.m, ep.votes);
    if (ep.c < 0 || ep.c >= ep.m) throw ElectionError("effective-preference target out of range");
    bool c_top = std::any_of(ep.votes.begin(), ep.votes.end(),
                             [&](const Ballot& b) { return std::get<RankingBallot>(b).order.front() == ep.c; });
    if (!c_top) throw ElectionError("effective-preference instance needs a vote ranking the target first");
}

struct BordaReductionParams {
    std::int64_t q = 0;
    std::int64_t r = 0;
    std::int64_t padding_size = 0; ///< |B| = 64 r^2
    std::int64_t g = 0;            ///< number of w-first votes, 8r - 4q - 4
    std::int64_t l = 0;            ///< points for a first place, 64 r^2 + 3q
    std::int64_t k = 0;            ///< g + q

    static BordaReductionParams from(std::int64_t q, std::int64_t r) {
        BordaReductionParams p;
        p.q = q;
        p.r = r;
        p.padding_size = 64 * r * r;
        p.g = 8 * r - 4 * q - 4;
        p.l = p.padding_size + 3 * q;
        p.k = p.g + q;
        return p;
    }
};

namespace reduction_detail {

inline std::vector<std::string> universe_names(int q) {
    std::vector<std::string> names;
    for (int i = 1; i <= 3 * q; ++i) names.push_back("u" + std::to_string(i));
    return names;
}

inline void require_r_greater_than_q(const ThreeCoverInstance& tc) {
    if (tc.r() <= tc.q) throw ElectionError("3-cover: the reduction needs r > q subsets");
}

} // namespace reduction_detail

/// Candidates u1..u3q then w. One vote approving S_i + {w} per subset, then
/// r - 2q + 2 votes approving only w; k = r - q + 2.
inline ElicitationInstance gen_approval_elicitation(const ThreeCoverInstance& tc) {
    validate(tc);
    reduction_detail::require_r_greater_than_q(tc);
    const int q = tc.q, r = tc.r();
    if (r < 2 * q - 2) throw ElectionError("3-cover: approval reduction needs r >= 2q - 2");
    const Candidate w = 3 * q;
    ElicitationInstance inst;
    inst.protocol = Protocol::Approval;
    inst.m = 3 * q + 1;
    inst.names = reduction_detail::universe_names(q);
    inst.names.push_back("w");
    for (const auto& s : tc.subsets) inst.predicted.push_back(approval({s[0], s[1], s[2], w}));
    for (int i = 0; i < r - 2 * q + 2; ++i) inst.predicted.push_back(approval({w}));
    inst.k = r - q + 2;
    inst.tagged_candidate = w;
    return inst;
}

/// Candidates u1..u3q, w, b1..b(64r^2). Per subset S_i the ranking
/// (first half of B, U - S_i, second half of B, S_i, w); then g/2 rankings
/// (w, b1..b(8r^2), u1..u3q, the rest of B ascending) and g/2 rankings
/// (w, b(64r^2)..b(56r^2+1), u3q..u1, b(56r^2)..b1); k = g + q.
inline ElicitationInstance gen_borda_elicitation(const ThreeCoverInstance& tc) {
    validate(tc);
    reduction_detail::require_r_greater_than_q(tc);
    const auto params = BordaReductionParams::from(tc.q, tc.r());
    if (params.g < 0) throw ElectionError("3-cover: borda reduction needs 8r - 4q - 4 >= 0");
    const int q = tc.q;
    const int r = tc.r();
    const int u_count = 3 * q;
    const Candidate w = u_count;
    const int b_count = static_cast<int>(params.padding_size);
    auto b = [&](int i) { return static_cast<Candidate>(u_count + i); }; // 1-based padding index

    ElicitationInstance inst;
    inst.protocol = Protocol::Borda;
    inst.m = u_count + 1 + b_count;
    inst.names = reduction_detail::universe_names(q);
    inst.names.push_back("w");
    for (int i = 1; i <= b_count; ++i) inst.names.push_back("b" + std::to_string(i));

    for (const auto& s : tc.subsets) {
        RankingBallot v;
        for (int i = 1; i <= b_count / 2; ++i) v.order.push_back(b(i));
        for (int u = 0; u < u_count; ++u)
            if (std::find(s.begin(), s.end(), u) == s.end()) v.order.push_back(u);
        for (int i = b_count / 2 + 1; i <= b_count; ++i) v.order.push_back(b(i));
        std::array<int, 3> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        for (int u : sorted) v.order.push_back(u);
        v.order.push_back(w);
        inst.predicted.emplace_back(std::move(v));
    }
    const int head = 8 * r * r;
    RankingBallot forward{{w}};
    for (int i = 1; i <= head; ++i) forward.order.push_back(b(i));
    for (int u = 0; u < u_count; ++u) forward.order.push_back(u);
    for (int i = head + 1; i <= b_count; ++i) forward.order.push_back(b(i));
    RankingBallot backward{{w}};
    for (int i = b_count; i > b_count - head; --i) backward.order.push_back(b(i));
    for (int u = u_count - 1; u >= 0; --u) backward.order.push_back(u);
    for (int i = b_count - head; i >= 1; --i) backward.order.push_back(b(i));
    for (std::int64_t i = 0; i < params.g / 2; ++i) inst.predicted.emplace_back(forward);
    for (std::int64_t i = 0; i < params.g / 2; ++i) inst.predicted.emplace_back(backward);
    inst.k = static_cast<int>(params.k);
    inst.tagged_candidate = w;
    return inst;
}

struct StvNotDoneInstance {
    PartialProfile profile; ///< t = 1
    Candidate h = 0;
};

/// Adds candidate h (highest index). Every vote gets h appended last, except
/// the first vote ranking c first, which gets h right behind c. Then |S|
/// votes ranking h first, the rest ascending. One vote stays unknown.
inline StvNotDoneInstance gen_stv_not_done(const EPInstance& ep) {
    validate(ep);
    StvNotDoneInstance out;
    const Candidate h = ep.m;
    out.h = h;
    auto& p = out.profile;
    p.protocol = Protocol::STV;
    p.m = ep.m + 1;
    p.names = ep.names;
    if (!p.names.empty()) {
        std::string name = "h";
        while (std::find(p.names.begin(), p.names.end(), name) != p.names.end()) name += "'";
        p.names.push_back(name);
    }
    bool inserted = false;
    for (const Ballot& vote : ep.votes) {
        RankingBallot r = std::get<RankingBallot>(vote);
        if (!inserted && r.order.front() == ep.c) {
            r.order.insert(r.order.begin() + 1, h);
            inserted = true;
        } else {
            r.order.push_back(h);
        }
        p.known.emplace_back(std::move(r));
    }
    RankingBallot h_first{{h}};
    for (int c = 0; c < ep.m; ++c) h_first.order.push_back(c);
    for (std::size_t i = 0; i < ep.votes.size(); ++i) p.known.emplace_back(h_first);
    p.unknown_count = 1;
    return out;
}

/// Whether q of the subsets cover the universe (equivalently, q pairwise
/// disjoint subsets exist).
inline bool solve_3cover(const ThreeCoverInstance& tc, std::uint64_t budget = kDefaultSearchBudget) {
    validate(tc);
    if (tc.q == 0) return true;
    if (tc.r() < tc.q) return false;
    // C(r, q) bounds the search.
    unsigned __int128 combos = 1;
    for (int i = 1; i <= tc.q; ++i) combos = combos * static_cast<unsigned>(tc.r() - tc.q + i) / static_cast<unsigned>(i);
    termination_detail::check_budget(combos > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(combos), budget,
                                     "3-cover search");
    std::vector<bool> covered(static_cast<std::size_t>(tc.universe_size()), false);
    auto search = [&](auto&& self, int from, int left) -> bool {
        if (left == 0) return true;
        for (int i = from; i <= tc.r() - left; ++i) {
            const auto& s = tc.subsets[static_cast<std::size_t>(i)];
            if (covered[static_cast<std::size_t>(s[0])] || covered[static_cast<std::size_t>(s[1])] ||
                covered[static_cast<std::size_t>(s[2])])
                continue;
            for (int e : s) covered[static_cast<std::size_t>(e)] = true;
            bool found = self(self, i + 1, left - 1);
            for (int e : s) covered[static_cast<std::size_t>(e)] = false;
            if (found) return true;
        }
        return false;
    };
    return search(search, 0, tc.q);
}

/// Whether some last ranking makes c the STV winner.
inline bool solve_effective_preference(const EPInstance& ep, std::uint64_t budget = kDefaultSearchBudget) {
    validate_ballots(Protocol::STV, ep.m, ep.votes);
    if (ep.c < 0 || ep.c >= ep.m) throw ElectionError("effective-preference target out of range");
    std::uint64_t count = 1;
    for (int i = 2; i <= ep.m; ++i) count = termination_detail::saturating_mul(count, static_cast<std::uint64_t>(i));
    termination_detail::check_budget(count, budget, "effective-preference search");
    std::vector<Ballot> all = ep.votes;
    all.emplace_back(index_order_ranking(ep.m));
    auto& last = std::get<RankingBallot>(all.back()).order;
    do {
        if (stv_run(all, ep.m).tiebreak_winner == ep.c) return true;
    } while (std::next_permutation(last.begin(), last.end()));
    return false;
}

// ---------------------------------------------------------------------------
// Text formats: "universe: 3q" then "subset: i j k" (1-based elements); the
// effective-preference format is an STV election file plus "target: <name>".

inline ThreeCoverInstance parse_three_cover(std::string_view text) {
    auto lines = io_detail::tokenize(text);
    if (lines.empty() || lines[0].key != "universe") throw ParseError(1, "first line must be 'universe: <3q>'");
    auto size = io_detail::single_int(lines[0]);
    if (size < 0 || size % 3 != 0) throw ParseError(lines[0].number, "universe size must be a multiple of 3");
    ThreeCoverInstance tc;
    tc.q = static_cast<int>(size / 3);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.key != "subset" || line.values.size() != 3)
            throw ParseError(line.number, "expected 'subset: i j k'");
        std::array<int, 3> s{};
        for (std::size_t j = 0; j < 3; ++j) {
            auto e = io_detail::parse_int(line, line.values[j]);
            if (e < 1 || e > size) throw ParseError(line.number, "subset element out of range 1.." + std::to_string(size));
            s[j] = static_cast<int>(e - 1);
        }
        if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
            throw ParseError(line.number, "subset elements must be distinct");
        tc.subsets.push_back(s);
    }
    return tc;
}

inline std::string serialize_three_cover(const ThreeCoverInstance& tc) {
    std::ostringstream os;
    os << "universe: " << tc.universe_size() << '\n';
    for (const auto& s : tc.subsets) os << "subset: " << s[0] + 1 << ' ' << s[1] + 1 << ' ' << s[2] + 1 << '\n';
    return os.str();
}

inline EPInstance parse_ep_instance(std::string_view text) {
    auto parsed = io_detail::parse(text, true);
    if (parsed.profile.protocol != Protocol::STV) throw ParseError(1, "effective-preference input must be an STV election");
    if (parsed.profile.unknown_count != 0) throw ParseError(1, "effective-preference input has exactly one implicit unknown vote");
    return EPInstance{parsed.profile.m, parsed.profile.names, parsed.profile.known, *parsed.target};
}

inline std::string serialize_ep_instance(const EPInstance& ep) {
    PartialProfile p{Protocol::STV, ep.m, ep.names, ep.votes, 0};
    return serialize_election(p) + "target: " + candidate_name(ep.names, ep.c) + '\n';
}

} // namespace voteelicit

#endif // VOTEELICIT_REDUCTIONS_HPP
