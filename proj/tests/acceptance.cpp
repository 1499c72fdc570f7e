// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference answers come from small brute-force oracles below.

#include "voteelicit/cli.hpp"
#include "voteelicit/voteelicit.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace voteelicit;
using R = Rational;

namespace {

// Visits every multiset of size t drawn from [0, v), as a nondecreasing list.
void multisets(int v, int t, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == t) {
            visit(pick);
            return;
        }
        for (int x = from; x < v; ++x) {
            pick.push_back(x);
            self(self, x);
            pick.pop_back();
        }
    };
    rec(rec, 0);
}

// Visits every length-t tuple over [0, v).
void tuples(int v, int t, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> pick(static_cast<std::size_t>(t), 0);
    while (true) {
        visit(pick);
        int i = 0;
        while (i < t && ++pick[static_cast<std::size_t>(i)] == v) pick[static_cast<std::size_t>(i++)] = 0;
        if (i == t) return;
    }
}

std::vector<Ballot> pick_ballots(const std::vector<Ballot>& space, const std::vector<int>& pick) {
    std::vector<Ballot> out;
    for (int i : pick) out.push_back(space[static_cast<std::size_t>(i)]);
    return out;
}

struct Check {
    int failures = 0;
    std::string first;
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        if (failures++ == 0) first = what;
    }
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<void(Check&)> body;
};

// ---------------------------------------------------------------------------
// 1. Example-game fractions and equilibrium verdicts.

void fractions(Check& ck) {
    constexpr Candidate a = 0, b = 1;
    constexpr int i = 0, j = 1, k = 2;
    auto g7 = theorem7_game();
    auto full7 = with_mechanism(g7, FullMechanism{});
    auto t7 = truthful_profile(g7);
    auto lie7 = t7;
    lie7[k].by_type[0] = approval({a, b});
    ck.expect(expected_utility(full7, lie7, k, 0, {{i, 0}, {j, 1}}) == R(1, 8), "1/8");
    ck.expect(expected_utility(full7, lie7, k, 0, {{i, 1}, {j, 1}}) == R(5, 8), "5/8");
    ck.expect(expected_utility(full7, lie7, k, 0, {{j, 1}}) == R(3, 8), "3/8");
    ck.expect(expected_utility(full7, t7, k, 0, {{j, 1}}) == R(1, 2), "1/2");

    auto g9 = theorem9_game();
    auto full9 = with_mechanism(g9, FullMechanism{});
    auto t9 = truthful_profile(g9);
    auto lie9 = t9;
    lie9[j].by_type[0] = approval({a});
    ck.expect(expected_utility(full9, t9, j, 0, {{i, 0}}) == R(3, 4), "3/4");
    ck.expect(expected_utility(full9, lie9, j, 0, {{i, 0}}) == R(7, 12), "7/12");
    ck.expect(expected_utility(full9, t9, j, 0, {{i, 1}}) == R(7, 8), "7/8");
    ck.expect(expected_utility(full9, t9, j, 0) == R(13, 16), "13/16");
    ck.expect(expected_utility(full9, lie9, j, 0) == R(19, 24), "19/24");

    ck.expect(is_bne(full7, t7).is_bne, "game 7 full should be a BNE");
    ck.expect(is_bne(full9, t9).is_bne, "game 9 full should be a BNE");
    auto r7 = is_bne(g7, t7);
    ck.expect(!r7.is_bne && r7.counterexample, "game 7 coarse should not be a BNE");
    if (r7.counterexample) {
        const auto& d = *r7.counterexample;
        ck.expect(d.agent == k && d.changes.size() == 1 && d.changes[0].first == Observation::at_position(3) &&
                      d.changes[0].second == approval({a, b}),
                  "game 7 deviation should be k approving {a,b} when third");
    }
    auto r9 = is_bne(g9, t9);
    ck.expect(!r9.is_bne && r9.counterexample, "game 9 fine should not be a BNE");
    if (r9.counterexample) {
        const auto& d = *r9.counterexample;
        ck.expect(d.agent == j && d.changes.size() == 1 &&
                      d.changes[0].first == Observation::after_queries({a, b}) &&
                      !std::get<ApprovalBallot>(d.changes[0].second).approves(b),
                  "game 9 deviation should be j dropping b after Q(j,a), Q(j,b)");
    }
}

// ---------------------------------------------------------------------------
// 2. Greedy prevention against exhaustive completion.

bool prevention_agrees(const PartialProfile& p, Candidate h) {
    auto greedy = can_prevent_win(p, h);
    auto brute = brute_force_prevent(p, h);
    if (greedy.preventable != brute.preventable) return false;
    if (!greedy.preventable) return true;
    // The witness must actually beat h.
    auto all = p.known;
    all.insert(all.end(), greedy.witness->begin(), greedy.witness->end());
    return static_cast<int>(greedy.witness->size()) == p.unknown_count &&
           winner(p.protocol, all, p.m).tiebreak_winner != h;
}

void greedy_exactness(Check& ck) {
    const Protocol protocols[] = {Protocol::Plurality, Protocol::Borda, Protocol::Copeland, Protocol::Maximin,
                                  Protocol::Approval};
    for (Protocol proto : protocols) {
        auto space = vote_space(proto, 3);
        for (int n = 0; n <= 4; ++n)
            for (int t = 0; t <= 2; ++t) {
                if (n + t == 0) continue;
                multisets(static_cast<int>(space.size()), n, [&](const std::vector<int>& pick) {
                    PartialProfile p{proto, 3, {}, pick_ballots(space, pick), t};
                    for (Candidate h = 0; h < 3; ++h)
                        ck.expect(prevention_agrees(p, h), std::string(protocol_name(proto)) + " grid mismatch");
                });
            }
    }
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        Protocol proto = protocols[rng() % std::size(protocols)];
        auto space = vote_space(proto, 4);
        int n = static_cast<int>(rng() % 6), t = 1 + static_cast<int>(rng() % 2);
        PartialProfile p{proto, 4, {}, {}, t};
        for (int v = 0; v < n; ++v) p.known.push_back(space[rng() % space.size()]);
        Candidate h = static_cast<Candidate>(rng() % 4);
        ck.expect(prevention_agrees(p, h), "random m=4 mismatch, trial " + std::to_string(trial));
    }
}

// ---------------------------------------------------------------------------
// 3. STV termination against effective preference.

void stv_equivalence(Check& ck) {
    std::mt19937_64 rng(77);
    int generated = 0;
    while (generated < 50) {
        int m = 2 + static_cast<int>(rng() % 3);
        int size = 1 + static_cast<int>(rng() % 5);
        auto space = vote_space(Protocol::STV, m);
        EPInstance ep{m, {}, {}, static_cast<Candidate>(rng() % m)};
        for (int v = 0; v < size; ++v) ep.votes.push_back(space[rng() % space.size()]);
        bool c_top = std::any_of(ep.votes.begin(), ep.votes.end(), [&](const Ballot& b) {
            return std::get<RankingBallot>(b).order.front() == ep.c;
        });
        if (!c_top) continue;
        ++generated;
        auto gen = gen_stv_not_done(ep);
        bool effective = solve_effective_preference(ep);
        ck.expect(effective == can_prevent_win(gen.profile, gen.h).preventable,
                  "instance " + std::to_string(generated) + ": EP and prevention disagree");
        ck.expect(effective == brute_force_prevent(gen.profile, gen.h).preventable,
                  "instance " + std::to_string(generated) + ": EP and exhaustive prevention disagree");
    }
}

// ---------------------------------------------------------------------------
// 4 and 5. Cover reductions.

// Whether some q of the subsets have a union equal to the whole universe.
bool cover_oracle(const ThreeCoverInstance& tc) {
    const int r = tc.r(), full = (1 << tc.universe_size()) - 1;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (__builtin_popcount(mask) != tc.q) continue;
        int seen = 0;
        for (int i = 0; i < r; ++i)
            if (mask >> i & 1)
                for (int e : tc.subsets[static_cast<std::size_t>(i)]) seen |= 1 << e;
        if (seen == full) return true;
    }
    return false;
}

std::vector<std::array<int, 3>> triples(int universe) {
    std::vector<std::array<int, 3>> out;
    for (int x = 0; x < universe; ++x)
        for (int y = x + 1; y < universe; ++y)
            for (int z = y + 1; z < universe; ++z) out.push_back({x, y, z});
    return out;
}

void approval_cover(Check& ck) {
    auto check = [&](const ThreeCoverInstance& tc) {
        auto inst = gen_approval_elicitation(tc);
        ck.expect(inst.k == tc.r() - tc.q + 2, "k should be r - q + 2");
        bool cover = solve_3cover(tc);
        ck.expect(cover == cover_oracle(tc), "solve_3cover disagrees with the bitmask oracle");
        ck.expect(cover == min_deciding_subset(inst).has_value(), "cover and deciding subset disagree");
    };
    for (int q = 1; q <= 2; ++q) {
        auto all = triples(3 * q);
        for (int r = q + 1; r <= 4; ++r)
            multisets(static_cast<int>(all.size()), r, [&](const std::vector<int>& pick) {
                ThreeCoverInstance tc{q, {}};
                for (int i : pick) tc.subsets.push_back(all[static_cast<std::size_t>(i)]);
                check(tc);
            });
    }
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 100; ++trial) {
        int q = 1 + static_cast<int>(rng() % 2);
        int r = q + 1 + static_cast<int>(rng() % (4 - q));
        auto all = triples(3 * q);
        ThreeCoverInstance tc{q, {}};
        for (int i = 0; i < r; ++i) tc.subsets.push_back(all[rng() % all.size()]);
        check(tc);
    }
}

void borda_cover(Check& ck) {
    auto all = triples(6);
    int instances = 0;
    for (std::size_t x = 0; x < all.size(); ++x)
        for (std::size_t y = x + 1; y < all.size(); ++y)
            for (std::size_t z = y + 1; z < all.size(); ++z) {
                ThreeCoverInstance tc{2, {all[x], all[y], all[z]}};
                auto inst = gen_borda_elicitation(tc);
                auto params = BordaReductionParams::from(2, 3);
                ++instances;
                const std::string tag = "collection " + std::to_string(instances);
                ck.expect(inst.m == 583 && inst.n() == 15, tag + ": wrong size");
                ck.expect(inst.k == params.g + 2, tag + ": k should be g + q");
                ck.expect(winner(Protocol::Borda, inst.predicted, inst.m).tiebreak_winner == inst.tagged_candidate,
                          tag + ": w does not win");
                ck.expect(cover_oracle(tc) == min_deciding_subset(inst).has_value(),
                          tag + ": cover and deciding subset disagree");
            }
}

// ---------------------------------------------------------------------------
// 6. Plurality policy against the minimum deciding subset.

// Plurality depends on first choices only, so completions range over the m
// possible tops.
std::optional<int> plurality_min_size(int m, const std::vector<Candidate>& tops) {
    const int n = static_cast<int>(tops.size());
    auto tally_winner = [&](const std::vector<int>& counts) {
        return static_cast<Candidate>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    };
    std::vector<int> full(static_cast<std::size_t>(m), 0);
    for (Candidate c : tops) ++full[static_cast<std::size_t>(c)];
    const Candidate w = tally_winner(full);
    for (int size = 0; size <= n; ++size) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != size) continue;
            std::vector<int> known(static_cast<std::size_t>(m), 0);
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1) ++known[static_cast<std::size_t>(tops[static_cast<std::size_t>(v)])];
            bool fixed = true;
            multisets(m, n - size, [&](const std::vector<int>& extra) {
                auto counts = known;
                for (int c : extra) ++counts[static_cast<std::size_t>(c)];
                if (tally_winner(counts) != w) fixed = false;
            });
            if (fixed) return size;
        }
    }
    return std::nullopt;
}

void plurality_policy(Check& ck) {
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 6; ++n)
            tuples(m, n, [&](const std::vector<int>& tops) {
                ElicitationInstance inst{Protocol::Plurality, m, {}, {}, n, {}};
                for (int top : tops) {
                    RankingBallot r{{top}};
                    for (int c = 0; c < m; ++c)
                        if (c != top) r.order.push_back(c);
                    inst.predicted.emplace_back(std::move(r));
                }
                auto e = plurality_elicit_order(inst);
                std::string tag = "m=" + std::to_string(m) + " tops=";
                for (int top : tops) tag += std::to_string(top);
                ck.expect(plurality_min_size(m, tops) == e.stop_index, tag + ": stop index is not minimal");
                std::vector<int> prefix(e.order.begin(), e.order.begin() + e.stop_index);
                auto w = winner(Protocol::Plurality, inst.predicted, m).tiebreak_winner;
                ck.expect(decided(reveal(Protocol::Plurality, m, inst.predicted, prefix)) == w,
                          tag + ": prefix does not decide");
            });
}

// ---------------------------------------------------------------------------
// 7. Nondivulging checker.

void nondivulging(Check& ck) {
    auto tree9 = materialize_fine_tree(theorem9_fine_policy(), Protocol::Approval, 3, 2);
    ck.expect(!is_nondivulging(tree9), "the example-game tree should be divulging");
    const Protocol protocols[] = {Protocol::Approval, Protocol::Plurality, Protocol::Borda, Protocol::Copeland,
                                  Protocol::Maximin};
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        Protocol p = protocols[trial % std::size(protocols)];
        int m = 2 + static_cast<int>(rng() % 2), n = 1 + static_cast<int>(rng() % 3);
        auto tree = materialize_fine_tree(random_fixed_order_fine_policy(p, m, n, rng()), p, m, n);
        ck.expect(validate_fine_tree(tree, p, m, n), "random policy tree " + std::to_string(trial) + " invalid");
        ck.expect(is_nondivulging(tree), "random policy " + std::to_string(trial) + " flagged as divulging");
    }
}

// ---------------------------------------------------------------------------
// 8. Savings with perfect suspicions.

void savings(Check& ck) {
    const int n = 15;
    auto rep = experiment_savings(Protocol::Plurality, n, 3, 1000, 2024);
    bool found = false;
    for (const auto& s : rep.policies)
        if (s.policy == "predicted-winner-first") {
            found = true;
            ck.expect(s.mean < n, "mean queries " + std::to_string(s.mean) + " is not below n");
        }
    ck.expect(found, "predicted-winner-first missing from the report");
    for (Candidate c = 0; c < 3; ++c) {
        std::vector<Ballot> unanimous(static_cast<std::size_t>(n), ranking({c, (c + 1) % 3, (c + 2) % 3}));
        auto tr = simulate_coarse(predicted_winner_first_policy(Protocol::Plurality, 3, unanimous),
                                  Protocol::Plurality, 3, unanimous);
        ck.expect(tr.queries_used == n / 2 + 1, "unanimous profile used " + std::to_string(tr.queries_used));
    }
}

// ---------------------------------------------------------------------------
// 9. Invariants on the small grid.

Ballot relabel(const Ballot& b, const std::vector<int>& perm) {
    if (const auto* r = std::get_if<RankingBallot>(&b)) {
        RankingBallot out;
        for (Candidate c : r->order) out.order.push_back(perm[static_cast<std::size_t>(c)]);
        return out;
    }
    std::vector<Candidate> approved;
    for (Candidate c : std::get<ApprovalBallot>(b).approved) approved.push_back(perm[static_cast<std::size_t>(c)]);
    return approval(approved);
}

void invariants(Check& ck) {
    for (Protocol proto : kAllProtocols)
        for (int m = 1; m <= 3; ++m) {
            auto space = vote_space(proto, m);
            const std::string name(protocol_name(proto));
            for (int n = 1; n <= 3; ++n)
                tuples(static_cast<int>(space.size()), n, [&](const std::vector<int>& pick) {
                    auto ballots = pick_ballots(space, pick);
                    auto out = winner(proto, ballots, m);

                    if (proto != Protocol::STV) {
                        auto s = score(proto, ballots, m).scores;
                        std::int64_t sum = std::accumulate(s.begin(), s.end(), std::int64_t{0});
                        std::int64_t expect = 0;
                        if (proto == Protocol::Plurality) expect = n;
                        if (proto == Protocol::Borda) expect = std::int64_t{n} * m * (m - 1) / 2;
                        if (proto == Protocol::Approval)
                            for (const auto& b : ballots)
                                expect += static_cast<std::int64_t>(std::get<ApprovalBallot>(b).approved.size());
                        if (proto != Protocol::Maximin) ck.expect(sum == expect, name + ": score sum");
                    }

                    if (uses_rankings(proto)) {
                        auto t = pairwise_tallies(ballots, m);
                        for (int x = 0; x < m; ++x)
                            for (int y = 0; y < m; ++y)
                                if (x != y) ck.expect(t(x, y) + t(y, x) == n, name + ": tally complement");
                    }

                    if (proto == Protocol::Maximin) {
                        // Lifting c one place in the first ballot.
                        auto before = score(proto, ballots, m).scores;
                        for (int p = 1; p < m; ++p) {
                            auto trial = ballots;
                            auto& o = std::get<RankingBallot>(trial[0]).order;
                            Candidate c = o[static_cast<std::size_t>(p)];
                            std::swap(o[static_cast<std::size_t>(p)], o[static_cast<std::size_t>(p - 1)]);
                            auto after = score(proto, trial, m).scores;
                            ck.expect(after[static_cast<std::size_t>(c)] >= before[static_cast<std::size_t>(c)],
                                      "Maximin: lifting lowered the score");
                            for (int x = 0; x < m; ++x)
                                if (x != c)
                                    ck.expect(after[static_cast<std::size_t>(x)] <= before[static_cast<std::size_t>(x)],
                                              "Maximin: lifting raised a rival");
                        }
                    }

                    // Voter order never matters.
                    auto reversed = ballots;
                    std::reverse(reversed.begin(), reversed.end());
                    ck.expect(winner(proto, reversed, m) == out, name + ": voter order changed the outcome");

                    // Relabeling candidates maps the winner set. STV breaks
                    // elimination ties by index, so it is exempt.
                    if (proto != Protocol::STV) {
                        std::vector<int> perm(static_cast<std::size_t>(m));
                        std::iota(perm.begin(), perm.end(), 0);
                        while (std::next_permutation(perm.begin(), perm.end())) {
                            std::vector<Ballot> moved;
                            for (const auto& b : ballots) moved.push_back(relabel(b, perm));
                            std::vector<Candidate> expect;
                            for (Candidate c : out.winner_set) expect.push_back(perm[static_cast<std::size_t>(c)]);
                            std::sort(expect.begin(), expect.end());
                            ck.expect(winner(proto, moved, m).winner_set == expect, name + ": relabeling");
                        }
                    }
                });

            // decided() against exhaustive completion.
            for (int n = 0; n <= 3; ++n)
                for (int t = 0; t <= 2; ++t) {
                    if (n + t == 0) continue;
                    multisets(static_cast<int>(space.size()), n, [&](const std::vector<int>& pick) {
                        PartialProfile p{proto, m, {}, pick_ballots(space, pick), t};
                        auto d = decided(p);
                        if (d) {
                            ck.expect(!brute_force_prevent(p, *d).preventable, name + ": decided winner can lose");
                        } else {
                            for (Candidate h = 0; h < m; ++h)
                                ck.expect(brute_force_prevent(p, h).preventable,
                                          name + ": undecided but " + std::to_string(h) + " always wins");
                        }
                    });
                }
        }
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "example-game fractions and equilibrium verdicts", 1, fractions},
        {2, "greedy prevention matches exhaustive completion", 300, greedy_exactness},
        {3, "STV termination matches effective preference", 120, stv_equivalence},
        {4, "Approval cover reduction", 120, approval_cover},
        {5, "Borda cover reduction", 300, borda_cover},
        {6, "Plurality policy stop index is minimal", 120, plurality_policy},
        {7, "nondivulging checker", 10, nondivulging},
        {8, "elicitation savings", 30, savings},
        {9, "invariant suites", 600, invariants},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Check ck;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(ck);
        } catch (const std::exception& e) {
            ck.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ck.expect(secs < c.limit_seconds, "took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
        bool ok = ck.failures == 0;
        if (!ok) ++failed;
        std::printf("%s %d %s (%.2f s)", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
        if (!ok) std::printf(": %d problem(s), first: %s", ck.failures, ck.first.c_str());
        std::printf("\n");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
