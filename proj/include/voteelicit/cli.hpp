#ifndef VOTEELICIT_CLI_HPP
#define VOTEELICIT_CLI_HPP

// Command-line front end. Exit codes: 0 success, 2 input error, 3 search
// budget exceeded.

#include "voteelicit/core.hpp"
#include "voteelicit/election_io.hpp"
#include "voteelicit/elicit.hpp"
#include "voteelicit/reductions.hpp"
#include "voteelicit/strategy.hpp"
#include "voteelicit/termination.hpp"
#include "voteelicit/trees.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace voteelicit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;

// ---------------------------------------------------------------------------
// Query-savings experiment

struct SavingsStats {
    std::string policy;
    double mean = 0;
    int min = 0;
    int max = 0;
    double savings = 0; ///< n - mean
};

struct SavingsReport {
    Protocol protocol = Protocol::Plurality;
    int n = 0;
    int m = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<SavingsStats> policies;
};

inline const std::vector<std::string>& savings_policy_names() {
    static const std::vector<std::string> names{"fixed", "predicted-winner-first", "round-robin", "random"};
    return names;
}

/// Seeded profile with each ballot drawn uniformly from the vote space.
inline std::vector<Ballot> random_profile(Protocol protocol, int m, int n, std::mt19937_64& rng) {
    auto space = vote_space(protocol, m);
    std::vector<Ballot> out;
    for (int v = 0; v < n; ++v) out.push_back(space[rng() % space.size()]);
    return out;
}

inline CoarsePolicy named_policy(const std::string& name, Protocol protocol, int m, std::span<const Ballot> predicted,
                                 std::uint64_t seed) {
    const int n = static_cast<int>(predicted.size());
    if (name == "fixed") return fixed_order_policy(n);
    if (name == "predicted-winner-first") return predicted_winner_first_policy(protocol, m, predicted);
    if (name == "round-robin") return round_robin_policy(protocol, m, predicted);
    if (name == "random") return random_policy(n, seed);
    throw ElectionError("unknown policy '" + name + "'");
}

/// Random profiles, each elicited coarsely by every policy with the predicted
/// profile equal to the true one.
inline SavingsReport experiment_savings(Protocol protocol, int n, int m, int trials, std::uint64_t seed,
                                        std::uint64_t budget = kDefaultSearchBudget) {
    if (n < 1 || m < 1 || trials < 1) throw ElectionError("n, m and trials must be positive");
    SavingsReport report{protocol, n, m, trials, seed, {}};
    const auto& names = savings_policy_names();
    std::vector<long long> sum(names.size(), 0);
    std::vector<int> lo(names.size(), std::numeric_limits<int>::max()), hi(names.size(), 0);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        auto profile = random_profile(protocol, m, n, rng);
        std::uint64_t policy_seed = rng();
        for (std::size_t p = 0; p < names.size(); ++p) {
            auto policy = named_policy(names[p], protocol, m, profile, policy_seed);
            int q = simulate_coarse(policy, protocol, m, profile, StopRule::TiebreakWinner, budget).queries_used;
            sum[p] += q;
            lo[p] = std::min(lo[p], q);
            hi[p] = std::max(hi[p], q);
        }
    }
    for (std::size_t p = 0; p < names.size(); ++p) {
        double mean = static_cast<double>(sum[p]) / trials;
        report.policies.push_back(SavingsStats{names[p], mean, lo[p], hi[p], n - mean});
    }
    return report;
}

// ---------------------------------------------------------------------------

namespace cli_detail {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline Candidate lookup_candidate(const PartialProfile& p, const std::string& name) {
    for (int c = 0; c < p.m; ++c)
        if (candidate_name(p.names, c) == name) return c;
    throw InputError("unknown candidate '" + name + "'");
}

inline nlohmann::json names_json(std::span<const Candidate> set, std::span<const std::string> names) {
    auto j = nlohmann::json::array();
    for (Candidate c : set) j.push_back(candidate_name(names, c));
    return j;
}

inline std::string join(std::span<const int> xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
    return s;
}

inline std::string format_fixed(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << x;
    return os.str();
}

inline ElicitationInstance instance_of(const PartialProfile& p, int k) {
    if (p.unknown_count != 0) throw InputError("elicitation input must list every predicted ballot (no 'unknown:')");
    ElicitationInstance inst{p.protocol, p.m, p.names, p.known, k, std::nullopt};
    validate(inst);
    return inst;
}

inline std::string describe_deviation(const VotingGame& g, const Deviation& d) {
    const auto& agent = g.agents[static_cast<std::size_t>(d.agent)];
    std::string s;
    for (std::size_t i = 0; i < d.changes.size(); ++i) {
        const auto& [obs, ballot] = d.changes[i];
        if (i) s += "; ";
        if (obs.kind == Observation::Kind::Queries) {
            Candidate asked = obs.queries.back();
            bool yes = std::get<ApprovalBallot>(ballot).approves(asked);
            s += agent + (yes ? " approves " : " does not approve ") + candidate_name(g.candidates, asked) + " " +
                 describe(obs, agent, g.candidates);
        } else {
            s += agent + " approves " + format_ballot(ballot, g.candidates) + " " + describe(obs, agent, g.candidates);
        }
    }
    return s;
}

struct FractionRow {
    std::string label;
    Rational value;
};

/// The comparisons quoted for the two example games, evaluated under full
/// elicitation.
inline std::vector<FractionRow> fraction_table(const std::string& game_name) {
    std::vector<FractionRow> rows;
    if (game_name == "theorem7") {
        auto g = with_mechanism(theorem7_game(), FullMechanism{});
        auto truthful = truthful_profile(g);
        auto lie = truthful;
        lie[2].by_type[0] = approval({0, 1});
        rows.push_back({"k approves {a,b} | i=c-only, j=b-and-c", expected_utility(g, lie, 2, 0, {{0, 0}, {1, 1}})});
        rows.push_back({"k approves {a,b} | i=a-only, j=b-and-c", expected_utility(g, lie, 2, 0, {{0, 1}, {1, 1}})});
        rows.push_back({"k approves {a,b} | j=b-and-c", expected_utility(g, lie, 2, 0, {{1, 1}})});
        rows.push_back({"k approves {a} | j=b-and-c", expected_utility(g, truthful, 2, 0, {{1, 1}})});
    } else {
        auto g = with_mechanism(theorem9_game(), FullMechanism{});
        auto truthful = truthful_profile(g);
        auto lie = truthful;
        lie[1].by_type[0] = approval({0});
        rows.push_back({"j approves {a,b} | i=b-and-c", expected_utility(g, truthful, 1, 0, {{0, 0}})});
        rows.push_back({"j approves {a} | i=b-and-c", expected_utility(g, lie, 1, 0, {{0, 0}})});
        rows.push_back({"j approves {a,b} | i=a-and-b", expected_utility(g, truthful, 1, 0, {{0, 1}})});
        rows.push_back({"j approves {a} | i=a-and-b", expected_utility(g, lie, 1, 0, {{0, 1}})});
        rows.push_back({"j approves {a,b}", expected_utility(g, truthful, 1, 0)});
        rows.push_back({"j approves {a}", expected_utility(g, lie, 1, 0)});
    }
    return rows;
}

class Runner {
public:
    Runner(std::ostream& out) : out_(out) {}

    bool json = false;
    std::uint64_t budget = kDefaultSearchBudget;

    void winner_cmd(const std::string& file) {
        auto p = parse_election(read_file(file));
        auto o = winner(p);
        if (json) {
            nlohmann::json j{{"winner", candidate_name(p.names, o.tiebreak_winner)},
                             {"winner_set", names_json(o.winner_set, p.names)}};
            if (o.scores) {
                nlohmann::json s = nlohmann::json::object();
                for (int c = 0; c < p.m; ++c) s[candidate_name(p.names, c)] = o.scores->scores[static_cast<std::size_t>(c)];
                j["scores"] = s;
            }
            if (o.stv_trace) {
                auto rounds = nlohmann::json::array();
                for (const auto& r : o.stv_trace->rounds)
                    rounds.push_back({{"eliminated", candidate_name(p.names, r.eliminated)}, {"scores", r.scores}});
                j["stv_rounds"] = rounds;
            }
            out_ << j.dump(2) << '\n';
            return;
        }
        out_ << "winner: " << candidate_name(p.names, o.tiebreak_winner)
             << " (set: " << format_candidate_set(o.winner_set, p.names) << ")\n";
        if (o.scores) {
            out_ << "scores:";
            for (int c = 0; c < p.m; ++c)
                out_ << ' ' << candidate_name(p.names, c) << '=' << o.scores->scores[static_cast<std::size_t>(c)];
            out_ << '\n';
        }
        if (o.stv_trace)
            for (std::size_t i = 0; i < o.stv_trace->rounds.size(); ++i)
                out_ << "round " << i + 1 << ": eliminated "
                     << candidate_name(p.names, o.stv_trace->rounds[i].eliminated) << '\n';
    }

    void decided_cmd(const std::string& file) {
        auto p = parse_election(read_file(file));
        auto d = decided(p, budget);
        if (json) {
            out_ << nlohmann::json{{"decided", d.has_value()},
                                   {"winner", d ? nlohmann::json(candidate_name(p.names, *d)) : nlohmann::json()}}
                        .dump(2)
                 << '\n';
            return;
        }
        if (d) out_ << "decided: " << candidate_name(p.names, *d) << '\n';
        else out_ << "decided: no\n";
    }

    void prevent_cmd(const std::string& file, const std::string& h_name, bool oracle) {
        auto p = parse_election(read_file(file));
        Candidate h = lookup_candidate(p, h_name);
        auto r = oracle ? brute_force_prevent(p, h, budget) : can_prevent_win(p, h, budget);
        if (json) {
            nlohmann::json j{{"target", h_name}, {"preventable", r.preventable}};
            if (r.challenger) j["challenger"] = candidate_name(p.names, *r.challenger);
            if (r.witness) {
                auto w = nlohmann::json::array();
                for (const auto& b : *r.witness) w.push_back(format_ballot(b, p.names));
                j["witness"] = w;
            }
            out_ << j.dump(2) << '\n';
            return;
        }
        out_ << "preventable: " << (r.preventable ? "true" : "false") << '\n';
        if (r.challenger) out_ << "challenger: " << candidate_name(p.names, *r.challenger) << '\n';
        if (r.witness) {
            out_ << "witness:";
            for (const auto& b : *r.witness) out_ << ' ' << format_ballot(b, p.names);
            out_ << '\n';
        }
    }

    void min_elicit_cmd(const std::string& file, int k, bool oracle) {
        auto inst = instance_of(parse_election(read_file(file)), k);
        auto s = oracle ? exhaustive_min_deciding_subset(inst, budget) : min_deciding_subset(inst, budget);
        if (json) {
            nlohmann::json j{{"k", k}, {"found", s.has_value()}};
            if (s) j["voters"] = *s;
            out_ << j.dump(2) << '\n';
            return;
        }
        if (!s) out_ << "no deciding subset of size <= " << k << '\n';
        else out_ << "deciding subset of size " << s->size() << ": voters " << join(*s) << '\n';
    }

    void policy_plurality_cmd(const std::string& file) {
        auto p = parse_election(read_file(file));
        auto inst = instance_of(p, p.n());
        auto e = plurality_elicit_order(inst);
        if (json) {
            out_ << nlohmann::json{{"order", e.order}, {"stop_index", e.stop_index}}.dump(2) << '\n';
            return;
        }
        out_ << "order: " << join(e.order) << '\n' << "stop index: " << e.stop_index << '\n';
    }

    void simulate_cmd(const std::string& file, const std::string& true_file, const std::string& policy_name,
                      std::uint64_t seed) {
        auto predicted = parse_election(read_file(file));
        auto truth = true_file.empty() ? predicted : parse_election(read_file(true_file));
        if (predicted.unknown_count || truth.unknown_count) throw InputError("simulation needs complete profiles");
        if (truth.protocol != predicted.protocol || truth.m != predicted.m || truth.n() != predicted.n())
            throw InputError("true and predicted profiles disagree on protocol, candidates or voter count");
        ElicitationTranscript tr;
        if (policy_name == "fine-fixed")
            tr = simulate_fine(fixed_order_fine_policy(truth.protocol, truth.m, truth.n()), truth.protocol, truth.m,
                               truth.known);
        else
            tr = simulate_coarse(named_policy(policy_name, predicted.protocol, predicted.m, predicted.known, seed),
                                 truth.protocol, truth.m, truth.known, StopRule::TiebreakWinner, budget);
        std::vector<std::string> steps;
        for (const auto& st : tr.steps) {
            if (const auto* c = std::get_if<CoarseStep>(&st)) {
                steps.push_back("voter " + std::to_string(c->voter) + ": " + format_ballot(c->ballot, truth.names));
            } else {
                const auto& f = std::get<FineStep>(st);
                std::string q = "voter " + std::to_string(f.query.voter) + ": ";
                if (f.query.kind == FineQuery::Kind::ApproveCandidate)
                    q += "approves " + candidate_name(truth.names, f.query.candidate) + "? " +
                         (f.answer.approved ? "yes" : "no");
                else q += "next preferred? " + candidate_name(truth.names, f.answer.reported);
                steps.push_back(q);
            }
        }
        if (json) {
            out_ << nlohmann::json{{"policy", policy_name},
                                   {"queries", tr.queries_used},
                                   {"n", truth.n()},
                                   {"steps", steps},
                                   {"winner", candidate_name(truth.names, tr.outcome.tiebreak_winner)},
                                   {"winner_set", names_json(tr.outcome.winner_set, truth.names)}}
                        .dump(2)
                 << '\n';
            return;
        }
        out_ << "policy: " << policy_name << '\n' << "queries: " << tr.queries_used << " of " << truth.n() << '\n';
        for (const auto& s : steps) out_ << "  " << s << '\n';
        out_ << "winner: " << candidate_name(truth.names, tr.outcome.tiebreak_winner)
             << " (set: " << format_candidate_set(tr.outcome.winner_set, truth.names) << ")\n";
    }

    void generator_cmd(const std::string& kind, const std::string& file) {
        auto text = read_file(file);
        if (kind == "stv-ep") {
            auto inst = gen_stv_not_done(parse_ep_instance(text));
            out_ << "# target: " << candidate_name(inst.profile.names, inst.h) << '\n'
                 << serialize_election(inst.profile);
            return;
        }
        auto tc = parse_three_cover(text);
        auto inst = kind == "approval" ? gen_approval_elicitation(tc) : gen_borda_elicitation(tc);
        out_ << "# k: " << inst.k << '\n' << serialize_election(inst.as_profile());
    }

    void verify_bne_cmd(const std::string& game_name, const std::string& mechanism) {
        if (game_name != "theorem7" && game_name != "theorem9") throw InputError("unknown game '" + game_name + "'");
        VotingGame g = game_name == "theorem7" ? theorem7_game() : theorem9_game();
        if (mechanism == "full") g = with_mechanism(std::move(g), FullMechanism{});
        else if (mechanism == "coarse-position") {
            if (game_name != "theorem7") throw InputError("coarse-position is defined for theorem7 only");
        } else if (mechanism == "fine") {
            if (game_name != "theorem9") throw InputError("fine is defined for theorem9 only");
        } else throw InputError("unknown mechanism '" + mechanism + "'");

        auto truthful = truthful_profile(g);
        auto rows = fraction_table(game_name);
        auto r = is_bne(g, truthful, budget);
        if (json) {
            nlohmann::json j{{"game", game_name}, {"mechanism", mechanism}, {"bne", r.is_bne}};
            auto t = nlohmann::json::array();
            for (const auto& row : rows) t.push_back({{"case", row.label}, {"expected_utility", format_rational(row.value)}});
            j["fractions"] = t;
            if (r.counterexample) {
                const auto& d = *r.counterexample;
                j["deviation"] = {{"agent", g.agents[static_cast<std::size_t>(d.agent)]},
                                  {"type", g.type_space[static_cast<std::size_t>(d.agent)][static_cast<std::size_t>(d.type)].label},
                                  {"description", describe_deviation(g, d)},
                                  {"baseline", format_rational(d.baseline)},
                                  {"deviated", format_rational(d.deviated)},
                                  {"gain", format_rational(d.gain())}};
            }
            out_ << j.dump(2) << '\n';
            return;
        }
        out_ << "game: " << game_name << '\n' << "mechanism: " << mechanism << '\n';
        out_ << "expected utilities under full elicitation:\n";
        for (const auto& row : rows) out_ << "  " << row.label << ": " << format_rational(row.value) << '\n';
        out_ << "BNE: " << (r.is_bne ? "true" : "false") << '\n';
        if (r.counterexample) {
            const auto& d = *r.counterexample;
            out_ << "deviation: " << describe_deviation(g, d) << '\n'
                 << "utility: " << format_rational(d.baseline) << " -> " << format_rational(d.deviated) << " (gain "
                 << format_rational(d.gain()) << ")\n";
        }
    }

    void nondivulging_cmd(const std::string& policy, const std::string& protocol_name_arg, int m, int n,
                          std::uint64_t seed) {
        FineTreeNode tree;
        if (policy == "theorem9") {
            tree = materialize_fine_tree(theorem9_fine_policy(), Protocol::Approval, 3, 2);
        } else {
            auto protocol = protocol_from_name(protocol_name_arg);
            if (!protocol) throw InputError("unknown protocol '" + protocol_name_arg + "'");
            FinePolicy fp;
            if (policy == "fixed-order") fp = fixed_order_fine_policy(*protocol, m, n);
            else if (policy == "random-fixed-order") fp = random_fixed_order_fine_policy(*protocol, m, n, seed);
            else throw InputError("unknown fine policy '" + policy + "'");
            tree = materialize_fine_tree(fp, *protocol, m, n, StopRule::WinnerSet, budget);
        }
        bool ok = is_nondivulging(tree, budget);
        if (json) out_ << nlohmann::json{{"policy", policy}, {"nondivulging", ok}}.dump(2) << '\n';
        else out_ << "nondivulging: " << (ok ? "true" : "false") << '\n';
    }

    void oracle_cmd(const std::string& problem, const std::string& file, const std::string& h, int k) {
        if (problem == "prevent") return prevent_cmd(file, h, true);
        if (problem == "min-elicit") return min_elicit_cmd(file, k, true);
        if (problem == "3cover") {
            bool yes = solve_3cover(parse_three_cover(read_file(file)), budget);
            if (json) out_ << nlohmann::json{{"cover", yes}}.dump(2) << '\n';
            else out_ << "cover: " << (yes ? "true" : "false") << '\n';
            return;
        }
        if (problem == "effective-preference") {
            bool yes = solve_effective_preference(parse_ep_instance(read_file(file)), budget);
            if (json) out_ << nlohmann::json{{"effective", yes}}.dump(2) << '\n';
            else out_ << "effective: " << (yes ? "true" : "false") << '\n';
            return;
        }
        throw InputError("unknown oracle problem '" + problem + "'");
    }

    void savings_cmd(const std::string& protocol_name_arg, int n, int m, int trials, std::uint64_t seed) {
        auto protocol = protocol_from_name(protocol_name_arg);
        if (!protocol) throw InputError("unknown protocol '" + protocol_name_arg + "'");
        auto rep = experiment_savings(*protocol, n, m, trials, seed, budget);
        if (json) {
            auto ps = nlohmann::json::array();
            for (const auto& s : rep.policies)
                ps.push_back({{"policy", s.policy}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"savings", s.savings}});
            out_ << nlohmann::json{{"protocol", protocol_name(rep.protocol)}, {"n", n},       {"m", m},
                                   {"trials", trials},                       {"seed", seed}, {"policies", ps}}
                        .dump(2)
                 << '\n';
            return;
        }
        out_ << "protocol: " << protocol_name(rep.protocol) << "  n: " << n << "  m: " << m << "  trials: " << trials
             << "  seed: " << seed << '\n';
        for (const auto& s : rep.policies)
            out_ << s.policy << ": mean " << format_fixed(s.mean) << "  min " << s.min << "  max " << s.max
                 << "  savings " << format_fixed(s.savings) << '\n';
    }

private:
    std::ostream& out_;
};

} // namespace cli_detail

/// Runs one command. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Preference elicitation and voting tools", "voteelicit"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    cli_detail::Runner runner(out);
    app.add_flag("--json", runner.json, "structured output");
    app.add_option("--budget", runner.budget, "cap on brute-force work");

    std::string file, true_file, h, policy = "predicted-winner-first", game, mechanism, problem,
                                     protocol = "plurality";
    int k = 0, n = 15, m = 3, trials = 1000;
    std::uint64_t seed = 1;

    auto* c_winner = app.add_subcommand("winner", "winner and scores of a complete election");
    c_winner->add_option("--file", file)->required();
    auto* c_decided = app.add_subcommand("decided", "winner fixed regardless of the unknown votes, if any");
    c_decided->add_option("--file", file)->required();
    auto* c_prevent = app.add_subcommand("prevent", "can the unknown votes stop h from winning");
    c_prevent->add_option("--file", file)->required();
    c_prevent->add_option("--h", h)->required();
    auto* c_min = app.add_subcommand("min-elicit", "smallest deciding subset of at most k predicted votes");
    c_min->add_option("--file", file)->required();
    c_min->add_option("--k", k)->required();
    auto* c_pp = app.add_subcommand("policy-plurality", "query order and stop index for a Plurality prediction");
    c_pp->add_option("--file", file)->required();
    auto* c_sim = app.add_subcommand("simulate", "run an elicitation policy against a true profile");
    c_sim->add_option("--file", file, "predicted profile")->required();
    c_sim->add_option("--true-file", true_file, "true profile (defaults to the prediction)");
    c_sim->add_option("--policy", policy, "fixed | predicted-winner-first | round-robin | random | fine-fixed");
    c_sim->add_option("--seed", seed);
    auto* c_ga = app.add_subcommand("gen-3cover-approval", "Approval elicitation instance from a 3-cover instance");
    c_ga->add_option("--file", file)->required();
    auto* c_gb = app.add_subcommand("gen-3cover-borda", "Borda elicitation instance from a 3-cover instance");
    c_gb->add_option("--file", file)->required();
    auto* c_gs = app.add_subcommand("gen-stv-ep", "STV termination instance from an effective-preference instance");
    c_gs->add_option("--file", file)->required();
    auto* c_bne = app.add_subcommand("verify-bne", "check truth-telling in an example game");
    c_bne->add_option("--game", game, "theorem7 | theorem9")->required();
    c_bne->add_option("--mechanism", mechanism, "full | coarse-position | fine")->required();
    auto* c_nd = app.add_subcommand("check-nondivulging", "test whether a fine policy is nondivulging");
    c_nd->add_option("--policy", policy, "theorem9 | fixed-order | random-fixed-order")->required();
    c_nd->add_option("--protocol", protocol);
    c_nd->add_option("--m", m);
    c_nd->add_option("--n", n);
    c_nd->add_option("--seed", seed);
    auto* c_or = app.add_subcommand("oracle", "exhaustive reference solvers");
    c_or->add_option("--problem", problem, "prevent | min-elicit | 3cover | effective-preference")->required();
    c_or->add_option("--file", file)->required();
    c_or->add_option("--h", h);
    c_or->add_option("--k", k);
    auto* c_sav = app.add_subcommand("experiment-savings", "queries saved by each policy on random profiles");
    c_sav->add_option("--protocol", protocol);
    c_sav->add_option("--n", n);
    c_sav->add_option("--m", m);
    c_sav->add_option("--trials", trials);
    c_sav->add_option("--seed", seed);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (c_winner->parsed()) runner.winner_cmd(file);
        else if (c_decided->parsed()) runner.decided_cmd(file);
        else if (c_prevent->parsed()) runner.prevent_cmd(file, h, false);
        else if (c_min->parsed()) runner.min_elicit_cmd(file, k, false);
        else if (c_pp->parsed()) runner.policy_plurality_cmd(file);
        else if (c_sim->parsed()) runner.simulate_cmd(file, true_file, policy, seed);
        else if (c_ga->parsed()) runner.generator_cmd("approval", file);
        else if (c_gb->parsed()) runner.generator_cmd("borda", file);
        else if (c_gs->parsed()) runner.generator_cmd("stv-ep", file);
        else if (c_bne->parsed()) runner.verify_bne_cmd(game, mechanism);
        else if (c_nd->parsed()) runner.nondivulging_cmd(policy, protocol, m, n, seed);
        else if (c_or->parsed()) {
            if (problem == "prevent" && h.empty()) throw cli_detail::InputError("oracle prevent needs --h");
            runner.oracle_cmd(problem, file, h, k);
        } else if (c_sav->parsed()) runner.savings_cmd(protocol, n, m, trials, seed);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ElectionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const cli_detail::InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}

} // namespace voteelicit

#endif // VOTEELICIT_CLI_HPP
