#ifndef VOTEELICIT_ELECTION_IO_HPP
#define VOTEELICIT_ELECTION_IO_HPP

// Line-oriented election file format:
//
//   protocol: <plurality|borda|copeland|maximin|stv|approval>
//   candidates: <name> <name> ...
//   ranking: <name> ... <name>        (one line per known voter)
//   approval: <name> ...              (possibly empty)
//   unknown: <t>                      (optional, last)
//
// '#' starts a comment; blank lines are ignored.

#include "voteelicit/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace voteelicit {

namespace io_detail {

struct Line {
    std::size_t number = 0;
    std::string key;
    std::vector<std::string> values;
};

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// Splits text into "key: values" lines, dropping comments and blank lines.
inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto blank = std::all_of(raw.begin(), raw.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) {
            auto colon = raw.find(':');
            if (colon == std::string_view::npos) throw ParseError(number, "expected 'key: value'");
            auto key_tokens = split_ws(raw.substr(0, colon));
            if (key_tokens.size() != 1) throw ParseError(number, "malformed key");
            lines.push_back(Line{number, key_tokens.front(), split_ws(raw.substr(colon + 1))});
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

inline long long parse_int(const Line& line, const std::string& token) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line.number, "expected an integer, got '" + token + "'");
    return v;
}

inline long long single_int(const Line& line) {
    if (line.values.size() != 1) throw ParseError(line.number, "'" + line.key + "' takes exactly one integer");
    return parse_int(line, line.values.front());
}

struct ParsedElection {
    PartialProfile profile;
    std::optional<Candidate> target;
};

inline ParsedElection parse(std::string_view text, bool allow_target) {
    auto lines = tokenize(text);
    ParsedElection out;
    PartialProfile& p = out.profile;
    if (lines.empty()) throw ParseError(1, "empty election file");
    if (lines[0].key != "protocol" || lines[0].values.size() != 1)
        throw ParseError(lines[0].number, "first line must be 'protocol: <name>'");
    auto proto = protocol_from_name(lines[0].values.front());
    if (!proto) throw ParseError(lines[0].number, "unknown protocol '" + lines[0].values.front() + "'");
    p.protocol = *proto;

    if (lines.size() < 2 || lines[1].key != "candidates")
        throw ParseError(lines.size() < 2 ? lines[0].number + 1 : lines[1].number,
                         "second line must be 'candidates: <name> ...'");
    std::unordered_map<std::string, Candidate> index;
    for (const auto& name : lines[1].values) {
        if (!index.emplace(name, static_cast<Candidate>(p.names.size())).second)
            throw ParseError(lines[1].number, "duplicate candidate name '" + name + "'");
        p.names.push_back(name);
    }
    p.m = static_cast<int>(p.names.size());
    if (p.m == 0) throw ParseError(lines[1].number, "no candidates");

    auto lookup = [&](const Line& line, const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(line.number, "unknown candidate '" + name + "'");
        return it->second;
    };

    bool seen_unknown = false;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.key == "unknown") {
            if (seen_unknown) throw ParseError(line.number, "repeated 'unknown' line");
            auto t = single_int(line);
            if (t < 0) throw ParseError(line.number, "unknown vote count must be nonnegative");
            p.unknown_count = static_cast<int>(t);
            seen_unknown = true;
            continue;
        }
        if (line.key == "target" && allow_target) {
            if (out.target || line.values.size() != 1) throw ParseError(line.number, "expected one 'target: <name>'");
            out.target = lookup(line, line.values.front());
            continue;
        }
        if (seen_unknown) throw ParseError(line.number, "'unknown' must be the final line");
        if (line.key == "ranking") {
            if (!uses_rankings(p.protocol)) throw ParseError(line.number, "ranking ballot in an approval election");
            RankingBallot b;
            for (const auto& name : line.values) b.order.push_back(lookup(line, name));
            try {
                validate_ballot(p.protocol, p.m, b);
            } catch (const ElectionError& e) {
                throw ParseError(line.number, e.what());
            }
            p.known.emplace_back(std::move(b));
        } else if (line.key == "approval") {
            if (uses_rankings(p.protocol)) throw ParseError(line.number, "approval ballot in a ranking election");
            std::vector<Candidate> approved;
            for (const auto& name : line.values) approved.push_back(lookup(line, name));
            std::sort(approved.begin(), approved.end());
            if (std::adjacent_find(approved.begin(), approved.end()) != approved.end())
                throw ParseError(line.number, "candidate approved twice");
            p.known.emplace_back(ApprovalBallot{std::move(approved)});
        } else {
            throw ParseError(line.number, "unexpected key '" + line.key + "'");
        }
    }
    if (allow_target && !out.target) throw ParseError(lines.back().number, "missing 'target: <name>' line");
    return out;
}

} // namespace io_detail

inline PartialProfile parse_election(std::string_view text) { return io_detail::parse(text, false).profile; }

inline std::string serialize_election(const PartialProfile& p) {
    validate(p);
    std::ostringstream os;
    os << "protocol: " << protocol_name(p.protocol) << '\n';
    os << "candidates:";
    for (int c = 0; c < p.m; ++c) os << ' ' << candidate_name(p.names, c);
    os << '\n';
    for (const Ballot& b : p.known) {
        if (const auto* r = std::get_if<RankingBallot>(&b)) {
            os << "ranking:";
            for (Candidate c : r->order) os << ' ' << candidate_name(p.names, c);
        } else {
            os << "approval:";
            for (Candidate c : std::get<ApprovalBallot>(b).approved) os << ' ' << candidate_name(p.names, c);
        }
        os << '\n';
    }
    if (p.unknown_count > 0) os << "unknown: " << p.unknown_count << '\n';
    return os.str();
}

/// Human-readable ballot, e.g. "a>b>c" or "{a,b}".
inline std::string format_ballot(const Ballot& b, std::span<const std::string> names) {
    std::string s;
    if (const auto* r = std::get_if<RankingBallot>(&b)) {
        for (std::size_t i = 0; i < r->order.size(); ++i) {
            if (i) s += '>';
            s += candidate_name(names, r->order[i]);
        }
        return s;
    }
    s = "{";
    const auto& a = std::get<ApprovalBallot>(b).approved;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ',';
        s += candidate_name(names, a[i]);
    }
    return s + "}";
}

inline std::string format_candidate_set(std::span<const Candidate> set, std::span<const std::string> names) {
    std::string s = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) s += ", ";
        s += candidate_name(names, set[i]);
    }
    return s + "}";
}

} // namespace voteelicit

#endif // VOTEELICIT_ELECTION_IO_HPP
