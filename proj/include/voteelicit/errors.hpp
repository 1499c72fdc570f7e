#ifndef VOTEELICIT_ERRORS_HPP
#define VOTEELICIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace voteelicit {

/// Malformed input: bad ballot, protocol/ballot-kind mismatch, bad parameter.
class ElectionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Syntax error in one of the text formats; carries the 1-based line number.
class ParseError : public ElectionError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ElectionError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An exhaustive search would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace voteelicit

#endif // VOTEELICIT_ERRORS_HPP
