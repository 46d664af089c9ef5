#ifndef FINMOD_ERRORS_HPP
#define FINMOD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finmod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax error in a formula or data file; `pos` is a 0-based byte offset
/// into the parsed text (or line number for line-oriented files).
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
    std::size_t pos;
};

/// A search or evaluation exceeded its node-expansion budget. Distinct from
/// a negative answer: callers must not treat this as "no".
struct BudgetExceeded : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace finmod

#endif
