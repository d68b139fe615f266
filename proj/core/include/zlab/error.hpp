// error.hpp
// Exception types shared by every zlab module.
//
// UsageError  - the caller passed arguments outside an operation's contract
//               (n = 0, lo > hi, c >= c', ...).  The CLI maps it to exit 2.
// DomainError - the arguments are well-formed but the mathematical object is
//               undefined (non-squarefree radicand, inadmissible Burgess r,
//               non-coprime moduli, ...).  Also exit 2 at the CLI.

#pragma once

#include <stdexcept>
#include <string>

namespace zlab {

class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace zlab
