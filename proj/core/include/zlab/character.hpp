// character.hpp
// The real character attached to a negative squarefree radicand d:
//
//   chi(n) = 0            for n even
//   chi(n) = (d / n)      for n odd (Jacobi symbol)
//
// taken modulo q = 4|d|.  Also hosts a small value-table character type used
// to check the q = q1*q2 splitting identity for imprimitive sums.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zlab {

class FactorTable;

class QuadraticCharacter {
public:
    std::int64_t d() const { return d_; }
    std::uint64_t modulus() const { return q_; }
    bool principal() const { return false; }
    bool memoized() const { return !memo_.empty(); }

    int operator()(std::uint64_t n) const;

private:
    friend QuadraticCharacter make_character(std::int64_t d, bool memoize);
    friend QuadraticCharacter make_character(std::int64_t d, const FactorTable& table, bool memoize);

    QuadraticCharacter(std::int64_t d, bool memoize);

    std::int64_t d_;
    std::uint64_t q_;
    std::vector<std::int8_t> memo_;  // one period, filled eagerly when requested
};

// Largest modulus for which a period table is built.
inline constexpr std::uint64_t kMaxMemoModulus = 1'000'000;

// Throws DomainError unless d <= -1 and |d| is squarefree.  With memoize the
// full period is tabulated up front (ignored when q > kMaxMemoModulus).
QuadraticCharacter make_character(std::int64_t d, bool memoize = false);
QuadraticCharacter make_character(std::int64_t d, const FactorTable& table, bool memoize = false);

inline int chi_eval(const QuadraticCharacter& chi, std::uint64_t n) { return chi(n); }

// sum_{1 <= n <= floor(x)} chi(n).  x < 1 gives 0.
std::int64_t partial_sum(const QuadraticCharacter& chi, double x);

// Prefix sums S[k] = sum_{n <= k} chi(n) for k = 0..n_max.
std::vector<std::int64_t> prefix_sums(const QuadraticCharacter& chi, std::uint64_t n_max);

// A function on Z/qZ given by its values at residues 0..q-1.  Values must
// lie in {-1, 0, 1}; multiplicativity is not required.
class ResidueCharacter {
public:
    ResidueCharacter(std::uint64_t modulus, std::vector<int> values);

    std::uint64_t modulus() const { return values_.size(); }
    int operator()(std::uint64_t n) const { return values_[n % values_.size()]; }
    std::span<const int> values() const { return values_; }

    static ResidueCharacter principal(std::uint64_t modulus);

private:
    std::vector<int> values_;
};

struct SplitSum {
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

// lhs = sum_{n <= x} psi1(n) psi2(n)
// rhs = sum_{a <= q1, (a, q1) = 1} psi1(a) * sum_{n <= x, n = a mod q1} psi2(n)
// The two agree whenever psi1 vanishes off the units mod q1, which holds
// for every genuine character.  Throws DomainError if gcd(q1, q2) > 1.
SplitSum split_sum_check(const ResidueCharacter& psi1, const ResidueCharacter& psi2, double x);

}  // namespace zlab
