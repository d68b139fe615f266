#include "zlab/character.hpp"

#include <cmath>
#include <string>

#include "zlab/arith.hpp"
#include "zlab/error.hpp"

namespace zlab {

namespace {

std::uint64_t floor_count(double x) {
    if (std::isnan(x)) throw UsageError("sum bound is not a number");
    return x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
}

void check_radicand(std::int64_t d, bool squarefree) {
    if (d >= 0) throw DomainError("d must be negative, got " + std::to_string(d));
    if (!squarefree) throw DomainError("d must be squarefree, got " + std::to_string(d));
}

}  // namespace

QuadraticCharacter::QuadraticCharacter(std::int64_t d, bool memoize)
    : d_(d), q_(4 * static_cast<std::uint64_t>(-d)) {
    if (memoize && q_ <= kMaxMemoModulus) {
        memo_.resize(q_);
        for (std::uint64_t n = 0; n < q_; ++n)
            memo_[n] = static_cast<std::int8_t>((n & 1) ? jacobi(d_, static_cast<std::int64_t>(n)) : 0);
    }
}

int QuadraticCharacter::operator()(std::uint64_t n) const {
    if (!memo_.empty()) return memo_[n % q_];
    if ((n & 1) == 0) return 0;
    return jacobi(d_, static_cast<std::int64_t>(n % q_));
}

QuadraticCharacter make_character(std::int64_t d, bool memoize) {
    check_radicand(d, d < 0 && is_squarefree(static_cast<std::uint64_t>(-d)));
    return QuadraticCharacter(d, memoize);
}

QuadraticCharacter make_character(std::int64_t d, const FactorTable& table, bool memoize) {
    check_radicand(d, d < 0 && is_squarefree(static_cast<std::uint64_t>(-d), table));
    return QuadraticCharacter(d, memoize);
}

std::int64_t partial_sum(const QuadraticCharacter& chi, double x) {
    const std::uint64_t n_max = floor_count(x);
    std::int64_t s = 0;
    for (std::uint64_t n = 1; n <= n_max; n += 2) s += chi(n);
    return s;
}

std::vector<std::int64_t> prefix_sums(const QuadraticCharacter& chi, std::uint64_t n_max) {
    std::vector<std::int64_t> s(n_max + 1, 0);
    for (std::uint64_t n = 1; n <= n_max; ++n) s[n] = s[n - 1] + chi(n);
    return s;
}

ResidueCharacter::ResidueCharacter(std::uint64_t modulus, std::vector<int> values)
    : values_(std::move(values)) {
    if (modulus == 0) throw UsageError("character modulus must be positive");
    if (values_.size() != modulus)
        throw UsageError("value table has " + std::to_string(values_.size()) +
                         " entries for modulus " + std::to_string(modulus));
    for (int v : values_)
        if (v < -1 || v > 1) throw UsageError("character values must lie in {-1, 0, 1}");
}

ResidueCharacter ResidueCharacter::principal(std::uint64_t modulus) {
    std::vector<int> v(modulus);
    for (std::uint64_t a = 0; a < modulus; ++a) v[a] = gcd(a, modulus) == 1 ? 1 : 0;
    return ResidueCharacter(modulus, std::move(v));
}

SplitSum split_sum_check(const ResidueCharacter& psi1, const ResidueCharacter& psi2, double x) {
    const std::uint64_t q1 = psi1.modulus();
    const std::uint64_t q2 = psi2.modulus();
    if (gcd(q1, q2) != 1)
        throw DomainError("split_sum_check: moduli " + std::to_string(q1) + " and " +
                          std::to_string(q2) + " are not coprime");
    const std::uint64_t n_max = floor_count(x);

    SplitSum out;
    for (std::uint64_t n = 1; n <= n_max; ++n) out.lhs += psi1(n) * psi2(n);

    for (std::uint64_t a = 1; a <= q1; ++a) {
        if (gcd(a, q1) != 1 || psi1(a) == 0) continue;
        std::int64_t inner = 0;
        for (std::uint64_t n = a; n <= n_max; n += q1) inner += psi2(n);
        out.rhs += psi1(a) * inner;
    }
    return out;
}

}  // namespace zlab
