// zimmert.hpp
// Zimmert sets and the finite-level check of the lower bound on their size.
//
// For a negative squarefree radicand d, Z_d is the set of n >= 1 with
//   (1) 4n^2 + 3 <= |d| and n != 2,
//   (2) d a quadratic non-residue mod every odd prime p | n, i.e. (d/p) = -1,
//   (3) n odd unless d = 5 mod 8 (nonnegative residue of d).
// |Z_d| is a lower bound for the rank of the largest free quotient of the
// Bianchi group of Q(sqrt d); no group theory is computed here.
//
// corollary_check evaluates, exactly, the inequality
//   pi(x) - |Z_d| - omega(|d|) <= S(x, P, chi_d),   x = sqrt(|d| - 3) / 2,
// with P the primes of Z_d.  Every odd prime p <= x outside P that does not
// divide d has chi_d(p) = 1, so the left side undercounts S.

#pragma once

#include <cstdint>
#include <vector>

#include "zlab/arith.hpp"
#include "zlab/sift.hpp"

namespace zlab {

// Largest n with 4n^2 + 3 <= |d|; 0 when |d| < 7.  Equals floor(x) for
// x = sqrt(|d| - 3) / 2.
std::uint64_t candidate_bound(std::int64_t d);

// d mod m as a value in [0, m).
inline std::uint64_t residue(std::int64_t d, std::uint64_t m) {
    const std::int64_t r = d % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

struct ZimmertSet {
    std::int64_t d = 0;
    std::uint64_t nmax = 0;
    std::vector<std::uint64_t> elements;  // ascending
    SiftPrimeSet prime_support;

    std::size_t size() const { return elements.size(); }
    bool contains(std::uint64_t n) const;
};

// Throws DomainError unless d <= -1 and |d| is squarefree.
ZimmertSet zimmert_set(std::int64_t d);
ZimmertSet zimmert_set(std::int64_t d, const FactorTable& table);

// |Z_d|: a lower bound on the free-quotient rank r(d), nothing more.
std::uint64_t rank_lower_bound(std::int64_t d);
std::uint64_t rank_lower_bound(std::int64_t d, const FactorTable& table);

struct CorollaryReport {
    std::int64_t d = 0;
    double x = 0.0;
    std::uint64_t floor_x = 0;
    std::uint64_t pi_x = 0;
    std::uint64_t omega_d = 0;
    std::uint64_t zimmert_size = 0;
    std::uint64_t prime_support_size = 0;
    std::int64_t sifted = 0;
    std::int64_t lhs = 0;
    bool holds = false;
    // chi(n) in {0, 1} for every n <= x coprime to P
    bool nonneg_ok = false;
};

// Requires |d| >= 7 (DomainError otherwise) and |d| squarefree.
CorollaryReport corollary_check(std::int64_t d);
CorollaryReport corollary_check(std::int64_t d, const FactorTable& table);
// Same, reusing an already enumerated Zimmert set.
CorollaryReport corollary_check(const ZimmertSet& zset, const QuadraticCharacter& chi,
                                const FactorTable* table = nullptr);

struct CorollaryParams {
    double c = 0.0;
    double c_prime = 0.0;
    double R = 0.0;  // |d|^c
    double x = 0.0;  // sqrt(|d| - 3) / 2
    unsigned r = 1;  // ceil(1 / (1 - 4c'))
};

// Requires 0 < c < c' < 1/4 and |d| >= 7 (UsageError otherwise).
CorollaryParams corollary_params(std::int64_t d, double c, double c_prime);

}  // namespace zlab
