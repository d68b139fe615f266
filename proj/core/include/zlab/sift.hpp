// sift.hpp
// Sifted character sums
//
//   S(x, P) = sum_{n <= x, (n, P) = 1} chi(n)
//
// and their Moebius decomposition truncated at level R:
//
//   w_R(n)  = sum_{t <= R, t | (n, P)} mu(t)
//   Sigma1  = sum_{n <= x} chi(n) w_R(n)
//           = sum_{t <= R, t | P} mu(t) chi(t) sum_{m <= x/t} chi(m)
//   Sigma2  = sum_{n <= x, (n, P) > 1} chi(n) w_R(n)
//   S       = Sigma1 - Sigma2
//
// All of these are computed exactly as integers.  The Burgess-type bound
// terms are evaluated as reference magnitudes only: the implied constants
// are unknown, so nothing here compares them against actual sums.
//
// P is carried by its prime support.  In practice it is a product of
// hundreds of primes and never fits in a machine word.

#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "zlab/arith.hpp"
#include "zlab/character.hpp"

namespace zlab {

class SiftPrimeSet {
public:
    SiftPrimeSet() = default;
    // Sorts and deduplicates; throws DomainError on a non-prime entry.
    explicit SiftPrimeSet(std::vector<std::uint64_t> primes);
    SiftPrimeSet(std::initializer_list<std::uint64_t> primes)
        : SiftPrimeSet(std::vector<std::uint64_t>(primes)) {}

    std::span<const std::uint64_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }

    // gcd(n, P) > 1
    bool shares_factor(std::uint64_t n) const;
    // gcd(n, P), saturating at UINT64_MAX.
    std::uint64_t gcd_with(std::uint64_t n) const;

    // Calls visit(t, mu(t)) for every squarefree t | P with t <= bound,
    // t = 1 included.  Depth-first over the sorted primes, pruned at bound.
    void for_each_divisor(std::uint64_t bound,
                          const std::function<void(std::uint64_t, int)>& visit) const;

    friend bool operator==(const SiftPrimeSet&, const SiftPrimeSet&) = default;

private:
    std::vector<std::uint64_t> primes_;
};

// sum of mu(t) over t <= R with t | gcd(n, P).
int inner_sieve_weight(std::uint64_t n, const SiftPrimeSet& primes, double R);

std::int64_t sifted_sum(const QuadraticCharacter& chi, double x, const SiftPrimeSet& primes);

struct BurgessParams {
    std::uint64_t q = 1;
    double x = 1.0;
    unsigned r = 1;
    ModulusClass modulus_class{};
    double epsilon = 0.0;
};

// x^(1 - 1/r) * q^((r + 1) / (4 r^2) + eps).
// Throws DomainError for r not admissible under modulus_class, x < 1 or eps < 0.
double burgess_term(const BurgessParams& params);

struct OptimalR {
    unsigned r = 1;
    double bound = 0.0;
};

// Minimizes burgess_term over admissible r <= r_max; ties go to the smaller r.
OptimalR optimal_r(std::uint64_t q, double x, const ModulusClass& modulus_class,
                   unsigned r_max, double epsilon = 0.0);

struct TheoremTerms {
    double main = 0.0;  // x^(1-1/r) R^(1/r) q^((r+1)/(4r^2)+eps)
    double tail = 0.0;  // x^(1+eps) * sum_{R < t <= x, t | P} 1/t
};

// Requires 1 <= R <= x.  Admissibility of r is judged by classify_modulus(q).
TheoremTerms theorem_rhs(std::uint64_t q, double x, double R, unsigned r,
                         const SiftPrimeSet& primes, double epsilon = 0.0);

struct DecomposeOptions {
    unsigned r = 0;       // 0 selects the r minimizing the main term
    unsigned r_max = 8;
    double epsilon = 0.0;
};

struct SiftedSumReport {
    std::int64_t d = 0;
    std::uint64_t q = 0;
    double x = 0.0;
    double R = 0.0;
    std::int64_t sigma1_direct = 0;
    std::int64_t sigma1_interchanged = 0;
    std::int64_t sigma2 = 0;
    std::int64_t sifted = 0;
    // Theorem main and tail terms; NaN when 1 <= R <= x fails.
    double burgess_reference = 0.0;
    double tail_reference = 0.0;
    unsigned r_used = 0;
    // false when R lies outside the theorem's stated range 2 <= R <= x
    bool in_theorem_range = true;
};

// Requires R >= 1 (UsageError otherwise).
SiftedSumReport decompose(const QuadraticCharacter& chi, double x, const SiftPrimeSet& primes,
                          double R, const DecomposeOptions& options = {});

}  // namespace zlab
