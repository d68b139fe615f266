// arith.hpp
// Integer-arithmetic kernel: smallest-prime-factor sieve, factorization,
// Moebius function, Jacobi symbol, prime counting and the modulus classifier
// that decides which Burgess exponents r are admissible.
//
// Everything here is pure.  A FactorTable is immutable once built and may be
// shared freely between threads.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace zlab {

inline constexpr std::uint64_t kDefaultSieveLimit = 10'000'000;

// floor(sqrt(n)), exact for every 64-bit n.
std::uint64_t isqrt(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

// Smallest-prime-factor table over [2, limit], built with a linear sieve.
class FactorTable {
public:
    explicit FactorTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }

    // Least prime dividing n, for 2 <= n <= limit().
    std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
    bool covers(std::uint64_t n) const { return n <= limit_; }

    // All primes <= limit(), ascending.
    std::span<const std::uint32_t> primes() const { return primes_; }

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

struct PrimeFactorization {
    std::uint64_t n = 1;
    // (prime, exponent), primes strictly increasing.
    std::vector<std::pair<std::uint64_t, unsigned>> factors;

    int mu() const;
    unsigned omega() const { return static_cast<unsigned>(factors.size()); }
    std::uint64_t tau() const;
    bool squarefree() const;
};

// Falls back to trial division when n exceeds the table limit.
PrimeFactorization factorize(std::uint64_t n);
PrimeFactorization factorize(std::uint64_t n, const FactorTable& table);

int mobius(std::uint64_t n);
int mobius(std::uint64_t n, const FactorTable& table);

// Jacobi symbol (a/n) for odd n >= 1; a may be negative or unreduced.
int jacobi(std::int64_t a, std::int64_t n);

// Number of primes <= floor(x).  x < 2 gives 0.
std::uint64_t prime_pi(double x);
std::uint64_t prime_pi(double x, const FactorTable& table);

bool is_squarefree(std::uint64_t n);
bool is_squarefree(std::uint64_t n, const FactorTable& table);

// "Cubefree up to a factor 8": q = 2^e * m, m odd and cubefree, e <= 3.
// Such moduli admit every Burgess exponent r >= 1; all others only r <= 3.
struct ModulusClass {
    enum class Tag { AnyR, RestrictedR };

    Tag tag = Tag::AnyR;
    std::uint64_t q = 1;

    bool admits(unsigned r) const { return r >= 1 && (tag == Tag::AnyR || r <= 3); }
    // Largest admissible r not exceeding cap.
    unsigned cap(unsigned r_max) const { return tag == Tag::AnyR ? r_max : (r_max < 3 ? r_max : 3); }

    friend bool operator==(const ModulusClass&, const ModulusClass&) = default;
};

std::string_view to_string(ModulusClass::Tag tag);

ModulusClass classify_modulus(std::uint64_t q);

}  // namespace zlab
