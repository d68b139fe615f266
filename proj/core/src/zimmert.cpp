#include "zlab/zimmert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zlab/error.hpp"

namespace zlab {

namespace {

std::uint64_t magnitude(std::int64_t d) { return static_cast<std::uint64_t>(-d); }

std::vector<std::uint64_t> primes_upto(std::uint64_t n, const FactorTable* table) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    if (table != nullptr && table->covers(n)) {
        for (std::uint32_t p : table->primes()) {
            if (p > n) break;
            out.push_back(p);
        }
        return out;
    }
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

ZimmertSet enumerate(std::int64_t d, const FactorTable* table) {
    ZimmertSet z;
    z.d = d;
    z.nmax = candidate_bound(d);
    const std::uint64_t nmax = z.nmax;

    std::vector<bool> admissible(nmax + 1, true);
    std::vector<std::uint64_t> support;
    for (std::uint64_t p : primes_upto(nmax, table)) {
        if (p == 2) continue;
        if (jacobi(d, static_cast<std::int64_t>(p)) == -1) {
            support.push_back(p);
            continue;
        }
        for (std::uint64_t m = p; m <= nmax; m += p) admissible[m] = false;
    }
    const bool evens_allowed = residue(d, 8) == 5;
    for (std::uint64_t n = 1; n <= nmax; ++n) {
        if (n == 2 || !admissible[n]) continue;
        if (n % 2 == 0 && !evens_allowed) continue;
        z.elements.push_back(n);
    }
    z.prime_support = SiftPrimeSet(std::move(support));
    return z;
}

void require_radicand(std::int64_t d, const FactorTable* table) {
    if (d >= 0) throw DomainError("d must be negative, got " + std::to_string(d));
    const bool sf = table ? is_squarefree(magnitude(d), *table) : is_squarefree(magnitude(d));
    if (!sf) throw DomainError("d must be squarefree, got " + std::to_string(d));
}

}  // namespace

std::uint64_t candidate_bound(std::int64_t d) {
    if (d >= 0) throw UsageError("candidate_bound: d must be negative");
    const std::uint64_t m = magnitude(d);
    return m < 7 ? 0 : isqrt((m - 3) / 4);
}

bool ZimmertSet::contains(std::uint64_t n) const {
    return std::binary_search(elements.begin(), elements.end(), n);
}

ZimmertSet zimmert_set(std::int64_t d) {
    require_radicand(d, nullptr);
    return enumerate(d, nullptr);
}

ZimmertSet zimmert_set(std::int64_t d, const FactorTable& table) {
    require_radicand(d, &table);
    return enumerate(d, &table);
}

std::uint64_t rank_lower_bound(std::int64_t d) { return zimmert_set(d).size(); }
std::uint64_t rank_lower_bound(std::int64_t d, const FactorTable& table) {
    return zimmert_set(d, table).size();
}

CorollaryReport corollary_check(const ZimmertSet& zset, const QuadraticCharacter& chi,
                                const FactorTable* table) {
    const std::int64_t d = zset.d;
    if (d >= 0 || magnitude(d) < 7)
        throw DomainError("corollary_check needs |d| >= 7, got d=" + std::to_string(d));
    if (chi.d() != d) throw UsageError("corollary_check: character and Zimmert set disagree on d");

    CorollaryReport rep;
    rep.d = d;
    rep.x = 0.5 * std::sqrt(static_cast<double>(magnitude(d) - 3));
    // floor(sqrt(m - 3) / 2) = isqrt((m - 3) / 4), so no rounding enters the sums
    rep.floor_x = zset.nmax;
    const double fx = static_cast<double>(rep.floor_x);
    rep.pi_x = table ? prime_pi(fx, *table) : prime_pi(fx);
    rep.omega_d = table ? factorize(magnitude(d), *table).omega() : factorize(magnitude(d)).omega();
    rep.zimmert_size = zset.size();
    rep.prime_support_size = zset.prime_support.size();
    rep.sifted = sifted_sum(chi, fx, zset.prime_support);
    rep.lhs = static_cast<std::int64_t>(rep.pi_x) - static_cast<std::int64_t>(rep.zimmert_size) -
              static_cast<std::int64_t>(rep.omega_d);
    rep.holds = rep.lhs <= rep.sifted;

    rep.nonneg_ok = true;
    for (std::uint64_t n = 1; n <= rep.floor_x; ++n) {
        if (zset.prime_support.shares_factor(n)) continue;
        if (chi(n) < 0) {
            rep.nonneg_ok = false;
            break;
        }
    }
    return rep;
}

CorollaryReport corollary_check(std::int64_t d) {
    if (d < 0 && magnitude(d) < 7)
        throw DomainError("corollary_check needs |d| >= 7, got d=" + std::to_string(d));
    const ZimmertSet z = zimmert_set(d);
    return corollary_check(z, make_character(d), nullptr);
}

CorollaryReport corollary_check(std::int64_t d, const FactorTable& table) {
    if (d < 0 && magnitude(d) < 7)
        throw DomainError("corollary_check needs |d| >= 7, got d=" + std::to_string(d));
    const ZimmertSet z = zimmert_set(d, table);
    return corollary_check(z, make_character(d, table), &table);
}

CorollaryParams corollary_params(std::int64_t d, double c, double c_prime) {
    if (!(c > 0.0 && c < c_prime && c_prime < 0.25))
        throw UsageError("corollary_params: need 0 < c < c' < 1/4");
    if (d >= 0 || magnitude(d) < 7) throw UsageError("corollary_params: need |d| >= 7");

    const double m = static_cast<double>(magnitude(d));
    CorollaryParams p;
    p.c = c;
    p.c_prime = c_prime;
    p.R = std::pow(m, c);
    p.x = 0.5 * std::sqrt(m - 3.0);
    // 1 / (1 - 4c') lands a few ulps off an integer for decimal inputs like
    // c' = 0.2; snap those before taking the ceiling
    const double v = 1.0 / (1.0 - 4.0 * c_prime);
    const double nearest = std::round(v);
    p.r = static_cast<unsigned>(std::abs(v - nearest) <= 1e-9 * nearest ? nearest : std::ceil(v));
    return p;
}

}  // namespace zlab
