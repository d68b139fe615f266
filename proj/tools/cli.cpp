#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "zlab/arith.hpp"
#include "zlab/character.hpp"
#include "zlab/error.hpp"
#include "zlab/sift.hpp"
#include "zlab/survey.hpp"
#include "zlab/zimmert.hpp"

namespace zlab::cli {

namespace {

constexpr const char* kZimmertHelp =
    "Zimmert set Z_d of a negative squarefree d: all n >= 1 such that\n"
    "  (1) 4n^2 + 3 <= |d| and n != 2;\n"
    "  (2) d is a quadratic non-residue modulo every odd prime factor p of n;\n"
    "  (3) n is odd unless d = 5 (mod 8).\n"
    "|Z_d| is a lower bound for the rank of the largest free quotient of PSL2(O_d).\n"
    "Negative d may be given as '-d -163' or '--abs-d 163'.\n"
    "ZLAB_SIEVE_LIMIT overrides the factor-table size (default 10000000).";

struct Range {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("range must look like LO:HI, got '" + text + "'");
    try {
        std::size_t used_lo = 0, used_hi = 0;
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        if (a.empty() || b.empty() || a[0] == '-' || b[0] == '-') throw std::invalid_argument(text);
        Range r{std::stoull(a, &used_lo), std::stoull(b, &used_hi)};
        if (used_lo != a.size() || used_hi != b.size()) throw std::invalid_argument(text);
        if (r.lo == 0 || r.lo > r.hi) throw UsageError("range needs 1 <= LO <= HI, got '" + text + "'");
        return r;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("range must look like LO:HI with positive integers, got '" + text + "'");
    }
}

std::vector<std::uint64_t> parse_prime_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size() || item[0] == '-') throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--P expects a comma-separated list of primes, got '" + text + "'");
        }
    }
    return out;
}

std::uint64_t sieve_limit_from_env() {
    const char* env = std::getenv("ZLAB_SIEVE_LIMIT");
    if (env == nullptr || *env == '\0') return kDefaultSieveLimit;
    try {
        std::size_t used = 0;
        const std::string s(env);
        const std::uint64_t v = std::stoull(s, &used);
        if (used != s.size() || v < 2) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("ZLAB_SIEVE_LIMIT must be an integer >= 2, got '") + env + "'");
    }
}

// Options shared by the d-or-range subcommands.
struct Target {
    std::optional<std::int64_t> d;
    std::optional<std::uint64_t> abs_d;
    std::optional<std::string> range;

    void add_to(CLI::App* sub, bool allow_range) {
        auto* od = sub->add_option("-d,--d", d, "negative squarefree radicand, e.g. -163");
        auto* oa = sub->add_option("--abs-d", abs_d, "|d|, for shells that mangle a leading minus");
        od->excludes(oa);
        if (allow_range) {
            auto* orange = sub->add_option("--range", range, "|d| range LO:HI (squarefree values only)");
            orange->excludes(od)->excludes(oa);
        }
    }

    bool has_single() const { return d.has_value() || abs_d.has_value(); }

    std::int64_t single() const {
        if (d) {
            if (*d >= 0) throw DomainError("d must be negative, got " + std::to_string(*d));
            return *d;
        }
        if (abs_d) {
            if (*abs_d == 0) throw DomainError("d must be negative, got 0");
            return -static_cast<std::int64_t>(*abs_d);
        }
        throw UsageError("one of -d, --abs-d" + std::string(range ? "" : " or --range") + " is required");
    }
};

class Context {
public:
    explicit Context(std::optional<std::uint64_t> limit_flag) : limit_flag_(limit_flag) {}

    // Factor table covering n, capped at the configured sieve limit.
    const FactorTable& table_for(std::uint64_t n) {
        const std::uint64_t cap = limit_flag_ ? *limit_flag_ : sieve_limit_from_env();
        if (cap < 2) throw UsageError("sieve limit must be at least 2");
        const std::uint64_t want = std::clamp<std::uint64_t>(n, 2, cap);
        if (!table_ || table_->limit() < want) table_ = std::make_unique<FactorTable>(want);
        return *table_;
    }

private:
    std::optional<std::uint64_t> limit_flag_;
    std::unique_ptr<FactorTable> table_;
};

std::string join(std::span<const std::uint64_t> v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string verify_line(const CorollaryReport& r) {
    std::ostringstream os;
    os << "d=" << r.d << " x=" << format_real(r.x) << " pi_x=" << r.pi_x << " omega=" << r.omega_d
       << " zsize=" << r.zimmert_size << " lhs=" << r.lhs << " S=" << r.sifted
       << " holds=" << (r.holds ? "true" : "false") << " nonneg=" << (r.nonneg_ok ? "true" : "false");
    return os.str();
}

int cmd_zset(Context& ctx, const Target& t, std::optional<std::uint64_t> max_size, std::ostream& out) {
    if (t.range) {
        const Range r = parse_range(*t.range);
        const FactorTable& table = ctx.table_for(r.hi);
        if (max_size) {
            for (std::int64_t d : find_small_zimmert(r.lo, r.hi, *max_size, &table))
                out << "d=" << d << " size=" << rank_lower_bound(d, table) << '\n';
        } else {
            for (std::int64_t d : squarefree_discriminants(r.lo, r.hi, DiscriminantFilter::kAll, &table))
                out << "d=" << d << " size=" << rank_lower_bound(d, table) << '\n';
        }
        return kExitOk;
    }
    const std::int64_t d = t.single();
    const ZimmertSet z = zimmert_set(d, ctx.table_for(static_cast<std::uint64_t>(-d)));
    out << join(z.elements) << '\n';
    out << "size=" << z.size() << " primes=" << join(z.prime_support.primes()) << '\n';
    return kExitOk;
}

int cmd_verify(Context& ctx, const Target& t, bool quiet, std::ostream& out) {
    if (!t.range) {
        const std::int64_t d = t.single();
        const CorollaryReport r = corollary_check(d, ctx.table_for(static_cast<std::uint64_t>(-d)));
        out << verify_line(r) << '\n';
        return (r.holds && r.nonneg_ok) ? kExitOk : kExitFailed;
    }
    const Range range = parse_range(*t.range);
    if (range.lo < 7) throw DomainError("verify needs |d| >= 7, range starts at " + std::to_string(range.lo));
    const FactorTable& table = ctx.table_for(range.hi);
    std::uint64_t checked = 0, failed = 0;
    for (std::int64_t d : squarefree_discriminants(range.lo, range.hi, DiscriminantFilter::kAll, &table)) {
        const CorollaryReport r = corollary_check(d, table);
        ++checked;
        const bool ok = r.holds && r.nonneg_ok;
        if (!ok) ++failed;
        if (!quiet || !ok) out << verify_line(r) << '\n';
    }
    out << "checked=" << checked << " failed=" << failed << '\n';
    return failed == 0 ? kExitOk : kExitFailed;
}

struct CharsumArgs {
    double x = 0.0;
    std::optional<double> R;
    std::optional<std::string> P;
    unsigned r = 0;
    unsigned r_max = 8;
    double epsilon = 0.0;
    std::string format = "table";
};

int cmd_charsum(Context& ctx, const Target& t, const CharsumArgs& a, std::ostream& out) {
    const std::int64_t d = t.single();
    const FactorTable& table = ctx.table_for(static_cast<std::uint64_t>(-d));
    const QuadraticCharacter chi = make_character(d, table);

    SiftPrimeSet primes;
    if (a.P) {
        primes = (*a.P == "zimmert") ? zimmert_set(d, table).prime_support : SiftPrimeSet(parse_prime_list(*a.P));
    }
    const std::int64_t ps = partial_sum(chi, a.x);
    const std::int64_t sifted = sifted_sum(chi, a.x, primes);

    std::optional<SiftedSumReport> rep;
    if (a.R) rep = decompose(chi, a.x, primes, *a.R, {a.r, a.r_max, a.epsilon});

    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["d"] = d;
        j["q"] = chi.modulus();
        j["x"] = a.x;
        j["P"] = std::vector<std::uint64_t>(primes.primes().begin(), primes.primes().end());
        j["partial_sum"] = ps;
        j["sifted"] = sifted;
        if (rep) {
            j["R"] = rep->R;
            j["sigma1_direct"] = rep->sigma1_direct;
            j["sigma1_interchanged"] = rep->sigma1_interchanged;
            j["sigma2"] = rep->sigma2;
            j["r_used"] = rep->r_used;
            j["burgess_reference"] = rep->burgess_reference;
            j["tail_reference"] = rep->tail_reference;
            j["in_theorem_range"] = rep->in_theorem_range;
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "d=" << d << " q=" << chi.modulus() << " x=" << format_real(a.x) << " P=" << join(primes.primes(), ",")
        << '\n';
    out << "partial_sum=" << ps << " sifted=" << sifted << '\n';
    if (rep) {
        out << "R=" << format_real(rep->R) << " sigma1_direct=" << rep->sigma1_direct
            << " sigma1_interchanged=" << rep->sigma1_interchanged << " sigma2=" << rep->sigma2
            << " sifted=" << rep->sifted << '\n';
        out << "r=" << rep->r_used << " main=" << format_real(rep->burgess_reference)
            << " tail=" << format_real(rep->tail_reference)
            << " in_theorem_range=" << (rep->in_theorem_range ? "true" : "false") << '\n';
    }
    const bool identities = !rep || (rep->sifted == rep->sigma1_direct - rep->sigma2 &&
                                     rep->sigma1_direct == rep->sigma1_interchanged);
    return identities ? kExitOk : kExitFailed;
}

struct BurgessArgs {
    std::uint64_t q = 0;
    double x = 1.0;
    unsigned r = 0;
    unsigned r_max = 8;
    double epsilon = 0.0;
    std::optional<double> R;
    std::optional<std::string> P;
};

int cmd_burgess(const BurgessArgs& a, std::ostream& out) {
    const ModulusClass cls = classify_modulus(a.q);
    unsigned r = a.r;
    double bound = 0.0;
    if (r == 0) {
        const OptimalR best = optimal_r(a.q, a.x, cls, a.r_max, a.epsilon);
        r = best.r;
        bound = best.bound;
    } else {
        bound = burgess_term({a.q, a.x, r, cls, a.epsilon});
    }
    out << "q=" << a.q << " class=" << to_string(cls.tag) << " x=" << format_real(a.x) << " r=" << r
        << " bound=" << format_real(bound) << '\n';
    if (a.R) {
        const SiftPrimeSet primes = a.P ? SiftPrimeSet(parse_prime_list(*a.P)) : SiftPrimeSet{};
        const TheoremTerms terms = theorem_rhs(a.q, a.x, *a.R, r, primes, a.epsilon);
        out << "R=" << format_real(*a.R) << " main=" << format_real(terms.main)
            << " tail=" << format_real(terms.tail) << '\n';
    }
    return kExitOk;
}

struct SurveyArgs {
    std::string range;
    std::string format = "csv";
    std::optional<std::string> output;
    bool fit = false;
    unsigned workers = 1;
    std::optional<unsigned> sample;
    bool fundamental = false;
    bool no_decompose = false;
    double c = 0.2;
    bool timing = false;
    bool diagnostic = false;
};

void write_table(std::ostream& out, std::span<const SurveyRecord> records) {
    std::vector<std::size_t> widths;
    for (auto col : kCsvColumns) widths.push_back(std::max<std::size_t>(col.size(), 8) + 2);
    auto row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << std::setw(static_cast<int>(widths[i])) << cells[i];
        out << '\n';
    };
    out << std::right;
    row({kCsvColumns.begin(), kCsvColumns.end()});
    for (const auto& r : records) {
        row({std::to_string(r.d), std::to_string(r.abs_d), std::to_string(r.nmax), std::to_string(r.zimmert_size),
             std::to_string(r.prime_support_size), std::to_string(r.rank_lower_bound), std::to_string(r.pi_x),
             std::to_string(r.omega_d), std::to_string(r.sifted), r.sigma1 ? std::to_string(*r.sigma1) : "-",
             r.sigma2 ? std::to_string(*r.sigma2) : "-", format_real(r.burgess_reference), r.holds ? "true" : "false"});
    }
}

int cmd_survey(Context& ctx, const SurveyArgs& a, std::ostream& out, std::ostream& err) {
    const Range range = parse_range(a.range);
    if (a.format != "csv" && a.format != "json" && a.format != "table")
        throw UsageError("--format must be table, csv or json");
    if (!(a.c > 0.0 && a.c < 0.25)) throw UsageError("--c must lie in (0, 1/4)");

    std::ofstream file;
    if (a.output) {
        file.open(*a.output, std::ios::out | std::ios::trunc);
        if (!file) throw UsageError("cannot write to '" + *a.output + "'");
    }
    std::ostream& sink = a.output ? static_cast<std::ostream&>(file) : out;

    SurveyRange sr;
    sr.lo = range.lo;
    sr.hi = range.hi;
    // exhaustive up to 10^5, geometric sampling above unless told otherwise
    sr.per_decade = a.sample ? *a.sample : (range.hi > 100'000 ? 200u : 0u);
    sr.filter = a.fundamental ? DiscriminantFilter::kFundamental : DiscriminantFilter::kAll;

    SurveyOptions opts;
    opts.decompose = !a.no_decompose;
    opts.c = a.c;
    opts.workers = a.workers;
    opts.table = &ctx.table_for(range.hi);

    const std::vector<SurveyRecord> all = run_survey(sr, opts);
    std::vector<SurveyRecord> records;
    records.reserve(all.size());
    bool failed = false;
    for (const auto& r : all) {
        if (!r.ok()) {
            err << "skipped d=" << r.d << ": " << r.error << '\n';
            continue;
        }
        failed = failed || !r.holds || !r.nonneg_ok;
        records.push_back(r);
    }

    if (a.format == "csv")
        write_csv(sink, records, a.timing);
    else if (a.format == "json")
        write_json(sink, records, a.timing);
    else
        write_table(sink, records);

    if (a.fit) {
        const GrowthFit fit = fit_growth(records);
        sink << "alpha=" << format_real(fit.alpha) << " logc=" << format_real(fit.log_c) << " n=" << fit.count
             << " excluded=" << fit.excluded << '\n';
    }
    if (a.diagnostic) err << "max |partial_sum|/burgess_reference=" << format_real(max_burgess_ratio(records)) << '\n';
    sink.flush();
    if (!sink) throw UsageError("failed writing survey output");
    return failed ? kExitFailed : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"zlab: Zimmert sets, sifted character sums and Burgess reference bounds"};
    app.footer(kZimmertHelp);
    app.require_subcommand(1);

    std::optional<std::uint64_t> sieve_limit;
    app.add_option("--sieve-limit", sieve_limit, "factor-table size (overrides ZLAB_SIEVE_LIMIT)");

    auto* zset = app.add_subcommand("zset", "print the Zimmert set of d, or list |Z_d| over a range");
    Target zset_t;
    zset_t.add_to(zset, true);
    std::optional<std::uint64_t> max_size;
    zset->add_option("--max-size", max_size, "with --range, keep only d with |Z_d| <= K");

    auto* verify = app.add_subcommand("verify", "check pi(x) - |Z_d| - omega(|d|) <= S exactly");
    Target verify_t;
    verify_t.add_to(verify, true);
    bool quiet = false;
    verify->add_flag("--quiet", quiet, "with --range, print failures and the summary only");

    auto* charsum = app.add_subcommand("charsum", "partial and sifted character sums, Sigma1/Sigma2 split");
    Target charsum_t;
    charsum_t.add_to(charsum, false);
    CharsumArgs cs;
    charsum->add_option("--x", cs.x, "summation bound x")->required();
    charsum->add_option("--R", cs.R, "sieve level R >= 1 (enables the decomposition)");
    charsum->add_option("--P", cs.P, "sifting primes, e.g. 3,5; 'zimmert' for the primes of Z_d");
    charsum->add_option("--r", cs.r, "Burgess exponent (default: minimize the main term)");
    charsum->add_option("--r-max", cs.r_max, "search cap for r")->check(CLI::PositiveNumber);
    charsum->add_option("--epsilon", cs.epsilon, "exponent slack")->check(CLI::NonNegativeNumber);
    charsum->add_option("--format", cs.format, "table or json")->check(CLI::IsMember({"table", "json"}));

    auto* burgess = app.add_subcommand("burgess", "Burgess reference term and optimal r");
    BurgessArgs ba;
    burgess->add_option("--q", ba.q, "modulus")->required()->check(CLI::PositiveNumber);
    burgess->add_option("--x", ba.x, "length x >= 1")->required();
    burgess->add_option("--r", ba.r, "exponent (default: optimal)");
    burgess->add_option("--r-max", ba.r_max, "search cap for r")->check(CLI::PositiveNumber);
    burgess->add_option("--epsilon", ba.epsilon, "exponent slack")->check(CLI::NonNegativeNumber);
    burgess->add_option("--R", ba.R, "also print the sifted-sum bound terms at level R");
    burgess->add_option("--P", ba.P, "sifting primes for the tail term");

    auto* survey = app.add_subcommand("survey", "sweep a |d| range and export per-d records");
    SurveyArgs sa;
    survey->add_option("--range", sa.range, "|d| range LO:HI")->required();
    survey->add_option("--format", sa.format, "csv, json or table")->check(CLI::IsMember({"csv", "json", "table"}));
    survey->add_option("--output,-o", sa.output, "write to a file instead of stdout");
    survey->add_flag("--fit", sa.fit, "append the log-log growth fit of |Z_d|");
    survey->add_option("--workers,-j", sa.workers, "worker threads (0 = all cores)");
    survey->add_option("--sample", sa.sample, "geometric samples per decade (0 = every d)");
    survey->add_flag("--fundamental", sa.fundamental, "only |d| = 3 mod 4, where d itself is a field discriminant");
    survey->add_flag("--no-decompose", sa.no_decompose, "skip the Sigma1/Sigma2 columns");
    survey->add_option("--c", sa.c, "sieve level exponent, R = |d|^c");
    survey->add_flag("--timing", sa.timing, "add an elapsed_us column");
    survey->add_flag("--diagnostic", sa.diagnostic, "log max |sum chi| / Burgess reference to stderr");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        Context ctx(sieve_limit);
        if (*zset) return cmd_zset(ctx, zset_t, max_size, out);
        if (*verify) return cmd_verify(ctx, verify_t, quiet, out);
        if (*charsum) return cmd_charsum(ctx, charsum_t, cs, out);
        if (*burgess) return cmd_burgess(ba, out);
        if (*survey) return cmd_survey(ctx, sa, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace zlab::cli
