#pragma once

/** @file verify.hpp
 * Theorem-level checks: coefficientwise dominance of the product
 * inequalities, with the injection used as an independent second witness
 * wherever one exists; refinement sums; lecture hall identities; and a
 * parameter sweep for exploring outside the theorems' hypotheses.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "injection.hpp"
#include "partitions.hpp"
#include "series.hpp"

namespace qineq {

enum class Status { holds, violated, skipped };

inline std::string_view status_name(Status s) {
    switch (s) {
    case Status::holds: return "HOLDS";
    case Status::violated: return "VIOLATED";
    case Status::skipped: return "SKIPPED";
    }
    return "?";
}

struct Violation {
    std::size_t exponent = 0;
    coeff_t lhs = 0;
    coeff_t rhs = 0;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
    Status status = Status::holds;
    std::optional<Violation> first_violation; ///< smallest violating exponent
    std::size_t checked_degree = 0;
    std::size_t violation_count = 0;          ///< exponents <= checked_degree that violate
    std::optional<std::size_t> injection_checked_through; ///< largest x cross-checked by injection
    std::string note;

    bool holds() const noexcept { return status == Status::holds; }
};

/// Same status, violation and degree; notes and injection coverage are ignored.
inline bool same_outcome(const Verdict& a, const Verdict& b) {
    return a.status == b.status && a.first_violation == b.first_violation &&
           a.checked_degree == b.checked_degree && a.violation_count == b.violation_count;
}

/// Dominance lhs >= rhs turned into a verdict.
inline Verdict compare(const Series& lhs, const Series& rhs) {
    const Dominance d = dominance(lhs, rhs);
    Verdict v;
    v.checked_degree = lhs.degree();
    if (!d.holds) {
        v.status = Status::violated;
        v.first_violation = Violation{d.exponent, d.lhs, d.rhs};
        for (std::size_t x = 0; x <= lhs.degree(); ++x)
            if (lhs[x] < rhs[x]) ++v.violation_count;
    }
    return v;
}

/// Exact equality turned into a verdict; the first differing exponent is reported.
inline Verdict compare_equal(const Series& lhs, const Series& rhs) {
    detail::require_same_degree(lhs, rhs, "compare_equal");
    Verdict v;
    v.checked_degree = lhs.degree();
    for (std::size_t x = 0; x <= lhs.degree(); ++x) {
        if (lhs[x] == rhs[x]) continue;
        if (!v.first_violation) v.first_violation = Violation{x, lhs[x], rhs[x]};
        ++v.violation_count;
    }
    if (v.first_violation) v.status = Status::violated;
    return v;
}

struct VerifyOptions {
    /// Upper bound on the number of domain partitions pushed through the
    /// injection. Norms are checked in increasing order until the next one
    /// would exceed the budget. Zero disables the cross-check.
    std::size_t injection_budget = 200000;
};

/// Thrown when the series engine and the injection disagree.
struct CrossCheckFailure : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {

/// Pushes every domain partition of norm x through the injection for
/// increasing x and checks that it is norm preserving, lands in the codomain,
/// and inverts back to itself (hence is injective). The number of domain
/// partitions must equal rhs[x]; and since the images are distinct codomain
/// partitions, lhs[x] >= rhs[x] must hold as well.
inline std::optional<std::size_t> cross_check_injection(Mode mode, const Params& p,
                                                        const Series& lhs, const Series& rhs,
                                                        std::size_t budget) {
    std::optional<std::size_t> through;
    std::size_t spent = 0;
    for (std::size_t x = 0; x <= rhs.degree(); ++x) {
        const auto predicted = static_cast<std::size_t>(rhs[x]);
        if (spent + predicted > budget) break;
        std::size_t seen = 0;
        for_each_partition(Side::domain, mode, static_cast<std::int64_t>(x), p,
                           [&](const Partition& p2) {
            ++seen;
            const Partition p1 = inject(mode, p2, p);
            if (norm(p1, p) != static_cast<std::int64_t>(x) || flat_norm(p1, p) != flat_norm(p2, p))
                throw CrossCheckFailure("injection does not preserve norms at x = " +
                                        std::to_string(x));
            if (!belongs_to(p1, Side::codomain, mode, p))
                throw CrossCheckFailure("injection leaves the codomain at x = " + std::to_string(x));
            const Inversion back = invert(mode, p1, p);
            if (!back.pre || *back.pre != p2)
                throw CrossCheckFailure("inverse does not recover the pre-image at x = " +
                                        std::to_string(x));
        });
        if (seen != predicted)
            throw CrossCheckFailure("enumeration found " + std::to_string(seen) +
                                    " domain partitions at x = " + std::to_string(x) +
                                    " but the series predicts " + std::to_string(predicted));
        if (lhs[x] < rhs[x])
            throw CrossCheckFailure("series reports a violation at x = " + std::to_string(x) +
                                    " although the injection is valid there");
        spent += seen;
        through = x;
    }
    return through;
}

inline Verdict verify_with_injection(Mode mode, const Params& p, std::size_t degree,
                                     Relaxations relax, const VerifyOptions& opts) {
    validate(p, mode, relax);
    const Series lhs = expand_product(side_product(Side::codomain, mode, p), degree);
    const Series rhs = expand_product(side_product(Side::domain, mode, p), degree);
    Verdict v = compare(lhs, rhs);
    const bool theorem_mode = !needs_gcd_relaxation(p) && !needs_order_relaxation(p);
    if (!theorem_mode) {
        v.note = "outside theorem hypotheses; dominance only";
    } else if (opts.injection_budget > 0) {
        v.injection_checked_through = cross_check_injection(mode, p, lhs, rhs, opts.injection_budget);
    }
    return v;
}

} // namespace detail

/// Checks 1/((q^z;q^m)_K (q^{nyz};q^{nm})_L) >= 1/((q^{yz};q^m)_K (q^{nz};q^{nm})_L) up to `degree`.
inline Verdict verify_main(const Params& p, std::size_t degree, Relaxations relax = {},
                           const VerifyOptions& opts = {}) {
    return detail::verify_with_injection(Mode::main, p, degree, relax, opts);
}

/// As verify_main with K and L swapped on the right-hand side.
inline Verdict verify_dual(const Params& p, std::size_t degree, Relaxations relax = {},
                           const VerifyOptions& opts = {}) {
    return detail::verify_with_injection(Mode::dual, p, degree, relax, opts);
}

/// General (S, T) form. There is no injection here, only the series comparison.
inline Verdict verify_gen(const Params& p, std::size_t degree) {
    validate(p, Mode::gen);
    const Series lhs = expand_product(side_product(Side::codomain, Mode::gen, p), degree);
    const Series rhs = expand_product(side_product(Side::domain, Mode::gen, p), degree);
    return compare(lhs, rhs);
}

/// Whether 1/(q, q^{m-1}; q^m)_L >= 1/(q^r, q^{m-r}; q^m)_L is expected to hold.
inline bool bg_expected_to_hold(std::int64_t m, std::int64_t r) {
    return (m - r) % r != 0 && r % (m - r) != 0;
}

/// Compares 1/(q, q^{m-1}; q^m)_L with 1/(q^r, q^{m-r}; q^m)_L up to `degree`.
///
/// An empty `L` means the infinite product, realized by a stabilized length.
/// When a violation is expected but none shows up by `degree`, the verdict is
/// SKIPPED rather than HOLDS.
inline Verdict verify_bg(std::optional<std::int64_t> L, std::int64_t m, std::int64_t r,
                         std::size_t degree) {
    if (!(1 < r && r < m - 1)) throw std::invalid_argument("verify_bg needs 1 < r < m - 1");
    if (L && *L <= 0) throw std::invalid_argument("verify_bg needs L > 0");
    const std::int64_t len = L ? *L : stabilized_length(m, degree);
    const ProductSpec lhs{{{1, m, len}, {m - 1, m, len}}};
    const ProductSpec rhs{{{r, m, len}, {m - r, m, len}}};
    Verdict v = compare(expand_product(lhs, degree), expand_product(rhs, degree));
    if (bg_expected_to_hold(m, r)) {
        v.note = "expected to hold";
    } else if (v.status == Status::holds) {
        v.status = Status::skipped;
        v.note = "violation expected but none found up to degree " + std::to_string(degree);
    } else {
        v.note = "violation expected";
    }
    return v;
}

/// Sum over s, t >= 0 with s_weight*s + t_weight*t = f of
/// [s_kinds-1+s choose s]_{q^s_step} [t_kinds-1+t choose t]_{q^t_step}.
///
/// [k-1+s choose s] generates multisets of size s over k kinds; with k = 0
/// only the empty multiset exists.
struct BinomialTerm {
    std::int64_t weight;
    std::int64_t kinds;
    std::int64_t step;
};

inline Series multiset_series(std::int64_t kinds, std::int64_t size, std::int64_t step,
                              std::size_t degree) {
    if (kinds == 0) return size == 0 ? Series::one(degree) : Series(degree);
    return qbinom(kinds - 1 + size, size, step, degree);
}

inline Series constrained_binomial_sum(std::int64_t f, BinomialTerm s_term, BinomialTerm t_term,
                                       std::size_t degree) {
    if (f < 0) throw std::invalid_argument("f must be nonnegative");
    if (s_term.weight < 1 || t_term.weight < 1)
        throw std::invalid_argument("constraint weights must be positive");
    Series total(degree);
    for (std::int64_t t = 0; t * t_term.weight <= f; ++t) {
        const std::int64_t rest = f - t * t_term.weight;
        if (rest % s_term.weight != 0) continue;
        const std::int64_t s = rest / s_term.weight;
        total = series_add(total, series_mul(multiset_series(s_term.kinds, s, s_term.step, degree),
                                             multiset_series(t_term.kinds, t, t_term.step, degree)));
    }
    return total;
}

namespace detail {

inline void require_refinement_params(std::int64_t n, std::int64_t y, std::int64_t K,
                                      std::int64_t L, std::int64_t f) {
    if (n < 1 || y < 1) throw std::invalid_argument("n and y must be positive");
    if (std::gcd(n, y) != 1) throw std::invalid_argument("gcd(n, y) must be 1");
    if (!(K >= L && L >= 0)) throw std::invalid_argument("K >= L >= 0 is required");
    if (f < 0) throw std::invalid_argument("f must be nonnegative");
}

} // namespace detail

/// Left side shared by both refinements: s + nyt = f.
inline Series refinement_lhs(std::int64_t n, std::int64_t y, std::int64_t K, std::int64_t L,
                             std::int64_t f, std::size_t degree) {
    return constrained_binomial_sum(f, {1, K, 1}, {n * y, L, n}, degree);
}

inline Series refinement1_rhs(std::int64_t n, std::int64_t y, std::int64_t K, std::int64_t L,
                              std::int64_t f, std::size_t degree) {
    return constrained_binomial_sum(f, {y, K, 1}, {n, L, n}, degree);
}

inline Series refinement2_rhs(std::int64_t n, std::int64_t y, std::int64_t K, std::int64_t L,
                              std::int64_t f, std::size_t degree) {
    return constrained_binomial_sum(f, {y, L, 1}, {n, K, n}, degree);
}

inline Verdict verify_refinement1(std::int64_t n, std::int64_t y, std::int64_t K, std::int64_t L,
                                  std::int64_t f, std::size_t degree) {
    detail::require_refinement_params(n, y, K, L, f);
    return compare(refinement_lhs(n, y, K, L, f, degree), refinement1_rhs(n, y, K, L, f, degree));
}

inline Verdict verify_refinement2(std::int64_t n, std::int64_t y, std::int64_t K, std::int64_t L,
                                  std::int64_t f, std::size_t degree) {
    detail::require_refinement_params(n, y, K, L, f);
    return compare(refinement_lhs(n, y, K, L, f, degree), refinement2_rhs(n, y, K, L, f, degree));
}

inline Verdict verify_refinement3(std::int64_t L, std::int64_t m, std::int64_t r, std::int64_t f,
                                  std::size_t degree) {
    if (L <= 0) throw std::invalid_argument("L must be positive");
    if (f < 0) throw std::invalid_argument("f must be nonnegative");
    if (!(1 < r && r < m - r)) throw std::invalid_argument("1 < r < m - r is required");
    if ((m - r) % r == 0) throw std::invalid_argument("r must not divide m - r");
    return compare(constrained_binomial_sum(f, {1, L, 1}, {m - 1, L, 1}, degree),
                   constrained_binomial_sum(f, {r, L, 1}, {m - r, L, 1}, degree));
}

/// Generating function in x of the side's partitions with flat norm z*f:
/// q^{zf} times the matching binomial sum with q replaced by q^m.
inline Series flat_refinement_series(Side side, Mode mode, const Params& p, std::int64_t f,
                                     std::size_t degree) {
    validate(p, mode);
    if (mode == Mode::gen) throw std::invalid_argument("flat refinement needs main or dual mode");
    Series sum = side == Side::codomain ? refinement_lhs(p.n, p.y, p.K, p.L, f, degree)
                 : mode == Mode::main   ? refinement1_rhs(p.n, p.y, p.K, p.L, f, degree)
                                        : refinement2_rhs(p.n, p.y, p.K, p.L, f, degree);
    return series_shift(series_dilate(sum, static_cast<std::size_t>(p.m)),
                        static_cast<std::size_t>(p.z * f));
}

struct FlatMismatch {
    Side side;
    std::int64_t f;
    std::int64_t x;
    std::int64_t enumerated;
    coeff_t predicted;
};

/// Compares flat-constrained enumeration counts with flat_refinement_series
/// for every f <= max_f and x <= max_x on both sides. Returns the first mismatch.
inline std::optional<FlatMismatch> check_flat_refinement(const Params& p, Mode mode,
                                                         std::int64_t max_f, std::int64_t max_x) {
    validate(p, mode);
    for (Side side : {Side::codomain, Side::domain}) {
        std::vector<Series> predicted;
        for (std::int64_t f = 0; f <= max_f; ++f)
            predicted.push_back(flat_refinement_series(side, mode, p, f, static_cast<std::size_t>(max_x)));
        for (std::int64_t x = 0; x <= max_x; ++x) {
            std::vector<std::int64_t> counts(static_cast<std::size_t>(max_f) + 1, 0);
            for_each_partition(side, mode, x, p, [&](const Partition& pi) {
                const std::int64_t f = flat_norm(pi, p) / p.z;
                if (f <= max_f) ++counts[static_cast<std::size_t>(f)];
            });
            for (std::int64_t f = 0; f <= max_f; ++f) {
                const auto fi = static_cast<std::size_t>(f);
                if (counts[fi] != predicted[fi][static_cast<std::size_t>(x)])
                    return FlatMismatch{side, f, x, counts[fi], predicted[fi][static_cast<std::size_t>(x)]};
            }
        }
    }
    return std::nullopt;
}

/// Refinement check that also cross-checks against flat-constrained enumeration
/// up to norm `crosscheck_x`. A mismatch throws CrossCheckFailure.
inline Verdict verify_refinement(Mode mode, const Params& p, std::int64_t f, std::size_t degree,
                                 std::int64_t crosscheck_x) {
    Verdict v = mode == Mode::main ? verify_refinement1(p.n, p.y, p.K, p.L, f, degree)
                                   : verify_refinement2(p.n, p.y, p.K, p.L, f, degree);
    if (crosscheck_x >= 0) {
        if (auto bad = check_flat_refinement(p, mode, f, crosscheck_x))
            throw CrossCheckFailure("flat-constrained count mismatch at f = " +
                                    std::to_string(bad->f) + ", x = " + std::to_string(bad->x));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Injection tables

struct InjectionRecord {
    std::optional<Partition> pre;
    Partition image;
    InjectionDiagnostics diagnostics;
};

struct InjectionTable {
    Params params;
    Mode mode = Mode::main;
    std::int64_t norm = 0;
    std::vector<InjectionRecord> records; ///< mapped rows first, then unmatched
    std::size_t mapped = 0;
    std::size_t unmatched = 0;
};

/// One record per codomain partition of norm x, each group in canonical order.
inline InjectionTable injection_table(const Params& p, std::int64_t x, Mode mode) {
    validate(p, mode);
    if (mode == Mode::gen) throw std::invalid_argument("tables exist only for main and dual mode");
    InjectionTable table{p, mode, x, {}, 0, 0};
    std::vector<InjectionRecord> unmatched;
    for_each_partition(Side::codomain, mode, x, p, [&](const Partition& p1) {
        Inversion inv = invert(mode, p1, p);
        InjectionRecord rec{std::move(inv.pre), p1, inv.diagnostics};
        if (rec.pre)
            table.records.push_back(std::move(rec));
        else
            unmatched.push_back(std::move(rec));
    });
    table.mapped = table.records.size();
    table.unmatched = unmatched.size();
    for (auto& rec : unmatched) table.records.push_back(std::move(rec));
    return table;
}

// ---------------------------------------------------------------------------
// Lecture hall partitions

enum class LectureHallKind { lhp, savage_odd, savage_even, dual_savage_even, dual_savage_odd };

struct LectureHallVariant {
    LectureHallKind kind = LectureHallKind::lhp;
    std::int64_t size = 1; ///< number of parts for lhp, L for the Savage forms
};

/// Number of entries b_1..b_len in the chain.
inline std::int64_t chain_length(LectureHallVariant v) {
    switch (v.kind) {
    case LectureHallKind::lhp: return v.size;
    case LectureHallKind::savage_odd:
    case LectureHallKind::savage_even: return 2 * v.size;
    case LectureHallKind::dual_savage_even:
    case LectureHallKind::dual_savage_odd: return 2 * v.size + 1;
    }
    return 0;
}

/// Product side under X = q^x_exp, Y = q^y_exp.
inline ProductSpec lecture_hall_product(LectureHallVariant v, std::int64_t x_exp, std::int64_t y_exp) {
    const std::int64_t X = x_exp, Y = y_exp, L = v.size;
    switch (v.kind) {
    case LectureHallKind::lhp: return {{{X, X + Y, L}}};
    case LectureHallKind::savage_odd: return {{{Y, 2 * X + 2 * Y, L}, {2 * X + 4 * Y, 4 * X + 4 * Y, L}}};
    case LectureHallKind::savage_even: return {{{X + 2 * Y, 2 * X + 2 * Y, L}, {2 * Y, 4 * X + 4 * Y, L}}};
    case LectureHallKind::dual_savage_even:
        return {{{Y, 2 * X + 2 * Y, L + 1}, {2 * X + 4 * Y, 4 * X + 4 * Y, L}}};
    case LectureHallKind::dual_savage_odd:
        return {{{X + 2 * Y, 2 * X + 2 * Y, L}, {2 * Y, 4 * X + 4 * Y, L + 1}}};
    }
    return {};
}

namespace detail {

struct ChainRules {
    std::vector<std::int64_t> weight;   ///< q-exponent per unit of b_k (index k-1)
    std::vector<bool> must_be_even;
};

inline ChainRules chain_rules(LectureHallVariant v, std::int64_t x_exp, std::int64_t y_exp) {
    const std::int64_t len = chain_length(v);
    ChainRules rules;
    for (std::int64_t k = 1; k <= len; ++k) {
        const bool odd = k % 2 == 1;
        bool on_x = false;
        bool even_required = false;
        switch (v.kind) {
        case LectureHallKind::lhp: on_x = (len - k) % 2 == 0; break;
        case LectureHallKind::savage_odd: on_x = odd; even_required = odd; break;
        case LectureHallKind::savage_even: on_x = odd; even_required = !odd; break;
        case LectureHallKind::dual_savage_even: on_x = !odd; even_required = !odd; break;
        case LectureHallKind::dual_savage_odd: on_x = !odd; even_required = odd; break;
        }
        rules.weight.push_back(on_x ? x_exp : y_exp);
        rules.must_be_even.push_back(even_required);
    }
    return rules;
}

} // namespace detail

/// Counts lecture hall chains b_len/len >= ... >= b_2/2 >= b_1 >= 0 (with the
/// variant's parity rule) by q-weight, truncated at `degree`.
///
/// Every weight is positive, so pruning on the running weight visits every
/// chain of weight <= degree; the truncated count is exact. `max_chains`
/// bounds the work and throws std::length_error when exceeded.
inline Series lecture_hall_series(LectureHallVariant v, std::int64_t x_exp, std::int64_t y_exp,
                                  std::size_t degree, std::size_t max_chains = 50'000'000) {
    if (x_exp < 1 || y_exp < 1) throw std::invalid_argument("X and Y exponents must be positive");
    if (v.size < 1) throw std::invalid_argument("lecture hall variant size must be positive");
    const auto rules = detail::chain_rules(v, x_exp, y_exp);
    const auto len = static_cast<std::size_t>(chain_length(v));
    const auto budget = static_cast<std::int64_t>(degree);
    std::vector<coeff_t> counts(degree + 1, 0);
    std::size_t visited = 0;

    // b_{k+1}/(k+1) >= b_k/k  <=>  b_{k+1} >= ceil((k+1) b_k / k)
    std::function<void(std::size_t, std::int64_t, std::int64_t)> walk =
        [&](std::size_t k, std::int64_t prev, std::int64_t used) {
            if (k == len) {
                if (++visited > max_chains)
                    throw std::length_error("lecture hall enumeration exceeded its chain budget");
                counts[static_cast<std::size_t>(used)] += 1;
                return;
            }
            const auto idx = static_cast<std::int64_t>(k); // b_{idx+1} is being chosen
            std::int64_t lo = idx == 0 ? 0 : ((idx + 1) * prev + idx - 1) / idx;
            const std::int64_t w = rules.weight[k];
            if (rules.must_be_even[k] && lo % 2 != 0) ++lo;
            const std::int64_t stride = rules.must_be_even[k] ? 2 : 1;
            for (std::int64_t b = lo; used + b * w <= budget; b += stride) walk(k + 1, b, used + b * w);
        };
    walk(0, 0, 0);
    return Series(std::move(counts));
}

/// Exact equality of the chain count and the product side. HOLDS means equal.
inline Verdict lecture_hall_check(LectureHallVariant v, std::int64_t x_exp, std::int64_t y_exp,
                                  std::size_t degree) {
    const Series chains = lecture_hall_series(v, x_exp, y_exp, degree);
    const Series product = expand_product(lecture_hall_product(v, x_exp, y_exp), degree);
    return compare_equal(chains, product);
}

// ---------------------------------------------------------------------------
// Exception search

struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

struct SearchRanges {
    IntRange K, L, m, n, y, z;
    bool coprime_only = false; ///< drop gcd(n, y) > 1 tuples instead of requiring a relaxation
};

struct SearchEntry {
    Params params;
    Verdict verdict;
};

struct SearchReport {
    std::vector<SearchEntry> entries;
    Relaxations relaxations;
    std::size_t degree = 0;
};

/// Runs verify_main on every tuple in the ranges, iterating K, L, m, n, y, z
/// with z fastest. A tuple needing a relaxation that was not granted throws
/// std::invalid_argument, as do empty ranges.
inline SearchReport search_exceptions(const SearchRanges& r, std::size_t degree, Relaxations relax,
                                      const VerifyOptions& opts = {0}) {
    for (const IntRange* ir : {&r.K, &r.L, &r.m, &r.n, &r.y, &r.z})
        if (ir->lo > ir->hi) throw std::invalid_argument("empty search range");
    SearchReport report{{}, relax, degree};
    for (std::int64_t K = r.K.lo; K <= r.K.hi; ++K)
    for (std::int64_t L = r.L.lo; L <= r.L.hi; ++L)
    for (std::int64_t m = r.m.lo; m <= r.m.hi; ++m)
    for (std::int64_t n = r.n.lo; n <= r.n.hi; ++n)
    for (std::int64_t y = r.y.lo; y <= r.y.hi; ++y)
    for (std::int64_t z = r.z.lo; z <= r.z.hi; ++z) {
        const Params p{K, L, m, n, y, z, std::nullopt, std::nullopt};
        if (r.coprime_only && needs_gcd_relaxation(p)) continue;
        if (needs_gcd_relaxation(p) && !relax.allow_gcd)
            throw std::invalid_argument("range contains gcd(n, y) > 1; the gcd relaxation is required");
        if (needs_order_relaxation(p) && !relax.allow_k_below_l)
            throw std::invalid_argument("range contains K < L; the K < L relaxation is required");
        report.entries.push_back({p, verify_main(p, degree, relax, opts)});
    }
    if (report.entries.empty()) throw std::invalid_argument("search ranges contain no tuples");
    return report;
}

} // namespace qineq
