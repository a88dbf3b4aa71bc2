#pragma once

/** @file series.hpp
 * Truncated q-series with exact integer coefficients.
 *
 * Every Series carries its truncation degree N and holds exactly N+1
 * coefficients. Arithmetic is done in 64-bit signed integers with overflow
 * detection; an overflow throws std::overflow_error instead of wrapping.
 */

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qineq {

using coeff_t = std::int64_t;

namespace detail {

inline coeff_t checked_add(coeff_t a, coeff_t b) {
    coeff_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("series coefficient overflow in addition");
    return r;
}

inline coeff_t checked_sub(coeff_t a, coeff_t b) {
    coeff_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("series coefficient overflow in subtraction");
    return r;
}

inline coeff_t checked_mul(coeff_t a, coeff_t b) {
    coeff_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("series coefficient overflow in multiplication");
    return r;
}

} // namespace detail

class Series {
public:
    /// Zero series truncated at degree N.
    explicit Series(std::size_t degree) : coeffs_(degree + 1, 0) {}

    /// Takes ownership of coefficients 0..N; the vector must be non-empty.
    explicit Series(std::vector<coeff_t> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw std::invalid_argument("a series needs at least the constant coefficient");
    }

    Series(std::initializer_list<coeff_t> coeffs) : Series(std::vector<coeff_t>(coeffs)) {}

    static Series one(std::size_t degree) {
        Series s(degree);
        s.coeffs_[0] = 1;
        return s;
    }

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    coeff_t operator[](std::size_t x) const { return coeffs_.at(x); }
    std::span<const coeff_t> coefficients() const noexcept { return coeffs_; }

    /// Value at q=1, i.e. the sum of the stored coefficients.
    coeff_t sum() const {
        coeff_t s = 0;
        for (coeff_t c : coeffs_) s = detail::checked_add(s, c);
        return s;
    }

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<coeff_t> coeffs_;
};

namespace detail {

inline void require_same_degree(const Series& a, const Series& b, const char* op) {
    if (a.degree() != b.degree())
        throw std::invalid_argument(std::string(op) + ": truncation degrees differ (" +
                                    std::to_string(a.degree()) + " vs " +
                                    std::to_string(b.degree()) + ")");
}

} // namespace detail

/// Cauchy product truncated at the common degree.
inline Series series_mul(const Series& a, const Series& b) {
    detail::require_same_degree(a, b, "series_mul");
    const std::size_t n = a.degree();
    std::vector<coeff_t> out(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (b[j] == 0) continue;
            out[i + j] = detail::checked_add(out[i + j], detail::checked_mul(a[i], b[j]));
        }
    }
    return Series(std::move(out));
}

inline Series series_add(const Series& a, const Series& b) {
    detail::require_same_degree(a, b, "series_add");
    std::vector<coeff_t> out(a.degree() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::checked_add(a[i], b[i]);
    return Series(std::move(out));
}

inline Series series_sub(const Series& a, const Series& b) {
    detail::require_same_degree(a, b, "series_sub");
    std::vector<coeff_t> out(a.degree() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::checked_sub(a[i], b[i]);
    return Series(std::move(out));
}

/// Multiplies by q^shift, dropping everything past the truncation degree.
inline Series series_shift(const Series& a, std::size_t shift) {
    std::vector<coeff_t> out(a.degree() + 1, 0);
    for (std::size_t i = 0; i + shift <= a.degree(); ++i) out[i + shift] = a[i];
    return Series(std::move(out));
}

/// Substitutes q -> q^step, keeping the truncation degree.
inline Series series_dilate(const Series& a, std::size_t step) {
    if (step == 0) throw std::invalid_argument("series_dilate: step must be positive");
    std::vector<coeff_t> out(a.degree() + 1, 0);
    for (std::size_t i = 0; i * step <= a.degree(); ++i) out[i * step] = a[i];
    return Series(std::move(out));
}

/// One factor 1/(q^base; q^step)_length, i.e. parts base, base+step, ...
struct Progression {
    std::int64_t base = 1;
    std::int64_t step = 1;
    std::int64_t length = 0;

    friend bool operator==(const Progression&, const Progression&) = default;
};

/// Product of reciprocal q-Pochhammer factors.
struct ProductSpec {
    std::vector<Progression> factors;

    void validate() const {
        for (const auto& f : factors) {
            if (f.base < 1 || f.step < 1 || f.length < 0)
                throw std::invalid_argument("product factor needs base >= 1, step >= 1, length >= 0");
        }
    }

    /// Every part value, in factor order. Parts from different factors stay separate.
    std::vector<std::int64_t> parts() const {
        std::vector<std::int64_t> out;
        for (const auto& f : factors)
            for (std::int64_t j = 0; j < f.length; ++j) out.push_back(f.base + j * f.step);
        return out;
    }

    friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
};

/// Length at which (q^a; q^step)_L agrees with the infinite product up to q^N.
inline std::int64_t stabilized_length(std::int64_t step, std::size_t degree) {
    if (step < 1) throw std::invalid_argument("stabilized_length: step must be positive");
    return static_cast<std::int64_t>(degree) / step + 1;
}

/// Expands the product as a series truncated at `degree`.
///
/// Each part p contributes the factor 1/(1-q^p), applied in place by the
/// running-sum update c[x] += c[x-p].
inline Series expand_product(const ProductSpec& spec, std::size_t degree) {
    spec.validate();
    std::vector<coeff_t> c(degree + 1, 0);
    c[0] = 1;
    for (std::int64_t p : spec.parts()) {
        if (static_cast<std::uint64_t>(p) > degree) continue;
        const auto step = static_cast<std::size_t>(p);
        for (std::size_t x = step; x <= degree; ++x) c[x] = detail::checked_add(c[x], c[x - step]);
    }
    return Series(std::move(c));
}

/// Gaussian binomial [top choose bottom] in q^step, truncated at `degree`.
///
/// Built row by row from [t, k] = [t-1, k-1] + q^(step*k) [t-1, k].
inline Series qbinom(std::int64_t top, std::int64_t bottom, std::int64_t step, std::size_t degree) {
    if (top < 0 || bottom < 0) throw std::invalid_argument("qbinom: arguments must be nonnegative");
    if (bottom > top) throw std::invalid_argument("qbinom: bottom exceeds top");
    if (step < 1) throw std::invalid_argument("qbinom: step must be positive");
    // Symmetry keeps the row short.
    const std::int64_t k_max = std::min(bottom, top - bottom);
    const auto width = static_cast<std::size_t>(k_max) + 1;
    std::vector<std::vector<coeff_t>> row(width, std::vector<coeff_t>(degree + 1, 0));
    row[0][0] = 1;
    for (std::int64_t t = 1; t <= top; ++t) {
        const std::int64_t hi = std::min<std::int64_t>(t, k_max);
        for (std::int64_t k = hi; k >= 1; --k) {
            auto& cur = row[static_cast<std::size_t>(k)];
            const auto& prev = row[static_cast<std::size_t>(k - 1)];
            // cur holds [t-1, k]; shift it by step*k, then add [t-1, k-1].
            const auto shift = static_cast<std::uint64_t>(step) * static_cast<std::uint64_t>(k);
            for (std::size_t x = degree + 1; x-- > 0;) {
                coeff_t shifted = (x >= shift) ? cur[x - shift] : 0;
                cur[x] = detail::checked_add(shifted, prev[x]);
            }
        }
    }
    return Series(std::move(row[static_cast<std::size_t>(k_max)]));
}

/// Outcome of a coefficientwise comparison.
struct Dominance {
    bool holds = true;
    std::size_t exponent = 0; ///< smallest x with a_x < b_x when !holds
    coeff_t lhs = 0;
    coeff_t rhs = 0;

    explicit operator bool() const noexcept { return holds; }
};

/// Checks a_x >= b_x for every x up to the shared degree.
inline Dominance dominance(const Series& a, const Series& b) {
    detail::require_same_degree(a, b, "dominance");
    for (std::size_t x = 0; x <= a.degree(); ++x)
        if (a[x] < b[x]) return Dominance{false, x, a[x], b[x]};
    return Dominance{};
}

} // namespace qineq
