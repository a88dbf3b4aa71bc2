#pragma once

/** @file partitions.hpp
 * Colored partitions over the four subscripted part families.
 *
 * A part is identified by its family and subscript, never by its numeric
 * value: (Z, 4) and (NYZ, 1) may both equal 10 and still count as different
 * parts.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "series.hpp"

namespace qineq {

/// Declaration order is the canonical part order used by enumeration.
enum class Family : std::uint8_t { Z, NZ, YZ, NYZ };

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::Z: return "Z";
    case Family::NZ: return "NZ";
    case Family::YZ: return "YZ";
    case Family::NYZ: return "NYZ";
    }
    return "?";
}

inline std::optional<Family> family_from_name(std::string_view s) {
    if (s == "Z") return Family::Z;
    if (s == "NZ") return Family::NZ;
    if (s == "YZ") return Family::YZ;
    if (s == "NYZ") return Family::NYZ;
    return std::nullopt;
}

struct Part {
    Family family = Family::Z;
    std::int64_t index = 1; ///< subscript, starting at 1

    friend auto operator<=>(const Part&, const Part&) = default;
};

enum class Side { codomain, domain };
enum class Mode { main, dual, gen };

/// Theorem parameters (K, L, m, n, y, z) with the optional (S, T) of the general form.
struct Params {
    std::int64_t K = 0;
    std::int64_t L = 0;
    std::int64_t m = 1;
    std::int64_t n = 1;
    std::int64_t y = 1;
    std::int64_t z = 1;
    std::optional<std::int64_t> S;
    std::optional<std::int64_t> T;

    friend bool operator==(const Params&, const Params&) = default;
};

/// Constraints a caller may explicitly drop when exploring outside the theorems.
struct Relaxations {
    bool allow_gcd = false;     ///< permit gcd(n, y) > 1
    bool allow_k_below_l = false; ///< permit K < L
};

inline bool needs_gcd_relaxation(const Params& p) { return std::gcd(p.n, p.y) != 1; }
inline bool needs_order_relaxation(const Params& p) { return p.K < p.L; }

/// Throws std::invalid_argument unless the parameters are admissible for `mode`.
inline void validate(const Params& p, Mode mode, Relaxations relax = {}) {
    if (p.m < 1 || p.n < 1 || p.y < 1 || p.z < 1)
        throw std::invalid_argument("m, n, y, z must be positive integers");
    if (p.K < 0 || p.L < 0) throw std::invalid_argument("K and L must be nonnegative");
    if (!relax.allow_gcd && needs_gcd_relaxation(p))
        throw std::invalid_argument("gcd(n, y) must be 1");
    if (!relax.allow_k_below_l && needs_order_relaxation(p))
        throw std::invalid_argument("K >= L is required");
    if (mode == Mode::gen) {
        if (!p.S || !p.T) throw std::invalid_argument("general mode needs S and T");
        if (*p.S < 0 || *p.T < 0) throw std::invalid_argument("S and T must be nonnegative");
        if (std::max(*p.S, *p.T) > p.K) throw std::invalid_argument("max(S, T) must not exceed K");
        if (std::min(*p.S, *p.T) > p.L) throw std::invalid_argument("min(S, T) must not exceed L");
    }
}

/// Numeric value of a part under the given parameters.
inline std::int64_t part_value(Part part, const Params& p) {
    const std::int64_t i = part.index - 1;
    switch (part.family) {
    case Family::Z: return p.z + i * p.m;
    case Family::YZ: return p.y * p.z + i * p.m;
    case Family::NZ: return p.n * p.z + i * p.n * p.m;
    case Family::NYZ: return p.n * p.y * p.z + i * p.n * p.m;
    }
    return 0;
}

/// Value of the part with its subscript reduced to 1.
inline std::int64_t flat_value(Family f, const Params& p) { return part_value(Part{f, 1}, p); }

/// Number of subscripts available to each family on one side of an inequality.
struct FamilyRange {
    Family family;
    std::int64_t count;
};

inline std::vector<FamilyRange> side_families(Side side, Mode mode, const Params& p) {
    if (side == Side::codomain) return {{Family::Z, p.K}, {Family::NYZ, p.L}};
    switch (mode) {
    case Mode::main: return {{Family::NZ, p.L}, {Family::YZ, p.K}};
    case Mode::dual: return {{Family::NZ, p.K}, {Family::YZ, p.L}};
    case Mode::gen:
        if (!p.S || !p.T) throw std::invalid_argument("general mode needs S and T");
        return {{Family::NZ, *p.T}, {Family::YZ, *p.S}};
    }
    return {};
}

/// The product whose expansion counts the partitions of one side.
inline ProductSpec side_product(Side side, Mode mode, const Params& p) {
    ProductSpec spec;
    for (const auto& fr : side_families(side, mode, p)) {
        const bool wide = fr.family == Family::NZ || fr.family == Family::NYZ;
        spec.factors.push_back({flat_value(fr.family, p), wide ? p.n * p.m : p.m, fr.count});
    }
    return spec;
}

/// Quotient and remainder of a multiplicity by n.
struct QR {
    std::int64_t Q = 0;
    std::int64_t R = 0;
    friend bool operator==(const QR&, const QR&) = default;
};

inline QR nu_decompose(std::int64_t count, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("nu_decompose: n must be positive");
    if (count < 0) throw std::invalid_argument("nu_decompose: count must be nonnegative");
    return {count / n, count % n};
}

/// A finite multiset of colored parts.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<std::pair<const Part, std::int64_t>> init) {
        for (const auto& [part, mult] : init) add(part, mult);
    }

    /// Multiplicity nu(part); zero when absent.
    std::int64_t nu(Part part) const {
        auto it = mult_.find(part);
        return it == mult_.end() ? 0 : it->second;
    }
    std::int64_t nu(Family f, std::int64_t index) const { return nu(Part{f, index}); }

    void set(Part part, std::int64_t mult) {
        if (mult < 0) throw std::invalid_argument("negative multiplicity");
        if (part.index < 1) throw std::invalid_argument("part subscripts start at 1");
        if (mult == 0)
            mult_.erase(part);
        else
            mult_[part] = mult;
    }

    void add(Part part, std::int64_t mult) { set(part, nu(part) + mult); }

    bool empty() const noexcept { return mult_.empty(); }
    std::size_t distinct_parts() const noexcept { return mult_.size(); }

    /// Parts in canonical order with positive multiplicities.
    const std::map<Part, std::int64_t>& multiplicities() const noexcept { return mult_; }

    /// Total multiplicity of one family.
    std::int64_t family_count(Family f) const {
        std::int64_t s = 0;
        for (const auto& [part, mult] : mult_)
            if (part.family == f) s += mult;
        return s;
    }

    std::int64_t max_index(Family f) const {
        std::int64_t hi = 0;
        for (const auto& [part, mult] : mult_)
            if (part.family == f) hi = std::max(hi, part.index);
        return hi;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::map<Part, std::int64_t> mult_;
};

/// Norm |pi|. Subscripts are checked against the largest range any mode allows.
inline std::int64_t norm(const Partition& pi, const Params& p) {
    const std::int64_t wide = std::max(p.K, p.L);
    std::int64_t total = 0;
    for (const auto& [part, mult] : pi.multiplicities()) {
        std::int64_t limit = 0;
        switch (part.family) {
        case Family::Z: limit = p.K; break;
        case Family::NYZ: limit = p.L; break;
        case Family::YZ:
        case Family::NZ: limit = wide; break;
        }
        if (part.index > limit)
            throw std::out_of_range("part " + std::string(family_name(part.family)) + "_" +
                                    std::to_string(part.index) + " is out of range");
        total += mult * part_value(part, p);
    }
    return total;
}

/// Norm after reducing every subscript to 1.
inline std::int64_t flat_norm(const Partition& pi, const Params& p) {
    std::int64_t total = 0;
    for (const auto& [part, mult] : pi.multiplicities()) total += mult * flat_value(part.family, p);
    return total;
}

/// F(pi): every multiplicity moved onto the subscript-1 part of its family.
inline Partition flatten(const Partition& pi) {
    Partition out;
    for (const auto& [part, mult] : pi.multiplicities()) out.add(Part{part.family, 1}, mult);
    return out;
}

/// True when every part belongs to the given side's families and index ranges.
inline bool belongs_to(const Partition& pi, Side side, Mode mode, const Params& p) {
    const auto ranges = side_families(side, mode, p);
    for (const auto& [part, mult] : pi.multiplicities()) {
        auto it = std::find_if(ranges.begin(), ranges.end(),
                               [&](const FamilyRange& r) { return r.family == part.family; });
        if (it == ranges.end() || part.index < 1 || part.index > it->count) return false;
    }
    return true;
}

/// Parts available on one side, in canonical order.
inline std::vector<Part> side_parts(Side side, Mode mode, const Params& p) {
    std::vector<Part> parts;
    for (const auto& fr : side_families(side, mode, p))
        for (std::int64_t i = 1; i <= fr.count; ++i) parts.push_back(Part{fr.family, i});
    std::sort(parts.begin(), parts.end());
    return parts;
}

namespace detail {

/// Backtracking over parts in canonical order. Multiplicities are tried in
/// ascending order, so the callback sees partitions in lexicographic order of
/// their multiplicity vectors.
class Enumerator {
public:
    Enumerator(std::vector<Part> parts, const Params& p, std::int64_t target)
        : parts_(std::move(parts)), target_(target) {
        for (const auto& part : parts_) values_.push_back(part_value(part, p));
        // reachable_[i][r]: parts i.. can sum to exactly r
        const auto width = static_cast<std::size_t>(target_) + 1;
        reachable_.assign(parts_.size() + 1, std::vector<char>(width, 0));
        reachable_[parts_.size()][0] = 1;
        for (std::size_t i = parts_.size(); i-- > 0;) {
            const auto v = static_cast<std::size_t>(values_[i]);
            for (std::size_t r = 0; r < width; ++r)
                reachable_[i][r] = reachable_[i + 1][r] || (r >= v && reachable_[i][r - v]);
        }
    }

    void run(const std::function<void(const Partition&)>& emit) {
        if (!reachable_[0][static_cast<std::size_t>(target_)]) return;
        Partition current;
        recurse(0, target_, current, emit);
    }

private:
    void recurse(std::size_t i, std::int64_t remaining, Partition& current,
                 const std::function<void(const Partition&)>& emit) {
        if (i == parts_.size()) {
            emit(current);
            return;
        }
        const std::int64_t v = values_[i];
        for (std::int64_t c = 0; c * v <= remaining; ++c) {
            const auto rest = static_cast<std::size_t>(remaining - c * v);
            if (!reachable_[i + 1][rest]) continue;
            current.set(parts_[i], c);
            recurse(i + 1, remaining - c * v, current, emit);
        }
        current.set(parts_[i], 0);
    }

    std::vector<Part> parts_;
    std::vector<std::int64_t> values_;
    std::int64_t target_;
    std::vector<std::vector<char>> reachable_;
};

} // namespace detail

/// Calls `emit` for every partition of norm x on the given side, in canonical order.
inline void for_each_partition(Side side, Mode mode, std::int64_t x, const Params& p,
                               const std::function<void(const Partition&)>& emit) {
    if (x < 0) throw std::invalid_argument("norm must be nonnegative");
    validate(p, mode, Relaxations{true, true});
    detail::Enumerator(side_parts(side, mode, p), p, x).run(emit);
}

/// All partitions of norm x on the given side, each exactly once, in canonical order.
///
/// Only the shape of the parameters is checked here; gcd and K >= L are the
/// caller's business (see validate()).
inline std::vector<Partition> enumerate(Side side, Mode mode, std::int64_t x, const Params& p) {
    std::vector<Partition> out;
    for_each_partition(side, mode, x, p, [&](const Partition& pi) { out.push_back(pi); });
    return out;
}

/// The subset of enumerate() whose flattened norm equals z*f.
inline std::vector<Partition> enumerate_flat_constrained(Side side, Mode mode, std::int64_t x,
                                                         std::int64_t f, const Params& p) {
    if (f < 0) throw std::invalid_argument("flat parameter must be nonnegative");
    std::vector<Partition> out;
    for_each_partition(side, mode, x, p, [&](const Partition& pi) {
        if (flat_norm(pi, p) == p.z * f) out.push_back(pi);
    });
    return out;
}

} // namespace qineq
