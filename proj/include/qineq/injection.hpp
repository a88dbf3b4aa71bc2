#pragma once

/** @file injection.hpp
 * Norm-preserving injections between the two sides of the product
 * inequalities, their inverses, and the diagnostics that decide whether a
 * codomain partition lies in the image.
 *
 * Notation used below: for a part p, nu(p) is its multiplicity and
 * nu(p) = n*Q(p) + R(p) with 0 <= R(p) < n.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "partitions.hpp"

namespace qineq {

/// Multiplicative inverse of y modulo n, in [0, n-1]. For n = 1 this is 0.
inline std::int64_t mod_inverse(std::int64_t y, std::int64_t n) {
    if (y < 1 || n < 1) throw std::invalid_argument("mod_inverse: arguments must be positive");
    if (std::gcd(y, n) != 1) throw std::invalid_argument("mod_inverse: gcd(y, n) must be 1");
    if (n == 1) return 0;
    // Extended Euclid on (y mod n, n).
    std::int64_t old_r = y % n, r = n;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    return ((old_s % n) + n) % n;
}

/// mu and its decomposition mu = a*n + b*y with b = C in [0, n-1].
///
/// A and B are the correction sums subtracted from nu(z_1); the dual
/// injection has no B term, so B is 0 there.
struct InjectionDiagnostics {
    std::int64_t mu = 0;
    std::int64_t A = 0;
    std::int64_t B = 0;
    std::int64_t C = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend bool operator==(const InjectionDiagnostics&, const InjectionDiagnostics&) = default;
};

/// Result of running an inverse map: the pre-image when there is one.
struct Inversion {
    std::optional<Partition> pre;
    InjectionDiagnostics diagnostics;

    bool member() const noexcept { return pre.has_value(); }
};

namespace detail {

inline std::int64_t floor_mod(std::int64_t v, std::int64_t n) { return ((v % n) + n) % n; }

inline InjectionDiagnostics decompose_mu(std::int64_t mu, std::int64_t A, std::int64_t B,
                                         const Params& p) {
    InjectionDiagnostics d;
    d.mu = mu;
    d.A = A;
    d.B = B;
    d.C = floor_mod(mod_inverse(p.y, p.n) * floor_mod(mu, p.n), p.n);
    d.b = d.C;
    // mu - y*C is divisible by n by construction of C.
    d.a = (mu - p.y * d.C) / p.n;
    return d;
}

inline void require_domain(const Partition& pi, Mode mode, const Params& p) {
    if (!belongs_to(pi, Side::domain, mode, p))
        throw std::invalid_argument("partition uses parts outside the domain part set");
}

inline void require_codomain(const Partition& pi, Mode mode, const Params& p) {
    if (!belongs_to(pi, Side::codomain, mode, p))
        throw std::invalid_argument("partition uses parts outside the codomain part set");
}

inline Part z(std::int64_t i) { return {Family::Z, i}; }
inline Part yz(std::int64_t i) { return {Family::YZ, i}; }
inline Part nz(std::int64_t i) { return {Family::NZ, i}; }
inline Part nyz(std::int64_t i) { return {Family::NYZ, i}; }

} // namespace detail

/// Diagnostics of a codomain partition with respect to the main injection.
inline InjectionDiagnostics main_diagnostics(const Partition& p1, const Params& p) {
    using namespace detail;
    std::int64_t A = 0, B = 0;
    for (std::int64_t j = 2; j <= p.L; ++j) A += nu_decompose(p1.nu(z(j)), p.n).R;
    // z_1 never enters B, which matters when L = 0.
    for (std::int64_t j = std::max<std::int64_t>(p.L + 1, 2); j <= p.K; ++j) B += p1.nu(z(j));
    const std::int64_t mu = p1.nu(z(1)) - (p.y - 1) * (A + B);
    return decompose_mu(mu, A, B, p);
}

/// The main injection pi_2 -> pi_1.
inline Partition inject_main(const Partition& p2, const Params& p) {
    using namespace detail;
    validate(p, Mode::main);
    require_domain(p2, Mode::main, p);
    Partition p1;
    if (p.L == 0) {
        std::int64_t rest = 0;
        for (std::int64_t i = 2; i <= p.K; ++i) {
            p1.set(z(i), p2.nu(yz(i)));
            rest += p2.nu(yz(i));
        }
        if (p.K >= 1) p1.set(z(1), p.y * p2.nu(yz(1)) + (p.y - 1) * rest);
        return p1;
    }
    std::int64_t A = 0, B = 0;
    for (std::int64_t i = 1; i <= p.L; ++i) {
        const QR qr = nu_decompose(p2.nu(yz(i)), p.n);
        p1.set(nyz(i), qr.Q);
        if (i > 1) {
            p1.set(z(i), p.n * p2.nu(nz(i)) + qr.R);
            A += qr.R;
        }
    }
    for (std::int64_t i = p.L + 1; i <= p.K; ++i) {
        p1.set(z(i), p2.nu(yz(i)));
        B += p2.nu(yz(i));
    }
    const std::int64_t r1 = nu_decompose(p2.nu(yz(1)), p.n).R;
    p1.set(z(1), p.n * p2.nu(nz(1)) + p.y * r1 + (p.y - 1) * (A + B));
    return p1;
}

/// Inverse of the main injection, with membership diagnostics for every pi_1.
///
/// For L = 0 the pre-image needs nu((yz)_1) = mu / y, so membership requires
/// mu >= 0 and y | mu. For L > 0 membership is a >= 0.
inline Inversion invert_main(const Partition& p1, const Params& p) {
    using namespace detail;
    validate(p, Mode::main);
    require_codomain(p1, Mode::main, p);
    Inversion out;
    out.diagnostics = main_diagnostics(p1, p);
    const auto& d = out.diagnostics;

    if (p.L == 0) {
        if (d.mu < 0 || d.mu % p.y != 0) return out;
        Partition p2;
        for (std::int64_t i = 2; i <= p.K; ++i) p2.set(yz(i), p1.nu(z(i)));
        if (p.K >= 1) p2.set(yz(1), d.mu / p.y);
        out.pre = std::move(p2);
        return out;
    }

    if (d.a < 0) return out;
    Partition p2;
    for (std::int64_t i = p.L + 1; i <= p.K; ++i) p2.set(yz(i), p1.nu(z(i)));
    for (std::int64_t i = 2; i <= p.L; ++i) {
        const QR qr = nu_decompose(p1.nu(z(i)), p.n);
        p2.set(yz(i), p.n * p1.nu(nyz(i)) + qr.R);
        p2.set(nz(i), qr.Q);
    }
    p2.set(yz(1), p.n * p1.nu(nyz(1)) + d.C);
    p2.set(nz(1), d.a);
    out.pre = std::move(p2);
    return out;
}

/// Diagnostics of a codomain partition with respect to the dual injection (B = 0).
inline InjectionDiagnostics dual_diagnostics(const Partition& p1, const Params& p) {
    using namespace detail;
    std::int64_t A = 0;
    for (std::int64_t j = 2; j <= p.L; ++j) A += nu_decompose(p1.nu(z(j)), p.n).R;
    const std::int64_t mu = p1.nu(z(1)) - (p.y - 1) * A;
    return decompose_mu(mu, A, 0, p);
}

/// The dual injection, whose domain has (yz)_1..(yz)_L and (nz)_1..(nz)_K.
inline Partition inject_dual(const Partition& p2, const Params& p) {
    using namespace detail;
    validate(p, Mode::dual);
    require_domain(p2, Mode::dual, p);
    Partition p1;
    if (p.L == 0) {
        for (std::int64_t i = 1; i <= p.K; ++i) p1.set(z(i), p.n * p2.nu(nz(i)));
        return p1;
    }
    std::int64_t A = 0;
    for (std::int64_t i = 1; i <= p.L; ++i) {
        const QR qr = nu_decompose(p2.nu(yz(i)), p.n);
        p1.set(nyz(i), qr.Q);
        if (i > 1) {
            p1.set(z(i), p.n * p2.nu(nz(i)) + qr.R);
            A += qr.R;
        }
    }
    for (std::int64_t i = p.L + 1; i <= p.K; ++i) p1.set(z(i), p.n * p2.nu(nz(i)));
    const std::int64_t r1 = nu_decompose(p2.nu(yz(1)), p.n).R;
    p1.set(z(1), p.n * p2.nu(nz(1)) + p.y * r1 + (p.y - 1) * A);
    return p1;
}

/// Inverse of the dual injection.
///
/// Besides a >= 0, membership needs n | nu(z_i) for every i > L, since
/// those multiplicities only ever come from n copies of (nz)_i.
inline Inversion invert_dual(const Partition& p1, const Params& p) {
    using namespace detail;
    validate(p, Mode::dual);
    require_codomain(p1, Mode::dual, p);
    Inversion out;
    out.diagnostics = dual_diagnostics(p1, p);
    const auto& d = out.diagnostics;

    const std::int64_t first_free = p.L == 0 ? 1 : p.L + 1;
    for (std::int64_t i = first_free; i <= p.K; ++i)
        if (nu_decompose(p1.nu(z(i)), p.n).R != 0) return out;

    Partition p2;
    if (p.L == 0) {
        for (std::int64_t i = 1; i <= p.K; ++i) p2.set(nz(i), p1.nu(z(i)) / p.n);
        out.pre = std::move(p2);
        return out;
    }

    if (d.a < 0) return out;
    for (std::int64_t i = 2; i <= p.K; ++i) {
        const QR qr = nu_decompose(p1.nu(z(i)), p.n);
        p2.set(nz(i), qr.Q);
        if (i <= p.L) p2.set(yz(i), p.n * p1.nu(nyz(i)) + qr.R);
    }
    p2.set(yz(1), p.n * p1.nu(nyz(1)) + d.C);
    p2.set(nz(1), d.a);
    out.pre = std::move(p2);
    return out;
}

/// Dispatch on mode; general mode has no injection.
inline Partition inject(Mode mode, const Partition& p2, const Params& p) {
    if (mode == Mode::main) return inject_main(p2, p);
    if (mode == Mode::dual) return inject_dual(p2, p);
    throw std::invalid_argument("no injection exists for the general (S, T) form");
}

inline Inversion invert(Mode mode, const Partition& p1, const Params& p) {
    if (mode == Mode::main) return invert_main(p1, p);
    if (mode == Mode::dual) return invert_dual(p1, p);
    throw std::invalid_argument("no injection exists for the general (S, T) form");
}

} // namespace qineq
