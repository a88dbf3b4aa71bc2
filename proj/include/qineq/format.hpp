#pragma once

/** @file format.hpp
 * Text renderings of series, partitions, injection tables, verdicts and
 * search reports: plain, csv, markdown, latex and json.
 *
 * csv and json output depends only on the inputs, so identical runs give
 * byte-identical files.
 */

#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "partitions.hpp"
#include "series.hpp"
#include "verify.hpp"

namespace qineq {

enum class OutputFormat { plain, csv, markdown, latex, json };

inline std::optional<OutputFormat> parse_format(std::string_view s) {
    if (s == "plain") return OutputFormat::plain;
    if (s == "csv") return OutputFormat::csv;
    if (s == "markdown" || s == "md") return OutputFormat::markdown;
    if (s == "latex" || s == "tex") return OutputFormat::latex;
    if (s == "json") return OutputFormat::json;
    return std::nullopt;
}

inline std::string_view mode_name(Mode m) {
    switch (m) {
    case Mode::main: return "main";
    case Mode::dual: return "dual";
    case Mode::gen: return "gen";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Partitions

/// Subscript notation "5_1^4,2_2^1": flat value, subscript, multiplicity.
/// The flat value plus subscript identifies the part even when numeric values collide.
inline std::string subscript_string(const Partition& pi, const Params& p) {
    if (pi.empty()) return "()";
    std::string out;
    for (const auto& [part, mult] : pi.multiplicities()) {
        if (!out.empty()) out += ',';
        out += std::to_string(flat_value(part.family, p)) + '_' + std::to_string(part.index) + '^' +
               std::to_string(mult);
    }
    return out;
}

/// LaTeX variant of subscript_string, e.g. \langle 5_{1}^{4}, 2_{2}^{1} \rangle.
inline std::string subscript_latex(const Partition& pi, const Params& p) {
    std::string out = "\\langle ";
    bool first = true;
    for (const auto& [part, mult] : pi.multiplicities()) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(flat_value(part.family, p)) + "_{" + std::to_string(part.index) +
               "}^{" + std::to_string(mult) + "}";
    }
    return out + " \\rangle";
}

/// csv cell: semicolon-joined family:index:mult triples; the empty partition is "".
inline std::string triples_string(const Partition& pi) {
    std::string out;
    for (const auto& [part, mult] : pi.multiplicities()) {
        if (!out.empty()) out += ';';
        out += std::string(family_name(part.family)) + ':' + std::to_string(part.index) + ':' +
               std::to_string(mult);
    }
    return out;
}

/// Inverse of triples_string. Throws std::invalid_argument on malformed input.
inline Partition parse_triples(std::string_view s) {
    Partition pi;
    while (!s.empty()) {
        const auto semi = s.find(';');
        const std::string_view item = s.substr(0, semi);
        s = semi == std::string_view::npos ? std::string_view{} : s.substr(semi + 1);
        const auto c1 = item.find(':');
        const auto c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
        if (c2 == std::string_view::npos) throw std::invalid_argument("malformed part triple");
        const auto fam = family_from_name(item.substr(0, c1));
        if (!fam) throw std::invalid_argument("unknown part family");
        const std::int64_t index = std::stoll(std::string(item.substr(c1 + 1, c2 - c1 - 1)));
        const std::int64_t mult = std::stoll(std::string(item.substr(c2 + 1)));
        pi.add(Part{*fam, index}, mult);
    }
    return pi;
}

inline nlohmann::json to_json(const Params& p) {
    nlohmann::json j{{"K", p.K}, {"L", p.L}, {"m", p.m}, {"n", p.n}, {"y", p.y}, {"z", p.z}};
    if (p.S) j["S"] = *p.S;
    if (p.T) j["T"] = *p.T;
    return j;
}

inline nlohmann::json to_json(const Partition& pi, const Params& p) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& [part, mult] : pi.multiplicities())
        parts.push_back({{"family", family_name(part.family)},
                         {"index", part.index},
                         {"mult", mult},
                         {"value", part_value(part, p)}});
    return {{"norm", norm(pi, p)}, {"parts", parts}};
}

// ---------------------------------------------------------------------------
// Series

inline std::string render_series(const Series& s, OutputFormat fmt, std::string_view label = "") {
    std::ostringstream os;
    const auto c = s.coefficients();
    switch (fmt) {
    case OutputFormat::plain:
        for (std::size_t x = 0; x < c.size(); ++x) os << x << ' ' << c[x] << '\n';
        break;
    case OutputFormat::csv:
        os << "exponent,coefficient\n";
        for (std::size_t x = 0; x < c.size(); ++x) os << x << ',' << c[x] << '\n';
        break;
    case OutputFormat::markdown:
        os << "| x | coefficient |\n|---:|---:|\n";
        for (std::size_t x = 0; x < c.size(); ++x) os << "| " << x << " | " << c[x] << " |\n";
        break;
    case OutputFormat::latex:
        os << "\\begin{tabular}{rr}\n\\hline\n$x$ & coefficient\\\\\n\\hline\n";
        for (std::size_t x = 0; x < c.size(); ++x) os << x << " & " << c[x] << "\\\\\n";
        os << "\\hline\n\\end{tabular}\n";
        break;
    case OutputFormat::json: {
        nlohmann::json j{{"degree", s.degree()},
                         {"coefficients", std::vector<coeff_t>(c.begin(), c.end())}};
        if (!label.empty()) j["side"] = label;
        os << j.dump() << '\n';
        break;
    }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Injection tables

inline nlohmann::json to_json(const InjectionTable& t) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : t.records) {
        records.push_back({{"pre", r.pre ? to_json(*r.pre, t.params) : nlohmann::json(nullptr)},
                           {"image", to_json(r.image, t.params)},
                           {"mu", r.diagnostics.mu},
                           {"a", r.diagnostics.a},
                           {"b", r.diagnostics.b}});
    }
    return {{"params", to_json(t.params)}, {"records", records}};
}

inline std::string render_table(const InjectionTable& t, OutputFormat fmt) {
    std::ostringstream os;
    const Params& p = t.params;
    auto pre_text = [&](const InjectionRecord& r) {
        return r.pre ? subscript_string(*r.pre, p) : std::string{};
    };
    switch (fmt) {
    case OutputFormat::plain: {
        std::size_t w1 = 4, w2 = 4;
        for (const auto& r : t.records) {
            w1 = std::max(w1, pre_text(r).size());
            w2 = std::max(w2, subscript_string(r.image, p).size());
        }
        os << std::left << std::setw(static_cast<int>(w1)) << "pi_2" << "  ->  "
           << std::setw(static_cast<int>(w2)) << "pi_1" << std::right << std::setw(6) << "mu"
           << std::setw(6) << "a" << std::setw(6) << "b" << '\n';
        for (const auto& r : t.records) {
            os << std::left << std::setw(static_cast<int>(w1)) << pre_text(r)
               << (r.pre ? "  ->  " : "      ") << std::setw(static_cast<int>(w2))
               << subscript_string(r.image, p) << std::right << std::setw(6) << r.diagnostics.mu
               << std::setw(6) << r.diagnostics.a << std::setw(6) << r.diagnostics.b << '\n';
        }
        os << "mapped: " << t.mapped << ", unmatched: " << t.unmatched << '\n';
        break;
    }
    case OutputFormat::csv:
        os << "pre,image,mu,a,b\n";
        for (const auto& r : t.records)
            os << (r.pre ? triples_string(*r.pre) : "") << ',' << triples_string(r.image) << ','
               << r.diagnostics.mu << ',' << r.diagnostics.a << ',' << r.diagnostics.b << '\n';
        break;
    case OutputFormat::markdown:
        os << "| pi_2 | pi_1 | mu | a | b |\n|---|---|---:|---:|---:|\n";
        for (const auto& r : t.records)
            os << "| " << pre_text(r) << " | " << subscript_string(r.image, p) << " | "
               << r.diagnostics.mu << " | " << r.diagnostics.a << " | " << r.diagnostics.b << " |\n";
        break;
    case OutputFormat::latex:
        os << "\\begin{tabular}{c@{\\ $\\mapsto$\\ }cr@{$\\ \\ {}={}$}r@{$n + {}$}r@{$y$}}\n\\hline\n"
           << "$\\pi_2$ & $\\pi_1$ & $\\mu(\\pi_1)$ & $a$ & $b$\\\\\n\\hline\n";
        for (const auto& r : t.records)
            os << (r.pre ? "$" + subscript_latex(*r.pre, p) + "$" : std::string{}) << " & $"
               << subscript_latex(r.image, p) << "$ & $" << r.diagnostics.mu << "$ & $"
               << r.diagnostics.a << "$ & $" << r.diagnostics.b << "$\\\\\n";
        os << "\\hline\n\\end{tabular}\n";
        break;
    case OutputFormat::json:
        os << to_json(t).dump() << '\n';
        break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Verdicts and search reports

inline nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j{{"status", status_name(v.status)},
                     {"checked_degree", v.checked_degree},
                     {"violations", v.violation_count}};
    if (v.first_violation)
        j["first_violation"] = {{"exponent", v.first_violation->exponent},
                                {"lhs", v.first_violation->lhs},
                                {"rhs", v.first_violation->rhs}};
    else
        j["first_violation"] = nullptr;
    if (v.injection_checked_through) j["injection_checked_through"] = *v.injection_checked_through;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline std::string render_verdict(const Verdict& v, OutputFormat fmt) {
    if (fmt == OutputFormat::json) return to_json(v).dump() + '\n';
    std::ostringstream os;
    os << status_name(v.status) << " (checked through degree " << v.checked_degree << ")\n";
    if (v.first_violation)
        os << "first violation at q^" << v.first_violation->exponent << ": lhs "
           << v.first_violation->lhs << " < rhs " << v.first_violation->rhs << " ("
           << v.violation_count << " violating exponents)\n";
    if (v.injection_checked_through)
        os << "injection cross-checked through norm " << *v.injection_checked_through << '\n';
    if (!v.note.empty()) os << "note: " << v.note << '\n';
    return os.str();
}

inline std::string render_search(const SearchReport& r, OutputFormat fmt) {
    std::ostringstream os;
    if (fmt == OutputFormat::json) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : r.entries)
            entries.push_back({{"params", to_json(e.params)}, {"verdict", to_json(e.verdict)}});
        nlohmann::json j{{"degree", r.degree},
                         {"relaxations",
                          {{"allow_gcd", r.relaxations.allow_gcd},
                           {"allow_k_below_l", r.relaxations.allow_k_below_l}}},
                         {"entries", entries}};
        os << j.dump() << '\n';
        return os.str();
    }
    // csv for everything else; the report is tabular data
    os << "K,L,m,n,y,z,status,first_violation,lhs,rhs,violations\n";
    for (const auto& e : r.entries) {
        const auto& p = e.params;
        const auto& v = e.verdict;
        os << p.K << ',' << p.L << ',' << p.m << ',' << p.n << ',' << p.y << ',' << p.z << ','
           << status_name(v.status) << ',';
        if (v.first_violation)
            os << v.first_violation->exponent << ',' << v.first_violation->lhs << ','
               << v.first_violation->rhs;
        else
            os << ",,";
        os << ',' << v.violation_count << '\n';
    }
    return os.str();
}

} // namespace qineq
