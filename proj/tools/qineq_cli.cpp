// qineq: expand products, verify inequalities, print injection tables and
// run exception searches.
//
// Exit codes: 0 holds / equality / success, 1 violation found, 2 usage or
// parameter error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qineq/qineq.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<std::int64_t> split_ints(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer: '" + item + "'");
        }
        if (used != item.size()) throw UsageError("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

qineq::Params parse_params(const std::string& text) {
    const auto v = split_ints(text);
    if (v.size() != 6) throw UsageError("--params expects K,L,m,n,y,z");
    return qineq::Params{v[0], v[1], v[2], v[3], v[4], v[5], std::nullopt, std::nullopt};
}

/// "a", "a..b" or "a:b"
qineq::IntRange parse_range(const std::string& text) {
    auto sep = text.find("..");
    std::size_t skip = 2;
    if (sep == std::string::npos) {
        sep = text.find(':');
        skip = 1;
    }
    try {
        if (sep == std::string::npos) {
            const auto v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, sep)), std::stoll(text.substr(sep + skip))};
    } catch (const std::exception&) {
        throw UsageError("malformed range '" + text + "'");
    }
}

qineq::OutputFormat parse_format_flag(const std::string& text) {
    if (auto f = qineq::parse_format(text)) return *f;
    throw UsageError("unknown format '" + text + "'");
}

qineq::Mode parse_mode(const std::string& text) {
    if (text == "main") return qineq::Mode::main;
    if (text == "dual") return qineq::Mode::dual;
    if (text == "gen") return qineq::Mode::gen;
    throw UsageError("unknown mode '" + text + "'");
}

std::size_t degree_cap() {
    if (const char* env = std::getenv("QINJ_MAX_DEGREE")) {
        try {
            const long long v = std::stoll(env);
            if (v >= 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw UsageError("QINJ_MAX_DEGREE must be a nonnegative integer");
    }
    return 200;
}

std::size_t checked_degree(std::int64_t degree) {
    if (degree < 0) throw UsageError("degree must be nonnegative");
    const auto cap = degree_cap();
    if (static_cast<std::size_t>(degree) > cap)
        throw UsageError("degree " + std::to_string(degree) + " exceeds the cap " +
                         std::to_string(cap) + " (set QINJ_MAX_DEGREE to raise it)");
    return static_cast<std::size_t>(degree);
}

int verdict_exit(const qineq::Verdict& v, qineq::OutputFormat fmt) {
    std::cout << qineq::render_verdict(v, fmt);
    if (v.status == qineq::Status::skipped) {
        std::cerr << "warning: SKIPPED, no conclusion could be drawn up to degree "
                  << v.checked_degree << '\n';
        return kOk;
    }
    return v.status == qineq::Status::violated ? kViolation : kOk;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition inequalities for products of two q-Pochhammer symbols"};
    app.require_subcommand(1);

    // expand
    std::string params_text, side = "left", format_text = "plain", mode_text = "main", output;
    std::int64_t degree = 40;
    std::optional<std::int64_t> s_opt, t_opt;
    auto* expand = app.add_subcommand("expand", "Expand one side of the inequality as a q-series");
    expand->add_option("--params", params_text, "K,L,m,n,y,z")->required();
    expand->add_option("--side", side, "left, right or diff")
        ->check(CLI::IsMember({"left", "right", "diff"}));
    expand->add_option("--degree", degree, "truncation degree");
    expand->add_option("--mode", mode_text, "main, dual or gen");
    expand->add_option("--s", s_opt, "S for gen mode");
    expand->add_option("--t", t_opt, "T for gen mode");
    expand->add_option("--format", format_text, "plain, csv, markdown, latex or json");
    expand->add_option("--output", output, "write to a file instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "Check one of the inequalities");
    verify->require_subcommand(1);
    std::size_t budget = qineq::VerifyOptions{}.injection_budget;
    auto add_theorem = [&](const std::string& name, const std::string& help) {
        auto* c = verify->add_subcommand(name, help);
        c->add_option("--params", params_text, "K,L,m,n,y,z")->required();
        c->add_option("--degree", degree, "truncation degree");
        c->add_option("--format", format_text, "plain or json");
        return c;
    };
    auto* v_main = add_theorem("main", "K,L on both sides");
    v_main->add_option("--injection-budget", budget, "partitions pushed through the injection");
    auto* v_dual = add_theorem("dual", "K and L swapped on the right");
    v_dual->add_option("--injection-budget", budget, "partitions pushed through the injection");
    auto* v_gen = add_theorem("gen", "(S, T) on the right");
    v_gen->add_option("--s", s_opt, "S")->required();
    v_gen->add_option("--t", t_opt, "T")->required();

    std::optional<std::int64_t> L_opt;
    std::int64_t m = 0, r = 0, n = 0, y = 0, K = 0, L = 0, f = 0;
    auto* v_bg = verify->add_subcommand("bg", "1/(q,q^{m-1};q^m)_L against 1/(q^r,q^{m-r};q^m)_L");
    v_bg->add_option("--L", L_opt, "finite L; omit for the infinite product");
    v_bg->add_option("--m", m)->required();
    v_bg->add_option("--r", r)->required();
    v_bg->add_option("--max-degree,--degree", degree, "largest exponent examined");
    v_bg->add_option("--format", format_text);

    auto add_refine = [&](const std::string& name, const std::string& help) {
        auto* c = verify->add_subcommand(name, help);
        c->add_option("--n", n)->required();
        c->add_option("--y", y)->required();
        c->add_option("--K", K)->required();
        c->add_option("--L", L)->required();
        c->add_option("--f", f)->required();
        c->add_option("--degree", degree);
        c->add_option("--format", format_text);
        return c;
    };
    auto* v_r1 = add_refine("refine1", "flat refinement of the main inequality");
    auto* v_r2 = add_refine("refine2", "flat refinement of the dual inequality");
    auto* v_r3 = verify->add_subcommand("refine3", "flat refinement of the two-factor inequality");
    std::int64_t r3_L = 0;
    v_r3->add_option("--L", r3_L)->required();
    v_r3->add_option("--m", m)->required();
    v_r3->add_option("--r", r)->required();
    v_r3->add_option("--f", f)->required();
    v_r3->add_option("--degree", degree);
    v_r3->add_option("--format", format_text);

    std::string variant = "lhp";
    std::int64_t size = 1, x_exp = 1, y_exp = 1;
    auto* v_lh = verify->add_subcommand("lecture-hall", "lecture hall chain count against its product");
    v_lh->add_option("--variant", variant)
        ->check(CLI::IsMember({"lhp", "savage-odd", "savage-even", "dual-savage-even", "dual-savage-odd"}));
    v_lh->add_option("--size", size, "parts for lhp, L for the Savage forms");
    v_lh->add_option("--x-exp", x_exp, "X = q^x-exp");
    v_lh->add_option("--y-exp", y_exp, "Y = q^y-exp");
    v_lh->add_option("--degree", degree);
    v_lh->add_option("--format", format_text);

    // table
    std::int64_t norm_x = 0, max_norm = 80;
    auto* table = app.add_subcommand("table", "Injection table for one norm");
    table->add_option("--params", params_text, "K,L,m,n,y,z")->required();
    table->add_option("--norm", norm_x, "norm x")->required();
    table->add_option("--mode", mode_text, "main or dual");
    table->add_option("--format", format_text, "plain, csv, markdown, latex or json");
    table->add_option("--max-norm", max_norm, "norm cap");
    table->add_option("--output", output, "write to a file instead of stdout");

    // search
    std::string rk, rl, rm, rn, ry, rz;
    bool allow_gcd = false, allow_klt = false, coprime_only = false;
    auto* search = app.add_subcommand("search", "Sweep parameters, recording verdicts");
    search->add_option("--K", rk, "range a..b")->required();
    search->add_option("--L", rl, "range a..b")->required();
    search->add_option("--m", rm, "range a..b")->required();
    search->add_option("--n", rn, "range a..b")->required();
    search->add_option("--y", ry, "range a..b")->required();
    search->add_option("--z", rz, "range a..b")->required();
    search->add_option("--degree", degree);
    search->add_flag("--allow-gcd", allow_gcd, "admit gcd(n, y) > 1");
    search->add_flag("--allow-klt-swap", allow_klt, "admit K < L");
    search->add_flag("--coprime-only", coprime_only, "skip gcd(n, y) > 1 tuples");
    search->add_option("--format", format_text, "csv or json");
    search->add_option("--output", output, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const auto fmt = parse_format_flag(format_text);

        if (*expand) {
            auto p = parse_params(params_text);
            p.S = s_opt;
            p.T = t_opt;
            const auto mode = parse_mode(mode_text);
            qineq::validate(p, mode, qineq::Relaxations{true, true});
            const auto N = checked_degree(degree);
            const auto left = qineq::expand_product(qineq::side_product(qineq::Side::codomain, mode, p), N);
            const auto right = qineq::expand_product(qineq::side_product(qineq::Side::domain, mode, p), N);
            const qineq::Series& out = side == "left" ? left : right;
            if (side == "diff")
                write_output(qineq::render_series(qineq::series_sub(left, right), fmt, side), output);
            else
                write_output(qineq::render_series(out, fmt, side), output);
            return kOk;
        }

        if (*verify) {
            if (*v_main || *v_dual || *v_gen) {
                auto p = parse_params(params_text);
                const auto N = checked_degree(degree);
                if (*v_gen) {
                    p.S = s_opt;
                    p.T = t_opt;
                    return verdict_exit(qineq::verify_gen(p, N), fmt);
                }
                const qineq::VerifyOptions opts{budget};
                return verdict_exit(*v_main ? qineq::verify_main(p, N, {}, opts)
                                            : qineq::verify_dual(p, N, {}, opts),
                                    fmt);
            }
            if (*v_bg) return verdict_exit(qineq::verify_bg(L_opt, m, r, checked_degree(degree)), fmt);
            if (*v_r1)
                return verdict_exit(qineq::verify_refinement1(n, y, K, L, f, checked_degree(degree)), fmt);
            if (*v_r2)
                return verdict_exit(qineq::verify_refinement2(n, y, K, L, f, checked_degree(degree)), fmt);
            if (*v_r3)
                return verdict_exit(qineq::verify_refinement3(r3_L, m, r, f, checked_degree(degree)), fmt);
            if (*v_lh) {
                using K_ = qineq::LectureHallKind;
                const K_ kind = variant == "lhp"               ? K_::lhp
                                : variant == "savage-odd"      ? K_::savage_odd
                                : variant == "savage-even"     ? K_::savage_even
                                : variant == "dual-savage-even" ? K_::dual_savage_even
                                                                : K_::dual_savage_odd;
                return verdict_exit(
                    qineq::lecture_hall_check({kind, size}, x_exp, y_exp, checked_degree(degree)), fmt);
            }
        }

        if (*table) {
            const auto p = parse_params(params_text);
            if (norm_x < 0 || norm_x > max_norm)
                throw UsageError("norm must lie in [0, " + std::to_string(max_norm) + "]");
            const auto t = qineq::injection_table(p, norm_x, parse_mode(mode_text));
            write_output(qineq::render_table(t, fmt), output);
            return kOk;
        }

        if (*search) {
            const qineq::SearchRanges ranges{parse_range(rk), parse_range(rl), parse_range(rm),
                                             parse_range(rn), parse_range(ry), parse_range(rz),
                                             coprime_only};
            const auto report =
                qineq::search_exceptions(ranges, checked_degree(degree), {allow_gcd, allow_klt});
            write_output(qineq::render_search(report, fmt), output);
            return kOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
