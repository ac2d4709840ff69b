#pragma once

// Command-line front end. run() parses the arguments, computes a table and
// renders it as CSV or as a JSON envelope; exit codes are 0 ok, 1 usage,
// 2 precondition, 3 failed cross-check.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrep/arith.hpp"
#include "qrep/circle.hpp"
#include "qrep/elliptic.hpp"
#include "qrep/error.hpp"
#include "qrep/repcount.hpp"
#include "qrep/theta.hpp"

namespace qrep::cli {

inline constexpr const char * tool_version = "0.1.0";

using json = nlohmann::ordered_json;

enum Exit { ok = 0, usage = 1, precondition = 2, cross_check = 3 };

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

/// "A..B" or "A", both nonnegative.
inline Range parse_range(const std::string & s)
{
    auto parse = [&](const std::string & t) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(t, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (t.empty() || used != t.size() || v < 0)
            throw usage_error("--n: expected A..B with 0 <= A <= B, got '" + s + "'");
        return static_cast<std::int64_t>(v);
    };
    const auto dots = s.find("..");
    Range r;
    if (dots == std::string::npos)
        r.lo = r.hi = parse(s);
    else {
        r.lo = parse(s.substr(0, dots));
        r.hi = parse(s.substr(dots + 2));
    }
    if (r.lo > r.hi)
        throw usage_error("--n: empty range '" + s + "'");
    return r;
}

template <class T>
std::vector<T> parse_list(const std::string & s, const char * flag)
{
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::stringstream is(item);
        T v{};
        if (!(is >> v) || !is.eof())
            throw usage_error(std::string(flag) + ": cannot parse '" + s + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw usage_error(std::string(flag) + ": empty list");
    return out;
}

inline std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline json big(const BigInt & z)
{
    if (z.fits_slong_p())
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

inline std::string rational_text(const Rational & r)
{
    return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

struct Table {
    std::string spec;
    std::string method;
    std::vector<std::string> columns;
    bool header = true;
    std::vector<std::vector<json>> rows;
};

inline std::string cell_text(const json & v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_float())
        return fmt_double(v.get<double>());
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    return v.dump();
}

inline std::string render(const Table & t, const std::string & format)
{
    std::string out;
    if (format == "json") {
        json env;
        env["spec"] = t.spec;
        json rows = json::array();
        for (const auto & r : t.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                obj[t.columns[i]] = r[i];
            rows.push_back(obj);
        }
        env["rows"] = rows;
        env["method"] = t.method;
        env["tool_version"] = tool_version;
        return env.dump(2) + "\n";
    }
    auto line = [&](const std::vector<std::string> & cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out += (i ? "," : "") + cells[i];
        out += "\n";
    };
    if (t.header)
        line(t.columns);
    for (const auto & r : t.rows) {
        std::vector<std::string> cells;
        for (const auto & v : r)
            cells.push_back(cell_text(v));
        line(cells);
    }
    return out;
}

/// Every flag any leaf command may use.
struct Options {
    std::string n = "0..20";
    std::string out;
    std::string format = "csv";
    std::string verify = "none";
    std::string method;
    std::string diag = "1,1";
    std::string lin;
    std::int64_t cst = 0;
    std::int64_t scale = 1;
    std::string domain = "lattice";
    int nu = 2;
    int sigma_nu = 1;
    std::string poly;
    std::int64_t m = 1;
    int N = 1;
    std::string variant = "amended";
    int k = 3;
    int h = 2;
    bool alt = false;
    int order = 10;
    double r = 1;
    int terms = 200;
    double x = 1;
    std::string xs = "2.5";
    std::string which = "chi0";
    int p = 0;
    double tol = -1;
    double xmax = 100;
    double step = 1;
    double delta = 0.1;
    std::int64_t ncut = 0;
    std::int64_t kcut = 2000;
    std::int64_t window = 64;
    int passes = 1;
    std::string zs = "0.5,1,2";
};

namespace detail {

inline repcount::Convention convention(const std::string & d)
{
    if (d == "lattice")
        return repcount::Convention::lattice;
    if (d == "nonneg")
        return repcount::Convention::nonneg;
    throw usage_error("--domain: expected lattice or nonneg");
}

inline std::vector<std::int64_t> lin_or_zero(const Options & o, std::size_t size)
{
    if (o.lin.empty())
        return std::vector<std::int64_t>(size, 0);
    auto v = parse_list<std::int64_t>(o.lin, "--lin");
    if (v.size() != size)
        throw usage_error("--lin must have as many entries as --diag");
    return v;
}

inline std::string join(const std::vector<std::int64_t> & v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

/// Rows (n, count) for n in range; compared with the oracle when requested.
inline Table count_table(const std::string & spec, const std::string & method, const Range & range, bool verify,
                         const std::function<std::int64_t(std::int64_t)> & value,
                         const std::function<std::int64_t(std::int64_t)> & oracle)
{
    Table t{spec, method, {"n", "count"}, false, {}};
    for (std::int64_t n = range.lo; n <= range.hi; ++n) {
        const std::int64_t v = value(n);
        if (verify) {
            const std::int64_t o = oracle(n);
            if (o != v)
                throw cross_check_failure(spec + ": n = " + std::to_string(n) + " gives " + std::to_string(v) +
                                          " but the oracle counts " + std::to_string(o));
        }
        t.rows.push_back({n, v});
    }
    return t;
}

inline std::function<std::int64_t(std::int64_t)> from_table(const repcount::RepTable & tab)
{
    return [tab](std::int64_t n) { return tab.at(n); };
}

inline std::int64_t ipow_capped(std::int64_t b, int e, std::int64_t cap)
{
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && v > cap / b)
            return cap + 1;
        v *= b;
    }
    return v;
}

} // namespace detail

// ---------------------------------------------------------------- count

inline Table count_quad(const Options & o, const Range & range, bool verify)
{
    const auto A = parse_list<std::int64_t>(o.diag, "--diag");
    const auto B = detail::lin_or_zero(o, A.size());
    const auto conv = detail::convention(o.domain);
    repcount::FormSpec form;
    form.scale = o.scale;
    for (std::size_t i = 0; i < A.size(); ++i)
        form.terms.push_back({A[i], B[i]});
    form.constant = o.cst;
    form.convention = conv;
    const std::string method = o.method.empty() ? "closed" : o.method;
    const auto oracle = repcount::oracle_count(form, range.hi);
    if (method == "oracle")
        return detail::count_table("quad " + form.describe(), "oracle", range, false, detail::from_table(oracle), {});
    if (method != "closed" && method != "series")
        throw usage_error("count quad: --method must be closed, series or oracle");
    require(conv == repcount::Convention::lattice, "count quad: the divisor-sum route counts lattice points only");
    require(o.scale == 1, "count quad: the divisor-sum route needs --scale 1");
    require(o.lin.empty() || std::all_of(B.begin(), B.end(), [](auto b) { return b == 0; }),
            "count quad: linear terms need the affine family");
    const auto tab = repcount::count_diagonal(A, std::max<std::int64_t>(range.hi - o.cst, 0));
    auto value = [&](std::int64_t n) { return n - o.cst < 0 ? 0 : tab.at(n - o.cst); };
    return detail::count_table("quad " + form.describe(), repcount::method_name(tab.method), range, verify, value,
                               detail::from_table(oracle));
}

inline Table count_affine(const Options & o, const Range & range, bool verify)
{
    const auto A = parse_list<std::int64_t>(o.diag, "--diag");
    if (A.size() != 2)
        throw usage_error("count affine: --diag takes A,B");
    const auto L = detail::lin_or_zero(o, 2);
    repcount::FormSpec form;
    form.terms = {{A[0], L[0]}, {A[1], L[1]}};
    form.constant = o.cst;
    const std::string method = o.method.empty() ? "closed" : o.method;
    const auto oracle = repcount::oracle_count(form, range.hi);
    if (method == "oracle")
        return detail::count_table("affine " + form.describe(), "oracle", range, false, detail::from_table(oracle), {});
    if (method != "closed")
        throw usage_error("count affine: --method must be closed or oracle");
    repcount::affine_shift(A[0], A[1], L[0], L[1], o.cst); // preconditions
    auto value = [&](std::int64_t n) { return repcount::count_affine(A[0], A[1], L[0], L[1], o.cst, n); };
    return detail::count_table("affine " + form.describe(), "closed", range, verify, value, detail::from_table(oracle));
}

inline Table count_tri(const Options & o, const Range & range, bool verify)
{
    require(o.m >= 0, "count tri: m must be nonnegative");
    require(o.N >= 1, "count tri: N must be positive");
    const auto conv = detail::convention(o.domain);
    const std::string spec = "tri m=" + std::to_string(o.m) + " N=" + std::to_string(o.N) + " [" +
                             repcount::convention_name(conv) + "]";
    const std::string method = o.method.empty() ? "closed" : o.method;
    const auto oracle = repcount::oracle_count(repcount::triangular_form(o.m, o.N, conv), range.hi);
    if (method == "oracle")
        return detail::count_table(spec, "oracle", range, false, detail::from_table(oracle), {});
    if (method == "series")
        return detail::count_table(spec, "series", range, verify,
                                   detail::from_table(repcount::tri_count(o.m, o.N, range.hi, conv)),
                                   detail::from_table(oracle));
    if (method != "closed")
        throw usage_error("count tri: --method must be closed, series or oracle");
    require(o.N == 3 || o.N == 4, "count tri: closed forms exist for N = 3 and N = 4 only");
    const std::int64_t p = o.m / 2;
    std::function<std::int64_t(std::int64_t)> value;
    if (o.m % 2 == 0) {
        require(conv == repcount::Convention::lattice, "count tri: closed forms for even m count lattice points only");
        if (o.N == 3)
            // Validated only where the reduced argument is squarefree; outside that the call throws.
            value = [p](std::int64_t n) { return 2 * n + 3 * p * p == 0 ? 1 : repcount::r3_closed(2 * n + 3 * p * p); };
        else
            value = [m = o.m](std::int64_t n) { return repcount::tri_N_closed(m, 4, n).value; };
    } else {
        require(o.N == 4, "count tri: no closed form for three odd-m triangular numbers");
        if (conv == repcount::Convention::nonneg) {
            require(o.m == 1, "count tri: the odd-m closed form counts nonnegative solutions only for m = 1");
            value = [](std::int64_t n) { return repcount::tri_N_closed(1, 4, n).value; };
        } else
            value = [m = o.m](std::int64_t n) { return 16 * repcount::tri_N_closed(m, 4, n).value; };
    }
    return detail::count_table(spec, "closed", range, verify, value, detail::from_table(oracle));
}

inline Table count_power(const Options & o, const Range & range, bool verify)
{
    std::string spec = "power nu=" + std::to_string(o.nu);
    std::vector<std::int64_t> coeffs;
    if (!o.poly.empty()) {
        coeffs = parse_list<std::int64_t>(o.poly, "--poly");
        spec = "power poly=" + detail::join(coeffs);
    }
    const auto kind = coeffs.empty() ? arith::IndicatorKind::power(o.nu) : arith::IndicatorKind::polyvalue(coeffs);
    const std::string method = o.method.empty() ? "closed" : o.method;
    // Direct pairing of the set members <= n.
    auto oracle = [&](std::int64_t n) {
        std::vector<std::int64_t> members;
        for (std::int64_t t = 0;; ++t) {
            std::int64_t v = 0;
            if (coeffs.empty())
                v = detail::ipow_capped(t, o.nu, n);
            else {
                BigInt acc = 0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                    acc = acc * t + *it;
                if (acc > n)
                    break;
                v = acc.get_si();
            }
            if (v > n)
                break;
            if (members.empty() || members.back() != v)
                members.push_back(v);
        }
        std::int64_t c = 0;
        for (auto a : members)
            for (auto b : members)
                c += (a + b == n);
        return c;
    };
    if (method == "oracle")
        return detail::count_table(spec, "oracle", range, false, oracle, {});
    if (method != "closed")
        throw usage_error("count power: --method must be closed or oracle");
    const auto tab = repcount::count_power_sum_table(kind, range.hi);
    return detail::count_table(spec, "closed", range, verify, detail::from_table(tab), oracle);
}

inline Table count_cubic(const Options & o, const Range & range, bool verify)
{
    require(range.lo >= 1, "count cubic: n must be positive");
    const std::string method = o.method.empty() ? "closed" : o.method;
    auto oracle = [](std::int64_t n) {
        return repcount::oracle_odd_power_pairs(3, n, repcount::Convention::lattice);
    };
    if (method == "oracle")
        return detail::count_table("cubic [lattice]", "oracle", range, false, oracle, {});
    if (method != "closed")
        throw usage_error("count cubic: --method must be closed or oracle");
    return detail::count_table("cubic [lattice]", "closed", range, verify, repcount::cubic_count, oracle);
}

inline Table count_quintic(const Options & o, const Range & range, bool verify)
{
    repcount::QuinticVariant variant;
    if (o.variant == "amended")
        variant = repcount::QuinticVariant::amended;
    else if (o.variant == "literal")
        variant = repcount::QuinticVariant::literal;
    else
        throw usage_error("count quintic: --variant must be amended or literal");
    const std::string spec = "quintic " + o.variant + " [nonneg]";
    const std::string method = o.method.empty() ? "closed" : o.method;
    auto oracle = [](std::int64_t n) {
        return n == 0 ? 1 : repcount::oracle_odd_power_pairs(5, n, repcount::Convention::nonneg);
    };
    if (method == "oracle")
        return detail::count_table(spec, "oracle", range, false, oracle, {});
    if (method != "closed")
        throw usage_error("count quintic: --method must be closed or oracle");
    return detail::count_table(
        spec, "closed", range, verify, [variant](std::int64_t n) { return repcount::quintic_count(n, variant); },
        oracle);
}

inline Table count_expmethod(const Options & o, const Range & range, bool verify)
{
    const auto K = parse_list<std::int64_t>(o.diag, "--diag");
    const auto H = detail::lin_or_zero(o, K.size());
    std::vector<repcount::KH> terms;
    for (std::size_t i = 0; i < K.size(); ++i)
        terms.push_back({static_cast<int>(K[i]), static_cast<int>(H[i])});
    const auto form = repcount::kh_form(terms);
    const std::string method = o.method.empty() ? "series" : o.method;
    const auto oracle = repcount::oracle_count(form, range.hi);
    if (method == "oracle")
        return detail::count_table("expmethod " + form.describe(), "oracle", range, false, detail::from_table(oracle),
                                   {});
    if (method != "series" && method != "closed")
        throw usage_error("count expmethod: --method must be series or oracle");
    const auto tab = repcount::exp_method_count(terms, range.hi);
    return detail::count_table("expmethod " + form.describe(), "series", range, verify, detail::from_table(tab),
                               detail::from_table(oracle));
}

// ---------------------------------------------------------------- table

inline Table table_sigma(const Options & o, const Range & range, bool verify)
{
    require(range.lo >= 1, "table sigma: n must be positive");
    require(o.sigma_nu >= 0, "table sigma: nu must be nonnegative");
    Table t{"sigma nu=" + std::to_string(o.sigma_nu), "closed", {"n", "sigma"}, true, {}};
    for (std::int64_t n = range.lo; n <= range.hi; ++n) {
        const std::int64_t v = arith::sigma(n, o.sigma_nu);
        if (verify) {
            std::int64_t direct = 0;
            for (std::int64_t d = 1; d <= n; ++d)
                if (n % d == 0)
                    direct = arith::checked_add(direct, arith::ipow(d, o.sigma_nu));
            if (direct != v)
                throw cross_check_failure("sigma: mismatch at n = " + std::to_string(n));
        }
        t.rows.push_back({n, v});
    }
    return t;
}

inline Table table_chi(const Options & o, const Range & range, bool)
{
    require(range.lo >= 1, "table chi: n must be positive");
    Table t{"chi k=" + std::to_string(o.k) + " h=" + std::to_string(o.h), "closed", {"n", "chi"}, true, {}};
    for (std::int64_t n = range.lo; n <= range.hi; ++n)
        t.rows.push_back({n, arith::chi_kh(o.k, o.h, n)});
    return t;
}

inline Table table_fkh(const Options & o, const Range & range, bool)
{
    require(range.lo >= 1, "table fkh: n must be positive");
    Table t{"fkh k=" + std::to_string(o.k) + " h=" + std::to_string(o.h), "closed", {"n", "f"}, true, {}};
    for (std::int64_t n = range.lo; n <= range.hi; ++n)
        t.rows.push_back({n, rational_text(arith::f_kh(o.k, o.h, n))});
    return t;
}

/// Rows (D, h) for D = -d, d in range, D = 0 or 1 mod 4. With --verify oracle
/// the three-squares count checks h where it determines it.
inline Table table_classnumber(const Options &, const Range & range, bool verify)
{
    Table t{"classnumber", "closed", {"D", "h"}, true, {}};
    for (std::int64_t d = std::max<std::int64_t>(range.lo, 3); d <= range.hi; ++d) {
        const std::int64_t D = -d;
        const std::int64_t r = arith::mod(D, 4);
        if (r != 0 && r != 1)
            continue;
        const std::int64_t h = arith::class_number(D);
        if (verify) {
            std::int64_t n = 0, mult = 0;
            if (d % 8 == 3 && d > 3 && repcount::is_squarefree(d))
                n = d, mult = 24;
            else if (d % 4 == 0 && (d / 4) % 4 != 0 && (d / 4) % 4 != 3 && d / 4 > 2 && repcount::is_squarefree(d / 4))
                n = d / 4, mult = 12;
            if (mult != 0) {
                const std::int64_t r3 = repcount::r_N_squares(3, n).counts.back();
                if (r3 != mult * h)
                    throw cross_check_failure("classnumber: D = " + std::to_string(D) + " disagrees with r3(" +
                                              std::to_string(n) + ")");
            }
        }
        t.rows.push_back({D, h});
    }
    return t;
}

// ---------------------------------------------------------------- theta

inline Table theta_table(const std::string & name, const Options & o, bool verify)
{
    require(o.order >= 1, "theta: --order must be positive");
    const int oh = 2 * o.order;
    std::optional<qseries::HalfLaurentSeries> s;
    // Direct enumeration of the sum form: exponent (half units) -> coefficient.
    std::map<int, std::int64_t> direct;
    auto enumerate = [&](auto exponent, auto sign, bool nonneg) {
        for (int n = nonneg ? 0 : -oh - 2; n <= oh + 2; ++n) {
            const int e = exponent(n);
            if (e < oh && e >= -oh)
                direct[e] += sign(n);
        }
    };
    auto plus = [](int) { return 1; };
    auto alternating = [](int n) { return n % 2 == 0 ? 1 : -1; };
    std::string spec = "theta " + name + " order=" + std::to_string(o.order);
    std::string method = "series";
    if (name == "theta3") {
        s = theta::series(theta::Theta3{}, o.order);
        enumerate([](int n) { return 2 * n * n; }, plus, false);
    } else if (name == "phi") {
        s = theta::products::phi(o.order);
        method = "product";
        enumerate([](int n) { return 2 * n * n; }, plus, false);
    } else if (name == "psi") {
        s = theta::products::psi(o.order);
        method = "product";
        enumerate([](int n) { return n * (n + 1); }, plus, true);
    } else if (name == "fneg") {
        s = theta::products::f_neg(o.order);
        method = "product";
        enumerate([](int n) { return n * (3 * n - 1); }, alternating, false);
    } else if (name == "general") {
        s = theta::series(theta::General{o.k, o.h, o.alt}, o.order);
        spec += " k=" + std::to_string(o.k) + " h=" + std::to_string(o.h) + (o.alt ? " alternating" : "");
        const int k = o.k, h = o.h;
        if (o.alt)
            enumerate([k, h](int n) { return 2 * (k * n * n + h * n); }, alternating, false);
        else
            enumerate([k, h](int n) { return 2 * (k * n * n + h * n); }, plus, false);
    } else if (name == "triangular") {
        const bool nonneg = detail::convention(o.domain) == repcount::Convention::nonneg;
        require(o.m >= 0, "theta triangular: m must be nonnegative");
        s = theta::series(theta::Triangular{static_cast<int>(o.m), nonneg}, o.order);
        spec += " m=" + std::to_string(o.m) + " [" + o.domain + "]";
        const int m = static_cast<int>(o.m);
        enumerate([m](int n) { return n * n + m * n; }, plus, nonneg);
    } else
        throw usage_error("theta: unknown kind " + name);

    Table t{spec, method, {"exponent_half_units", "numerator", "denominator"}, true, {}};
    for (int e = s->base(); e < s->order(); ++e) {
        const Rational & c = s->coeff(e);
        if (verify) {
            const auto it = direct.find(e);
            const std::int64_t want = it == direct.end() ? 0 : it->second;
            if (c != want)
                throw cross_check_failure("theta " + name + ": coefficient at half-exponent " + std::to_string(e) +
                                          " differs from direct enumeration");
        }
        if (!is_zero(c))
            t.rows.push_back({e, big(c.get_num()), big(c.get_den())});
    }
    return t;
}

// ---------------------------------------------------------------- identity

inline Table identity_table(const std::string & name, const Options & o, bool verify)
{
    Table t{"identity " + name, "numeric", {"which", "params", "lhs", "rhs", "residual", "pass"}, true, {}};
    auto add = [&](const std::string & params, double lhs, double rhs, double residual, double tol) {
        const bool pass = residual <= tol;
        if (verify && !pass)
            throw cross_check_failure("identity " + name + " (" + params + "): residual " + fmt_double(residual) +
                                      " exceeds " + fmt_double(tol));
        t.rows.push_back({name, params, lhs, rhs, residual, pass});
    };
    if (name == "jacobik" || name == "lambert" || name == "app1") {
        elliptic::IdentityParams p;
        p.r = o.r;
        p.terms = o.terms;
        std::string params = "r=" + fmt_double(o.r);
        elliptic::Identity which = elliptic::Identity::jacobiK;
        double tol = 1e-9;
        if (name == "lambert") {
            which = elliptic::Identity::lambert;
            tol = 1e-10;
            params += " terms=" + std::to_string(o.terms);
        } else if (name == "app1") {
            which = elliptic::Identity::two_form;
            tol = 1e-8;
            const auto AB = parse_list<std::int64_t>(o.diag, "--diag");
            const auto CD = detail::lin_or_zero(o, 2);
            if (AB.size() != 2)
                throw usage_error("identity app1: --diag takes A,B");
            p.A = AB[0], p.B = AB[1], p.C = CD[0], p.D = CD[1];
            params += " A=" + std::to_string(p.A) + " B=" + std::to_string(p.B) + " C=" + std::to_string(p.C) +
                      " D=" + std::to_string(p.D);
        }
        const auto res = elliptic::identity_check(which, p);
        add(params, res.lhs, res.rhs, res.residual, o.tol >= 0 ? o.tol : tol);
    } else if (name == "sinh") {
        elliptic::SinhParams p{o.x};
        elliptic::SinhIdentity which;
        std::string params = "which=" + o.which + " x=" + fmt_double(o.x);
        if (o.which == "chi0")
            which = elliptic::SinhIdentity::chi0;
        else if (o.which == "triangular")
            which = elliptic::SinhIdentity::triangular;
        else if (o.which == "kh") {
            which = elliptic::SinhIdentity::kh;
            p.k = o.k;
            p.h = o.h;
            params += " k=" + std::to_string(o.k) + " h=" + std::to_string(o.h);
        } else
            throw usage_error("identity sinh: --which must be chi0, triangular or kh");
        const auto res = elliptic::sinh_identity_check(which, p);
        add(params, res.lhs, res.rhs, res.residual, o.tol >= 0 ? o.tol : 1e-10);
    } else if (name == "tripleproduct") {
        require(o.p >= 0, "identity tripleproduct: p must be nonnegative");
        require(o.order >= 1, "identity tripleproduct: --order must be positive");
        const bool okay = theta::triple_product_check(o.p, o.order);
        const std::string params = "p=" + std::to_string(o.p) + " order=" + std::to_string(o.order);
        add(params, 0.0, 0.0, okay ? 0.0 : 1.0, 0.0);
    } else
        throw usage_error("identity: unknown identity " + name);
    return t;
}

// ---------------------------------------------------------------- circle

inline circle::TruncationSpec truncation(const Options & o, std::int64_t default_ncut)
{
    circle::TruncationSpec s;
    s.n_cut = o.ncut > 0 ? o.ncut : default_ncut;
    s.k_cut = o.kcut;
    s.smooth_window = o.window;
    s.smooth_passes = o.passes;
    return s;
}

inline Table circle_table(const std::string & name, const Options & o, const Range & range, bool verify)
{
    if (name == "scan") {
        const auto res = circle::scan_R(o.xmax, o.step, o.delta, {{}, 1024, true});
        Table t{"circle scan xmax=" + fmt_double(o.xmax) + " step=" + fmt_double(o.step),
                "exact",
                {"x", "count", "pi_x", "R", "R_scaled"},
                true,
                {}};
        for (const auto & row : res.rows) {
            if (verify && row.count != circle::lattice_count(row.x))
                throw cross_check_failure("circle scan: count at x = " + fmt_double(row.x) +
                                          " disagrees with the column counter");
            t.rows.push_back({row.x, row.count, row.pix, row.R, row.Rscaled});
        }
        return t;
    }
    if (name == "hardy" || name == "rexp") {
        const bool hardy = name == "hardy";
        const auto spec = truncation(o, hardy ? 100000 : 2000);
        const double tol = o.tol >= 0 ? o.tol : (hardy ? 0.3 : 0.5);
        Table t{"circle " + name + " ncut=" + std::to_string(spec.n_cut) + " window=" +
                    std::to_string(spec.smooth_window) + " passes=" + std::to_string(spec.smooth_passes) +
                    (hardy ? "" : " N=" + std::to_string(o.N)),
                hardy ? "bessel series" : "asymptotic expansion",
                {"x", "value", "exact", "error"},
                true,
                {}};
        for (double x : parse_list<double>(o.xs, "--x")) {
            const double count = static_cast<double>(circle::lattice_count(x));
            const double value = hardy ? circle::hardy_sum(x, spec) : circle::R_expansion(x, o.N, spec);
            const double exact = hardy ? count : count - circle::pi * x;
            if (verify && std::fabs(value - exact) > tol)
                throw cross_check_failure("circle " + name + ": error at x = " + fmt_double(x) + " exceeds " +
                                          fmt_double(tol));
            t.rows.push_back({x, value, exact, value - exact});
        }
        return t;
    }
    if (name == "fresnel") {
        Table t{"circle fresnel", "series/continued fraction", {"z", "C", "S"}, true, {}};
        for (double z : parse_list<double>(o.zs, "--z")) {
            const auto f = circle::fresnel(z);
            if (verify) {
                // Composite Simpson rule on a fine grid.
                const int panels = 20000;
                const double hstep = z / panels;
                double c = 0, s = 0;
                for (int i = 0; i <= panels; ++i) {
                    const double w = (i == 0 || i == panels) ? 1 : (i % 2 ? 4 : 2);
                    const double u = circle::pi * (i * hstep) * (i * hstep) / 2;
                    c += w * std::cos(u);
                    s += w * std::sin(u);
                }
                if (std::fabs(c * hstep / 3 - f.C) > 1e-9 || std::fabs(s * hstep / 3 - f.S) > 1e-9)
                    throw cross_check_failure("circle fresnel: quadrature disagrees at z = " + fmt_double(z));
            }
            t.rows.push_back({z, f.C, f.S});
        }
        return t;
    }
    if (name == "dm") {
        require(range.lo >= 1, "circle dm: M must be positive");
        const auto sums = circle::G_partial_sums(o.delta, o.x, range.hi);
        Table t{"circle dm x=" + fmt_double(o.x) + " delta=" + fmt_double(o.delta),
                "compensated sum",
                {"M", "D", "closed"},
                true,
                {}};
        for (std::int64_t M = range.lo; M <= range.hi; ++M) {
            const double d = sums[static_cast<std::size_t>(M - 1)];
            const double closed = circle::fresnel_closed_sum(o.x, M);
            if (verify && o.delta == 0 && std::fabs(d - closed) > circle::fresnel_envelope(o.x))
                throw cross_check_failure("circle dm: closed form outside its envelope at M = " + std::to_string(M));
            t.rows.push_back({M, d, closed});
        }
        return t;
    }
    throw usage_error("circle: unknown command " + name);
}

// ---------------------------------------------------------------- entry point

inline int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Representation numbers, theta series and lattice-point sums", "qrep"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1, 1);
    Options o;

    auto common = [&](CLI::App * c, bool uses_n) {
        if (uses_n)
            c->add_option("--n", o.n, "range A..B or a single value");
        c->add_option("--out", o.out, "write to this file instead of stdout");
        c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--verify", o.verify, "oracle or none")->check(CLI::IsMember({"oracle", "none"}));
    };
    auto form_flags = [&](CLI::App * c) {
        c->add_option("--method", o.method, "closed, series or oracle");
        c->add_option("--diag", o.diag, "quadratic coefficients a,b,...");
        c->add_option("--lin", o.lin, "linear coefficients, one per --diag entry");
        c->add_option("--const", o.cst, "constant term");
    };

    std::vector<std::pair<std::string, CLI::App *>> leaves;
    auto leaf = [&](CLI::App * parent, const std::string & name, const std::string & help) {
        CLI::App * c = parent->add_subcommand(name, help);
        leaves.push_back({parent->get_name() + " " + name, c});
        return c;
    };

    CLI::App * count = app.add_subcommand("count", "representation counts, one row n,count per n");
    count->require_subcommand(1, 1);
    {
        auto * c = leaf(count, "quad", "sum a_i x_i^2 (+ b_i x_i) + const, divided by --scale");
        common(c, true);
        form_flags(c);
        c->add_option("--scale", o.scale, "divide the form by this");
        c->add_option("--domain", o.domain, "lattice or nonneg");
        c = leaf(count, "affine", "A x^2 + B y^2 + C x + D y + E");
        common(c, true);
        form_flags(c);
        c = leaf(count, "tri", "sums of N numbers (x^2 + m x)/2");
        common(c, true);
        c->add_option("--method", o.method, "closed, series or oracle");
        c->add_option("--m", o.m, "shift m");
        c->add_option("--N", o.N, "number of terms");
        c->add_option("--domain", o.domain, "lattice or nonneg");
        c = leaf(count, "power", "ordered pairs of nu-th powers (or polynomial values) summing to n");
        common(c, true);
        c->add_option("--method", o.method, "closed or oracle");
        c->add_option("--nu", o.nu, "exponent");
        c->add_option("--poly", o.poly, "polynomial coefficients c0,c1,... instead of powers");
        c = leaf(count, "cubic", "ordered integer pairs with x^3 + y^3 = n");
        common(c, true);
        c->add_option("--method", o.method, "closed or oracle");
        c = leaf(count, "quintic", "ordered nonnegative pairs with x^5 + y^5 = n");
        common(c, true);
        c->add_option("--method", o.method, "closed or oracle");
        c->add_option("--variant", o.variant, "amended or literal");
        c = leaf(count, "expmethod", "sum k_i x_i^2 + h_i x_i via the exponential of a divisor series");
        common(c, true);
        form_flags(c);
    }
    CLI::App * table = app.add_subcommand("table", "arithmetic function tables");
    table->require_subcommand(1, 1);
    {
        auto * c = leaf(table, "sigma", "divisor power sums");
        common(c, true);
        c->add_option("--nu", o.sigma_nu, "power");
        c = leaf(table, "chi", "the (k, h) character");
        common(c, true);
        c->add_option("--k", o.k, "k");
        c->add_option("--h", o.h, "h");
        c = leaf(table, "classnumber", "class numbers h(D) for D = -d, d in --n");
        common(c, true);
        c = leaf(table, "fkh", "the (k, h) divisor function");
        common(c, true);
        c->add_option("--k", o.k, "k");
        c->add_option("--h", o.h, "h");
    }
    CLI::App * theta = app.add_subcommand("theta", "theta series coefficients");
    theta->require_subcommand(1, 1);
    for (const char * kind : {"theta3", "phi", "psi", "fneg", "general", "triangular"}) {
        auto * c = leaf(theta, kind, std::string(kind) + " coefficients below q^order");
        common(c, false);
        c->add_option("--order", o.order, "truncation order in powers of q");
        if (std::string(kind) == "general") {
            c->add_option("--k", o.k, "k");
            c->add_option("--h", o.h, "h");
            c->add_flag("--alt", o.alt, "alternating signs");
        }
        if (std::string(kind) == "triangular") {
            c->add_option("--m", o.m, "shift m");
            c->add_option("--domain", o.domain, "lattice or nonneg");
        }
    }
    CLI::App * identity = app.add_subcommand("identity", "numeric and exact identity checks");
    identity->require_subcommand(1, 1);
    for (const char * kind : {"jacobik", "lambert", "app1", "sinh", "tripleproduct"}) {
        auto * c = leaf(identity, kind, std::string(kind) + " check");
        common(c, false);
        c->add_option("--tol", o.tol, "pass threshold for the residual");
        const std::string k = kind;
        if (k == "jacobik" || k == "lambert" || k == "app1")
            c->add_option("--r", o.r, "singular value parameter r");
        if (k == "lambert")
            c->add_option("--terms", o.terms, "outer terms");
        if (k == "app1") {
            c->add_option("--diag", o.diag, "A,B");
            c->add_option("--lin", o.lin, "C,D");
        }
        if (k == "sinh") {
            c->add_option("--x", o.x, "x > 0");
            c->add_option("--which", o.which, "chi0, triangular or kh");
            c->add_option("--k", o.k, "k");
            c->add_option("--h", o.h, "h");
        }
        if (k == "tripleproduct") {
            c->add_option("--p", o.p, "z = 2p + 1");
            c->add_option("--order", o.order, "truncation order in powers of q");
        }
    }
    CLI::App * circ = app.add_subcommand("circle", "lattice points in a disk and the series around them");
    circ->require_subcommand(1, 1);
    {
        auto * c = leaf(circ, "scan", "exact R(x) on a grid");
        common(c, false);
        c->add_option("--xmax", o.xmax, "largest x");
        c->add_option("--step", o.step, "grid step");
        c->add_option("--delta", o.delta, "exponent shift of the G sums");
        for (const char * kind : {"hardy", "rexp"}) {
            c = leaf(circ, kind, std::string(kind) == "hardy" ? "Bessel-series count" : "asymptotic expansion of R");
            common(c, false);
            c->add_option("--x", o.xs, "comma-separated x values");
            c->add_option("--ncut", o.ncut, "outer cutoff");
            c->add_option("--window", o.window, "cutoffs averaged");
            c->add_option("--passes", o.passes, "averaging passes");
            c->add_option("--tol", o.tol, "allowed error for --verify oracle");
            if (std::string(kind) == "rexp")
                c->add_option("--N", o.N, "expansion order");
        }
        c = leaf(circ, "fresnel", "Fresnel integrals");
        common(c, false);
        c->add_option("--z", o.zs, "comma-separated z values");
        c = leaf(circ, "dm", "partial sums of cos(2 pi sqrt(M x) + pi/4) / M^(3/4 - delta) and the closed form");
        common(c, true);
        c->add_option("--x", o.x, "x > 0");
        c->add_option("--delta", o.delta, "exponent shift in [0, 1/4)");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError & e) {
        err << "qrep: " << e.what() << "\n";
        return usage;
    }

    try {
        const std::string *family = nullptr, *name = nullptr;
        std::string family_s, name_s;
        for (const auto & [label, sub] : leaves)
            if (sub->parsed()) {
                family_s = label.substr(0, label.find(' '));
                name_s = sub->get_name();
            }
        family = &family_s;
        name = &name_s;
        if (name->empty())
            throw usage_error("missing command");
        const bool verify = o.verify == "oracle";
        Table t;
        if (*family == "count" || *family == "table" || *family == "circle") {
            const Range range = parse_range(o.n);
            if (*family == "count") {
                if (*name == "quad")
                    t = count_quad(o, range, verify);
                else if (*name == "affine")
                    t = count_affine(o, range, verify);
                else if (*name == "tri")
                    t = count_tri(o, range, verify);
                else if (*name == "power")
                    t = count_power(o, range, verify);
                else if (*name == "cubic")
                    t = count_cubic(o, range, verify);
                else if (*name == "quintic")
                    t = count_quintic(o, range, verify);
                else
                    t = count_expmethod(o, range, verify);
            } else if (*family == "table") {
                if (*name == "sigma")
                    t = table_sigma(o, range, verify);
                else if (*name == "chi")
                    t = table_chi(o, range, verify);
                else if (*name == "classnumber")
                    t = table_classnumber(o, range, verify);
                else
                    t = table_fkh(o, range, verify);
            } else
                t = circle_table(*name, o, range, verify);
        } else if (*family == "theta")
            t = theta_table(*name, o, verify);
        else
            t = identity_table(*name, o, verify);

        const std::string text = render(t, o.format);
        if (o.out.empty())
            out << text;
        else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f)
                throw precondition_error("cannot open " + o.out + " for writing");
            f << text;
        }
        return ok;
    } catch (const usage_error & e) {
        err << "qrep: " << e.what() << "\n";
        return usage;
    } catch (const cross_check_failure & e) {
        err << "qrep: cross-check failed: " << e.what() << "\n";
        return cross_check;
    } catch (const std::exception & e) {
        err << "qrep: " << e.what() << "\n";
        return precondition;
    }
}

} // namespace qrep::cli
