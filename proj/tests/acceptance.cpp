// Acceptance run: one PASS/FAIL line per criterion, sub-checks indented below it.
//
// Exit status is 0 when every criterion passes, or when the only failing sub-checks are
// listed in kKnownDeviations and still reproduce the documented value. Any other
// failure, or a known deviation that drifts, exits 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "regcert/analytic.hpp"
#include "regcert/embeddings.hpp"
#include "regcert/expr.hpp"
#include "regcert/gamma.hpp"
#include "regcert/geometry.hpp"
#include "regcert/oracle.hpp"
#include "regcert/polynomial.hpp"
#include "regcert/units.hpp"

using namespace regcert;

namespace {

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
    double value = 0.0;
};

struct Known {
    std::string check;
    double value;       // what the check is expected to compute instead of the printed number
    double tolerance;
    const char* note;
};

// 2G(e^20, e^28, 3) printed as 13.295: that is the N = 1 sum (13.2954); the three-term
// sum is 13.3557 (40-digit mpmath). The theorem step still clears 3.2 either way.
const std::vector<Known> kKnownDeviations = {
    {"2G(e^20,e^28,3) = 13.295", 13.35573, 5e-3, "printed value equals the N = 1 sum 13.2954"},
};

std::vector<Check> checks;

void check(std::string name, bool ok, std::string detail, double value = 0.0)
{
    checks.push_back({std::move(name), ok, std::move(detail), value});
}

std::string fmt(const char* f, double x)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

void close_to(const std::string& name, double computed, double printed, double tol)
{
    const double err = std::abs(computed - printed);
    check(name, err <= tol, fmt("computed %.10g", computed) + fmt(", |diff| %.3g", err) + fmt(" (tol %.0e)", tol),
          computed);
}

void at_most(const std::string& name, double computed, double printed, double slack)
{
    check(name, computed <= printed + slack, fmt("computed %.10g", computed) + fmt(" <= %.10g", printed), computed);
}

struct Outcome {
    bool passed = true;
    bool unexpected = false;
};

Outcome run_criterion(int id, const char* title, const std::function<void()>& body)
{
    checks.clear();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        check("exception", false, e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Outcome out;
    std::vector<std::string> notes;
    for (const auto& c : checks) {
        if (c.ok)
            continue;
        out.passed = false;
        bool explained = false;
        for (const auto& k : kKnownDeviations)
            if (k.check == c.name && std::abs(c.value - k.value) <= k.tolerance) {
                explained = true;
                notes.push_back(std::string("known deviation: ") + k.note);
            }
        if (!explained)
            out.unexpected = true;
    }
    std::printf("%s criterion %d: %s (%.2fs)\n", out.passed ? "PASS" : "FAIL", id, title, secs);
    for (const auto& c : checks)
        std::printf("    [%s] %s: %s\n", c.ok ? "ok" : "FAIL", c.name.c_str(), c.detail.c_str());
    for (const auto& n : notes)
        std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    return out;
}

// ---- criterion bodies ----

void geometric_constants()
{
    close_to("b_r_bound(3,2) = 4842.63", geometry::b_r_bound(3, 2), 4842.63, 1e-2);
    close_to("b_r_bound(4,1) = 40623.98", geometry::b_r_bound(4, 1), 40623.98, 1e-2);

    double worst[4] = {0.0, 0.0, 0.0, 0.0};
    for (const auto& p : geometry::all_patterns_c1_positive()) {
        const auto c = geometry::p7_mixed_bound(p);
        worst[c.case_id] = std::max(worst[c.case_id], c.p7_bound);
    }
    at_most("case 1: P_7 < 77483", worst[1], 77483.0, 1e-2);
    at_most("case 2: P_7 < e^12", worst[2], std::exp(12.0), 1e-2);
    close_to("e^12 = 162754.79", std::exp(12.0), 162754.79, 1e-2);
    close_to("case 3: P_7 <= 4096", worst[3], 4096.0, 1e-2);
}

void disc_bound_chain()
{
    const double mk = geometry::mk_hermite_bound(3.2);
    close_to("m_k bound at 3.2 = 1.85847", mk, 1.85847, 1e-5);
    close_to("A(7,1) = 10.48809", geometry::remak_A(7, 1), 10.48809, 1e-5);
    close_to("log|D| bound = 31.4917", geometry::remak_disc_log_bound(mk, 7, 1, 12.0), 31.4917, 1e-3);
}

void analytic_values()
{
    const analytic::GQuadratureConfig cfg;
    const analytic::SignatureParams sig{5, 1};
    const double d3 = std::exp(31.492);
    close_to("g(4/e^31.492; 5,1) = 8.5631", analytic::g_value(4.0 / d3, sig, cfg), 8.5631, 5e-3);
    const auto two_g = [&](double a, double b, int n) { return analytic::reg_lower_bound(a, b, n, sig, false, d3, cfg); };
    close_to("2G(e^31.4,e^31.492,3) = 3.511", two_g(std::exp(31.4), d3, 3), 3.511, 5e-3);
    close_to("2G(e^31,e^31.4,3) = 4.195", two_g(std::exp(31.0), std::exp(31.4), 3), 4.195, 5e-3);
    close_to("2G(e^28,e^31,3) = 3.257", two_g(std::exp(28.0), std::exp(31.0), 3), 3.257, 5e-3);
    close_to("2G(e^20,e^28,3) = 13.295", two_g(std::exp(20.0), std::exp(28.0), 3), 13.295, 5e-3);
    close_to("4G(3030000,e^20,1) = 3.23",
             analytic::reg_lower_bound(3030000.0, std::exp(20.0), 1, sig, true, d3, cfg), 3.23, 5e-3);
}

void theorem_replay()
{
    const auto rep = analytic::verify_signature_theorem(analytic::GQuadratureConfig{});
    check("five interval steps", rep.steps.size() == 5, std::to_string(rep.steps.size()) + " steps");
    for (const auto& s : rep.steps)
        check("step " + s.d1_expr + " .. " + s.d2_expr, s.status == Status::pass,
              fmt("bound %.6f", s.computed_bound) + fmt(" > threshold %.1f", s.threshold));
    check("hypothesis g(4/d3) >= 0", rep.hypothesis.passed(), fmt("g = %.6f", rep.hypothesis.attained_or_checked));
    check("coverage of [3030000, d3]", rep.coverage.passed(), "");
    bool chain = !rep.geometry_chain.empty();
    for (const auto& c : rep.geometry_chain)
        chain = chain && c.passed();
    check("geometry chain", chain, std::to_string(rep.geometry_chain.size()) + " certificates");
    check("verdict PASS", rep.verdict == Status::pass, to_string(rep.verdict));
}

void table2_exact()
{
    for (const auto& row : load_table2(default_table2_path())) {
        const auto f = parse_poly(row.polynomial);
        const mpz_class d = discriminant(f);
        check("disc " + row.polynomial, d == row.discriminant, d.get_str() + " vs " + row.discriminant.get_str());
        const auto s = signature(f);
        check("signature " + row.polynomial, s == Signature{5, 1},
              "(" + std::to_string(s.r1) + "," + std::to_string(s.r2) + ")");
    }
}

void table2_regulators()
{
    Table2Config cfg;
    cfg.height_cap = 8;
    const auto table = load_table2(default_table2_path());
    const auto rep = verify_table2(table, cfg);
    for (const auto& r : rep.rows) {
        const bool match = r.regulator && std::abs(*r.regulator - table[r.row - 1].regulator) <= 5e-5;
        std::string detail = r.status;
        if (r.regulator)
            detail += fmt(", R'/m = %.6f", *r.regulator) + " (m = " + std::to_string(r.multiplier.value_or(0)) +
                      fmt(", lb %.4f)", r.analytic_lower_bound);
        check("row " + std::to_string(r.row) + " regulator " + r.regulator_expected, match, detail);
        if (r.row <= 3)
            check("row " + std::to_string(r.row) + " certified", r.certified, r.status);
    }
    check("rows 1-3 and only 1-3 below 3.2", rep.below_threshold_ok, "");
    check("row 1 is the minimum", rep.minimum_ok, "");
}

std::uint64_t kSamples = 100000;

void property_suites()
{
    using oracle::Request;
    using oracle::Target;
    const auto run = [](Request req, const std::string& label) {
        req.samples = kSamples;
        const auto cert = oracle::numeric_max_oracle(req);
        check(label, cert.passed(),
              fmt("max %.9g", cert.attained_or_checked) + fmt(" vs bound %.9g", cert.bound) + ", " +
                  std::to_string(cert.samples) + " samples");
    };
    for (int n : {3, 5, 7, 9}) {
        Request r;
        r.n = n;
        r.target = Target::pn_complex;
        run(r, "P_n <= n^n, n = " + std::to_string(n));
        r.target = Target::pn_real;
        run(r, "real P_n <= 4^floor(n/2), n = " + std::to_string(n));
    }
    for (int n : {4, 7, 11}) {
        Request r;
        r.n = n;
        r.target = Target::pn_real;
        if (n == 11)
            run(r, "real P_n <= 4^floor(n/2), n = 11");
        r.target = Target::factor_identity;
        run(r, "P_n = P_{n-2} B_{n-2}, n = " + std::to_string(n));
    }
    for (Target t : {Target::ray, Target::pohst_i, Target::pohst_ii, Target::pohst_iii}) {
        Request r;
        r.target = t;
        run(r, oracle::target_name(t));
    }
    {
        Request r;
        r.target = Target::ray;
        r.c_nonnegative = false;
        run(r, "ray, c <= 0");
    }
    for (auto [a, b] : std::vector<std::pair<double, double>>{{5, 2}, {3, 1}, {4, 3}, {1, 1}}) {
        Request r;
        r.target = Target::cos_ineq;
        r.a = a;
        r.b = b;
        run(r, fmt("cos_ineq a = %.0f", a) + fmt(", b = %.0f", b));
    }
    for (const auto& p : geometry::all_patterns_c1_positive()) {
        Request r;
        r.target = Target::b_r;
        r.pattern = p;
        run(r, "B_5 bound, " + p.str());
    }
    for (const auto& p : geometry::table1_patterns()) {
        Request r;
        r.pattern = p;
        r.target = Target::p5_case2;
        run(r, "case 2 P_5 <= 4, " + p.str());
        r.target = Target::case2_groups;
        run(r, "case 2 groups, " + p.str());
    }
    {
        Request r;
        r.target = Target::case3_r;
        run(r, "case 3 R_{l,l'} <= 2");
        r.target = Target::p7_global;
        run(r, "sampled P_7 < e^12, r_1 > 0");
    }

    // Plain uniform sampling, independent of the oracle's Halton/hill-climb machinery.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, std::numbers::pi);
    double worst_real = 0.0, worst_cplx = 0.0, worst_factor = 0.0;
    for (std::uint64_t i = 0; i < kSamples; ++i) {
        std::vector<double> r(7);
        for (auto& x : r) {
            x = u(rng) * 3.0;
            if (x == 0.0)
                x = 1.0;
        }
        std::sort(r.begin(), r.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        worst_real = std::max(worst_real, geometry::p_n(r) / geometry::classical_upper(7, true));

        const double x = std::abs(u(rng)) * 3.0 + 1e-3, th = ang(rng);
        std::vector<double> five(r.begin(), r.begin() + 5);
        const auto fm = geometry::factor_mixed(five, x, th);
        const auto zs = fm.conjugates.sorted_conjugates();
        const double full = geometry::p_n(zs);
        worst_cplx = std::max(worst_cplx, full / std::pow(7.0, 7));
        worst_factor = std::max(worst_factor, std::abs(full - fm.p_sub * fm.b_sub) / std::max(1.0, full));
    }
    check("uniform real P_7 <= 4^3", worst_real <= 1.0 + 1e-9, fmt("max ratio %.6f", worst_real));
    check("uniform mixed P_7 <= 7^7", worst_cplx <= 1.0 + 1e-9, fmt("max ratio %.3g", worst_cplx));
    check("uniform factorization identity", worst_factor <= 1e-9, fmt("max rel err %.3g", worst_factor));
}

IntPolynomial random_poly(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> deg(2, 8);
    std::uniform_int_distribution<long> c(-9, 9);
    const int n = deg(rng);
    std::vector<mpz_class> coeffs(n + 1);
    for (auto& x : coeffs)
        x = c(rng);
    if (coeffs[n] == 0)
        coeffs[n] = 1;
    return IntPolynomial(coeffs);
}

void dual_oracles()
{
    std::mt19937_64 rng(42);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto f = random_poly(rng);
        if (discriminant(f) != oracle_ref::sylvester_discriminant(f))
            ++mismatches;
    }
    check("discriminant: subresultant vs Sylvester, 1000 polys", mismatches == 0,
          std::to_string(mismatches) + " mismatches");

    std::uniform_real_distribution<double> re(-20.0, 40.0), im(-60.0, 60.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const analytic::cplx z(re(rng), im(rng));
        if (std::abs(z.imag()) < 1e-3 && z.real() < 0.5)
            continue;
        const auto a = analytic::complex_log_gamma(z);
        const auto b = oracle_ref::lanczos_log_gamma(z);
        const double two_pi = 2.0 * std::numbers::pi;
        const double dim = a.imag() - b.imag();
        const double err = std::max(std::abs(a.real() - b.real()), std::abs(dim - two_pi * std::round(dim / two_pi)));
        worst = std::max(worst, err / std::max(1.0, std::abs(b)));
    }
    check("log Gamma: Stirling vs Lanczos, 1e5 points", worst <= 1e-12, fmt("max rel err %.3g", worst));

    // Default adaptive config against fixed 32-point Gauss, 64 panels, tail at 60.
    // Below e^-30 the long double rounding bound exceeds 1e-9, so the budget there is 1e-8.
    double gworst = 0.0;
    for (double lx : {-20.0, -24.0, -28.0, -31.0, -31.492}) {
        analytic::GQuadratureConfig a;
        a.target_abs_error = lx > -30.0 ? 1e-9 : 1e-8;
        auto b = a;
        b.gauss_points = 32;
        b.tail_height = 60.0;
        b.panel_count = 64;
        const double x = std::exp(lx);
        gworst = std::max(gworst, std::abs(analytic::g_value(x, {}, a) - analytic::g_value(x, {}, b)));
    }
    check("g: dual quadrature configurations", gworst <= 1e-8, fmt("max |diff| %.3g", gworst));
}

} // namespace

int main(int argc, char** argv)
{
    if (argc > 1)
        kSamples = std::stoull(argv[1]);

    bool unexpected = false;
    int passed = 0;
    const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
        {"geometric constants", geometric_constants},
        {"discriminant bound chain", disc_bound_chain},
        {"analytic values", analytic_values},
        {"theorem replay", theorem_replay},
        {"table exact checks", table2_exact},
        {"table regulators", table2_regulators},
        {"property suites", property_suites},
        {"dual-oracle agreement", dual_oracles},
    };
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto o = run_criterion(static_cast<int>(i + 1), criteria[i].first, criteria[i].second);
        passed += o.passed;
        unexpected = unexpected || o.unexpected;
    }
    std::printf("%d/%zu criteria pass; %s\n", passed, criteria.size(),
                unexpected ? "unexpected failures present" : "all failures are documented deviations");
    return unexpected ? 1 : 0;
}
