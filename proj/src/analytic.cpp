#include "regcert/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "regcert/errors.hpp"
#include "regcert/expr.hpp"
#include "regcert/geometry.hpp"

namespace regcert::analytic {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;

struct GaussRule {
    std::vector<long double> nodes;   // on [-1, 1]
    std::vector<long double> weights;
};

GaussRule gauss_legendre(int m)
{
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        long double x = std::cos(kPiL * (i + 0.75L) / (m + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1)
                p0 = 1.0L;
            dp = m * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L)
                break;
        }
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    return rule;
}

cplxl integrand_l(long double log_scale, long double sigma, long double t, const SignatureParams& sig)
{
    const cplxl s(sigma, t);
    const cplxl lg = -0.5L * s * log_scale + static_cast<long double>(sig.r1) * log_gamma_l(0.5L * s) +
                     static_cast<long double>(sig.r2) * log_gamma_l(s);
    return std::exp(lg) * (2.0L * s - 1.0L);
}

struct PanelSum {
    long double re = 0.0L;      // integral over [0, T] of Re F
    long double im_two_sided = 0.0L;
    long double abs = 0.0L;     // integral of |F|
    long double rounding = 0.0L;
};

// Relative error model for one integrand evaluation: absolute error of the exponent,
// which is dominated by the phase terms that grow like |s| log |s|.
long double exponent_error(long double log_scale, const cplxl& s, const SignatureParams& sig)
{
    const long double as = std::abs(s);
    const long double e = 0.5L * as * std::fabs(log_scale) + sig.r1 * 0.5L * as * (std::fabs(std::log(0.5L * as)) + 1.0L) +
                          sig.r2 * as * (std::fabs(std::log(as)) + 1.0L) + 40.0L;
    return 16.0L * std::numeric_limits<long double>::epsilon() * e;
}

PanelSum integrate(long double log_scale, long double sigma, long double T, int panels, const GaussRule& rule,
                   const SignatureParams& sig)
{
    PanelSum sum;
    const long double h = T / panels;
    for (int k = 0; k < panels; ++k) {
        const long double a = k * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const long double t = a + 0.5L * h * (1.0L + rule.nodes[i]);
            const long double w = 0.5L * h * rule.weights[i];
            const cplxl fp = integrand_l(log_scale, sigma, t, sig);
            const cplxl fm = integrand_l(log_scale, sigma, -t, sig);
            sum.re += w * fp.real();
            sum.im_two_sided += w * (fp.imag() + fm.imag());
            sum.abs += w * std::abs(fp);
            sum.rounding += w * std::abs(fp) * exponent_error(log_scale, cplxl(sigma, t), sig);
        }
    }
    return sum;
}

long double tail_bound(long double log_scale, long double sigma, long double T, const SignatureParams& sig)
{
    // |F| ~ poly(t) exp(-pi n t / 4); past t = 2 deg / rate the effective decay rate is at least rate / 2.
    const long double rate = kPiL * sig.n() / 4.0L;
    const long double deg = sig.r1 * (sigma / 2.0L - 0.5L) + sig.r2 * (sigma - 0.5L) + 1.0L;
    if (T < 2.0L * deg / rate)
        return std::numeric_limits<long double>::infinity();
    return 2.0L * std::abs(integrand_l(log_scale, sigma, T, sig)) / rate;
}

bool close_rel(double a, double b)
{
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

} // namespace

void SignatureParams::validate() const
{
    if (r1 < 0 || r2 < 0 || n() < 1)
        throw DomainError("signature: need r1, r2 >= 0 and n >= 1");
}

nlohmann::json GQuadratureConfig::to_json() const
{
    return {{"contour_sigma", contour_sigma},       {"tail_height", tail_height},
            {"panel_count", panel_count},           {"gauss_points", gauss_points},
            {"target_abs_error", target_abs_error}, {"max_panel_doublings", max_panel_doublings}};
}

cplx g_integrand(double log_scale, double sigma, double t, const SignatureParams& sig)
{
    const cplxl v = integrand_l(log_scale, sigma, t, sig);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

GEvaluation g_evaluate(double x, const SignatureParams& sig, const GQuadratureConfig& cfg)
{
    if (!(x > 0.0))
        throw DomainError("g: x must be positive");
    sig.validate();
    if (cfg.contour_sigma != 2.0)
        throw DomainError("g: the contour is fixed at Re s = 2");
    if (!(cfg.target_abs_error > 0.0) || cfg.gauss_points < 2)
        throw DomainError("g: invalid quadrature configuration");

    const long double sigma = cfg.contour_sigma;
    const long double log_scale =
        sig.n() * std::log(kPiL) + sig.r2 * std::log(4.0L) + std::log(static_cast<long double>(x));
    // g = 1/(2^{r1} 4 pi i) * i * int_{-inf}^{inf} F dt = 2 / (2^{r1} 4 pi) * int_0^inf Re F dt
    const long double scale = 2.0L / (std::ldexp(1.0L, sig.r1) * 4.0L * kPiL);
    const long double budget = cfg.target_abs_error;

    GEvaluation ev;
    long double T = cfg.tail_height;
    if (T <= 0.0L) {
        T = 1.0L;
        while (scale * tail_bound(log_scale, sigma, T, sig) > 0.1L * budget) {
            T += 0.5L;
            if (T > 500.0L)
                throw AccuracyError("g: tail height search exceeded 500", static_cast<double>(budget));
        }
    }
    ev.tail_height = static_cast<double>(T);
    ev.tail_estimate = static_cast<double>(scale * tail_bound(log_scale, sigma, T, sig));

    const GaussRule rule = gauss_legendre(cfg.gauss_points);
    int panels = cfg.panel_count > 0 ? cfg.panel_count : std::max(4, static_cast<int>(std::ceil(2.0L * T)));
    PanelSum coarse = integrate(log_scale, sigma, T, panels, rule, sig);
    PanelSum fine = integrate(log_scale, sigma, T, 2 * panels, rule, sig);
    if (cfg.panel_count <= 0) {
        for (int d = 0; d < cfg.max_panel_doublings; ++d) {
            if (scale * std::fabs(fine.re - coarse.re) <= 0.5L * budget)
                break;
            panels *= 2;
            coarse = fine;
            fine = integrate(log_scale, sigma, T, 2 * panels, rule, sig);
        }
    }
    ev.panels = 2 * panels;
    ev.value = static_cast<double>(scale * fine.re);
    ev.panel_error = static_cast<double>(scale * std::fabs(fine.re - coarse.re));
    ev.rounding_error = static_cast<double>(scale * fine.rounding) +
                        std::numeric_limits<double>::epsilon() * std::abs(static_cast<double>(scale * fine.re));
    ev.imag_residual = static_cast<double>(0.5L * scale * std::fabs(fine.im_two_sided));
    if (!std::isfinite(ev.value) || ev.error_estimate() > cfg.target_abs_error)
        throw AccuracyError("g: error budget not met", ev.error_estimate());
    return ev;
}

double g_value(double x, const SignatureParams& sig, const GQuadratureConfig& cfg)
{
    return g_evaluate(x, sig, cfg).value;
}

std::vector<double> big_g_terms(double d1, double d2, int N, const SignatureParams& sig,
                                const GQuadratureConfig& cfg)
{
    if (!(d1 > 0.0))
        throw DomainError("G: d1 must be positive");
    if (d1 > d2)
        throw DomainError("G: need d1 <= d2");
    if (N < 0)
        throw DomainError("G: N must be nonnegative");
    sig.validate();
    std::vector<double> terms(static_cast<std::size_t>(N));
    std::vector<std::string> errors(static_cast<std::size_t>(N));
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = 1; j <= N; ++j) {
        try {
            const double pj = std::pow(static_cast<double>(j), 2.0 * sig.n());
            const double a = g_value(pj / d1, sig, cfg);
            const double b = d1 == d2 ? a : g_value(pj / d2, sig, cfg);
            terms[j - 1] = std::min(a, b);
        } catch (const std::exception& e) {
            errors[j - 1] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty())
            throw AccuracyError("G: " + e, 0.0);
    return terms;
}

double big_g(double d1, double d2, int N, const SignatureParams& sig, const GQuadratureConfig& cfg)
{
    double sum = 0.0;
    for (double t : big_g_terms(d1, d2, N, sig, cfg))
        sum += t;
    return sum;
}

double reg_lower_bound(double d1, double d2, int N, const SignatureParams& sig, bool different_trivial, double d3,
                       const GQuadratureConfig& cfg)
{
    if (d1 > d2)
        throw DomainError("reg_lower_bound: need d1 <= d2");
    if (d2 > d3)
        throw DomainError("reg_lower_bound: need d2 <= d3");
    const double hyp = g_value(4.0 / d3, sig, cfg);
    if (hyp < 0.0)
        throw HypothesisError("reg_lower_bound: g(4/d3) = " + std::to_string(hyp) + " < 0");
    return (different_trivial ? 4.0 : 2.0) * big_g(d1, d2, N, sig, cfg);
}

double ScheduleStep::d1() const
{
    return parse_real_expr(d1_expr);
}

double ScheduleStep::d2() const
{
    return parse_real_expr(d2_expr);
}

Schedule Schedule::standard()
{
    Schedule s;
    s.printed_hypothesis = "8.5631";
    s.steps = {
        {"3030000", "e^20", 1, 4, "3.23"},
        {"e^20", "e^28", 3, 2, "13.295"},
        {"e^28", "e^31", 3, 2, "3.257"},
        {"e^31", "e^31.4", 3, 2, "4.195"},
        {"e^31.4", "e^31.492", 3, 2, "3.511"},
    };
    return s;
}

namespace {

std::string expr_field(const nlohmann::json& j, const char* key)
{
    const auto& v = j.at(key);
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number()) {
        // keep integers readable; other literals round-trip through %.17g
        const double d = v.get<double>();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        return buf;
    }
    throw ParseError(std::string("schedule: field '") + key + "' must be a string or number", 0);
}

} // namespace

Schedule Schedule::from_json(const nlohmann::json& j)
{
    Schedule s;
    s.printed_hypothesis.reset();
    if (j.contains("r1"))
        s.r1 = j.at("r1").get<int>();
    if (j.contains("r2"))
        s.r2 = j.at("r2").get<int>();
    if (j.contains("d3"))
        s.d3_expr = expr_field(j, "d3");
    if (j.contains("threshold"))
        s.threshold = j.at("threshold").get<double>();
    if (j.contains("cutoff"))
        s.cutoff_expr = expr_field(j, "cutoff");
    if (j.contains("different_trivial_max"))
        s.different_trivial_max_expr = expr_field(j, "different_trivial_max");
    if (j.contains("printed_hypothesis"))
        s.printed_hypothesis = j.at("printed_hypothesis").get<std::string>();
    for (const auto& st : j.at("steps")) {
        ScheduleStep step;
        step.d1_expr = expr_field(st, "d1");
        step.d2_expr = expr_field(st, "d2");
        step.N = st.at("N").get<int>();
        step.multiplier = st.at("multiplier").get<int>();
        if (step.multiplier != 2 && step.multiplier != 4)
            throw ParseError("schedule: multiplier must be 2 or 4", 0);
        if (st.contains("printed"))
            step.printed = st.at("printed").get<std::string>();
        // validates the expressions eagerly
        (void)step.d1();
        (void)step.d2();
        s.steps.push_back(step);
    }
    (void)parse_real_expr(s.d3_expr);
    (void)parse_real_expr(s.cutoff_expr);
    (void)parse_real_expr(s.different_trivial_max_expr);
    return s;
}

nlohmann::json Schedule::to_json() const
{
    nlohmann::json steps_json = nlohmann::json::array();
    for (const auto& st : steps) {
        nlohmann::json o = {{"d1", st.d1_expr}, {"d2", st.d2_expr}, {"N", st.N}, {"multiplier", st.multiplier}};
        if (st.printed)
            o["printed"] = *st.printed;
        steps_json.push_back(o);
    }
    nlohmann::json j = {{"r1", r1},
                        {"r2", r2},
                        {"d3", d3_expr},
                        {"threshold", threshold},
                        {"cutoff", cutoff_expr},
                        {"different_trivial_max", different_trivial_max_expr},
                        {"steps", steps_json}};
    if (printed_hypothesis)
        j["printed_hypothesis"] = *printed_hypothesis;
    return j;
}

std::string printed_agreement(double value, const std::string& printed)
{
    const double p = parse_real_expr(printed);
    const auto dot = printed.find('.');
    const int digits = dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
    const double ulp = std::pow(10.0, -digits);
    if (value >= p && value < p + ulp)
        return "digits";
    if (std::abs(value - p) <= 0.005)
        return "within-tolerance";
    return "deviation";
}

nlohmann::json IntervalStep::to_json() const
{
    nlohmann::json j = {{"d1", d1_expr},
                        {"d2", d2_expr},
                        {"d1_value", d1},
                        {"d2_value", d2},
                        {"N", N},
                        {"multiplier", multiplier},
                        {"computed_bound", computed_bound},
                        {"threshold", threshold},
                        {"status", to_string(status)},
                        {"terms", terms}};
    if (printed) {
        j["printed"] = *printed;
        j["printed_agreement"] = printed_agreement;
    }
    if (!note.empty())
        j["note"] = note;
    return j;
}

nlohmann::json TheoremReport::to_json() const
{
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& c : geometry_chain)
        chain.push_back(regcert::to_json(c));
    nlohmann::json st = nlohmann::json::array();
    for (const auto& s : steps)
        st.push_back(s.to_json());
    nlohmann::json j = {{"geometry_chain", chain},
                        {"hypothesis", regcert::to_json(hypothesis)},
                        {"coverage", regcert::to_json(coverage)},
                        {"steps", st},
                        {"verdict", verdict == Status::pass ? "PASS" : "FAIL"},
                        {"conclusion", conclusion},
                        {"config", config}};
    if (!failed_step.empty())
        j["failed_step"] = failed_step;
    return j;
}

TheoremReport verify_signature_theorem(const GQuadratureConfig& cfg, const Schedule& schedule)
{
    TheoremReport rep;
    const SignatureParams sig{schedule.r1, schedule.r2};
    sig.validate();
    const double d3 = parse_real_expr(schedule.d3_expr);
    const double cutoff = parse_real_expr(schedule.cutoff_expr);
    const double trivial_max = parse_real_expr(schedule.different_trivial_max_expr);
    rep.config = {{"quadrature", cfg.to_json()}, {"schedule", schedule.to_json()}, {"version", kVersion}};
    rep.config["config_hash"] = hex64(config_hash(rep.config));

    auto note_failure = [&](const std::string& name) {
        if (rep.failed_step.empty())
            rep.failed_step = name;
    };

    // Geometric side: R_k <= threshold forces log|D_k| below the Remak bound.
    if (sig.r1 == 5 && sig.r2 == 1) {
        double worst = 0.0;
        std::string worst_pattern;
        for (const auto& p : geometry::all_patterns_c1_positive()) {
            const auto c = geometry::p7_mixed_bound(p);
            if (c.p7_bound > worst) {
                worst = c.p7_bound;
                worst_pattern = p.str();
            }
        }
        auto p7 = BoundCertificate::make("p7_mixed_bound", CheckKind::upper_bound, std::exp(12.0), worst, 0.0);
        p7.inputs["worst_pattern"] = worst_pattern;
        p7.inputs["patterns"] = 16;
        rep.geometry_chain.push_back(p7);

        const double mk = geometry::mk_hermite_bound(schedule.threshold);
        const double A = geometry::remak_A(7, 1);
        const double log_disc = geometry::remak_disc_log_bound(mk, 7, 1, 12.0);
        auto remak =
            BoundCertificate::make("remak_log_disc_bound", CheckKind::upper_bound, std::log(d3), log_disc, 0.0);
        remak.inputs["regulator_upper"] = schedule.threshold;
        remak.inputs["mk_bound"] = mk;
        remak.inputs["remak_A"] = A;
        remak.inputs["log_p7"] = 12.0;
        rep.geometry_chain.push_back(remak);
    } else {
        auto c = BoundCertificate::make("remak_log_disc_bound", CheckKind::upper_bound, 0.0, 1.0, 0.0);
        c.inputs["reason"] = "geometric chain only available for signature (5,1)";
        rep.geometry_chain.push_back(c);
    }
    for (const auto& c : rep.geometry_chain)
        if (!c.passed())
            note_failure(c.step_name);

    const double hyp = g_value(4.0 / d3, sig, cfg);
    rep.hypothesis = BoundCertificate::make("hypothesis g(4/d3) >= 0", CheckKind::threshold, 0.0, hyp);
    rep.hypothesis.status = hyp >= 0.0 ? Status::pass : Status::fail;
    rep.hypothesis.inputs["d3"] = schedule.d3_expr;
    if (schedule.printed_hypothesis) {
        rep.hypothesis.inputs["printed"] = *schedule.printed_hypothesis;
        rep.hypothesis.inputs["printed_agreement"] = printed_agreement(hyp, *schedule.printed_hypothesis);
    }
    if (!rep.hypothesis.passed())
        note_failure(rep.hypothesis.step_name);

    // Coverage of [cutoff, d3] by the schedule intervals.
    std::vector<std::pair<double, double>> spans;
    for (const auto& st : schedule.steps)
        spans.emplace_back(st.d1(), st.d2());
    std::sort(spans.begin(), spans.end());
    double reach = cutoff;
    double max_gap = 0.0;
    for (const auto& [a, b] : spans) {
        if (a > reach && !close_rel(a, reach))
            max_gap = std::max(max_gap, std::log(a / reach));
        reach = std::max(reach, b);
    }
    if (reach < d3 && !close_rel(reach, d3))
        max_gap = std::max(max_gap, std::log(d3 / reach));
    rep.coverage = BoundCertificate::make("interval coverage of [cutoff, d3]", CheckKind::upper_bound, 0.0, max_gap, 0.0);
    rep.coverage.inputs["cutoff"] = schedule.cutoff_expr;
    rep.coverage.inputs["d3"] = schedule.d3_expr;
    if (!rep.coverage.passed())
        note_failure(rep.coverage.step_name);

    for (const auto& st : schedule.steps) {
        IntervalStep step;
        step.d1_expr = st.d1_expr;
        step.d2_expr = st.d2_expr;
        step.d1 = st.d1();
        step.d2 = st.d2();
        step.N = st.N;
        step.multiplier = st.multiplier;
        step.threshold = schedule.threshold;
        step.printed = st.printed;
        const std::string name =
            std::to_string(st.multiplier) + "G(" + st.d1_expr + ", " + st.d2_expr + ", " + std::to_string(st.N) + ")";
        const bool trivial_ok = st.multiplier == 2 || step.d2 <= trivial_max || close_rel(step.d2, trivial_max);
        if (!trivial_ok) {
            step.note = "multiplier 4 needs d2 <= " + schedule.different_trivial_max_expr;
            step.status = Status::fail;
        } else {
            step.terms = big_g_terms(step.d1, step.d2, st.N, sig, cfg);
            double sum = 0.0;
            for (double t : step.terms)
                sum += t;
            step.computed_bound = st.multiplier * sum;
            step.status = step.computed_bound > schedule.threshold ? Status::pass : Status::fail;
        }
        if (step.d2 > d3 && !close_rel(step.d2, d3)) {
            step.note = "d2 exceeds d3";
            step.status = Status::fail;
        }
        if (step.printed)
            step.printed_agreement = printed_agreement(step.computed_bound, *step.printed);
        if (step.status != Status::pass)
            note_failure(name);
        rep.steps.push_back(step);
    }

    rep.verdict = rep.failed_step.empty() ? Status::pass : Status::fail;
    char buf[256];
    if (rep.verdict == Status::pass)
        std::snprintf(buf, sizeof buf, "signature (%d,%d) with R_k <= %g implies |D_k| < %s", sig.r1, sig.r2,
                      schedule.threshold, schedule.cutoff_expr.c_str());
    else
        std::snprintf(buf, sizeof buf, "elimination incomplete: first failure at %s", rep.failed_step.c_str());
    rep.conclusion = buf;
    return rep;
}

} // namespace regcert::analytic
