#include "regcert/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "regcert/analytic.hpp"
#include "regcert/certificate.hpp"
#include "regcert/errors.hpp"
#include "regcert/expr.hpp"
#include "regcert/geometry.hpp"
#include "regcert/oracle.hpp"
#include "regcert/polynomial.hpp"
#include "regcert/units.hpp"

namespace regcert::cli {

namespace {

using nlohmann::json;

struct Common {
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 42;
};

struct QuadOpts {
    double target = 1e-8;
    double tail = 0.0;
    int panels = 0;
    int gauss = 20;

    analytic::GQuadratureConfig config() const
    {
        analytic::GQuadratureConfig c;
        c.target_abs_error = target;
        c.tail_height = tail;
        c.panel_count = panels;
        c.gauss_points = gauss;
        return c;
    }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app->add_option("--output", c.output, "Also write the report to this file");
    app->add_option("--seed", c.seed, "Seed recorded in the certificate (and used by samplers)");
}

void add_quadrature(CLI::App* app, QuadOpts& q)
{
    app->add_option("--target-error", q.target, "Absolute error budget for g(x)")->check(CLI::PositiveNumber);
    app->add_option("--tail-height", q.tail, "Contour truncation height T (0 = automatic)");
    app->add_option("--panels", q.panels, "Initial panel count (0 = automatic)");
    app->add_option("--gauss-points", q.gauss, "Gauss-Legendre points per panel");
}

double expr_value(const std::string& text, const char* flag)
{
    try {
        return parse_real_expr(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

IntPolynomial poly_value(const std::string& text)
{
    try {
        return parse_poly(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("--poly: ") + e.what());
    }
}

geometry::SignPattern pattern_value(const std::string& text)
{
    geometry::SignPattern p;
    try {
        p = geometry::SignPattern::parse(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string("--signs: ") + e.what());
    }
    if (p.signs[0] != geometry::Sign::plus)
        throw UsageError("--signs: the first sign must be '+'");
    return p;
}

json case_json(const geometry::CaseCertificate& c)
{
    return {{"case_id", c.case_id},
            {"a", c.a},
            {"b", c.b},
            {"f", c.f},
            {"p_small_bound", c.p_small_bound},
            {"b5_bound", c.b5_bound},
            {"p7_bound", c.p7_bound},
            {"table1_row", c.table1_row},
            {"canonical_row", c.canonical_row},
            {"reversed", c.reversed},
            {"grouping", c.grouping}};
}

struct Report {
    std::string command;
    json config;
    json result;
    bool pass = true;
};

std::string render(const json& j, const std::string& format)
{
    return format == "table" ? flatten(j) : j.dump(2) + "\n";
}

void emit(const Report& rep, const Common& common, Result& out)
{
    json cfg = rep.config;
    cfg["seed"] = common.seed;
    json envelope = {{"artifact", "regcert"},
                     {"version", std::string(kVersion)},
                     {"command", rep.command},
                     {"seed", common.seed},
                     {"config", cfg},
                     {"config_hash", hex64(config_hash({{"command", rep.command}, {"config", cfg}}))},
                     {"result", rep.result},
                     {"status", rep.pass ? "pass" : "fail"}};
    const std::string body = render(envelope, common.format);
    out.out += body;
    std::string path = common.output;
    if (path.empty()) {
        if (const char* dir = std::getenv("REGCERT_OUTPUT_DIR"); dir && *dir) {
            std::string name = rep.command;
            for (auto& ch : name)
                if (ch == ' ')
                    ch = '_';
            path = (std::filesystem::path(dir) / (name + (common.format == "table" ? ".txt" : ".json"))).string();
        }
    }
    if (!path.empty()) {
        const auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty())
            std::filesystem::create_directories(parent);
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot write " + path);
        f << body;
    }
    out.exit_code = rep.pass ? kExitPass : kExitFail;
}

void flatten_into(const json& j, const std::string& path, std::string& out)
{
    if (j.is_object() && !j.empty()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_into(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array() && !j.empty()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_into(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out += path + " = " + j.dump() + "\n";
    }
}

} // namespace

std::string flatten(const json& j)
{
    std::string out;
    flatten_into(j, "", out);
    return out;
}

Result run(const std::vector<std::string>& args)
{
    Result res;
    CLI::App app{"Proof replay and certificates for the minimal regulator of degree-7 fields with signature (5,1)",
                 "regcert"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Common common;

    auto* geom = app.add_subcommand("geom", "Geometric Remak-Pohst bounds")->require_subcommand(1);
    auto* g_p7 = geom->add_subcommand("p7-bound", "Case certificate for one sign pattern");
    std::string signs = "+,+,+,+,-";
    g_p7->add_option("--signs", signs, "Five signs of c_1..c_5, first '+'")->required();
    add_common(g_p7, common);

    auto* g_verify = geom->add_subcommand("verify", "Sampled maximum of a bounded quantity");
    std::string target = "p7";
    std::string v_signs;
    oracle::Request req;
    bool serial = false;
    g_verify->add_option("--target", target, "Quantity to sample")->required();
    g_verify->add_option("--samples", req.samples, "Number of quasi-random samples");
    g_verify->add_option("--signs", v_signs, "Sign pattern (p7, b_r, p5_case2, case2_groups)");
    g_verify->add_option("--a", req.a, "cos_ineq exponent a");
    g_verify->add_option("--b", req.b, "cos_ineq exponent b");
    g_verify->add_option("--n", req.n, "Degree for pn_complex / pn_real / factor_identity");
    g_verify->add_flag("--c-negative", "ray: sample c < 0");
    g_verify->add_flag("--serial", serial, "Use the serial reference kernel");
    add_common(g_verify, common);

    auto* g_disc = geom->add_subcommand("disc-bound", "m_k bound, Remak A(k) and log|D| bound");
    double regulator = 3.2;
    g_disc->add_option("--regulator", regulator, "Regulator upper bound R");
    add_common(g_disc, common);

    auto* an = app.add_subcommand("analytic", "Analytic regulator lower bounds")->require_subcommand(1);
    QuadOpts quad;
    auto* a_g = an->add_subcommand("g", "Evaluate g(x)");
    std::string x_expr;
    analytic::SignatureParams sig;
    a_g->add_option("--x", x_expr, "Argument, e.g. 4/e^31.492")->required();
    a_g->add_option("--r1", sig.r1, "Real places");
    a_g->add_option("--r2", sig.r2, "Complex places");
    add_quadrature(a_g, quad);
    add_common(a_g, common);

    auto* a_lb = an->add_subcommand("lb", "2G(d1,d2,N) or 4G lower bound");
    std::string d1_expr, d2_expr, d3_expr = "e^31.492";
    int big_n = 3;
    int multiplier = 2;
    std::optional<double> threshold;
    a_lb->add_option("--d1", d1_expr, "Lower discriminant bound")->required();
    a_lb->add_option("--d2", d2_expr, "Upper discriminant bound")->required();
    a_lb->add_option("--N", big_n, "Number of terms")->check(CLI::PositiveNumber);
    a_lb->add_option("--multiplier", multiplier, "2, or 4 when the different class is trivial")
        ->check(CLI::IsMember({2, 4}));
    a_lb->add_flag_callback("--different-trivial", [&] { multiplier = 4; }, "Same as --multiplier 4");
    a_lb->add_option("--d3", d3_expr, "Hypothesis point: g(4/d3) >= 0 is checked");
    a_lb->add_option("--threshold", threshold, "Also check bound > threshold");
    a_lb->add_option("--r1", sig.r1, "Real places");
    a_lb->add_option("--r2", sig.r2, "Complex places");
    add_quadrature(a_lb, quad);
    add_common(a_lb, common);

    auto* a_th = an->add_subcommand("theorem", "Replay the discriminant-interval elimination");
    std::string schedule_path;
    a_th->add_option("--schedule", schedule_path, "JSON schedule (default: the published one)");
    add_quadrature(a_th, quad);
    add_common(a_th, common);

    auto* field = app.add_subcommand("field", "Number field checks")->require_subcommand(1);
    std::string poly_text;
    auto* f_disc = field->add_subcommand("disc", "Polynomial discriminant");
    f_disc->add_option("--poly", poly_text, "Polynomial in x")->required();
    add_common(f_disc, common);
    auto* f_sig = field->add_subcommand("signature", "Signature (r1, r2)");
    f_sig->add_option("--poly", poly_text, "Polynomial in x")->required();
    add_common(f_sig, common);
    auto* f_reg = field->add_subcommand("regulator", "Unit search and regulator multiple");
    int height = 3;
    int height_cap = 0;
    f_reg->add_option("--poly", poly_text, "Monic polynomial in x")->required();
    f_reg->add_option("--height", height, "Coordinate box [-h, h]")->check(CLI::Range(1, 12));
    f_reg->add_option("--height-cap", height_cap, "Escalate by doubling up to this height")->check(CLI::Range(1, 12));
    f_reg->add_option("--N", big_n, "Terms in the analytic lower bound");
    add_quadrature(f_reg, quad);
    add_common(f_reg, common);
    auto* f_tab = field->add_subcommand("table2", "Verify the seven fields of the field table");
    Table2Config tcfg;
    std::string table_path = default_table2_path();
    bool timing = false;
    f_tab->add_option("--height-cap", tcfg.height_cap, "Maximum search height")->check(CLI::Range(1, 12));
    f_tab->add_option("--start-height", tcfg.start_height, "Initial search height")->check(CLI::Range(1, 12));
    f_tab->add_option("--table2", table_path, "Data file override");
    f_tab->add_option("--N", tcfg.lb_terms, "Terms in the analytic lower bound");
    f_tab->add_flag("--timing", timing, "Include wall_time (makes output run-dependent)");
    add_quadrature(f_tab, quad);
    add_common(f_tab, common);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        res.out = o.str();
        res.err = er.str();
        res.exit_code = code == 0 ? kExitPass : kExitUsage;
        return res;
    }

    try {
        Report rep;
        if (g_p7->parsed()) {
            const auto p = pattern_value(signs);
            const auto c = geometry::p7_mixed_bound(p);
            rep.command = "geom p7-bound";
            rep.config = {{"signs", p.str()}};
            const double e12 = std::exp(12.0);
            rep.result = {{"pattern", p.str()},
                          {"d_plus", p.d_plus()},
                          {"d_minus", p.d_minus()},
                          {"case_certificate", case_json(c)},
                          {"global_bound", e12}};
            rep.pass = c.p7_bound <= e12;
        } else if (g_verify->parsed()) {
            try {
                req.target = oracle::parse_target(target);
            } catch (const UnsupportedError& e) {
                throw UsageError(std::string("--target: ") + e.what());
            }
            if (!v_signs.empty())
                req.pattern = pattern_value(v_signs);
            req.seed = common.seed;
            req.c_nonnegative = g_verify->count("--c-negative") == 0;
            const BoundCertificate cert = serial ? oracle::numeric_max_oracle_serial(req) : oracle::numeric_max_oracle(req);
            rep.command = "geom verify";
            rep.config = {{"target", oracle::target_name(req.target)},
                          {"samples", req.samples},
                          {"signs", req.pattern ? json(req.pattern->str()) : json(nullptr)},
                          {"a", req.a},
                          {"b", req.b},
                          {"n", req.n},
                          {"c_nonnegative", req.c_nonnegative},
                          {"refine_candidates", req.refine_candidates},
                          {"refine_sweeps", req.refine_sweeps}};
            rep.result = to_json(cert);
            rep.pass = cert.passed();
        } else if (g_disc->parsed()) {
            const double mk = geometry::mk_hermite_bound(regulator);
            const double a = geometry::remak_A(7, 1);
            const double log_p7 = 12.0;
            const double bound = geometry::remak_disc_log_bound(mk, 7, 1, log_p7);
            const double d3 = std::log(parse_real_expr("e^31.492"));
            rep.command = "geom disc-bound";
            rep.config = {{"regulator", regulator}, {"n", 7}, {"r2", 1}};
            rep.result = {{"m_k_bound", mk},
                          {"remak_A", a},
                          {"log_p7_bound", log_p7},
                          {"log_disc_bound", bound},
                          {"log_d3", d3},
                          {"below_log_d3", bound <= d3}};
            rep.pass = true;
        } else if (a_g->parsed()) {
            const double x = expr_value(x_expr, "--x");
            sig.validate();
            const auto cfg = quad.config();
            const auto ev = analytic::g_evaluate(x, sig, cfg);
            rep.command = "analytic g";
            rep.config = {{"x", x_expr}, {"r1", sig.r1}, {"r2", sig.r2}, {"quadrature", cfg.to_json()}};
            rep.result = {{"x", x},
                          {"g", ev.value},
                          {"error_estimate", ev.error_estimate()},
                          {"tail_estimate", ev.tail_estimate},
                          {"panel_error", ev.panel_error},
                          {"rounding_error", ev.rounding_error},
                          {"imag_residual", ev.imag_residual},
                          {"tail_height", ev.tail_height},
                          {"panels", ev.panels}};
            rep.pass = true;
        } else if (a_lb->parsed()) {
            const double d1 = expr_value(d1_expr, "--d1");
            const double d2 = expr_value(d2_expr, "--d2");
            const double d3 = expr_value(d3_expr, "--d3");
            sig.validate();
            const auto cfg = quad.config();
            const bool trivial = multiplier == 4;
            const double trivial_max = parse_real_expr("e^20");
            const double hyp = analytic::g_value(4.0 / d3, sig, cfg);
            const auto terms = analytic::big_g_terms(d1, d2, big_n, sig, cfg);
            double g = 0.0;
            for (double t : terms)
                g += t;
            const double bound = analytic::reg_lower_bound(d1, d2, big_n, sig, trivial, d3, cfg);
            rep.command = "analytic lb";
            rep.config = {{"d1", d1_expr},
                          {"d2", d2_expr},
                          {"d3", d3_expr},
                          {"N", big_n},
                          {"multiplier", multiplier},
                          {"r1", sig.r1},
                          {"r2", sig.r2},
                          {"threshold", threshold ? json(*threshold) : json(nullptr)},
                          {"quadrature", cfg.to_json()}};
            json checks = {{"hypothesis_g_4_over_d3", hyp}};
            rep.pass = hyp >= 0.0;
            if (trivial) {
                checks["multiplier_4_allowed"] = d2 <= trivial_max;
                rep.pass = rep.pass && d2 <= trivial_max;
            }
            if (threshold) {
                checks["exceeds_threshold"] = bound > *threshold;
                rep.pass = rep.pass && bound > *threshold;
            }
            rep.result = {{"d1", d1}, {"d2", d2}, {"G", g}, {"terms", terms}, {"bound", bound}, {"checks", checks}};
        } else if (a_th->parsed()) {
            analytic::Schedule sched = analytic::Schedule::standard();
            if (!schedule_path.empty()) {
                std::ifstream in(schedule_path);
                if (!in)
                    throw UsageError("--schedule: cannot open " + schedule_path);
                try {
                    sched = analytic::Schedule::from_json(json::parse(in));
                } catch (const json::exception& e) {
                    throw UsageError(std::string("--schedule: ") + e.what());
                }
            }
            const auto cfg = quad.config();
            const auto report = analytic::verify_signature_theorem(cfg, sched);
            rep.command = "analytic theorem";
            rep.config = {{"schedule", sched.to_json()}, {"quadrature", cfg.to_json()}};
            rep.result = report.to_json();
            rep.pass = report.verdict == Status::pass;
        } else if (f_disc->parsed()) {
            const auto f = poly_value(poly_text);
            if (f.degree() < 1)
                throw UsageError("--poly: degree must be at least 1");
            rep.command = "field disc";
            rep.config = {{"poly", f.str()}};
            rep.result = {{"polynomial", f.str()}, {"degree", f.degree()}, {"discriminant", discriminant(f).get_str()}};
        } else if (f_sig->parsed()) {
            const auto f = poly_value(poly_text);
            if (f.degree() < 1)
                throw UsageError("--poly: degree must be at least 1");
            const auto s = signature(f);
            rep.command = "field signature";
            rep.config = {{"poly", f.str()}};
            rep.result = {{"polynomial", f.str()},
                          {"r1", s.r1},
                          {"r2", s.r2},
                          {"signature", "(" + std::to_string(s.r1) + "," + std::to_string(s.r2) + ")"}};
        } else if (f_reg->parsed()) {
            const auto f = poly_value(poly_text);
            if (!f.is_monic() || f.degree() < 2)
                throw UsageError("--poly: a monic polynomial of degree >= 2 is required");
            const int cap = std::max(height, height_cap);
            const EmbeddingSet emb = embeddings(f);
            std::optional<UnitSystem> sys;
            std::string detail;
            int h = height;
            std::size_t found = 0;
            for (;;) {
                const auto units = enumerate_units(f, h);
                found = units.size();
                try {
                    sys = regulator_multiple(f, emb, units);
                    break;
                } catch (const InsufficientUnitsError& e) {
                    detail = e.what();
                    if (h >= cap)
                        break;
                    h = std::min(2 * h, cap);
                }
            }
            const mpz_class disc = discriminant(f);
            rep.command = "field regulator";
            rep.config = {{"poly", f.str()}, {"height", height}, {"height_cap", cap}, {"N", big_n},
                          {"quadrature", quad.config().to_json()}};
            json r = {{"polynomial", f.str()},
                      {"discriminant", disc.get_str()},
                      {"signature", {emb.signature().r1, emb.signature().r2}},
                      {"height_used", h},
                      {"units_found", found}};
            if (sys) {
                json gens = json::array();
                for (const auto& g : sys->generators)
                    gens.push_back(g.str());
                r["generators"] = gens;
                r["log_vectors"] = sys->full_log_vectors;
                r["rank"] = sys->rank;
                r["regulator_multiple"] = sys->reg_multiple;
                r["condition"] = sys->condition;
                Table2Config lbcfg;
                lbcfg.lb_terms = big_n;
                lbcfg.quadrature = quad.config();
                if (emb.signature() == Signature{5, 1}) {
                    const double lb = field_lower_bound(abs(disc), lbcfg);
                    const auto cert = certify_regulator(sys->reg_multiple, lb);
                    r["analytic_lower_bound"] = lb;
                    r["certified"] = cert.certified;
                    r["multiplier_candidates"] = cert.multiplier_candidates;
                } else {
                    r["analytic_lower_bound"] = nullptr;
                    r["certified"] = false;
                    r["multiplier_candidates"] = json::array();
                }
                r["status"] = "complete";
            } else {
                r["status"] = "incomplete";
                r["detail"] = detail;
            }
            rep.result = r;
            rep.pass = sys.has_value();
        } else if (f_tab->parsed()) {
            std::vector<Table2Entry> table;
            try {
                table = load_table2(table_path);
            } catch (const ParseError& e) {
                throw UsageError(std::string("--table2: ") + e.what());
            }
            tcfg.quadrature = quad.config();
            tcfg.timing = timing;
            const auto report = verify_table2(table, tcfg);
            rep.command = "field table2";
            rep.config = {{"table2", std::filesystem::path(table_path).filename().string()}, {"table", tcfg.to_json()}};
            rep.result = report.to_json();
            rep.pass = report.passed();
        }
        emit(rep, common, res);
    } catch (const UsageError& e) {
        res.err += std::string("usage error: ") + e.what() + "\n";
        res.exit_code = kExitUsage;
    } catch (const ParseError& e) {
        res.err += std::string("usage error: ") + e.what() + "\n";
        res.exit_code = kExitUsage;
    } catch (const std::exception& e) {
        res.err += std::string("error: ") + e.what() + "\n";
        res.exit_code = kExitFail;
    }
    return res;
}

} // namespace regcert::cli
