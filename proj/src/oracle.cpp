#include "regcert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <omp.h>

#include "regcert/errors.hpp"

namespace regcert::oracle {

using geometry::cplx;
using geometry::Sign;
using geometry::SignPattern;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-12;

struct NameEntry {
    Target target;
    const char* name;
};

constexpr NameEntry kNames[] = {
    {Target::p7, "p7"},
    {Target::b_r, "b_r"},
    {Target::cos_ineq, "cos_ineq"},
    {Target::pohst_i, "pohst_i"},
    {Target::pohst_ii, "pohst_ii"},
    {Target::pohst_iii, "pohst_iii"},
    {Target::p5_case2, "p5_case2"},
    {Target::ray, "ray"},
    {Target::case3_r, "case3_r"},
    {Target::case2_groups, "case2_groups"},
    {Target::p7_global, "p7_global"},
    {Target::pn_complex, "pn_complex"},
    {Target::pn_real, "pn_real"},
    {Target::factor_identity, "factor_identity"},
};

const std::vector<unsigned>& primes()
{
    static const std::vector<unsigned> ps = [] {
        std::vector<unsigned> v;
        for (unsigned k = 2; v.size() < 64; ++k) {
            bool prime = true;
            for (unsigned p : v) {
                if (p * p > k)
                    break;
                if (k % p == 0) {
                    prime = false;
                    break;
                }
            }
            if (prime)
                v.push_back(k);
        }
        return v;
    }();
    return ps;
}

double positive(double u)
{
    return std::max(u, kTiny);
}

double angle_open(double u)
{
    return kPi * std::clamp(u, kTiny, 1.0 - kTiny);
}

// Real conjugates with moduli drawn from u and signs from the pattern, sorted by |.|.
std::vector<double> signed_sorted(std::span<const double> u, std::span<const Sign> signs)
{
    std::vector<double> mod(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        mod[i] = positive(u[i]);
    std::sort(mod.begin(), mod.end());
    for (std::size_t i = 0; i < mod.size(); ++i)
        if (signs[i] == Sign::minus)
            mod[i] = -mod[i];
    return mod;
}

std::vector<cplx> mixed_conjugates(std::span<const double> reals, double x, double theta)
{
    std::vector<cplx> zs(reals.begin(), reals.end());
    zs.push_back(std::polar(x, theta));
    zs.push_back(std::polar(x, -theta));
    std::stable_sort(zs.begin(), zs.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    return zs;
}

double p7_of(std::span<const double> u, const SignPattern& pat)
{
    const auto reals = signed_sorted(u.subspan(0, 5), pat.signs);
    const auto zs = mixed_conjugates(reals, positive(u[5]), angle_open(u[6]));
    return geometry::p_n(zs);
}

const SignPattern& require_pattern(const Request& req, const char* what)
{
    if (!req.pattern)
        throw ContractError(std::string("oracle target ") + what + " requires a sign pattern");
    return *req.pattern;
}

int require_table1_row(const SignPattern& pat)
{
    const auto& rows = geometry::table1_patterns();
    const auto it = std::find(rows.begin(), rows.end(), pat);
    if (it == rows.end())
        throw ContractError("pattern " + pat.str() + " is not a case 2 pattern");
    return static_cast<int>(it - rows.begin()) + 1;
}

bool better(double a, double b)
{
    if (std::isnan(a))
        return !std::isnan(b);
    return a > b;
}

struct Candidate {
    double value;
    std::uint64_t index;
};

void push_top(std::vector<Candidate>& top, Candidate c, std::size_t k)
{
    auto pos = std::find_if(top.begin(), top.end(), [&](const Candidate& o) { return better(c.value, o.value); });
    if (pos == top.end() && top.size() >= k)
        return;
    top.insert(pos, c);
    if (top.size() > k)
        top.pop_back();
}

std::vector<double> make_shift(std::uint64_t seed, int dim)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> shift(dim);
    for (auto& s : shift)
        s = uni(rng);
    return shift;
}

std::vector<Candidate> scan_batch(const Objective& obj, std::span<const double> shift, std::uint64_t begin,
                                  std::uint64_t end, std::size_t k)
{
    std::vector<Candidate> top;
    std::vector<double> u(obj.dim);
    for (std::uint64_t i = begin; i < end; ++i) {
        halton_point(i, shift, u);
        push_top(top, {obj.value(u), i}, k);
    }
    return top;
}

// Coordinate-wise golden-section search, accepting only strict improvements.
double refine(const Objective& obj, std::vector<double>& u, int sweeps, std::uint64_t& evals)
{
    constexpr double kInvPhi = 0.6180339887498949;
    constexpr int kIters = 40;
    double best = obj.value(u);
    ++evals;
    for (int s = 0; s < sweeps; ++s) {
        for (int d = 0; d < obj.dim; ++d) {
            const double keep = u[d];
            double lo = 0.0, hi = 1.0;
            double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
            u[d] = x1;
            double f1 = obj.value(u);
            u[d] = x2;
            double f2 = obj.value(u);
            evals += 2;
            for (int it = 0; it < kIters; ++it) {
                if (better(f1, f2)) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - kInvPhi * (hi - lo);
                    u[d] = x1;
                    f1 = obj.value(u);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + kInvPhi * (hi - lo);
                    u[d] = x2;
                    f2 = obj.value(u);
                }
                ++evals;
            }
            const double xb = better(f1, f2) ? x1 : x2;
            const double fb = better(f1, f2) ? f1 : f2;
            if (better(fb, best)) {
                best = fb;
                u[d] = xb;
            } else {
                u[d] = keep;
            }
        }
    }
    return best;
}

std::vector<Candidate> merge_tops(const std::vector<std::vector<Candidate>>& batches, std::size_t k)
{
    std::vector<Candidate> top;
    for (const auto& b : batches)
        for (const auto& c : b)
            push_top(top, c, k);
    return top;
}

SampleResult finish(const Objective& obj, const Request& req, std::span<const double> shift,
                    const std::vector<Candidate>& top, bool parallel)
{
    const auto n = static_cast<std::int64_t>(top.size());
    std::vector<std::vector<double>> points(top.size(), std::vector<double>(obj.dim));
    std::vector<double> values(top.size());
    std::vector<std::uint64_t> evals(top.size(), 0);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        halton_point(top[i].index, shift, points[i]);
        values[i] = refine(obj, points[i], req.refine_sweeps, evals[i]);
    }
    SampleResult r;
    r.best = -std::numeric_limits<double>::infinity();
    r.evaluations = req.samples;
    for (std::size_t i = 0; i < top.size(); ++i) {
        r.evaluations += evals[i];
        if (i == 0 || better(values[i], r.best)) {
            r.best = values[i];
            r.argmax = points[i];
        }
    }
    return r;
}

SampleResult maximize(const Objective& obj, const Request& req, bool parallel)
{
    if (req.samples < 1)
        throw ContractError("oracle: samples must be at least 1");
    const auto shift = make_shift(req.seed, obj.dim);
    const std::uint64_t nbatch = (req.samples + kBatchSize - 1) / kBatchSize;
    const std::size_t k = static_cast<std::size_t>(std::max(1, req.refine_candidates));
    std::vector<std::vector<Candidate>> tops(nbatch);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nbatch); ++b) {
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBatchSize;
        const std::uint64_t end = std::min(req.samples, begin + kBatchSize);
        tops[b] = scan_batch(obj, shift, begin, end, k);
    }
    return finish(obj, req, shift, merge_tops(tops, k), parallel);
}

} // namespace

Target parse_target(std::string_view name)
{
    for (const auto& e : kNames)
        if (name == e.name)
            return e.target;
    throw UnsupportedError("unknown oracle target '" + std::string(name) + "'");
}

std::string target_name(Target t)
{
    for (const auto& e : kNames)
        if (e.target == t)
            return e.name;
    return "?";
}

void halton_point(std::uint64_t index, std::span<const double> shift, std::span<double> out)
{
    const auto& ps = primes();
    for (std::size_t d = 0; d < out.size(); ++d) {
        const unsigned base = ps[d];
        const double inv = 1.0 / base;
        double f = inv, h = 0.0;
        for (std::uint64_t i = index + 1; i > 0; i /= base) {
            h += f * static_cast<double>(i % base);
            f *= inv;
        }
        h += shift[d];
        out[d] = h - std::floor(h);
    }
}

Objective make_objective(const Request& req)
{
    Objective obj;
    obj.description = {{"target", target_name(req.target)}};
    switch (req.target) {
    case Target::p7: {
        const SignPattern pat = req.pattern.value_or(SignPattern::parse("+,+,+,+,-"));
        const auto cert = geometry::p7_mixed_bound(pat);
        obj.dim = 7;
        obj.bound = cert.p7_bound;
        obj.description["pattern"] = pat.str();
        obj.description["case_id"] = cert.case_id;
        obj.value = [pat](std::span<const double> u) { return p7_of(u, pat); };
        break;
    }
    case Target::b_r: {
        const SignPattern pat = req.pattern.value_or(SignPattern::parse("+,+,+,-,-"));
        obj.dim = 6;
        obj.bound = geometry::b_r_bound(pat.d_plus(), pat.d_minus());
        obj.description["pattern"] = pat.str();
        obj.value = [pat](std::span<const double> u) {
            double c[5];
            for (int m = 0; m < 5; ++m)
                c[m] = (pat.signs[m] == Sign::plus ? 1.0 : -1.0) * positive(u[m]);
            return geometry::b_r_value(kPi * u[5], c);
        };
        break;
    }
    case Target::cos_ineq: {
        const double a = req.a, b = req.b;
        obj.dim = 1;
        obj.bound = geometry::cos_ineq_max(a, b);
        obj.description["a"] = a;
        obj.description["b"] = b;
        obj.value = [a, b](std::span<const double> u) {
            const double x = 2.0 * u[0] - 1.0;
            return std::pow(1.0 - x * x, a) * std::pow(1.0 - x, b);
        };
        break;
    }
    case Target::pohst_i:
        obj.dim = 2;
        obj.bound = 1.0;
        obj.value = [](std::span<const double> u) { return geometry::pohst_i_value(u[0], 2.0 * u[1] - 1.0); };
        break;
    case Target::pohst_ii:
        obj.dim = 2;
        obj.bound = 2.0;
        obj.value = [](std::span<const double> u) {
            return geometry::pohst_ii_value(2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0);
        };
        break;
    case Target::pohst_iii:
        obj.dim = 2;
        obj.bound = 2.0;
        obj.value = [](std::span<const double> u) {
            double beta = 2.0 * u[1] - 1.0;
            if (std::abs(beta) < kTiny)
                beta = kTiny;
            return geometry::pohst_iii_value(beta * (2.0 * u[0] - 1.0), beta);
        };
        break;
    case Target::p5_case2: {
        const SignPattern& pat = require_pattern(req, "p5_case2");
        obj.description["table1_row"] = require_table1_row(pat);
        obj.description["pattern"] = pat.str();
        obj.dim = 5;
        obj.bound = 4.0;
        obj.value = [pat](std::span<const double> u) {
            const auto reals = signed_sorted(u, pat.signs);
            return geometry::p_n(std::span<const double>(reals));
        };
        break;
    }
    case Target::ray: {
        const bool nonneg = req.c_nonnegative;
        obj.dim = 2;
        obj.bound = 0.0;
        obj.description["c_nonnegative"] = nonneg;
        obj.value = [nonneg](std::span<const double> u) {
            const double c = nonneg ? u[0] : -u[0];
            const double theta = kPi * u[1];
            return std::norm(1.0 - c * std::polar(1.0, theta)) - geometry::ray_estimate(nonneg, theta);
        };
        break;
    }
    case Target::case3_r:
        obj.dim = 7;
        obj.bound = 2.0;
        obj.value = [](std::span<const double> u) {
            double reals[5];
            for (int i = 0; i < 5; ++i)
                reals[i] = positive(u[i]);
            const auto fm = geometry::factor_mixed(reals, positive(u[5]), angle_open(u[6]));
            double worst = -std::numeric_limits<double>::infinity();
            for (int l = 1; l <= 5; ++l)
                for (int lp = l + 1; lp <= 5; ++lp)
                    worst = std::max(worst, geometry::case3_r_value(fm.conjugates, l, lp));
            return worst;
        };
        break;
    case Target::case2_groups: {
        const SignPattern& pat = require_pattern(req, "case2_groups");
        const auto cert = geometry::p7_mixed_bound(pat);
        require_table1_row(pat);
        obj.description["pattern"] = pat.str();
        obj.description["canonical_row"] = cert.canonical_row;
        obj.dim = 5;
        obj.bound = 0.0;
        const int row = cert.canonical_row;
        const bool reversed = cert.reversed;
        const auto bounds = geometry::case2_group_bounds(row);
        obj.value = [pat, row, reversed, bounds](std::span<const double> u) {
            auto reals = signed_sorted(u, pat.signs);
            if (reversed) {
                std::reverse(reals.begin(), reals.end());
                for (double& r : reals)
                    r = 1.0 / r;
            }
            const auto prods = geometry::case2_group_products(row, reals);
            double worst = -std::numeric_limits<double>::infinity();
            for (std::size_t g = 0; g < prods.size(); ++g)
                worst = std::max(worst, prods[g] - bounds[g]);
            return worst;
        };
        break;
    }
    case Target::p7_global: {
        obj.dim = 8;
        obj.bound = std::exp(12.0);
        const auto pats = geometry::all_patterns_c1_positive();
        obj.value = [pats](std::span<const double> u) {
            const auto which = std::min<std::size_t>(static_cast<std::size_t>(u[7] * 16.0), 15);
            return p7_of(u, pats[which]);
        };
        break;
    }
    case Target::pn_complex: {
        const int n = req.n;
        if (n < 2)
            throw DomainError("pn_complex: n must be at least 2");
        obj.dim = 2 * n;
        obj.bound = geometry::classical_upper(n, false);
        obj.description["n"] = n;
        obj.value = [n](std::span<const double> u) {
            std::vector<cplx> zs(n);
            for (int i = 0; i < n; ++i)
                zs[i] = std::polar(positive(u[i]), 2.0 * kPi * u[n + i]);
            std::stable_sort(zs.begin(), zs.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
            return geometry::p_n(zs);
        };
        break;
    }
    case Target::pn_real: {
        const int n = req.n;
        obj.dim = 2 * n;
        obj.bound = geometry::classical_upper(n, true);
        obj.description["n"] = n;
        obj.value = [n](std::span<const double> u) {
            std::vector<double> rs(n);
            for (int i = 0; i < n; ++i)
                rs[i] = positive(u[i]);
            std::sort(rs.begin(), rs.end());
            for (int i = 0; i < n; ++i)
                if (u[n + i] >= 0.5)
                    rs[i] = -rs[i];
            return geometry::p_n(std::span<const double>(rs));
        };
        break;
    }
    case Target::factor_identity: {
        const int n = req.n;
        if (n < 3)
            throw DomainError("factor_identity: n must be at least 3");
        const int k = n - 2;
        obj.dim = 2 * k + 2;
        obj.bound = 1e-10;
        obj.description["n"] = n;
        obj.value = [k](std::span<const double> u) {
            std::vector<double> rs(k);
            for (int i = 0; i < k; ++i)
                rs[i] = (u[k + i] >= 0.5 ? -1.0 : 1.0) * positive(u[i]);
            const double x = positive(u[2 * k]);
            const double theta = angle_open(u[2 * k + 1]);
            const auto fm = geometry::factor_mixed(rs, x, theta);
            const double direct = geometry::p_n(mixed_conjugates(fm.conjugates.reals, x, theta));
            return std::abs(direct - fm.p_sub * fm.b_sub) / std::max(direct, 1e-300);
        };
        break;
    }
    }
    return obj;
}

SampleResult maximize_serial(const Objective& obj, const Request& req)
{
    return maximize(obj, req, false);
}

SampleResult maximize_parallel(const Objective& obj, const Request& req)
{
    return maximize(obj, req, true);
}

namespace {

BoundCertificate run(const Request& req, bool parallel)
{
    const Objective obj = make_objective(req);
    const SampleResult r = parallel ? maximize_parallel(obj, req) : maximize_serial(obj, req);
    auto cert = BoundCertificate::make("oracle:" + target_name(req.target), CheckKind::upper_bound, obj.bound,
                                       r.best);
    if (std::isnan(r.best))
        cert.status = Status::fail;
    for (const auto& [k, v] : obj.description.items())
        cert.inputs[k] = v;
    cert.inputs["argmax_unit_cube"] = r.argmax;
    cert.inputs["evaluations"] = r.evaluations;
    cert.inputs["refine_candidates"] = req.refine_candidates;
    cert.inputs["refine_sweeps"] = req.refine_sweeps;
    cert.seed = req.seed;
    cert.samples = req.samples;
    return cert;
}

} // namespace

BoundCertificate numeric_max_oracle(const Request& req)
{
    return run(req, true);
}

BoundCertificate numeric_max_oracle_serial(const Request& req)
{
    return run(req, false);
}

} // namespace regcert::oracle
