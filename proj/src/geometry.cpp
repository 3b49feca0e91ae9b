#include "regcert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <mpfr.h>

#include "regcert/errors.hpp"

namespace regcert::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

mpz_class zpow(unsigned long base, unsigned long exp)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

bool is_small_integer(double v)
{
    return v >= 0.0 && v <= 4096.0 && std::floor(v) == v;
}

} // namespace

double to_double_nearest(const mpq_class& q)
{
    mpfr_t tmp;
    mpfr_init2(tmp, 53);
    mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return d;
}

double p_n(std::span<const cplx> zs)
{
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] == cplx(0.0, 0.0))
            throw DomainError("p_n: zero conjugate at index " + std::to_string(i));
        if (i > 0 && std::abs(zs[i - 1]) > std::abs(zs[i]))
            throw ContractError("p_n: input not sorted by modulus at index " + std::to_string(i));
    }
    double prod = 1.0;
    for (std::size_t j = 1; j < zs.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            prod *= std::norm(1.0 - zs[i] / zs[j]);
    return prod;
}

double p_n(std::span<const double> reals)
{
    std::vector<cplx> zs(reals.begin(), reals.end());
    return p_n(zs);
}

double classical_upper(int n, bool all_real)
{
    if (n < 2)
        throw DomainError("classical_upper: n must be at least 2");
    if (all_real) {
        if (n > 11)
            throw UnsupportedError("classical_upper: real bound 4^floor(n/2) only holds for n <= 11");
        return std::ldexp(1.0, 2 * (n / 2));
    }
    return zpow(static_cast<unsigned long>(n), static_cast<unsigned long>(n)).get_d();
}

std::vector<cplx> ConjugateSet::sorted_conjugates() const
{
    std::vector<cplx> out;
    out.reserve(reals.size() + 2);
    for (int m = 0; m < t; ++m)
        out.emplace_back(reals[m]);
    const cplx z = std::polar(modulus, angle);
    out.push_back(z);
    out.push_back(std::conj(z));
    for (std::size_t m = t; m < reals.size(); ++m)
        out.emplace_back(reals[m]);
    return out;
}

MixedFactorization factor_mixed(std::span<const double> reals, double x, double theta)
{
    if (!(x > 0.0))
        throw DomainError("factor_mixed: modulus must be positive");
    if (!(theta > 0.0 && theta < kPi))
        throw DomainError("factor_mixed: angle must lie in (0, pi)");
    for (double r : reals)
        if (r == 0.0)
            throw DomainError("factor_mixed: zero real conjugate");

    std::vector<std::size_t> idx(reals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return std::abs(reals[i]) < std::abs(reals[j]); });

    MixedFactorization out;
    ConjugateSet& cs = out.conjugates;
    cs.modulus = x;
    cs.angle = theta;
    for (std::size_t i : idx)
        cs.reals.push_back(reals[i]);
    cs.t = static_cast<int>(std::count_if(cs.reals.begin(), cs.reals.end(),
                                          [&](double r) { return std::abs(r) <= x; }));
    cs.c.resize(cs.reals.size());
    for (std::size_t m = 0; m < cs.reals.size(); ++m)
        cs.c[m] = static_cast<int>(m) < cs.t ? cs.reals[m] / x : x / cs.reals[m];

    out.p_sub = p_n(std::span<const double>(cs.reals));
    out.b_sub = b_r_value(theta, cs.c);
    return out;
}

double ray_estimate(bool c_nonnegative, double theta)
{
    if (!(theta >= 0.0 && theta <= kPi))
        throw DomainError("ray_estimate: angle must lie in [0, pi]");
    if (c_nonnegative)
        return theta <= kPi / 3.0 ? 1.0 : 2.0 * (1.0 - std::cos(theta));
    return theta >= 2.0 * kPi / 3.0 ? 1.0 : 2.0 * (1.0 + std::cos(theta));
}

mpq_class cos_ineq_max_exact(unsigned a, unsigned b)
{
    if (a == 0)
        throw DomainError("cos_ineq_max: a must be positive");
    mpq_class q(zpow(2, 2 * a + b) * zpow(a, a) * zpow(a + b, a + b), zpow(2 * a + b, 2 * a + b));
    q.canonicalize();
    return q;
}

double cos_ineq_max(double a, double b)
{
    if (!(a > 0.0) || !(b >= 0.0))
        throw DomainError("cos_ineq_max: need a > 0 and b >= 0");
    if (is_small_integer(a) && is_small_integer(b))
        return to_double_nearest(cos_ineq_max_exact(static_cast<unsigned>(a), static_cast<unsigned>(b)));
    const double s = 2.0 * a + b;
    return std::exp(s * std::log(2.0) + a * std::log(a) + (a + b) * std::log(a + b) - s * std::log(s));
}

double cos_ineq_argmax(double a, double b)
{
    return -b / (2.0 * a + b);
}

double b_r_value(double theta, std::span<const double> c)
{
    for (double cm : c)
        if (!(cm >= -1.0 && cm <= 1.0))
            throw DomainError("b_r_value: c_m outside [-1, 1]");
    const cplx e = std::polar(1.0, theta);
    double v = std::norm(1.0 - std::polar(1.0, -2.0 * theta));
    for (double cm : c) {
        const double q = std::norm(1.0 - cm * e);
        v *= q * q;
    }
    return v;
}

BrExponents br_exponents(unsigned d_plus, unsigned d_minus)
{
    BrExponents e;
    e.a = 1 + 2 * std::min(d_plus, d_minus);
    e.b = 2 * (d_plus > d_minus ? d_plus - d_minus : d_minus - d_plus);
    e.f = 2 * std::max(d_plus, d_minus);
    return e;
}

mpq_class b_r_bound_exact(unsigned d_plus, unsigned d_minus)
{
    const BrExponents e = br_exponents(d_plus, d_minus);
    mpq_class first = mpq_class(zpow(2, 2 * e.a + e.b)) * cos_ineq_max_exact(e.a, e.b);
    mpq_class second(zpow(4, 2 + e.f) * zpow(1 + e.f, 1 + e.f), zpow(2 + e.f, 2 + e.f));
    second.canonicalize();
    return first > second ? first : second;
}

double b_r_bound(unsigned d_plus, unsigned d_minus)
{
    return to_double_nearest(b_r_bound_exact(d_plus, d_minus));
}

int SignPattern::d_plus() const
{
    return static_cast<int>(std::count(signs.begin(), signs.end(), Sign::plus));
}

int SignPattern::d_minus() const
{
    return 5 - d_plus();
}

std::string SignPattern::str() const
{
    std::string s;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (i)
            s += ',';
        s += signs[i] == Sign::plus ? '+' : '-';
    }
    return s;
}

SignPattern SignPattern::parse(std::string_view text)
{
    SignPattern p;
    std::size_t count = 0;
    const bool comma_separated = text.find(',') != std::string_view::npos;
    bool expect_symbol = true;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == ' ' || ch == '\t')
            continue;
        if (ch == ',') {
            if (expect_symbol)
                throw ParseError("sign pattern: unexpected ','", i);
            expect_symbol = true;
            continue;
        }
        if (ch != '+' && ch != '-')
            throw ParseError(std::string("sign pattern: unexpected character '") + ch + "'", i);
        if (!expect_symbol)
            throw ParseError("sign pattern: expected ','", i);
        if (count == 5)
            throw ParseError("sign pattern: more than 5 signs", i);
        p.signs[count++] = ch == '+' ? Sign::plus : Sign::minus;
        expect_symbol = !comma_separated;
    }
    if (comma_separated && expect_symbol)
        throw ParseError("sign pattern: trailing ','", text.size());
    if (count != 5)
        throw ParseError("sign pattern: expected 5 signs, got " + std::to_string(count), text.size());
    return p;
}

std::array<Sign, 4> SignPattern::ratio_signs() const
{
    std::array<Sign, 4> x{};
    for (std::size_t i = 0; i < 4; ++i)
        x[i] = signs[i] == signs[i + 1] ? Sign::plus : Sign::minus;
    return x;
}

const std::array<SignPattern, 5>& table1_patterns()
{
    static const std::array<SignPattern, 5> rows = {
        SignPattern::parse("+,+,+,+,-"),
        SignPattern::parse("+,-,-,-,-"),
        SignPattern::parse("+,+,+,-,+"),
        SignPattern::parse("+,-,+,+,+"),
        SignPattern::parse("+,+,-,+,+"),
    };
    return rows;
}

std::vector<SignPattern> all_patterns_c1_positive()
{
    std::vector<SignPattern> out;
    for (unsigned mask = 0; mask < 16; ++mask) {
        SignPattern p;
        p.signs[0] = Sign::plus;
        for (unsigned i = 0; i < 4; ++i)
            p.signs[i + 1] = (mask >> (3 - i)) & 1u ? Sign::minus : Sign::plus;
        out.push_back(p);
    }
    return out;
}

namespace {

const char* kCase2Grouping[6] = {
    "",
    "A = (y11 y22 y12)(y33 y34)(y23 y24)(y13 y14)(y44): first group <= 1 since x1,x2 >= 0; "
    "next three <= 1 by Pohst (i) with x3, x2x3, x1x2x3 >= 0; y44 <= 2",
    "",
    "A = (y11 y14 y24)(y22 y23)(y12 y13)(y33 y44 y34): first group <= 1 trivially; "
    "next two <= 1 by Pohst (i) with x2, x1x2 >= 0; last <= 2 by Pohst (ii)",
    "",
    "A = (y13 y14 y24)(y11 y12)(y44 y34)(y22 y33 y23): first group <= 1 trivially; "
    "next two <= 1 by Pohst (i) with x1, x4 >= 0; last <= 2 by Pohst (ii)",
};

} // namespace

CaseCertificate p7_mixed_bound(const SignPattern& pattern)
{
    if (pattern.signs[0] != Sign::plus)
        throw ContractError("p7_mixed_bound: requires c_1 > 0");

    CaseCertificate cert;
    const unsigned dp = static_cast<unsigned>(pattern.d_plus());
    const unsigned dm = static_cast<unsigned>(pattern.d_minus());
    const BrExponents e = br_exponents(dp, dm);
    cert.a = e.a;
    cert.b = e.b;
    cert.f = e.f;
    const mpq_class b5 = b_r_bound_exact(dp, dm);
    cert.b5_bound = to_double_nearest(b5);

    if (dm == 0) {
        cert.case_id = 3;
        cert.p_small_bound = classical_upper(5, true);
        cert.p7_bound = 4096.0;
        cert.grouping = "sqrt(P7) <= 2 R12 R23 R34 R45 R15 * (1-r1/r3)(1-r1/r4)(1-r2/r4)(1-r2/r5)(1-r3/r5) "
                        "with each R <= 2 (Pohst (ii)/(iii)) and each remaining factor in [0,1]; P7 <= 2^12";
        return cert;
    }
    if (dp == 4 || dp == 1) {
        cert.case_id = 2;
        const auto& rows = table1_patterns();
        const auto it = std::find(rows.begin(), rows.end(), pattern);
        cert.table1_row = static_cast<int>(it - rows.begin()) + 1;
        static constexpr int canonical[6] = {0, 1, 1, 3, 3, 5};
        cert.canonical_row = canonical[cert.table1_row];
        cert.reversed = cert.table1_row == 2 || cert.table1_row == 4;
        cert.p_small_bound = 4.0;
        cert.p7_bound = to_double_nearest(b5 * 4);
        cert.grouping = std::string(kCase2Grouping[cert.canonical_row]) + "; A <= 2 so P5 = A^2 <= 4";
        if (cert.reversed)
            cert.grouping = "reversal A(x1,x2,x3,x4) = A(x4,x3,x2,x1) maps row " + std::to_string(cert.table1_row) +
                            " to row " + std::to_string(cert.canonical_row) + "; " + cert.grouping;
        return cert;
    }
    cert.case_id = 1;
    cert.p_small_bound = classical_upper(5, true);
    cert.p7_bound = to_double_nearest(b5 * 16);
    cert.grouping = "P5 <= 4^2 by Pohst's real bound; B5 bounded by the 3-2 split";
    return cert;
}

double pohst_i_value(double alpha, double beta)
{
    return (1.0 - alpha) * (1.0 - alpha * beta);
}

double pohst_ii_value(double alpha, double beta)
{
    return (1.0 - alpha) * (1.0 - beta) * (1.0 - alpha * beta);
}

double pohst_iii_value(double alpha, double beta)
{
    if (beta == 0.0)
        throw DomainError("pohst_iii: beta must be nonzero");
    return (1.0 - alpha) * (1.0 - beta) * (1.0 - alpha / beta);
}

double case3_r_value(const ConjugateSet& cs, int l, int lp)
{
    const double cl = cs.c.at(l - 1);
    const double clp = cs.c.at(lp - 1);
    return (1.0 + cl) * (1.0 + clp) * (1.0 - cs.reals.at(l - 1) / cs.reals.at(lp - 1));
}

double pohst_y(std::span<const double> reals, int l, int lp)
{
    return 1.0 - reals[l - 1] / reals[lp];
}

std::vector<double> case2_group_products(int canonical_row, std::span<const double> reals)
{
    auto y = [&](int l, int lp) { return pohst_y(reals, l, lp); };
    switch (canonical_row) {
    case 1:
        return {y(1, 1) * y(2, 2) * y(1, 2), y(3, 3) * y(3, 4), y(2, 3) * y(2, 4), y(1, 3) * y(1, 4), y(4, 4)};
    case 3:
        return {y(1, 1) * y(1, 4) * y(2, 4), y(2, 2) * y(2, 3), y(1, 2) * y(1, 3), y(3, 3) * y(4, 4) * y(3, 4)};
    case 5:
        return {y(1, 3) * y(1, 4) * y(2, 4), y(1, 1) * y(1, 2), y(4, 4) * y(3, 4), y(2, 2) * y(3, 3) * y(2, 3)};
    default:
        throw ContractError("case2_group_products: canonical row must be 1, 3 or 5");
    }
}

std::vector<double> case2_group_bounds(int canonical_row)
{
    switch (canonical_row) {
    case 1:
        return {1, 1, 1, 1, 2};
    case 3:
    case 5:
        return {1, 1, 1, 2};
    default:
        throw ContractError("case2_group_bounds: canonical row must be 1, 3 or 5");
    }
}

double remak_A(int n, int r2)
{
    if (n < 2 || r2 < 0 || 2 * r2 > n)
        throw DomainError("remak_A: invalid signature");
    const double radicand =
        (static_cast<double>(n) * n * n - n - 4.0 * r2 * r2 * r2 - 2.0 * r2) / 3.0;
    if (radicand < 0.0)
        throw DomainError("remak_A: negative radicand");
    return std::sqrt(radicand);
}

double mk_hermite_bound(double reg_upper)
{
    if (reg_upper < 0.0)
        throw DomainError("mk_hermite_bound: regulator bound must be nonnegative");
    // Hermite constant gamma_5 = 8^{1/5}, unit rank 5, sqrt(n - 1) with n - 1 = r1 + r2 = 6.
    return std::pow(reg_upper * std::sqrt(6.0), 0.2) * std::pow(8.0, 0.1);
}

double remak_disc_log_bound(double m, int n, int r2, double log_pn)
{
    if (m < 0.0)
        throw DomainError("remak_disc_log_bound: m must be nonnegative");
    return m * remak_A(n, r2) + log_pn;
}

} // namespace regcert::geometry
