#include "regcert/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <mpfr.h>

#include "regcert/errors.hpp"

namespace regcert {

namespace {

using cplx = std::complex<double>;

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec, double v = 0.0)
    {
        mpfr_init2(x_, prec);
        mpfr_set_d(x_, v, MPFR_RNDN);
    }
    Mpfr(const Mpfr& o)
    {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    Mpfr& operator=(const Mpfr& o)
    {
        if (this != &o)
            mpfr_set(x_, o.x_, MPFR_RNDN);
        return *this;
    }
    ~Mpfr() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

private:
    mpfr_t x_;
};

struct MpComplex {
    Mpfr re, im;
    explicit MpComplex(mpfr_prec_t p, cplx z = {}) : re(p, z.real()), im(p, z.imag()) {}
};

// out = a * b
void cmul(MpComplex& out, const MpComplex& a, const MpComplex& b, Mpfr& t1, Mpfr& t2)
{
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    Mpfr re(mpfr_get_prec(out.re.get()));
    mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_set(out.re.get(), re.get(), MPFR_RNDN);
}

void cabs(Mpfr& out, const MpComplex& a)
{
    mpfr_hypot(out.get(), a.re.get(), a.im.get(), MPFR_RNDU);
}

struct Evaluation {
    MpComplex f, df;
    Mpfr scale;   // sum |a_k| |z|^k
    explicit Evaluation(mpfr_prec_t p) : f(p), df(p), scale(p) {}
};

void evaluate(const IntPolynomial& poly, const MpComplex& z, Evaluation& ev, mpfr_prec_t p)
{
    Mpfr t1(p), t2(p), absz(p), coeff(p);
    MpComplex tmp(p);
    mpfr_set_zero(ev.f.re.get(), 1);
    mpfr_set_zero(ev.f.im.get(), 1);
    mpfr_set_zero(ev.df.re.get(), 1);
    mpfr_set_zero(ev.df.im.get(), 1);
    mpfr_set_zero(ev.scale.get(), 1);
    cabs(absz, z);
    const auto& c = poly.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        // df = df z + f ; f = f z + a
        cmul(tmp, ev.df, z, t1, t2);
        mpfr_add(ev.df.re.get(), tmp.re.get(), ev.f.re.get(), MPFR_RNDN);
        mpfr_add(ev.df.im.get(), tmp.im.get(), ev.f.im.get(), MPFR_RNDN);
        cmul(tmp, ev.f, z, t1, t2);
        mpfr_set_z(coeff.get(), it->get_mpz_t(), MPFR_RNDN);
        mpfr_add(ev.f.re.get(), tmp.re.get(), coeff.get(), MPFR_RNDN);
        mpfr_set(ev.f.im.get(), tmp.im.get(), MPFR_RNDN);
        mpfr_abs(coeff.get(), coeff.get(), MPFR_RNDN);
        mpfr_mul(ev.scale.get(), ev.scale.get(), absz.get(), MPFR_RNDU);
        mpfr_add(ev.scale.get(), ev.scale.get(), coeff.get(), MPFR_RNDU);
    }
}

struct Refined {
    cplx value;
    std::complex<long double> precise;
    double radius;
    double residual;   // |f| / scale
};

Refined refine_root(const IntPolynomial& poly, cplx start, bool real, mpfr_prec_t p)
{
    MpComplex z(p, real ? cplx(start.real(), 0.0) : start);
    Evaluation ev(p);
    Mpfr den(p), t1(p), t2(p), absf(p), absdf(p), stepn(p), absz(p);
    MpComplex step(p);
    const double n = static_cast<double>(poly.degree());
    for (int it = 0; it < 200; ++it) {
        evaluate(poly, z, ev, p);
        // step = f / df = f conj(df) / |df|^2
        mpfr_sqr(t1.get(), ev.df.re.get(), MPFR_RNDN);
        mpfr_sqr(t2.get(), ev.df.im.get(), MPFR_RNDN);
        mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
        if (mpfr_zero_p(den.get()))
            throw PrecisionError("embeddings: vanishing derivative during refinement");
        mpfr_mul(t1.get(), ev.f.re.get(), ev.df.re.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), ev.f.im.get(), ev.df.im.get(), MPFR_RNDN);
        mpfr_add(step.re.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_div(step.re.get(), step.re.get(), den.get(), MPFR_RNDN);
        mpfr_mul(t1.get(), ev.f.im.get(), ev.df.re.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), ev.f.re.get(), ev.df.im.get(), MPFR_RNDN);
        mpfr_sub(step.im.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_div(step.im.get(), step.im.get(), den.get(), MPFR_RNDN);
        if (real)
            mpfr_set_zero(step.im.get(), 1);
        mpfr_sub(z.re.get(), z.re.get(), step.re.get(), MPFR_RNDN);
        mpfr_sub(z.im.get(), z.im.get(), step.im.get(), MPFR_RNDN);
        cabs(stepn, step);
        cabs(absz, z);
        // stop once the correction is below 2^{-p} |z|
        mpfr_mul_2si(absz.get(), absz.get(), -static_cast<long>(p) + 2, MPFR_RNDN);
        if (mpfr_lessequal_p(stepn.get(), absz.get()))
            break;
    }
    evaluate(poly, z, ev, p);
    cabs(absf, ev.f);
    mpfr_hypot(absdf.get(), ev.df.re.get(), ev.df.im.get(), MPFR_RNDD);
    Refined r;
    r.value = {z.re.to_double(), z.im.to_double()};
    r.precise = {mpfr_get_ld(z.re.get(), MPFR_RNDN), mpfr_get_ld(z.im.get(), MPFR_RNDN)};
    mpfr_div(t1.get(), absf.get(), absdf.get(), MPFR_RNDU);
    const double incl = n * mpfr_get_d(t1.get(), MPFR_RNDU);
    // distance from the binary64 centre to the high-precision centre
    mpfr_sub_d(t1.get(), z.re.get(), r.value.real(), MPFR_RNDN);
    mpfr_sub_d(t2.get(), z.im.get(), r.value.imag(), MPFR_RNDN);
    mpfr_hypot(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
    r.radius = incl + mpfr_get_d(t1.get(), MPFR_RNDU);
    mpfr_div(t1.get(), absf.get(), ev.scale.get(), MPFR_RNDU);
    r.residual = mpfr_get_d(t1.get(), MPFR_RNDU);
    return r;
}

} // namespace

std::vector<std::complex<double>> EmbeddingSet::all_roots() const
{
    std::vector<std::complex<double>> out;
    for (const auto& r : real_roots)
        out.emplace_back(r.value, 0.0);
    for (const auto& p : complex_pairs) {
        out.push_back(p.value());
        out.push_back(std::conj(p.value()));
    }
    return out;
}

std::vector<std::complex<double>> aberth_roots(const IntPolynomial& f, int max_iterations)
{
    const int n = f.degree();
    if (n < 1)
        throw DomainError("aberth_roots: degree must be at least 1");
    std::vector<cplx> a(n + 1);
    for (int k = 0; k <= n; ++k)
        a[k] = f.coeffs()[k].get_d() / f.lc().get_d();

    // Fujiwara-style radius for the initial circle
    double radius = 0.0;
    for (int k = 0; k < n; ++k)
        radius = std::max(radius, std::pow(std::abs(a[k]), 1.0 / (n - k)));
    radius = std::max(radius, 1e-3);
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

    auto eval = [&](cplx x, cplx& p, cplx& dp) {
        p = a[n];
        dp = 0.0;
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * x + p;
            p = p * x + a[k];
        }
    };

    for (int it = 0; it < max_iterations; ++it) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx p, dp;
            eval(z[k], p, dp);
            if (p == cplx(0.0))
                continue;
            const cplx ratio = p / dp;
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0 / (z[k] - z[j]);
            const cplx w = ratio / (1.0 - ratio * sum);
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / std::max(std::abs(z[k]), 1e-300));
        }
        if (worst < 4.0 * std::numeric_limits<double>::epsilon())
            return z;
    }
    // accept if every correction has stalled near rounding level
    for (int k = 0; k < n; ++k) {
        cplx p, dp;
        eval(z[k], p, dp);
        if (std::abs(p / dp) > 1e-10 * std::max(std::abs(z[k]), 1.0))
            throw PrecisionError("aberth_roots: no convergence within the iteration cap");
    }
    return z;
}

EmbeddingSet embeddings(const IntPolynomial& f, int precision_bits)
{
    if (f.degree() < 1)
        throw DomainError("embeddings: degree must be at least 1");
    const Signature sig = signature(f);
    std::vector<cplx> approx = aberth_roots(f);
    // The r1 roots closest to the axis are the real ones (exact count from Sturm).
    std::stable_sort(approx.begin(), approx.end(),
                     [](cplx x, cplx y) { return std::abs(x.imag()) < std::abs(y.imag()); });

    for (int bits = std::max(precision_bits, 53); bits <= 4096; bits *= 2) {
        EmbeddingSet out;
        out.precision_bits = bits;
        std::vector<Refined> refined;
        for (int k = 0; k < f.degree(); ++k) {
            const bool real = k < sig.r1;
            if (!real && approx[k].imag() < 0.0)
                continue;
            refined.push_back(refine_root(f, approx[k], real, bits));
        }
        double worst = 0.0;
        for (const auto& r : refined)
            worst = std::max(worst, r.residual);
        out.max_residual = worst;
        if (worst > std::ldexp(1.0, -bits / 2))
            continue;

        // Disjointness of the inclusion disks, conjugates included.
        std::vector<std::pair<cplx, double>> disks;
        for (const auto& r : refined) {
            disks.emplace_back(r.value, r.radius);
            if (r.value.imag() != 0.0)
                disks.emplace_back(std::conj(r.value), r.radius);
        }
        if (static_cast<int>(disks.size()) != f.degree())
            throw PrecisionError("embeddings: root classification does not match the Sturm count");
        for (std::size_t i = 0; i < disks.size(); ++i)
            for (std::size_t j = i + 1; j < disks.size(); ++j)
                if (std::abs(disks[i].first - disks[j].first) <= disks[i].second + disks[j].second)
                    throw PrecisionError("embeddings: inclusion disks overlap");

        for (const auto& r : refined) {
            if (r.value.imag() == 0.0) {
                out.real_roots.push_back({r.value.real(), r.radius, r.precise.real()});
            } else {
                if (r.radius >= r.value.imag())
                    throw PrecisionError("embeddings: complex root disk meets the real axis");
                out.complex_pairs.push_back({std::abs(r.value), std::arg(r.value), r.radius, r.precise});
            }
        }
        std::sort(out.real_roots.begin(), out.real_roots.end(), [](const RealRoot& x, const RealRoot& y) {
            const double ax = std::abs(x.value), ay = std::abs(y.value);
            return ax != ay ? ax < ay : x.value < y.value;
        });
        std::sort(out.complex_pairs.begin(), out.complex_pairs.end(),
                  [](const ComplexPair& x, const ComplexPair& y) { return x.modulus < y.modulus; });
        return out;
    }
    throw PrecisionError("embeddings: residual check failed up to 4096 bits");
}

double m_k_of(std::span<const double> real_conjugates, std::span<const std::complex<double>> complex_conjugates)
{
    double s = 0.0;
    for (double r : real_conjugates) {
        if (r == 0.0)
            throw DomainError("m_k: zero conjugate");
        const double l = std::log(std::abs(r));
        s += l * l;
    }
    for (const auto& z : complex_conjugates) {
        if (z == std::complex<double>(0.0))
            throw DomainError("m_k: zero conjugate");
        const double l = 2.0 * std::log(std::abs(z));
        s += l * l;
    }
    return s;
}

double m_k_of(const EmbeddingSet& e)
{
    std::vector<double> reals;
    std::vector<std::complex<double>> pairs;
    for (const auto& r : e.real_roots)
        reals.push_back(r.value);
    for (const auto& p : e.complex_pairs)
        pairs.push_back(p.value());
    return m_k_of(reals, pairs);
}

} // namespace regcert
