#include "regcert/units.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "regcert/errors.hpp"
#include "regcert/expr.hpp"

namespace regcert {

namespace {

using cld = std::complex<long double>;
using Vec = std::vector<long double>;

void require_monic(const IntPolynomial& f, const char* where)
{
    if (!f.is_monic() || f.degree() < 1)
        throw ContractError(std::string(where) + ": defining polynomial must be monic of degree >= 1");
}

AlgebraicElement reduce_mod(const IntPolynomial& f, std::vector<mpz_class> c)
{
    const int n = f.degree();
    const auto& fc = f.coeffs();
    for (int k = static_cast<int>(c.size()) - 1; k >= n; --k) {
        if (c[k] == 0)
            continue;
        const mpz_class lead = c[k];
        for (int j = 0; j <= n; ++j)
            c[k - n + j] -= lead * fc[j];
    }
    c.resize(n, 0);
    return {std::move(c)};
}

long double dot(const Vec& a, const Vec& b)
{
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// Gram-Schmidt squared norms and coefficients.
void gram_schmidt(const std::vector<Vec>& b, std::vector<Vec>& mu, Vec& bstar_sq)
{
    const std::size_t k = b.size();
    std::vector<Vec> bs(k);
    mu.assign(k, Vec(k, 0.0L));
    bstar_sq.assign(k, 0.0L);
    for (std::size_t i = 0; i < k; ++i) {
        bs[i] = b[i];
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = dot(b[i], bs[j]) / bstar_sq[j];
            for (std::size_t t = 0; t < bs[i].size(); ++t)
                bs[i][t] -= mu[i][j] * bs[j][t];
        }
        bstar_sq[i] = dot(bs[i], bs[i]);
    }
}

// LLL with delta = 0.99 on the rows of b; trans records new = trans * old.
void lll(std::vector<Vec>& b, std::vector<Vec>& full, std::vector<std::vector<long long>>& trans)
{
    const std::size_t k = b.size();
    trans.assign(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        trans[i][i] = 1;
    auto sub = [&](std::size_t i, std::size_t j, long long q) {
        for (std::size_t t = 0; t < b[i].size(); ++t)
            b[i][t] -= q * b[j][t];
        for (std::size_t t = 0; t < full[i].size(); ++t)
            full[i][t] -= q * full[j][t];
        for (std::size_t t = 0; t < k; ++t)
            trans[i][t] -= q * trans[j][t];
    };
    std::vector<Vec> mu;
    Vec bsq;
    std::size_t i = 1;
    int guard = 0;
    while (i < k) {
        if (++guard > 100000)
            throw PrecisionError("lll: iteration limit reached");
        gram_schmidt(b, mu, bsq);
        for (std::size_t j = i; j-- > 0;) {
            const long double q = std::round(mu[i][j]);
            if (q != 0) {
                sub(i, j, static_cast<long long>(q));
                gram_schmidt(b, mu, bsq);
            }
        }
        if (bsq[i] >= (0.99L - mu[i][i - 1] * mu[i][i - 1]) * bsq[i - 1]) {
            ++i;
        } else {
            std::swap(b[i], b[i - 1]);
            std::swap(full[i], full[i - 1]);
            std::swap(trans[i], trans[i - 1]);
            i = std::max<std::size_t>(i - 1, 1);
        }
    }
}

long double abs_det(std::vector<Vec> a)
{
    const std::size_t n = a.size();
    long double det = 1.0L;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c]))
                p = r;
        if (a[p][c] == 0.0L)
            return 0.0L;
        std::swap(a[p], a[c]);
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const long double m = a[r][c] / a[c][c];
            for (std::size_t t = c; t < n; ++t)
                a[r][t] -= m * a[c][t];
        }
    }
    return std::fabs(det);
}

// Solves sum_i c_i b_i = v for square b (rows are basis vectors).
Vec coordinates(const std::vector<Vec>& b, const Vec& v)
{
    const std::size_t n = b.size();
    std::vector<Vec> a(n, Vec(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = b[c][r];
        a[r][n] = v[r];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c]))
                p = r;
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c)
                continue;
            const long double m = a[r][c] / a[c][c];
            for (std::size_t t = c; t <= n; ++t)
                a[r][t] -= m * a[c][t];
        }
    }
    Vec x(n);
    for (std::size_t r = 0; r < n; ++r)
        x[r] = a[r][n] / a[r][r];
    return x;
}

// Unimodular W with last column r (r primitive); columns 0..k-2 complete it to a basis.
std::vector<std::vector<long long>> complete_basis(std::vector<long long> x)
{
    const std::size_t k = x.size();
    std::vector<std::vector<long long>> w(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        w[i][i] = 1;
    const std::size_t last = k - 1;
    for (std::size_t i = 0; i < last; ++i) {
        while (x[i] != 0) {
            const long long q = x[last] / x[i];
            x[last] -= q * x[i];
            for (std::size_t r = 0; r < k; ++r)
                w[r][i] += q * w[r][last];
            std::swap(x[i], x[last]);
            for (std::size_t r = 0; r < k; ++r)
                std::swap(w[r][i], w[r][last]);
        }
    }
    if (x[last] == -1) {
        for (std::size_t r = 0; r < k; ++r)
            w[r][last] = -w[r][last];
    } else if (x[last] != 1) {
        throw ContractError("complete_basis: relation vector is not primitive");
    }
    return w;
}

Vec to_ld(const std::vector<double>& v)
{
    return Vec(v.begin(), v.end());
}

struct PowerTable {
    int n = 0;
    int r1 = 0;
    int r2 = 0;
    std::vector<double> real_pows;          // r1 x n
    std::vector<std::complex<double>> cpx;  // r2 x n
    std::vector<double> real_abs, cpx_abs;
};

PowerTable make_powers(const EmbeddingSet& emb, int n)
{
    PowerTable t;
    t.n = n;
    t.r1 = static_cast<int>(emb.real_roots.size());
    t.r2 = static_cast<int>(emb.complex_pairs.size());
    for (const auto& r : emb.real_roots) {
        long double p = 1.0L;
        for (int k = 0; k < n; ++k) {
            t.real_pows.push_back(static_cast<double>(p));
            t.real_abs.push_back(std::fabs(static_cast<double>(p)));
            p *= r.precise;
        }
    }
    for (const auto& c : emb.complex_pairs) {
        cld p = 1.0L;
        for (int k = 0; k < n; ++k) {
            t.cpx.emplace_back(static_cast<double>(p.real()), static_cast<double>(p.imag()));
            t.cpx_abs.push_back(static_cast<double>(std::abs(p)));
            p *= c.precise;
        }
    }
    return t;
}

std::vector<AlgebraicElement> enumerate_impl(const IntPolynomial& f, int height, EnumerationStats* stats,
                                             bool parallel)
{
    require_monic(f, "enumerate_units");
    if (height < 1)
        throw DomainError("enumerate_units: height must be at least 1");
    const int n = f.degree();
    const EmbeddingSet emb = embeddings(f);
    const PowerTable pw = make_powers(emb, n);
    const std::int64_t base = 2 * height + 1;
    std::int64_t total = 1;
    for (int k = 0; k < n; ++k) {
        if (total > std::numeric_limits<std::int64_t>::max() / base)
            throw UnsupportedError("enumerate_units: search box too large");
        total *= base;
    }
    const std::int64_t top = (total - 1) / 2;   // indices 1..top are the canonical representatives
    constexpr std::int64_t kChunk = 1 << 15;
    const std::int64_t chunks = (top + kChunk - 1) / kChunk;
    std::vector<std::vector<AlgebraicElement>> found(static_cast<std::size_t>(chunks));
    std::vector<std::uint64_t> exact(static_cast<std::size_t>(chunks), 0);
    const double eps = std::numeric_limits<double>::epsilon();

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t ch = 0; ch < chunks; ++ch) {
        std::vector<int> digits(n);
        const std::int64_t lo = std::max<std::int64_t>(2, ch * kChunk + 1);
        const std::int64_t hi = std::min(top, (ch + 1) * kChunk);
        for (std::int64_t idx = lo; idx <= hi; ++idx) {
            std::int64_t v = idx;
            for (int k = 0; k < n; ++k) {
                std::int64_t d = (v + height) % base - height;
                digits[k] = static_cast<int>(d);
                v = (v - d) / base;
            }
            double norm = 1.0, scale = 1.0;
            for (int i = 0; i < pw.r1; ++i) {
                double s = 0.0, a = 0.0;
                const double* p = &pw.real_pows[static_cast<std::size_t>(i) * n];
                const double* q = &pw.real_abs[static_cast<std::size_t>(i) * n];
                for (int k = 0; k < n; ++k) {
                    s += digits[k] * p[k];
                    a += std::abs(digits[k]) * q[k];
                }
                norm *= s;
                scale *= a;
            }
            for (int i = 0; i < pw.r2; ++i) {
                double re = 0.0, im = 0.0, a = 0.0;
                const std::complex<double>* p = &pw.cpx[static_cast<std::size_t>(i) * n];
                const double* q = &pw.cpx_abs[static_cast<std::size_t>(i) * n];
                for (int k = 0; k < n; ++k) {
                    re += digits[k] * p[k].real();
                    im += digits[k] * p[k].imag();
                    a += std::abs(digits[k]) * q[k];
                }
                norm *= re * re + im * im;
                scale *= a * a;
            }
            const double err = scale * 64.0 * n * eps;
            const double an = std::fabs(norm);
            if (!(an > 0.5 && an < 1.5) && err <= 0.25)
                continue;
            AlgebraicElement e;
            e.coords.assign(digits.begin(), digits.end());
            ++exact[static_cast<std::size_t>(ch)];
            const mpz_class nm = exact_norm(f, e);
            if (nm == 1 || nm == -1)
                found[static_cast<std::size_t>(ch)].push_back(std::move(e));
        }
    }

    std::vector<AlgebraicElement> out;
    for (auto& part : found)
        for (auto& e : part)
            out.push_back(std::move(e));
    if (stats) {
        stats->candidates = static_cast<std::uint64_t>(std::max<std::int64_t>(top - 1, 0));
        stats->exact_checks = std::accumulate(exact.begin(), exact.end(), std::uint64_t{0});
    }
    return out;
}

Vec full_logs(const EmbeddingSet& emb, const AlgebraicElement& e)
{
    return to_ld(log_embedding(emb, e));
}

Vec project(const Vec& full, int rank)
{
    return Vec(full.begin(), full.begin() + rank);
}

std::vector<double> to_double(const Vec& v)
{
    return std::vector<double>(v.begin(), v.end());
}

} // namespace

AlgebraicElement AlgebraicElement::one(int n)
{
    AlgebraicElement e;
    e.coords.assign(static_cast<std::size_t>(n), 0);
    e.coords[0] = 1;
    return e;
}

AlgebraicElement AlgebraicElement::theta(int n)
{
    AlgebraicElement e;
    e.coords.assign(static_cast<std::size_t>(n), 0);
    if (n > 1)
        e.coords[1] = 1;
    return e;
}

bool AlgebraicElement::is_zero() const
{
    return std::all_of(coords.begin(), coords.end(), [](const mpz_class& c) { return c == 0; });
}

std::string AlgebraicElement::str() const
{
    std::string s = as_poly().str();
    std::replace(s.begin(), s.end(), 'x', 't');
    return s;
}

AlgebraicElement AlgebraicElement::operator-() const
{
    AlgebraicElement e = *this;
    for (auto& c : e.coords)
        c = -c;
    return e;
}

mpz_class exact_norm(const IntPolynomial& f, const AlgebraicElement& e)
{
    require_monic(f, "exact_norm");
    const IntPolynomial g = e.as_poly();
    if (g.is_zero())
        return 0;
    return resultant(f, g);
}

AlgebraicElement multiply(const IntPolynomial& f, const AlgebraicElement& a, const AlgebraicElement& b)
{
    require_monic(f, "multiply");
    std::vector<mpz_class> c(a.coords.size() + b.coords.size(), 0);
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coords.size(); ++j)
            c[i + j] += a.coords[i] * b.coords[j];
    }
    return reduce_mod(f, std::move(c));
}

AlgebraicElement unit_inverse(const IntPolynomial& f, const AlgebraicElement& e)
{
    require_monic(f, "unit_inverse");
    const mpz_class nm = exact_norm(f, e);
    if (nm != 1 && nm != -1)
        throw DomainError("unit_inverse: element is not a unit (norm " + nm.get_str() + ")");
    const int n = f.degree();
    // Columns of the multiplication-by-e matrix are e * theta^j.
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1, 0));
    AlgebraicElement col = reduce_mod(f, e.coords);
    const AlgebraicElement th = AlgebraicElement::theta(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i)
            m[i][j] = col.coords[i];
        col = multiply(f, col, th);
    }
    m[0][n] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (m[p][c] == 0)
            ++p;
        std::swap(m[p], m[c]);
        const mpq_class piv = m[c][c];
        for (int t = c; t <= n; ++t)
            m[c][t] /= piv;
        for (int r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0)
                continue;
            const mpq_class k = m[r][c];
            for (int t = c; t <= n; ++t)
                m[r][t] -= k * m[c][t];
        }
    }
    AlgebraicElement inv;
    for (int i = 0; i < n; ++i) {
        if (m[i][n].get_den() != 1)
            throw ContractError("unit_inverse: inverse is not integral");
        inv.coords.push_back(m[i][n].get_num());
    }
    return inv;
}

AlgebraicElement unit_power(const IntPolynomial& f, const AlgebraicElement& e, long long k)
{
    const int n = f.degree();
    AlgebraicElement base = k < 0 ? unit_inverse(f, e) : reduce_mod(f, e.coords);
    unsigned long long m = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
    AlgebraicElement acc = AlgebraicElement::one(n);
    while (m) {
        if (m & 1)
            acc = multiply(f, acc, base);
        m >>= 1;
        if (m)
            base = multiply(f, base, base);
    }
    return acc;
}

std::vector<std::complex<long double>> conjugates(const EmbeddingSet& emb, const AlgebraicElement& e)
{
    std::vector<cld> out;
    auto horner = [&](cld z) {
        cld s = 0.0L;
        for (auto it = e.coords.rbegin(); it != e.coords.rend(); ++it)
            s = s * z + static_cast<long double>(it->get_d());
        return s;
    };
    for (const auto& r : emb.real_roots)
        out.push_back(horner(cld(r.precise, 0.0L)));
    for (const auto& c : emb.complex_pairs)
        out.push_back(horner(c.precise));
    return out;
}

std::vector<double> log_embedding(const EmbeddingSet& emb, const AlgebraicElement& e)
{
    const auto conj = conjugates(emb, e);
    const std::size_t r1 = emb.real_roots.size();
    std::vector<double> out;
    for (std::size_t i = 0; i < conj.size(); ++i) {
        const long double a = std::abs(conj[i]);
        if (a == 0.0L)
            throw DomainError("log_embedding: zero conjugate");
        out.push_back(static_cast<double>((i < r1 ? 1.0L : 2.0L) * std::log(a)));
    }
    return out;
}

std::vector<AlgebraicElement> enumerate_units(const IntPolynomial& f, int height, EnumerationStats* stats)
{
    return enumerate_impl(f, height, stats, true);
}

std::vector<AlgebraicElement> enumerate_units_serial(const IntPolynomial& f, int height, EnumerationStats* stats)
{
    return enumerate_impl(f, height, stats, false);
}

UnitSystem regulator_multiple(const IntPolynomial& f, const std::vector<AlgebraicElement>& units)
{
    return regulator_multiple(f, embeddings(f), units);
}

UnitSystem regulator_multiple(const IntPolynomial& f, const EmbeddingSet& emb,
                              const std::vector<AlgebraicElement>& units)
{
    require_monic(f, "regulator_multiple");
    const Signature sig = emb.signature();
    const int rank = sig.r1 + sig.r2 - 1;
    UnitSystem sys;
    sys.units_supplied = static_cast<int>(units.size());
    if (rank < 1)
        throw InsufficientUnitsError("regulator_multiple: unit rank is zero", 0);

    struct Item {
        std::size_t index;
        Vec full;
        long double norm;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < units.size(); ++i) {
        const mpz_class nm = exact_norm(f, units[i]);
        if (nm != 1 && nm != -1)
            throw DomainError("regulator_multiple: input " + std::to_string(i) + " is not a unit");
        Vec full = full_logs(emb, units[i]);
        items.push_back({i, full, dot(full, full)});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.norm < b.norm; });

    // Greedy independent subset by Gram-Schmidt residuals.
    std::vector<AlgebraicElement> gens;
    std::vector<Vec> basis, full_basis, ortho;
    std::vector<bool> used(items.size(), false);
    for (std::size_t t = 0; t < items.size() && static_cast<int>(basis.size()) < rank; ++t) {
        Vec v = project(items[t].full, rank);
        Vec res = v;
        for (const auto& o : ortho) {
            const long double m = dot(res, o) / dot(o, o);
            for (int c = 0; c < rank; ++c)
                res[c] -= m * o[c];
        }
        if (std::sqrt(dot(res, res)) > 1e-6L * std::max(1.0L, std::sqrt(dot(v, v)))) {
            ortho.push_back(res);
            basis.push_back(v);
            full_basis.push_back(items[t].full);
            gens.push_back(units[items[t].index]);
            used[t] = true;
        }
    }
    if (static_cast<int>(basis.size()) < rank)
        throw InsufficientUnitsError("regulator_multiple: units span rank " + std::to_string(basis.size()) +
                                         " < " + std::to_string(rank),
                                     static_cast<int>(basis.size()));

    // Rebuilds the exact generators from exponent columns and refreshes their log vectors.
    auto rebuild = [&](const std::vector<AlgebraicElement>& old_gens, const std::vector<std::vector<long long>>& expo,
                       std::vector<Vec>& full_pred) {
        std::vector<AlgebraicElement> fresh;
        for (std::size_t j = 0; j < expo.size(); ++j) {
            AlgebraicElement acc = AlgebraicElement::one(f.degree());
            for (std::size_t i = 0; i < old_gens.size(); ++i)
                if (expo[j][i] != 0)
                    acc = multiply(f, acc, unit_power(f, old_gens[i], expo[j][i]));
            const Vec direct = full_logs(emb, acc);
            for (std::size_t c = 0; c < direct.size(); ++c)
                if (std::fabs(direct[c] - full_pred[j][c]) > 1e-8L * std::max(1.0L, std::fabs(direct[c])))
                    throw PrecisionError("regulator_multiple: recombined unit disagrees with its log vector");
            full_pred[j] = direct;
            fresh.push_back(std::move(acc));
        }
        return fresh;
    };

    auto reduce_basis = [&]() {
        std::vector<std::vector<long long>> trans;
        lll(basis, full_basis, trans);
        gens = rebuild(gens, trans, full_basis);
        for (std::size_t j = 0; j < basis.size(); ++j)
            basis[j] = project(full_basis[j], rank);
    };
    reduce_basis();

    for (std::size_t t = 0; t < items.size(); ++t) {
        if (used[t])
            continue;
        const Vec v = project(items[t].full, rank);
        const Vec c = coordinates(basis, v);
        auto integral = [&](long double d) {
            for (long double x : c)
                if (std::fabs(d * x - std::round(d * x)) > 1e-6L)
                    return false;
            return true;
        };
        if (integral(1.0L))
            continue;
        // Denominators divide the index of the current sublattice, at most R'/0.2.
        const long double cur = abs_det(basis);
        const long long dmax = static_cast<long long>(cur / 0.2L) + 1;
        long long d = 0;
        for (long long k = 2; k <= dmax; ++k)
            if (integral(static_cast<long double>(k))) {
                d = k;
                break;
            }
        if (d == 0)
            throw PrecisionError("regulator_multiple: no rational coordinates found for unit " +
                                 std::to_string(items[t].index));
        std::vector<long long> rel;
        for (long double x : c)
            rel.push_back(static_cast<long long>(std::llround(d * x)));
        rel.push_back(-d);
        long long g = 0;
        for (long long x : rel)
            g = std::gcd(g, x);
        for (auto& x : rel)
            x /= g;
        const auto w = complete_basis(rel);
        std::vector<AlgebraicElement> six = gens;
        six.push_back(units[items[t].index]);
        std::vector<Vec> six_full = full_basis;
        six_full.push_back(items[t].full);
        std::vector<std::vector<long long>> expo(rank, std::vector<long long>(rank + 1));
        std::vector<Vec> new_full(rank, Vec(six_full[0].size(), 0.0L));
        for (int j = 0; j < rank; ++j)
            for (int i = 0; i <= rank; ++i) {
                expo[j][i] = w[i][j];
                for (std::size_t col = 0; col < new_full[j].size(); ++col)
                    new_full[j][col] += static_cast<long double>(w[i][j]) * six_full[i][col];
            }
        std::vector<Vec> new_basis;
        for (const auto& nf : new_full)
            new_basis.push_back(project(nf, rank));
        std::vector<std::vector<long long>> trans;
        lll(new_basis, new_full, trans);
        std::vector<std::vector<long long>> combined(rank, std::vector<long long>(rank + 1, 0));
        for (int j = 0; j < rank; ++j)
            for (int m = 0; m < rank; ++m)
                for (int i = 0; i <= rank; ++i)
                    combined[j][i] += trans[j][m] * expo[m][i];
        gens = rebuild(six, combined, new_full);
        full_basis = new_full;
        for (int j = 0; j < rank; ++j)
            basis[j] = project(full_basis[j], rank);
        ++sys.recombinations;
    }

    std::vector<Vec> mu;
    Vec bsq;
    gram_schmidt(basis, mu, bsq);
    long double longest = 0.0L, shortest = std::numeric_limits<long double>::max();
    for (int j = 0; j < rank; ++j) {
        longest = std::max(longest, std::sqrt(dot(basis[j], basis[j])));
        shortest = std::min(shortest, std::sqrt(bsq[j]));
    }
    sys.condition = static_cast<double>(longest / shortest);
    if (sys.condition > 1e8)
        throw PrecisionError("regulator_multiple: basis too ill-conditioned for a binary64 determinant");
    sys.rank = rank;
    sys.generators = gens;
    for (int j = 0; j < rank; ++j) {
        sys.log_vectors.push_back(to_double(basis[j]));
        sys.full_log_vectors.push_back(to_double(full_basis[j]));
    }
    sys.reg_multiple = static_cast<double>(abs_det(basis));
    return sys;
}

RegulatorCertification certify_regulator(double r_prime, double analytic_lb)
{
    if (!(analytic_lb > 0.0))
        throw DomainError("certify_regulator: analytic lower bound must be positive");
    if (!(r_prime > 0.0))
        throw DomainError("certify_regulator: regulator multiple must be positive");
    RegulatorCertification c;
    c.regulator_multiple = r_prime;
    c.lower_bound = analytic_lb;
    c.certified = r_prime < 2.0 * analytic_lb;
    if (c.certified) {
        c.multiplier_candidates = {1};
    } else {
        const int top = static_cast<int>(std::floor(r_prime / analytic_lb));
        for (int m = 1; m <= std::max(top, 1); ++m)
            c.multiplier_candidates.push_back(m);
    }
    return c;
}

std::string default_table2_path()
{
    return std::string(REGCERT_DATA_DIR) + "/table2.txt";
}

std::vector<Table2Entry> load_table2(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open table file: " + path);
    std::vector<Table2Entry> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> parts;
        std::stringstream ss(line);
        std::string part;
        while (std::getline(ss, part, '|'))
            parts.push_back(trim(part));
        if (parts.size() != 3)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'disc | poly | regulator'", 0);
        Table2Entry e;
        if (e.discriminant.set_str(parts[0], 10) != 0)
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad discriminant", 0);
        e.polynomial = parts[1];
        e.regulator_text = parts[2];
        std::size_t used = 0;
        e.regulator = std::stod(parts[2], &used);
        if (used != parts[2].size())
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad regulator", used);
        out.push_back(std::move(e));
    }
    return out;
}

nlohmann::json Table2Config::to_json() const
{
    return {{"start_height", start_height},
            {"height_cap", height_cap},
            {"lb_terms", lb_terms},
            {"d3", d3_expr},
            {"different_trivial_max", different_trivial_max_expr},
            {"threshold", threshold},
            {"expected_below", expected_below},
            {"quadrature", quadrature.to_json()}};
}

nlohmann::json Table2RowReport::to_json(bool timing) const
{
    nlohmann::json j = {{"row", row},
                        {"polynomial", polynomial},
                        {"discriminant_expected", discriminant_expected},
                        {"discriminant_computed", discriminant_computed},
                        {"discriminant_match", discriminant_match},
                        {"signature", {signature.r1, signature.r2}},
                        {"regulator_expected", regulator_expected},
                        {"regulator_multiple", nullptr},
                        {"regulator", nullptr},
                        {"multiplier", nullptr},
                        {"certified", certified},
                        {"multiplier_candidates", multiplier_candidates},
                        {"analytic_lower_bound", analytic_lower_bound},
                        {"height_used", height_used},
                        {"units_found", units_found},
                        {"m_k_min", m_k_min},
                        {"status", status},
                        {"detail", detail},
                        {"wall_time", nullptr}};
    if (regulator_multiple)
        j["regulator_multiple"] = *regulator_multiple;
    if (regulator)
        j["regulator"] = *regulator;
    if (multiplier)
        j["multiplier"] = *multiplier;
    if (timing)
        j["wall_time"] = wall_time;
    return j;
}

nlohmann::json Table2Report::to_json() const
{
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows)
        rows_json.push_back(r.to_json(config.timing));
    return {{"rows", rows_json},
            {"checks",
             {{"discriminants", discriminants_ok},
              {"signatures", signatures_ok},
              {"regulators", regulators_ok},
              {"order_by_abs_discriminant", order_ok},
              {"row1_minimum", minimum_ok},
              {"below_threshold_rows", below_threshold_ok}}},
            {"incomplete", incomplete},
            {"verdict", passed() ? "PASS" : "FAIL"},
            {"config", config.to_json()}};
}

double field_lower_bound(const mpz_class& abs_disc, const Table2Config& cfg)
{
    const double d = abs_disc.get_d();
    const bool trivial = d <= parse_real_expr(cfg.different_trivial_max_expr);
    analytic::SignatureParams sig;
    return analytic::reg_lower_bound(d, d, cfg.lb_terms, sig, trivial, parse_real_expr(cfg.d3_expr), cfg.quadrature);
}

Table2RowReport verify_field(const Table2Entry& entry, int row, const Table2Config& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    Table2RowReport r;
    r.row = row;
    r.polynomial = entry.polynomial;
    r.discriminant_expected = entry.discriminant.get_str();
    r.regulator_expected = entry.regulator_text;
    const IntPolynomial f = parse_poly(entry.polynomial);
    const mpz_class disc = discriminant(f);
    r.discriminant_computed = disc.get_str();
    r.discriminant_match = disc == entry.discriminant;
    if (!r.discriminant_match)
        r.detail = "polynomial discriminant differs from the printed field discriminant";
    r.signature = signature(f);
    const EmbeddingSet emb = embeddings(f);

    std::optional<UnitSystem> sys;
    int h = cfg.start_height;
    for (;;) {
        const auto units = enumerate_units(f, h);
        r.height_used = h;
        r.units_found = static_cast<int>(units.size());
        try {
            sys = regulator_multiple(f, emb, units);
            break;
        } catch (const InsufficientUnitsError& e) {
            if (h >= cfg.height_cap) {
                r.status = "incomplete";
                r.detail = e.what();
                break;
            }
            h = std::min(2 * h, cfg.height_cap);
        }
    }
    if (sys) {
        r.regulator_multiple = sys->reg_multiple;
        r.m_k_min = std::numeric_limits<double>::infinity();
        for (const auto& v : sys->full_log_vectors) {
            double s = 0.0;
            for (double x : v)
                s += x * x;
            r.m_k_min = std::min(r.m_k_min, s);
        }
        r.analytic_lower_bound = field_lower_bound(abs(disc), cfg);
        const auto cert = certify_regulator(sys->reg_multiple, r.analytic_lower_bound);
        r.certified = cert.certified;
        r.multiplier_candidates = cert.multiplier_candidates;
        for (int m : cert.multiplier_candidates) {
            const double reg = sys->reg_multiple / m;
            if (std::fabs(reg - entry.regulator) <= 5e-5) {
                r.regulator = reg;
                r.multiplier = m;
                break;
            }
        }
        if (!r.regulator)
            r.status = "mismatch";
        else if (r.certified && *r.multiplier == 1)
            r.status = "certified";
        else
            r.status = "reproduced, not certified";
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

Table2Report verify_table2(const std::vector<Table2Entry>& table, const Table2Config& cfg)
{
    Table2Report rep;
    rep.config = cfg;
    for (std::size_t i = 0; i < table.size(); ++i)
        rep.rows.push_back(verify_field(table[i], static_cast<int>(i) + 1, cfg));

    rep.discriminants_ok = !rep.rows.empty();
    rep.signatures_ok = !rep.rows.empty();
    rep.regulators_ok = !rep.rows.empty();
    for (const auto& r : rep.rows) {
        rep.discriminants_ok = rep.discriminants_ok && r.discriminant_match;
        rep.signatures_ok = rep.signatures_ok && r.signature == Signature{5, 1};
        rep.regulators_ok = rep.regulators_ok && r.reproduced();
        rep.incomplete = rep.incomplete || r.status == "incomplete";
    }
    rep.order_ok = true;
    for (std::size_t i = 1; i < table.size(); ++i)
        if (abs(table[i].discriminant) <= abs(table[i - 1].discriminant))
            rep.order_ok = false;
    if (rep.regulators_ok) {
        rep.minimum_ok = true;
        rep.below_threshold_ok = true;
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const double reg = *rep.rows[i].regulator;
            if (i > 0 && reg <= *rep.rows[0].regulator)
                rep.minimum_ok = false;
            const bool below = reg < cfg.threshold;
            if (below != (static_cast<int>(i) < cfg.expected_below))
                rep.below_threshold_ok = false;
        }
    }
    return rep;
}

} // namespace regcert
