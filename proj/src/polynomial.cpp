#include "regcert/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "regcert/errors.hpp"

namespace regcert {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

mpz_class IntPolynomial::coeff(int k) const
{
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : mpz_class(0);
}

IntPolynomial IntPolynomial::derivative() const
{
    std::vector<mpz_class> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d.push_back(coeffs_[k] * static_cast<unsigned long>(k));
    return IntPolynomial(std::move(d));
}

mpz_class IntPolynomial::content() const
{
    mpz_class g = 0;
    for (const auto& c : coeffs_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const
{
    if (is_zero())
        return *this;
    mpz_class g = content();
    if (lc() < 0)
        g = -g;
    return exact_divide(*this, g);
}

IntPolynomial IntPolynomial::negate_variable() const
{
    std::vector<mpz_class> c = coeffs_;
    for (std::size_t k = 1; k < c.size(); k += 2)
        c[k] = -c[k];
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::translate(const mpz_class& shift) const
{
    // Horner in the ring: f(x + c) = (...(a_n (x+c) + a_{n-1})(x+c) + ...)
    IntPolynomial result;
    const IntPolynomial lin(std::vector<mpz_class>{shift, 1});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        result = result * lin + IntPolynomial(std::vector<mpz_class>{*it});
    return result;
}

mpz_class IntPolynomial::eval(const mpz_class& x) const
{
    mpz_class v = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        v = v * x + *it;
    return v;
}

mpq_class IntPolynomial::eval(const mpq_class& x) const
{
    mpq_class v = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        v = v * x + mpq_class(*it);
    return v;
}

double IntPolynomial::eval(double x) const
{
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        v = v * x + it->get_d();
    return v;
}

std::string IntPolynomial::str() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const mpz_class& c = coeffs_[k];
        if (c == 0)
            continue;
        const mpz_class mag = abs(c);
        if (c < 0)
            out += '-';
        else if (!out.empty())
            out += '+';
        if (k == 0 || mag != 1)
            out += mag.get_str();
        if (k >= 1)
            out += 'x';
        if (k >= 2)
            out += '^' + std::to_string(k);
    }
    return out;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b)
{
    return a + mpz_class(-1) * b;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const mpz_class& k, const IntPolynomial& a)
{
    std::vector<mpz_class> c = a.coeffs_;
    for (auto& v : c)
        v *= k;
    return IntPolynomial(std::move(c));
}

IntPolynomial exact_divide(const IntPolynomial& a, const mpz_class& k)
{
    std::vector<mpz_class> c = a.coeffs();
    for (auto& v : c)
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), k.get_mpz_t());
    return IntPolynomial(std::move(c));
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    IntPolynomial parse()
    {
        skip_ws();
        if (pos_ == text_.size())
            throw ParseError("empty polynomial", pos_);
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == text_.size())
                break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError(std::string("expected '+' or '-', found '") + peek() + "'", pos_);
            }
            term(sign);
            first = false;
        }
        return IntPolynomial(std::move(coeffs_));
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string digits()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void term(int sign)
    {
        const std::size_t start = pos_;
        mpz_class c = 1;
        bool have_coeff = false;
        std::string d = digits();
        if (!d.empty()) {
            c = mpz_class(d);
            have_coeff = true;
            skip_ws();
            if (peek() == '.' || peek() == '/')
                throw ParseError("non-integer coefficient", pos_);
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'x')
                    throw ParseError("expected 'x' after '*'", pos_);
            }
        }
        unsigned long exponent = 0;
        if (std::isalpha(static_cast<unsigned char>(peek()))) {
            if (peek() != 'x')
                throw ParseError(std::string("wrong variable '") + peek() + "', expected 'x'", pos_);
            ++pos_;
            exponent = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                const std::size_t at = pos_;
                const std::string e = digits();
                if (e.empty())
                    throw ParseError("expected exponent after '^'", at);
                if (e.size() > 6)
                    throw ParseError("exponent too large", at);
                exponent = std::stoul(e);
            }
        } else if (!have_coeff) {
            if (peek() == '\0')
                throw ParseError("dangling sign", pos_);
            throw ParseError(std::string("unexpected character '") + peek() + "'", start);
        }
        if (coeffs_.size() <= exponent)
            coeffs_.resize(exponent + 1);
        coeffs_[exponent] += sign * c;
        skip_ws();
        if (pos_ < text_.size() && peek() != '+' && peek() != '-') {
            if (std::isalpha(static_cast<unsigned char>(peek())) && peek() != 'x')
                throw ParseError(std::string("wrong variable '") + peek() + "', expected 'x'", pos_);
            if (peek() == '.' || peek() == '/')
                throw ParseError("non-integer coefficient", pos_);
            throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<mpz_class> coeffs_;
};

mpz_class zpow(const mpz_class& base, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

int sign_of(const mpz_class& v)
{
    return sgn(v);
}

int sign_variations(const std::vector<int>& signs)
{
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

} // namespace

IntPolynomial parse_poly(std::string_view text)
{
    return PolyParser(text).parse();
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero())
        throw DomainError("pseudo_remainder: division by zero polynomial");
    if (a.degree() < b.degree())
        return a;
    std::vector<mpz_class> r = a.coeffs();
    const int db = b.degree();
    const mpz_class& lb = b.lc();
    int e = a.degree() - db + 1;
    for (int k = a.degree(); k >= db; --k) {
        const mpz_class lead = r[k];
        for (auto& v : r)
            v *= lb;
        if (lead != 0)
            for (int i = 0; i <= db; ++i)
                r[k - db + i] -= lead * b.coeffs()[i];
        --e;
    }
    // e is now 0: exactly deg a - deg b + 1 multiplications by lc(b)
    r.resize(static_cast<std::size_t>(db));
    return IntPolynomial(std::move(r));
}

mpz_class resultant(const IntPolynomial& a_in, const IntPolynomial& b_in)
{
    if (a_in.is_zero() || b_in.is_zero())
        return 0;
    if (a_in.degree() == 0)
        return zpow(a_in.lc(), static_cast<unsigned long>(b_in.degree()));
    if (b_in.degree() == 0)
        return zpow(b_in.lc(), static_cast<unsigned long>(a_in.degree()));

    const mpz_class ca = a_in.content();
    const mpz_class cb = b_in.content();
    IntPolynomial A = exact_divide(a_in, ca);
    IntPolynomial B = exact_divide(b_in, cb);
    const mpz_class t = zpow(ca, static_cast<unsigned long>(b_in.degree())) *
                        zpow(cb, static_cast<unsigned long>(a_in.degree()));
    mpz_class g = 1, h = 1;
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1))
            s = -1;
    }
    for (;;) {
        const int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1))
            s = -s;
        IntPolynomial R = pseudo_remainder(A, B);
        A = B;
        if (R.is_zero())
            return 0;
        B = exact_divide(R, g * zpow(h, static_cast<unsigned long>(delta)));
        g = A.lc();
        if (delta > 0) {
            mpz_class num = zpow(g, static_cast<unsigned long>(delta));
            mpz_class den = zpow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (B.degree() == 0)
            break;
    }
    const unsigned long da = static_cast<unsigned long>(A.degree());
    mpz_class num = zpow(B.lc(), da);
    mpz_class den = zpow(h, da - 1);
    mpz_class hh;
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return s * t * hh;
}

mpz_class discriminant(const IntPolynomial& f)
{
    if (f.degree() < 1)
        throw DomainError("discriminant: degree must be at least 1");
    const long n = f.degree();
    mpz_class r = resultant(f, f.derivative());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
    if ((n * (n - 1) / 2) % 2 == 1)
        r = -r;
    return r;
}

std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& f)
{
    std::vector<IntPolynomial> seq;
    if (f.is_zero())
        return seq;
    seq.push_back(f);
    IntPolynomial d = f.derivative();
    if (d.is_zero())
        return seq;
    seq.push_back(d);
    for (;;) {
        const IntPolynomial& a = seq[seq.size() - 2];
        const IntPolynomial& b = seq.back();
        IntPolynomial r = pseudo_remainder(a, b);
        if (r.is_zero())
            break;
        // prem = lc(b)^{delta+1} rem; keep only the sign of that factor
        const int delta = a.degree() - b.degree();
        const bool flip = b.lc() < 0 && ((delta + 1) & 1);
        mpz_class cont = r.content();
        r = exact_divide(r, flip ? cont : mpz_class(-cont));
        seq.push_back(r);
        if (r.degree() == 0)
            break;
    }
    return seq;
}

int count_real_roots(const IntPolynomial& f)
{
    const auto seq = sturm_sequence(f);
    std::vector<int> at_pos, at_neg;
    for (const auto& p : seq) {
        at_pos.push_back(sign_of(p.lc()));
        at_neg.push_back((p.degree() & 1) ? -sign_of(p.lc()) : sign_of(p.lc()));
    }
    return sign_variations(at_neg) - sign_variations(at_pos);
}

int count_real_roots(const IntPolynomial& f, const mpq_class& a, const mpq_class& b)
{
    const auto seq = sturm_sequence(f);
    std::vector<int> sa, sb;
    for (const auto& p : seq) {
        sa.push_back(sgn(p.eval(a)));
        sb.push_back(sgn(p.eval(b)));
    }
    return sign_variations(sa) - sign_variations(sb);
}

Signature signature(const IntPolynomial& f)
{
    if (f.degree() < 1)
        throw DomainError("signature: degree must be at least 1");
    if (discriminant(f) == 0)
        throw DomainError("signature: polynomial has repeated roots");
    Signature sig;
    sig.r1 = count_real_roots(f);
    sig.r2 = (f.degree() - sig.r1) / 2;
    return sig;
}

} // namespace regcert
