#ifndef REGCERT_POLYNOMIAL_HPP
#define REGCERT_POLYNOMIAL_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace regcert {

// Dense univariate polynomial over Z, constant term first. The zero polynomial has
// no coefficients; otherwise the leading coefficient is nonzero.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const mpz_class& lc() const { return coeffs_.back(); }
    mpz_class coeff(int k) const;
    bool is_monic() const { return !is_zero() && lc() == 1; }

    IntPolynomial derivative() const;
    mpz_class content() const;
    IntPolynomial primitive_part() const;
    IntPolynomial negate_variable() const;        // f(-x)
    IntPolynomial translate(const mpz_class& c) const; // f(x + c)

    mpz_class eval(const mpz_class& x) const;
    mpq_class eval(const mpq_class& x) const;
    double eval(double x) const;

    std::string str() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const mpz_class& k, const IntPolynomial& a);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

// Parses "x^7-3x^5-x^4+x^3+3x^2+x-1" style input: integer coefficients, '*' optional,
// whitespace ignored, variable x. Throws ParseError with the offending position.
IntPolynomial parse_poly(std::string_view text);

// lc(b)^{deg a - deg b + 1} a = q b + r.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial exact_divide(const IntPolynomial& a, const mpz_class& k);

// Res(a, b) = lc(a)^{deg b} prod_{a(alpha)=0} b(alpha), by the subresultant PRS.
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);

// (-1)^{n(n-1)/2} Res(f, f') / lc(f).
mpz_class discriminant(const IntPolynomial& f);

// Sturm sequence with positive-multiple pseudo-remainders (signs preserved).
std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& f);
// Number of distinct real roots of a squarefree f.
int count_real_roots(const IntPolynomial& f);
// Distinct real roots in the half-open interval (a, b].
int count_real_roots(const IntPolynomial& f, const mpq_class& a, const mpq_class& b);

struct Signature {
    int r1 = 0;
    int r2 = 0;
    bool operator==(const Signature&) const = default;
};

// Requires f squarefree (nonzero discriminant); throws DomainError otherwise.
Signature signature(const IntPolynomial& f);

} // namespace regcert

#endif
