#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "regcert/embeddings.hpp"
#include "regcert/errors.hpp"
#include "regcert/polynomial.hpp"
#include "regcert/units.hpp"

using namespace regcert;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng, int max_degree, long bound, bool monic)
{
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_int_distribution<long> c(-bound, bound);
    const int n = deg(rng);
    std::vector<mpz_class> coeffs(n + 1);
    for (int i = 0; i < n; ++i)
        coeffs[i] = c(rng);
    long top = monic ? 1 : c(rng);
    if (top == 0)
        top = 1;
    coeffs[n] = top;
    return IntPolynomial(coeffs);
}

} // namespace

TEST_CASE("polynomial parsing")
{
    const auto f = parse_poly("x^7-3x^5-x^4+x^3+3x^2+x-1");
    const std::vector<mpz_class> expect{-1, 1, 3, 1, -1, -3, 0, 1};
    CHECK(f.coeffs() == expect);
    CHECK(parse_poly("x").coeffs() == std::vector<mpz_class>{0, 1});
    CHECK(parse_poly(" x^7 - x^6 - 4x^3 + 2x^2 + 2x - 1 ") == parse_poly("x^7-x^6-4*x^3+2*x^2+2*x-1"));
    CHECK(parse_poly("-x^2+x^2+3") == IntPolynomial{3});
    CHECK(parse_poly("2x^3 + 2x^3") == IntPolynomial{0, 0, 0, 4});
}

TEST_CASE("polynomial parse errors carry the position")
{
    try {
        parse_poly("x^7-3y^5");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_poly(""), ParseError);
    CHECK_THROWS_AS(parse_poly("x^"), ParseError);
    CHECK_THROWS_AS(parse_poly("x^7++1"), ParseError);
    CHECK_THROWS_AS(parse_poly("3x^-2"), ParseError);
}

TEST_CASE("canonical text round trips")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto f = random_poly(rng, 9, 20, false);
        CHECK(parse_poly(f.str()) == f);
    }
}

TEST_CASE("polynomial arithmetic")
{
    const IntPolynomial a{1, 1};    // x + 1
    const IntPolynomial b{-1, 1};   // x - 1
    CHECK(a * b == IntPolynomial{-1, 0, 1});
    CHECK(a - a == IntPolynomial{});
    CHECK((a * a).derivative() == IntPolynomial{2, 2});
    CHECK(IntPolynomial{6, 4, 2}.content() == 2);
    CHECK(IntPolynomial{1, 0, 1}.translate(1) == IntPolynomial{2, 2, 1});
    CHECK(IntPolynomial{1, 2, 3}.negate_variable() == IntPolynomial{1, -2, 3});
    CHECK(IntPolynomial{-1, 0, 1}.eval(mpz_class(3)) == 8);
}

TEST_CASE("discriminants of small and tabulated polynomials")
{
    CHECK(discriminant(parse_poly("x^2+x+1")) == -3);
    CHECK(discriminant(parse_poly("x^2-2")) == 8);
    CHECK(discriminant(parse_poly("x^3-x-1")) == -23);
    CHECK(discriminant(parse_poly("2x^2+3x+1")) == 1);
    for (const auto& row : load_table2(default_table2_path()))
        CHECK(discriminant(parse_poly(row.polynomial)) == row.discriminant);
}

TEST_CASE("subresultant resultant matches the Sylvester determinant")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_poly(rng, 8, 9, false);
        const auto b = random_poly(rng, 7, 9, false);
        INFO(a.str() << " , " << b.str());
        CHECK(resultant(a, b) == oracle_ref::sylvester_resultant(a, b));
    }
}

TEST_CASE("discriminant is invariant under x -> -x and translation")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto f = random_poly(rng, 7, 6, true);
        if (f.degree() < 2)
            continue;
        const auto d = discriminant(f);
        CHECK(discriminant(f.negate_variable()) == d);
        CHECK(discriminant(f.translate(3)) == d);
        CHECK(discriminant(f.translate(-2)) == d);
        CHECK(d == oracle_ref::sylvester_discriminant(f));
    }
}

TEST_CASE("Sturm root counts match an exact grid scan")
{
    std::mt19937_64 rng(23);
    int compared = 0;
    for (int i = 0; i < 400; ++i) {
        auto f = random_poly(rng, 4, 12, false);
        if (f.degree() < 3 || discriminant(f) == 0)
            continue;
        const int grid = oracle_ref::grid_real_root_count(f);
        if (grid < 0)
            continue;
        ++compared;
        INFO(f.str());
        CHECK(count_real_roots(f) == grid);
    }
    CHECK(compared > 200);
}

TEST_CASE("Sturm counts on intervals")
{
    const auto f = parse_poly("x^3-x");   // roots -1, 0, 1
    CHECK(count_real_roots(f) == 3);
    CHECK(count_real_roots(f, mpq_class(-2), mpq_class(0)) == 2);
    CHECK(count_real_roots(f, mpq_class(0), mpq_class(2)) == 1);
    CHECK(count_real_roots(f, mpq_class(1, 2), mpq_class(3, 2)) == 1);
}

TEST_CASE("signatures")
{
    CHECK(signature(parse_poly("x^2+1")) == Signature{0, 1});
    CHECK(signature(parse_poly("x^2-2")) == Signature{2, 0});
    CHECK(signature(parse_poly("x^3-2")) == Signature{1, 1});
    for (const auto& row : load_table2(default_table2_path()))
        CHECK(signature(parse_poly(row.polynomial)) == Signature{5, 1});
    CHECK_THROWS_AS(signature(parse_poly("x^3-3x+2")), DomainError);   // (x-1)^2 (x+2)
}

TEST_CASE("embeddings satisfy Vieta and are certified")
{
    for (const auto& row : load_table2(default_table2_path())) {
        const auto f = parse_poly(row.polynomial);
        const auto emb = embeddings(f);
        INFO(row.polynomial);
        CHECK(emb.signature() == Signature{5, 1});
        CHECK(emb.max_residual < 1e-30);
        const auto roots = emb.all_roots();
        REQUIRE(roots.size() == 7);
        std::complex<double> sum = 0.0;
        double prod_abs = 1.0;
        for (const auto& z : roots) {
            sum += z;
            prod_abs *= std::abs(z);
        }
        CHECK(std::abs(sum + f.coeff(6).get_d()) < 1e-12);
        CHECK(prod_abs == doctest::Approx(std::abs(f.coeff(0).get_d())).epsilon(1e-12));
        for (std::size_t i = 1; i < emb.real_roots.size(); ++i)
            CHECK(std::abs(emb.real_roots[i - 1].value) <= std::abs(emb.real_roots[i].value));
        for (const auto& r : emb.real_roots) {
            CHECK(r.radius <= 1e-15 * std::max(1.0, std::abs(r.value)));
            CHECK(std::abs(f.eval(r.value)) < 1e-10);
        }
        for (const auto& c : emb.complex_pairs) {
            CHECK(c.angle > 0.0);
            CHECK(c.angle < std::numbers::pi);
        }
    }
}

TEST_CASE("Aberth roots agree with the refined embeddings")
{
    const auto f = parse_poly("x^7-3x^5-x^4+x^3+3x^2+x-1");
    const auto raw = aberth_roots(f);
    const auto emb = embeddings(f);
    for (const auto& z : emb.all_roots()) {
        double best = 1e300;
        for (const auto& w : raw)
            best = std::min(best, std::abs(z - w));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("m_k of conjugate vectors")
{
    const std::vector<double> ones{1.0, -1.0, 1.0};
    const std::vector<std::complex<double>> unit_circle{std::polar(1.0, 0.4)};
    CHECK(m_k_of(ones, unit_circle) == 0.0);

    const double e = std::exp(1.0);
    const std::vector<double> reals{e, 1.0 / e};
    const std::vector<std::complex<double>> none;
    CHECK(m_k_of(reals, none) == doctest::Approx(2.0));

    const std::vector<double> one{1.0};
    const std::vector<std::complex<double>> cplx{std::complex<double>(0.0, e)};
    CHECK(m_k_of(one, cplx) == doctest::Approx(4.0));   // (log |z|^2)^2

    const std::vector<double> zero{0.0};
    CHECK_THROWS_AS(m_k_of(zero, none), DomainError);

    const auto emb = embeddings(parse_poly("x^7-3x^5-x^4+x^3+3x^2+x-1"));
    CHECK(m_k_of(emb) > 0.0);
}
