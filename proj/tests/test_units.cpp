#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "regcert/errors.hpp"
#include "regcert/units.hpp"

using namespace regcert;

namespace {

const IntPolynomial& row1()
{
    static const IntPolynomial f = parse_poly("x^7-3x^5-x^4+x^3+3x^2+x-1");
    return f;
}

const std::vector<AlgebraicElement>& row1_units()
{
    static const auto u = enumerate_units(row1(), 3);
    return u;
}

std::vector<long> as_longs(const AlgebraicElement& e)
{
    std::vector<long> out;
    for (const auto& c : e.coords)
        out.push_back(c.get_si());
    return out;
}

} // namespace

TEST_CASE("element basics")
{
    const auto& f = row1();
    CHECK(exact_norm(f, AlgebraicElement::one(7)) == 1);
    CHECK(abs(exact_norm(f, AlgebraicElement::theta(7))) == 1);
    CHECK(AlgebraicElement::theta(7).str() == "t");
    CHECK((-AlgebraicElement::one(7)).coords[0] == -1);

    AlgebraicElement two = AlgebraicElement::one(7);
    two.coords[0] = 2;
    CHECK(exact_norm(f, two) == 128);
    CHECK_THROWS_AS(unit_inverse(f, two), DomainError);
}

TEST_CASE("unit arithmetic")
{
    const auto& f = row1();
    const auto t = AlgebraicElement::theta(7);
    const auto inv = unit_inverse(f, t);
    CHECK(multiply(f, t, inv) == AlgebraicElement::one(7));
    CHECK(unit_power(f, t, 0) == AlgebraicElement::one(7));
    CHECK(unit_power(f, t, -1) == inv);
    CHECK(unit_power(f, t, 3) == multiply(f, t, multiply(f, t, t)));
    CHECK(multiply(f, unit_power(f, t, 5), unit_power(f, t, -5)) == AlgebraicElement::one(7));
}

TEST_CASE("exact norms agree with a floating product of conjugates")
{
    const auto& f = row1();
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int i = 0; i < 300; ++i) {
        AlgebraicElement e;
        e.coords.resize(7);
        for (auto& x : e.coords)
            x = c(rng);
        if (e.is_zero())
            continue;
        const double exact = std::abs(exact_norm(f, e).get_d());
        const double approx = oracle_ref::float_norm_abs(f, as_longs(e));
        CHECK(approx == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("serial and parallel enumeration agree")
{
    EnumerationStats a, b;
    const auto par = enumerate_units(row1(), 2, &a);
    const auto ser = enumerate_units_serial(row1(), 2, &b);
    CHECK(par == ser);
    CHECK(a.candidates == b.candidates);
    CHECK(a.exact_checks == b.exact_checks);
    // canonical half of the box, without 0 and 1
    CHECK(a.candidates == (static_cast<std::uint64_t>(std::pow(5, 7)) - 1) / 2 - 1);
}

TEST_CASE("enumerated units are canonical units")
{
    const auto& units = row1_units();
    REQUIRE_FALSE(units.empty());
    for (const auto& u : units) {
        CHECK(abs(exact_norm(row1(), u)) == 1);
        const auto top = std::find_if(u.coords.rbegin(), u.coords.rend(), [](const mpz_class& x) { return x != 0; });
        REQUIRE(top != u.coords.rend());
        CHECK(*top > 0);
        CHECK_FALSE(u == AlgebraicElement::one(7));
    }
    const auto low = enumerate_units(row1(), 1);
    CHECK(std::find(low.begin(), low.end(), AlgebraicElement::theta(7)) != low.end());
}

TEST_CASE("log embeddings of units sum to zero")
{
    const auto emb = embeddings(row1());
    for (const auto& u : row1_units()) {
        const auto v = log_embedding(emb, u);
        REQUIRE(v.size() == 6);
        CHECK(std::abs(std::accumulate(v.begin(), v.end(), 0.0)) < 1e-9);
    }
}

TEST_CASE("regulator multiple of the first tabulated field")
{
    const auto sys = regulator_multiple(row1(), row1_units());
    CHECK(sys.rank == 5);
    CHECK(sys.generators.size() == 5);
    CHECK(sys.reg_multiple == doctest::Approx(2.88465).epsilon(2e-6));
    CHECK(sys.condition < 1e8);
    const auto emb = embeddings(row1());
    for (std::size_t i = 0; i < sys.generators.size(); ++i) {
        CHECK(abs(exact_norm(row1(), sys.generators[i])) == 1);
        const auto v = log_embedding(emb, sys.generators[i]);
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(std::abs(v[k] - sys.log_vectors[i][k]) < 1e-8);
    }
}

TEST_CASE("too few units report the rank they span")
{
    const auto& f = row1();
    const auto u = AlgebraicElement::theta(7);
    try {
        regulator_multiple(f, {u, unit_power(f, u, 2), unit_power(f, u, 3)});
        FAIL("expected InsufficientUnitsError");
    } catch (const InsufficientUnitsError& e) {
        CHECK(e.rank() == 1);
    }
    AlgebraicElement two = AlgebraicElement::one(7);
    two.coords[0] = 2;
    CHECK_THROWS_AS(regulator_multiple(f, {two}), DomainError);
    CHECK_THROWS_AS(regulator_multiple(IntPolynomial{1, 0, 2}, {AlgebraicElement::one(2)}), ContractError);
}

TEST_CASE("regulator multiple is invariant under reordering and recombination")
{
    const auto& f = row1();
    const double base = regulator_multiple(f, row1_units()).reg_multiple;

    std::mt19937_64 rng(4);
    for (int i = 0; i < 5; ++i) {
        auto shuffled = row1_units();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(std::abs(regulator_multiple(f, shuffled).reg_multiple - base) < 1e-9);
    }

    const auto gens = regulator_multiple(f, row1_units()).generators;
    auto mixed = gens;
    mixed[0] = multiply(f, gens[0], gens[1]);
    mixed[2] = multiply(f, gens[2], unit_power(f, gens[3], -2));
    mixed[4] = unit_inverse(f, gens[4]);
    CHECK(std::abs(regulator_multiple(f, mixed).reg_multiple - base) < 1e-9);
}

TEST_CASE("a sublattice has a larger regulator multiple")
{
    const auto& f = row1();
    const auto gens = regulator_multiple(f, row1_units()).generators;
    auto sub = gens;
    sub[1] = unit_power(f, gens[1], 3);
    const double base = regulator_multiple(f, gens).reg_multiple;
    CHECK(regulator_multiple(f, sub).reg_multiple == doctest::Approx(3.0 * base).epsilon(1e-9));

    auto more = gens;
    more.push_back(multiply(f, gens[0], gens[3]));
    CHECK(regulator_multiple(f, more).reg_multiple == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("certification against an analytic lower bound")
{
    const auto ok = certify_regulator(2.88465, 1.7);
    CHECK(ok.certified);
    CHECK(ok.multiplier_candidates == std::vector<int>{1});

    const auto loose = certify_regulator(2.88465, 0.9);
    CHECK_FALSE(loose.certified);
    CHECK(loose.multiplier_candidates == std::vector<int>{1, 2, 3});

    CHECK_FALSE(certify_regulator(4.0, 2.0).certified);
    CHECK_THROWS_AS(certify_regulator(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(certify_regulator(2.0, -1.0), DomainError);
}

TEST_CASE("table loading")
{
    const auto rows = load_table2(default_table2_path());
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].discriminant == -2306599);
    CHECK(rows[6].regulator_text == "3.36846");

    const auto dir = std::filesystem::temp_directory_path() / "regcert_units_test";
    std::filesystem::create_directories(dir);
    const auto bad = dir / "bad.txt";
    std::ofstream(bad) << "# comment\n-23 | x^3-x-1\n";
    CHECK_THROWS_AS(load_table2(bad.string()), ParseError);
    CHECK_THROWS(load_table2((dir / "missing.txt").string()));
}

TEST_CASE("per-field verification")
{
    const auto rows = load_table2(default_table2_path());
    Table2Config cfg;
    const auto rep = verify_field(rows[0], 1, cfg);
    CHECK(rep.status == "certified");
    CHECK(rep.discriminant_match);
    CHECK(rep.multiplier.value() == 1);
    CHECK(rep.regulator.value() == doctest::Approx(2.88465).epsilon(2e-6));
    CHECK(rep.analytic_lower_bound > rep.regulator.value() / 2.0);
    CHECK(rep.m_k_min > 0.0);
    CHECK(field_lower_bound(mpz_class(2306599), cfg) == doctest::Approx(rep.analytic_lower_bound));
}
