#ifndef REGCERT_UNITS_HPP
#define REGCERT_UNITS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "regcert/analytic.hpp"
#include "regcert/embeddings.hpp"
#include "regcert/polynomial.hpp"

namespace regcert {

// Element of Z[theta] in the power basis 1, theta, ..., theta^{n-1}.
struct AlgebraicElement {
    std::vector<mpz_class> coords;

    static AlgebraicElement one(int n);
    static AlgebraicElement theta(int n);

    bool is_zero() const;
    IntPolynomial as_poly() const { return IntPolynomial(coords); }
    std::string str() const;   // coordinate polynomial in "t"
    AlgebraicElement operator-() const;
    bool operator==(const AlgebraicElement&) const = default;
};

// Res(f, g) / lc(f)^{deg g} for the coordinate polynomial g of e.
mpz_class exact_norm(const IntPolynomial& f, const AlgebraicElement& e);

// Arithmetic in Z[x]/(f) for monic f.
AlgebraicElement multiply(const IntPolynomial& f, const AlgebraicElement& a, const AlgebraicElement& b);
// Throws DomainError unless e has norm +-1.
AlgebraicElement unit_inverse(const IntPolynomial& f, const AlgebraicElement& e);
AlgebraicElement unit_power(const IntPolynomial& f, const AlgebraicElement& e, long long k);

// Conjugates of e at the roots of f, real places first.
std::vector<std::complex<long double>> conjugates(const EmbeddingSet& emb, const AlgebraicElement& e);

// (log|s_1(e)|, ..., log|s_{r1}(e)|, 2 log|s_{r1+1}(e)|, ...): one entry per place.
std::vector<double> log_embedding(const EmbeddingSet& emb, const AlgebraicElement& e);

struct EnumerationStats {
    std::uint64_t candidates = 0;      // elements visited
    std::uint64_t exact_checks = 0;    // resultant evaluations after the float filter
};

// All e with coordinates in [-height, height], exact norm +-1, e != +-1, one of each
// pair {e, -e} (highest nonzero coordinate positive). The list is ordered by the
// balanced base-(2h+1) index of the coordinates, identically for both variants.
std::vector<AlgebraicElement> enumerate_units(const IntPolynomial& f, int height, EnumerationStats* stats = nullptr);
std::vector<AlgebraicElement> enumerate_units_serial(const IntPolynomial& f, int height,
                                                     EnumerationStats* stats = nullptr);

struct UnitSystem {
    std::vector<AlgebraicElement> generators;
    std::vector<std::vector<double>> log_vectors;   // rank coordinates (complex place dropped)
    std::vector<std::vector<double>> full_log_vectors;
    int rank = 0;
    double reg_multiple = 0.0;
    int units_supplied = 0;
    int recombinations = 0;
    double condition = 0.0;                         // max |b_i| / min |b_i*| of the final basis
};

// Basis of the lattice generated by the log vectors of the given units: a greedy
// independent subset, enlarged by each remaining unit whose coordinates are not
// integral, then LLL reduced. R' = |det| of the basis with the complex place dropped.
// Throws InsufficientUnitsError when the units span less than the full unit rank.
UnitSystem regulator_multiple(const IntPolynomial& f, const std::vector<AlgebraicElement>& units);
UnitSystem regulator_multiple(const IntPolynomial& f, const EmbeddingSet& emb,
                              const std::vector<AlgebraicElement>& units);

struct RegulatorCertification {
    bool certified = false;
    double regulator_multiple = 0.0;
    double lower_bound = 0.0;
    std::vector<int> multiplier_candidates;   // {1} when certified, else 1..floor(R'/lb)
};

RegulatorCertification certify_regulator(double r_prime, double analytic_lb);

struct Table2Entry {
    mpz_class discriminant;
    std::string polynomial;
    std::string regulator_text;   // as printed
    double regulator = 0.0;
};

std::string default_table2_path();
std::vector<Table2Entry> load_table2(const std::string& path);

struct Table2Config {
    int start_height = 3;
    int height_cap = 8;
    int lb_terms = 3;                    // N in G(|D|, |D|, N)
    std::string d3_expr = "e^31.492";
    std::string different_trivial_max_expr = "e^20";
    double threshold = 3.2;              // rows 1..expected_below lie below, the rest above
    int expected_below = 3;
    analytic::GQuadratureConfig quadrature;
    bool timing = false;                 // include wall_time in the report

    nlohmann::json to_json() const;
};

struct Table2RowReport {
    int row = 0;
    std::string polynomial;
    std::string discriminant_expected;
    std::string discriminant_computed;
    bool discriminant_match = false;
    Signature signature;
    std::string regulator_expected;
    std::optional<double> regulator_multiple;
    std::optional<double> regulator;          // R'/m for the matching candidate m
    std::optional<int> multiplier;
    bool certified = false;
    std::vector<int> multiplier_candidates;
    double analytic_lower_bound = 0.0;
    int height_used = 0;
    int units_found = 0;
    double m_k_min = 0.0;                     // smallest m_k over the basis
    std::string status;                       // certified | reproduced, not certified | incomplete | mismatch
    std::string detail;
    double wall_time = 0.0;

    bool reproduced() const { return regulator.has_value(); }
    nlohmann::json to_json(bool timing) const;
};

struct Table2Report {
    std::vector<Table2RowReport> rows;
    bool discriminants_ok = false;
    bool signatures_ok = false;
    bool regulators_ok = false;
    bool order_ok = false;
    bool minimum_ok = false;
    bool below_threshold_ok = false;
    bool incomplete = false;
    Table2Config config;

    bool passed() const
    {
        return discriminants_ok && signatures_ok && regulators_ok && order_ok && minimum_ok && below_threshold_ok;
    }
    nlohmann::json to_json() const;
};

// Per-row analytic bound: 4G(|D|,|D|,N) when |D| <= e^20 (different class trivial), else 2G.
double field_lower_bound(const mpz_class& abs_disc, const Table2Config& cfg);

// Heights escalate start, 2*start, ... capped at height_cap until rank 5 is reached.
Table2RowReport verify_field(const Table2Entry& entry, int row, const Table2Config& cfg);
Table2Report verify_table2(const std::vector<Table2Entry>& table, const Table2Config& cfg);

} // namespace regcert

#endif
