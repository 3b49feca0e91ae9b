#ifndef REGCERT_GEOMETRY_HPP
#define REGCERT_GEOMETRY_HPP

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace regcert::geometry {

using cplx = std::complex<double>;

// Remak's conjugate-ratio product prod_{i<j} |1 - z_i/z_j|^2.
// Input must be sorted by nondecreasing modulus and contain no zeros.
double p_n(std::span<const cplx> zs);
double p_n(std::span<const double> reals);

// n^n in general, 4^floor(n/2) for real tuples with n <= 11.
double classical_upper(int n, bool all_real);

// Conjugates of a number with n-2 real embeddings and one complex pair x e^{+-i theta}.
// reals are ordered by |.|; t counts the reals with |r| <= x; c_m = r_m/x for m <= t,
// x/r_m afterwards (1-based m).
struct ConjugateSet {
    std::vector<double> reals;
    double modulus = 0.0;
    double angle = 0.0;
    int t = 0;
    std::vector<double> c;

    // All n conjugates sorted by modulus, the complex pair placed after reals of equal modulus.
    std::vector<cplx> sorted_conjugates() const;
};

struct MixedFactorization {
    ConjugateSet conjugates;
    double p_sub = 0.0;   // P_{n-2}(r_1..r_{n-2})
    double b_sub = 0.0;   // B_{n-2}(theta, c)
};

// Sorts the reals (stable by |.|), computes t and c, and splits P_n = P_{n-2} * B_{n-2}.
MixedFactorization factor_mixed(std::span<const double> reals, double x, double theta);

// Upper bound for |1 - c e^{i theta}|^2 over c in [0,1] (c_nonnegative) or [-1,0].
double ray_estimate(bool c_nonnegative, double theta);

// max over [-1,1] of (1-x^2)^a (1-x)^b.
double cos_ineq_max(double a, double b);
mpq_class cos_ineq_max_exact(unsigned a, unsigned b);
double cos_ineq_argmax(double a, double b);

// |1 - e^{-2 i theta}|^2 * prod |1 - c_m e^{i theta}|^4.
double b_r_value(double theta, std::span<const double> c);

struct BrExponents {
    unsigned a = 0;
    unsigned b = 0;
    unsigned f = 0;
};

BrExponents br_exponents(unsigned d_plus, unsigned d_minus);

// Bound on b_r_value given the number of positive and negative c_m.
double b_r_bound(unsigned d_plus, unsigned d_minus);
mpq_class b_r_bound_exact(unsigned d_plus, unsigned d_minus);

enum class Sign { plus, minus };

struct SignPattern {
    std::array<Sign, 5> signs{};

    int d_plus() const;
    int d_minus() const;
    std::string str() const;
    bool operator==(const SignPattern&) const = default;

    // Accepts "+,+,-,+,-" or "++-+-".
    static SignPattern parse(std::string_view text);
    // Signs of the consecutive ratios r_i / r_{i+1}.
    std::array<Sign, 4> ratio_signs() const;
};

// The five sign patterns with a 4-1 split and c_1 > 0.
const std::array<SignPattern, 5>& table1_patterns();
// All 16 patterns with c_1 > 0.
std::vector<SignPattern> all_patterns_c1_positive();

struct CaseCertificate {
    int case_id = 0;
    unsigned a = 0, b = 0, f = 0;
    double p_small_bound = 0.0;
    double b5_bound = 0.0;
    double p7_bound = 0.0;
    int table1_row = 0;             // 1-based row of the pattern, case 2 only
    int canonical_row = 0;          // row whose grouping is applied (1, 3 or 5)
    bool reversed = false;          // A(x1..x4) = A(x4..x1) used
    std::string grouping;
};

CaseCertificate p7_mixed_bound(const SignPattern& pattern);

// Pohst's elementary inequalities as plain expressions.
double pohst_i_value(double alpha, double beta);
double pohst_ii_value(double alpha, double beta);
double pohst_iii_value(double alpha, double beta);

// R_{l,l'} = (1 + c_l)(1 + c_l')(1 - r_l / r_l'), 1-based l < l'.
double case3_r_value(const ConjugateSet& cs, int l, int lp);

// y_{l,l'} = 1 - x_l x_{l+1} ... x_{l'} = 1 - r_l / r_{l'+1}, 1-based with 1 <= l <= l' <= 4.
double pohst_y(std::span<const double> reals, int l, int lp);

// Evaluates the named groups of the case-2 factorisation for one canonical row.
// Returns the product of each group; bounds are {1,...,1,2} in the order listed by grouping_bounds.
std::vector<double> case2_group_products(int canonical_row, std::span<const double> reals);
std::vector<double> case2_group_bounds(int canonical_row);

double remak_A(int n, int r2);
double mk_hermite_bound(double reg_upper);
double remak_disc_log_bound(double m, int n, int r2, double log_pn);

// Round an exact rational to the nearest binary64.
double to_double_nearest(const mpq_class& q);

} // namespace regcert::geometry

#endif
