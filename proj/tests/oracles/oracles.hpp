#ifndef REGCERT_TESTS_ORACLES_HPP
#define REGCERT_TESTS_ORACLES_HPP

// Independent reference implementations used only by the tests.

#include <complex>
#include <vector>

#include <gmpxx.h>

#include "regcert/polynomial.hpp"

namespace oracle_ref {

// log Gamma via the Lanczos series (Godfrey, g = 607/128, 15 terms) with reflection.
std::complex<double> lanczos_log_gamma(std::complex<double> z);

// Determinant of the Sylvester matrix by fraction-free (Bareiss) elimination.
mpz_class sylvester_resultant(const regcert::IntPolynomial& a, const regcert::IntPolynomial& b);
mpz_class sylvester_discriminant(const regcert::IntPolynomial& f);

// Real roots located by exact sign changes of f on a dyadic grid over the Cauchy
// interval, refined until two successive grids agree. Returns -1 if refinement stalls.
int grid_real_root_count(const regcert::IntPolynomial& f, int max_level = 22);

// max over a uniform grid of [-1, 1] of (1 - x^2)^a (1 - x)^b.
double cos_ineq_grid_max(double a, double b, int points);

// prod_i |g(root_i)| with roots from numpy-style companion iteration (Durand-Kerner).
double float_norm_abs(const regcert::IntPolynomial& f, const std::vector<long>& coords);

} // namespace oracle_ref

#endif
