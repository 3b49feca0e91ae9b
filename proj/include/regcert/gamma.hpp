#ifndef REGCERT_GAMMA_HPP
#define REGCERT_GAMMA_HPP

#include <complex>

namespace regcert::analytic {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

// log Gamma(s); the imaginary part is only meaningful modulo 2 pi. Upward recurrence
// to |s| >= 20 followed by a 10-term Stirling series, all in extended precision;
// reflection for Re s < 1/2.
cplxl log_gamma_l(cplxl s);
cplx complex_log_gamma(cplx s);

// Gamma(s); underflows to 0 far up the imaginary axis. Throws PoleError at 0, -1, -2, ...
cplx complex_gamma(cplx s);

} // namespace regcert::analytic

#endif
