#include "regcert/gamma.hpp"

#include <cmath>
#include <numbers>

#include "regcert/errors.hpp"

namespace regcert::analytic {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kHalfLog2Pi = 0.91893853320467274178032973640561764L;
constexpr long double kStirlingRadius = 20.0L;

// B_{2k} / (2k (2k - 1)), k = 1..10
constexpr long double kStirling[] = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
};

bool is_pole(cplxl s)
{
    return s.imag() == 0.0L && s.real() <= 0.0L && std::floor(s.real()) == s.real();
}

// log sin(pi s) without overflow far from the real axis.
cplxl log_sin_pi(cplxl s)
{
    if (s.imag() < 0.0L)
        return std::conj(log_sin_pi(std::conj(s)));
    const cplxl i(0.0L, 1.0L);
    // sin(pi s) = e^{-i pi s} (e^{2 i pi s} - 1) / (2i)
    return -i * kPiL * s + std::log((std::exp(2.0L * i * kPiL * s) - 1.0L) / (2.0L * i));
}

} // namespace

cplxl log_gamma_l(cplxl s)
{
    if (is_pole(s))
        throw PoleError("Gamma has a pole at a nonpositive integer");
    if (s.real() < 0.5L) {
        // Gamma(s) Gamma(1 - s) = pi / sin(pi s)
        return std::log(kPiL) - log_sin_pi(s) - log_gamma_l(1.0L - s);
    }
    // Recurrence Gamma(s) = Gamma(s + k) / (s (s+1) ... (s+k-1)) until |s + k| >= 20.
    cplxl w = s;
    cplxl shift_prod = 1.0L;
    while (std::abs(w) < kStirlingRadius) {
        shift_prod *= w;
        w += 1.0L;
    }
    const cplxl inv = 1.0L / w;
    const cplxl inv2 = inv * inv;
    cplxl series = 0.0L;
    cplxl p = inv;
    for (long double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return (w - 0.5L) * std::log(w) - w + kHalfLog2Pi + series - std::log(shift_prod);
}

cplx complex_log_gamma(cplx s)
{
    const cplxl v = log_gamma_l(cplxl(s.real(), s.imag()));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

cplx complex_gamma(cplx s)
{
    const cplxl v = std::exp(log_gamma_l(cplxl(s.real(), s.imag())));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

} // namespace regcert::analytic
