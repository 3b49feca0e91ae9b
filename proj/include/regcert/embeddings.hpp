#ifndef REGCERT_EMBEDDINGS_HPP
#define REGCERT_EMBEDDINGS_HPP

#include <complex>
#include <span>
#include <vector>

#include "regcert/polynomial.hpp"

namespace regcert {

struct RealRoot {
    double value = 0.0;
    double radius = 0.0;   // a root of f lies within this distance of value
    long double precise = 0.0L;
};

struct ComplexPair {
    double modulus = 0.0;
    double angle = 0.0;    // in (0, pi); the conjugate has angle -angle
    double radius = 0.0;
    std::complex<long double> precise;

    std::complex<double> value() const { return std::polar(modulus, angle); }
};

struct EmbeddingSet {
    std::vector<RealRoot> real_roots;        // ordered by |.| ascending
    std::vector<ComplexPair> complex_pairs;  // one entry per conjugate pair
    int precision_bits = 0;                  // working precision that passed the residual check
    double max_residual = 0.0;               // max |f(root)| / scale at working precision

    Signature signature() const
    {
        return {static_cast<int>(real_roots.size()), static_cast<int>(complex_pairs.size())};
    }
    // Real roots first, then each pair as (z, conj z).
    std::vector<std::complex<double>> all_roots() const;
};

// Simultaneous (Aberth-Ehrlich) iteration in binary64. Throws PrecisionError if the
// iteration cap is reached.
std::vector<std::complex<double>> aberth_roots(const IntPolynomial& f, int max_iterations = 500);

// Roots refined by Newton's method at precision_bits, each enclosed in a disk of radius
// n |f(z)| / |f'(z)|. Disjoint disks certify one root each; precision doubles until
// |f(z)| <= 2^{-bits/2} sum |a_k| |z|^k holds for every root.
EmbeddingSet embeddings(const IntPolynomial& f, int precision_bits = 128);

// sum over places of (log ||e||_w)^2, with ||.||_w = |.|^2 at complex places.
double m_k_of(std::span<const double> real_conjugates, std::span<const std::complex<double>> complex_conjugates);
double m_k_of(const EmbeddingSet& e);

} // namespace regcert

#endif
