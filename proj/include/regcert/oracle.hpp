#ifndef REGCERT_ORACLE_HPP
#define REGCERT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regcert/certificate.hpp"
#include "regcert/geometry.hpp"

namespace regcert::oracle {

// Quantities whose supremum is probed numerically. The first seven mirror the
// geometric inequalities directly; the rest back the property suites.
enum class Target {
    p7,              // P_7 for a fixed sign pattern (c_1 > 0), bound from the case certificate
    b_r,             // B_5 for a sign pattern, bound b_r_bound(d+, d-)
    cos_ineq,        // (1-x^2)^a (1-x)^b, bound cos_ineq_max(a, b)
    pohst_i,
    pohst_ii,
    pohst_iii,
    p5_case2,        // P_5 for a case 2 pattern, bound 4
    ray,             // |1 - c e^{i theta}|^2 - ray_estimate, bound 0
    case3_r,         // max_{l<l'} R_{l,l'} with all c_m > 0, bound 2
    case2_groups,    // max over groups of (group product - group bound), bound 0
    p7_global,       // P_7 over all 16 patterns with r_1 > 0, bound e^12
    pn_complex,      // P_n over complex tuples, bound n^n
    pn_real,         // P_n over real tuples, bound 4^floor(n/2)
    factor_identity  // relative error of P_n = P_{n-2} B_{n-2}, bound 1e-10
};

Target parse_target(std::string_view name);
std::string target_name(Target t);

struct Request {
    Target target = Target::p7;
    std::optional<geometry::SignPattern> pattern;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 42;
    double a = 5.0;             // cos_ineq exponents
    double b = 2.0;
    int n = 7;                  // pn_complex / pn_real / factor_identity degree
    bool c_nonnegative = true;  // ray
    int refine_candidates = 8;  // best samples handed to the local search
    int refine_sweeps = 3;
};

// A box-parameterised objective: maps u in [0,1]^dim into the target's domain.
struct Objective {
    int dim = 0;
    double bound = 0.0;
    std::function<double(std::span<const double>)> value;
    nlohmann::json description;
};

Objective make_objective(const Request& req);

// Low-discrepancy point i of a Halton sequence in dim dimensions, rotated by a
// seed-dependent Cranley-Patterson shift.
void halton_point(std::uint64_t index, std::span<const double> shift, std::span<double> out);

struct SampleResult {
    double best = 0.0;
    std::vector<double> argmax;
    std::uint64_t evaluations = 0;
};

// Quasi-random sampling plus coordinate-wise golden-section refinement.
// The parallel kernel processes fixed-size batches with OpenMP and merges them
// in batch order, so both versions return bit-identical results.
SampleResult maximize_serial(const Objective& obj, const Request& req);
SampleResult maximize_parallel(const Objective& obj, const Request& req);

BoundCertificate numeric_max_oracle(const Request& req);
BoundCertificate numeric_max_oracle_serial(const Request& req);

inline constexpr std::uint64_t kBatchSize = 4096;

} // namespace regcert::oracle

#endif
