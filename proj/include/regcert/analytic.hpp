#ifndef REGCERT_ANALYTIC_HPP
#define REGCERT_ANALYTIC_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regcert/certificate.hpp"
#include "regcert/gamma.hpp"

namespace regcert::analytic {

struct SignatureParams {
    int r1 = 5;
    int r2 = 1;

    int n() const { return r1 + 2 * r2; }
    void validate() const;
};

// Vertical-line quadrature for g(x). Zero for tail_height / panel_count means "choose
// automatically": the tail is cut where a Stirling-decay estimate drops below 10% of
// the budget, and panels are doubled until two successive sums agree.
struct GQuadratureConfig {
    double contour_sigma = 2.0;
    double tail_height = 0.0;
    int panel_count = 0;
    int gauss_points = 20;
    double target_abs_error = 1e-8;
    int max_panel_doublings = 12;

    nlohmann::json to_json() const;
};

struct GEvaluation {
    double value = 0.0;
    double imag_residual = 0.0;   // imaginary part of the raw two-sided integral, normalised
    double tail_estimate = 0.0;
    double panel_error = 0.0;     // |I(2n panels) - I(n panels)|
    double rounding_error = 0.0;  // eps * integral of |integrand|
    double tail_height = 0.0;
    int panels = 0;

    double error_estimate() const { return tail_estimate + panel_error + rounding_error; }
};

GEvaluation g_evaluate(double x, const SignatureParams& sig, const GQuadratureConfig& cfg);
double g_value(double x, const SignatureParams& sig, const GQuadratureConfig& cfg);

// The integrand (pi^n 4^{r2} x)^{-s/2} (2s - 1) Gamma(s/2)^{r1} Gamma(s)^{r2} at s = sigma + i t.
cplx g_integrand(double log_scale, double sigma, double t, const SignatureParams& sig);

// sum_{j=1}^N min(g(j^{2n}/d1), g(j^{2n}/d2)), summed in ascending j.
double big_g(double d1, double d2, int N, const SignatureParams& sig, const GQuadratureConfig& cfg);
std::vector<double> big_g_terms(double d1, double d2, int N, const SignatureParams& sig,
                                const GQuadratureConfig& cfg);

// 2G (or 4G when the different's class is trivial), valid for |D_k| in [d1, d2]
// provided g(4/d3) >= 0 and d2 <= d3.
double reg_lower_bound(double d1, double d2, int N, const SignatureParams& sig, bool different_trivial, double d3,
                       const GQuadratureConfig& cfg);

struct ScheduleStep {
    std::string d1_expr;
    std::string d2_expr;
    int N = 1;
    int multiplier = 2;
    std::optional<std::string> printed;   // decimal shown alongside the step, if any

    double d1() const;
    double d2() const;
};

struct Schedule {
    int r1 = 5;
    int r2 = 1;
    std::string d3_expr = "e^31.492";
    double threshold = 3.2;
    std::string cutoff_expr = "3030000";            // lower end of the eliminated range
    std::string different_trivial_max_expr = "e^20"; // 4G allowed only below this
    std::optional<std::string> printed_hypothesis;  // printed g(4/d3)
    std::vector<ScheduleStep> steps;

    static Schedule standard();
    static Schedule from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct IntervalStep {
    std::string d1_expr, d2_expr;
    double d1 = 0.0, d2 = 0.0;
    int N = 0;
    int multiplier = 2;
    double computed_bound = 0.0;
    double threshold = 0.0;
    Status status = Status::fail;
    std::optional<std::string> printed;
    std::string printed_agreement;   // "digits", "within-tolerance", "deviation" or ""
    std::vector<double> terms;
    std::string note;

    nlohmann::json to_json() const;
};

struct TheoremReport {
    std::vector<BoundCertificate> geometry_chain;
    BoundCertificate hypothesis;
    BoundCertificate coverage;
    std::vector<IntervalStep> steps;
    Status verdict = Status::fail;
    std::string conclusion;
    std::string failed_step;
    nlohmann::json config;

    nlohmann::json to_json() const;
};

// Printed values are truncated decimals; compares at the printed precision and
// against the +-0.005 agreement window.
std::string printed_agreement(double value, const std::string& printed);

TheoremReport verify_signature_theorem(const GQuadratureConfig& cfg, const Schedule& schedule = Schedule::standard());

} // namespace regcert::analytic

#endif
