#ifndef REGCERT_CERTIFICATE_HPP
#define REGCERT_CERTIFICATE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace regcert {

inline constexpr std::string_view kVersion = "1.0.0";

// Absolute slack applied when comparing sampled values against analytic bounds.
inline constexpr double kBoundSlack = 1e-9;

enum class Status { pass, fail };

std::string to_string(Status s);

enum class CheckKind {
    upper_bound,   // pass iff attained <= bound
    threshold      // pass iff attained > bound
};

// One verified inequality or elimination step.
struct BoundCertificate {
    std::string step_name;
    std::map<std::string, nlohmann::json> inputs;
    double bound = 0.0;
    double attained_or_checked = 0.0;
    double margin = 0.0;
    Status status = Status::fail;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;

    static BoundCertificate make(std::string step_name, CheckKind kind, double bound, double attained,
                                 double slack = kBoundSlack);

    bool passed() const noexcept { return status == Status::pass; }
};

nlohmann::json to_json(const BoundCertificate& c);
BoundCertificate certificate_from_json(const nlohmann::json& j);

// FNV-1a over the canonical dump; stable across platforms.
std::uint64_t config_hash(const nlohmann::json& config);
std::string hex64(std::uint64_t v);

} // namespace regcert

#endif
