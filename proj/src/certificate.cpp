#include "regcert/certificate.hpp"

#include <cstdio>

namespace regcert {

std::string to_string(Status s)
{
    return s == Status::pass ? "pass" : "fail";
}

BoundCertificate BoundCertificate::make(std::string step_name, CheckKind kind, double bound, double attained,
                                        double slack)
{
    BoundCertificate c;
    c.step_name = std::move(step_name);
    c.bound = bound;
    c.attained_or_checked = attained;
    if (kind == CheckKind::upper_bound) {
        c.margin = bound - attained;
        c.status = attained <= bound + slack ? Status::pass : Status::fail;
    } else {
        c.margin = attained - bound;
        c.status = attained > bound ? Status::pass : Status::fail;
    }
    return c;
}

nlohmann::json to_json(const BoundCertificate& c)
{
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [k, v] : c.inputs)
        inputs[k] = v;
    return {
        {"step_name", c.step_name},
        {"inputs", inputs},
        {"bound", c.bound},
        {"attained_or_checked", c.attained_or_checked},
        {"margin", c.margin},
        {"status", to_string(c.status)},
        {"seed", c.seed},
        {"samples", c.samples},
    };
}

BoundCertificate certificate_from_json(const nlohmann::json& j)
{
    BoundCertificate c;
    c.step_name = j.at("step_name").get<std::string>();
    for (const auto& [k, v] : j.at("inputs").items())
        c.inputs[k] = v;
    c.bound = j.at("bound").get<double>();
    c.attained_or_checked = j.at("attained_or_checked").get<double>();
    c.margin = j.at("margin").get<double>();
    c.status = j.at("status").get<std::string>() == "pass" ? Status::pass : Status::fail;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.samples = j.at("samples").get<std::uint64_t>();
    return c;
}

std::uint64_t config_hash(const nlohmann::json& config)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : config.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace regcert
