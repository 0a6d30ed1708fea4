#pragma once

// Check results and their JSON form, shared by the numeric and the exact
// (lattice) suites.

#include <chrono>
#include <complex>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>

namespace ringfe {

using json = nlohmann::ordered_json;

struct CheckResult {
    std::string name;
    json params;
    bool pass = false;
    double max_abs_error = 0.0;
    double elapsed_ms = 0.0;
    std::optional<json> witness;
};

inline json check_to_json(const CheckResult& c, bool include_timings) {
    json j;
    j["name"] = c.name;
    j["params"] = c.params;
    j["status"] = c.pass ? "pass" : "fail";
    j["max_abs_error"] = c.max_abs_error;
    j["elapsed_ms"] = include_timings ? c.elapsed_ms : 0.0;
    if (c.witness) j["witness"] = *c.witness;
    return j;
}

namespace verify_detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline json cplx_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace verify_detail
}  // namespace ringfe
