#include "elastinet/config.hpp"

#include <type_traits>

#include "elastinet/error.hpp"
#include "json.hpp"

namespace elastinet {

using nlohmann::json;

namespace {

json to_json(const OptimizationConfig& c) {
    return json{{"n_per_curve", c.n_per_curve},
                {"max_iters", c.max_iters},
                {"grad_tol", c.grad_tol},
                {"energy_rel_tol", c.energy_rel_tol},
                {"stall_window", c.stall_window},
                {"resample_every", c.resample_every},
                {"resample_jump_tol", c.resample_jump_tol},
                {"backtrack_factor", c.backtrack_factor},
                {"armijo", c.armijo},
                {"initial_step", c.initial_step},
                {"max_backtracks", c.max_backtracks},
                {"method", to_string(c.method)},
                {"degeneration_ratio", c.degeneration_ratio},
                {"jitter", c.jitter},
                {"seed", c.seed}};
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw Error(ErrorKind::Parse, std::string("/") + key + ": expected a number");
        out = v.get<T>();
    } else {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            throw Error(ErrorKind::Parse, std::string("/") + key + ": expected a non-negative integer");
        }
        out = v.get<T>();
    }
}

}  // namespace

OptimizationConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
    OptimizationConfig c;
    const json known = to_json(c);
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw Error(ErrorKind::Parse, "/" + key + ": unknown config key");
    }
    read(j, "n_per_curve", c.n_per_curve);
    read(j, "max_iters", c.max_iters);
    read(j, "grad_tol", c.grad_tol);
    read(j, "energy_rel_tol", c.energy_rel_tol);
    read(j, "stall_window", c.stall_window);
    read(j, "resample_every", c.resample_every);
    read(j, "resample_jump_tol", c.resample_jump_tol);
    read(j, "backtrack_factor", c.backtrack_factor);
    read(j, "armijo", c.armijo);
    read(j, "initial_step", c.initial_step);
    read(j, "max_backtracks", c.max_backtracks);
    read(j, "degeneration_ratio", c.degeneration_ratio);
    read(j, "jitter", c.jitter);
    read(j, "seed", c.seed);
    if (j.contains("method")) {
        if (!j["method"].is_string()) throw Error(ErrorKind::Parse, "/method: expected a string");
        c.method = descent_method_from_string(j["method"].get<std::string>());
    }
    check_config(c);
    return c;
}

std::string config_to_json(const OptimizationConfig& config, int indent) {
    return to_json(config).dump(indent);
}

}  // namespace elastinet
