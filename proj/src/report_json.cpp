#include "signbal/report_json.hpp"

#include <algorithm>
#include <vector>

#include "signbal/error.hpp"

namespace signbal {

nlohmann::ordered_json to_json(const TriangleCensus& census) {
    nlohmann::ordered_json j;
    j["n"] = census.n;
    j["total"] = census.total;
    for (std::size_t t = 0; t < kTriangleTypes; ++t) j["c" + std::to_string(t + 1)] = census.by_type[t];
    j["balanced"] = census.balanced();
    return j;
}

nlohmann::ordered_json to_json(const InferenceReport& r) {
    nlohmann::ordered_json j;
    j["target"] = to_string(r.target);
    j["n"] = r.n;
    j["U_hat"] = r.U_hat;
    j["V_hat"] = r.V_hat;
    j["estimate"] = r.estimate;
    j["S_hat"] = r.S_hat;
    j["a_hat"] = r.a_hat;
    j["b_hat"] = r.b_hat;
    j["c_hat"] = r.c_hat;
    j["c_delta"] = r.c_delta;
    j["delta_draw"] = r.delta_draw;
    j["level"] = r.level;
    j["ci_lower"] = r.ci_lower;
    j["ci_upper"] = r.ci_upper;
    j["method"] = to_string(r.method);
    j["p_values"] = r.p_values;
    j["baselines"] = r.baselines;
    return j;
}

nlohmann::ordered_json to_json(const TestResult& r) {
    nlohmann::ordered_json j;
    j["target"] = to_string(r.target);
    j["n"] = r.n;
    j["method"] = to_string(r.method);
    j["alternative"] = to_string(r.alternative);
    j["null"] = r.null_name;
    j["null_value"] = r.null_value;
    j["estimate"] = r.estimate;
    j["S_hat"] = r.S_hat;
    j["statistic"] = r.statistic;
    j["c_delta"] = r.c_delta;
    j["delta_draw"] = r.delta_draw;
    j["p_value"] = r.p_value;
    return j;
}

SpecFile spec_file_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("spec file must hold a JSON object");
    static const std::vector<std::string> known{"name", "params", "rho", "s", "n"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InvalidArgument("unknown spec field '" + key + "'");
    SpecFile f;
    try {
        f.name = j.at("name").get<std::string>();
        if (j.contains("params")) f.params = j.at("params").get<ParamMap>();
        if (j.contains("rho")) f.rho = j.at("rho").get<double>();
        if (j.contains("s")) f.s = j.at("s").get<double>();
        if (j.contains("n")) f.n = j.at("n").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad spec file: ") + e.what());
    }
    return f;
}

GraphonSpec graphon_from_spec_file(const SpecFile& file, std::optional<std::size_t> n) {
    ParamMap params = file.params;
    if (n && !params.contains("n")) params["n"] = static_cast<double>(*n);
    GraphonSpec spec = builtin_spec(file.name, params);
    if (file.rho) spec.rho = *file.rho;
    if (file.s) spec.s = *file.s;
    validate(spec);
    return spec;
}

}  // namespace signbal
