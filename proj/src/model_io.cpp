#include "fermirw/model_io.hpp"

#include <utility>
#include <vector>

namespace fermirw {

namespace {

double require_number(const nlohmann::json& spec, const char* key) {
    if (!spec.contains(key) || !spec[key].is_number()) {
        throw std::invalid_argument(std::string("model spec: missing numeric field \"") +
                                    key + "\"");
    }
    return spec[key].get<double>();
}

} // namespace

ScaleFactorModel model_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
        throw std::invalid_argument("model spec: expected an object with a \"kind\" string");
    }
    const std::string kind = spec["kind"].get<std::string>();
    if (kind == "power_law") {
        return ScaleFactorModel::power_law(require_number(spec, "alpha"));
    }
    if (kind == "lambda_fluid") {
        const double A = spec.contains("A") ? require_number(spec, "A") : 1.0;
        return ScaleFactorModel::lambda_fluid(require_number(spec, "lambda"),
                                              require_number(spec, "gamma"), A);
    }
    if (kind == "sinh") return ScaleFactorModel::sinh_model();
    if (kind == "log") return ScaleFactorModel::log_model();
    if (kind == "tabulated") {
        if (!spec.contains("samples") || !spec["samples"].is_array()) {
            throw std::invalid_argument("model spec: tabulated kind needs a \"samples\" array");
        }
        std::vector<std::pair<double, double>> samples;
        samples.reserve(spec["samples"].size());
        for (const auto& row : spec["samples"]) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() ||
                !row[1].is_number()) {
                throw std::invalid_argument("model spec: each sample must be [t, a]");
            }
            samples.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        return ScaleFactorModel::tabulated(std::move(samples));
    }
    throw std::invalid_argument("model spec: unknown kind \"" + kind + "\"");
}

ScaleFactorModel model_from_json_string(const std::string& text) {
    nlohmann::json spec;
    try {
        spec = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("model spec: invalid JSON: ") + e.what());
    }
    return model_from_json(spec);
}

nlohmann::ordered_json model_to_json(const ScaleFactorModel& model) {
    nlohmann::ordered_json spec;
    switch (model.kind()) {
    case ModelKind::PowerLaw:
        spec["kind"] = "power_law";
        spec["alpha"] = model.alpha();
        break;
    case ModelKind::LambdaFluid:
        spec["kind"] = "lambda_fluid";
        spec["lambda"] = model.lambda();
        spec["gamma"] = model.gamma();
        spec["A"] = model.amplitude();
        break;
    case ModelKind::Sinh:
        spec["kind"] = "sinh";
        break;
    case ModelKind::Log:
        spec["kind"] = "log";
        break;
    case ModelKind::Tabulated: {
        spec["kind"] = "tabulated";
        auto samples = nlohmann::ordered_json::array();
        for (size_t i = 0; i < model.knots_t().size(); ++i) {
            samples.push_back({model.knots_t()[i], model.knots_a()[i]});
        }
        spec["samples"] = std::move(samples);
        break;
    }
    }
    return spec;
}

} // namespace fermirw
