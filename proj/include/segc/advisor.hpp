#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "segc/errors.hpp"
#include "segc/regress.hpp"

namespace segc {

enum class Depth { Shallow, Deep };

inline const char* to_string(Depth d) { return d == Depth::Shallow ? "shallow" : "deep"; }

/// Predicted overlap error for a dataset of the given complexity, clamped to
/// the metric range [0,1].
inline double predict_error(const PolyFit& fit, double complexity) {
    return std::clamp(fit.eval(complexity), 0.0, 1.0);
}

/// Largest downsampling factor whose predicted error stays within the budget;
/// 1 (no downsampling) when none qualifies.
inline int recommend_factor(const std::map<int, PolyFit>& fits, double complexity,
                            double error_budget) {
    if (fits.empty()) throw ValueError("recommend_factor: empty fits map");
    if (!(error_budget > 0.0)) throw ValueError("recommend_factor: budget must be > 0");
    int best = 1;
    for (const auto& [factor, fit] : fits)
        if (predict_error(fit, complexity) <= error_budget) best = std::max(best, factor);
    return best;
}

constexpr double kDefaultDepthTau = 0.05;
constexpr double kDefaultErrorBudget = 0.05;

/// Shallow topology above the median-frequency threshold, deep at or below it.
inline Depth recommend_depth(std::optional<double> mdf, double tau = kDefaultDepthTau) {
    if (!mdf) throw NumericError("recommend_depth: median frequency undefined");
    return *mdf > tau ? Depth::Shallow : Depth::Deep;
}

struct Recommendation {
    int max_factor = 1;
    Depth depth = Depth::Deep;
    std::map<int, double> predicted_e;  // clamped to be non-decreasing in factor
    std::string measure = "MDF";
    double complexity = 0.0;
    double tau = kDefaultDepthTau;
    double error_budget = kDefaultErrorBudget;
    std::vector<std::string> notes;
};

/// `complexity` is the value of the measure the fits were trained on; `mdf`
/// drives the depth choice and equals `complexity` when that measure is MDF.
inline Recommendation recommend(const std::map<int, PolyFit>& fits, double complexity,
                                std::optional<double> mdf, const std::string& measure = "MDF",
                                double error_budget = kDefaultErrorBudget,
                                double tau = kDefaultDepthTau) {
    Recommendation rec;
    rec.measure = measure;
    rec.complexity = complexity;
    rec.tau = tau;
    rec.error_budget = error_budget;
    rec.max_factor = recommend_factor(fits, complexity, error_budget);
    rec.depth = recommend_depth(mdf, tau);

    double running = 0.0;
    for (const auto& [factor, fit] : fits) {
        double raw = predict_error(fit, complexity);
        if (raw < running) {
            rec.notes.push_back("predicted error at factor " + std::to_string(factor) +
                                " clamped up from " + format_double(raw) +
                                " to keep the curve non-decreasing");
            raw = running;
        }
        running = raw;
        rec.predicted_e[factor] = raw;
    }
    rec.notes.push_back("depth threshold tau and error budget are policy knobs, not calibrated "
                        "constants; adjust per deployment");
    return rec;
}

inline nlohmann::json to_json(const Recommendation& rec) {
    nlohmann::json pred = nlohmann::json::object();
    for (const auto& [factor, e] : rec.predicted_e) pred[std::to_string(factor)] = e;
    return nlohmann::json{
        {"max_factor", rec.max_factor},
        {"depth", to_string(rec.depth)},
        {"predicted_e", pred},
        {"rationale",
         {{"measure", rec.measure},
          {"complexity", rec.complexity},
          {"depth_threshold_tau", rec.tau},
          {"error_budget", rec.error_budget},
          {"notes", rec.notes}}}};
}

}  // namespace segc
