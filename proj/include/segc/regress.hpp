#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "segc/errors.hpp"
#include "segc/format.hpp"

namespace segc {

/// Least-squares polynomial in a centered and scaled basis: the fitted
/// variable is z = (x - x_center) / x_scale, which keeps the Vandermonde
/// system well conditioned up to degree 6 on small samples.
struct PolyFit {
    int degree = 0;
    std::vector<double> coefficients;  // degree+1 entries, low order first
    double x_center = 0.0;
    double x_scale = 1.0;

    double eval(double x) const {
        const double z = (x - x_center) / x_scale;
        double acc = 0.0;
        for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * z + coefficients[i];
        return acc;
    }
};

namespace detail {

// Householder QR with column pivoting on a dense row-major matrix; solves the
// least-squares system in place. Rank-deficient directions get zero weight.
inline std::vector<double> qr_least_squares(std::vector<double> a, int rows, int cols,
                                            std::vector<double> rhs) {
    std::vector<int> perm(cols);
    for (int j = 0; j < cols; ++j) perm[j] = j;
    auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * cols + c]; };

    std::vector<double> col_norm2(cols, 0.0);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) col_norm2[j] += at(i, j) * at(i, j);

    const int p = std::min(rows, cols);
    std::vector<double> diag(p, 0.0);
    for (int k = 0; k < p; ++k) {
        int pivot = k;
        for (int j = k + 1; j < cols; ++j)
            if (col_norm2[j] > col_norm2[pivot]) pivot = j;
        if (pivot != k) {
            for (int i = 0; i < rows; ++i) std::swap(at(i, k), at(i, pivot));
            std::swap(col_norm2[k], col_norm2[pivot]);
            std::swap(perm[k], perm[pivot]);
        }

        double norm = 0.0;
        for (int i = k; i < rows; ++i) norm = std::hypot(norm, at(i, k));
        if (norm == 0.0) {
            diag[k] = 0.0;
            continue;
        }
        if (at(k, k) < 0) norm = -norm;  // reflector sign follows the pivot element
        for (int i = k; i < rows; ++i) at(i, k) /= norm;
        at(k, k) += 1.0;

        for (int j = k + 1; j < cols; ++j) {
            double s = 0.0;
            for (int i = k; i < rows; ++i) s += at(i, k) * at(i, j);
            s = -s / at(k, k);
            for (int i = k; i < rows; ++i) at(i, j) += s * at(i, k);
            col_norm2[j] = 0.0;
            for (int i = k + 1; i < rows; ++i) col_norm2[j] += at(i, j) * at(i, j);
        }
        {
            double s = 0.0;
            for (int i = k; i < rows; ++i) s += at(i, k) * rhs[i];
            s = -s / at(k, k);
            for (int i = k; i < rows; ++i) rhs[i] += s * at(i, k);
        }
        diag[k] = -norm;
    }

    // threshold for rank detection, relative to the largest diagonal
    double max_diag = 0.0;
    for (int k = 0; k < p; ++k) max_diag = std::max(max_diag, std::abs(diag[k]));
    const double tol = max_diag * rows * std::numeric_limits<double>::epsilon();

    std::vector<double> solution(cols, 0.0);
    for (int k = p - 1; k >= 0; --k) {
        if (std::abs(diag[k]) <= tol) {
            solution[k] = 0.0;
            continue;
        }
        double s = rhs[k];
        for (int j = k + 1; j < cols; ++j) s -= at(k, j) * solution[j];
        solution[k] = s / diag[k];
    }

    std::vector<double> out(cols, 0.0);
    for (int j = 0; j < cols; ++j) out[perm[j]] = solution[j];
    return out;
}

}  // namespace detail

inline PolyFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
    if (degree < 1) throw ValueError("polyfit: degree must be >= 1");
    const int n = static_cast<int>(x.size());
    if (y.size() != x.size()) throw ValueError("polyfit: x and y length mismatch");
    if (n < degree + 2) throw ValueError("polyfit: need at least degree+2 observations");

    PolyFit fit;
    fit.degree = degree;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v - mean));
    if (scale == 0.0) throw ValueError("polyfit: degenerate x (all values equal)");
    fit.x_center = mean;
    fit.x_scale = scale;

    const int cols = degree + 1;
    std::vector<double> vandermonde(static_cast<std::size_t>(n) * cols);
    for (int i = 0; i < n; ++i) {
        const double z = (x[i] - mean) / scale;
        double pw = 1.0;
        for (int j = 0; j < cols; ++j) {
            vandermonde[static_cast<std::size_t>(i) * cols + j] = pw;
            pw *= z;
        }
    }
    fit.coefficients = detail::qr_least_squares(std::move(vandermonde), n, cols, y);
    return fit;
}

struct RegressionDiagnostics {
    int n = 0;
    int k = 0;
    double rss = 0.0;
    double tss = 0.0;
    std::optional<double> r2;    // undefined when TSS = 0 (constant y)
    std::optional<double> ar2;
    double rmse = 0.0;
    double mae = 0.0;
    double aic = 0.0;            // -inf when RSS = 0
    std::optional<double> aicc;  // undefined when n-k-1 <= 0
};

inline RegressionDiagnostics diagnostics(const PolyFit& fit, const std::vector<double>& x,
                                         const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (y.size() != x.size()) throw ValueError("diagnostics: x and y length mismatch");
    if (n < 2) throw ValueError("diagnostics: need at least 2 observations");

    RegressionDiagnostics d;
    d.n = n;
    d.k = fit.degree;
    double mean_y = 0.0;
    for (double v : y) mean_y += v;
    mean_y /= n;
    double abs_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = fit.eval(x[i]);
        const double r = y[i] - m;
        d.rss += r * r;
        abs_sum += std::abs(r);
        d.tss += (y[i] - mean_y) * (y[i] - mean_y);
    }
    d.rmse = std::sqrt(d.rss / n);
    d.mae = abs_sum / n;
    if (d.tss > 0.0) {
        d.r2 = 1.0 - d.rss / d.tss;
        if (n - d.k - 1 > 0) d.ar2 = 1.0 - (1.0 - *d.r2) * (n - 1) / (n - d.k - 1);
    }
    d.aic = d.rss == 0.0 ? -std::numeric_limits<double>::infinity()
                         : n * std::log(d.rss / n) + 2.0 * d.k;
    if (n - d.k - 1 > 0) d.aicc = d.aic + (2.0 * d.k * d.k + 2.0 * d.k) / (n - d.k - 1);
    return d;
}

struct ModelSelection {
    int best_k = 0;
    std::vector<PolyFit> fits;                      // one per candidate degree
    std::vector<RegressionDiagnostics> candidates;  // aligned with fits
};

/// Fits degrees 1..k_max (capped at n-2) and picks the smallest AICc;
/// ties resolve to the lower degree.
inline ModelSelection select_model(const std::vector<double>& x, const std::vector<double>& y,
                                   int k_max) {
    const int n = static_cast<int>(x.size());
    const int cap = std::min(k_max, n - 2);
    if (cap < 1) throw ValueError("select_model: no fittable degree for this sample size");
    ModelSelection sel;
    double best_aicc = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= cap; ++k) {
        PolyFit fit = polyfit(x, y, k);
        RegressionDiagnostics d = diagnostics(fit, x, y);
        if (d.aicc && *d.aicc < best_aicc) {
            best_aicc = *d.aicc;
            sel.best_k = k;
        }
        sel.fits.push_back(std::move(fit));
        sel.candidates.push_back(d);
    }
    if (sel.best_k == 0) throw ValueError("select_model: AICc undefined for every degree");
    return sel;
}

struct FitTableRow {
    std::string measure;
    int factor = 0;
    int dof = 0;
    RegressionDiagnostics diag;
};

/// Full measures x factors x degrees diagnostics grid, ordered by
/// (measure, factor, degree).
inline std::vector<FitTableRow> fit_table(
    const std::vector<std::pair<std::string, std::vector<double>>>& measures,
    const std::vector<std::pair<int, std::vector<double>>>& targets, int k_max) {
    std::vector<FitTableRow> rows;
    for (const auto& [name, x] : measures) {
        for (const auto& [factor, y] : targets) {
            if (x.size() != y.size())
                throw ValueError("fit_table: column length mismatch for measure " + name);
            for (int k = 1; k <= k_max; ++k) {
                if (static_cast<int>(x.size()) < k + 2) break;
                FitTableRow row;
                row.measure = name;
                row.factor = factor;
                row.dof = k;
                row.diag = diagnostics(polyfit(x, y, k), x, y);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

inline std::string to_csv(const std::vector<FitTableRow>& rows, bool fixed4 = false) {
    std::string out = "measure,factor,dof,r2,ar2,rmse,mae,aic,aicc\n";
    auto fmt = [fixed4](double v) { return fixed4 ? format_fixed4(v) : format_double(v); };
    for (const auto& row : rows) {
        out += row.measure + "," + std::to_string(row.factor) + "," + std::to_string(row.dof) +
               "," + format_optional(row.diag.r2, fixed4) + "," +
               format_optional(row.diag.ar2, fixed4) + "," + fmt(row.diag.rmse) + "," +
               fmt(row.diag.mae) + "," + fmt(row.diag.aic) + "," +
               format_optional(row.diag.aicc, fixed4) + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const PolyFit& fit) {
    return nlohmann::json{{"degree", fit.degree},
                          {"coefficients", fit.coefficients},
                          {"x_center", fit.x_center},
                          {"x_scale", fit.x_scale}};
}

inline PolyFit polyfit_from_json(const nlohmann::json& j) {
    PolyFit fit;
    fit.degree = j.at("degree").get<int>();
    fit.coefficients = j.at("coefficients").get<std::vector<double>>();
    fit.x_center = j.at("x_center").get<double>();
    fit.x_scale = j.at("x_scale").get<double>();
    if (fit.degree < 1 || fit.coefficients.size() != static_cast<std::size_t>(fit.degree) + 1 ||
        !(fit.x_scale > 0.0))
        throw ValueError("polyfit_from_json: malformed fit");
    return fit;
}

}  // namespace segc
