#pragma once
// Weighted least-squares fitting with multi-start Nelder-Mead simplex search,
// plus the fit statistics and residual diagnostics consumed by the judge.
// Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5; bounds
// enforced by clamping proposals; start 0 sits at the bound midpoints and the
// RNG for start i is derived from (seed, i), so enlarging n_starts keeps the
// earlier starts identical.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "plotsteer/diagnostics.hpp"
#include "plotsteer/errors.hpp"
#include "plotsteer/rng.hpp"
#include "plotsteer/scimodels.hpp"

namespace plotsteer::fitmetrics {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double chi2(const std::vector<double>& y, const std::vector<double>& m,
                   const std::vector<double>& sigma) {
    if (y.size() != m.size() || y.size() != sigma.size())
        throw LengthMismatch("chi2 inputs");
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(sigma[i] > 0.0)) throw NonPositiveSigma(i);
        const double r = (y[i] - m[i]) / sigma[i];
        total += r * r;
    }
    return total;
}

inline double log_likelihood(const std::vector<double>& y, const std::vector<double>& m,
                             const std::vector<double>& sigma) {
    const double c2 = chi2(y, m, sigma);
    double norm = 0.0;
    for (double s : sigma) norm += std::log(s * std::sqrt(kTwoPi));
    return -0.5 * c2 - norm;
}

inline double bic(std::size_t k_params, std::size_t n_samples, double log_lik) {
    if (n_samples < 1) throw LengthMismatch("bic requires n >= 1");
    return static_cast<double>(k_params) * std::log(static_cast<double>(n_samples)) -
           2.0 * log_lik;
}

// Wald-Wolfowitz runs test on residual signs; returns |z|. Zero residuals
// count as positive. All-same-sign sequences return the +inf sentinel.
inline double runs_test_z(const std::vector<double>& residuals_sigma) {
    const std::size_t n = residuals_sigma.size();
    if (n < 10) throw LengthMismatch("runs test needs >= 10 residuals");
    std::size_t n_pos = 0, n_neg = 0, runs = 1;
    auto sign = [](double r) { return r >= 0.0; };
    for (std::size_t i = 0; i < n; ++i) {
        (sign(residuals_sigma[i]) ? n_pos : n_neg) += 1;
        if (i > 0 && sign(residuals_sigma[i]) != sign(residuals_sigma[i - 1])) ++runs;
    }
    if (n_pos == 0 || n_neg == 0) return std::numeric_limits<double>::infinity();
    const double np = static_cast<double>(n_pos), nm = static_cast<double>(n_neg);
    const double nn = np + nm;
    const double mu = 2.0 * np * nm / nn + 1.0;
    const double var = 2.0 * np * nm * (2.0 * np * nm - nn) / (nn * nn * (nn - 1.0));
    return std::abs((static_cast<double>(runs) - mu) / std::sqrt(var));
}

struct FitResult {
    std::string model_id;
    std::vector<double> params;
    double chi2 = 0.0;
    double reduced_chi2 = 0.0;
    double log_likelihood = 0.0;
    double bic = 0.0;
    std::vector<double> residuals_sigma;
    gateway::ResidualDiagnostics diagnostics;
    int n_starts_used = 0;
    bool converged = false;
};

namespace detail {

struct Bounds {
    std::vector<double> lo, hi;
};

inline void clamp_point(std::vector<double>& p, const Bounds& b) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], b.lo[i], b.hi[i]);
}

struct SimplexOutcome {
    std::vector<double> best;
    double f_best = std::numeric_limits<double>::infinity();
    bool converged = false;
};

template <typename F>
SimplexOutcome nelder_mead(F&& objective, std::vector<double> start, const Bounds& bounds,
                           double step_fraction, int max_iter, double spread_tol) {
    const std::size_t dim = start.size();
    clamp_point(start, bounds);

    std::vector<std::vector<double>> vertices;
    vertices.push_back(start);
    for (std::size_t d = 0; d < dim; ++d) {
        auto v = start;
        const double span = bounds.hi[d] - bounds.lo[d];
        double step = step_fraction * span;
        if (step == 0.0) step = 1e-8;
        v[d] += (v[d] + step <= bounds.hi[d]) ? step : -step;
        clamp_point(v, bounds);
        vertices.push_back(v);
    }
    std::vector<double> fvals(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) fvals[i] = objective(vertices[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(vertices.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fvals[a] < fvals[b]; });
        std::vector<std::vector<double>> vs;
        std::vector<double> fs;
        for (auto i : idx) {
            vs.push_back(vertices[i]);
            fs.push_back(fvals[i]);
        }
        vertices = std::move(vs);
        fvals = std::move(fs);
    };

    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        order();
        const double f_lo = fvals.front(), f_hi = fvals.back();
        const double spread = (f_hi - f_lo) / (std::abs(f_lo) + 1e-30);
        if (spread < spread_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v + 1 < vertices.size(); ++v)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += vertices[v][d];
        for (auto& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coef) {
            std::vector<double> p(dim);
            for (std::size_t d = 0; d < dim; ++d)
                p[d] = centroid[d] + coef * (centroid[d] - vertices.back()[d]);
            clamp_point(p, bounds);
            return p;
        };

        auto reflected = blend(1.0);
        const double f_ref = objective(reflected);
        if (f_ref < fvals.front()) {
            auto expanded = blend(2.0);
            const double f_exp = objective(expanded);
            if (f_exp < f_ref) {
                vertices.back() = std::move(expanded);
                fvals.back() = f_exp;
            } else {
                vertices.back() = std::move(reflected);
                fvals.back() = f_ref;
            }
        } else if (f_ref < fvals[fvals.size() - 2]) {
            vertices.back() = std::move(reflected);
            fvals.back() = f_ref;
        } else {
            auto contracted = blend(-0.5);
            const double f_con = objective(contracted);
            if (f_con < fvals.back()) {
                vertices.back() = std::move(contracted);
                fvals.back() = f_con;
            } else {
                for (std::size_t v = 1; v < vertices.size(); ++v) {
                    for (std::size_t d = 0; d < dim; ++d)
                        vertices[v][d] =
                            vertices[0][d] + 0.5 * (vertices[v][d] - vertices[0][d]);
                    clamp_point(vertices[v], bounds);
                    fvals[v] = objective(vertices[v]);
                }
            }
        }
    }
    order();
    return SimplexOutcome{vertices.front(), fvals.front(), converged};
}

} // namespace detail

inline constexpr int kDefaultStarts = 16;
inline constexpr int kMaxSimplexIter = 2000;
inline constexpr double kSpreadTol = 1e-8;

// Fit over raw arrays; the Dataset overload below resolves keys by family.
inline FitResult fit_arrays(const std::string& model_id, const std::vector<double>& x,
                            const std::vector<double>& y, const std::vector<double>& sigma,
                            int n_starts, std::uint64_t seed) {
    const models::ModelSpec& spec = models::model_spec(model_id);
    if (x.size() != y.size() || x.size() != sigma.size()) throw LengthMismatch("fit inputs");
    const std::size_t n = x.size();
    const std::size_t k = spec.n_params();
    if (n <= k) throw LengthMismatch("fit requires n > k_params");
    if (n_starts < 1) throw DomainError("n_starts must be positive");

    detail::Bounds bounds;
    for (const auto& name : spec.param_names) {
        const auto& [lo, hi] = spec.param_bounds.at(name);
        bounds.lo.push_back(lo);
        bounds.hi.push_back(hi);
    }

    auto objective = [&](const std::vector<double>& params) {
        return chi2(y, models::eval_model(model_id, params, x), sigma);
    };

    std::vector<double> best_params;
    double best_chi2 = std::numeric_limits<double>::infinity();
    bool best_converged = false;
    int starts_ok = 0;
    std::string last_error;

    if (k == 0) {
        best_params = {};
        best_chi2 = objective(best_params);
        best_converged = true;
        starts_ok = 1;
    } else {
        for (int s = 0; s < n_starts; ++s) {
            std::vector<double> start(k);
            if (s == 0) {
                for (std::size_t d = 0; d < k; ++d)
                    start[d] = 0.5 * (bounds.lo[d] + bounds.hi[d]);
            } else {
                Rng rng(seed, static_cast<std::uint64_t>(s));
                for (std::size_t d = 0; d < k; ++d)
                    start[d] = rng.uniform(bounds.lo[d], bounds.hi[d]);
            }
            try {
                auto out = detail::nelder_mead(objective, start, bounds, 0.10,
                                               kMaxSimplexIter, kSpreadTol);
                // polish: restart from the best point with shrinking steps
                for (double frac : {0.01, 0.001}) {
                    auto polish = detail::nelder_mead(objective, out.best, bounds, frac,
                                                      kMaxSimplexIter, kSpreadTol);
                    if (polish.f_best < out.f_best) out = polish;
                }
                ++starts_ok;
                if (out.f_best < best_chi2) {
                    best_chi2 = out.f_best;
                    best_params = out.best;
                    best_converged = out.converged;
                }
            } catch (const Error& e) {
                last_error = e.what();
            }
        }
        if (starts_ok == 0) throw AllStartsFailed(last_error);
    }

    FitResult res;
    res.model_id = model_id;
    res.params = best_params;
    const auto model = models::eval_model(model_id, best_params, x);
    res.residuals_sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.residuals_sigma[i] = (y[i] - model[i]) / sigma[i];
    res.chi2 = chi2(y, model, sigma);
    res.reduced_chi2 = res.chi2 / static_cast<double>(n - k);
    res.log_likelihood = log_likelihood(y, model, sigma);
    res.bic = bic(k, n, res.log_likelihood);
    res.n_starts_used = (k == 0) ? 1 : n_starts;
    res.converged = best_converged;

    double max_abs = 0.0;
    for (double r : res.residuals_sigma) max_abs = std::max(max_abs, std::abs(r));
    res.diagnostics.n = n;
    res.diagnostics.k_params = k;
    res.diagnostics.reduced_chi2 = res.reduced_chi2;
    res.diagnostics.max_abs_sigma = max_abs;
    res.diagnostics.runs_z = runs_test_z(res.residuals_sigma);
    res.diagnostics.bic = res.bic;
    return res;
}

inline FitResult fit(const std::string& model_id, const models::Dataset& ds, int n_starts,
                     std::uint64_t seed) {
    const models::ModelSpec& spec = models::model_spec(model_id);
    const models::FamilyKeys keys = models::family_keys(spec.family);
    if (!ds.has(keys.x) || !ds.has(keys.y))
        throw KeyMismatch("dataset lacks keys for family " +
                          std::string(models::to_string(spec.family)));
    const auto& x = ds.array(keys.x);
    const auto& y = ds.array(keys.y);
    std::vector<double> sigma;
    if (keys.sigma != nullptr && ds.has(keys.sigma)) {
        sigma = ds.array(keys.sigma);
    } else {
        if (!(ds.meta.noise_sigma > 0.0)) throw NonPositiveSigma(0);
        sigma.assign(x.size(), ds.meta.noise_sigma);
    }
    return fit_arrays(model_id, x, y, sigma, n_starts, seed);
}

} // namespace plotsteer::fitmetrics
