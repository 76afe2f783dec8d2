#pragma once
// Scientific model registry and benchmark dataset generators.
//
// Functional forms (g(x; m, s) = exp(-(x-m)^2 / (2 s^2))):
//   sho             x(t) = A cos(w t)                      (phase, offset fixed at 0)
//   sho_damped      x(t) = A exp(-g t) cos(w t)
//   sho_chirped     x(t) = A cos(w t + 0.5 b t^2)
//   gauss1          I(v) = c0 + A g(v; mu, s)
//   gauss2          I(v) = c0 + A1 g(v; mu1, s1) + A2 g(v; mu2, s2)
//   selfabs         I(v) = c0 + Ae g(v; mu, se) - Aa g(v; mu, sa)
//   doublet         I(v) = c0 + A [g(v; mu-d, s) + g(v; mu+d, s)]
//   hybrid          I(v) = c0 + A1 g(mu1,s1) + A2 g(mu2,s2) - Aa g(mua,sa)
//   hyperfine       I(v) = c0 + A [ (1/5) g(v; mu-7.07, s) + g(v; mu, s)
//                                   + (3/5) g(v; mu+4.84, s) ]
//                   (three components at fixed velocity offsets with intensity
//                   ratios 1:5:3; A is the amplitude of the main component)
//   seir*           normalized SEIR compartments integrated with fixed-step
//                   RK4; the observable is POPULATION * I(t)
//   lcdm            fiducial TT table interpolated at ell
//   lcdm_tilt       TT(ell) * (ell / 550)^dns
//   lcdm_shift      TT(ell * s), clamped at the table edges
//   ee_template     A * EE(ell)

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "plotsteer/dataset.hpp"
#include "plotsteer/datadir.hpp"
#include "plotsteer/errors.hpp"
#include "plotsteer/rng.hpp"

namespace plotsteer::models {

enum class Family { Oscillator, Line, Epidemic, Spectrum };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::Oscillator: return "oscillator";
        case Family::Line: return "line";
        case Family::Epidemic: return "epidemic";
        case Family::Spectrum: return "spectrum";
    }
    return "?";
}

inline Family family_from_string(const std::string& s) {
    if (s == "oscillator") return Family::Oscillator;
    if (s == "line") return Family::Line;
    if (s == "epidemic") return Family::Epidemic;
    if (s == "spectrum") return Family::Spectrum;
    throw Error("unknown family: " + s);
}

struct ModelSpec {
    std::string model_id;
    std::string display_name;
    std::vector<std::string> param_names;  // free parameters only
    std::map<std::string, std::pair<double, double>> param_bounds;
    Family family = Family::Line;
    std::size_t n_params() const { return param_names.size(); }
};

// Dataset keys by family: x, y, optional sigma.
struct FamilyKeys {
    const char* x;
    const char* y;
    const char* sigma;  // nullptr when noise level comes from metadata
};

inline FamilyKeys family_keys(Family f) {
    switch (f) {
        case Family::Oscillator: return {"t", "x", nullptr};
        case Family::Line: return {"v", "I", "sigma"};
        case Family::Epidemic: return {"t", "I", "sigma_I"};
        case Family::Spectrum: return {"ell", "Dl_obs", "sigma_Dl"};
    }
    return {"x", "y", nullptr};
}

inline constexpr double kPopulation = 10000.0;  // scale for SEIR observables
inline constexpr double kTiltPivot = 550.0;     // pivot multipole for lcdm_tilt

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline const std::vector<ModelSpec>& registry() {
    static const std::vector<ModelSpec> specs = [] {
        using B = std::map<std::string, std::pair<double, double>>;
        std::vector<ModelSpec> r;
        r.push_back({"sho", "simple harmonic oscillator",
                     {"amplitude", "angular_freq"},
                     B{{"amplitude", {0.1, 5.0}}, {"angular_freq", {1.0, 20.0}}},
                     Family::Oscillator});
        r.push_back({"sho_damped", "damped harmonic oscillator",
                     {"amplitude", "decay_rate", "angular_freq"},
                     B{{"amplitude", {0.1, 5.0}},
                       {"decay_rate", {0.0, 2.0}},
                       {"angular_freq", {1.0, 20.0}}},
                     Family::Oscillator});
        r.push_back({"sho_chirped", "chirped harmonic oscillator",
                     {"amplitude", "angular_freq", "chirp_rate"},
                     B{{"amplitude", {0.1, 5.0}},
                       {"angular_freq", {1.0, 20.0}},
                       {"chirp_rate", {0.0, 6.0}}},
                     Family::Oscillator});
        r.push_back({"gauss1", "single Gaussian",
                     {"continuum", "amplitude", "center", "width"},
                     B{{"continuum", {-1.0, 2.0}},
                       {"amplitude", {0.05, 6.0}},
                       {"center", {-10.0, 10.0}},
                       {"width", {0.2, 8.0}}},
                     Family::Line});
        // center bounds are disjoint so the two components cannot swap labels
        r.push_back({"gauss2", "two-component emission",
                     {"continuum", "amp1", "center1", "width1", "amp2", "center2", "width2"},
                     B{{"continuum", {-1.0, 2.0}},
                       {"amp1", {0.05, 6.0}},
                       {"center1", {-8.0, 0.0}},
                       {"width1", {0.2, 4.0}},
                       {"amp2", {0.05, 6.0}},
                       {"center2", {0.0, 8.0}},
                       {"width2", {0.2, 4.0}}},
                     Family::Line});
        r.push_back({"selfabs", "self-absorption",
                     {"continuum", "emission_amp", "emission_width", "absorption_amp",
                      "absorption_width", "center"},
                     B{{"continuum", {-1.0, 2.0}},
                       {"emission_amp", {0.1, 6.0}},
                       {"emission_width", {1.0, 6.0}},
                       {"absorption_amp", {0.05, 4.0}},
                       {"absorption_width", {0.1, 2.0}},
                       {"center", {-3.0, 3.0}}},
                     Family::Line});
        r.push_back({"doublet", "symmetric doublet",
                     {"continuum", "amplitude", "center", "separation", "width"},
                     B{{"continuum", {-1.0, 2.0}},
                       {"amplitude", {0.05, 6.0}},
                       {"center", {-3.0, 3.0}},
                       {"separation", {0.5, 8.0}},
                       {"width", {0.2, 3.0}}},
                     Family::Line});
        r.push_back({"hybrid", "hybrid emission plus absorption",
                     {"continuum", "amp1", "center1", "width1", "amp2", "center2", "width2",
                      "absorption_amp", "absorption_center", "absorption_width"},
                     B{{"continuum", {-1.0, 2.0}},
                       {"amp1", {0.05, 6.0}},
                       {"center1", {-8.0, 0.0}},
                       {"width1", {0.2, 4.0}},
                       {"amp2", {0.05, 6.0}},
                       {"center2", {0.0, 8.0}},
                       {"width2", {0.2, 4.0}},
                       {"absorption_amp", {0.0, 4.0}},
                       {"absorption_center", {-3.0, 3.0}},
                       {"absorption_width", {0.1, 2.0}}},
                     Family::Line});
        r.push_back({"hyperfine", "hyperfine triplet",
                     {"continuum", "amplitude", "center", "width"},
                     B{{"continuum", {-1.0, 2.0}},
                       {"amplitude", {0.05, 6.0}},
                       {"center", {-3.0, 3.0}},
                       {"width", {0.2, 3.0}}},
                     Family::Line});
        r.push_back({"seir", "standard SEIR",
                     {"transmission_rate", "incubation_rate", "recovery_rate"},
                     B{{"transmission_rate", {0.05, 1.5}},
                       {"incubation_rate", {0.02, 1.0}},
                       {"recovery_rate", {0.01, 1.0}}},
                     Family::Epidemic});
        r.push_back({"seir_waning", "SEIR with waning immunity",
                     {"transmission_rate", "incubation_rate", "recovery_rate", "waning_rate"},
                     B{{"transmission_rate", {0.05, 1.5}},
                       {"incubation_rate", {0.02, 1.0}},
                       {"recovery_rate", {0.01, 1.0}},
                       {"waning_rate", {0.0, 0.1}}},
                     Family::Epidemic});
        r.push_back({"seir_behavioral", "SEIR with behavioral feedback",
                     {"transmission_rate0", "incubation_rate", "recovery_rate",
                      "feedback_strength"},
                     B{{"transmission_rate0", {0.05, 2.0}},
                       {"incubation_rate", {0.02, 1.0}},
                       {"recovery_rate", {0.01, 1.0}},
                       {"feedback_strength", {0.0, 80.0}}},
                     Family::Epidemic});
        r.push_back({"lcdm", "fiducial TT spectrum", {}, B{}, Family::Spectrum});
        r.push_back({"lcdm_tilt", "tilted spectral index",
                     {"tilt_index"},
                     B{{"tilt_index", {-0.15, 0.15}}},
                     Family::Spectrum});
        r.push_back({"lcdm_shift", "peak-shifted spectrum",
                     {"scale_shift"},
                     B{{"scale_shift", {0.85, 1.11}}},
                     Family::Spectrum});
        r.push_back({"ee_template", "EE template",
                     {"amplitude"},
                     B{{"amplitude", {0.2, 3.0}}},
                     Family::Spectrum});
        return r;
    }();
    return specs;
}

inline const ModelSpec& model_spec(const std::string& model_id) {
    for (const auto& spec : registry())
        if (spec.model_id == model_id) return spec;
    throw UnknownModel(model_id);
}

inline bool model_exists(const std::string& model_id) {
    for (const auto& spec : registry())
        if (spec.model_id == model_id) return true;
    return false;
}

// Fixed candidate families for each null model, baseline first.
inline const std::vector<std::string>& candidate_family(const std::string& null_model_id) {
    static const std::map<std::string, std::vector<std::string>> families = {
        {"sho", {"sho", "sho_damped", "sho_chirped"}},
        {"gauss1", {"gauss1", "gauss2", "selfabs", "doublet", "hybrid"}},
        {"seir", {"seir", "seir_waning", "seir_behavioral"}},
        {"lcdm", {"lcdm", "lcdm_tilt", "ee_template", "lcdm_shift"}},
    };
    auto it = families.find(null_model_id);
    if (it == families.end()) throw UnknownModel(null_model_id);
    return it->second;
}

// ---------------------------------------------------------------------------
// Fiducial spectrum tables
// ---------------------------------------------------------------------------

enum class SpectrumKind { TT, EE };

struct SpectrumTable {
    std::vector<double> ell;
    std::vector<double> dl;

    double interp(double x) const {
        if (x <= ell.front()) return dl.front();
        if (x >= ell.back()) return dl.back();
        auto it = std::lower_bound(ell.begin(), ell.end(), x);
        const std::size_t hi = static_cast<std::size_t>(it - ell.begin());
        const std::size_t lo = hi - 1;
        const double t = (x - ell[lo]) / (ell[hi] - ell[lo]);
        return dl[lo] + t * (dl[hi] - dl[lo]);
    }
};

inline const SpectrumTable& fiducial_table(SpectrumKind kind) {
    static std::mutex mtx;
    static std::map<std::string, std::shared_ptr<SpectrumTable>> cache;
    const std::string path =
        data_path(kind == SpectrumKind::TT ? "fiducial_tt.txt" : "fiducial_ee.txt");
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(path);
    if (it != cache.end()) return *it->second;
    std::ifstream in(path);
    if (!in) throw MissingTable(path);
    auto table = std::make_shared<SpectrumTable>();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        double l = 0, d = 0;
        row >> l >> d;
        table->ell.push_back(l);
        table->dl.push_back(d);
    }
    if (table->ell.empty()) throw MissingTable(path);
    cache[path] = table;
    return *cache[path];
}

inline std::pair<std::vector<double>, std::vector<double>> fiducial_spectrum(SpectrumKind kind) {
    const SpectrumTable& t = fiducial_table(kind);
    return {t.ell, t.dl};
}

// ---------------------------------------------------------------------------
// SEIR integration
// ---------------------------------------------------------------------------

enum class SeirVariant { Standard, Waning, Behavioral };

struct SeirState {
    double s, e, i, r;
};

struct SeirInit {
    double s0 = 0.99, e0 = 0.005, i0 = 0.005, r0 = 0.0;
};

inline constexpr SeirInit kDefaultSeirInit{};
inline constexpr int kSeirBaseSteps = 4096;  // target substeps over the whole grid

namespace detail {

inline SeirState seir_rhs(SeirVariant variant, const std::vector<double>& p,
                          const SeirState& y) {
    // params: [beta, sigma, gamma] (+ waning rate | feedback strength)
    double beta = p[0];
    const double sigma = p[1];
    const double gamma = p[2];
    if (variant == SeirVariant::Behavioral) beta = p[0] / (1.0 + p[3] * y.i);
    const double infection = beta * y.s * y.i;
    SeirState d{-infection, infection - sigma * y.e, sigma * y.e - gamma * y.i, gamma * y.i};
    if (variant == SeirVariant::Waning) {
        const double waning = p[3] * y.r;
        d.s += waning;
        d.r -= waning;
    }
    return d;
}

inline SeirState rk4_step(SeirVariant variant, const std::vector<double>& p,
                          const SeirState& y, double h) {
    auto add = [](const SeirState& a, const SeirState& b, double f) {
        return SeirState{a.s + f * b.s, a.e + f * b.e, a.i + f * b.i, a.r + f * b.r};
    };
    const SeirState k1 = seir_rhs(variant, p, y);
    const SeirState k2 = seir_rhs(variant, p, add(y, k1, h / 2));
    const SeirState k3 = seir_rhs(variant, p, add(y, k2, h / 2));
    const SeirState k4 = seir_rhs(variant, p, add(y, k3, h));
    return SeirState{y.s + h / 6 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s),
                     y.e + h / 6 * (k1.e + 2 * k2.e + 2 * k3.e + k4.e),
                     y.i + h / 6 * (k1.i + 2 * k2.i + 2 * k3.i + k4.i),
                     y.r + h / 6 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r)};
}

} // namespace detail

// Full compartment trajectory sampled at the grid points. The base step is
// (t_max - t_min) / kSeirBaseSteps; each grid interval is subdivided so steps
// land exactly on grid nodes.
inline std::vector<SeirState> seir_trajectory(SeirVariant variant,
                                              const std::vector<double>& params,
                                              const SeirInit& init,
                                              const std::vector<double>& t_grid,
                                              int base_steps = kSeirBaseSteps) {
    const std::size_t expected = variant == SeirVariant::Standard ? 3 : 4;
    if (params.size() != expected)
        throw ParamArityMismatch("seir", params.size(), expected);
    if (t_grid.size() < 2) throw LengthMismatch("SEIR grid needs >= 2 points");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw LengthMismatch("SEIR grid must increase");
    if (init.s0 < 0 || init.e0 < 0 || init.i0 < 0 || init.r0 < 0)
        throw NonPhysicalState("negative initial compartment");

    const double span = t_grid.back() - t_grid.front();
    const double target_h = span / base_steps;
    const double total = init.s0 + init.e0 + init.i0 + init.r0;
    const double tol = 1e-9 * std::max(total, 1.0);

    SeirState y{init.s0, init.e0, init.i0, init.r0};
    std::vector<SeirState> out;
    out.reserve(t_grid.size());
    out.push_back(y);
    for (std::size_t g = 1; g < t_grid.size(); ++g) {
        const double interval = t_grid[g] - t_grid[g - 1];
        const int substeps = std::max(1, static_cast<int>(std::ceil(interval / target_h)));
        const double h = interval / substeps;
        for (int s = 0; s < substeps; ++s) {
            y = detail::rk4_step(variant, params, y, h);
            auto clamp = [&](double& c) {
                if (c < 0) {
                    if (c < -tol) throw NonPhysicalState("compartment undershoot");
                    c = 0;
                }
            };
            clamp(y.s);
            clamp(y.e);
            clamp(y.i);
            clamp(y.r);
        }
        out.push_back(y);
    }
    return out;
}

inline std::vector<double> integrate_seir(SeirVariant variant, const std::vector<double>& params,
                                          const SeirInit& init,
                                          const std::vector<double>& t_grid,
                                          int base_steps = kSeirBaseSteps) {
    const auto traj = seir_trajectory(variant, params, init, t_grid, base_steps);
    std::vector<double> infected(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) infected[i] = traj[i].i;
    return infected;
}

// ---------------------------------------------------------------------------
// Model evaluation
// ---------------------------------------------------------------------------

inline std::vector<double> eval_model(const std::string& model_id,
                                      const std::vector<double>& params,
                                      const std::vector<double>& grid) {
    const ModelSpec& spec = model_spec(model_id);
    if (params.size() != spec.n_params())
        throw ParamArityMismatch(model_id, params.size(), spec.n_params());
    for (double x : grid)
        if (!std::isfinite(x)) throw LengthMismatch("grid must be finite");

    auto gaussian = [](double x, double mu, double s) {
        const double z = (x - mu) / s;
        return std::exp(-0.5 * z * z);
    };

    std::vector<double> out(grid.size());
    if (model_id == "sho") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] * std::cos(params[1] * grid[i]);
    } else if (model_id == "sho_damped") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] * std::exp(-params[1] * grid[i]) * std::cos(params[2] * grid[i]);
    } else if (model_id == "sho_chirped") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] *
                     std::cos(params[1] * grid[i] + 0.5 * params[2] * grid[i] * grid[i]);
    } else if (model_id == "gauss1") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] + params[1] * gaussian(grid[i], params[2], params[3]);
    } else if (model_id == "gauss2") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] + params[1] * gaussian(grid[i], params[2], params[3]) +
                     params[4] * gaussian(grid[i], params[5], params[6]);
    } else if (model_id == "selfabs") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] + params[1] * gaussian(grid[i], params[5], params[2]) -
                     params[3] * gaussian(grid[i], params[5], params[4]);
    } else if (model_id == "doublet") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] +
                     params[1] * (gaussian(grid[i], params[2] - params[3], params[4]) +
                                  gaussian(grid[i], params[2] + params[3], params[4]));
    } else if (model_id == "hybrid") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] + params[1] * gaussian(grid[i], params[2], params[3]) +
                     params[4] * gaussian(grid[i], params[5], params[6]) -
                     params[7] * gaussian(grid[i], params[8], params[9]);
    } else if (model_id == "hyperfine") {
        // fixed offsets and 1:5:3 intensity ratios, main component at `center`
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = params[0] +
                     params[1] * ((1.0 / 5.0) * gaussian(grid[i], params[2] - 7.07, params[3]) +
                                  gaussian(grid[i], params[2], params[3]) +
                                  (3.0 / 5.0) * gaussian(grid[i], params[2] + 4.84, params[3]));
    } else if (spec.family == Family::Epidemic) {
        const SeirVariant variant = model_id == "seir"           ? SeirVariant::Standard
                                    : model_id == "seir_waning"  ? SeirVariant::Waning
                                                                 : SeirVariant::Behavioral;
        const auto infected = integrate_seir(variant, params, kDefaultSeirInit, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = kPopulation * infected[i];
    } else if (model_id == "lcdm") {
        const SpectrumTable& t = fiducial_table(SpectrumKind::TT);
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = t.interp(grid[i]);
    } else if (model_id == "lcdm_tilt") {
        const SpectrumTable& t = fiducial_table(SpectrumKind::TT);
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = t.interp(grid[i]) * std::pow(grid[i] / kTiltPivot, params[0]);
    } else if (model_id == "lcdm_shift") {
        const SpectrumTable& t = fiducial_table(SpectrumKind::TT);
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = t.interp(grid[i] * params[0]);
    } else if (model_id == "ee_template") {
        const SpectrumTable& t = fiducial_table(SpectrumKind::EE);
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = params[0] * t.interp(grid[i]);
    } else {
        throw UnknownModel(model_id);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Task manifest and dataset generation
// ---------------------------------------------------------------------------

struct TaskDefinition {
    std::string task_id;
    Family family = Family::Line;
    std::string null_model_id;
    std::string truth_model_id;
    nlohmann::json grid;
    nlohmann::json noise;
    std::map<std::string, std::pair<double, double>> truth_ranges;
    std::string problem_statement;
    std::string null_hypothesis;
    std::string prior_context;
};

inline const std::vector<TaskDefinition>& task_manifest() {
    static std::mutex mtx;
    static std::map<std::string, std::shared_ptr<std::vector<TaskDefinition>>> cache;
    const std::string path = data_path("task_manifest.json");
    std::lock_guard<std::mutex> lock(mtx);
    auto cached = cache.find(path);
    if (cached != cache.end()) return *cached->second;
    nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    auto defs = std::make_shared<std::vector<TaskDefinition>>();
    for (const auto& t : j.at("tasks")) {
        TaskDefinition d;
        d.task_id = t.at("task_id").get<std::string>();
        d.family = family_from_string(t.at("family").get<std::string>());
        d.null_model_id = t.at("null_model_id").get<std::string>();
        d.truth_model_id = t.at("truth_model_id").get<std::string>();
        d.grid = t.at("grid");
        d.noise = t.at("noise");
        for (auto it = t.at("truth_ranges").begin(); it != t.at("truth_ranges").end(); ++it)
            d.truth_ranges[it.key()] = {it.value()[0].get<double>(),
                                        it.value()[1].get<double>()};
        d.problem_statement = t.at("context").at("problem_statement").get<std::string>();
        d.null_hypothesis = t.at("context").at("null_hypothesis").get<std::string>();
        d.prior_context = t.at("context").at("prior_context").get<std::string>();
        defs->push_back(std::move(d));
    }
    cache[path] = defs;
    return *cache[path];
}

inline const TaskDefinition& task_definition(const std::string& task_id) {
    for (const auto& d : task_manifest())
        if (d.task_id == task_id) return d;
    throw UnknownTask(task_id);
}

inline std::vector<std::string> all_task_ids() {
    std::vector<std::string> ids;
    for (const auto& d : task_manifest()) ids.push_back(d.task_id);
    return ids;
}

inline std::vector<double> build_grid(const nlohmann::json& g) {
    std::vector<double> grid;
    const std::string kind = g.at("kind").get<std::string>();
    if (kind == "linspace") {
        const double lo = g.at("min").get<double>();
        const double hi = g.at("max").get<double>();
        const std::size_t n = g.at("n").get<std::size_t>();
        grid.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    } else if (kind == "range") {
        const double start = g.at("start").get<double>();
        const double stop = g.at("stop").get<double>();
        const double step = g.at("step").get<double>();
        for (double x = start; x <= stop + 1e-9; x += step) grid.push_back(x);
    } else {
        throw Error("unknown grid kind: " + kind);
    }
    return grid;
}

// Truth parameters drawn uniformly within the manifest ranges, in registry
// parameter order.
inline std::vector<double> draw_truth_params(const TaskDefinition& task, Rng& rng) {
    const ModelSpec& spec = model_spec(task.truth_model_id);
    std::vector<double> params;
    params.reserve(spec.n_params());
    for (const auto& name : spec.param_names) {
        auto it = task.truth_ranges.find(name);
        if (it == task.truth_ranges.end())
            throw Error("manifest missing truth range for " + name + " in " + task.task_id);
        params.push_back(rng.uniform(it->second.first, it->second.second));
    }
    return params;
}

inline std::uint64_t task_stream(const std::string& task_id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : task_id) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    return h;
}

inline Dataset generate_dataset(const std::string& task_id, std::uint64_t seed) {
    const TaskDefinition& task = task_definition(task_id);
    const FamilyKeys keys = family_keys(task.family);
    const std::vector<double> grid = build_grid(task.grid);

    Rng truth_rng(mix_seed(seed, task_stream(task_id)), 1);
    Rng noise_rng(mix_seed(seed, task_stream(task_id)), 2);

    const std::vector<double> truth = draw_truth_params(task, truth_rng);
    const std::vector<double> clean = eval_model(task.truth_model_id, truth, grid);

    const std::string noise_kind = task.noise.at("kind").get<std::string>();
    std::vector<double> sigma(grid.size(), 0.0);
    double meta_sigma = 0.0;
    if (noise_kind == "constant_meta") {
        meta_sigma = task.noise.at("sigma").get<double>();
        std::fill(sigma.begin(), sigma.end(), meta_sigma);
    } else if (noise_kind == "constant_array") {
        std::fill(sigma.begin(), sigma.end(), task.noise.at("sigma").get<double>());
    } else if (noise_kind == "varied_array") {
        const double base = task.noise.at("sigma").get<double>();
        const double spread = task.noise.at("spread").get<double>();
        for (auto& s : sigma) s = base * (1.0 + spread * (2.0 * noise_rng.uniform() - 1.0));
    } else if (noise_kind == "relative_floor") {
        const double fraction = task.noise.at("fraction").get<double>();
        const double floor = task.noise.at("floor").get<double>();
        for (std::size_t i = 0; i < grid.size(); ++i)
            sigma[i] = fraction * std::abs(clean[i]) + floor;
    } else {
        throw Error("unknown noise kind: " + noise_kind);
    }

    std::vector<double> observed(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        observed[i] = clean[i] + sigma[i] * noise_rng.normal();

    Dataset ds;
    ds.add(keys.x, grid);
    ds.add(keys.y, observed);
    if (keys.sigma != nullptr) ds.add(keys.sigma, sigma);
    ds.meta.task_id = task_id;
    ds.meta.seed = seed;
    ds.meta.noise_sigma = meta_sigma;
    ds.meta.truth_present = true;
    ds.meta.truth_model_id = task.truth_model_id;
    ds.meta.truth_params = truth;
    ds.validate();
    return ds;
}

// Noiseless variant used by identifiability checks.
inline Dataset generate_noiseless(const std::string& task_id, std::uint64_t seed) {
    const TaskDefinition& task = task_definition(task_id);
    const FamilyKeys keys = family_keys(task.family);
    const std::vector<double> grid = build_grid(task.grid);
    Rng truth_rng(mix_seed(seed, task_stream(task_id)), 1);
    const std::vector<double> truth = draw_truth_params(task, truth_rng);
    const std::vector<double> clean = eval_model(task.truth_model_id, truth, grid);

    Dataset ds;
    ds.add(keys.x, grid);
    ds.add(keys.y, clean);
    if (keys.sigma != nullptr) {
        std::vector<double> sigma(grid.size(), 1.0);
        if (task.noise.contains("sigma"))
            std::fill(sigma.begin(), sigma.end(), task.noise.at("sigma").get<double>());
        ds.add(keys.sigma, sigma);
    }
    ds.meta.task_id = task_id;
    ds.meta.seed = seed;
    ds.meta.noise_sigma = task.noise.value("sigma", 1.0);
    ds.meta.truth_present = true;
    ds.meta.truth_model_id = task.truth_model_id;
    ds.meta.truth_params = truth;
    return ds;
}

} // namespace plotsteer::models
