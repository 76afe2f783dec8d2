#pragma once
// Structured types exchanged between agents, plus validation of untrusted
// documents against them. Documents are UTF-8 JSON key-value trees. Unknown
// fields are ignored so judge backends may attach commentary without breaking
// routing; enum strings match case-insensitively with whitespace stripped.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "plotsteer/errors.hpp"

namespace plotsteer::schema {

using json = nlohmann::json;

enum class Verdict { Continue, Retry, Explore };
enum class Mode { Correction, Discovery };
enum class ComparisonMetric { Chi2, ReducedChi2, BIC };

enum class SchemaKind {
    PlotJudgment,
    PlotScientistReport,
    FixPlan,
    ExperimentSpec,
    ExperimentSet,
    WinnerSelection,
    Rubric,
    CriteriaList,
    NarrativeSections,
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct CriterionResult {
    bool pass = true;
    std::string note;
    bool operator==(const CriterionResult&) const = default;
};

struct PlotJudgment {
    Verdict verdict = Verdict::Continue;
    std::vector<std::string> problems;
    std::map<std::string, CriterionResult> per_criterion;
    std::string raw;
    bool operator==(const PlotJudgment&) const = default;
};

struct PlotScientistReport {
    Verdict verdict = Verdict::Continue;
    std::vector<std::string> observations;
    std::vector<std::string> potential_causes;
    std::vector<std::string> signals_to_investigate;
    std::string raw;
    bool operator==(const PlotScientistReport&) const = default;
};

struct Fix {
    std::string target;  // line reference or region description
    std::string change;
    bool operator==(const Fix&) const = default;
};

struct FixPlan {
    std::vector<Fix> fixes;
    std::string root_cause_note;
    bool operator==(const FixPlan&) const = default;
};

struct ExperimentSpec {
    int index = 1;  // 1-based; index 1 is the baseline (null-hypothesis) model
    std::string name;
    std::string model_id;
    std::map<std::string, std::pair<double, double>> prior_ranges;
    std::string implementation_notes;
    bool operator==(const ExperimentSpec&) const = default;
};

struct ExperimentSet {
    std::vector<ExperimentSpec> experiments;  // 3 to 5, indices 1..n
    ComparisonMetric comparison_metric = ComparisonMetric::BIC;
    std::string rationale;
    bool operator==(const ExperimentSet&) const = default;
};

struct WinnerSelection {
    int winner_index = 1;
    std::string reasoning;
    std::map<int, double> metric_table;
    bool operator==(const WinnerSelection&) const = default;
};

struct Rubric {
    std::vector<std::string> visual_clarity;
    std::vector<std::string> completeness;
    std::vector<std::string> presentation;
    std::vector<std::string> scientific_accuracy;  // dynamic, task-specific
    Mode mode = Mode::Correction;
    bool operator==(const Rubric&) const = default;
};

struct CriteriaList {
    std::vector<std::string> criteria;
    bool operator==(const CriteriaList&) const = default;
};

struct NarrativeSections {
    std::string initial_setup;
    std::string discovery_moment;
    std::string investigation;
    std::string realization;
    std::string updated_understanding;
    bool operator==(const NarrativeSections&) const = default;
};

using ParsedAny = std::variant<PlotJudgment, PlotScientistReport, FixPlan, ExperimentSpec,
                               ExperimentSet, WinnerSelection, Rubric, CriteriaList,
                               NarrativeSections>;

// ---------------------------------------------------------------------------
// Enum names
// ---------------------------------------------------------------------------

inline std::string trim_lower(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Continue: return "continue";
        case Verdict::Retry: return "retry";
        case Verdict::Explore: return "explore";
    }
    return "continue";
}

inline const char* to_string(Mode m) {
    return m == Mode::Correction ? "correction" : "discovery";
}

inline const char* to_string(ComparisonMetric m) {
    switch (m) {
        case ComparisonMetric::Chi2: return "chi2";
        case ComparisonMetric::ReducedChi2: return "reduced_chi2";
        case ComparisonMetric::BIC: return "bic";
    }
    return "bic";
}

inline Verdict parse_verdict(const std::string& s, const char* field) {
    const std::string t = trim_lower(s);
    if (t == "continue") return Verdict::Continue;
    if (t == "retry") return Verdict::Retry;
    if (t == "explore") return Verdict::Explore;
    throw SchemaViolation(field, "unknown verdict '" + s + "'");
}

inline Mode parse_mode(const std::string& s, const char* field) {
    const std::string t = trim_lower(s);
    if (t == "correction") return Mode::Correction;
    if (t == "discovery") return Mode::Discovery;
    throw SchemaViolation(field, "unknown mode '" + s + "'");
}

inline ComparisonMetric parse_metric(const std::string& s, const char* field) {
    const std::string t = trim_lower(s);
    if (t == "chi2") return ComparisonMetric::Chi2;
    if (t == "reduced_chi2" || t == "reducedchi2") return ComparisonMetric::ReducedChi2;
    if (t == "bic") return ComparisonMetric::BIC;
    throw SchemaViolation(field, "unknown comparison metric '" + s + "'");
}

inline const char* to_string(SchemaKind k) {
    switch (k) {
        case SchemaKind::PlotJudgment: return "plot_judgment";
        case SchemaKind::PlotScientistReport: return "plot_scientist_report";
        case SchemaKind::FixPlan: return "fix_plan";
        case SchemaKind::ExperimentSpec: return "experiment_spec";
        case SchemaKind::ExperimentSet: return "experiment_set";
        case SchemaKind::WinnerSelection: return "winner_selection";
        case SchemaKind::Rubric: return "rubric";
        case SchemaKind::CriteriaList: return "criteria_list";
        case SchemaKind::NarrativeSections: return "narrative_sections";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Field access helpers (missing / mistyped fields -> SchemaViolation)
// ---------------------------------------------------------------------------

namespace detail {

inline const json& require(const json& j, const char* field) {
    if (!j.is_object()) throw SchemaViolation(field, "parent is not an object");
    auto it = j.find(field);
    if (it == j.end()) throw SchemaViolation(field, "missing field");
    return *it;
}

inline std::string get_string(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_string()) throw SchemaViolation(field, "expected string");
    return v.get<std::string>();
}

inline std::string get_string_or(const json& j, const char* field, const std::string& dflt) {
    if (!j.is_object() || !j.contains(field)) return dflt;
    const json& v = j.at(field);
    if (!v.is_string()) throw SchemaViolation(field, "expected string");
    return v.get<std::string>();
}

inline double get_number(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_number()) throw SchemaViolation(field, "expected number");
    return v.get<double>();
}

inline int get_int(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_number_integer()) throw SchemaViolation(field, "expected integer");
    return v.get<int>();
}

inline std::vector<std::string> get_string_list(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_array()) throw SchemaViolation(field, "expected array");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_string()) throw SchemaViolation(field, "expected array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

inline json parse_tree(const std::string& doc) {
    json j = json::parse(doc, nullptr, false);
    if (j.is_discarded()) throw MalformedDocument("not a JSON key-value tree");
    if (!j.is_object()) throw MalformedDocument("top level is not a key-value tree");
    return j;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Per-type to_json / from_json with invariant enforcement
// ---------------------------------------------------------------------------

inline json to_json(const CriterionResult& c) {
    return json{{"status", c.pass ? "pass" : "fail"}, {"note", c.note}};
}

inline json to_json(const PlotJudgment& v) {
    json pc = json::object();
    for (const auto& [k, r] : v.per_criterion) pc[k] = to_json(r);
    return json{{"verdict", to_string(v.verdict)},
                {"problems", v.problems},
                {"per_criterion", pc},
                {"raw", v.raw}};
}

inline json to_json(const PlotScientistReport& v) {
    return json{{"verdict", to_string(v.verdict)},
                {"observations", v.observations},
                {"potential_causes", v.potential_causes},
                {"signals_to_investigate", v.signals_to_investigate},
                {"raw", v.raw}};
}

inline json to_json(const FixPlan& v) {
    json fixes = json::array();
    for (const auto& f : v.fixes) fixes.push_back(json{{"target", f.target}, {"change", f.change}});
    return json{{"fixes", fixes}, {"root_cause_note", v.root_cause_note}};
}

inline json to_json(const ExperimentSpec& v) {
    json pr = json::object();
    for (const auto& [name, range] : v.prior_ranges)
        pr[name] = json::array({range.first, range.second});
    return json{{"index", v.index},
                {"name", v.name},
                {"model_id", v.model_id},
                {"prior_ranges", pr},
                {"implementation_notes", v.implementation_notes}};
}

inline json to_json(const ExperimentSet& v) {
    json ex = json::array();
    for (const auto& e : v.experiments) ex.push_back(to_json(e));
    return json{{"experiments", ex},
                {"comparison_metric", to_string(v.comparison_metric)},
                {"rationale", v.rationale}};
}

inline json to_json(const WinnerSelection& v) {
    json table = json::object();
    for (const auto& [idx, val] : v.metric_table) table[std::to_string(idx)] = val;
    return json{{"winner_index", v.winner_index},
                {"reasoning", v.reasoning},
                {"metric_table", table}};
}

inline json to_json(const Rubric& v) {
    return json{{"visual_clarity", v.visual_clarity},
                {"completeness", v.completeness},
                {"presentation", v.presentation},
                {"scientific_accuracy", v.scientific_accuracy},
                {"mode", to_string(v.mode)}};
}

inline json to_json(const CriteriaList& v) { return json{{"criteria", v.criteria}}; }

inline json to_json(const NarrativeSections& v) {
    return json{{"initial_setup", v.initial_setup},
                {"discovery_moment", v.discovery_moment},
                {"investigation", v.investigation},
                {"realization", v.realization},
                {"updated_understanding", v.updated_understanding}};
}

// Judgment invariant: Continue <=> no problems <=> every criterion passes.
inline void check_judgment_consistency(const PlotJudgment& v) {
    const bool is_continue = v.verdict == Verdict::Continue;
    const bool no_problems = v.problems.empty();
    const bool all_pass = std::all_of(v.per_criterion.begin(), v.per_criterion.end(),
                                      [](const auto& kv) { return kv.second.pass; });
    if (is_continue != no_problems)
        throw SchemaViolation("problems", is_continue ? "continue requires empty problems"
                                                      : "retry requires non-empty problems");
    if (is_continue != all_pass)
        throw SchemaViolation("per_criterion", is_continue
                                                   ? "continue requires every criterion to pass"
                                                   : "retry requires at least one failed criterion");
}

inline PlotJudgment judgment_from_json(const json& j) {
    PlotJudgment out;
    out.verdict = parse_verdict(detail::get_string(j, "verdict"), "verdict");
    if (out.verdict == Verdict::Explore)
        throw SchemaViolation("verdict", "explore is not legal in correction mode");
    out.problems = detail::get_string_list(j, "problems");
    const json& pc = detail::require(j, "per_criterion");
    if (!pc.is_object()) throw SchemaViolation("per_criterion", "expected object");
    for (auto it = pc.begin(); it != pc.end(); ++it) {
        CriterionResult r;
        const std::string status = trim_lower(detail::get_string(it.value(), "status"));
        if (status == "pass")
            r.pass = true;
        else if (status == "fail")
            r.pass = false;
        else
            throw SchemaViolation("per_criterion", "status must be pass or fail");
        r.note = detail::get_string_or(it.value(), "note", "");
        out.per_criterion[it.key()] = r;
    }
    out.raw = detail::get_string_or(j, "raw", "");
    check_judgment_consistency(out);
    return out;
}

inline PlotScientistReport report_from_json(const json& j) {
    PlotScientistReport out;
    out.verdict = parse_verdict(detail::get_string(j, "verdict"), "verdict");
    if (out.verdict == Verdict::Retry)
        throw SchemaViolation("verdict", "retry is not legal in discovery mode");
    out.observations = detail::get_string_list(j, "observations");
    out.potential_causes = detail::get_string_list(j, "potential_causes");
    out.signals_to_investigate = detail::get_string_list(j, "signals_to_investigate");
    out.raw = detail::get_string_or(j, "raw", "");
    if (out.verdict == Verdict::Explore && out.observations.empty())
        throw SchemaViolation("observations", "explore requires non-empty observations");
    return out;
}

inline FixPlan fixplan_from_json(const json& j) {
    FixPlan out;
    const json& fixes = detail::require(j, "fixes");
    if (!fixes.is_array()) throw SchemaViolation("fixes", "expected array");
    for (const auto& f : fixes) {
        Fix fix;
        fix.target = detail::get_string(f, "target");
        fix.change = detail::get_string(f, "change");
        out.fixes.push_back(std::move(fix));
    }
    out.root_cause_note = detail::get_string_or(j, "root_cause_note", "");
    return out;
}

inline ExperimentSpec experiment_from_json(const json& j) {
    ExperimentSpec out;
    out.index = detail::get_int(j, "index");
    if (out.index < 1) throw SchemaViolation("index", "experiment indices are 1-based");
    out.name = detail::get_string(j, "name");
    out.model_id = detail::get_string(j, "model_id");
    const json& pr = detail::require(j, "prior_ranges");
    if (!pr.is_object()) throw SchemaViolation("prior_ranges", "expected object");
    for (auto it = pr.begin(); it != pr.end(); ++it) {
        const json& range = it.value();
        if (!range.is_array() || range.size() != 2 || !range[0].is_number() ||
            !range[1].is_number())
            throw SchemaViolation("prior_ranges", "range must be [lo, hi]");
        const double lo = range[0].get<double>();
        const double hi = range[1].get<double>();
        if (!(lo <= hi)) throw SchemaViolation("prior_ranges", "range must satisfy lo <= hi");
        out.prior_ranges[it.key()] = {lo, hi};
    }
    out.implementation_notes = detail::get_string_or(j, "implementation_notes", "");
    return out;
}

inline void check_experiment_set(const ExperimentSet& v) {
    const std::size_t n = v.experiments.size();
    if (n < 3 || n > 5)
        throw SchemaViolation("experiments", "expected 3 to 5 experiments, got " +
                                                 std::to_string(n));
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
        if (v.experiments[i].index != static_cast<int>(i) + 1)
            throw SchemaViolation("experiments", "indices must be contiguous 1..n");
        ids.push_back(v.experiments[i].model_id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw SchemaViolation("experiments", "model_ids must be distinct");
}

inline ExperimentSet experiment_set_from_json(const json& j) {
    ExperimentSet out;
    const json& ex = detail::require(j, "experiments");
    if (!ex.is_array()) throw SchemaViolation("experiments", "expected array");
    for (const auto& e : ex) out.experiments.push_back(experiment_from_json(e));
    out.comparison_metric =
        parse_metric(detail::get_string(j, "comparison_metric"), "comparison_metric");
    out.rationale = detail::get_string_or(j, "rationale", "");
    check_experiment_set(out);
    return out;
}

inline WinnerSelection winner_from_json(const json& j) {
    WinnerSelection out;
    out.winner_index = detail::get_int(j, "winner_index");
    out.reasoning = detail::get_string_or(j, "reasoning", "");
    const json& table = detail::require(j, "metric_table");
    if (!table.is_object()) throw SchemaViolation("metric_table", "expected object");
    for (auto it = table.begin(); it != table.end(); ++it) {
        int idx = 0;
        try {
            idx = std::stoi(it.key());
        } catch (...) {
            throw SchemaViolation("metric_table", "keys must be experiment indices");
        }
        if (!it.value().is_number())
            throw SchemaViolation("metric_table", "values must be numbers");
        out.metric_table[idx] = it.value().get<double>();
    }
    if (out.metric_table.find(out.winner_index) == out.metric_table.end())
        throw SchemaViolation("winner_index", "winner must appear in metric_table");
    return out;
}

inline Rubric rubric_from_json(const json& j) {
    Rubric out;
    out.visual_clarity = detail::get_string_list(j, "visual_clarity");
    out.completeness = detail::get_string_list(j, "completeness");
    out.presentation = detail::get_string_list(j, "presentation");
    out.scientific_accuracy = detail::get_string_list(j, "scientific_accuracy");
    out.mode = parse_mode(detail::get_string(j, "mode"), "mode");
    return out;
}

inline CriteriaList criteria_from_json(const json& j) {
    CriteriaList out;
    out.criteria = detail::get_string_list(j, "criteria");
    if (out.criteria.empty()) throw SchemaViolation("criteria", "expected at least one criterion");
    return out;
}

inline NarrativeSections narrative_from_json(const json& j) {
    NarrativeSections out;
    out.initial_setup = detail::get_string(j, "initial_setup");
    out.discovery_moment = detail::get_string(j, "discovery_moment");
    out.investigation = detail::get_string(j, "investigation");
    out.realization = detail::get_string(j, "realization");
    out.updated_understanding = detail::get_string(j, "updated_understanding");
    const struct { const char* name; const std::string* s; } sections[] = {
        {"initial_setup", &out.initial_setup},
        {"discovery_moment", &out.discovery_moment},
        {"investigation", &out.investigation},
        {"realization", &out.realization},
        {"updated_understanding", &out.updated_understanding},
    };
    for (const auto& s : sections)
        if (s.s->empty()) throw SchemaViolation(s.name, "section must be non-empty");
    return out;
}

// ---------------------------------------------------------------------------
// parse_structured / serialize_structured
// ---------------------------------------------------------------------------

inline ParsedAny parse_structured(const std::string& doc, SchemaKind kind) {
    const json j = detail::parse_tree(doc);
    switch (kind) {
        case SchemaKind::PlotJudgment: return judgment_from_json(j);
        case SchemaKind::PlotScientistReport: return report_from_json(j);
        case SchemaKind::FixPlan: return fixplan_from_json(j);
        case SchemaKind::ExperimentSpec: return experiment_from_json(j);
        case SchemaKind::ExperimentSet: return experiment_set_from_json(j);
        case SchemaKind::WinnerSelection: return winner_from_json(j);
        case SchemaKind::Rubric: return rubric_from_json(j);
        case SchemaKind::CriteriaList: return criteria_from_json(j);
        case SchemaKind::NarrativeSections: return narrative_from_json(j);
    }
    throw MalformedDocument("unhandled schema kind");
}

template <typename T>
T parse_as(const std::string& doc);

template <> inline PlotJudgment parse_as(const std::string& doc) {
    return std::get<PlotJudgment>(parse_structured(doc, SchemaKind::PlotJudgment));
}
template <> inline PlotScientistReport parse_as(const std::string& doc) {
    return std::get<PlotScientistReport>(parse_structured(doc, SchemaKind::PlotScientistReport));
}
template <> inline FixPlan parse_as(const std::string& doc) {
    return std::get<FixPlan>(parse_structured(doc, SchemaKind::FixPlan));
}
template <> inline ExperimentSpec parse_as(const std::string& doc) {
    return std::get<ExperimentSpec>(parse_structured(doc, SchemaKind::ExperimentSpec));
}
template <> inline ExperimentSet parse_as(const std::string& doc) {
    return std::get<ExperimentSet>(parse_structured(doc, SchemaKind::ExperimentSet));
}
template <> inline WinnerSelection parse_as(const std::string& doc) {
    return std::get<WinnerSelection>(parse_structured(doc, SchemaKind::WinnerSelection));
}
template <> inline Rubric parse_as(const std::string& doc) {
    return std::get<Rubric>(parse_structured(doc, SchemaKind::Rubric));
}
template <> inline CriteriaList parse_as(const std::string& doc) {
    return std::get<CriteriaList>(parse_structured(doc, SchemaKind::CriteriaList));
}
template <> inline NarrativeSections parse_as(const std::string& doc) {
    return std::get<NarrativeSections>(parse_structured(doc, SchemaKind::NarrativeSections));
}

template <typename T>
std::string serialize_structured(const T& value) {
    return to_json(value).dump(2);
}

inline std::string serialize_structured(const ParsedAny& value) {
    return std::visit([](const auto& v) { return to_json(v).dump(2); }, value);
}

// Builds a FixPlan from a retry judgment; one targeted fix per problem.
inline FixPlan make_fix_plan(const PlotJudgment& judgment) {
    if (judgment.verdict != Verdict::Retry)
        throw SchemaViolation("verdict", "fix plans are constructed from retry judgments");
    FixPlan plan;
    for (const auto& p : judgment.problems)
        plan.fixes.push_back(Fix{"flagged region: " + p, "address: " + p});
    if (plan.fixes.empty())
        throw SchemaViolation("fixes", "retry judgment carried no problems");
    plan.root_cause_note = "problems traced to a shared root cause where possible";
    return plan;
}

} // namespace plotsteer::schema
