#pragma once
// Exception hierarchy shared by all plotsteer modules.

#include <stdexcept>
#include <string>
#include <utility>

namespace plotsteer {

// Base class; every module-specific error derives from this.
class Error : public std::runtime_error {
public:
    explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// -- schema ------------------------------------------------------------
class MalformedDocument : public Error {
public:
    explicit MalformedDocument(const std::string& why)
        : Error("malformed document: " + why) {}
};

class SchemaViolation : public Error {
public:
    SchemaViolation(std::string field_, const std::string& reason)
        : Error("schema violation [" + field_ + "]: " + reason),
          field(std::move(field_)) {}
    std::string field;
};

// -- gateway -----------------------------------------------------------
class BackendUnreachable : public Error {
public:
    explicit BackendUnreachable(const std::string& why)
        : Error("backend unreachable: " + why) {}
};

class AuthFailure : public Error {
public:
    explicit AuthFailure(const std::string& why) : Error("auth failure: " + why) {}
};

class AttemptsExhausted : public Error {
public:
    AttemptsExhausted(int attempts, std::string last_violation_)
        : Error("attempts exhausted after " + std::to_string(attempts) +
                " tries; last violation: " + last_violation_),
          last_violation(std::move(last_violation_)) {}
    std::string last_violation;
};

class UnknownModel : public Error {
public:
    explicit UnknownModel(const std::string& id) : Error("unknown model: " + id) {}
};

// -- rubric ------------------------------------------------------------
class MissingBinding : public Error {
public:
    explicit MissingBinding(std::string placeholder_)
        : Error("missing binding: {" + placeholder_ + "}"),
          placeholder(std::move(placeholder_)) {}
    std::string placeholder;
};

class UnknownTemplate : public Error {
public:
    explicit UnknownTemplate(const std::string& id) : Error("unknown template: " + id) {}
};

// -- workflow ----------------------------------------------------------
class IllegalVerdictForMode : public Error {
public:
    explicit IllegalVerdictForMode(const std::string& what)
        : Error("illegal verdict for mode: " + what) {}
};

class FixActionUnavailable : public Error {
public:
    explicit FixActionUnavailable(const std::string& what)
        : Error("no registered fix action: " + what) {}
};

class ExperimentSetInvalid : public Error {
public:
    explicit ExperimentSetInvalid(const std::string& why)
        : Error("experiment set invalid: " + why) {}
};

class MissingResult : public Error {
public:
    explicit MissingResult(int index)
        : Error("missing fit result for experiment " + std::to_string(index)) {}
};

class IncompleteContext : public Error {
public:
    explicit IncompleteContext(const std::string& what)
        : Error("incomplete shared context: " + what) {}
};

// -- scimodels / fitmetrics ---------------------------------------------
class UnknownTask : public Error {
public:
    explicit UnknownTask(const std::string& id) : Error("unknown task: " + id) {}
};

class ParamArityMismatch : public Error {
public:
    ParamArityMismatch(const std::string& model, std::size_t got, std::size_t want)
        : Error("param arity mismatch for " + model + ": got " + std::to_string(got) +
                ", want " + std::to_string(want)) {}
};

class NonPhysicalState : public Error {
public:
    explicit NonPhysicalState(const std::string& why)
        : Error("non-physical integrator state: " + why) {}
};

class MissingTable : public Error {
public:
    explicit MissingTable(const std::string& path)
        : Error("missing fiducial table: " + path) {}
};

class LengthMismatch : public Error {
public:
    explicit LengthMismatch(const std::string& what) : Error("length mismatch: " + what) {}
};

class NonPositiveSigma : public Error {
public:
    explicit NonPositiveSigma(std::size_t index)
        : Error("non-positive sigma at index " + std::to_string(index)) {}
};

class KeyMismatch : public Error {
public:
    explicit KeyMismatch(const std::string& what) : Error("dataset key mismatch: " + what) {}
};

class AllStartsFailed : public Error {
public:
    explicit AllStartsFailed(const std::string& why)
        : Error("all optimizer starts failed: " + why) {}
};

class DegenerateSigns : public Error {
public:
    DegenerateSigns() : Error("runs test: all residuals share one sign") {}
};

// -- bench / cli ---------------------------------------------------------
class DomainError : public Error {
public:
    explicit DomainError(const std::string& why) : Error("domain error: " + why) {}
};

class InsufficientRuns : public Error {
public:
    explicit InsufficientRuns(const std::string& task)
        : Error("insufficient runs for task " + task) {}
};

class UnknownFault : public Error {
public:
    explicit UnknownFault(const std::string& id) : Error("unknown fault: " + id) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& why) : Error("config error: " + why) {}
};

class WriteFailure : public Error {
public:
    explicit WriteFailure(const std::string& path) : Error("write failure: " + path) {}
};

} // namespace plotsteer
