#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ringwalk/verify.hpp"

namespace ringwalk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitIoError = 3;

enum class SpecErrorCode {
    MalformedJson,
    UnknownKey,
    MissingKey,
    WrongType,
    BadValue,
    BadRational,
    AlphaRange,
    WeightsSum,
    WeightsLength,
    NegativeWeight,
    ReduciblePolynomial,
    BadRingDescriptor,
    BadModuleDescriptor,
    BadWalkDescriptor,
    HypothesisViolation,
    PathInapplicable,
};
const char* spec_error_code_name(SpecErrorCode code);

struct SpecIssue {
    SpecErrorCode code;
    std::string path; // JSON-pointer-style location inside the document
    std::string message;
};

class SpecError : public Error {
public:
    explicit SpecError(std::vector<SpecIssue> issues);
    const std::vector<SpecIssue>& issues() const { return issues_; }

private:
    std::vector<SpecIssue> issues_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

struct ExperimentOptions {
    double tol = 1e-8;
    bool symmetrize = false;
    std::vector<std::string> paths = {"general"}; // general|triple|frobenius|uniform
    std::string out_dir;
    bool emit_dot = false;
};

/// A fully validated experiment: ring and module already constructed, P and
/// Q resolved to exact rationals. Throws SpecError with one issue per
/// problem found.
struct ExperimentSpec {
    RingPtr ring;
    ModulePtr module;
    WalkSpec walk;
    ExperimentOptions options;
    std::string canonical_json; // deterministic echo of the parsed spec
};

ExperimentSpec parse_spec(const std::string& text);
ExperimentSpec load_spec_file(const std::string& path);

enum class RunStage { Build, Spectrum, Verify };

struct RunOverrides {
    std::optional<double> tol;
    std::optional<bool> symmetrize;
    std::optional<std::vector<std::string>> paths;
    std::optional<std::string> out_dir;
    std::optional<bool> emit_dot;
    double perturb = 0.0; // negative-control knob: shifts one predicted eigenvalue
};

// Runs build -> predict -> verify up to `stage`, writing matrix.csv,
// spectrum.json/.csv and verification.json into the output directory.
// Returns one of the kExit* codes.
int run_experiment(const ExperimentSpec& spec, RunStage stage, const RunOverrides& overrides,
                   std::ostream& log);

// Serialization used by the CLI; exposed so round-trips are testable.
std::string matrix_to_csv(const TransitionMatrix& t);
std::string matrix_to_dot(const TransitionMatrix& t);
std::string spectrum_reports_to_json(const std::vector<SpectrumReport>& reports,
                                     const FiniteModule& v);
std::vector<SpectrumReport> spectrum_reports_from_json(const std::string& text);
std::string grouped_spectrum_to_csv(const SpectrumReport& report);

// The bundled Z/4 regression spec (the worked example with
// P = (2/5,1/5,1/5,1/5), Q = (1/10,3/10,1/5,2/5)).
const char* builtin_z4_affine_spec();

// Self-check: the bundled case must verify, and a deliberately perturbed
// spectrum must fail verification. Returns an exit code.
int run_selftest(std::ostream& log);

} // namespace ringwalk
