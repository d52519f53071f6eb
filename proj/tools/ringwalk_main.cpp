#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ringwalk/corpus.hpp"
#include "ringwalk/experiment.hpp"

using namespace ringwalk;

namespace {

struct CommonArgs {
    std::string spec_path;
    std::string out_dir;
    double tol = -1;
    bool symmetrize = false;
    bool dot = false;
    std::string paths;
    double perturb = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_verify_knobs) {
    cmd->add_option("--spec", args.spec_path, "experiment spec (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: current directory)");
    cmd->add_flag("--symmetrize", args.symmetrize,
                  "average P over unit orbits instead of rejecting it");
    cmd->add_flag("--dot", args.dot, "also write graph.dot for the transition graph");
    if (with_verify_knobs) {
        cmd->add_option("--tol", args.tol, "power-sum verification tolerance (default 1e-8)");
        cmd->add_option("--paths", args.paths,
                        "comma-separated prediction routes: general,triple,frobenius,uniform");
        cmd->add_option("--perturb", args.perturb,
                        "shift one predicted eigenvalue by this amount (negative control)");
    }
}

RunOverrides to_overrides(const CommonArgs& args) {
    RunOverrides ov;
    if (!args.out_dir.empty()) ov.out_dir = args.out_dir;
    if (args.tol > 0) ov.tol = args.tol;
    if (args.symmetrize) ov.symmetrize = true;
    if (args.dot) ov.emit_dot = true;
    if (!args.paths.empty()) {
        std::vector<std::string> p;
        std::string cur;
        for (char c : args.paths + ",") {
            if (c == ',') {
                if (!cur.empty()) p.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        ov.paths = p;
    }
    ov.perturb = args.perturb;
    return ov;
}

int run_stage(const CommonArgs& args, RunStage stage) {
    try {
        ExperimentSpec spec = load_spec_file(args.spec_path);
        return run_experiment(spec, stage, to_overrides(args), std::cout);
    } catch (const SpecError& e) {
        std::cerr << e.what() << "\n";
        return kExitSpecError;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitIoError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSpecError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ringwalk: exact spectra of coin-toss and affine random walks on finite modules"};
    app.require_subcommand(1);

    CommonArgs build_args, spectrum_args, verify_args;
    CLI::App* build = app.add_subcommand("build", "construct the transition matrix (matrix.csv)");
    add_common(build, build_args, false);
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "predict the spectrum (spectrum.json, spectrum.csv)");
    add_common(spectrum, spectrum_args, true);
    CLI::App* verify = app.add_subcommand(
        "verify", "build, predict and verify by exact power sums (verification.json)");
    add_common(verify, verify_args, true);

    double corpus_tol = 1e-8;
    CLI::App* corpus = app.add_subcommand("corpus", "run the bundled regression corpus");
    corpus->add_option("--tol", corpus_tol, "verification tolerance (default 1e-8)");

    CLI::App* selftest = app.add_subcommand(
        "selftest", "verify the bundled case and check that a perturbed spectrum fails");

    CLI11_PARSE(app, argc, argv);

    if (build->parsed()) return run_stage(build_args, RunStage::Build);
    if (spectrum->parsed()) return run_stage(spectrum_args, RunStage::Spectrum);
    if (verify->parsed()) return run_stage(verify_args, RunStage::Verify);
    if (corpus->parsed()) return run_corpus(corpus_tol, std::cout);
    if (selftest->parsed()) return run_selftest(std::cout);
    return kExitSpecError;
}
