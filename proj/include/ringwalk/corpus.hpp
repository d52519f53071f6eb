#pragma once

#include <iosfwd>

#include "ringwalk/verify.hpp"

namespace ringwalk {

/// One bundled regression case: a ring, a module over it, a randomized
/// rational P already symmetrized over unit orbits, and a randomized Q.
/// Generated deterministically (fixed seeds), so reports are reproducible.
struct CorpusCase {
    std::string name;
    RingPtr ring;
    ModulePtr module;
    Distribution p;
    Distribution q;
    bool uniform_p = false;
};

std::vector<CorpusCase> build_corpus();

// The per-case walk battery: coin-toss at alpha in {0, 1/3, 1/2, 1},
// the affine walk, and the polynomial walk p(x,y) = x^2 y.
std::vector<std::pair<std::string, WalkSpec>> corpus_walks(const CorpusCase& c);

struct CorpusWalkResult {
    std::string walk;
    double max_residual = 0;
    bool pass = false;
    bool sufficiency_sound = true; // sufficient conditions never contradict exact
};

struct CorpusCaseResult {
    std::string name;
    int module_size = 0;
    bool count_identity = false;
    std::vector<CorpusWalkResult> walks;
    bool all_pass = false;
};

CorpusCaseResult run_corpus_case(const CorpusCase& c, double tol);

// Runs every case, streaming one summary line per case; returns an exit code.
int run_corpus(double tol, std::ostream& log);

} // namespace ringwalk
