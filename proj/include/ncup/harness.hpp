#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncup/extremizers.hpp"
#include "ncup/rng.hpp"
#include "ncup/twobox.hpp"

namespace ncup {

struct SampleSpec {
    enum class Class {
        Generic,
        Positive,
        SelfAdjoint,
        Projection,
        PartialIsometry,
        Unitary,
        Sparse,
        BiunitaryCandidate,
    };
    Class cls = Class::Generic;
    bool minus_side = false;
    int sparse_k = 1;
};

// Deterministic in (master_seed, stream, index): concurrent and serial runs
// draw identical elements.
AlgebraElement sample_element(const TwoBoxPair& pair, const SampleSpec& spec,
                              uint64_t master_seed, uint64_t stream, uint64_t index);

struct Counterexample {
    uint64_t index = 0;
    uint64_t master_seed = 0;
    double margin = 0;
    std::string element_json;  // serialized witnesses
};

struct CheckReport {
    std::string name;
    std::string model;
    std::string suite;  // filter tag
    long samples = 0;
    double tolerance = 0;
    double min_margin = 0;
    double max_violation = 0;
    std::vector<long> histogram;  // fixed decade bins, see kHistogramEdges
    std::vector<Counterexample> counterexamples;
    bool probe = false;
    bool pass = true;
    std::map<std::string, double> stats;
    double wall_ms = 0;  // reported to stderr only, never serialized
};

inline const std::vector<double>& histogram_edges() {
    static const std::vector<double> edges = {-1e-6, -1e-9, 0.0,  1e-12, 1e-9,
                                              1e-6,  1e-3,  1.0,  1e3};
    return edges;
}

struct Tolerances {
    double equality = 1e-8;
    double inequality = 1e-9;
    double rank = 1e-6;
};

struct SuiteConfig {
    std::vector<std::string> models;
    long samples = 500;
    uint64_t seed = kDefaultSeed;
    int parallelism = 1;
    std::vector<std::string> suites;  // empty = everything
    Tolerances tol;
    long tao_budget = 100000;
    std::string out_path;
    std::string format = "json";
};

// Margin helpers shared by the harness and the acceptance suite. Margins are
// oriented so a check passes when margin >= -tolerance.
std::vector<double> hausdorff_young_margins(const TwoBoxPair& pair, const AlgebraElement& x,
                                            const std::vector<double>& p_grid);
const std::vector<double>& default_p_grid();

struct YoungTriple {
    double p, q, r;
};
const std::vector<YoungTriple>& default_young_grid();
std::vector<double> young_margins(const TwoBoxPair& pair, const AlgebraElement& x,
                                  const AlgebraElement& y,
                                  const std::vector<YoungTriple>& grid);

double donoho_stark_margin(const TwoBoxPair& pair, const AlgebraElement& x);
double hirschman_beckner_margin(const TwoBoxPair& pair, const AlgebraElement& x);

// True when the uncertainty constant is the loop parameter itself (group
// models and transitive fixed-point actions); the sharpness anchors of the
// inequalities are asserted only there.
bool irreducible_model(const TwoBoxPair& pair);

// The model's standard Donoho-Stark equality witness: a point mass for the
// group model, a single matrix unit for the spin model, the diagonal
// indicator of a smallest orbit for fixed-point models.
AlgebraElement minimal_box(const TwoBoxPair& pair);

// Deterministic full-suite run; reports are independent of the parallelism
// degree and of execution order.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

bool suite_failed(const std::vector<CheckReport>& reports);  // ignores probes

}  // namespace ncup
