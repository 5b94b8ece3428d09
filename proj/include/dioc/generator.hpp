#pragma once

#include <cstdint>

#include "dioc/ast.hpp"

namespace dioc {

/// Relative frequencies of the constructs drawn at inner nodes.
struct ConstructWeights {
    int seq = 4;
    int par = 2;
    int if_ = 2;
    int while_ = 1;
    int scope = 2;
    int leaf = 3;
};

struct GeneratorConfig {
    int max_depth = 3;
    int roles = 2;           // roles are named A, B, C, ...
    int value_domain = 3;    // integer literals are drawn from [0, value_domain)
    int max_iterations = 2;  // upper bound of generated while counters
    ConstructWeights weights;
    bool repair = true;      // make every sequential composition connected
};

/// Random annotated choreography, deterministic in `seed`. Depth 0 gives `1`.
DiocProc gen_dioc(const GeneratorConfig& cfg, std::uint64_t seed);

/// Repository of small scope-free updates over at most two roles of the configuration.
UpdateRepo gen_updates(const GeneratorConfig& cfg, std::uint64_t seed, int count = 1);

/// State where every role holds `x = 0` and `y = 1`; generated programs read these variables.
GlobalState generator_state(const GeneratorConfig& cfg);

}  // namespace dioc
