#pragma once

// Seeded random instances for property tests and benchmarks.

#include <cstdint>
#include <random>
#include <vector>

#include "strata/firstorder.hpp"
#include "strata/kb.hpp"

namespace strata::gen {

using Rng = std::mt19937_64;

struct MixedParams {
    std::size_t atoms = 8;
    std::size_t rules = 12;
    std::size_t max_body = 3;
    double negative = 0.4;  // chance that a body literal is negated
    double facts = 0.1;     // chance that a rule is a unit rule
};

/// Atoms p0..p{n-1} interned up front, so ids are dense even when unused.
KnowledgeBase mixed_program(Rng& rng, const MixedParams& p);

/// Draws MixedParams within the given bounds (atoms 1..max_atoms, rules
/// 0..max_rules, negative density uniform in [0, 0.8]).
MixedParams draw_params(Rng& rng, std::size_t max_atoms, std::size_t max_rules);

struct LayeredParams {
    std::size_t atoms = 100;
    std::size_t layer_width = 5;
    std::size_t rules_per_atom = 2;
    std::size_t max_body = 3;
    double negative = 0.3;
};

/// Stratified by construction: negative literals only reach lower layers.
KnowledgeBase layered_program(Rng& rng, const LayeredParams& p);

std::vector<Nogood> random_nogoods(Rng& rng, std::size_t atoms, std::size_t count, std::size_t max_size = 3);

struct FoParams {
    std::size_t constants = 2;
    std::size_t max_herbrand = 14;  // bound on the Herbrand base size
    std::size_t rules = 6;
    std::size_t facts = 3;
    double negative = 0.35;
};

/// A safe function-free program whose Herbrand base stays within bounds.
fo::Program fo_program(Rng& rng, const FoParams& p);

}  // namespace strata::gen
