#pragma once

#include "buneman/io.hpp"

#include <random>
#include <string>

namespace buneman {

struct CheckOptions {
    unsigned seed = 20260814;
    int systems = 100;   // sweep size for run_random_checks
    int min_n = 3;       // ground-set size range for generated systems
    int max_n = 7;
    int min_m = 2;       // split-count range
    int max_m = 6;
    int sample_cap = 64; // per-system cap on sampled pairs/triples
    bool deep = true;    // enable the verify postconditions inside library calls
};

struct CheckItem {
    std::string name;
    long long cases = 0;
    bool passed = true;
    std::string detail;  // first failure, empty when passed
};

struct CheckReport {
    std::vector<CheckItem> items;
    long long systems = 0;

    bool all_passed() const {
        for (const auto& item : items)
            if (!item.passed) return false;
        return true;
    }
};

// Random proper duplicate-free split system; m is clamped to the number of
// distinct splits available.
SystemPtr random_system(std::mt19937& rng, int n, int m);
// Pairwise compatible system (random laminar family of 0-free parts).
SystemPtr random_compatible_system(std::mt19937& rng, int n, int m);
// System guaranteed to contain at least one incompatible pair (needs n >= 4).
SystemPtr random_incompatible_system(std::mt19937& rng, int n, int m);

// Full invariant suite on a single system: enumeration cross-check, BFS
// distances, medians, geodesic counts, six-way cut verdicts vs the removal
// oracle, block/gate/separation identities, trees, serialization round trip.
CheckReport run_checks(const SystemPtr& sys, const CheckOptions& opts = {});

// Sweep: run_checks over random systems plus the tree-iff-compatible and
// 4-cycle-when-incompatible families, with per-item results merged.
CheckReport run_random_checks(const CheckOptions& opts = {});

} // namespace buneman
