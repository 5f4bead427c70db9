#pragma once

#include "buneman/io.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

// the worked example used throughout: nine splits on {1..8}, whose Buneman
// graph has a 4-cycle block, an 8-vertex block, three bridges and 4 cut
// vertices (file order: S0={1,3} S1={1,2} S2={1,2,3} S3={1,2,3,5} S4={4,5}
// S5={1,2,3,4} S6={6,7} S7={7,8} S8={5})
inline buneman::SystemPtr sigma8() {
    return buneman::load_split_file(std::string(BUNEMAN_DATA_DIR) + "/sigma8.splits");
}

inline buneman::SystemPtr system_of(const std::vector<std::string>& labels,
                                    const std::vector<std::vector<int>>& parts) {
    buneman::GroundSet ground(labels);
    std::vector<buneman::Bitset> raw;
    raw.reserve(parts.size());
    for (const auto& p : parts)
        raw.push_back(buneman::Bitset::from_indices(
            static_cast<std::size_t>(ground.size()), p));
    return buneman::make_split_system(std::move(ground), raw);
}

inline std::vector<std::string> numbered_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

// the compatible companion system: its unique tree realization matches the
// reduced tree of sigma8
inline buneman::SystemPtr sigma8_prime() {
    return system_of(numbered_labels(8),
                     {{0}, {1}, {2}, {0, 1, 2}, {3}, {4}, {5, 6, 7}, {5}, {6}, {7}});
}

// small rejection sampler, independent of the library generators
inline buneman::SystemPtr random_fixture_system(std::mt19937& rng, int n, int m) {
    std::vector<buneman::Bitset> raw;
    std::set<buneman::Bitset> seen;
    std::uniform_int_distribution<int> coin(0, 1);
    int guard = 0;
    while (static_cast<int>(raw.size()) < m && ++guard < 2000) {
        buneman::Bitset b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            if (coin(rng)) b.set(static_cast<std::size_t>(i));
        if (b.none() || (~b).none()) continue;
        buneman::Bitset canon = b.test(0) ? b : ~b;
        if (seen.insert(canon).second) raw.push_back(canon);
    }
    if (raw.empty())
        raw.push_back(buneman::Bitset::from_indices(static_cast<std::size_t>(n), {0}));
    return buneman::make_split_system(buneman::GroundSet(numbered_labels(n)), raw);
}
