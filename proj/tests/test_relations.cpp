#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "buneman/relations.hpp"
#include "buneman/splits.hpp"
#include "fixtures.hpp"

#include <functional>

using namespace buneman;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal_inconsistency;
}

using Pairs = std::vector<std::pair<int, int>>;

} // namespace

TEST_CASE("projections connect indices sharing a partner") {
    BiRelation r{3, 2, {{0, 0}, {1, 0}, {2, 1}}};
    CHECK(project_u(r) == Pairs{{0, 1}});
    CHECK(project_v(r) == Pairs{});

    BiRelation dup{2, 2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    CHECK(project_u(dup) == Pairs{{0, 1}}); // deduplicated
    CHECK(project_v(dup) == Pairs{{0, 1}});
}

TEST_CASE("component labels are shared across R, U and V") {
    BiRelation r{3, 3, {{0, 1}, {2, 1}, {1, 0}, {1, 2}}};
    ComponentMap cm = component_bijection(r);
    CHECK(cm.count == 2);
    CHECK(cm.labels_u == std::vector<int>{0, 1, 0});
    CHECK(cm.labels_v == std::vector<int>{1, 0, 1});
    CHECK(cm.labels_r == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("isolated indices are rejected") {
    CHECK(code_of([] { component_bijection({2, 1, {{0, 0}}}); }) == ErrorCode::isolated_vertex);
    CHECK(code_of([] { component_bijection({1, 2, {{0, 0}}}); }) == ErrorCode::isolated_vertex);
}

TEST_CASE("lifting along admissible maps keeps one component numbering") {
    // two components: {u0,u1} x {v0} and {u2} x {v1,v2}
    BiRelation r{3, 3, {{0, 0}, {1, 0}, {2, 1}, {2, 2}}};
    std::vector<int> alpha{0, 2};    // u'0 -> u0, u'1 -> u2
    std::vector<int> beta{0, 1, 2};  // identity
    LiftedComponentMap lifted = lifted_bijection(r, alpha, beta);
    CHECK(lifted.count == 2);
    CHECK(lifted.prime.count == 2);
    CHECK(lifted.alpha.count == 2);
    CHECK(lifted.beta.count == 2);
    // every map in the diagram is the identity on labels
    for (std::size_t up = 0; up < alpha.size(); ++up)
        CHECK(lifted.prime.labels_u[up] ==
              lifted.base.labels_u[static_cast<std::size_t>(alpha[up])]);
    for (std::size_t vp = 0; vp < beta.size(); ++vp)
        CHECK(lifted.prime.labels_v[vp] ==
              lifted.base.labels_v[static_cast<std::size_t>(beta[vp])]);
    CHECK(lifted.alpha.labels_v == lifted.base.labels_v);
    CHECK(lifted.beta.labels_u == lifted.base.labels_u);
    CHECK(lifted.r_prime.pairs == Pairs{{0, 0}, {1, 1}, {1, 2}});
}

TEST_CASE("inadmissible maps are rejected with the failing condition") {
    BiRelation r{2, 2, {{0, 0}, {1, 0}, {0, 1}}};
    // u0, u1 share v0, but the image of beta misses every common partner
    CHECK(code_of([&] { lifted_bijection(r, {0, 1}, {1}); }) == ErrorCode::m1_violation);
    // v0, v1 share u0, but the image of alpha misses every common partner
    CHECK(code_of([&] { lifted_bijection(r, {1}, {0, 1}); }) == ErrorCode::m2_violation);
}

TEST_CASE("compatibility is decided by an empty part intersection") {
    SystemPtr sys = sigma8();
    // {1,2} vs {1,2,3}: nested, hence compatible
    CHECK(is_compatible(sys->split(1), sys->split(2)));
    // {1,3} vs {1,2}: all four intersections on 8 elements are nonempty
    CHECK(!is_compatible(sys->split(0), sys->split(1)));
    // {4,5} vs {6,7}: disjoint small parts, compatible
    CHECK(is_compatible(sys->split(4), sys->split(6)));
    CHECK(is_compatible(sys->split(4), sys->split(4)));
    // symmetry on every pair
    for (int i = 0; i < sys->size(); ++i)
        for (int j = 0; j < sys->size(); ++j)
            CHECK(is_compatible(sys->split(i), sys->split(j)) ==
                  is_compatible(sys->split(j), sys->split(i)));
}

TEST_CASE("a_arrow picks the part meeting both sides of the other split") {
    SystemPtr sys = sigma8();
    const Split& s2 = sys->split(2); // {1,2,3}
    const Split& s0 = sys->split(0); // {1,3}
    const Bitset& arrow = a_arrow(s2, s0);
    CHECK(arrow == s2.part_a);
    CHECK(arrow.intersects(s0.part_a));
    CHECK(arrow.intersects(s0.part_b));
    // the reverse direction points at the complement side of {1,3}
    CHECK(a_arrow(s0, s2) == s0.part_b);

    CHECK(code_of([&] { a_arrow(s2, s2); }) == ErrorCode::identical_splits);
    CHECK(code_of([&] { a_arrow(sys->split(3), sys->split(4)); }) ==
          ErrorCode::incompatible_pair);
}

TEST_CASE("incompatibility graph of sigma8") {
    SystemPtr sys = sigma8();
    IncompatibilityGraph gamma = incompatibility_graph(*sys);
    CHECK(gamma.split_count == 9);
    CHECK(gamma.edges == Pairs{{0, 1}, {3, 4}, {3, 5}, {4, 5}, {6, 7}});
    CHECK(gamma.component_of == std::vector<int>{0, 0, 2, 3, 3, 3, 6, 6, 8});
    CHECK(gamma.component_ids == std::vector<int>{0, 2, 3, 6, 8});
    CHECK(gamma.components ==
          std::vector<std::vector<int>>{{0, 1}, {2}, {3, 4, 5}, {6, 7}, {8}});
    CHECK(gamma.component(3) == std::vector<int>{3, 4, 5});
    CHECK(gamma.component_index(6) == 3);
    CHECK(code_of([&] { gamma.component(1); }) == ErrorCode::unknown_component);
}

TEST_CASE("a_arrow into a component is well defined") {
    SystemPtr sys = sigma8();
    IncompatibilityGraph gamma = incompatibility_graph(*sys);
    const std::vector<int>& comp = gamma.component(3); // {S3, S4, S5}
    // verify re-derives the arrow against every member and asserts agreement
    const Bitset& arrow = a_arrow_component(*sys, 6, comp, true);
    CHECK(arrow == a_arrow(sys->split(6), sys->split(3)));
    CHECK(code_of([&] { a_arrow_component(*sys, 6, {}, false); }) ==
          ErrorCode::unknown_component);
}
