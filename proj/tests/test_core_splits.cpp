#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

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

} // namespace

TEST_CASE("bitset basics") {
    Bitset b(70);
    CHECK(b.size() == 70);
    CHECK(b.none());
    b.set(0);
    b.set(63);
    b.set(69);
    CHECK(b.count() == 3);
    CHECK(b.test(63));
    b.flip(63);
    CHECK(!b.test(63));
    CHECK(b.indices() == std::vector<int>{0, 69});
    Bitset c = Bitset::from_indices(70, {0, 5});
    CHECK(b.intersects(c));
    CHECK(!Bitset::from_indices(70, {5}).intersects(b));
    CHECK(Bitset::from_indices(70, {0}).is_subset_of(b));
    CHECK(!b.is_subset_of(c));
    CHECK((~b).count() == 68);
    CHECK((b ^ b).none());
    CHECK((b | c).count() == 3);
    CHECK((b & c) == Bitset::from_indices(70, {0}));
    CHECK(Bitset::full(70).count() == 70);
    CHECK(b.to_string().size() == 70);
    CHECK(b.to_string()[0] == '1');
    CHECK(b.to_string()[1] == '0');
}

TEST_CASE("ground set sorts labels and indexes them") {
    GroundSet g({"b", "a", "c"});
    CHECK(g.size() == 3);
    CHECK(g.labels() == std::vector<std::string>{"a", "b", "c"});
    CHECK(g.index_of("b") == 1);
    CHECK(g.label(2) == "c");
    CHECK(code_of([&] { g.index_of("z"); }) == ErrorCode::unknown_element);
    CHECK(code_of([] { GroundSet({"x"}); }) == ErrorCode::empty_ground_set);
    CHECK(code_of([] { GroundSet({}); }) == ErrorCode::empty_ground_set);
    CHECK(code_of([] { GroundSet({"a", "a"}); }) == ErrorCode::unknown_element);
}

TEST_CASE("split system canonicalizes parts") {
    // passing the part that misses element 0 must flip it into part_b
    SystemPtr sys = system_of(numbered_labels(4), {{1, 2}});
    CHECK(sys->size() == 1);
    CHECK(sys->split(0).part_a == Bitset::from_indices(4, {0, 3}));
    CHECK(sys->split(0).part_b == Bitset::from_indices(4, {1, 2}));
    CHECK(sys->split(0).part_of(1) == sys->split(0).part_b);
    CHECK(sys->split(0).side(false) == sys->split(0).part_a);

    SystemPtr same = system_of(numbered_labels(4), {{0, 3}});
    CHECK(*sys == *same);
}

TEST_CASE("split system rejects malformed input") {
    CHECK(code_of([] { system_of(numbered_labels(3), {{}}); }) == ErrorCode::improper_split);
    CHECK(code_of([] { system_of(numbered_labels(3), {{0, 1, 2}}); }) ==
          ErrorCode::improper_split);
    CHECK(code_of([] { system_of(numbered_labels(3), {}); }) == ErrorCode::improper_split);
    CHECK(code_of([] { system_of(numbered_labels(3), {{0}, {1, 2}}); }) ==
          ErrorCode::duplicate_split);
    CHECK(code_of([] {
              GroundSet ground(numbered_labels(3));
              std::vector<Bitset> raw{Bitset::from_indices(4, {0})};
              make_split_system(std::move(ground), raw);
          }) == ErrorCode::ground_set_mismatch);
}

TEST_CASE("split_repr shows the smaller part") {
    SystemPtr sys = sigma8();
    CHECK(sys->split_repr(8) == "{5}");
    CHECK(sys->split_repr(4) == "{4,5}");
    CHECK(sys->split_repr(0) == "{1,3}");
    // tie: both parts have four elements, part_a (with element 1) wins
    CHECK(sys->split_repr(3) == "{1,2,3,5}");
}

TEST_CASE("sigma8 split order follows the file") {
    SystemPtr sys = sigma8();
    REQUIRE(sys->size() == 9);
    REQUIRE(sys->ground_size() == 8);
    const char* expect[] = {"{1,3}", "{1,2}", "{1,2,3}", "{1,2,3,5}", "{4,5}",
                            "{1,2,3,4}", "{6,7}", "{7,8}", "{5}"};
    for (int i = 0; i < 9; ++i) CHECK(sys->split_repr(i) == expect[i]);
}
