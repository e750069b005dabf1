#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ringkit/plmap.hpp"

using namespace ringkit;

namespace {

Rational rat(long p, long q = 1) { return Rational(p, q); }
CirclePoint pt(long p, long q = 1) { return CirclePoint(rat(p, q)); }

PLMap from_pairs(std::vector<std::pair<Rational, Rational>> ps) {
    std::vector<MapNode> nodes;
    for (auto& [t, v] : ps) nodes.push_back({t, v});
    return PLMap::from_nodes(std::move(nodes));
}

// Rigid rotation by -1/3.
PLMap y3() { return PLMap::rotation(rat(-1, 3)); }

// Slopes 1/9, 1/3, 1, 3, 9 across [0,1]; fixes 0 only.
PLMap g31() {
    return from_pairs({{rat(0), rat(0)},
                       {rat(2, 3), rat(2, 27)},
                       {rat(7, 9), rat(1, 9)},
                       {rat(8, 9), rat(2, 9)},
                       {rat(25, 27), rat(1, 3)},
                       {rat(1), rat(1)}});
}

// Identity on [0,2/3], then slopes 3, 1, 1/3.
PLMap x33() {
    return from_pairs({{rat(0), rat(0)},
                       {rat(2, 3), rat(2, 3)},
                       {rat(20, 27), rat(8, 9)},
                       {rat(7, 9), rat(25, 27)},
                       {rat(1), rat(1)}});
}

// Supports (0,2/3) and (1/3,7/9) respectively.
PLMap f31() {
    return from_pairs({{rat(0), rat(0)},
                       {rat(1, 9), rat(1, 3)},
                       {rat(1, 3), rat(5, 9)},
                       {rat(2, 3), rat(2, 3)},
                       {rat(1), rat(1)}});
}
PLMap f32() {
    return from_pairs({{rat(0), rat(0)},
                       {rat(1, 3), rat(1, 3)},
                       {rat(4, 9), rat(2, 3)},
                       {rat(7, 9), rat(7, 9)},
                       {rat(1), rat(1)}});
}

std::mt19937 rng(777);

std::vector<Rational> random_increasing(int count, long lo_num, long hi_num, long den) {
    std::uniform_int_distribution<long> d(lo_num, hi_num);
    std::vector<long> nums;
    while (static_cast<int>(nums.size()) < count) {
        long x = d(rng);
        bool dup = false;
        for (long y : nums) dup = dup || (x == y);
        if (!dup) nums.push_back(x);
    }
    std::sort(nums.begin(), nums.end());
    std::vector<Rational> out;
    for (long x : nums) out.emplace_back(x, den);
    return out;
}

PLMap random_interval_map() {
    std::uniform_int_distribution<int> kd(0, 4);
    const int k = kd(rng);
    auto ts = random_increasing(k, 1, 119, 120);
    auto vs = random_increasing(k, 1, 119, 120);
    std::vector<MapNode> nodes;
    nodes.push_back({rat(0), rat(0)});
    for (int i = 0; i < k; ++i) nodes.push_back({ts[i], vs[i]});
    nodes.push_back({rat(1), rat(1)});
    return PLMap::from_nodes(std::move(nodes));
}

PLMap random_circle_map() {
    std::uniform_int_distribution<int> kd(0, 4);
    std::uniform_int_distribution<long> vd(0, 119);
    const int k = kd(rng);
    auto ts = random_increasing(k, 1, 119, 120);
    const Rational v0(vd(rng), 120);
    auto vs = random_increasing(k, 1, 119, 120);
    std::vector<MapNode> nodes;
    nodes.push_back({rat(0), v0});
    for (int i = 0; i < k; ++i) nodes.push_back({ts[i], v0 + vs[i]});
    nodes.push_back({rat(1), v0 + rat(1)});
    return PLMap::from_nodes(std::move(nodes));
}

PLMap random_map() {
    std::uniform_int_distribution<int> coin(0, 1);
    return coin(rng) ? random_interval_map() : random_circle_map();
}

}  // namespace

TEST_CASE("node validation and canonical form") {
    CHECK_THROWS(from_pairs({{rat(0), rat(0)}, {rat(1, 2), rat(1, 3)}, {rat(1, 3), rat(1, 2)}, {rat(1), rat(1)}}));
    CHECK_THROWS(from_pairs({{rat(0), rat(0)}, {rat(1), rat(2)}}));
    // A redundant interior node is collapsed.
    auto f = from_pairs({{rat(0), rat(0)}, {rat(1, 2), rat(1, 2)}, {rat(1), rat(1)}});
    CHECK(f == PLMap::identity());
    CHECK(f.is_identity());
    // Lift shift is normalized into [0,1).
    auto r = from_pairs({{rat(0), rat(5, 3)}, {rat(1), rat(8, 3)}});
    CHECK(r == PLMap::rotation(rat(2, 3)));
}

TEST_CASE("evaluation") {
    CHECK(y3()(pt(0)) == pt(2, 3));
    CHECK(y3()(pt(1, 3)) == pt(0));
    CHECK(PLMap::identity()(pt(5, 7)) == pt(5, 7));
    CHECK(g31()(pt(2, 3)) == pt(2, 27));
    CHECK(g31()(pt(1, 3)) == pt(1, 27));
    CHECK(x33()(pt(1, 2)) == pt(1, 2));
}

TEST_CASE("kind is derived from the basepoint") {
    CHECK(y3().kind() == MapKind::circle);
    CHECK(g31().kind() == MapKind::interval);
    CHECK(PLMap::rotation(rat(0)).kind() == MapKind::interval);
}

TEST_CASE("compose, inverse, power") {
    auto f = f31();
    CHECK(compose(f, inverse(f)) == PLMap::identity());
    CHECK(compose(inverse(f), f) == PLMap::identity());
    CHECK(power(y3(), 3) == PLMap::identity());
    CHECK(power(y3(), -1) == PLMap::rotation(rat(1, 3)));
    CHECK(compose(PLMap::rotation(rat(1, 4)), PLMap::rotation(rat(5, 6))) ==
          PLMap::rotation(rat(13, 12)));

    // The composite f32 ∘ f31 moves the inner overlap boundary 1/3 to 19/27
    // and the outer one 2/3 to 20/27; both values are pinned exactly.
    auto c = compose(f32(), f31());
    CHECK(c(pt(1, 3)) == pt(19, 27));
    CHECK(c(pt(2, 3)) == pt(20, 27));
}

TEST_CASE("lift round trips") {
    for (int i = 0; i < 200; ++i) {
        auto f = random_map();
        std::uniform_int_distribution<long> pd(-240, 240);
        const Rational x(pd(rng), 120);
        CHECK(f.lift_eval_inverse(f.lift_eval(x)) == x);
        CHECK(f.lift_eval(x + rat(1)) == f.lift_eval(x) + rat(1));
    }
}

TEST_CASE("supports of the fixtures") {
    CHECK(support(PLMap::identity()).is_empty());
    CHECK(support(y3()).is_full());
    CHECK(support(x33()) == IntervalSet::of_arc(CyclicInterval(pt(2, 3), pt(0))));
    CHECK(support(f31()) == IntervalSet::of_arc(CyclicInterval(pt(0), pt(2, 3))));
    CHECK(support(f32()) == IntervalSet::of_arc(CyclicInterval(pt(1, 3), pt(7, 9))));
    // g31 fixes only the basepoint.
    CHECK(support(g31()) ==
          IntervalSet::of_arc(CyclicInterval::punctured_circle(pt(0))));
    // A map that is the identity on a middle band keeps two support components
    // that share the boundary point.
    auto banded = from_pairs({{rat(0), rat(0)},
                              {rat(1, 4), rat(1, 8)},
                              {rat(1, 2), rat(1, 2)},
                              {rat(3, 4), rat(3, 4)},
                              {rat(7, 8), rat(15, 16)},
                              {rat(1), rat(1)}});
    auto s = support(banded);
    REQUIRE(s.arcs().size() == 2);
    CHECK(s.arcs()[0] == CyclicInterval(pt(0), pt(1, 2)));
    CHECK(s.arcs()[1] == CyclicInterval(pt(3, 4), pt(0)));
}

TEST_CASE("support properties on random maps") {
    for (int i = 0; i < 300; ++i) {
        auto f = random_map();
        auto g = random_map();
        CHECK(support(conjugate(g, f)) == map_image(g, support(f)));
        CHECK(set_difference(support(compose(f, g)),
                             set_union(support(f), support(g))).is_empty());
    }
}

TEST_CASE("powers preserve the support when a fixed point exists") {
    int with_fixed = 0;
    for (int i = 0; i < 200; ++i) {
        auto f = random_map();
        auto s = support(f);
        if (!s.is_full()) {
            ++with_fixed;
            for (long n : {2L, 3L, 5L}) CHECK(support(power(f, n)) == s);
        } else {
            CHECK(set_difference(support(power(f, 3)), s).is_empty());
        }
    }
    CHECK(with_fixed > 50);
}

TEST_CASE("composition is associative and acts correctly") {
    for (int i = 0; i < 200; ++i) {
        auto f = random_map(), g = random_map(), h = random_map();
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
        CHECK(inverse(inverse(f)) == f);
        std::uniform_int_distribution<long> pd(0, 119);
        CirclePoint t(Rational(pd(rng), 120));
        CHECK(compose(f, g)(t) == f(g(t)));
        CHECK(inverse(f)(f(t)) == t);
    }
}

TEST_CASE("germs") {
    auto g = germ_at(x33(), pt(0), Side::right);
    CHECK(g.slope == rat(1));
    CHECK(g.fixed);
    CHECK(germ_at(x33(), pt(0), Side::left).slope == rat(1, 3));
    CHECK(germ_at(g31(), pt(0), Side::right).slope == rat(1, 9));
    CHECK(germ_at(g31(), pt(0), Side::left).slope == rat(9));
    CHECK(germ_at(f31(), pt(1, 9), Side::left).slope == rat(3));
    CHECK(germ_at(f31(), pt(1, 9), Side::right).slope == rat(1));
    CHECK_FALSE(germ_at(y3(), pt(1, 2), Side::right).fixed);

    CHECK(is_identity_near(PLMap::identity(), pt(1, 5)));
    // x33 is the identity to the right of 0 but has slope 1/3 to its left
    // (circle-wise, near 1), so it is not identity near the basepoint.
    CHECK_FALSE(is_identity_near(x33(), pt(0)));
    CHECK(is_identity_near(f32(), pt(0)));
    CHECK(is_identity_near(x33(), pt(1, 3)));
    CHECK_FALSE(is_identity_near(x33(), pt(2, 3)));
    CHECK_FALSE(is_identity_near(g31(), pt(0)));
    CHECK_FALSE(is_identity_near(y3(), pt(0)));
}

TEST_CASE("membership in F_n and T_n") {
    CHECK(member_of(y3(), GroupName::Tn, 3));
    CHECK_FALSE(member_of(y3(), GroupName::Fn, 3));
    CHECK(member_of(x33(), GroupName::Fn, 3));
    CHECK(member_of(g31(), GroupName::Fn, 3));
    CHECK(member_of(f31(), GroupName::Fn, 3));
    // Dyadic slopes/breakpoints are not 3-adic.
    auto d = from_pairs(
        {{rat(0), rat(0)}, {rat(1, 4), rat(1, 2)}, {rat(1, 2), rat(3, 4)}, {rat(1), rat(1)}});
    CHECK(member_of(d, GroupName::Fn, 2));
    CHECK_FALSE(member_of(d, GroupName::Fn, 3));
    CHECK_THROWS(member_of(d, GroupName::Fn, 1));
    CHECK_FALSE(member_of(d, GroupName::Tn, 3));
    // A circle map fixing the basepoint counts as interval kind.
    CHECK(member_of(power(y3(), 3), GroupName::Fn, 3));
}

TEST_CASE("map_image matches pointwise membership") {
    for (int i = 0; i < 100; ++i) {
        auto f = random_map();
        auto s = support(random_map());
        auto img = map_image(f, s);
        std::uniform_int_distribution<long> pd(0, 239);
        CirclePoint t(Rational(pd(rng), 240));
        CHECK(img.contains(f(t)) == s.contains(t));
    }
}
