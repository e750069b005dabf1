#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ringkit/chainring.hpp"
#include "ringkit/generators.hpp"
#include "support/testutil.hpp"

using namespace ringkit;

namespace {

Rational rat(long p, long q = 1) { return Rational(p, q); }
CirclePoint pt(long p, long q = 1) { return CirclePoint(rat(p, q)); }
IntervalSet arcset(long pl, long ql, long pu, long qu) {
    return IntervalSet::of_arc(CyclicInterval(pt(pl, ql), pt(pu, qu)));
}

PLMap fgen(long n, long i) { return to_plmap(generator(GenName::f, n, i)); }

GeneratingFamily tn_ring_family(long n) {
    std::vector<PLMap> gens;
    for (long i = 1; i <= n + 1; ++i) gens.push_back(fgen(n, i));
    return GeneratingFamily(FamilyContext::circle, gens);
}

GeneratingFamily t3_chain_family() {
    return GeneratingFamily(FamilyContext::line, {fgen(3, 1), fgen(3, 2), fgen(3, 3)});
}

PLMap from_pairs(std::vector<std::pair<Rational, Rational>> ps) {
    std::vector<MapNode> nodes;
    for (auto& [t, v] : ps) nodes.push_back({t, v});
    return PLMap::from_nodes(std::move(nodes));
}

std::mt19937 rng(5150);

}  // namespace

TEST_CASE("family construction validates supports") {
    CHECK_NOTHROW(tn_ring_family(3));
    // Two-component support is rejected.
    auto banded = from_pairs({{rat(0), rat(0)},
                              {rat(1, 4), rat(1, 8)},
                              {rat(1, 2), rat(1, 2)},
                              {rat(3, 4), rat(3, 4)},
                              {rat(7, 8), rat(15, 16)},
                              {rat(1), rat(1)}});
    CHECK_THROWS(GeneratingFamily(FamilyContext::line, {banded}));
    // Line context requires the basepoint fixed.
    CHECK_THROWS(GeneratingFamily(FamilyContext::line, {fgen(3, 4)}));
    CHECK_THROWS(GeneratingFamily(FamilyContext::line, {PLMap::identity()}));
}

TEST_CASE("is_chain / is_ring") {
    auto t3 = tn_ring_family(3);
    CHECK(t3.support(0) == arcset(0, 1, 2, 3));
    CHECK(t3.support(1) == arcset(1, 3, 7, 9));
    CHECK(t3.support(2) == arcset(2, 3, 0, 1));
    CHECK(t3.support(3) == arcset(8, 9, 1, 3));
    CHECK(is_ring(t3.supports()));

    CHECK(is_chain({arcset(0, 1, 1, 2), arcset(1, 4, 1, 1)}));
    CHECK_FALSE(is_chain({arcset(0, 1, 1, 2), arcset(1, 4, 3, 4), arcset(1, 3, 1, 1)}));
    CHECK(is_chain(t3_chain_family().supports()));

    CHECK_THROWS(is_chain({arcset(0, 1, 1, 2)}));
    CHECK_THROWS(is_ring({arcset(0, 1, 1, 2), arcset(1, 4, 1, 1)}));
    CHECK_THROWS(is_ring({arcset(0, 1, 1, 2), IntervalSet::full_circle(), arcset(1, 4, 1, 1)}));

    // Nested intervals fail the difference condition.
    auto unit = IntervalSet::of_arc(CyclicInterval::punctured_circle(pt(0)));
    CHECK_FALSE(is_chain({unit, arcset(1, 4, 1, 2)}));
}

TEST_CASE("is_ring is invariant under relabeling and conjugation") {
    auto fam = tn_ring_family(3);
    auto sups = fam.supports();
    for (int s = 0; s < 4; ++s) {
        std::vector<IntervalSet> rot;
        for (std::size_t i = 0; i < sups.size(); ++i) rot.push_back(sups[(i + s) % sups.size()]);
        CHECK(is_ring(rot));
    }
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<long> d(1, 26);
        const long num = d(rng);
        PLMap h = compose(PLMap::rotation(rat(num, 27)), to_plmap(testutil::random_reduced_pair(rng, 3, 6)));
        std::vector<IntervalSet> conj;
        for (const auto& s : sups) conj.push_back(map_image(h, s));
        CHECK(is_ring(conj));
    }
}

TEST_CASE("certify_F_pair on the documented pairs") {
    auto c12 = certify_F_pair(fgen(3, 1), fgen(3, 2));
    CHECK(c12.a_prime == rat(1, 3));
    CHECK(c12.b == rat(2, 3));
    CHECK(c12.value == rat(19, 27));
    CHECK(c12.certified);

    auto c12_4 = certify_F_pair(fgen(4, 1), fgen(4, 2));
    CHECK(c12_4.value == rat(5, 8));
    CHECK(c12_4.b == rat(1, 2));
    CHECK(c12_4.certified);

    // A slow pair stays inconclusive.
    auto slow_f = from_pairs({{rat(0), rat(0)}, {rat(3, 8), rat(7, 16)}, {rat(5, 8), rat(5, 8)}, {rat(1), rat(1)}});
    auto slow_g = from_pairs({{rat(0), rat(0)}, {rat(3, 8), rat(3, 8)}, {rat(5, 8), rat(3, 4)}, {rat(1), rat(1)}});
    auto sc = certify_F_pair(slow_f, slow_g);
    CHECK_FALSE(sc.certified);
    CHECK(sc.value == rat(15, 32));
    CHECK(sc.value < sc.b);

    // Supports out of pattern.
    CHECK_THROWS(certify_F_pair(fgen(3, 2), fgen(3, 1)));
    CHECK_THROWS(certify_F_pair(fgen(3, 1), fgen(3, 3)));  // disjoint-ish: a' >= b
}

TEST_CASE("certify_F_pair transforms covariantly under conjugation") {
    for (int trial = 0; trial < 50; ++trial) {
        // Basepoint-fixing conjugators keep both supports on the line.
        auto dom = testutil::random_tree(rng, 2, 5);
        auto ran = testutil::random_tree(rng, 2, 5);
        while (ran.leaf_count() != dom.leaf_count()) ran = testutil::random_tree(rng, 2, 5);
        auto h = to_plmap(reduce(TreePair(2, dom, ran, 0)));
        auto base = certify_F_pair(fgen(3, 1), fgen(3, 2));
        auto moved = certify_F_pair(conjugate(h, fgen(3, 1)), conjugate(h, fgen(3, 2)));
        CHECK(moved.certified == base.certified);
        CHECK(moved.a_prime == h.lift_eval(base.a_prime));
        CHECK(moved.b == h.lift_eval(base.b));
        CHECK(moved.value == h.lift_eval(base.value));
    }
}

TEST_CASE("words and p1") {
    auto fam = t3_chain_family();
    auto w = word_parse("f1 f1 f1 f2", fam.size());
    CHECK(p1(fam, w) == 3);
    CHECK(word_length(w) == 4);
    CHECK(word_str(word_parse("f3^-2 f1", 3)) == "f3^-2 f1");
    CHECK(p1(fam, {}) == 0);
    CHECK_THROWS(word_parse("f0", 3));
    CHECK_THROWS(word_parse("f4", 3));
    CHECK_THROWS(word_parse("g1", 3));
    CHECK_THROWS(word_parse("f1^0", 3));

    // f1 f3 f1^-1 equals f3 since the supports are disjoint.
    auto w1 = word_parse("f1 f3 f1^-1", 3);
    auto w2 = word_parse("f3", 3);
    auto verdict = p1_consistency(fam, w1, w2);
    CHECK(verdict.maps_equal);
    CHECK(verdict.p1_first == 0);
    CHECK(verdict.p1_second == 0);
    CHECK(verdict.consistent);

    // p1 is a homomorphism on words: exhaustive over short letter strings.
    std::vector<WordLetter> letters;
    for (std::size_t i = 0; i < 3; ++i)
        for (long e : {-1L, 1L}) letters.push_back({i, e});
    for (const auto& l1 : letters)
        for (const auto& l2 : letters)
            for (const auto& l3 : letters) {
                Word u = {l1, l2}, v = {l3};
                Word uv = u;
                uv.insert(uv.end(), v.begin(), v.end());
                CHECK(p1(fam, uv) == p1(fam, u) + p1(fam, v));
            }
}

TEST_CASE("verify_ring_group certifies the documented families") {
    for (long n : {3L, 5L}) {
        auto fam = tn_ring_family(n);
        auto rc = verify_ring_group(fam, inverse(y_generator_map(n)));
        CHECK(rc.ring);
        CHECK(rc.certified);
        CHECK(rc.pairs.size() == static_cast<std::size_t>(n + 1));
        for (const auto& p : rc.pairs) CHECK(p.certified);
        CHECK(replay(fam, rc));
    }
    // The wrap pairs certify with an automatic rotation as well.
    auto rc_auto = verify_ring_group(tn_ring_family(3));
    CHECK(rc_auto.certified);

    // Shrinking one support breaks the overlap pattern and fails at it.
    auto bump = from_pairs({{rat(0), rat(0)},
                            {rat(4, 9), rat(4, 9)},
                            {rat(13, 27), rat(14, 27)},
                            {rat(5, 9), rat(5, 9)},
                            {rat(1), rat(1)}});
    GeneratingFamily broken(FamilyContext::circle, {fgen(3, 1), bump, fgen(3, 3), fgen(3, 4)});
    auto rc_broken = verify_ring_group(broken, inverse(y_generator_map(3)));
    CHECK_FALSE(rc_broken.certified);
    REQUIRE(rc_broken.failing_index.has_value());
    CHECK(*rc_broken.failing_index == 0);
    // The failing record is still an accurate, replayable one.
    CHECK(replay(broken, rc_broken));
}

TEST_CASE("stabilize") {
    auto fam = t3_chain_family();
    auto res = stabilize(fam, 8);
    REQUIRE(res.found);
    CHECK(res.N == 1);
    CHECK(res.cert->certified);
    CHECK(replay(fam, *res.cert));

    CHECK_FALSE(stabilize(fam, 0).found);
    CHECK(stabilize(fam, 20).N == res.N);  // enlarging the budget keeps the N

    // The slow pair needs N = 3; the oracle below recomputes the minimal N by
    // plain pointwise iteration, independent of map composition.
    auto slow_f = from_pairs({{rat(0), rat(0)}, {rat(3, 8), rat(7, 16)}, {rat(5, 8), rat(5, 8)}, {rat(1), rat(1)}});
    auto slow_g = from_pairs({{rat(0), rat(0)}, {rat(3, 8), rat(3, 8)}, {rat(5, 8), rat(3, 4)}, {rat(1), rat(1)}});
    GeneratingFamily slow(FamilyContext::line, {slow_f, slow_g});
    long oracle_N = 0;
    for (long N = 1; N <= 10 && oracle_N == 0; ++N) {
        Rational x(3, 8);
        for (long s = 0; s < N; ++s) x = slow_f.lift_eval(x);
        for (long s = 0; s < N; ++s) x = slow_g.lift_eval(x);
        if (x >= rat(5, 8)) oracle_N = N;
    }
    CHECK(oracle_N == 3);
    auto slow_res = stabilize(slow, 10);
    REQUIRE(slow_res.found);
    CHECK(slow_res.N == oracle_N);
    CHECK_FALSE(stabilize(slow, 2).found);
    CHECK(stabilize(slow, 2).largest_tried == 2);

    // Not a prechain: supports fail to cover (0,1).
    CHECK_THROWS(stabilize(GeneratingFamily(FamilyContext::line, {slow_f, slow_f}), 4));
}

TEST_CASE("expand_ring grows certified rings") {
    auto fam = tn_ring_family(3);
    CHECK_THROWS(expanded_generators(GeneratingFamily(FamilyContext::circle,
                                                      {fgen(3, 1), fgen(3, 2), fgen(3, 3)}),
                 1));

    GeneratingFamily cur = fam;
    std::optional<PLMap> conj = inverse(y_generator_map(3));
    for (int step = 0; step < 3; ++step) {
        auto res = expand_ring(cur, 16, conj);
        REQUIRE(res.found);
        const auto& cert = *res.cert;
        CHECK(cert.N == 1);  // regression value, first found exponent
        CHECK(cert.certified);
        CHECK(cert.new_family.size() == cur.size() + 1);
        CHECK(cert.ring_cert.certified);
        for (const auto& bc : cert.boundary_checks) CHECK(bc.ok);
        CHECK(replay(cur, cert));
        cur = GeneratingFamily(FamilyContext::circle, cert.new_family);
        conj = std::nullopt;
    }
    CHECK(cur.size() == 7);

    // The base ring's supports touch at two boundary points, so the strict
    // version of the ordering degenerates there while the weak one holds.
    auto first = expand_ring(fam, 4, inverse(y_generator_map(3)));
    CHECK(first.cert->boundary_checks[0].ok);
    CHECK_FALSE(first.cert->boundary_checks[0].strict);
    CHECK(first.cert->boundary_checks[1].ok);
    CHECK_FALSE(first.cert->boundary_checks[1].strict);
}

TEST_CASE("shrink_into produces verified zero-sum words") {
    auto fam = t3_chain_family();
    auto cert = shrink_into(fam, rat(1, 9), rat(2, 9), rat(2, 3), rat(5, 9), rat(7, 9));
    CHECK(cert.included);
    CHECK(rat(5, 9) < cert.final_lo);
    CHECK(cert.final_hi < rat(7, 9));
    for (long s : exponent_sums(cert.word, fam.size())) CHECK(s == 0);
    CHECK(word_length(cert.word) <= 64);
    CHECK(replay(fam, cert));

    // Already inside: the empty word.
    auto noop = shrink_into(fam, rat(3, 5), rat(5, 8), rat(2, 3), rat(5, 9), rat(7, 9));
    CHECK(noop.word.empty());
    CHECK(replay(fam, noop));

    // A tiny budget reports the best interval reached.
    try {
        shrink_into(fam, rat(1, 9), rat(2, 9), rat(7, 9), rat(7, 9) - rat(1, 19683),
                    rat(7, 9) + rat(1, 19683), 3);
        FAIL("expected BudgetError");
    } catch (const BudgetError& e) {
        CHECK(e.best_lo <= e.best_hi);
    }

    // Contract violations.
    CHECK_THROWS_AS(shrink_into(fam, rat(0), rat(1, 4), rat(2, 3), rat(1, 2), rat(3, 4)),
                    std::domain_error);
    CHECK_THROWS_AS(shrink_into(fam, rat(1, 9), rat(2, 9), rat(1, 2), rat(1, 4), rat(3, 4)),
                    std::domain_error);  // 1/2 is not a support boundary point
}

TEST_CASE("shrink_into randomized instances") {
    auto fam = t3_chain_family();
    std::uniform_int_distribution<long> num(1, 79);
    const std::vector<Rational> targets = {rat(1, 3), rat(2, 3), rat(7, 9)};
    for (int trial = 0; trial < 20; ++trial) {
        Rational a(num(rng), 81), b(num(rng), 81);
        if (b < a) std::swap(a, b);
        if (a == b) b = a + rat(1, 81);
        const Rational t = targets[trial % targets.size()];
        const Rational r(1, 9);
        const Rational jlo = t - r, jhi = std::min(t + r, rat(1));
        auto cert = shrink_into(fam, a, b, t, jlo, jhi, 64);
        CHECK(cert.included);
        for (long s : exponent_sums(cert.word, fam.size())) CHECK(s == 0);
        CHECK(word_length(cert.word) <= 64);
        CHECK(replay(fam, cert));
    }
}

TEST_CASE("displace and disjoint_pushers") {
    auto fam = t3_chain_family();
    auto d = displace(fam, rat(1, 9), rat(2, 9));
    CHECK(d.disjoint);
    CHECK((d.image_hi < rat(1, 9) || rat(2, 9) < d.image_lo));
    for (long s : exponent_sums(d.word, fam.size())) CHECK(s == 0);
    CHECK(replay(fam, d));

    // An interval swallowing every interior boundary point still displaces,
    // through the corner fallback.
    auto wide = displace(fam, rat(1, 27), rat(25, 27));
    CHECK(wide.disjoint);
    CHECK(replay(fam, wide));

    auto K = IntervalSet::of_arc(CyclicInterval(pt(1, 9), pt(2, 9)));
    CHECK(disjoint_pushers(fam, K, 1) == std::vector<Word>{Word{}});
    auto words = disjoint_pushers(fam, K, 3);
    REQUIRE(words.size() == 3);
    std::vector<IntervalSet> images;
    for (const auto& w : words) {
        for (long s : exponent_sums(w, fam.size())) CHECK(s == 0);
        images.push_back(map_image(word_to_map(fam, w), K));
    }
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            CHECK(disjoint(images[i], images[j]));

    CHECK_THROWS_AS(disjoint_pushers(fam, K, 9), BudgetError);
}

TEST_CASE("replay rejects mutated certificates") {
    auto fam = tn_ring_family(3);
    auto rc = verify_ring_group(fam, inverse(y_generator_map(3)));
    REQUIRE(replay(fam, rc));
    auto bad = rc;
    bad.pairs[1].value += rat(1, 81);
    CHECK_FALSE(replay(fam, bad));
    bad = rc;
    bad.pairs[2].a_prime = rat(1, 5);
    CHECK_FALSE(replay(fam, bad));
    bad = rc;
    bad.certified = false;
    CHECK_FALSE(replay(fam, bad));

    auto chain = t3_chain_family();
    auto sc = shrink_into(chain, rat(1, 9), rat(2, 9), rat(2, 3), rat(5, 9), rat(7, 9));
    auto sbad = sc;
    sbad.steps[0].first += rat(1, 729);
    CHECK_FALSE(replay(chain, sbad));
    sbad = sc;
    sbad.final_hi += rat(1, 729);
    CHECK_FALSE(replay(chain, sbad));
    sbad = sc;
    sbad.word.push_back({0, 1});
    CHECK_FALSE(replay(chain, sbad));

    auto ex = expand_ring(fam, 4, inverse(y_generator_map(3)));
    REQUIRE(ex.found);
    auto ebad = *ex.cert;
    ebad.N = 2;
    CHECK_FALSE(replay(fam, ebad));
    ebad = *ex.cert;
    ebad.boundary_checks[0].points[1] = pt(1, 7);
    CHECK_FALSE(replay(fam, ebad));
}
