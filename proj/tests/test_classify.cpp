#include <doctest.h>

#include "testutil.hpp"

using namespace slk;
using test::gram;
using test::Rng;

TEST_CASE("class invariants of the canonical representatives") {
    CanonicalClass quadric = make_class(ClassTag::Quadric);
    CHECK(quadric.delta == 8);
    CHECK(quadric.parity);
    CanonicalClass k1 = make_class(ClassTag::NumBlowup, 1);
    CHECK(k1.delta == 8);
    CHECK_FALSE(k1.parity);
    for (long n = 0; n <= 10; n++)
        CHECK(make_class(ClassTag::NumBlowup, Integer(n)).delta == 9 - n * n);
    CHECK(make_class(ClassTag::Trivial).delta == 0);
    CHECK(make_class(ClassTag::P2).delta == 9);
}

TEST_CASE("s_parity") {
    CHECK(s_parity(quadric_gram()));
    CHECK_FALSE(s_parity(build_Kn(1)));
    CHECK(s_parity(IntMatrix::identity(4)));
}

TEST_CASE("classify_rank3") {
    Verdict p2 = classify_rank3(p2_gram());
    CHECK(p2.cls.tag == ClassTag::P2);
    CHECK(p2.witness.empty());
    CHECK(p2.canonical == p2_gram());

    Verdict trivial = classify_rank3(IntMatrix::identity(3));
    CHECK(trivial.cls.tag == ClassTag::Trivial);
    CHECK_FALSE(trivial.note.empty());

    Verdict moved = classify_rank3(gram("1 3 6; 0 1 3; 0 0 1"));  // triple (3,6,3)
    CHECK(moved.cls.tag == ClassTag::P2);
    CHECK_FALSE(moved.witness.empty());
    CHECK(apply_word(gram("1 3 6; 0 1 3; 0 0 1"), moved.witness) == p2_gram());

    CHECK_THROWS_AS(classify_rank3(gram("1 1 0; 0 1 0; 0 0 1")), std::invalid_argument);
}

TEST_CASE("classify_rank4 on the paper examples") {
    Verdict quadric = classify_rank4(quadric_gram());
    CHECK(quadric.cls.tag == ClassTag::Quadric);
    CHECK(quadric.witness.empty());
    CHECK(quadric.cls.delta == 8);

    // the (1,5,4) representative classifies to K2 through eq:single itself
    Verdict single = classify_rank4(gram("1 2 1 5; 0 1 0 4; 0 0 1 2; 0 0 0 1"));
    CHECK(single.cls == make_class(ClassTag::NumBlowup, 2));
    CHECK(format_word(single.witness) == "s2 s1 S2 s1 e4");
    CHECK(single.canonical == build_Kn(2));

    Verdict v451 = classify_rank4(gram("1 2 4 5; 0 1 0 1; 0 0 1 2; 0 0 0 1"));
    CHECK(v451.cls == make_class(ClassTag::NumBlowup, 2));

    Verdict trivial = classify_rank4(IntMatrix::identity(4));
    CHECK(trivial.cls.tag == ClassTag::Trivial);
    CHECK_FALSE(trivial.note.empty());

    Verdict k3 = classify_rank4(build_Kn(3));
    CHECK(k3.cls == make_class(ClassTag::NumBlowup, 3));
    CHECK(k3.witness.empty());

    CHECK_THROWS_AS(classify_rank4(gram("1 1 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1")),
                    std::invalid_argument);
}

TEST_CASE("verdict witnesses verify exactly") {
    Rng rng(71);
    for (int trial = 0; trial < 100; trial++) {
        IntMatrix m = test::random_surface_star(rng, 4, 6);
        Verdict v = classify_rank4(m);
        CHECK(apply_word(m, v.witness) == v.canonical);
        CHECK(v.canonical == canonical_gram(v.cls, 4));
    }
}

TEST_CASE("classification is invariant under the generators") {
    Rng rng(72);
    std::vector<IntMatrix> seeds{quadric_gram(), build_Kn(0), build_Kn(1),
                                 build_Kn(2), build_Kn(3), build_Kn(5)};
    for (const IntMatrix& seed : seeds) {
        CanonicalClass expected = classify_rank4(seed).cls;
        for (int trial = 0; trial < 200; trial++) {
            IntMatrix m = apply_word(seed, test::random_word(rng, 4, int(rng.pick(0, 12))));
            Verdict v = classify_rank4(m);
            CHECK(v.cls == expected);
            CHECK(apply_word(m, v.witness) == v.canonical);
        }
    }
}

TEST_CASE("canonical representatives are pairwise inequivalent") {
    std::vector<CanonicalClass> classes{make_class(ClassTag::Quadric)};
    for (long n = 0; n <= 4; n++) classes.push_back(make_class(ClassTag::NumBlowup, Integer(n)));
    for (size_t i = 0; i < classes.size(); i++)
        for (size_t j = i + 1; j < classes.size(); j++) {
            bool delta_differs = classes[i].delta != classes[j].delta;
            bool parity_differs = classes[i].parity != classes[j].parity;
            CHECK((delta_differs || parity_differs));
            Equivalence eq = is_equivalent(canonical_gram(classes[i], 4),
                                           canonical_gram(classes[j], 4), Integer(100), 20000);
            CHECK(eq.kind == Equivalence::Kind::No);
        }
}

TEST_CASE("is_equivalent") {
    IntMatrix m = build_Kn(2);
    Equivalence one_step = is_equivalent(m, apply_gen(m, sigma(2)), Integer(1000000), 100000);
    REQUIRE(one_step.kind == Equivalence::Kind::Yes);
    CHECK(one_step.word.size() == 1);

    Equivalence parity = is_equivalent(quadric_gram(), build_Kn(1), Integer(1000000), 100000);
    REQUIRE(parity.kind == Equivalence::Kind::No);
    CHECK(parity.invariant == "s_parity");

    Equivalence delta = is_equivalent(build_Kn(2), build_Kn(4), Integer(1000000), 100000);
    REQUIRE(delta.kind == Equivalence::Kind::No);
    CHECK(delta.invariant == "delta");

    // distant pair: the classification route composes a verified word
    IntMatrix far = apply_word(build_Kn(2), parse_word("s1 s2 s3 s1 S2 e3 s1 s2 s1 s1"));
    Equivalence composed = is_equivalent(far, build_Kn(2), Integer(30), 50);
    REQUIRE(composed.kind == Equivalence::Kind::Yes);
    CHECK(apply_word(far, composed.word) == build_Kn(2));
}

TEST_CASE("classify dispatch") {
    CHECK(classify(p2_gram()).cls.tag == ClassTag::P2);
    CHECK(classify(quadric_gram()).cls.tag == ClassTag::Quadric);
    CHECK_THROWS_AS(classify(IntMatrix::identity(5)), std::invalid_argument);
}
