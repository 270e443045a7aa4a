#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "lpdescent/lparam.hpp"

using namespace lpdescent;

TEST_CASE("summand duality calculus", "[lparam]") {
    auto alph = fixtures::split_alphabet(3);
    int chi1 = alph.index_of("chi_1");
    int rho2 = alph.index_of("rho2");
    int pad = alph.index_of("pad_1");

    CHECK(summand_duality(alph, chi1, 1) == Duality::Orthogonal);
    CHECK(summand_duality(alph, chi1, 2) == Duality::Symplectic);
    CHECK(summand_duality(alph, rho2, 1) == Duality::Symplectic);
    CHECK(summand_duality(alph, rho2, 2) == Duality::Orthogonal);
    CHECK(summand_duality(alph, pad, 3) == Duality::NonSelfDual);

    auto calph = fixtures::conj_alphabet(3);
    int co = calph.index_of("xi_plus");
    CHECK(summand_duality(calph, co, 2) == Duality::ConjSymplectic);
}

TEST_CASE("alphabet builder closure is validated", "[lparam]") {
    // build() runs the validation; these must not throw.
    CHECK_NOTHROW(fixtures::split_alphabet(2));
    CHECK_NOTHROW(fixtures::split_alphabet(3));
    CHECK_NOTHROW(fixtures::real_alphabet());
    CHECK_NOTHROW(fixtures::conj_alphabet(3));
}

TEST_CASE("classify summands partitions the index set", "[lparam]") {
    auto alph = fixtures::split_alphabet(3);
    auto F = alph.ext().field();
    // Odd orthogonal parameter of Sp4: chi_1 + rho2 (x) mu_2.
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                              Duality::Orthogonal);
    auto cls = classify_summands(alph, phi);
    CHECK(cls.good.size() == 2);
    CHECK(cls.bad.empty());
    CHECK(cls.nsd.empty());

    // A symplectic parameter containing a doubled orthogonal summand.
    auto psi = make_parameter(alph,
                              {{alph.index_of("rho2"), 1, 1}, {alph.index_of("chi_u"), 1, 2}},
                              Duality::Symplectic);
    auto cls2 = classify_summands(alph, psi);
    CHECK(cls2.good.size() == 1);
    CHECK(cls2.bad.size() == 1);

    // Non-self-dual pairs pair up; an unpaired one throws.
    auto paired = make_parameter(
        alph, {{alph.index_of("pad_1"), 1, 1}, {alph.index_of("pad_1_v"), 1, 1}},
        Duality::Orthogonal);
    CHECK(classify_summands(alph, paired).nsd.size() == 1);
    auto unpaired = make_parameter(alph, {{alph.index_of("pad_1"), 1, 1}}, Duality::Orthogonal);
    CHECK_THROWS_AS(classify_summands(alph, unpaired), std::invalid_argument);

    CHECK(param_dim(alph, phi) == 5);
    CHECK(param_det(alph, phi) == F.one());
}

TEST_CASE("component group sizing", "[lparam]") {
    auto alph = fixtures::split_alphabet(3);

    // Sp4 parameter with good-parity dims {1, 4}: constraint cuts to order 2.
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                              Duality::Orthogonal);
    auto cg = component_group(alph, phi, Family::Sp, 4);
    CHECK(cg.rank() == 2);
    CHECK(cg.constrained());
    CHECK(cg.order() == 2);
    CHECK(cg.elements().size() == 2);
    CHECK(cg.characters().size() == 2);

    // Odd orthogonal groups: no constraint.
    auto psi = make_parameter(alph,
                              {{alph.index_of("rho2"), 1, 1}, {alph.index_of("chi_1"), 2, 1}},
                              Duality::Symplectic);
    auto cg2 = component_group(alph, psi, Family::SO, 5);
    CHECK(cg2.rank() == 2);
    CHECK_FALSE(cg2.constrained());
    CHECK(cg2.order() == 4);

    // Empty good-parity set: trivial group.
    auto empty = make_parameter(alph, {}, Duality::Orthogonal);
    CHECK(component_group(alph, empty, Family::SO, 0).order() == 1);
}

TEST_CASE("component group with dims 1,1,3 under the parity constraint", "[lparam]") {
    // Dims of good-parity summands {1, 1, 3}: members with even weighted sum
    // form a subgroup of order 4 = 2^{3-1}.
    ComponentGroup cg({0, 1, 2}, {1, 1, 3}, true);
    CHECK(cg.order() == 4);
    auto els = cg.elements();
    REQUIRE(els.size() == 4);
    for (const auto& e : els) CHECK((e[0] * 1 + e[1] * 1 + e[2] * 3) % 2 == 0);
    CHECK(cg.characters().size() == 4);
}

TEST_CASE("character equality modulo the constraint", "[lparam]") {
    ComponentGroup cg({0, 1}, {1, 4}, true);
    REQUIRE(cg.constrained());
    CharacterVec a{{1, -1}};
    CharacterVec b{{-1, -1}}; // differs by the parity character (-1, +1)
    CHECK(cg.char_equal(a, b));
    CHECK(cg.canonical(a) == cg.canonical(b));
    CharacterVec c{{1, 1}};
    CHECK_FALSE(cg.char_equal(a, c));
}

TEST_CASE("twisting parameters", "[lparam]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto u = F.class_of(2);

    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                              Duality::Orthogonal);
    CHECK(twist_param(alph, phi, F.one()) == phi);
    auto tw = twist_param(alph, phi, u);
    CHECK(twist_param(alph, tw, u) == phi);
    // det bookkeeping: det(phi (x) chi_u) = det(phi) u^{dim}.
    CHECK(param_det(alph, tw) == F.mul(param_det(alph, phi), F.pow(u, param_dim(alph, phi))));

    // Twisting commutes with the good/bad/nsd classification index-wise.
    auto cls = classify_summands(alph, phi);
    auto cls_tw = classify_summands(alph, tw);
    CHECK(cls.good.size() == cls_tw.good.size());
    CHECK(cls.bad.size() == cls_tw.bad.size());
}

TEST_CASE("determinant bookkeeping across the full twist sweep", "[lparam]") {
    for (long p : {2L, 3L, 5L}) {
        auto alph = fixtures::split_alphabet(p);
        const auto& F = alph.ext().field();
        for (int i = 0; i < alph.size(); ++i) {
            for (SquareClass z : F.square_classes()) {
                int t = alph.twist_index(i, z);
                CHECK(alph.member(t).det ==
                      F.mul(alph.member(i).det, F.pow(z, alph.member(i).dim)));
            }
        }
    }
}

TEST_CASE("enhanced twisting keeps the character aligned", "[lparam]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_u"), 1, 1}, {alph.index_of("chi_p"), 1, 1}},
                              Duality::Orthogonal);
    CharacterVec mu{{1, -1}};
    auto ep = twist_enhanced(alph, {phi, mu}, F.class_of(2));
    // chi_u -> chi_1, chi_p -> chi_up: after canonical sorting chi_1 comes
    // first, and its sign must follow chi_u's.
    auto good = classify_summands(alph, ep.phi).good;
    REQUIRE(good.size() == 2);
    for (std::size_t k = 0; k < good.size(); ++k) {
        const auto& e = ep.phi.entries[static_cast<std::size_t>(good[k])];
        if (alph.member(e.member).id == "chi_1") CHECK(ep.mu.signs[k] == 1);
        if (alph.member(e.member).id == "chi_up") CHECK(ep.mu.signs[k] == -1);
    }
    // Twist involution at the enhanced level.
    auto back = twist_enhanced(alph, ep, F.class_of(2));
    CHECK(back == EnhancedParameter{phi, mu});
}

TEST_CASE("discreteness predicate", "[lparam]") {
    auto alph = fixtures::split_alphabet(3);
    auto good = make_parameter(alph,
                               {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                               Duality::Orthogonal);
    CHECK(is_discrete(alph, good));
    auto doubled = make_parameter(alph, {{alph.index_of("chi_1"), 1, 2}}, Duality::Orthogonal);
    CHECK_FALSE(is_discrete(alph, doubled));
    auto with_pair = make_parameter(
        alph, {{alph.index_of("pad_1"), 1, 1}, {alph.index_of("pad_1_v"), 1, 1}},
        Duality::Orthogonal);
    CHECK_FALSE(is_discrete(alph, with_pair));
}

TEST_CASE("group validity checks", "[lparam]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto E = alph.ext();

    GroupDesc sp4{Family::Sp, 4, E, std::nullopt, true};
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                              Duality::Orthogonal);
    CHECK_NOTHROW(validate_for_group(alph, phi, sp4));

    // Nontrivial determinant is rejected for the symplectic family.
    auto bad_det = make_parameter(alph,
                                  {{alph.index_of("chi_u"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                                  Duality::Orthogonal);
    CHECK_THROWS_AS(validate_for_group(alph, bad_det, sp4), std::invalid_argument);

    // Even orthogonal with attached space: determinant must match disc.
    GroupDesc so2{Family::SO, 2, E, classify_space(E, 1, 2, F.class_of(2), 1), true};
    auto chi_pair = make_parameter(
        alph, {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("chi_u"), 1, 1}},
        Duality::Orthogonal);
    CHECK_NOTHROW(validate_for_group(alph, chi_pair, so2));
    auto wrong = make_parameter(
        alph, {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("chi_p"), 1, 1}},
        Duality::Orthogonal);
    CHECK_THROWS_AS(validate_for_group(alph, wrong, so2), std::invalid_argument);

    // Wrong-parity summands must have even multiplicity.
    GroupDesc so5{Family::SO, 5, E, std::nullopt, true};
    auto odd_bad = make_parameter(
        alph, {{alph.index_of("rho2"), 1, 1}, {alph.index_of("chi_1"), 1, 1}},
        Duality::Symplectic);
    CHECK_THROWS_AS(validate_for_group(alph, odd_bad, so5), std::invalid_argument);
}

TEST_CASE("twisting outside the closed alphabet is an error", "[lparam]") {
    auto F = LocalField::p_adic(3);
    AlphabetBuilder b(QuadExt::trivial(F));
    b.add_self_dual("rho2", 2, Duality::Symplectic, F.one());
    auto alph = b.build();
    // Strip the twist table to simulate an unclosed alphabet.
    std::vector<FormalIrr> members = alph.members();
    members[0].twists.clear();
    Alphabet open_alph(QuadExt::trivial(F), members);
    CHECK(open_alph.twist_index(0, F.one()) == 0);
    CHECK_THROWS_AS(open_alph.twist_index(0, F.class_of(2)), std::invalid_argument);
}
