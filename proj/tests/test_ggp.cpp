#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "lpdescent/ggp.hpp"

using namespace lpdescent;

namespace {

GroupDesc group_of(const Alphabet& alph, Family fam, int dim) {
    return GroupDesc{fam, dim, alph.ext(), std::nullopt, true};
}

} // namespace

TEST_CASE("eta is trivial on odd orthogonal groups", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    // SO5 parameter: symplectic summands have trivial determinant classes.
    auto phi = make_parameter(alph,
                              {{alph.index_of("rho2"), 1, 1}, {alph.index_of("chi_u"), 2, 1}},
                              Duality::Symplectic);
    auto table = fixtures::random_table(alph, 1);
    auto cg = component_group(alph, phi, Family::SO, 5);
    for (SquareClass a : F.square_classes())
        CHECK(eta(alph, table, Family::SO, phi, a) == cg.trivial());
}

TEST_CASE("eta at a = 1 is trivial and eta is multiplicative", "[ggp]") {
    for (long p : {2L, 3L}) {
        auto alph = fixtures::split_alphabet(p);
        const auto& F = alph.ext().field();
        auto table = fixtures::random_table(alph, 2 + p);
        // Orthogonal parameter with three nontrivial determinant classes.
        auto cls = F.square_classes();
        auto phi = make_parameter(
            alph,
            {{alph.index_of("chi_" + F.tag(cls[1])), 1, 1},
             {alph.index_of("chi_" + F.tag(cls[2])), 1, 1},
             {alph.index_of("chi_" + F.tag(cls[3])), 1, 1},
             {alph.index_of("rho2"), 2, 1}},
            Duality::Orthogonal);
        for (Family fam : {Family::Sp, Family::Mp}) {
            const Parameter& ref = phi;
            if (fam == Family::Mp) continue; // covered separately below
            CHECK(eta(alph, table, fam, ref, F.one()) ==
                  CharacterVec{std::vector<int>(classify_summands(alph, ref).good.size(), 1)});
            for (SquareClass a : F.square_classes())
                for (SquareClass b : F.square_classes())
                    CHECK(eta(alph, table, fam, ref, F.mul(a, b)) ==
                          ComponentGroup::mul(eta(alph, table, fam, ref, a),
                                              eta(alph, table, fam, ref, b)));
        }
    }
}

TEST_CASE("metaplectic eta", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto table = fixtures::random_table(alph, 23);
    // Mp4 parameter: rho2 + chi_u (x) mu_2, all good parity of even dim.
    auto phi = make_parameter(alph,
                              {{alph.index_of("rho2"), 1, 1}, {alph.index_of("chi_u"), 2, 1}},
                              Duality::Symplectic);
    CHECK(eta(alph, table, Family::Mp, phi, F.one()) == CharacterVec{{1, 1}});
    for (SquareClass a : F.square_classes()) {
        auto v = eta(alph, table, Family::Mp, phi, a);
        // Twist-fixed members: the root numbers cancel, (a,-1)^{dim/2} stays.
        CHECK(v.signs[0] == F.hilbert(a, F.minus_one()));
        CHECK(v.signs[1] == F.hilbert(a, F.minus_one()));
        for (SquareClass b : F.square_classes())
            CHECK(eta(alph, table, Family::Mp, phi, F.mul(a, b)) ==
                  ComponentGroup::mul(v, eta(alph, table, Family::Mp, phi, b)));
    }
}

TEST_CASE("unitary eta kills even-dimensional coordinates", "[ggp]") {
    auto alph = fixtures::conj_alphabet(3);
    auto table = fixtures::random_table(alph, 4);
    const auto& F = alph.ext().field();
    auto phi = make_parameter(alph,
                              {{alph.index_of("sig_plus"), 1, 1}, {alph.index_of("xi_plus"), 1, 1}},
                              Duality::ConjOrthogonal);
    auto good = classify_summands(alph, phi).good;
    for (SquareClass a : F.square_classes()) {
        auto v = eta(alph, table, Family::U, phi, a);
        for (std::size_t k = 0; k < good.size(); ++k) {
            const auto& e = phi.entries[static_cast<std::size_t>(good[k])];
            if (alph.member(e.member).id == "sig_plus")
                CHECK(v.signs[k] == 1); // even-dimensional coordinate
            else
                CHECK(v.signs[k] == (alph.ext().omega(a) == 1 ? 1 : -1));
        }
    }
}

TEST_CASE("chi with empty second argument is trivial", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    auto table = fixtures::random_table(alph, 9);
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                              Duality::Orthogonal);
    auto zero = make_parameter(alph, {}, Duality::Symplectic);
    CHECK(chi(table, alph, phi, zero) == CharacterVec{{1, 1}});
}

TEST_CASE("chi splits multiplicatively over the second argument", "[ggp]") {
    auto alph = fixtures::split_alphabet(5);
    auto table = fixtures::random_table(alph, 31);
    auto phi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);
    auto part1 = make_parameter(alph, {{alph.index_of("chi_1"), 2, 1}}, Duality::Orthogonal);
    auto part2 = make_parameter(alph, {{alph.index_of("tau2"), 1, 1}}, Duality::Orthogonal);
    auto whole = make_parameter(alph,
                                {{alph.index_of("chi_1"), 2, 1}, {alph.index_of("tau2"), 1, 1}},
                                Duality::Orthogonal);
    CHECK(chi(table, alph, phi, whole) ==
          ComponentGroup::mul(chi(table, alph, phi, part1), chi(table, alph, phi, part2)));
}

TEST_CASE("a lone negative root number flips exactly one coordinate", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    EpsilonTable table;
    for (int i = 0; i < alph.size(); ++i) {
        for (int j = i; j < alph.size(); ++j)
            if (detail::declared_pair(alph, i, j))
                table.set_pair(alph.member(i).id, alph.member(j).id, 1);
        if (is_self_dual(alph.member(i).duality)) table.set_single(alph.member(i).id, 1);
    }
    table.set_pair("rho2", "chi_1", -1);

    // SO-chain pair: phi = chi_1 + chi_u (even orthogonal, trivial dets at -1
    // aside), psi = rho2 (symplectic).
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("chi_u"), 1, 1}},
                              Duality::Orthogonal);
    auto psi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);
    auto c = chi(table, alph, psi, phi);
    REQUIRE(c.signs.size() == 1);
    // eps(rho2 (x) (chi_1 + chi_u)) = (-1) * (+1); determinant factors:
    // det(rho2) = 1 and det(phi) = u with dim(rho2)/2 = 1.
    int det_factor = F.hilbert(F.class_of(2), F.minus_one());
    CHECK(c.signs[0] == -det_factor);
}

TEST_CASE("orthogonal twisted pair at z = 1 is the base pair", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto table = fixtures::random_table(alph, 77);
    auto so6 = group_of(alph, Family::SO, 6);
    auto so3 = group_of(alph, Family::SO, 3);
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("chi_u"), 1, 1},
                               {alph.index_of("tau2"), 1, 2}},
                              Duality::Orthogonal);
    auto psi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);
    auto [c1, c2] = chi_twisted(table, alph, so6, so3, phi, psi, F.one());
    CHECK(c1 == chi(table, alph, phi, psi));
    CHECK(c2 == chi(table, alph, psi, phi));
}

TEST_CASE("symplectic-metaplectic twisted pair twists the odd-orthogonal side", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto table = fixtures::random_table(alph, 13);
    auto sp4 = group_of(alph, Family::Sp, 4);
    auto mp2 = group_of(alph, Family::Mp, 2);
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                              Duality::Orthogonal);
    auto psi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);

    for (SquareClass z : F.square_classes()) {
        auto [c1, c2] = chi_twisted(table, alph, sp4, mp2, phi, psi, z);
        // First component: chi_{phi(z), psi} . eta_z computed coordinatewise.
        auto good = classify_summands(alph, phi).good;
        for (std::size_t k = 0; k < good.size(); ++k) {
            const auto& e = phi.entries[static_cast<std::size_t>(good[k])];
            int expect = detail::chi_factor_split(table, alph, e, z, psi,
                                                  param_dim(alph, psi),
                                                  param_det(alph, psi));
            expect *= F.hilbert(detail::summand_det(alph, e), z);
            CHECK(c1.signs[k] == expect);
        }
        // Orientation swap: from the metaplectic side the same data comes
        // back in the opposite order.
        auto [d1, d2] = chi_twisted(table, alph, mp2, sp4, psi, phi, z);
        CHECK(d1 == c2);
        CHECK(d2 == c1);
    }
}

TEST_CASE("restriction through the augmented parameter matches the direct formula", "[ggp]") {
    // The odd-orthogonal/symplectic recipe goes through phi_1 = phi + 1.
    // Computing the even-orthogonal character of phi_1 against psi and
    // restricting to the coordinates of phi must equal the direct factors.
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto table = fixtures::random_table(alph, 41);
    auto phi = make_parameter(alph,
                              {{alph.index_of("chi_u"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                              Duality::Orthogonal);
    auto psi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);

    auto entries = phi.entries;
    entries.push_back(SummandEntry{alph.index_of("chi_1"), 1, 1});
    auto phi1 = make_parameter(alph, entries, Duality::Orthogonal);

    auto lifted = chi(table, alph, phi1, psi);
    auto direct = chi(table, alph, phi, psi);
    auto good1 = classify_summands(alph, phi1).good;
    auto good = classify_summands(alph, phi).good;
    for (std::size_t k = 0; k < good.size(); ++k) {
        const auto& e = phi.entries[static_cast<std::size_t>(good[k])];
        for (std::size_t j = 0; j < good1.size(); ++j) {
            const auto& f = phi1.entries[static_cast<std::size_t>(good1[j])];
            if (f.member == e.member && f.b == e.b) CHECK(lifted.signs[j] == direct.signs[k]);
        }
    }
}

TEST_CASE("unitary twisted pair obeys the parity of l", "[ggp]") {
    auto alph = fixtures::conj_alphabet(3);
    const auto& F = alph.ext().field();
    auto table = fixtures::random_table(alph, 6);
    auto u3 = group_of(alph, Family::U, 3);
    auto phi = make_parameter(alph,
                              {{alph.index_of("xi_plus"), 1, 1}, {alph.index_of("sig_plus"), 1, 1}},
                              Duality::ConjOrthogonal);

    // l odd: second side twisted by eta_{-z}.
    auto u2 = group_of(alph, Family::U, 2);
    auto psi_odd = make_parameter(alph, {{alph.index_of("sig_minus"), 1, 1}},
                                  Duality::ConjSymplectic);
    for (SquareClass z : alph.ext().norm_class_reps()) {
        auto [c1, c2] = chi_twisted(table, alph, u3, u2, phi, psi_odd, z);
        auto base2 = chi(table, alph, psi_odd, phi);
        auto expect2 = ComponentGroup::mul(
            base2, eta(alph, table, Family::U, psi_odd, F.mul(z, F.minus_one())));
        CHECK(c2 == expect2);
        CHECK(c1 == ComponentGroup::mul(chi(table, alph, phi, psi_odd),
                                        eta(alph, table, Family::U, phi, z)));
    }

    // l even: plain eta_z on both sides.
    auto u1 = group_of(alph, Family::U, 1);
    auto psi_even = make_parameter(alph, {{alph.index_of("xi_minus"), 1, 1}},
                                   Duality::ConjSymplectic);
    for (SquareClass z : alph.ext().norm_class_reps()) {
        auto [c1, c2] = chi_twisted(table, alph, u3, u1, phi, psi_even, z);
        CHECK(c2 == ComponentGroup::mul(chi(table, alph, psi_even, phi),
                                        eta(alph, table, Family::U, psi_even, z)));
        (void)c1;
    }
}

TEST_CASE("distinguished pair is unique in the packet product", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto table = fixtures::random_table(alph, seed);
        auto sp4 = group_of(alph, Family::Sp, 4);
        auto mp2 = group_of(alph, Family::Mp, 2);
        auto phi = make_parameter(alph,
                                  {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                                  Duality::Orthogonal);
        auto psi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);
        auto cg1 = component_group(alph, phi, Family::Sp, 4);
        auto cg2 = component_group(alph, psi, Family::Mp, 2);
        for (SquareClass z : F.square_classes()) {
            int hits = 0;
            for (const auto& mu : cg1.characters())
                for (const auto& nu : cg2.characters())
                    hits += multiplicity_tempered(table, alph, sp4, mp2, {phi, mu}, {psi, nu}, z);
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("contragredient is an involution compatible with eta", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    const auto& F = alph.ext().field();
    auto table = fixtures::random_table(alph, 21);

    auto check_family = [&](Family fam, const Parameter& phi, int space_dim) {
        auto cg = component_group(alph, phi, fam, space_dim);
        for (const auto& mu : cg.characters()) {
            EnhancedParameter ep{phi, mu};
            auto d1 = contragredient_enhanced(table, alph, fam, ep);
            auto d2 = contragredient_enhanced(table, alph, fam, d1);
            CHECK(d2.phi == ep.phi);
            CHECK(cg.char_equal(d2.mu, ep.mu));
            // dual(mu . eta_a) = dual(mu) . eta_a
            for (SquareClass a : F.square_classes()) {
                EnhancedParameter twisted{phi,
                                          ComponentGroup::mul(mu, eta(alph, table, fam, phi, a))};
                auto lhs = contragredient_enhanced(table, alph, fam, twisted);
                auto rhs = contragredient_enhanced(table, alph, fam, ep);
                auto rhs_mu =
                    ComponentGroup::mul(rhs.mu, eta(alph, table, fam, rhs.phi, a));
                CHECK(lhs.phi == rhs.phi);
                auto cg_dual = component_group(alph, lhs.phi, fam, space_dim);
                CHECK(cg_dual.char_equal(lhs.mu, rhs_mu));
            }
        }
    };

    auto so_phi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);
    check_family(Family::SO, so_phi, 3);
    auto sp_phi = make_parameter(alph,
                                 {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("rho2"), 2, 1}},
                                 Duality::Orthogonal);
    check_family(Family::Sp, sp_phi, 4);
    auto mp_phi = make_parameter(alph,
                                 {{alph.index_of("rho2"), 1, 1}, {alph.index_of("chi_u"), 2, 1}},
                                 Duality::Symplectic);
    check_family(Family::Mp, mp_phi, 4);

    auto calph = fixtures::conj_alphabet(3);
    auto ctable = fixtures::random_table(calph, 22);
    auto u_phi = make_parameter(calph,
                                {{calph.index_of("xi_plus"), 1, 1}, {calph.index_of("sig_plus"), 1, 1}},
                                Duality::ConjOrthogonal);
    auto cg = component_group(calph, u_phi, Family::U, 3);
    for (const auto& mu : cg.characters()) {
        auto d1 = contragredient_enhanced(ctable, calph, Family::U, {u_phi, mu});
        auto d2 = contragredient_enhanced(ctable, calph, Family::U, d1);
        CHECK(d2.phi == u_phi);
        CHECK(cg.char_equal(d2.mu, mu));
    }
}

TEST_CASE("SO contragredient is the identity", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    auto table = fixtures::random_table(alph, 30);
    auto phi = make_parameter(alph, {{alph.index_of("rho2"), 2, 1}}, Duality::Orthogonal);
    auto cg = component_group(alph, phi, Family::SO, 4);
    for (const auto& mu : cg.characters()) {
        auto d = contragredient_enhanced(table, alph, Family::SO, {phi, mu});
        CHECK(d == EnhancedParameter{phi, mu});
    }
}

TEST_CASE("z-orbits", "[ggp]") {
    auto alph = fixtures::split_alphabet(3);
    auto table = fixtures::random_table(alph, 50);
    // SO_odd: all determinants trivial, so the orbit is a fixed point.
    auto phi = make_parameter(alph, {{alph.index_of("rho2"), 1, 1}}, Duality::Symplectic);
    auto cg = component_group(alph, phi, Family::SO, 3);
    auto orbit = z_orbit(table, alph, Family::SO, 3, {phi, cg.trivial()});
    CHECK(orbit.size() == 1);

    // Orbit sizes divide |Z|.
    auto sp_phi = make_parameter(alph,
                                 {{alph.index_of("chi_1"), 1, 1}, {alph.index_of("chi_u"), 1, 1},
                                  {alph.index_of("chi_p"), 1, 1}},
                                 Duality::Orthogonal);
    auto cg2 = component_group(alph, sp_phi, Family::Sp, 2);
    for (const auto& mu : cg2.characters()) {
        auto orb = z_orbit(table, alph, Family::Sp, 2, {sp_phi, mu});
        CHECK(4 % orb.size() == 0);
    }
}

TEST_CASE("unitary z-orbit is a fixed point when all summand dims are even", "[ggp]") {
    auto calph = fixtures::conj_alphabet(3);
    auto table = fixtures::random_table(calph, 81);
    auto phi = make_parameter(calph,
                              {{calph.index_of("sig_plus"), 1, 1},
                               {calph.index_of("sig_minus"), 2, 1}},
                              Duality::ConjOrthogonal);
    auto cg = component_group(calph, phi, Family::U, 6);
    for (const auto& mu : cg.characters())
        CHECK(z_orbit(table, calph, Family::U, 6, {phi, mu}).size() == 1);
}
