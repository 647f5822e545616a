#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "homdec/pid.hpp"
#include "support/zz_oracle.hpp"

using namespace homdec;
namespace P = homdec::pid;
using P::Atom;
using P::MaximalSet;
using P::PrimeSet;
using P::SymbolicModule;

namespace {

const std::vector<P::u64> pool{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

MaximalSet random_set(std::mt19937_64& rng) {
    std::vector<P::u64> picked;
    for (P::u64 p : pool)
        if (rng() % 3 == 0) picked.push_back(p);
    return rng() % 2 ? MaximalSet::of(picked) : MaximalSet::all_but(picked);
}

}  // namespace

TEST_CASE("primality certification is exact on both sides") {
    CHECK(P::is_prime(2));
    CHECK(P::is_prime(97));
    CHECK(P::is_prime(2147483647));           // 2^31 - 1
    CHECK(P::is_prime(18446744073709551557ULL));  // largest 64-bit prime
    CHECK_FALSE(P::is_prime(0));
    CHECK_FALSE(P::is_prime(1));
    CHECK_FALSE(P::is_prime(4));
    CHECK_FALSE(P::is_prime(3215031751ULL));  // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(P::is_prime(18446744073709551615ULL));
    CHECK(P::first_primes(5) == std::vector<P::u64>{2, 3, 5, 7, 11});
}

TEST_CASE("points and sets of the spectrum reject composite labels") {
    CHECK(P::PrimePoint::at(7).name() == "(7)");
    CHECK(P::PrimePoint::generic_point().name() == "(0)");
    CHECK_THROWS_AS(P::PrimePoint::at(9), homdec::error);
    CHECK_THROWS_AS(MaximalSet::of({4}), homdec::error);
    CHECK_THROWS_AS(MaximalSet::all_but({1}), homdec::error);
    CHECK_THROWS_AS(Atom::cyclic(6, 1), homdec::error);
    CHECK_THROWS_AS(Atom::cyclic(2, 0), homdec::error);
    CHECK_THROWS_AS(Atom::pruefer(15), homdec::error);
}

TEST_CASE("maximal sets form a boolean algebra in canonical representation") {
    std::mt19937_64 rng(20260816);
    std::vector<P::u64> sample = pool;
    sample.push_back(31);
    sample.push_back(37);
    for (int iter = 0; iter < 200; ++iter) {
        MaximalSet a = random_set(rng);
        MaximalSet b = random_set(rng);
        MaximalSet u = P::set_union(a, b);
        MaximalSet i = P::set_intersection(a, b);
        MaximalSet d = P::set_difference(a, b);
        for (P::u64 p : sample) {
            CHECK(u.contains(p) == (a.contains(p) || b.contains(p)));
            CHECK(i.contains(p) == (a.contains(p) && b.contains(p)));
            CHECK(d.contains(p) == (a.contains(p) && !b.contains(p)));
            CHECK(a.complement().contains(p) == !a.contains(p));
        }
        CHECK(a.complement().complement() == a);
        CHECK(P::set_union(a, b).complement() ==
              P::set_intersection(a.complement(), b.complement()));
        CHECK(P::set_intersection(a, b).complement() ==
              P::set_union(a.complement(), b.complement()));
        CHECK(a.subset_of(u));
        CHECK(b.subset_of(u));
        CHECK(i.subset_of(a));
        CHECK(i.subset_of(b));
        CHECK(d.subset_of(a));
        CHECK(P::set_intersection(d, b).empty());
        CHECK(P::set_union(i, P::set_difference(a, b))
                  .subset_of(a));
        if (a.subset_of(b)) CHECK(P::set_union(a, b) == b);
    }
    CHECK(MaximalSet::of({2, 2, 3}) == MaximalSet::of({3, 2}));
    CHECK(MaximalSet::none().complement() == MaximalSet::all());
    CHECK(MaximalSet::all().contains(101));
    CHECK(MaximalSet::all_but({101}).contains(103));
    CHECK_FALSE(MaximalSet::all_but({101}).contains(101));
    CHECK(MaximalSet::of({2, 3}).name() == "{2, 3}");
    CHECK(MaximalSet::all().name() == "all primes");
    CHECK(MaximalSet::all_but({2}).name() == "all primes except {2}");
}

TEST_CASE("prime sets track the generic point through the set algebra") {
    PrimeSet closed = PrimeSet::closed_points();
    PrimeSet generic = PrimeSet::only_generic();
    CHECK(closed.complement() == generic);
    CHECK(PrimeSet::everything().complement() == PrimeSet::nothing());
    CHECK(P::set_union(closed, generic) == PrimeSet::everything());
    CHECK(P::set_intersection(closed, generic).empty());
    CHECK(PrimeSet::points({2}).subset_of(closed));
    CHECK_FALSE(closed.subset_of(PrimeSet::points({2})));
    CHECK(generic.contains(P::PrimePoint::generic_point()));
    CHECK_FALSE(generic.contains(P::PrimePoint::at(2)));
    CHECK(PrimeSet::points({2, 3}).name() == "{2, 3}");
    CHECK(PrimeSet::everything().name() == "all of Spec Z");
    CHECK(PrimeSet{true, MaximalSet::of({5})}.name() == "{(0)} and {5}");
}

TEST_CASE("specialization closed means no generic point or the whole spectrum") {
    CHECK(P::is_specialization_closed(PrimeSet::points({2, 3})));
    CHECK(P::is_specialization_closed(PrimeSet::closed_points()));
    CHECK(P::is_specialization_closed(PrimeSet::everything()));
    CHECK(P::is_specialization_closed(PrimeSet::nothing()));
    CHECK_FALSE(P::is_specialization_closed(PrimeSet::only_generic()));
    CHECK_FALSE(P::is_specialization_closed(PrimeSet{true, MaximalSet::of({2})}));
    P::CoherenceReport rep = P::is_coherent(PrimeSet::points({2}));
    CHECK(rep.coherent);
    CHECK_FALSE(rep.reason.empty());
}

TEST_CASE("symbolic modules normalize to a canonical direct sum") {
    CHECK(SymbolicModule::of({Atom::localized(MaximalSet::none())}) ==
          SymbolicModule::of({Atom::free(1)}));
    CHECK(SymbolicModule::of({Atom::localized(MaximalSet::all())}) ==
          SymbolicModule::of({Atom::rationals()}));
    CHECK(SymbolicModule::of({Atom::pruefer_sum(MaximalSet::of({2, 3}))}) ==
          SymbolicModule::of({Atom::pruefer(2), Atom::pruefer(3)}));
    CHECK(SymbolicModule::of({Atom::pruefer_sum(MaximalSet::none())}).is_zero());
    CHECK(SymbolicModule::of({Atom::free(2), Atom::free(3)}).name() == "Z^5");
    CHECK(SymbolicModule::of({Atom::free(0)}).is_zero());

    // lone divisible torsion is absorbed into a cofinite sum that misses it
    CHECK(SymbolicModule::of({Atom::pruefer(2), Atom::pruefer_sum(MaximalSet::all_but({2, 3}))}) ==
          SymbolicModule::of({Atom::pruefer_sum(MaximalSet::all_but({3}))}));
    CHECK(SymbolicModule::of({Atom::pruefer(2), Atom::pruefer(3),
                              Atom::pruefer_sum(MaximalSet::all_but({2, 3}))})
              .name() == "Q/Z");

    Atom dead;
    dead.kind = P::AtomKind::cyclic;
    dead.p = 2;
    dead.k = 0;
    CHECK(SymbolicModule::of({dead}).is_zero());

    CHECK(SymbolicModule::of({Atom::rationals(), Atom::free(1), Atom::cyclic(2, 1)}).name() ==
          "Z + Z/2 + Q");
    CHECK(SymbolicModule::zero().name() == "0");
    SymbolicModule m = SymbolicModule::of({Atom::cyclic(2, 2)});
    CHECK(m.plus(m) == SymbolicModule::of({Atom::cyclic(2, 2), Atom::cyclic(2, 2)}));
}

TEST_CASE("atom display names are the usual ones") {
    CHECK(Atom::free(1).name() == "Z");
    CHECK(Atom::free(3).name() == "Z^3");
    CHECK(Atom::cyclic(2, 2).name() == "Z/4");
    CHECK(Atom::cyclic(2, 53).name() == "Z/2^53");
    CHECK(Atom::localized(MaximalSet::of({2, 3})).name() == "Z[1/6]");
    CHECK(Atom::localized(MaximalSet::all_but({2})).name() == "Z_(2)");
    CHECK(Atom::rationals().name() == "Q");
    CHECK(Atom::pruefer(2).name() == "Z(2^inf)");
    CHECK(Atom::pruefer_sum(MaximalSet::all()).name() == "Q/Z");
    CHECK(Atom::pruefer_sum(MaximalSet::all_but({2})).name() == "Q/Z omitting {2}");
}

TEST_CASE("support and associated points follow the atom shapes") {
    CHECK(Atom::free(1).supp() == PrimeSet::everything());
    CHECK(Atom::free(1).ass() == PrimeSet::only_generic());
    CHECK(Atom::cyclic(3, 2).supp() == PrimeSet::points({3}));
    CHECK(Atom::cyclic(3, 2).ass() == PrimeSet::points({3}));
    PrimeSet l2 = Atom::localized(MaximalSet::of({2})).supp();
    CHECK(l2.generic);
    CHECK(l2.contains(P::PrimePoint::at(3)));
    CHECK_FALSE(l2.contains(P::PrimePoint::at(2)));
    CHECK(Atom::localized(MaximalSet::of({2})).ass() == PrimeSet::only_generic());
    CHECK(Atom::rationals().supp() == PrimeSet::only_generic());
    CHECK(Atom::pruefer(5).supp() == PrimeSet::points({5}));
    PrimeSet qz2 = Atom::pruefer_sum(MaximalSet::all_but({2})).supp();
    CHECK_FALSE(qz2.generic);
    CHECK(qz2.contains(P::PrimePoint::at(3)));
    CHECK_FALSE(qz2.contains(P::PrimePoint::at(2)));

    SymbolicModule m = SymbolicModule::of({Atom::free(1), Atom::cyclic(2, 1)});
    CHECK(P::supp(m) == PrimeSet::everything());
    CHECK(P::ass(m) == PrimeSet{true, MaximalSet::of({2})});
    CHECK(P::supp(SymbolicModule::zero()).empty());
}

TEST_CASE("splitting the integers at one prime gives the classical sequence") {
    SymbolicModule z = SymbolicModule::of({Atom::free(1)});
    CHECK(P::five_term_pid(z, PrimeSet::points({2})).display() ==
          "0 -> 0 -> 0 -> Z -> Z[1/2] -> Z(2^inf) -> 0");
    CHECK(P::five_term_pid(z, PrimeSet::points({3})).display() ==
          "0 -> 0 -> 0 -> Z -> Z[1/3] -> Z(3^inf) -> 0");
    CHECK(P::five_term_pid(z, PrimeSet::points({5})).display() ==
          "0 -> 0 -> 0 -> Z -> Z[1/5] -> Z(5^inf) -> 0");
}

TEST_CASE("splitting the integers at two primes localizes at their product") {
    SymbolicModule z = SymbolicModule::of({Atom::free(1)});
    P::SymbolicFiveTerm ft = P::five_term_pid(z, PrimeSet::points({2, 3}));
    CHECK(ft.y_high.name() == "Z[1/6]");
    CHECK(ft.x_high == SymbolicModule::of({Atom::pruefer(2), Atom::pruefer(3)}));
    CHECK(ft.x_low.is_zero());
}

TEST_CASE("torsion atoms route by membership of their prime") {
    PrimeSet at2 = PrimeSet::points({2});

    P::SymbolicFiveTerm inside =
        P::five_term_pid(SymbolicModule::of({Atom::cyclic(2, 3)}), at2);
    CHECK(inside.x_low == SymbolicModule::of({Atom::cyclic(2, 3)}));
    CHECK(inside.y_high.is_zero());
    CHECK(inside.x_high.is_zero());
    CHECK(inside.display() == "0 -> 0 -> Z/8 -> Z/8 -> 0 -> 0 -> 0");

    P::SymbolicFiveTerm outside =
        P::five_term_pid(SymbolicModule::of({Atom::cyclic(3, 1)}), at2);
    CHECK(outside.x_low.is_zero());
    CHECK(outside.y_high == SymbolicModule::of({Atom::cyclic(3, 1)}));
    CHECK(outside.x_high.is_zero());
}

TEST_CASE("a localization off the support inverts the missing primes") {
    P::SymbolicFiveTerm ft = P::five_term_pid(
        SymbolicModule::of({Atom::localized(MaximalSet::of({3}))}), PrimeSet::points({2}));
    CHECK(ft.y_high == SymbolicModule::of({Atom::localized(MaximalSet::of({2, 3}))}));
    CHECK(ft.y_high.name() == "Z[1/6]");
    CHECK(ft.x_high == SymbolicModule::of({Atom::pruefer(2)}));
    CHECK(ft.x_low.is_zero());
}

TEST_CASE("divisible torsion splits prime by prime across the support") {
    P::SymbolicFiveTerm ft = P::five_term_pid(
        SymbolicModule::of({Atom::pruefer_sum(MaximalSet::all())}), PrimeSet::points({2}));
    CHECK(ft.x_low == SymbolicModule::of({Atom::pruefer(2)}));
    CHECK(ft.y_high == SymbolicModule::of({Atom::pruefer_sum(MaximalSet::all_but({2}))}));
    CHECK(ft.y_high.name() == "Q/Z omitting {2}");
    CHECK(ft.x_high.is_zero());

    P::SymbolicFiveTerm rat = P::five_term_pid(
        SymbolicModule::of({Atom::rationals()}), PrimeSet::points({2}));
    CHECK(rat.y_high == SymbolicModule::of({Atom::rationals()}));
    CHECK(rat.x_low.is_zero());
    CHECK(rat.x_high.is_zero());
}

TEST_CASE("a mixed module distributes its atoms across all three destinations") {
    SymbolicModule m = SymbolicModule::of(
        {Atom::cyclic(2, 2), Atom::cyclic(3, 2), Atom::pruefer(5), Atom::free(1)});
    P::SymbolicFiveTerm ft = P::five_term_pid(m, PrimeSet::points({2, 5}));
    CHECK(ft.routes.size() == 4);
    CHECK(ft.x_low == SymbolicModule::of({Atom::cyclic(2, 2), Atom::pruefer(5)}));
    CHECK(ft.y_high ==
          SymbolicModule::of({Atom::cyclic(3, 2), Atom::localized(MaximalSet::of({2, 5}))}));
    CHECK(ft.x_high == SymbolicModule::of({Atom::pruefer(2), Atom::pruefer(5)}));
    for (const P::AtomRoute& r : ft.routes) CHECK_FALSE(r.label.empty());
}

TEST_CASE("the five-term split rejects supports that are not specialization closed") {
    SymbolicModule z = SymbolicModule::of({Atom::free(1)});
    CHECK_THROWS_AS(P::five_term_pid(z, PrimeSet{true, MaximalSet::of({2})}), homdec::error);
    CHECK_THROWS_AS(P::five_term_pid(z, PrimeSet::only_generic()), homdec::error);
    CHECK_THROWS_AS(P::five_term_pid(z, PrimeSet::everything()), homdec::error);
}

TEST_CASE("random modules split with the verifier silent") {
    std::mt19937_64 rng(411);
    std::vector<P::u64> small{2, 3, 5, 7};
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<Atom> atoms;
        int n = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) {
            switch (rng() % 6) {
                case 0: atoms.push_back(Atom::free(1 + rng() % 3)); break;
                case 1: atoms.push_back(Atom::cyclic(small[rng() % 4], 1 + rng() % 4)); break;
                case 2: atoms.push_back(Atom::localized(random_set(rng))); break;
                case 3: atoms.push_back(Atom::rationals()); break;
                case 4: atoms.push_back(Atom::pruefer(small[rng() % 4])); break;
                case 5: atoms.push_back(Atom::pruefer_sum(random_set(rng))); break;
            }
        }
        std::vector<P::u64> phi_primes;
        for (P::u64 p : pool)
            if (rng() % 2) phi_primes.push_back(p);
        PrimeSet phi = rng() % 4 ? PrimeSet::points(phi_primes)
                                 : PrimeSet{false, MaximalSet::all_but(phi_primes)};
        SymbolicModule m = SymbolicModule::of(atoms);
        CHECK_NOTHROW(P::five_term_pid(m, phi));
    }
}

TEST_CASE("atoms supported inside and outside a support set are orthogonal") {
    std::vector<Atom> xs = {Atom::cyclic(2, 1), Atom::cyclic(2, 3), Atom::cyclic(5, 2),
                            Atom::pruefer(2),   Atom::pruefer(5),
                            Atom::pruefer_sum(MaximalSet::of({2, 5}))};
    std::vector<Atom> ys = {Atom::cyclic(3, 2),
                            Atom::pruefer(3),
                            Atom::localized(MaximalSet::of({2, 5})),
                            Atom::localized(MaximalSet::all_but({3})),
                            Atom::rationals(),
                            Atom::pruefer_sum(MaximalSet::all_but({2, 5}))};
    PrimeSet phi = PrimeSet::points({2, 5});
    for (const Atom& x : xs) {
        CHECK(x.supp().subset_of(phi));
        for (const Atom& y : ys) {
            INFO("Hom/Ext (" << x.name() << ", " << y.name() << ")");
            CHECK(y.supp().subset_of(phi.complement()));
            CHECK(P::hom_vanishes(x, y));
            CHECK(P::ext1_vanishes(x, y));
        }
    }
}

TEST_CASE("localizing certifies that the reflection is a module over the localized ring") {
    SymbolicModule m = SymbolicModule::of({Atom::free(1), Atom::cyclic(2, 2)});
    P::LocalizationReport rep = P::localize_decomposition(m, MaximalSet::of({2}));
    CHECK(rep.five_term.x_low == SymbolicModule::of({Atom::cyclic(2, 2)}));
    CHECK(rep.five_term.y_high == SymbolicModule::of({Atom::localized(MaximalSet::of({2}))}));
    CHECK(rep.y_side_local);
    CHECK(rep.certificate.find("Z[1/2]") != std::string::npos);

    P::LocalizationReport full =
        P::localize_decomposition(SymbolicModule::of({Atom::free(1)}), MaximalSet::all());
    CHECK(full.five_term.display() == "0 -> 0 -> 0 -> Z -> Q -> Q/Z -> 0");
    CHECK(full.y_side_local);

    P::LocalizationReport torsion =
        P::localize_decomposition(SymbolicModule::of({Atom::cyclic(2, 1)}), MaximalSet::of({2}));
    CHECK(torsion.five_term.y_high.is_zero());
    CHECK(torsion.y_side_local);
    CHECK_FALSE(torsion.certificate.empty());
}

TEST_CASE("finitely supported torsion splits as a product over its primes") {
    SymbolicModule m = SymbolicModule::of({Atom::cyclic(2, 2), Atom::cyclic(3, 1)});
    auto parts = P::product_split(m);
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(2) == SymbolicModule::of({Atom::cyclic(2, 2)}));
    CHECK(parts.at(3) == SymbolicModule::of({Atom::cyclic(3, 1)}));

    SymbolicModule mixed =
        SymbolicModule::of({Atom::cyclic(2, 2), Atom::cyclic(3, 2), Atom::pruefer(5)});
    auto three = P::product_split(mixed);
    REQUIRE(three.size() == 3);
    CHECK(three.at(5) == SymbolicModule::of({Atom::pruefer(5)}));
    SymbolicModule glued = SymbolicModule::zero();
    for (const auto& [p, piece] : three) glued = glued.plus(piece);
    CHECK(glued == mixed);

    CHECK_THROWS_AS(P::product_split(SymbolicModule::of({Atom::free(1)})), homdec::error);
    CHECK_THROWS_AS(
        P::product_split(SymbolicModule::of({Atom::pruefer_sum(MaximalSet::all_but({2}))})),
        homdec::error);
}

TEST_CASE("the stratification tree refines torsion prime by prime") {
    P::StratumNode root = P::stratify(5);
    CHECK(root.label == "Spec Z");
    REQUIRE(root.children.size() == 2);
    const P::StratumNode& torsion = root.children[0];
    const P::StratumNode& generic = root.children[1];
    CHECK(torsion.label == "Supp^{-1}(Max)");
    REQUIRE(torsion.children.size() == 5);
    CHECK(torsion.children[0].label == "Supp^{-1}({2})");
    CHECK(torsion.children[0].abelian_simple);
    CHECK(torsion.children[0].category.find("Z/2") != std::string::npos);
    CHECK(torsion.children[4].label == "Supp^{-1}({11})");
    CHECK(generic.label == "Supp^{-1}(Min)");
    CHECK(generic.abelian_simple);
    CHECK(generic.children.empty());

    CHECK(P::stratify(3).children[0].children.size() == 3);
    std::string tree = P::render_tree(root);
    CHECK(tree.find("Spec Z") != std::string::npos);
    CHECK(tree.find("  Supp^{-1}(Max)") != std::string::npos);
    CHECK(tree.find("[simple]") != std::string::npos);
}

namespace {

struct Rep {
    std::string tag;
    Atom atom;
    zz::Tower tower;
};

std::vector<Rep> representatives() {
    return {
        {"Z", Atom::free(1), zz::constant_z()},
        {"Z/4", Atom::cyclic(2, 2), zz::constant_cyclic(4)},
        {"Z/3", Atom::cyclic(3, 1), zz::constant_cyclic(3)},
        {"Z[1/2]", Atom::localized(MaximalSet::of({2})), zz::inverted_primes({2})},
        {"Z[1/3]", Atom::localized(MaximalSet::of({3})), zz::inverted_primes({3})},
        {"Z[1/6]", Atom::localized(MaximalSet::of({2, 3})), zz::inverted_primes({2, 3})},
        {"Q", Atom::rationals(), zz::rationals()},
        {"Z(2^inf)", Atom::pruefer(2), zz::pruefer(2)},
        {"Z(3^inf)", Atom::pruefer(3), zz::pruefer(3)},
        {"Q/Z", Atom::pruefer_sum(MaximalSet::all()), zz::torsion_omitting({})},
        {"Q/Z omitting {2}", Atom::pruefer_sum(MaximalSet::all_but({2})),
         zz::torsion_omitting({2})},
    };
}

}  // namespace

TEST_CASE("the symbolic vanishing tables agree with the tower oracle") {
    // The oracle computes with truncated colimit towers and reports its own
    // stability; the table is closed form.  Every ordered pair of the eleven
    // representatives is checked, 121 entries per functor.
    std::vector<Rep> reps = representatives();
    for (const Rep& a : reps) {
        for (const Rep& b : reps) {
            INFO("pair (" << a.tag << ", " << b.tag << ")");
            zz::Verdict hom = zz::hom_vanishes(a.tower, b.tower);
            {
                INFO("functor Hom");
                REQUIRE(hom.stable);
                CHECK(hom.vanishes == P::hom_vanishes(a.atom, b.atom));
            }
            zz::Verdict ext = zz::ext1_vanishes(a.tower, b.tower);
            {
                INFO("functor Ext^1");
                REQUIRE(ext.stable);
                CHECK(ext.vanishes == P::ext1_vanishes(a.atom, b.atom));
            }
        }
    }
}
