#include <catch2/catch_amalgamated.hpp>

#include "homdec/suite.hpp"

using namespace homdec;
using Q = Rational;

namespace {

AlgebraPtr<Q> one_point() {
    QuiverPresentation<Q> pt;
    pt.name = "pt";
    pt.n_vertices = 1;
    return compile_quiver(pt);
}

struct Fixture {
    AlgebraPtr<Q> a;
    std::shared_ptr<const RingEpi<Q>> e;
};

Fixture source_collapse() {
    auto a = compile_quiver(linear_quiver<Q>("A2", 2));
    Matrix<Q> lam(1, 3);
    lam.at(0, 1) = Q(1);
    return {a, std::make_shared<const RingEpi<Q>>(make_ring_epi(a, one_point(), lam))};
}

Fixture radical_quotient() {
    auto a = compile_quiver(loop_quiver<Q>("dual-numbers", 2));
    Matrix<Q> lam(1, 2);
    lam.at(0, 0) = Q(1);
    return {a, std::make_shared<const RingEpi<Q>>(make_ring_epi(a, one_point(), lam))};
}

const ClaimResult* find_claim(const DecompositionCertificate& c, const std::string& name) {
    for (const auto& cl : c.claims)
        if (cl.claim == name) return &cl;
    return nullptr;
}

}  // namespace

TEST_CASE("a corpus regenerates identically from the same seed") {
    auto f = source_collapse();
    auto c1 = make_corpus(f.a, 7);
    auto c2 = make_corpus(f.a, 7);

    REQUIRE(c1.modules.size() == c2.modules.size());
    CHECK(c1.modules.size() >= 20);
    for (std::size_t i = 0; i < c1.modules.size(); ++i) {
        CHECK(c1.modules[i]->name() == c2.modules[i]->name());
        CHECK(c1.modules[i]->same_presentation(*c2.modules[i]));
    }
}

TEST_CASE("a corpus carries the structural inventory without duplicates") {
    auto f = source_collapse();
    auto c = make_corpus(f.a, 7);

    auto holds = [&](const ModulePtr<Q>& m) {
        for (const auto& known : c.modules)
            if (known->same_presentation(*m)) return true;
        return false;
    };
    for (const auto& s : c.ctx.s.simples) CHECK(holds(s));
    for (const auto& p : c.ctx.s.projectives) CHECK(holds(p));
    for (const auto& i : c.ctx.injectives) CHECK(holds(i));
    CHECK(holds(zero_module(f.a)));
    CHECK(holds(regular_module(f.a)));

    for (std::size_t i = 0; i < c.modules.size(); ++i)
        for (std::size_t j = i + 1; j < c.modules.size(); ++j)
            CHECK_FALSE(c.modules[i]->same_presentation(*c.modules[j]));

    for (const auto& m : c.modules)
        if (m->name().size() > 1 && m->name()[0] == 'r') CHECK(m->dim() <= 6);
}

TEST_CASE("the property suite is green for the collapse at the source") {
    auto f = source_collapse();
    auto corpus = make_corpus(f.a, 20260816);
    auto certs = run_property_suite(corpus, f.e);

    REQUIRE(certs.size() == 3);
    CHECK(certs[0].pair_label == "(image, perp)");
    CHECK(certs[1].pair_label == "(perp, image)");
    CHECK(certs[2].pair_label == "(section round trip)");
    for (const auto& cert : certs) {
        INFO(cert.render());
        CHECK(cert.all_green());
    }
    REQUIRE(certs[0].pair.has_value());
    CHECK(certs[0].pair->holds());
    REQUIRE(certs[1].pair.has_value());
    CHECK(certs[1].pair->holds());
}

TEST_CASE("claim tiers separate finite criteria from seeded sampling") {
    auto f = source_collapse();
    auto corpus = make_corpus(f.a, 5);
    auto cert = pair_certificate(corpus, hom_side_pair<Q>(f.e));

    const ClaimResult* he = find_claim(cert, "homological-epi");
    REQUIRE(he != nullptr);
    CHECK(he->tier == Tier::complete);
    CHECK(he->verdict == Verdict::yes);

    const ClaimResult* sweep = find_claim(cert, "five-term-sweep");
    REQUIRE(sweep != nullptr);
    CHECK(sweep->tier == Tier::sampled);
    CHECK(cert.render().find("holds (sampled seed=5)") != std::string::npos);
    CHECK(cert.render().find("holds (complete)") != std::string::npos);
}

TEST_CASE("a non homological epi turns the certificate red and skips the rest") {
    auto f = radical_quotient();
    auto corpus = make_corpus(f.a, 3);
    auto certs = run_property_suite(corpus, f.e);

    REQUIRE(certs.size() == 3);
    for (const auto& cert : certs) {
        INFO(cert.render());
        CHECK_FALSE(cert.all_green());
        REQUIRE_FALSE(cert.claims.empty());
        CHECK(cert.claims[0].claim == "homological-epi");
        CHECK(cert.claims[0].verdict == Verdict::no);
        for (std::size_t i = 1; i < cert.claims.size(); ++i) {
            CHECK(cert.claims[i].verdict == Verdict::unknown);
            CHECK(cert.claims[i].evidence.rfind("skipped: ", 0) == 0);
        }
        CHECK_FALSE(cert.pair.has_value());
    }
    CHECK(certs[0].claims[0].evidence.find("Tor_1") != std::string::npos);
}

TEST_CASE("certificates render byte identically for the same seed") {
    auto f = source_collapse();
    auto render_all = [&]() {
        auto corpus = make_corpus(f.a, 20260816);
        std::string out;
        for (const auto& cert : run_property_suite(corpus, f.e)) out += cert.render();
        return out;
    };
    std::string first = render_all();
    std::string second = render_all();
    CHECK(first == second);
    CHECK(first.find("certificate \"(image, perp)\" seed 20260816\n") == 0);
    CHECK(first.find("conditions: ortho yes complete") != std::string::npos);
    CHECK(first.find("claim homological-epi: holds (complete)") != std::string::npos);
    CHECK(first.rfind("end certificate\n") == first.size() - 16);
}

TEST_CASE("the symbolic suite is green at the support of one prime") {
    auto sc = make_symbolic_corpus(pid::PrimeSet::points({2}), 11);
    CHECK(sc.modules.size() >= 9);
    auto certs = run_property_suite(sc);

    REQUIRE(certs.size() == 1);
    INFO(certs[0].render());
    CHECK(certs[0].all_green());
    CHECK(certs[0].pair_label == "(torsion at {2}, complement)");

    const ClaimResult* strat = find_claim(certs[0], "stratification");
    REQUIRE(strat != nullptr);
    CHECK(strat->tier == Tier::complete);
    const ClaimResult* split = find_claim(certs[0], "product-split");
    REQUIRE(split != nullptr);
    CHECK(split->verdict == Verdict::yes);
}

TEST_CASE("the symbolic suite regenerates and renders deterministically") {
    auto once = [&]() {
        auto sc = make_symbolic_corpus(pid::PrimeSet::points({2, 5}), 42);
        return run_property_suite(sc)[0].render();
    };
    CHECK(once() == once());
}

TEST_CASE("an unusable support set is rejected up front") {
    auto sc = make_symbolic_corpus(pid::PrimeSet::only_generic(), 1);
    auto certs = run_property_suite(sc);

    REQUIRE(certs.size() == 1);
    CHECK_FALSE(certs[0].all_green());
    CHECK(certs[0].claims[0].claim == "support-closure");
    CHECK(certs[0].claims[0].verdict == Verdict::no);
    for (std::size_t i = 1; i < certs[0].claims.size(); ++i)
        CHECK(certs[0].claims[i].evidence.rfind("skipped: ", 0) == 0);

    auto everything = make_symbolic_corpus(pid::PrimeSet::everything(), 1);
    CHECK_FALSE(run_property_suite(everything)[0].all_green());
}
