#include <doctest.h>

#include "crverify/contact.hpp"
#include "crverify/fixtures.hpp"

using namespace crv;

namespace {

const Record& rec(const CheckReport& r, const char* name) { return r.at(name); }

}  // namespace

TEST_SUITE("contact") {

TEST_CASE("standard R^3 structure is almost contact metric") {
    const SpecFile s = load_fixture("fix-s3");
    const Samples smp = draw_samples(3, {});
    const CheckReport r = check_almost_contact(s.structure(), s.metric(), smp);
    CHECK(r.passed());
    CHECK(rec(r, record::kPhiSquared).max_residual < 1e-12);
    CHECK(rec(r, record::kXiUnit).max_residual < 1e-12);
}

TEST_CASE("contact metric convention: the half factor is primary") {
    const SpecFile s = load_fixture("fix-s3");
    const CheckReport r = check_contact_metric(s.structure(), s.metric(), draw_samples(3, {}));
    CHECK(rec(r, record::kContact).passed);
    CHECK(rec(r, record::kContactSkew).passed);
    const Record& nohalf = rec(r, record::kContactNoHalf);
    CHECK(nohalf.kind == RecordKind::Info);
    CHECK_FALSE(nohalf.passed);
    CHECK(r.passed());
}

TEST_CASE("Levi-Civita Sasakian identities hold for the standard phi") {
    const SpecFile s = load_fixture("fix-s3");
    const CheckReport r = check_sasakian(s.structure(), s.metric(), draw_samples(3, {}));
    CHECK(r.passed());
    CHECK(rec(r, record::kSasakiXi).max_residual < 1e-7);
    CHECK(rec(r, record::kSasakiPhi).max_residual < 1e-7);
}

TEST_CASE("statistical characterization holds for -phi at every lambda") {
    const SpecFile s = load_fixture("fix-s3-reversed");
    const Samples smp = draw_samples(3, {});
    for (double lambda : {0.0, 1.0, 2.5}) {
        CAPTURE(lambda);
        const SasakiStatStructure sss = lambda_family(s.metric(), s.structure(), lambda);
        const CheckReport r = check_sasakian_statistical(sss, smp);
        for (const std::string& name : characterization_records()) {
            CAPTURE(name);
            CHECK(r.at(name).passed);
            CHECK(r.at(name).max_residual < 1e-7);
        }
        // The delegated Levi-Civita identities flip sign with phi.
        CHECK_FALSE(r.at(record::kSasakiXi).passed);
    }
}

TEST_CASE("the two sign conventions exclude each other") {
    const SpecFile s = load_fixture("fix-s3");
    const SasakiStatStructure sss = lambda_family(s.metric(), s.structure(), 1.0);
    const CheckReport r = check_sasakian_statistical(sss, draw_samples(3, {}));
    CHECK(r.at(record::kSasakiXi).passed);
    CHECK_FALSE(r.at(record::kXiNabla).passed);
    CHECK(r.at(record::kXiNabla).max_residual == doctest::Approx(1.0));
    CHECK(r.at(record::kKPhi).passed);
}

TEST_CASE("K(X,phiY) + phiK(X,Y) = 0 fails for a K transverse to xi") {
    const SpecFile s = load_fixture("fix-s3-reversed");
    // K(X,Y) = eta(X)eta(Y) e1: symmetric, but phi does not kill it.
    std::vector<Expr> K(27, Expr::constant(0));
    const auto& eta = s.ambient.eta;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) K[(0 * 3 + i) * 3 + j] = eta[i] * eta[j];
    const SasakiStatStructure sss = with_difference_tensor(s.metric(), s.structure(), K);
    const CheckReport r = check_sasakian_statistical(sss, draw_samples(3, {}));
    CHECK_FALSE(r.at(record::kKPhi).passed);
}

TEST_CASE("rank of phi") {
    const SpecFile s = load_fixture("paper-r7-euclidean");
    const std::vector<double> p(7, 0.3);
    CHECK(phi_rank(s.structure(), p) == 6);
}

TEST_CASE("broken phi^2 is reported with a witness") {
    const std::size_t n = 3;
    std::vector<Expr> phi(9, Expr::constant(0));
    phi[0 * 3 + 1] = Expr::constant(2);
    phi[1 * 3 + 0] = Expr::constant(-1);
    std::vector<Expr> e3 = {Expr::constant(0), Expr::constant(0), Expr::constant(1)};
    const AlmostContact acs{TensorField11(n, phi), VectorField(e3), OneFormField(e3)};
    const CheckReport r = check_almost_contact(acs, MetricField::euclidean(n), draw_samples(n, {}));
    const Record& sq = r.at(record::kPhiSquared);
    CHECK_FALSE(sq.passed);
    REQUIRE(sq.witness.has_value());
    CHECK(sq.witness->sample == 0);
    CHECK(sq.max_residual == doctest::Approx(1.0));
}

}  // TEST_SUITE
