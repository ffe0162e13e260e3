// Acceptance run: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; otherwise only the numbers given.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "crverify/crchecks.hpp"
#include "crverify/fixtures.hpp"
#include "crverify/runner.hpp"
#include "support.hpp"

#ifndef VERIFY_EXE
#error "VERIFY_EXE must name the verify binary"
#endif

using namespace crv;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    /// Records a failed condition; keeps the first few messages.
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass || failures < 4) detail << (failures ? "; " : "") << what;
        pass = false;
        ++failures;
    }

    int failures = 0;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Samples seeded(std::size_t dim, std::size_t count, const Admissible& guard = {}) {
    SamplingOptions o;
    o.count = count;
    return draw_samples(dim, o, guard);
}

void below(Outcome& o, const CheckReport& r, const std::string& name, double bound) {
    const Record* rec = r.find(name);
    if (!rec) {
        o.require(false, "missing record " + name);
        return;
    }
    o.require(rec->max_residual < bound, name + " residual " + sci(rec->max_residual));
}

// 1 ------------------------------------------------------------------------
/// The central difference at h is a usable oracle when it agrees with the
/// one at 2h; the gap estimates its truncation error. Independent of the
/// symbolic derivative under test.
bool fd_reliable(const Expr& e, const Vec& p, std::size_t k, double h) {
    const double a = testing::central_difference(e, p, k, h), b = testing::central_difference(e, p, k, 2 * h);
    return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a));
}

Outcome expression_engine() {
    Outcome o;
    constexpr int kCorpus = 560;
    constexpr double kH = 1e-5;
    std::size_t derivs = 0, trips = 0, redrawn = 0;
    for (int i = 0; i < kCorpus; ++i) {
        const std::size_t dim = 1 + static_cast<std::size_t>(i % 7);
        testing::ExprGen local(1000 + static_cast<std::uint64_t>(i), dim);
        Expr e;
        std::vector<Vec> pts;
        for (;;) {
            e = local.tree(6);
            pts.clear();
            for (int s = 0; s < 10; ++s) pts.push_back(local.point(0.9));
            bool ok = true;
            for (const Vec& p : pts)
                for (std::size_t k = 0; k < dim && ok; ++k) ok = fd_reliable(e, p, k, kH);
            if (ok) break;
            ++redrawn;
        }
        const Expr back = parse(e.str(), dim);
        std::vector<Expr> d;
        for (std::size_t k = 0; k < dim; ++k) d.push_back(e.diff(k));
        for (const Vec& p : pts) {
            o.require(back.eval(as_span(p)) == e.eval(as_span(p)), "round trip differs for " + e.str());
            ++trips;
            for (std::size_t k = 0; k < dim; ++k) {
                const double sym = d[k].eval(as_span(p));
                const double fd = testing::central_difference(e, p, k, kH);
                o.require(std::abs(sym - fd) <= 1e-6 * std::max(1.0, std::abs(sym)),
                          "d/dx" + std::to_string(k + 1) + " of " + e.str() + ": " + sci(sym) + " vs " + sci(fd));
                ++derivs;
            }
        }
    }
    o.detail << (o.pass ? "" : "; ") << kCorpus << " expressions (" << redrawn
             << " redrawn where the difference oracle was unstable), " << derivs << " derivative and " << trips
             << " round-trip comparisons";
    return o;
}

// 2 ------------------------------------------------------------------------
Outcome almost_contact() {
    Outcome o;
    const SpecFile s = load_fixture("paper-r7-euclidean");
    const CheckReport r = check_almost_contact(s.structure(), s.metric(), seeded(7, 100));
    double worst = 0;
    for (const char* name : {record::kPhiSquared, record::kCompatible, record::kPhiXi, record::kEtaPhi,
                             record::kEtaXi}) {
        below(o, r, name, 1e-12);
        worst = std::max(worst, r.at(name).max_residual);
    }
    o.require(r.samples == 100, "sample count");
    o.detail << (o.pass ? "" : "; ") << "max residual " << sci(worst) << " over 100 samples";
    return o;
}

// 3 ------------------------------------------------------------------------
Outcome statistical() {
    Outcome o;
    const SpecFile s = load_fixture("paper-r7-euclidean");
    const SasakiStatStructure sss = s.sasaki_statistical();
    const Samples smp = seeded(7, 64);
    const CheckReport r = check_statistical(sss.st, smp);
    for (const char* name : {"torsion of nabla", "torsion of nabla*", "Codazzi symmetry of nabla",
                             "Codazzi symmetry of nabla*", "duality", "K symmetry", "K self-adjointness"})
        below(o, r, name, 1e-9);
    below(o, check_sasakian_statistical(sss, smp), record::kKPhi, 1e-9);

    // Hand oracle: K = eta(x)eta(x)xi on a flat metric gives
    // (nabla_X g)(Y,Z) = -2 eta(X)eta(Y)eta(Z).
    double worst = 0;
    for (std::size_t a = 0; a < smp.size(); ++a) {
        const auto p = as_span(smp[a]);
        const Christoffel G = sss.st.nabla.at(p);
        const Mat g = s.metric().at(p);
        const Vec eta = s.structure().eta.at(p);
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j)
                for (std::size_t k = 0; k < 7; ++k) {
                    double v = 0;  // d_i g_jk = 0
                    for (std::size_t l = 0; l < 7; ++l) v -= G(l, i, j) * g(l, k) + G(l, i, k) * g(j, l);
                    worst = std::max(worst, std::abs(v + 2 * eta[i] * eta[j] * eta[k]));
                }
    }
    o.require(worst < 1e-12, "hand oracle residual " + sci(worst));
    o.detail << (o.pass ? "" : "; ") << "hand oracle residual " << sci(worst);
    return o;
}

// 4 ------------------------------------------------------------------------
Outcome cr_suite() {
    Outcome o;
    const CRStructure cr = load_fixture("paper-r7-euclidean").cr_structure();
    const Samples smp = seeded(5, 64, cr_guard(cr));
    namespace rc = record;
    const CheckReport c = check_contact_cr(cr, smp);
    for (const char* name : {rc::kInvariant, rc::kAntiInvariant, rc::kXiInD, rc::kNuInvariant, rc::kNuOrthogonal,
                             rc::kNormalSplit, rc::kFP1, rc::kTP2, rc::kFFP2, rc::kTTP1, rc::kDecomposition}) {
        below(o, c, name, 1e-9);
        o.require(c.at(name).passed, std::string(name) + " failed");
    }
    const CheckReport d = check_integrability_D(cr, smp), dp = check_integrability_Dperp(cr, smp);
    for (const char* name : {rc::kDInvolutive, rc::kDCriterion}) below(o, d, name, 1e-9);
    for (const char* name : {rc::kDperpInvolutive, rc::kDperpCriterion}) below(o, dp, name, 1e-9);

    const CheckReport geo = classify_geodesic(cr, smp);
    for (const Record& rec : geo.records)
        if (rec.kind == RecordKind::Check) o.require(rec.passed, rec.name + " failed");

    double hmax = 0;
    for (std::size_t a = 0; a < smp.size(); ++a) {
        const FramePoint fp(cr.emb, cr.sss.st.g, smp[a]);
        const GWData gw(fp, cr.sss.st);
        for (Role role : {Role::Primal, Role::Dual})
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = 0; j < 5; ++j)
                    hmax = std::max(hmax, fp.normal_norm(gw.h(role, Vec::Unit(5, i), Vec::Unit(5, j))));
    }
    o.require(hmax < 1e-10, "|h| reaches " + sci(hmax));
    o.detail << (o.pass ? "" : "; ") << "max |h|, |h*| " << sci(hmax);
    return o;
}

// 5 ------------------------------------------------------------------------
Outcome audit_records() {
    Outcome o;
    const SpecFile s = load_fixture("paper-r7-euclidean");
    const CRStructure cr = s.cr_structure();

    const CheckReport sas = check_sasakian(s.structure(), s.metric(), seeded(7, 64));
    const Record& xi = sas.at(record::kSasakiXi);
    o.require(!xi.passed, "nabla^ xi record passed");
    o.require(std::abs(xi.max_residual - 1.0) <= 1e-9, "nabla^ xi residual " + sci(xi.max_residual));
    o.require(xi.witness && xi.witness->indices == std::vector<std::size_t>{0}, "nabla^ xi witness is not X = e1");

    // X list is the D generators then xi, so (2, 0) is (X = e5 = xi, U = e3).
    const CheckReport prod = check_cr_product(cr, seeded(5, 64, cr_guard(cr)));
    const Record& crit = prod.at(record::kProductCriterion);
    const Vec J3 = cr.emb.jacobian_at(as_span(crit.witness ? crit.witness->point : Vec::Zero(5))).col(2);
    const double e3 = std::sqrt(J3.dot(s.metric().at(as_span(Vec::Zero(7))) * J3));
    o.require(!crit.passed, "CR-product criterion passed");
    o.require(std::abs(crit.max_residual - e3) <= 1e-9,
              "CR-product residual " + sci(crit.max_residual) + " vs |e3| " + sci(e3));
    o.require(crit.witness && crit.witness->indices == std::vector<std::size_t>{2, 0},
              "CR-product witness is not (xi, e3)");

    const ReportDocument doc = run(s, RunOptions{});
    o.require(doc.exit_code() == 1, "exit code " + std::to_string(doc.exit_code()));
    o.detail << (o.pass ? "" : "; ") << "nabla^ xi residual " << sci(xi.max_residual) << ", CR-product residual "
             << sci(crit.max_residual) << " (|e3| = " << sci(e3) << "), exit " << doc.exit_code();
    return o;
}

// 6 ------------------------------------------------------------------------
Outcome sasakian_control() {
    Outcome o;
    const SpecFile s = load_fixture("fix-s3");
    const Samples smp = seeded(3, 64, metric_guard(s.metric()));
    const CheckReport lc = check_sasakian(s.structure(), s.metric(), smp);
    for (const Record& rec : lc.records) o.require(rec.max_residual < 1e-7, rec.name + " " + sci(rec.max_residual));
    double worst = 0;
    for (double lambda : {0.0, 1.0, 2.5}) {
        const CheckReport r = check_sasakian_statistical(lambda_family(s.metric(), s.structure(), lambda), smp);
        for (const Record& rec : r.records) {
            if (rec.kind != RecordKind::Check) continue;
            worst = std::max(worst, rec.max_residual);
            o.require(rec.max_residual < 1e-7,
                      "lambda " + sci(lambda) + ": " + rec.name + " " + sci(rec.max_residual));
        }
    }
    o.detail << (o.pass ? "" : "; ") << "worst residual " << sci(worst);
    return o;
}

// 7 ------------------------------------------------------------------------
struct RandomSetting {
    Embedding emb;
    StatTriple st;
};

RandomSetting random_setting(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto coef = [&] { return std::round(U(rng) * 100.0) / 100.0; };
    const std::size_t n = 2 + rng() % 4;      // 2..5
    const std::size_t m = 1 + rng() % (n - 1);  // < n
    const std::size_t mm = std::min<std::size_t>(m, 3);

    // gamma^a = x_a + quadratic (a < m), quadratic otherwise.
    std::vector<Expr> comps;
    for (std::size_t a = 0; a < n; ++a) {
        Expr c = Expr::constant(coef());
        for (std::size_t i = 0; i < mm; ++i) {
            c = c + Expr::constant(a == i ? 1.0 + 0.25 * coef() : 0.5 * coef()) * Expr::variable(i, mm);
            for (std::size_t j = i; j < mm; ++j)
                c = c + Expr::constant(0.5 * coef()) * Expr::variable(i, mm) * Expr::variable(j, mm);
        }
        comps.push_back(c);
    }

    // Constant SPD metric.
    Mat A(n, n);
    for (auto& v : A.reshaped()) v = coef();
    const Mat G = A * A.transpose() + static_cast<double>(n) * Mat::Identity(n, n) * 0.5;
    std::vector<Expr> upper;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) upper.push_back(Expr::constant(G(i, j)));
    const MetricField g(n, upper);

    // K^l_ij = G^{lk} C_ijk with C totally symmetric: symmetric, self-adjoint.
    std::vector<double> C(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                const double v = 0.5 * coef();
                for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                                       std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
                    C[(a * n + b) * n + c] = v;
            }
    const Mat Gi = G.inverse();
    std::vector<Expr> K(n * n * n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double v = 0;
                for (std::size_t k = 0; k < n; ++k) v += Gi(l, k) * C[(i * n + j) * n + k];
                K[(l * n + i) * n + j] = Expr::constant(v);
            }
    return {Embedding(mm, comps), StatTriple(g, ConnField(g, 1.0, K))};
}

Outcome gauss_weingarten_corpus() {
    Outcome o;
    std::mt19937_64 rng(42);
    constexpr int kCorpus = 120;
    double worst = 0;
    for (int c = 0; c < kCorpus; ++c) {
        const RandomSetting rs = random_setting(rng);
        try {
            const Samples smp = seeded(rs.emb.m(), 16, embedding_guard(rs.emb, rs.st.g));
            const CheckReport r = check_gauss_weingarten(rs.emb, rs.st, smp);
            for (const char* name : {"Gauss formula (nabla)", "Gauss formula (nabla*)", "Weingarten formula (nabla)",
                                     "Weingarten formula (nabla*)", "shape/second-form pairing (A, h*)",
                                     "shape/second-form pairing (A*, h)", "induced duality"}) {
                below(o, r, name, 1e-7);
                worst = std::max(worst, r.at(name).max_residual);
            }
        } catch (const GeometryError& e) {
            o.require(false, "embedding " + std::to_string(c) + ": " + e.what());
        }
    }
    o.detail << (o.pass ? "" : "; ") << kCorpus << " embeddings, worst residual " << sci(worst);
    return o;
}

// 8 ------------------------------------------------------------------------
Outcome circle_control() {
    Outcome o;
    const Embedding c(1, {cos(parse("x1", 1)), sin(parse("x1", 1))});
    const MetricField g = MetricField::euclidean(2);
    const StatTriple st(g, levi_civita(g));
    const Samples smp = seeded(1, 64, embedding_guard(c, g));
    double hdev = 0, adev = 0;
    for (std::size_t a = 0; a < smp.size(); ++a) {
        const FramePoint fp(c, g, smp[a]);
        const GWData gw(fp, st);
        const Vec e = Vec::Ones(1);
        const Vec h = gw.h(Role::Primal, e, e);
        const double hn = fp.normal_norm(h);
        hdev = std::max(hdev, std::abs(hn - 1.0));
        // g(A_N e, e) = g(h*(e,e), N) with N = h/|h|, and h* = h here.
        const Vec N = h / hn;
        const Vec A = gw.shape(Role::Primal, N, e);
        const double lhs = fp.tangent_norm(e) * fp.tangent_norm(e) * A[0];
        const double rhs = fp.normal_gram()(0, 0) * gw.h(Role::Dual, e, e)[0] * N[0];
        adev = std::max({adev, std::abs(lhs - rhs), std::abs(A[0] - 1.0)});
    }
    o.require(hdev <= 1e-8, "| |h| - 1 | = " + sci(hdev));
    o.require(adev <= 1e-8, "A_N deviation " + sci(adev));
    const CheckReport r = check_gauss_weingarten(c, st, smp);
    o.require(r.at("shape/second-form pairing (A, h*)").passed, "pairing record failed");
    o.detail << (o.pass ? "" : "; ") << "| |h| - 1 | " << sci(hdev) << ", A_N deviation " << sci(adev);
    return o;
}

// 9 ------------------------------------------------------------------------
Outcome cr5_fixture() {
    Outcome o;
    namespace rc = record;
    const SpecFile s = load_fixture("fix-cr5");
    const CRStructure cr = s.cr_structure();
    const SasakiStatStructure sss = s.sasaki_statistical();

    // Admission: ambient statistical structure, the nabla/nabla* Sasakian
    // characterization, and the contact CR structure.
    const Samples amb = seeded(5, 64, metric_guard(s.metric()));
    o.require(check_statistical(sss.st, amb).passed(), "ambient statistical structure rejected");
    const CheckReport ss = check_sasakian_statistical(sss, amb);
    for (const std::string& name : characterization_records())
        o.require(ss.at(name).passed, "ambient " + name + " failed");
    const Samples smp = seeded(4, 64, cr_guard(cr));
    o.require(check_contact_cr(cr, smp).passed(), "contact CR structure rejected");

    double worst = 0;
    auto small = [&](const CheckReport& r, const std::string& name) {
        below(o, r, name, 1e-6);
        if (const Record* rec = r.find(name)) worst = std::max(worst, rec->max_residual);
    };
    const CheckReport p28 = check_prop28(cr.emb, sss, smp);
    for (const char* name : {"covariant derivative of T", "covariant derivative of F", "covariant derivative of B",
                             "covariant derivative of C", "nabla xi along M", "h(X,xi) = FX"})
        small(p28, name);

    const CheckReport sh = check_cr_shape_identities(cr, smp);
    for (const char* name : {rc::kShapeF, rc::kShapeFDual, rc::kCBBridge, rc::kFBBridge}) small(sh, name);
    for (auto [l, r] : {std::pair{rc::kCBLeft, rc::kCBRight}, std::pair{rc::kFBLeft, rc::kFBRight}})
        o.require(sh.at(l).sample_passed == sh.at(r).sample_passed, std::string(l) + " / " + r + " disagree");

    const CheckReport prod = check_cr_product(cr, smp);
    for (const char* name : {rc::kProductShape, rc::kProductHStar, rc::kProductNuBracket, rc::kProductNuShape}) small(prod, name);

    auto co = [&](const CheckReport& a, const std::string& x, const CheckReport& b, const std::string& y) {
        o.require(a.at(x).sample_passed == b.at(y).sample_passed, x + " / " + y + " do not co-occur");
    };
    const CheckReport d = check_integrability_D(cr, smp), dp = check_integrability_Dperp(cr, smp);
    co(d, rc::kDInvolutive, d, rc::kDCriterion);
    co(dp, rc::kDperpInvolutive, dp, rc::kDperpCriterion);
    const CheckReport geo = classify_geodesic(cr, smp);
    for (Role role : {Role::Primal, Role::Dual}) {
        co(geo, geo_name(rc::kDGeodesic, role), geo, shape_name(rc::kDGeodesicShape, role));
        co(geo, geo_name(rc::kMixedGeodesic, role), geo, shape_name(rc::kMixedGeodesicShape, role));
    }
    o.detail << (o.pass ? "" : "; ") << "worst residual " << sci(worst) << ", equivalence pairs co-occur";
    return o;
}

// 10 -----------------------------------------------------------------------
Outcome structure_identities() {
    Outcome o;
    double worst = 0;
    for (const char* fx : {"paper-r7-euclidean", "paper-r7-frame-orthonormal", "fix-cr5"}) {
        const SpecFile s = load_fixture(fx);
        const CRStructure cr = s.cr_structure();
        const CheckReport r =
            check_structure_identities(cr.emb, s.metric(), s.structure(), seeded(cr.emb.m(), 64, cr_guard(cr)));
        for (const char* name : {"T^2 identity", "C^2 identity", "FT = -CF", "TB = -BC"}) {
            below(o, r, name, 1e-9);
            worst = std::max(worst, r.at(name).max_residual);
        }
    }
    o.detail << (o.pass ? "" : "; ") << "worst residual " << sci(worst) << " on three fixtures";
    return o;
}

// 11 -----------------------------------------------------------------------
struct Proc {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Proc invoke(const std::filesystem::path& dir, const std::string& args) {
    const auto out = dir / "out", err = dir / "err";
    const std::string cmd =
        std::string("\"") + VERIFY_EXE + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int st = std::system(cmd.c_str());
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(out), slurp(err)};
}

Outcome cli_contract() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("crverify-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const auto t0 = std::chrono::steady_clock::now();
    const Proc full = invoke(dir, "check --fixture paper-r7-euclidean");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < 5.0, "fixture run took " + sci(secs) + " s");
    o.require(full.code == 1, "full R^7 run exit " + std::to_string(full.code));
    o.require(invoke(dir, "check --fixture paper-r7-euclidean").out == full.out, "text reports differ");
    const Proc js = invoke(dir, "check --fixture fix-cr5 --format structured --seed 9");
    o.require(invoke(dir, "check --fixture fix-cr5 --format structured --seed 9").out == js.out,
              "structured reports differ");
    o.require(invoke(dir, "check --fixture fix-cr5 --format structured --seed 10").out != js.out,
              "seed has no effect");

    o.require(invoke(dir, "check --fixture fix-s3 --suites ambient").code == 0, "passing run is not exit 0");
    o.require(invoke(dir, "fixtures list").code == 0, "fixtures list");
    o.require(invoke(dir, "--help").code == 0, "--help");

    {
        std::ofstream(dir / "bad.json") << "{\n  \"ambient\": {\n    \"dim\": 7,,\n";
        const Proc p = invoke(dir, "check --spec \"" + (dir / "bad.json").string() + "\"");
        o.require(p.code == 2, "malformed spec exit " + std::to_string(p.code));
        o.require(p.err.find("bad.json:line 3, column 14") != std::string::npos, "no location in: " + p.err);
    }
    {
        nlohmann::json d = nlohmann::json::parse(*fixture_document("paper-r7-euclidean"));
        d["ambient"]["eta"][2] = "x8";
        std::ofstream(dir / "x8.json") << d.dump(2);
        const Proc p = invoke(dir, "check --spec \"" + (dir / "x8.json").string() + "\"");
        o.require(p.code == 2, "x8 spec exit " + std::to_string(p.code));
        o.require(p.err.find("ambient.eta[2] offset 0") != std::string::npos, "x8 location missing: " + p.err);
        d = nlohmann::json::parse(*fixture_document("fix-s3"));
        std::ofstream(dir / "nosub.json") << d.dump(2);
        const Proc q = invoke(dir, "check --spec \"" + (dir / "nosub.json").string() + "\" --suites cr");
        o.require(q.code == 2 && q.err.find("missing submanifold block") != std::string::npos,
                  "missing block: exit " + std::to_string(q.code));
    }
    o.require(invoke(dir, "check --fixture fix-s3 --suites nonsense").code == 2, "bad suite is not exit 2");
    o.require(invoke(dir, "check --fixture fix-s3 --format yaml").code == 2, "bad format is not exit 2");
    o.require(invoke(dir, "frobnicate").code == 2, "unknown subcommand is not exit 2");
    o.require(invoke(dir, "fixtures dump nope").code == 2, "unknown fixture is not exit 2");

    fs::remove_all(dir);
    o.detail << (o.pass ? "" : "; ") << "R^7 fixture run " << sci(secs) << " s";
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "expression engine derivatives and round trip", expression_engine},
        {2, "R^7 almost contact metric identities", almost_contact},
        {3, "R^7 statistical structure", statistical},
        {4, "R^7 contact CR structure", cr_suite},
        {5, "R^7 audit records", audit_records},
        {6, "standard R^3 Sasakian control", sasakian_control},
        {7, "Gauss-Weingarten random corpus", gauss_weingarten_corpus},
        {8, "unit circle control", circle_control},
        {9, "R^5 contact CR hypersurface", cr5_fixture},
        {10, "T/F/B/C algebraic identities", structure_identities},
        {11, "command line contract", cli_contract},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    bool ok = true;
    for (const Criterion& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << c.id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << c.title << "  ("
                  << out.detail.str() << ")" << std::endl;
        ok = ok && out.pass;
    }
    return ok ? 0 : 1;
}
