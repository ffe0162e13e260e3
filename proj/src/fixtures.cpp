#include "crverify/fixtures.hpp"

#include <functional>

#include <json.hpp>

namespace crv {

using nlohmann::ordered_json;

namespace {

struct Builder {
    std::size_t n;

    Expr e(const std::string& s) const { return parse(s, n); }
    Expr c(double v) const { return Expr::constant(v); }

    static ordered_json strings(const std::vector<Expr>& v) {
        ordered_json a = ordered_json::array();
        for (const Expr& x : v) a.push_back(x.str());
        return a;
    }

    /// g = eta (x) eta + diag(d)
    std::vector<Expr> metric_from(const std::vector<Expr>& eta, const std::vector<double>& d) const {
        std::vector<Expr> upper;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) upper.push_back(eta[i] * eta[j] + c(i == j ? d[i] : 0.0));
        return upper;
    }

    std::vector<Expr> diagonal(const std::vector<double>& d) const {
        std::vector<Expr> upper;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) upper.push_back(c(i == j ? d[i] : 0.0));
        return upper;
    }

    std::vector<Expr> zeros() const { return std::vector<Expr>(n, c(0.0)); }

    ordered_json phi_rows(const std::vector<Expr>& row_major) const {
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < n; ++r)
            rows.push_back(strings(std::vector<Expr>(row_major.begin() + static_cast<long>(r * n),
                                                     row_major.begin() + static_cast<long>((r + 1) * n))));
        return rows;
    }
};

ordered_json ambient_block(const Builder& b, const std::vector<Expr>& metric, const std::vector<Expr>& phi,
                           const std::vector<Expr>& xi, const std::vector<Expr>& eta, double lambda) {
    ordered_json a;
    a["dim"] = b.n;
    a["metric"] = Builder::strings(metric);
    a["phi"] = b.phi_rows(phi);
    a["xi"] = Builder::strings(xi);
    a["eta"] = Builder::strings(eta);
    a["K"] = {{"lambda", lambda}};
    return a;
}

ordered_json default_sampling() {
    return {{"mode", "seeded-random"}, {"seed", 42}, {"count", 64}, {"box", {-1.0, 1.0}}};
}

ordered_json generators(std::size_t m, const std::vector<std::vector<std::string>>& gens) {
    ordered_json out = ordered_json::array();
    for (const auto& g : gens) {
        std::vector<Expr> v;
        for (const auto& s : g) v.push_back(parse(s, m));
        out.push_back(Builder::strings(v));
    }
    return out;
}

// Standard contact form on R^3: eta = (dz - y dx)/2, xi = 2 d/dz,
// g = eta (x) eta + (dx^2 + dy^2)/4.
ordered_json fix_s3(bool reversed) {
    const Builder b{3};
    const std::vector<Expr> eta = {b.e("-x2/2"), b.c(0), b.c(0.5)};
    const std::vector<Expr> xi = {b.c(0), b.c(0), b.c(2)};
    const double sg = reversed ? -1.0 : 1.0;
    std::vector<Expr> phi(9, b.c(0));
    phi[0 * 3 + 1] = b.c(sg);
    phi[1 * 3 + 0] = b.c(-sg);
    phi[2 * 3 + 1] = b.c(sg) * b.e("x2");
    ordered_json doc;
    doc["name"] = reversed ? "fix-s3-reversed" : "fix-s3";
    doc["description"] = reversed ? "standard Sasakian R^3 with phi replaced by -phi"
                                  : "standard Sasakian R^3, eta = (dz - y dx)/2, xi = 2 d/dz";
    doc["ambient"] = ambient_block(b, b.metric_from(eta, {0.25, 0.25, 0.0}), phi, xi, eta, 1.0);
    doc["sampling"] = default_sampling();
    return doc;
}

// R^7 with coordinates (x1, y1, x2, y2, x3, y3, z).
ordered_json paper_r7(bool orthonormal) {
    const Builder b{7};
    std::vector<Expr> phi(49, b.c(0));
    for (std::size_t i = 0; i < 3; ++i) {
        phi[(2 * i + 1) * 7 + 2 * i] = b.c(1);
        phi[(2 * i) * 7 + 2 * i + 1] = b.c(-1);
    }
    std::vector<Expr> e7 = b.zeros();
    e7[6] = b.c(1);
    const std::vector<double> d = orthonormal ? std::vector<double>{1, 1, 0.5, 0.5, 0.5, 0.5, 1}
                                              : std::vector<double>{1, 1, 1, 1, 1, 1, 1};
    ordered_json doc;
    doc["name"] = orthonormal ? "paper-r7-frame-orthonormal" : "paper-r7-euclidean";
    doc["description"] = orthonormal ? "contact CR-submanifold of R^7, metric making e1..e5 orthonormal"
                                     : "contact CR-submanifold of R^7, Euclidean metric";
    doc["ambient"] = ambient_block(b, b.diagonal(d), phi, e7, e7, 1.0);
    const std::size_t m = 5;
    ordered_json sm;
    sm["dim"] = m;
    sm["embedding"] = Builder::strings({parse("x1", m), parse("x2", m), parse("x3 + x4", m), Expr::constant(0),
                                        Expr::constant(0), parse("x4 - x3", m), parse("x5", m)});
    sm["D"] = generators(m, {{"1", "0", "0", "0", "0"}, {"0", "1", "0", "0", "0"}, {"0", "0", "0", "0", "1"}});
    sm["Dperp"] = generators(m, {{"0", "0", "1", "0", "0"}, {"0", "0", "0", "1", "0"}});
    doc["submanifold"] = sm;
    doc["sampling"] = default_sampling();
    return doc;
}

// Standard Sasakian R^5, coordinates (x1, y1, x2, y2, z); M is the
// hypersurface x2 = 0.
ordered_json fix_cr5() {
    const Builder b{5};
    const std::vector<Expr> eta = {b.e("-x2/2"), b.c(0), b.e("-x4/2"), b.c(0), b.c(0.5)};
    std::vector<Expr> xi = b.zeros();
    xi[4] = b.c(2);
    std::vector<Expr> phi(25, b.c(0));
    phi[1 * 5 + 0] = b.c(1);
    phi[0 * 5 + 1] = b.c(-1);
    phi[4 * 5 + 1] = b.e("-x2");
    phi[3 * 5 + 2] = b.c(1);
    phi[2 * 5 + 3] = b.c(-1);
    phi[4 * 5 + 3] = b.e("-x4");
    ordered_json doc;
    doc["name"] = "fix-cr5";
    doc["description"] = "proper contact CR hypersurface x2 = 0 of standard Sasakian R^5";
    doc["ambient"] = ambient_block(b, b.metric_from(eta, {0.25, 0.25, 0.25, 0.25, 0.0}), phi, xi, eta, 1.0);
    const std::size_t m = 4;
    ordered_json sm;
    sm["dim"] = m;
    sm["embedding"] =
        Builder::strings({parse("x1", m), parse("x2", m), Expr::constant(0), parse("x3", m), parse("x4", m)});
    sm["D"] = generators(m, {{"0", "0", "0", "2"}, {"0", "1", "0", "0"}, {"-1", "-x2", "0", "0"}});
    sm["Dperp"] = generators(m, {{"0", "0", "1", "0"}});
    doc["submanifold"] = sm;
    doc["sampling"] = default_sampling();
    return doc;
}

struct Entry {
    const char* name;
    const char* summary;
    std::function<ordered_json()> make;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"paper-r7-euclidean", "R^7 contact CR example, Euclidean ambient metric", [] { return paper_r7(false); }},
        {"paper-r7-frame-orthonormal", "R^7 contact CR example, tangent frame orthonormal",
         [] { return paper_r7(true); }},
        {"fix-s3", "standard Sasakian R^3 (Sasakian convention phi)", [] { return fix_s3(false); }},
        {"fix-s3-reversed", "standard Sasakian R^3 with phi negated", [] { return fix_s3(true); }},
        {"fix-cr5", "proper contact CR hypersurface of standard Sasakian R^5", [] { return fix_cr5(); }},
    };
    return r;
}

}  // namespace

std::vector<FixtureInfo> fixture_list() {
    std::vector<FixtureInfo> out;
    for (const Entry& e : registry()) out.push_back({e.name, e.summary});
    return out;
}

std::optional<std::string> fixture_document(const std::string& name) {
    for (const Entry& e : registry())
        if (name == e.name) return e.make().dump(2) + "\n";
    return std::nullopt;
}

SpecFile load_fixture(const std::string& name) {
    const auto doc = fixture_document(name);
    if (!doc) throw SpecError(SpecError::Kind::Missing, "fixture", "unknown fixture \"" + name + "\"");
    return parse_spec(*doc, "fixture:" + name);
}

}  // namespace crv
