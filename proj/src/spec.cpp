#include "crverify/spec.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace crv {

using nlohmann::json;

SpecError::SpecError(Kind kind, std::string location, const std::string& message)
    : std::runtime_error(location.empty() ? message : location + ": " + message),
      kind_(kind),
      location_(std::move(location)),
      message_(message) {}

namespace {

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string key(const std::string& path, const std::string& k) { return path.empty() ? k : path + "." + k; }

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!ok.count(it.key()))
            throw SpecError(SpecError::Kind::UnknownKey, key(path, it.key()), "unknown key \"" + it.key() + "\"");
}

const json& need(const json& obj, const std::string& path, const char* k) {
    if (!obj.contains(k)) throw SpecError(SpecError::Kind::Missing, key(path, k), "required key is missing");
    return obj.at(k);
}

const json& need_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SpecError(SpecError::Kind::Value, path, "expected an object");
    return j;
}

const json& need_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SpecError(SpecError::Kind::Value, path, "expected an array");
    return j;
}

std::size_t positive_int(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() <= 0)
        throw SpecError(SpecError::Kind::Value, path, "expected a positive integer");
    return j.get<std::size_t>();
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SpecError(SpecError::Kind::Value, path, "expected a number");
    return j.get<double>();
}

Expr expression(const json& j, const std::string& path, std::size_t dim) {
    if (j.is_number()) return Expr::constant(j.get<double>());
    if (!j.is_string()) throw SpecError(SpecError::Kind::Value, path, "expected an expression string or a number");
    const std::string src = j.get<std::string>();
    try {
        return parse(src, dim);
    } catch (const ParseError& e) {
        throw SpecError(SpecError::Kind::Expression, path + " offset " + std::to_string(e.offset()),
                        e.detail() + " in \"" + src + "\"");
    }
}

std::vector<Expr> expressions(const json& j, const std::string& path, std::size_t dim, std::size_t expected,
                              const char* what) {
    need_array(j, path);
    if (j.size() != expected)
        throw SpecError(SpecError::Kind::Dimension, path,
                        std::string(what) + ": expected " + std::to_string(expected) + " entries, got " +
                            std::to_string(j.size()));
    std::vector<Expr> out;
    out.reserve(expected);
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(expression(j[i], idx(path, i), dim));
    return out;
}

std::vector<Vec> points(const json& j, const std::string& path, std::size_t dim) {
    need_array(j, path);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = idx(path, i);
        need_array(j[i], p);
        if (j[i].size() != dim)
            throw SpecError(SpecError::Kind::Dimension, p,
                            "point: expected " + std::to_string(dim) + " coordinates, got " +
                                std::to_string(j[i].size()));
        Vec v(static_cast<Eigen::Index>(dim));
        for (std::size_t c = 0; c < dim; ++c) v[static_cast<Eigen::Index>(c)] = number(j[i][c], idx(p, c));
        out.push_back(v);
    }
    return out;
}

AmbientSpec read_ambient(const json& a) {
    const std::string P = "ambient";
    need_object(a, P);
    only_keys(a, P, {"dim", "metric", "phi", "xi", "eta", "K"});
    AmbientSpec s;
    s.dim = positive_int(need(a, P, "dim"), key(P, "dim"));
    const std::size_t n = s.dim;
    s.metric_upper = expressions(need(a, P, "metric"), key(P, "metric"), n, n * (n + 1) / 2, "metric upper triangle");

    const std::string pp = key(P, "phi");
    const json& phi = need_array(need(a, P, "phi"), pp);
    if (phi.size() != n)
        throw SpecError(SpecError::Kind::Dimension, pp,
                        "phi: expected " + std::to_string(n) + " rows, got " + std::to_string(phi.size()));
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Expr> row = expressions(phi[r], idx(pp, r), n, n, "phi row");
        s.phi.insert(s.phi.end(), row.begin(), row.end());
    }
    s.xi = expressions(need(a, P, "xi"), key(P, "xi"), n, n, "xi");
    s.eta = expressions(need(a, P, "eta"), key(P, "eta"), n, n, "eta");

    if (a.contains("K")) {
        const std::string pk = key(P, "K");
        const json& K = need_object(a.at("K"), pk);
        only_keys(K, pk, {"lambda", "coefficients"});
        if (K.contains("lambda") == K.contains("coefficients"))
            throw SpecError(SpecError::Kind::Value, pk, "give exactly one of \"lambda\" or \"coefficients\"");
        if (K.contains("lambda"))
            s.lambda = number(K.at("lambda"), key(pk, "lambda"));
        else
            s.K = expressions(K.at("coefficients"), key(pk, "coefficients"), n, n * n * n, "K coefficients");
    } else {
        s.lambda = 0.0;
    }
    return s;
}

SubmanifoldSpec read_submanifold(const json& sm, std::size_t n) {
    const std::string P = "submanifold";
    need_object(sm, P);
    only_keys(sm, P, {"dim", "embedding", "D", "Dperp"});
    SubmanifoldSpec s;
    s.dim = positive_int(need(sm, P, "dim"), key(P, "dim"));
    if (s.dim > n)
        throw SpecError(SpecError::Kind::Dimension, key(P, "dim"),
                        "submanifold dimension " + std::to_string(s.dim) + " exceeds ambient dimension " +
                            std::to_string(n));
    s.embedding = expressions(need(sm, P, "embedding"), key(P, "embedding"), s.dim, n, "embedding components");
    for (const char* which : {"D", "Dperp"}) {
        if (!sm.contains(which)) continue;
        const std::string pd = key(P, which);
        const json& gens = need_array(sm.at(which), pd);
        auto& dst = std::string(which) == "D" ? s.D : s.Dperp;
        for (std::size_t g = 0; g < gens.size(); ++g)
            dst.push_back(expressions(gens[g], idx(pd, g), s.dim, s.dim, "generator"));
    }
    return s;
}

SamplingSpec read_sampling(const json& sj, std::size_t n, std::size_t m) {
    const std::string P = "sampling";
    need_object(sj, P);
    SamplingSpec s;
    const json& mode = need(sj, P, "mode");
    if (!mode.is_string()) throw SpecError(SpecError::Kind::Value, key(P, "mode"), "expected a string");
    const std::string md = mode.get<std::string>();
    if (md == "seeded-random") {
        only_keys(sj, P, {"mode", "seed", "count", "box"});
        s.mode = SamplingSpec::Mode::Seeded;
        if (sj.contains("seed")) {
            const json& seed = sj.at("seed");
            if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
                throw SpecError(SpecError::Kind::Value, key(P, "seed"), "expected a non-negative integer");
            s.options.seed = seed.get<std::uint64_t>();
        }
        if (sj.contains("count")) s.options.count = positive_int(sj.at("count"), key(P, "count"));
        if (sj.contains("box")) {
            const std::string pb = key(P, "box");
            const json& box = need_array(sj.at("box"), pb);
            if (box.size() != 2) throw SpecError(SpecError::Kind::Dimension, pb, "box: expected [lo, hi]");
            s.options.lo = number(box[0], idx(pb, 0));
            s.options.hi = number(box[1], idx(pb, 1));
            if (!(s.options.lo < s.options.hi)) throw SpecError(SpecError::Kind::Value, pb, "box: need lo < hi");
        }
    } else if (md == "explicit") {
        only_keys(sj, P, {"mode", "ambient_points", "domain_points"});
        s.mode = SamplingSpec::Mode::Explicit;
        if (sj.contains("ambient_points"))
            s.ambient_points = points(sj.at("ambient_points"), key(P, "ambient_points"), n);
        if (sj.contains("domain_points")) {
            if (m == 0)
                throw SpecError(SpecError::Kind::Missing, key(P, "domain_points"),
                                "domain points need a submanifold block");
            s.domain_points = points(sj.at("domain_points"), key(P, "domain_points"), m);
        }
    } else {
        throw SpecError(SpecError::Kind::Value, key(P, "mode"),
                        "unknown sampling mode \"" + md + "\" (seeded-random, explicit)");
    }
    return s;
}

ToleranceSpec read_tolerance(const json& tj) {
    const std::string P = "tolerance";
    need_object(tj, P);
    only_keys(tj, P, {"default", "ambient", "contact", "submanifold", "cr", "product"});
    ToleranceSpec t;
    for (auto it = tj.begin(); it != tj.end(); ++it) {
        const double v = number(it.value(), key(P, it.key()));
        if (!(v > 0.0)) throw SpecError(SpecError::Kind::Value, key(P, it.key()), "tolerance must be positive");
        if (it.key() == "default")
            t.base = v;
        else
            t.per_suite[it.key()] = v;
    }
    return t;
}

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw SpecError(SpecError::Kind::Syntax, origin + ":" + line_col(text, byte), "malformed JSON");
    }
    try {
        need_object(doc, "");
        only_keys(doc, "", {"name", "description", "ambient", "submanifold", "sampling", "tolerance"});
        SpecFile s;
        s.origin = origin;
        s.ambient = read_ambient(need(doc, "", "ambient"));
        if (doc.contains("submanifold")) s.submanifold = read_submanifold(doc.at("submanifold"), s.ambient.dim);
        const std::size_t m = s.submanifold ? s.submanifold->dim : 0;  // 0: no domain chart
        if (doc.contains("sampling")) s.sampling = read_sampling(doc.at("sampling"), s.ambient.dim, m);
        if (doc.contains("tolerance")) s.tolerance = read_tolerance(doc.at("tolerance"));
        s.canonical = doc.dump();
        return s;
    } catch (const SpecError& e) {
        throw SpecError(e.kind(), origin + ":" + e.location(), e.message());
    } catch (const json::exception& e) {
        throw SpecError(SpecError::Kind::Value, origin, e.what());
    }
}

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(SpecError::Kind::Io, path, "cannot read file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path);
}

MetricField SpecFile::metric() const { return MetricField(ambient.dim, ambient.metric_upper); }

AlmostContact SpecFile::structure() const {
    return AlmostContact{TensorField11(ambient.dim, ambient.phi), VectorField(ambient.xi, ambient.dim),
                         OneFormField(ambient.eta, ambient.dim)};
}

SasakiStatStructure SpecFile::sasaki_statistical() const {
    const MetricField g = metric();
    const AlmostContact acs = structure();
    if (ambient.K) return with_difference_tensor(g, acs, *ambient.K);
    return lambda_family(g, acs, ambient.lambda.value_or(0.0));
}

Embedding SpecFile::embedding() const {
    if (!submanifold) throw SpecError(SpecError::Kind::Missing, "submanifold", "missing submanifold block");
    return Embedding(submanifold->dim, submanifold->embedding);
}

bool SpecFile::has_distributions() const {
    return submanifold && !(submanifold->D.empty() && submanifold->Dperp.empty());
}

CRStructure SpecFile::cr_structure() const {
    if (!submanifold) throw SpecError(SpecError::Kind::Missing, "submanifold", "missing submanifold block");
    if (!has_distributions())
        throw SpecError(SpecError::Kind::Missing, "submanifold.D", "missing D / Dperp generators");
    auto dist = [&](const std::vector<std::vector<Expr>>& gens) {
        Distribution d;
        for (const auto& g : gens) d.generators.emplace_back(g, submanifold->dim);
        return d;
    };
    return CRStructure{embedding(), sasaki_statistical(), dist(submanifold->D), dist(submanifold->Dperp)};
}

}  // namespace crv
