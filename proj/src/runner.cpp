#include "crverify/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace crv {

namespace {

constexpr Suite kAllSuites[] = {Suite::Ambient, Suite::Contact, Suite::Submanifold, Suite::CR, Suite::Product};

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// One failing record standing in for a check that could not run.
CheckReport failed_report(const std::string& title, double tol, const std::string& why) {
    CheckReport r;
    r.title = title;
    r.tolerance = tol;
    Record rec;
    rec.name = "engine precondition";
    rec.anchor = title;
    rec.tolerance = tol;
    rec.max_residual = std::numeric_limits<double>::infinity();
    rec.passed = false;
    rec.note = why;
    r.add(std::move(rec));
    return r;
}

CheckReport guarded(const std::string& title, double tol, const std::function<CheckReport()>& f) {
    try {
        return f();
    } catch (const GeometryError& e) {
        std::string why = e.what();
        if (e.point().size() > 0) {
            why += " at (";
            for (Eigen::Index i = 0; i < e.point().size(); ++i) why += (i ? ", " : "") + shortest(e.point()[i]);
            why += ")";
        }
        return failed_report(title, tol, why);
    } catch (const DomainError& e) {
        return failed_report(title, tol, std::string(e.what()) + " in " + e.subexpression());
    }
}

}  // namespace

const char* suite_name(Suite s) {
    switch (s) {
    case Suite::Ambient:
        return "ambient";
    case Suite::Contact:
        return "contact";
    case Suite::Submanifold:
        return "submanifold";
    case Suite::CR:
        return "cr";
    case Suite::Product:
        return "product";
    }
    return "?";
}

std::vector<Suite> parse_suites(const std::string& csv) {
    std::vector<Suite> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "all") {
            out.assign(std::begin(kAllSuites), std::end(kAllSuites));
            continue;
        }
        bool found = false;
        for (Suite s : kAllSuites)
            if (item == suite_name(s)) {
                out.push_back(s);
                found = true;
            }
        if (!found)
            throw std::invalid_argument("unknown suite \"" + item +
                                        "\" (ambient, contact, submanifold, cr, product, all)");
    }
    if (out.empty()) throw std::invalid_argument("no suites selected");
    return out;
}

std::vector<Suite> with_prerequisites(std::vector<Suite> suites) {
    auto has = [&](Suite s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };
    // Each suite pulls in the one it builds on.
    if (has(Suite::Product) && !has(Suite::CR)) suites.push_back(Suite::CR);
    if (has(Suite::CR) && !has(Suite::Submanifold)) suites.push_back(Suite::Submanifold);
    if ((has(Suite::Contact) || has(Suite::Submanifold)) && !has(Suite::Ambient)) suites.push_back(Suite::Ambient);
    std::sort(suites.begin(), suites.end());
    suites.erase(std::unique(suites.begin(), suites.end()), suites.end());
    return suites;
}

bool SuiteResult::passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed(); });
}

bool ReportDocument::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ReportDocument run(const SpecFile& spec, const RunOptions& options) {
    const std::vector<Suite> requested =
        options.suites.empty() ? std::vector<Suite>(std::begin(kAllSuites), std::end(kAllSuites)) : options.suites;
    const std::vector<Suite> order = with_prerequisites(requested);
    auto needs = [&](Suite s) { return std::find(order.begin(), order.end(), s) != order.end(); };

    if ((needs(Suite::Submanifold)) && !spec.submanifold)
        throw SpecError(SpecError::Kind::Missing, spec.origin + ":submanifold", "missing submanifold block");
    if (needs(Suite::CR) && !spec.has_distributions())
        throw SpecError(SpecError::Kind::Missing, spec.origin + ":submanifold.D", "missing D / Dperp generators");

    SamplingOptions sopt = spec.sampling.options;
    if (options.seed) sopt.seed = *options.seed;
    if (options.samples) sopt.count = *options.samples;

    ReportDocument doc;
    {
        std::string key = spec.canonical;
        key += "\nsuites=";
        for (Suite s : requested) key += std::string(suite_name(s)) + ",";
        key += "\nseed=" + std::to_string(sopt.seed) + "\ncount=" + std::to_string(sopt.count);
        key += "\ntol=" + (options.tolerance ? shortest(*options.tolerance) : std::string("spec"));
        doc.digest = fnv1a_hex(key);
    }

    const MetricField g = spec.metric();
    const AlmostContact acs = spec.structure();
    const SasakiStatStructure sss = spec.sasaki_statistical();
    const bool explicit_mode = spec.sampling.mode == SamplingSpec::Mode::Explicit;

    auto tol_for = [&](Suite s) { return options.tolerance ? *options.tolerance : spec.tolerance.for_suite(suite_name(s)); };

    std::optional<Samples> ambient_samples, domain_samples;
    std::string ambient_err, domain_err;
    auto ambient = [&]() -> const Samples* {
        if (!ambient_samples && ambient_err.empty()) {
            try {
                ambient_samples = explicit_mode
                                      ? explicit_samples(g.dim(), spec.sampling.ambient_points, metric_guard(g))
                                      : draw_samples(g.dim(), sopt, metric_guard(g));
            } catch (const GeometryError& e) {
                ambient_err = std::string("sampling: ") + e.what();
            }
        }
        return ambient_samples ? &*ambient_samples : nullptr;
    };
    std::optional<Embedding> emb;
    std::optional<CRStructure> cr;
    if (spec.submanifold) emb = spec.embedding();
    if (spec.has_distributions()) cr = spec.cr_structure();
    auto domain = [&]() -> const Samples* {
        if (!domain_samples && domain_err.empty()) {
            const Admissible guard = cr ? cr_guard(*cr) : embedding_guard(*emb, g);
            try {
                domain_samples = explicit_mode
                                     ? explicit_samples(emb->m(), spec.sampling.domain_points, guard)
                                     : draw_samples(emb->m(), sopt, guard);
            } catch (const GeometryError& e) {
                domain_err = std::string("sampling: ") + e.what();
            }
        }
        return domain_samples ? &*domain_samples : nullptr;
    };

    for (Suite s : order) {
        SuiteResult res;
        res.suite = s;
        res.requested = std::find(requested.begin(), requested.end(), s) != requested.end();
        const double tol = tol_for(s);
        const bool on_domain = s == Suite::Submanifold || s == Suite::CR || s == Suite::Product;
        const Samples* smp = on_domain ? domain() : ambient();
        auto add = [&](const std::string& title, const std::function<CheckReport(const Samples&)>& f) {
            if (!smp) {
                res.reports.push_back(failed_report(title, tol, on_domain ? domain_err : ambient_err));
                return;
            }
            res.reports.push_back(guarded(title, tol, [&] { return f(*smp); }));
        };
        switch (s) {
        case Suite::Ambient:
            add("statistical structure", [&](const Samples& x) { return check_statistical(sss.st, x, tol); });
            break;
        case Suite::Contact:
            add("almost contact metric structure", [&](const Samples& x) { return check_almost_contact(acs, g, x, tol); });
            add("contact metric structure", [&](const Samples& x) { return check_contact_metric(acs, g, x, tol); });
            add("Sasakian statistical structure",
                [&](const Samples& x) { return check_sasakian_statistical(sss, x, tol); });
            break;
        case Suite::Submanifold:
            add("Gauss-Weingarten data", [&](const Samples& x) { return check_gauss_weingarten(*emb, sss.st, x, tol); });
            add("T/F/B/C structure identities",
                [&](const Samples& x) { return check_structure_identities(*emb, g, acs, x, tol); });
            add("covariant derivatives of T, F, B, C",
                [&](const Samples& x) { return check_prop28(*emb, sss, x, tol); });
            break;
        case Suite::CR:
            add("contact CR structure", [&](const Samples& x) { return check_contact_cr(*cr, x, tol); });
            add("contact CR shape identities", [&](const Samples& x) { return check_cr_shape_identities(*cr, x, tol); });
            add("integrability of D", [&](const Samples& x) { return check_integrability_D(*cr, x, tol); });
            add("integrability of D-perp", [&](const Samples& x) { return check_integrability_Dperp(*cr, x, tol); });
            add("geodesic classification", [&](const Samples& x) { return classify_geodesic(*cr, x, tol); });
            add("mixed totally geodesic consequences",
                [&](const Samples& x) { return check_mixed_geodesic_consequences(*cr, x, tol); });
            break;
        case Suite::Product:
            add("contact CR-product", [&](const Samples& x) { return check_cr_product(*cr, x, tol); });
            break;
        }
        doc.suites.push_back(std::move(res));
    }
    return doc;
}

namespace {

std::string status(const Record& r) {
    if (r.kind == RecordKind::Info) return "INFO";
    return r.passed ? "PASS" : "FAIL";
}

std::string residual_text(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string witness_text(const Record& r) {
    if (!r.witness) return "-";
    std::string s = "#" + std::to_string(r.witness->sample);
    if (!r.witness->indices.empty()) {
        s += " (";
        for (std::size_t i = 0; i < r.witness->indices.size(); ++i)
            s += (i ? "," : "") + std::to_string(r.witness->indices[i]);
        s += ")";
    }
    return s;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

}  // namespace

std::string render_text(const ReportDocument& doc) {
    std::size_t wn = 6, wa = 6, ww = 7;
    for (const SuiteResult& s : doc.suites)
        for (const CheckReport& r : s.reports)
            for (const Record& rec : r.records) {
                wn = std::max(wn, rec.name.size());
                wa = std::max(wa, rec.anchor.size());
                ww = std::max(ww, witness_text(rec).size());
            }
    std::ostringstream out;
    out << kToolName << " " << kToolVersion << "  input " << doc.digest << "\n";
    for (const SuiteResult& s : doc.suites) {
        out << "\nsuite " << suite_name(s.suite) << (s.requested ? "" : " (prerequisite)") << ": "
            << (s.passed() ? "PASS" : "FAIL") << "\n";
        for (const CheckReport& r : s.reports) {
            out << "\n  " << r.title << "  [tol " << shortest(r.tolerance) << ", " << r.samples << " samples]\n";
            out << "  " << pad("record", wn) << " | " << pad("anchor", wa) << " | " << pad("max residual", 12)
                << " | " << pad("witness", ww) << " | status\n";
            for (const Record& rec : r.records) {
                out << "  " << pad(rec.name, wn) << " | " << pad(rec.anchor, wa) << " | "
                    << pad(residual_text(rec.max_residual), 12) << " | " << pad(witness_text(rec), ww) << " | "
                    << status(rec);
                if (!rec.note.empty()) out << "  (" << rec.note << ")";
                out << "\n";
            }
        }
    }
    out << "\nverdict: " << (doc.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string render_structured(const ReportDocument& doc) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["input_digest"] = doc.digest;
    ordered_json suites = ordered_json::array();
    for (const SuiteResult& s : doc.suites) {
        ordered_json sj;
        sj["suite"] = suite_name(s.suite);
        sj["requested"] = s.requested;
        sj["passed"] = s.passed();
        ordered_json reps = ordered_json::array();
        for (const CheckReport& r : s.reports) {
            ordered_json rj;
            rj["title"] = r.title;
            rj["tolerance"] = r.tolerance;
            rj["samples"] = r.samples;
            rj["passed"] = r.passed();
            ordered_json recs = ordered_json::array();
            for (const Record& rec : r.records) {
                ordered_json x;
                x["name"] = rec.name;
                x["anchor"] = rec.anchor;
                x["kind"] = rec.kind == RecordKind::Info ? "info" : "check";
                x["status"] = status(rec);
                if (std::isfinite(rec.max_residual))
                    x["max_residual"] = rec.max_residual;
                else
                    x["max_residual"] = residual_text(rec.max_residual);
                x["evaluations"] = rec.evaluations;
                if (rec.witness) {
                    ordered_json w;
                    w["sample"] = rec.witness->sample;
                    std::vector<double> pt(rec.witness->point.data(),
                                           rec.witness->point.data() + rec.witness->point.size());
                    w["point"] = pt;
                    w["indices"] = rec.witness->indices;
                    x["witness"] = w;
                } else {
                    x["witness"] = nullptr;
                }
                if (!rec.note.empty()) x["note"] = rec.note;
                recs.push_back(std::move(x));
            }
            rj["records"] = std::move(recs);
            reps.push_back(std::move(rj));
        }
        sj["reports"] = std::move(reps);
        suites.push_back(std::move(sj));
    }
    j["suites"] = std::move(suites);
    j["passed"] = doc.passed();
    return j.dump(2) + "\n";
}

}  // namespace crv
