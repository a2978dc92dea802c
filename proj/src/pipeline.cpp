#include "rpforge/pipeline.hpp"

#include <cmath>
#include <sstream>

#include <spdlog/spdlog.h>

#include "rpforge/geometry.hpp"
#include "rpforge/homology.hpp"
#include "rpforge/triangulation.hpp"

namespace rpforge {

namespace {

constexpr const char* kStageNames[] = {"family",   "verify",   "hull", "triangulate",
                                       "quotient", "homology", "all"};

// A stage whose checks failed; the pipeline stops there.
struct StageFailure {
    Stage stage;
    int code;
    std::string message;
};

bool reaches(const PipelineConfig& c, Stage s) { return static_cast<int>(c.stage) >= static_cast<int>(s); }

Json brief(const ConditionReport& r) {
    Json j;
    j["passed"] = r.passed();
    j["checked"] = r.checked;
    j["violation_count"] = r.violation_count;
    if (!r.passed()) j["first_violation"] = r.violations.front().message;
    return j;
}

std::string first_failure(std::initializer_list<const ConditionReport*> reports) {
    for (const auto* r : reports)
        if (!r->passed()) return r->name + ": " + r->violations.front().message;
    return {};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

class Run {
public:
    explicit Run(const PipelineConfig& c) : config_(c) {}

    PipelineOutcome execute() {
        summary_["config"] = config_json();
        try {
            stages();
            summary_["verdict"] = {{"passed", true}, {"exit_code", exit_code::ok}, {"failed_stage", nullptr}};
        } catch (const StageFailure& f) {
            spdlog::error("stage {} failed: {}", to_string(f.stage), f.message);
            summary_["verdict"] = {{"passed", false},
                                   {"exit_code", f.code},
                                   {"failed_stage", to_string(f.stage)},
                                   {"message", f.message}};
            code_ = f.code;
        }
        write("summary.json", dump(summary_));
        return {summary_, code_};
    }

private:
    void stages() {
        const SubsetFamily v = guarded(Stage::Family, exit_code::family, [&] { return make_family(config_); });
        summary_["family"] = family_summary(v);
        write("family.json", dump(family_to_json(v)));

        if (!reaches(config_, Stage::Verify)) return;
        const VerifyOutcome verified = verify_family(v, config_.jobs);
        write("verify.json", dump(verified.report));
        Json brief_verify;
        for (const auto& [name, report] : verified.report["checks"].items())
            brief_verify[name] = {{"passed", report["passed"]}, {"violation_count", report["violation_count"]}};
        summary_["verify"] = brief_verify;
        if (!verified.passed) throw StageFailure{Stage::Verify, exit_code::family, "family conditions fail"};

        if (!reaches(config_, Stage::Hull)) return;
        const FaceLattice lattice = guarded(Stage::Hull, exit_code::hull, [&] {
            return convex_hull(v, HullOptions{config_.precision_bits, config_.eps});
        });
        write("lattice.json", dump(lattice_to_json(lattice)));
        write("lattice.off", lattice_to_off(lattice));
        const auto norms = check_unit_norms(lattice);
        const auto orthant = check_orthant_property(lattice);
        const auto antipodal = check_antipodal_disjoint(lattice);
        const auto symmetric = check_central_symmetry(lattice);
        long long non_simplicial = 0;
        for (const auto& f : lattice.facets)
            if (f.vertices.count() > lattice.n) ++non_simplicial;
        summary_["hull"] = {{"vertex_count", lattice.vertex_count()},
                            {"facet_count", lattice.facets.size()},
                            {"non_simplicial_facets", non_simplicial},
                            {"min_margin", static_cast<double>(lattice.min_margin())},
                            {"unit_norms", brief(norms)},
                            {"orthant", brief(orthant)},
                            {"antipodal_disjoint", brief(antipodal)},
                            {"central_symmetry", brief(symmetric)}};
        if (auto why = first_failure({&norms, &orthant, &antipodal, &symmetric}); !why.empty())
            throw StageFailure{Stage::Hull, exit_code::hull, why};

        if (!reaches(config_, Stage::Triangulate)) return;
        const EquivariantTriangulation tri =
            guarded(Stage::Triangulate, exit_code::triangulation, [&] { return pull_triangulate(lattice); });
        const SimplicialComplex& s = tri.complex;
        write("complex.json", dump(complex_to_json(s)));
        if (config_.format == OutputFormat::Text) write("complex.txt", complex_to_text(s));
        const auto equivariant = check_equivariance(s, tri.involution);
        const auto stars = check_star_disjointness(s, tri.involution);
        const int m = config_.n - 1;
        // S^0 is two points, not a connected pseudomanifold.
        ConditionReport sphere;
        sphere.name = "pseudomanifold";
        if (m > 0) sphere = check_pseudomanifold(s);
        const long long sphere_euler = m % 2 == 0 ? 2 : 0;
        const auto f_s = s.f_vector();
        summary_["triangulation"] = {{"dimension", s.dimension()},
                                     {"pure", s.is_pure()},
                                     {"f_vector", f_s},
                                     {"euler", s.euler_characteristic()},
                                     {"expected_euler", sphere_euler},
                                     {"equivariance", brief(equivariant)},
                                     {"star_disjointness", brief(stars)},
                                     {"pseudomanifold", brief(sphere)}};
        if (auto why = first_failure({&equivariant, &stars, &sphere}); !why.empty())
            throw StageFailure{Stage::Triangulate, exit_code::triangulation, why};
        if (s.dimension() != m || !s.is_pure() || s.euler_characteristic() != sphere_euler)
            throw StageFailure{Stage::Triangulate, exit_code::triangulation,
                               "triangulation is not a pure sphere-like complex of dimension " + std::to_string(m)};

        if (!reaches(config_, Stage::Quotient)) return;
        const SimplicialComplex q =
            guarded(Stage::Quotient, exit_code::quotient, [&] { return quotient(s, tri.involution); });
        write("quotient.json", dump(complex_to_json(q)));
        if (config_.format == OutputFormat::Text) write("quotient.txt", complex_to_text(q));
        const auto f_q = q.f_vector();
        bool halves = f_q.size() == f_s.size();
        for (std::size_t d = 0; halves && d < f_s.size(); ++d) halves = f_s[d] == 2 * f_q[d];
        const auto pseudo = check_pseudomanifold(q);
        Json qj = {{"vertex_count", q.vertex_count()},
                   {"f_vector", f_q},
                   {"euler", q.euler_characteristic()},
                   {"f_vector_halves", halves},
                   {"pseudomanifold", brief(pseudo)}};
        std::optional<ConditionReport> links;
        if (m <= 2) {
            links = check_vertex_links(q);
            qj["vertex_links"] = brief(*links);
        }
        const long long rp_euler = m % 2 == 0 ? 1 : 0;
        const bool manifold_like = pseudo.passed() && (!links || links->passed());
        qj["classification"] =
            m <= 2 && manifold_like && q.euler_characteristic() == rp_euler ? Json("RP" + std::to_string(m)) : Json();
        summary_["quotient"] = qj;
        if (!halves) throw StageFailure{Stage::Quotient, exit_code::quotient, "f-vector does not halve"};
        if (q.vertex_count() != static_cast<int>(v.size()))
            throw StageFailure{Stage::Quotient, exit_code::quotient, "quotient vertex count differs from |V|"};
        if (auto why = first_failure({&pseudo}); !why.empty())
            throw StageFailure{Stage::Quotient, exit_code::quotient, why};
        if (links && !links->passed())
            throw StageFailure{Stage::Quotient, exit_code::quotient, first_failure({&*links})};

        if (!reaches(config_, Stage::Homology)) return;
        Json hj;
        std::string mismatch;
        for (Coefficients c : {Coefficients::Z, Coefficients::Z2}) {
            const HomologyResult h =
                guarded(Stage::Homology, exit_code::homology, [&] { return homology(q, c); });
            const HomologyResult expected = expected_rp_homology(m, c);
            Json entry = homology_to_json(h);
            entry["expected"] = homology_to_json(expected);
            entry["matches"] = h.same_groups(expected);
            write(std::string("homology_") + to_string(c) + ".json", dump(homology_to_json(h)));
            if (!h.same_groups(expected) && mismatch.empty())
                mismatch = std::string("homology over ") + to_string(c) + " differs from RP" + std::to_string(m);
            hj[to_string(c)] = std::move(entry);
        }
        summary_["homology"] = hj;
        if (!mismatch.empty()) throw StageFailure{Stage::Homology, exit_code::homology, mismatch};
    }

    // Maps exceptions from library code to a failure of `stage`.
    template <class F>
    auto guarded(Stage stage, int code, F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (const IoError&) {
            throw;
        } catch (const CertificationError& e) {
            throw StageFailure{stage, code, std::string("certification failed: ") + e.what()};
        } catch (const std::exception& e) {
            throw StageFailure{stage, code, e.what()};
        }
    }

    Json config_json() const {
        Json j;
        j["n"] = config_.n;
        j["k"] = config_.effective_k();
        j["single_group"] = config_.single_group;
        j["precision_bits"] = config_.precision_bits;
        j["eps"] = config_.eps;
        j["stage"] = to_string(config_.stage);
        return j;
    }

    void write(const std::string& name, const std::string& text) const {
        if (config_.out_dir) write_text_file(*config_.out_dir / name, text);
    }

    const PipelineConfig& config_;
    Json summary_;
    int code_ = exit_code::ok;
};

void enumerate_check(const BoundRow& row, int k) {
    const GroupPartition p = make_partition(row.n, k);
    std::uint64_t count = 0;
    const std::uint64_t end = std::uint64_t{1} << row.n;
    for (std::uint64_t bits = 1; bits < end; ++bits)
        if (is_grouped_member(Subset(bits), p)) ++count;
    if (BigInt(count) != row.count)
        throw std::logic_error("closed-form count disagrees with enumeration at n=" + std::to_string(row.n));
}

} // namespace

const char* to_string(Stage s) { return kStageNames[static_cast<int>(s)]; }

Stage parse_stage(const std::string& name) {
    for (int s = 0; s <= static_cast<int>(Stage::All); ++s)
        if (name == kStageNames[s]) return static_cast<Stage>(s);
    throw UsageError("unknown stage: " + name);
}

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "text") return OutputFormat::Text;
    throw UsageError("unknown format: " + name);
}

int PipelineConfig::effective_k() const {
    if (single_group) return 1;
    return k ? *k : default_k(n);
}

void PipelineConfig::validate() const {
    if (n < 1 || n > kMaxGroundSize)
        throw UsageError("n must be in [1, " + std::to_string(kMaxGroundSize) + "], got " + std::to_string(n));
    if (k && (*k < 1 || *k > n)) throw UsageError("k must be in [1, n], got " + std::to_string(*k));
    if (single_group && k && *k != 1) throw UsageError("--single-group conflicts with k=" + std::to_string(*k));
    if (precision_bits < 64) throw UsageError("precision must be at least 64 bits");
    if (!(eps > 0) || !std::isfinite(eps)) throw UsageError("eps must be a positive finite number");
    if (jobs < 1) throw UsageError("jobs must be at least 1");
    if (reaches(*this, Stage::Hull) && n > hull_limit)
        throw UsageError("hull stage supports n <= " + std::to_string(hull_limit) + ", got " + std::to_string(n));
}

SubsetFamily make_family(const PipelineConfig& config) {
    config.validate();
    return build_grouped_family(make_partition(config.n, config.effective_k()));
}

Json family_summary(const SubsetFamily& v) {
    Json j;
    j["n"] = v.n();
    const int k = v.partition() ? v.partition()->k() : 1;
    const int s = v.partition() ? v.partition()->max_group_size() : v.n();
    std::vector<int> sizes;
    if (v.partition())
        for (Subset g : v.partition()->groups) sizes.push_back(g.size());
    j["k"] = k;
    j["group_sizes"] = sizes;
    j["size"] = v.size();
    j["bound"] = to_decimal(size_bound(k, s));
    j["baseline"] = to_decimal((BigInt(1) << v.n()) - 1);
    return j;
}

VerifyOutcome verify_family(const SubsetFamily& v, int jobs) {
    const ConditionReport reports[] = {check_singletons(v), check_downward_closed(v), check_exchange(v, jobs)};
    VerifyOutcome out;
    out.passed = true;
    out.report["n"] = v.n();
    out.report["size"] = v.size();
    Json checks;
    for (const auto& r : reports) {
        checks[r.name] = report_to_json(r);
        out.passed = out.passed && r.passed();
    }
    out.report["checks"] = std::move(checks);
    out.report["passed"] = out.passed;
    return out;
}

PipelineOutcome run_pipeline(const PipelineConfig& config) {
    config.validate();
    return Run(config).execute();
}

KPolicy KPolicy::parse(const std::string& text) {
    if (text == "sqrt") return {Kind::Sqrt, 0};
    if (text == "single") return {Kind::Single, 1};
    std::size_t used = 0;
    int k = 0;
    try {
        k = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || k < 1) throw UsageError("k-policy must be sqrt, single or a positive integer: " + text);
    return {Kind::Fixed, k};
}

int KPolicy::k_for(int n) const {
    switch (kind) {
    case Kind::Sqrt: return default_k(n);
    case Kind::Single: return 1;
    case Kind::Fixed: return std::min(k, n);
    }
    return 1;
}

std::string KPolicy::to_string() const {
    switch (kind) {
    case Kind::Sqrt: return "sqrt";
    case Kind::Single: return "single";
    case Kind::Fixed: return std::to_string(k);
    }
    return {};
}

double log_bigint(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log of a non-positive integer");
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 53) return std::log(x.convert_to<double>());
    const std::size_t shift = bits - 53;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::vector<BoundRow> bound_table(int n_max, const KPolicy& policy) {
    if (n_max < 1) throw UsageError("n-max must be at least 1");
    std::vector<BoundRow> rows;
    rows.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        BoundRow row;
        row.n = n;
        row.k = policy.k_for(n);
        const auto sizes = partition_sizes(n, row.k);
        row.s = sizes.front();
        row.count = grouped_family_count(sizes);
        row.bound = size_bound(row.k, row.s);
        row.baseline = (BigInt(1) << n) - 1;
        if (n > 1) row.ratio = log_bigint(row.count) / (std::sqrt(double(n)) * std::log(double(n)));
        if (n <= kEnumerationLimit) {
            enumerate_check(row, row.k);
            row.enumerated = true;
        }
        if (!(row.count < row.bound)) throw std::logic_error("count reaches the bound at n=" + std::to_string(n));
        if (row.count > row.baseline) throw std::logic_error("count exceeds 2^n - 1 at n=" + std::to_string(n));
        if (!rows.empty() && rows.back().k == row.k && row.count < rows.back().count)
            throw std::logic_error("count decreases at fixed k, n=" + std::to_string(n));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json bound_table_json(const std::vector<BoundRow>& rows, const KPolicy& policy) {
    Json j;
    j["k_policy"] = policy.to_string();
    Json out = Json::array();
    for (const auto& r : rows)
        out.push_back({{"n", r.n},
                       {"k", r.k},
                       {"s", r.s},
                       {"count", to_decimal(r.count)},
                       {"bound", to_decimal(r.bound)},
                       {"baseline", to_decimal(r.baseline)},
                       {"ratio", r.ratio ? Json(*r.ratio) : Json()},
                       {"enumerated", r.enumerated}});
    j["rows"] = std::move(out);
    return j;
}

std::string bound_table_text(const std::vector<BoundRow>& rows) {
    std::ostringstream out;
    out << "n\tk\ts\tcount\tbound\tbaseline\tratio\n";
    for (const auto& r : rows) {
        out << r.n << '\t' << r.k << '\t' << r.s << '\t' << r.count << '\t' << r.bound << '\t' << r.baseline << '\t';
        if (r.ratio) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", *r.ratio);
            out << buf;
        } else {
            out << '-';
        }
        out << '\n';
    }
    return out.str();
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
        return;
    }
    if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_object(); })) {
        for (std::size_t t = 0; t < j.size(); ++t) flatten(j[t], path + "[" + std::to_string(t) + "]", out);
        return;
    }
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

} // namespace

std::string json_to_text(const Json& j) {
    std::ostringstream out;
    flatten(j, "", out);
    return out.str();
}

} // namespace rpforge
