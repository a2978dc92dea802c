#include "rpforge/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rpforge {

namespace {

Json subset_json(Subset s) { return Json(s.elements()); }

Subset subset_from_json(const Json& j, int n) {
    if (j.is_array()) return Subset::from_elements(j.get<std::vector<int>>());
    if (j.is_string()) {
        const auto bits = j.get<std::string>();
        if (static_cast<int>(bits.size()) != n)
            throw std::invalid_argument("bit string member must have length n");
        std::vector<int> elements;
        for (int pos = 0; pos < n; ++pos) {
            const char c = bits[pos];
            if (c != '0' && c != '1') throw std::invalid_argument("bad bit string member");
            if (c == '1') elements.push_back(n - pos);
        }
        return Subset::from_elements(elements);
    }
    throw std::invalid_argument("family member must be an array or a bit string");
}

Json bigint_json(const BigInt& x) {
    if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min())
        return Json(x.convert_to<std::int64_t>());
    return Json(to_decimal(x));
}

} // namespace

std::string to_decimal(const BigInt& x) { return x.str(); }

Json family_to_json(const SubsetFamily& v) {
    Json j;
    j["n"] = v.n();
    if (v.partition()) {
        Json groups = Json::array();
        for (Subset g : v.partition()->groups) groups.push_back(subset_json(g));
        j["groups"] = std::move(groups);
    } else {
        j["groups"] = nullptr;
    }
    Json members = Json::array();
    for (Subset s : v.members()) members.push_back(subset_json(s));
    j["members"] = std::move(members);
    return j;
}

SubsetFamily family_from_json(const Json& j) {
    try {
        const int n = j.at("n").get<int>();
        std::optional<GroupPartition> partition;
        if (j.contains("groups") && !j["groups"].is_null()) {
            GroupPartition p;
            p.n = n;
            for (const auto& g : j["groups"]) p.groups.push_back(subset_from_json(g, n));
            partition = std::move(p);
        }
        std::vector<Subset> members;
        for (const auto& m : j.at("members")) members.push_back(subset_from_json(m, n));
        return SubsetFamily(n, std::move(members), std::move(partition));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed family JSON: ") + e.what());
    }
}

Json lattice_to_json(const FaceLattice& lattice) {
    Json j;
    j["n"] = lattice.n;
    Json vertices = Json::array();
    for (const auto& v : lattice.vertices) vertices.push_back({{"set", v.set.elements()}, {"sign", v.sign}});
    j["vertices"] = std::move(vertices);
    Json facets = Json::array();
    for (const auto& f : lattice.facets) facets.push_back(f.vertices.indices());
    j["facets"] = std::move(facets);
    return j;
}

std::string lattice_to_off(const FaceLattice& lattice, int digits) {
    std::ostringstream out;
    out << std::setprecision(digits);
    if (lattice.n == 3) {
        out << "OFF\n";
    } else {
        out << "nOFF\n" << lattice.n << "\n";
    }
    out << lattice.vertex_count() << " " << lattice.facets.size() << " 0\n";
    for (const auto& v : lattice.vertices) {
        const auto x = embed(v, lattice.n);
        for (int i = 0; i < lattice.n; ++i)
            out << (i ? " " : "") << x[i].str(digits, std::ios_base::fmtflags(0));
        out << "\n";
    }
    for (const auto& f : lattice.facets) {
        out << f.vertices.count();
        f.vertices.for_each([&](int v) { out << " " << v; });
        out << "\n";
    }
    return out.str();
}

Json complex_to_json(const SimplicialComplex& k) {
    Json j;
    j["vertices"] = k.labels();
    j["facets"] = k.maximal_faces();
    return j;
}

SimplicialComplex complex_from_json(const Json& j) {
    try {
        auto labels = j.at("vertices").get<std::vector<std::string>>();
        auto faces = j.at("facets").get<std::vector<Simplex>>();
        const int count = static_cast<int>(labels.size());
        return SimplicialComplex(count, std::move(faces), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed complex JSON: ") + e.what());
    }
}

std::string complex_to_text(const SimplicialComplex& k) {
    std::ostringstream out;
    for (const auto& face : k.maximal_faces()) {
        for (std::size_t t = 0; t < face.size(); ++t) out << (t ? " " : "") << face[t] + 1;
        out << "\n";
    }
    return out.str();
}

Json homology_to_json(const HomologyResult& h) {
    Json j;
    j["coefficients"] = to_string(h.coefficients);
    Json dims = Json::array();
    for (const auto& g : h.dims) {
        Json torsion = Json::array();
        for (const auto& t : g.torsion) torsion.push_back(bigint_json(t));
        dims.push_back({{"d", g.d}, {"rank", g.rank}, {"torsion", std::move(torsion)}});
    }
    j["dims"] = std::move(dims);
    j["euler"] = h.euler;
    return j;
}

Json report_to_json(const ConditionReport& r) {
    Json j;
    j["name"] = r.name;
    j["passed"] = r.passed();
    j["checked"] = r.checked;
    j["violation_count"] = r.violation_count;
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        Json sets = Json::array();
        for (Subset s : v.sets) sets.push_back(subset_json(s));
        violations.push_back({{"condition", v.condition},
                              {"sets", std::move(sets)},
                              {"elements", v.elements},
                              {"message", v.message}});
    }
    j["violations"] = std::move(violations);
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("cannot parse " + path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string());
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace rpforge
