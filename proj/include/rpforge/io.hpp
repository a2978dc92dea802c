#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rpforge/complex.hpp"
#include "rpforge/family.hpp"
#include "rpforge/geometry.hpp"
#include "rpforge/homology.hpp"
#include "rpforge/report.hpp"

namespace rpforge {

using Json = nlohmann::ordered_json;

// { "n", "groups": [[...]] | null, "members": [[...], ...] } with members in
// canonical order.
Json family_to_json(const SubsetFamily& v);
// Members may be element arrays or msb-first bit strings of length n.
SubsetFamily family_from_json(const Json& j);

Json lattice_to_json(const FaceLattice& lattice);
// OFF for n = 3, nOFF with a dimension line otherwise. Facet vertex lists are
// sorted by index, not cyclically ordered.
std::string lattice_to_off(const FaceLattice& lattice, int digits = 17);

Json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);
// One maximal face per line, space-separated 1-based vertex indices.
std::string complex_to_text(const SimplicialComplex& k);

Json homology_to_json(const HomologyResult& h);
Json report_to_json(const ConditionReport& r);

// Decimal string for arbitrary-size integers.
std::string to_decimal(const BigInt& x);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace rpforge
