#pragma once

#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpforge/family.hpp"
#include "rpforge/io.hpp"

namespace rpforge {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int usage = 2;
inline constexpr int io = 3;
inline constexpr int family = 10;
inline constexpr int hull = 11;
inline constexpr int triangulation = 12;
inline constexpr int quotient = 13;
inline constexpr int homology = 14;
} // namespace exit_code

// Stages run in this order; a config stops after its selected stage.
enum class Stage { Family, Verify, Hull, Triangulate, Quotient, Homology, All };
enum class OutputFormat { Json, Text };

const char* to_string(Stage s);
Stage parse_stage(const std::string& name);
OutputFormat parse_format(const std::string& name);

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PipelineConfig {
    int n = 0;
    std::optional<int> k;
    bool single_group = false;
    unsigned precision_bits = 256;
    double eps = std::ldexp(1.0, -64);
    std::optional<std::filesystem::path> out_dir;
    Stage stage = Stage::All;
    int jobs = 1;
    OutputFormat format = OutputFormat::Json;
    int hull_limit = 7;

    // Block count actually used: 1 for single_group, else k or ceil(sqrt(n)).
    int effective_k() const;
    // Throws UsageError.
    void validate() const;
};

SubsetFamily make_family(const PipelineConfig& config);

// n, k, block sizes, |V|, the bound 2^s (s+1)^(k-1) k and the baseline 2^n - 1.
Json family_summary(const SubsetFamily& v);

// Singletons, downward closure and exchange, as one JSON document.
struct VerifyOutcome {
    Json report;
    bool passed = false;
};
VerifyOutcome verify_family(const SubsetFamily& v, int jobs);

struct PipelineOutcome {
    Json summary;
    int exit_code = exit_code::ok;
};

// Runs the stages up to config.stage, writing artifacts under out_dir when
// set. Stage failures are reported in the summary with their exit code;
// I/O failures propagate as IoError.
PipelineOutcome run_pipeline(const PipelineConfig& config);

// Block-count rule for bound tables.
struct KPolicy {
    enum class Kind { Sqrt, Single, Fixed };
    Kind kind = Kind::Sqrt;
    int k = 0;

    // "sqrt", "single" or a positive integer. Throws UsageError.
    static KPolicy parse(const std::string& text);
    // A fixed k larger than n is clamped to n.
    int k_for(int n) const;
    std::string to_string() const;
};

struct BoundRow {
    int n = 0;
    int k = 0;
    int s = 0;
    BigInt count;
    BigInt bound;
    BigInt baseline;
    std::optional<double> ratio;  // ln|V| / (sqrt(n) ln n), undefined at n = 1
    bool enumerated = false;      // count also obtained by brute force
};

inline constexpr int kEnumerationLimit = 24;

// Rows n = 1..n_max. Counts up to kEnumerationLimit are enumerated and
// cross-checked against the closed form. Throws std::logic_error if a
// cross-check or a sanity condition fails: |V| < bound, |V| <= baseline,
// |V| nondecreasing in n while k stays fixed.
std::vector<BoundRow> bound_table(int n_max, const KPolicy& policy);
Json bound_table_json(const std::vector<BoundRow>& rows, const KPolicy& policy);
std::string bound_table_text(const std::vector<BoundRow>& rows);

// Natural log of a positive integer of any size.
double log_bigint(const BigInt& x);

// Flattened "path: value" lines.
std::string json_to_text(const Json& j);

} // namespace rpforge
