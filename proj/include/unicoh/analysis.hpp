#pragma once

#include <json.hpp>

#include "unicoh/filtration.hpp"
#include "unicoh/groupfile.hpp"

namespace unicoh::analysis {

using Json = nlohmann::ordered_json;

struct Options {
  int max_word_len = 1;            // growth: products of generators up to this length
  bool slopes = false;             // growth: add norm-sample slope cross-checks
  std::optional<std::pair<int, int>> pq; // growth: restrict to one (p, q)
  int generator = -1;              // decompose: restrict to one generator
  uint64_t seed = 20240901;        // Kahler sampling
  int jobs = 1;
};

/// Unipotence, quasi-unipotent orders, nilpotency class, derived length,
/// oracle agreement and the floor(log2 c)+1 bound.
Json analyze_group(const GroupFileData& data, const Options& opt);

/// Growth bound verification per generator and per product word.
Json growth(const GroupFileData& data, const Options& opt);

/// Growth-exponent table keyed by (p,q) in CSV form.
std::string growth_csv(const Json& growth_report);

/// Chain, filtration spaces, s-sequences, H-levels and Hodge-Riemann
/// inertia certificates.
Json decompose(const GroupFileData& data, const Options& opt);

/// Builds the named gallery case, serializes its group file and runs the
/// full suite plus the expected-value checks.
struct GalleryRun {
  std::string file_name;
  std::string file_contents;
  Json report;
};
GalleryRun run_gallery(const std::string& name, const std::vector<long>& params,
                       const Options& opt);

/// Seeded invariant sweep over random unipotent groups.
Json fuzz(int n, int count, uint64_t seed, int jobs);

/// Gallery expectations plus a modest fuzz pass over n = 2, 3.
Json verify_all(const Options& opt);

/// 0 ok; 3 when a verified claim failed; 4 when the only findings are
/// undetermined outcomes (joint chain not found).
int exit_code_for(const Json& report);

} // namespace unicoh::analysis
