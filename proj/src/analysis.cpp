#include "unicoh/analysis.hpp"

#include <functional>
#include <sstream>

#include "unicoh/errors.hpp"

#ifdef UNICOH_HAVE_OPENMP
#include <omp.h>
#endif

namespace unicoh::analysis {

namespace {

Json inertia_json(const Inertia& in) {
  Json j;
  j["plus"] = in.n_plus;
  j["zero"] = in.n_zero;
  j["minus"] = in.n_minus;
  return j;
}

Json metadata_json(const GroupFileData& data) {
  Json m = Json::object();
  for (const auto& [k, v] : data.metadata) m[k] = v;
  return m;
}

std::string word_name(const std::vector<int>& word) {
  std::string s;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) s += "*";
    s += "g" + std::to_string(word[i]);
  }
  return s;
}

TorusAutomorphism word_element(const GroupFileData& data, const std::vector<int>& word) {
  TorusAutomorphism w = identity_automorphism(data.torus);
  for (int i : word) w = compose(w, data.generators[size_t(i)]);
  return w;
}

std::vector<std::vector<int>> enumerate_words(int gens, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int g = 0; g < gens; ++g) {
        std::vector<int> e = w;
        e.push_back(g);
        next.push_back(e);
        out.push_back(std::move(e));
      }
    frontier = std::move(next);
  }
  return out;
}

} // namespace

Json analyze_group(const GroupFileData& data, const Options& opt) {
  (void)opt;
  Json rep;
  rep["command"] = "analyze-group";
  rep["schema_version"] = 1;
  rep["torus"] = Json{{"n", data.torus.n}};
  rep["metadata"] = metadata_json(data);

  Json gens = Json::array();
  bool all_unipotent = true;
  for (size_t i = 0; i < data.generators.size(); ++i) {
    const Mat& m = data.generators[i].mat;
    Json g;
    g["index"] = int(i);
    bool uni = is_unipotent(m);
    g["unipotent"] = uni;
    all_unipotent = all_unipotent && uni;
    try {
      g["quasi_unipotent_order"] = long(quasi_unipotent_order(m));
    } catch (const Error&) {
      g["quasi_unipotent_order"] = nullptr;
      g["note"] = "not quasi-unipotent: spectrum leaves the unit circle";
    }
    gens.push_back(g);
  }
  rep["generators"] = gens;

  Json group;
  group["all_unipotent"] = all_unipotent;
  Json violations = Json::array();
  if (all_unipotent) {
    GroupPresentation g;
    g.ambient_dim = data.torus.lattice_rank();
    for (const auto& a : data.generators) g.generators.push_back(a.mat);
    int cls = nilpotency_class(g);
    int len = derived_length(g);
    group["nilpotency_class"] = cls;
    group["derived_length"] = len;
    bool agree = lcs_oracle(g, cls + 1) && (cls == 0 || !lcs_oracle(g, cls));
    group["lcs_oracle_agrees"] = agree;
    if (!agree) violations.push_back("lcs oracle disagrees with the Lie-closure class");
    int bound = 0;
    if (cls >= 1) {
      while ((1 << (bound + 1)) <= cls) ++bound;
      ++bound;
    }
    group["log2_class_bound"] = bound;
    bool holds = (cls == 0) ? (len == 0) : (len <= bound);
    group["derived_length_within_log2_bound"] = holds;
    if (!holds) violations.push_back("derived length exceeds floor(log2 class) + 1");
  } else {
    group["note"] = "class and length are computed only for unipotent presentations";
  }
  rep["group"] = group;
  rep["violations"] = violations;
  return rep;
}

Json growth(const GroupFileData& data, const Options& opt) {
  Json rep;
  rep["command"] = "growth";
  rep["schema_version"] = 1;
  rep["torus"] = Json{{"n", data.torus.n}};
  rep["metadata"] = metadata_json(data);
  Hodge hodge(data.torus);
  Json elements = Json::array();
  Json violations = Json::array();

  for (const auto& word : enumerate_words(int(data.generators.size()), opt.max_word_len)) {
    TorusAutomorphism g = word_element(data, word);
    Json e;
    e["element"] = word_name(word);
    if (!is_unipotent(g.mat)) {
      e["unipotent"] = false;
      e["note"] = "skipped: element is not unipotent";
      elements.push_back(e);
      continue;
    }
    e["unipotent"] = true;
    GrowthReport gr = verify_growth_bounds(hodge, g);
    e["h11_exponent"] = gr.h11_exponent;
    e["h11_even"] = gr.h11_even;
    e["all_bounds_pass"] = gr.all_pass;
    Json bounds = Json::array();
    for (const auto& entry : gr.entries) {
      if (opt.pq && !(entry.p == opt.pq->first && entry.q == opt.pq->second)) continue;
      Json b;
      b["p"] = entry.p;
      b["q"] = entry.q;
      b["exponent"] = entry.exponent;
      b["bound"] = entry.bound;
      b["pass"] = entry.pass;
      if (entry.pp_bound) {
        b["pp_bound"] = *entry.pp_bound;
        b["pp_pass"] = entry.pp_pass;
      }
      bounds.push_back(b);
      if (!entry.pass || !entry.pp_pass)
        violations.push_back(word_name(word) + ": growth bound failed at (" +
                             std::to_string(entry.p) + "," + std::to_string(entry.q) + ")");
    }
    e["bounds"] = bounds;
    if (!gr.h11_even) violations.push_back(word_name(word) + ": H^{1,1} exponent is odd");
    if (opt.slopes) {
      Json slopes = Json::array();
      std::vector<std::pair<int, int>> targets;
      if (opt.pq)
        targets.push_back(*opt.pq);
      else
        targets = {{1, 1}, {1, 0}};
      for (auto [p, q] : targets) {
        Json s;
        s["p"] = p;
        s["q"] = q;
        int slope = growth_slope_estimate(hodge, g, p, q);
        s["slope"] = slope;
        s["matches_exponent"] = (slope == growth_exponent(hodge, g, p, q));
        if (slope != growth_exponent(hodge, g, p, q))
          violations.push_back(word_name(word) + ": slope estimate mismatch");
        slopes.push_back(s);
      }
      e["slope_checks"] = slopes;
    }
    elements.push_back(e);
  }
  rep["elements"] = elements;
  rep["violations"] = violations;
  return rep;
}

std::string growth_csv(const Json& growth_report) {
  std::ostringstream out;
  out << "element,p,q,exponent,bound,pass\n";
  for (const auto& e : growth_report.at("elements")) {
    if (!e.contains("bounds")) continue;
    for (const auto& b : e.at("bounds")) {
      out << e.at("element").get<std::string>() << "," << b.at("p") << "," << b.at("q") << ","
          << b.at("exponent") << "," << b.at("bound") << ","
          << (b.at("pass").get<bool>() ? "true" : "false") << "\n";
    }
  }
  return out.str();
}

Json decompose(const GroupFileData& data, const Options& opt) {
  Json rep;
  rep["command"] = "decompose";
  rep["schema_version"] = 1;
  rep["torus"] = Json{{"n", data.torus.n}};
  rep["metadata"] = metadata_json(data);
  Hodge hodge(data.torus);
  const int n = data.torus.n;
  HermitianClass omega{Mat::identity(n)};
  rep["omega"] = "identity";
  Json violations = Json::array();

  Json elements = Json::array();
  for (size_t gi = 0; gi < data.generators.size(); ++gi) {
    if (opt.generator >= 0 && int(gi) != opt.generator) continue;
    const TorusAutomorphism& g = data.generators[gi];
    Json e;
    e["element"] = "g" + std::to_string(gi);
    if (!is_unipotent(g.mat)) {
      e["note"] = "skipped: element is not unipotent";
      elements.push_back(e);
      continue;
    }
    InvariantChain chain = build_chain_cyclic(hodge, g, omega);
    FiltrationSpaces spaces = compute_spaces(hodge, chain);
    Json chain_json;
    chain_json["dominant_k"] = chain.dominant_k;
    Json witness_inertia = Json::array();
    for (const auto& w : chain.witnesses) witness_inertia.push_back(inertia_json(inertia(w.h)));
    chain_json["witness_inertia"] = witness_inertia;
    e["chain"] = chain_json;

    Json sp;
    Json dim_f = Json::array(), dim_fp = Json::array(), dim_n = Json::array();
    for (int i = 0; i <= n; ++i) dim_f.push_back(spaces.dim_f(i));
    for (int i = 1; i <= n; ++i) dim_fp.push_back(spaces.dim_fprime(i));
    for (int i = 0; i <= n; ++i) dim_n.push_back(spaces.nspace[i].cols());
    sp["dim_f"] = dim_f;
    sp["dim_fprime"] = dim_fp;
    sp["dim_n"] = dim_n;
    e["spaces"] = sp;

    SSequenceResult seq = s_sequence(hodge, g, chain, spaces, omega);
    e["trivially_acting"] = seq.trivially_acting;
    e["s_sequence"] = seq.s;
    e["r"] = seq.r;
    e["s_checks_pass"] = seq.checks_pass;
    e["s_failures"] = seq.failures;
    for (const auto& f : seq.failures)
      violations.push_back("g" + std::to_string(gi) + ": " + f);
    e["h_level"] = h_level(hodge, g, spaces);

    // Hodge-Riemann inertia certificates with the identity tuple
    Json q_inertia = Json::array();
    for (int i = 0; i <= n - 2; ++i) {
      std::vector<HermitianClass> tuple(size_t(n - i - 2), HermitianClass{Mat::identity(n)});
      Mat gram = quadratic_form_gram(hodge, chain, i, tuple);
      std::vector<HermitianClass> ptuple(size_t(n - i - 1), HermitianClass{Mat::identity(n)});
      Mat p = primitive_space(hodge, chain, i, ptuple);
      Inertia on_p = inertia(restrict_form(gram, p));
      Inertia on_f = inertia(restrict_form(gram, spaces.f[i + 1]));
      Json qi;
      qi["i"] = i;
      qi["on_primitive"] = inertia_json(on_p);
      qi["on_f_next"] = inertia_json(on_f);
      q_inertia.push_back(qi);
      if (on_p.n_plus != 0 || on_f.n_plus != 0)
        violations.push_back("g" + std::to_string(gi) +
                             ": Hodge-Riemann semidefiniteness failed at level " +
                             std::to_string(i));
    }
    e["q_inertia"] = q_inertia;
    elements.push_back(e);
  }
  rep["elements"] = elements;

  // joint chain over all generators (reported, failure is not fatal)
  Json joint;
  bool all_unipotent = true;
  for (const auto& g : data.generators) all_unipotent = all_unipotent && is_unipotent(g.mat);
  if (all_unipotent && !data.generators.empty()) {
    try {
      InvariantChain chain = build_chain_group(hodge, data.generators, omega);
      joint["status"] = "found";
      joint["dominant_k"] = chain.dominant_k;
    } catch (const Error& e2) {
      if (e2.code() == Errc::LChainNotFound) {
        joint["status"] = "not_found";
        joint["detail"] = e2.what();
      } else {
        throw;
      }
    }
  } else {
    joint["status"] = "skipped";
  }
  rep["group_chain"] = joint;
  rep["violations"] = violations;
  return rep;
}

// ---------------------------------------------------------------------------

GalleryRun run_gallery(const std::string& name, const std::vector<long>& params,
                       const Options& opt) {
  GalleryCase c;
  Json extra;
  if (name == "u_n") {
    require(params.size() == 1, Errc::BadParameters, "u_n wants one parameter");
    c = u_n_on_torus(int(params[0]));
  } else if (name == "affine") {
    require(params.size() == 2, Errc::BadParameters, "affine wants n and kappa");
    c = affine_example(int(params[0]), int(params[1]));
  } else if (name == "eisenstein") {
    require(params.size() == 1, Errc::BadParameters, "eisenstein wants one parameter");
    c = eisenstein_case(int(params[0]));
    extra["descent_check"] = eisenstein_quotient_check(int(params[0])) ? "pass" : "fail";
  } else {
    fail(Errc::BadParameters, "unknown gallery case '" + name + "'");
  }

  GroupFileData file = groupfile_from_case(c);
  GalleryRun run;
  run.file_name = c.name + ".json";
  run.file_contents = serialize_group_file(file);

  Json rep;
  rep["command"] = "gallery";
  rep["name"] = c.name;
  rep["file"] = run.file_name;
  for (const auto& [k, v] : extra.items()) rep[k] = v;

  // round trip must be exact before anything else runs
  GroupFileData reparsed = parse_group_file(run.file_contents);
  require(serialize_group_file(reparsed) == run.file_contents, Errc::Internal,
          "group file round trip is not canonical");

  Json analyze = analyze_group(file, opt);
  rep["analyze"] = analyze;
  Json expected = Json::object();
  if (c.expected_class) {
    int computed = analyze["group"].contains("nilpotency_class")
                       ? analyze["group"]["nilpotency_class"].get<int>()
                       : -1;
    expected["class"] = *c.expected_class;
    expected["computed_class"] = computed;
    expected["match"] = (computed == *c.expected_class);
  }
  rep["expected"] = expected;
  rep["growth"] = growth(file, opt);
  rep["decompose"] = decompose(file, opt);

  Json violations = Json::array();
  auto pull = [&violations](const Json& section, const std::string& prefix) {
    for (const auto& v : section.at("violations"))
      violations.push_back(prefix + v.get<std::string>());
  };
  pull(rep["analyze"], "analyze: ");
  pull(rep["growth"], "growth: ");
  pull(rep["decompose"], "decompose: ");
  if (c.expected_class && !expected["match"].get<bool>())
    violations.push_back("expected nilpotency class not reproduced");
  if (extra.contains("descent_check") && extra["descent_check"] != "pass")
    violations.push_back("eisenstein descent check failed");
  rep["violations"] = violations;
  run.report = rep;
  return run;
}

// ---------------------------------------------------------------------------

namespace {

struct SuiteCounter {
  int checked = 0;
  int failures = 0;
  void tally(bool ok) {
    ++checked;
    if (!ok) ++failures;
  }
  Json to_json() const {
    Json j;
    j["checked"] = checked;
    j["failures"] = failures;
    return j;
  }
};

struct FuzzCaseResult {
  bool constructive = true;
  bool growth_bounds = true;
  bool evenness = true;
  bool h1_class = true;
  bool h11_length = true;
  bool oracle = true;
  bool s_sequence_ok = true;
  bool inertia_ok = true;
  bool annihilation = true;
  bool affine_ok = true;
  int h22_exponent = -1; // best H^{2,2} exponent seen (sharpness search)
};

FuzzCaseResult run_fuzz_case(int n, uint64_t seed) {
  FuzzCaseResult res;
  GalleryCase c = random_unipotent_group(n, 2 + int(seed % 2), seed);
  Hodge hodge(c.torus);
  SeededRng rng(seed ^ 0x9e3779b97f4a7c15ull);

  for (const auto& g : c.generators) {
    res.constructive = res.constructive && is_unipotent(g.mat) && g.mat.is_integer() &&
                       (g.mat * c.torus.j == c.torus.j * g.mat);
    GrowthReport gr = verify_growth_bounds(hodge, g);
    res.growth_bounds = res.growth_bounds && gr.all_pass;
    res.evenness = res.evenness && gr.h11_even;
    for (const auto& e : gr.entries)
      if (e.p == 2 && e.q == 2) res.h22_exponent = std::max(res.h22_exponent, e.exponent);
  }
  // one random word per case as well
  {
    TorusAutomorphism w = random_word(rng, c, 3);
    GrowthReport gr = verify_growth_bounds(hodge, w);
    res.growth_bounds = res.growth_bounds && gr.all_pass;
    res.evenness = res.evenness && gr.h11_even;
  }

  GroupPresentation h1 = c.h1_group();
  int cls = nilpotency_class(h1);
  res.h1_class = (cls <= n - 1);
  res.oracle = lcs_oracle(h1, cls + 1) && (cls == 0 || !lcs_oracle(h1, cls));

  RealStructure r1(hodge, 1);
  std::vector<Mat> h11_mats;
  for (const auto& g : c.generators) h11_mats.push_back(r1.real_action(hodge, g));
  res.h11_length = (derived_length_mats(r1.dim(), h11_mats) <= std::max(n - 1, 0));

  // cyclic chain machinery per nontrivially acting generator
  HermitianClass omega = random_kahler_class(rng, n, 2);
  for (const auto& g : c.generators) {
    InvariantChain chain = build_chain_cyclic(hodge, g, omega);
    FiltrationSpaces spaces = compute_spaces(hodge, chain);
    SSequenceResult seq = s_sequence(hodge, g, chain, spaces, omega);
    res.s_sequence_ok = res.s_sequence_ok && (seq.trivially_acting || seq.checks_pass);
    // second Kahler class must reproduce the sequence
    SSequenceResult seq2 = s_sequence(hodge, g, chain, spaces, random_kahler_class(rng, n, 3));
    res.s_sequence_ok = res.s_sequence_ok && (seq2.s == seq.s);
    for (int i = 0; i <= n - 2; ++i) {
      std::vector<HermitianClass> tuple;
      for (int t = 0; t < n - i - 2; ++t) tuple.push_back(random_kahler_class(rng, n, 2));
      Mat gram = quadratic_form_gram(hodge, chain, i, tuple);
      std::vector<HermitianClass> ptuple = tuple;
      ptuple.push_back(random_kahler_class(rng, n, 2));
      Mat p = primitive_space(hodge, chain, i, ptuple);
      res.inertia_ok = res.inertia_ok && inertia(restrict_form(gram, p)).n_plus == 0 &&
                       inertia(restrict_form(gram, spaces.f[i + 1])).n_plus == 0;
    }
  }

  // annihilation products with m = n random elements
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Mat> hs, gs;
    for (int i = 0; i < n; ++i) {
      hs.push_back(random_word(rng, c, 3).h1_action());
      gs.push_back(random_word(rng, c, 3).h1_action());
    }
    res.annihilation = res.annihilation && annihilation_product(hs, gs).is_zero();
  }

  if (n >= 2) {
    AffineGroupPresentation aff =
        random_affine_subtorus_case(n, 1 + int(seed % uint64_t(n - 1)), 3, seed * 31 + 7);
    res.affine_ok = affine_lcs_trivial(aff, n);
  }
  return res;
}

} // namespace

Json fuzz(int n, int count, uint64_t seed, int jobs) {
  require(n >= 1 && count >= 1, Errc::BadParameters, "fuzz wants n >= 1 and count >= 1");
  std::vector<FuzzCaseResult> results(static_cast<size_t>(count), FuzzCaseResult{});
#ifdef UNICOH_HAVE_OPENMP
  if (jobs > 1) {
    omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) results[size_t(i)] = run_fuzz_case(n, seed + uint64_t(i));
  } else {
    for (int i = 0; i < count; ++i) results[size_t(i)] = run_fuzz_case(n, seed + uint64_t(i));
  }
#else
  (void)jobs;
  for (int i = 0; i < count; ++i) results[size_t(i)] = run_fuzz_case(n, seed + uint64_t(i));
#endif

  SuiteCounter constructive, growth_bounds, evenness, h1_class, h11_length, oracle, s_seq,
      inertia_c, annihilation, affine;
  for (const auto& r : results) {
    constructive.tally(r.constructive);
    growth_bounds.tally(r.growth_bounds);
    evenness.tally(r.evenness);
    h1_class.tally(r.h1_class);
    h11_length.tally(r.h11_length);
    oracle.tally(r.oracle);
    s_seq.tally(r.s_sequence_ok);
    inertia_c.tally(r.inertia_ok);
    annihilation.tally(r.annihilation);
    affine.tally(r.affine_ok);
  }
  Json rep;
  rep["command"] = "fuzz";
  rep["n"] = n;
  rep["count"] = count;
  rep["seed"] = seed;
  Json suites;
  suites["constructive_invariants"] = constructive.to_json();
  suites["growth_bounds"] = growth_bounds.to_json();
  suites["h11_evenness"] = evenness.to_json();
  suites["h1_class_at_most_n_minus_1"] = h1_class.to_json();
  suites["h11_derived_length_at_most_n_minus_1"] = h11_length.to_json();
  suites["lcs_oracle_agreement"] = oracle.to_json();
  suites["s_sequence_postconditions"] = s_seq.to_json();
  suites["hodge_riemann_inertia"] = inertia_c.to_json();
  suites["annihilation_at_m_equals_n"] = annihilation.to_json();
  suites["affine_subtorus_commutators"] = affine.to_json();
  rep["suites"] = suites;
  // sharpness search on H^{2,2}: the best exponent the corpus exhibits is
  // reported, never asserted, against the 2p(n-1)-2 ceiling
  if (n >= 2) {
    int best = -1;
    for (const auto& r : results) best = std::max(best, r.h22_exponent);
    Json sharp;
    sharp["best_exponent_found"] = best;
    sharp["ceiling"] = 2 * 2 * (n - 1) - 2;
    rep["h22_sharpness_search"] = sharp;
  }
  bool all = true;
  for (const auto& [k, v] : suites.items()) all = all && (v["failures"].get<int>() == 0);
  rep["all_pass"] = all;
  return rep;
}

Json verify_all(const Options& opt) {
  Json rep;
  rep["command"] = "verify-all";
  Json cases = Json::array();
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    GalleryRun run = run_gallery("u_n", {n}, opt);
    Json c;
    c["name"] = run.report["name"];
    c["violations"] = run.report["violations"];
    ok = ok && run.report["violations"].empty();
    cases.push_back(c);
  }
  for (auto [n, kappa] : std::vector<std::pair<long, long>>{{3, 1}, {5, 2}}) {
    GalleryRun run = run_gallery("affine", {n, kappa}, opt);
    Json c;
    c["name"] = run.report["name"];
    c["violations"] = run.report["violations"];
    ok = ok && run.report["violations"].empty();
    cases.push_back(c);
  }
  for (long n = 2; n <= 3; ++n) {
    GalleryRun run = run_gallery("eisenstein", {n}, opt);
    Json c;
    c["name"] = run.report["name"];
    c["violations"] = run.report["violations"];
    ok = ok && run.report["violations"].empty();
    cases.push_back(c);
  }
  rep["gallery"] = cases;
  Json fz = Json::array();
  for (int n = 2; n <= 3; ++n) {
    Json f = fuzz(n, 10, opt.seed, opt.jobs);
    ok = ok && f["all_pass"].get<bool>();
    fz.push_back(f);
  }
  rep["fuzz"] = fz;
  rep["all_pass"] = ok;
  return rep;
}

int exit_code_for(const Json& report) {
  bool undetermined = false;
  bool violated = false;
  std::function<void(const Json&)> scan = [&](const Json& j) {
    if (j.is_object()) {
      if (j.contains("violations") && !j["violations"].empty()) violated = true;
      if (j.contains("all_pass") && j["all_pass"].is_boolean() && !j["all_pass"].get<bool>())
        violated = true;
      if (j.contains("status") && j["status"] == "not_found") undetermined = true;
      for (const auto& [k, v] : j.items()) scan(v);
    } else if (j.is_array()) {
      for (const auto& v : j) scan(v);
    }
  };
  scan(report);
  if (violated) return 3;
  if (undetermined) return 4;
  return 0;
}

} // namespace unicoh::analysis
