// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] (optional) is the path to the CLI binary, used by the
// determinism criterion.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "unicoh/analysis.hpp"
#include "unicoh/combinat.hpp"
#include "unicoh/filtration.hpp"

#ifdef UNICOH_HAVE_OPENMP
#include <omp.h>
#endif

using namespace unicoh;

namespace {

std::string g_cli_path;
int g_failures = 0;

void report(int id, const char* text, bool pass, double seconds) {
  std::printf("%s criterion-%02d (%6.2fs): %s\n", pass ? "PASS" : "FAIL", id, seconds, text);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

/// time_limit <= 0 means no per-criterion budget beyond the suite total.
template <typename F>
void run(int id, const char* text, double time_limit, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  try {
    pass = body();
  } catch (const std::exception& e) {
    std::printf("     criterion-%02d threw: %s\n", id, e.what());
    pass = false;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (pass && time_limit > 0 && secs > time_limit) {
    std::printf("     criterion-%02d exceeded its %.0fs budget\n", id, time_limit);
    pass = false;
  }
  report(id, text, pass, secs);
}

GroupPresentation u_n_group(int n) {
  GroupPresentation g;
  g.ambient_dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.generators.push_back(Mat::identity(n) + Mat::unit(n, i, j));
  return g;
}

int ceil_log2(int n) {
  int p = 0;
  while ((1 << p) < n) ++p;
  return p;
}

int floor_log2(int n) {
  int p = 0;
  while ((1 << (p + 1)) <= n) ++p;
  return p;
}

/// All unipotent automorphisms the corpus contributes for dimension n:
/// gallery tau generators, the full Jordan element, and the fuzz samples.
struct Corpus {
  std::vector<TorusAutomorphism> gallery;
  std::vector<TorusAutomorphism> fuzzed;
  std::vector<GalleryCase> fuzz_groups;
};

Corpus build_corpus(int n, int fuzz_groups, uint64_t seed) {
  Corpus c;
  if (n >= 2) {
    GalleryCase u = u_n_on_torus(n);
    c.gallery = u.generators;
  }
  c.gallery.push_back(full_jordan_automorphism(n));
  for (int k = 0; k < fuzz_groups; ++k) {
    GalleryCase f = random_unipotent_group(n, 2, seed + uint64_t(k));
    for (const auto& g : f.generators) c.fuzzed.push_back(g);
    c.fuzz_groups.push_back(std::move(f));
  }
  return c;
}

bool criterion_1() {
  for (int n = 2; n <= 6; ++n) {
    GroupPresentation g = u_n_group(n);
    int cls = nilpotency_class(g);
    if (cls != n - 1) return false;
    if (!lcs_oracle(g, cls + 1)) return false;
    if (lcs_oracle(g, cls)) return false;
  }
  return true;
}

bool criterion_2() {
  for (int n = 2; n <= 8; ++n) {
    if (derived_length(u_n_group(n)) != ceil_log2(n)) return false;
  }
  // group-level witnesses for the lower bounds of the derived series
  {
    GroupPresentation g5 = u_n_group(5);
    auto comm = [&](const Mat& a, const Mat& b) {
      return a * b * *inverse(a) * *inverse(b);
    };
    Mat t12 = Mat::identity(5) + Mat::unit(5, 0, 1);
    Mat t23 = Mat::identity(5) + Mat::unit(5, 1, 2);
    Mat t34 = Mat::identity(5) + Mat::unit(5, 2, 3);
    Mat t45 = Mat::identity(5) + Mat::unit(5, 3, 4);
    Mat d2 = comm(comm(t12, t23), comm(t34, t45));
    if (d2.is_identity()) return false; // U(5) has derived length >= 3
  }
  // the log2 bound on every gallery and fuzzed group
  for (int n = 2; n <= 6; ++n) {
    int c = nilpotency_class(u_n_group(n));
    int l = derived_length(u_n_group(n));
    if (c >= 1 && l > floor_log2(c) + 1) return false;
  }
  for (int n = 2; n <= 4; ++n) {
    for (uint64_t s = 900; s < 920; ++s) {
      GalleryCase f = random_unipotent_group(n, 2, s);
      GroupPresentation g = f.lattice_group();
      int c = nilpotency_class(g);
      int l = derived_length(g);
      if (c == 0 && l != 0) return false;
      if (c >= 1 && l > floor_log2(c) + 1) return false;
    }
  }
  return true;
}

bool criterion_3() {
  for (int k = 1; k <= 5; ++k) {
    GalleryCase c = affine_example(k + 1, 1); // n - kappa = k
    if (!c.affine) return false;
    // affine_to_unipotent verifies the embedding on all generator pairs
    GroupPresentation img = affine_to_unipotent(*c.affine);
    if (nilpotency_class(img) != k) return false;
    if (nilpotency_class(u_n_group(k + 1)) != k) return false;
  }
  return true;
}

bool criterion_4() {
  for (int n = 2; n <= 4; ++n) {
    Hodge hodge(square_torus(n));
    if (growth_exponent(hodge, full_jordan_automorphism(n), 1, 1) != 2 * (n - 1)) return false;
    Corpus corpus = build_corpus(n, 50, 4000 + uint64_t(n));
    std::vector<TorusAutomorphism> all = corpus.gallery;
    all.insert(all.end(), corpus.fuzzed.begin(), corpus.fuzzed.end());
    if (int(corpus.fuzzed.size()) < 100) return false;
    std::atomic<bool> ok{true};
#ifdef UNICOH_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < long(all.size()); ++i) {
      if (!ok.load(std::memory_order_relaxed)) continue;
      GrowthReport rep = verify_growth_bounds(hodge, all[size_t(i)]);
      if (!rep.all_pass) ok.store(false, std::memory_order_relaxed);
    }
    if (!ok.load()) return false;
  }
  return true;
}

bool criterion_5() {
  for (int n = 2; n <= 4; ++n) {
    Hodge hodge(square_torus(n));
    Corpus corpus = build_corpus(n, 25, 5000 + uint64_t(n));
    std::vector<TorusAutomorphism> all = corpus.gallery;
    all.insert(all.end(), corpus.fuzzed.begin(), corpus.fuzzed.end());
    for (const auto& g : all)
      if (growth_exponent(hodge, g, 1, 1) % 2 != 0) return false;
  }
  return true;
}

bool criterion_6() {
  for (int n = 1; n <= 4; ++n) {
    SeededRng rng(600 + uint64_t(n));
    int tuples = 0;
    while (tuples < 200) {
      GalleryCase f = random_unipotent_group(n, 2, rng.raw());
      for (int t = 0; t < 10 && tuples < 200; ++t, ++tuples) {
        // m = n, plus a longer product every few tuples (zero for all m >= n)
        const int m = n + ((t % 4 == 0) ? 1 : 0);
        std::vector<Mat> hs, gs;
        for (int i = 0; i < m; ++i) {
          hs.push_back(random_word(rng, f, 3).h1_action());
          gs.push_back(random_word(rng, f, 3).h1_action());
        }
        if (!annihilation_product(hs, gs).is_zero()) return false;
      }
    }
    // explicit nonvanishing witness at m = n - 1
    if (n >= 2) {
      TorusAutomorphism j = full_jordan_automorphism(n);
      std::vector<Mat> hs(size_t(n - 1), Mat::identity(2 * n));
      std::vector<Mat> gs(size_t(n - 1), j.h1_action());
      if (annihilation_product(hs, gs).is_zero()) return false;
    }
  }
  return true;
}

bool criterion_7() {
  for (int n = 2; n <= 4; ++n) {
    Hodge hodge(square_torus(n));
    SeededRng rng(700 + uint64_t(n));
    HermitianClass id_omega{Mat::identity(n)};

    // gallery automorphisms
    std::vector<TorusAutomorphism> gallery = u_n_on_torus(n).generators;
    gallery.push_back(full_jordan_automorphism(n));
    for (const auto& g : gallery) {
      InvariantChain chain = build_chain_cyclic(hodge, g, id_omega);
      FiltrationSpaces spaces = compute_spaces(hodge, chain);
      SSequenceResult a = s_sequence(hodge, g, chain, spaces, id_omega);
      SSequenceResult b = s_sequence(hodge, g, chain, spaces, random_kahler_class(rng, n, 2));
      if (!a.trivially_acting && !(a.checks_pass && a.s[0] <= n - 1)) return false;
      if (b.s != a.s || !b.checks_pass) return false;
    }

    // fuzzed cyclic cases
    int cases = 0;
    uint64_t seed = 7100 + uint64_t(n);
    while (cases < 50) {
      GalleryCase f = random_unipotent_group(n, 1, seed++);
      const TorusAutomorphism& g = f.generators[0];
      HermitianClass omega = random_kahler_class(rng, n, 2);
      InvariantChain chain = build_chain_cyclic(hodge, g, omega);
      FiltrationSpaces spaces = compute_spaces(hodge, chain);
      SSequenceResult a = s_sequence(hodge, g, chain, spaces, omega);
      if (!a.trivially_acting) {
        if (!a.checks_pass || a.s.empty() || a.s[0] > n - 1) return false;
        SSequenceResult b = s_sequence(hodge, g, chain, spaces, random_kahler_class(rng, n, 3));
        if (b.s != a.s || !b.checks_pass) return false;
      }
      ++cases;
    }
  }
  return true;
}

bool criterion_8() {
  for (int n = 2; n <= 4; ++n) {
    Hodge hodge(square_torus(n));
    SeededRng rng(800 + uint64_t(n));
    std::vector<TorusAutomorphism> gallery = u_n_on_torus(n).generators;
    gallery.push_back(full_jordan_automorphism(n));
    for (const auto& g : gallery) {
      InvariantChain chain = build_chain_cyclic(hodge, g, HermitianClass{Mat::identity(n)});
      FiltrationSpaces spaces = compute_spaces(hodge, chain);
      for (int i = 0; i <= n - 2; ++i) {
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<HermitianClass> tuple;
          for (int t = 0; t < n - i - 2; ++t) tuple.push_back(random_kahler_class(rng, n, 2));
          Mat gram = quadratic_form_gram(hodge, chain, i, tuple);
          std::vector<HermitianClass> ptuple = tuple;
          ptuple.push_back(random_kahler_class(rng, n, 2));
          Mat p = primitive_space(hodge, chain, i, ptuple);
          if (inertia(restrict_form(gram, p)).n_plus != 0) return false;
          if (inertia(restrict_form(gram, spaces.f[i + 1])).n_plus != 0) return false;
        }
      }
    }
  }
  return true;
}

bool criterion_9() {
  for (int n = 2; n <= 4; ++n) {
    for (uint64_t s = 0; s < 30; ++s) {
      GalleryCase f = random_unipotent_group(n, 2 + int(s % 2), 9000 + s);
      if (nilpotency_class(f.h1_group()) > n - 1) return false;
    }
    for (uint64_t s = 0; s < 20; ++s) {
      int n_prime = 1 + int(s % uint64_t(n - 1));
      AffineGroupPresentation aff = random_affine_subtorus_case(n, n_prime, 3, 9900 + s);
      if (!affine_lcs_trivial(aff, n)) return false;
    }
  }
  return true;
}

bool criterion_10() {
  // polarization vs wedge expansion
  for (int n = 2; n <= 4; ++n) {
    Hodge hodge(square_torus(n));
    SeededRng rng(1000 + uint64_t(n));
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<HermitianClass> tuple;
      for (int i = 0; i < n; ++i) tuple.push_back(random_hermitian_class(rng, n, 3));
      if (hodge.intersection_number(tuple) != hodge.intersection_number_polarized(tuple))
        return false;
    }
  }
  // tensor action vs brute-force exterior power of the H^1 action
  for (int n = 2; n <= 3; ++n) {
    Hodge hodge(square_torus(n));
    std::vector<TorusAutomorphism> gens = u_n_on_torus(n).generators;
    gens.push_back(full_jordan_automorphism(n));
    for (const auto& g : gens) {
      Mat b = g.h1_action();
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
          const int k = p + q;
          const auto& sp = subsets(n, p);
          const auto& sq = subsets(n, q);
          const auto& big = subsets(2 * n, k);
          Mat embed(int(big.size()), int(sp.size() * sq.size()));
          for (size_t s = 0; s < sp.size(); ++s)
            for (size_t t = 0; t < sq.size(); ++t) {
              Mat cols(2 * n, k);
              for (int a = 0; a < p; ++a)
                for (int r = 0; r < 2 * n; ++r) cols.at(r, a) = hodge.phi10().at(r, sp[s][a]);
              for (int bcol = 0; bcol < q; ++bcol)
                for (int r = 0; r < 2 * n; ++r)
                  cols.at(r, p + bcol) = hodge.phi01().at(r, sq[t][bcol]);
              std::vector<int> all_cols(size_t(k), 0);
              for (int cix = 0; cix < k; ++cix) all_cols[size_t(cix)] = cix;
              for (size_t u = 0; u < big.size(); ++u)
                embed.at(int(u), int(s * sq.size() + t)) =
                    (k == 0) ? GaussRat(1) : det(cols.submatrix(big[u], all_cols));
            }
          Mat compound = wedge_matrix(b, k);
          if (compound * embed != embed * hodge.action_pq(g, p, q)) return false;
        }
    }
  }
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_11() {
  if (g_cli_path.empty()) {
    std::printf("     criterion-11: no CLI path given\n");
    return false;
  }
  std::string dir = "acceptance_tmp";
  std::string mk = "mkdir -p " + dir;
  if (std::system(mk.c_str()) != 0) return false;
  auto sh = [&](const std::string& cmd) { return std::system(cmd.c_str()) == 0; };

  if (!sh(g_cli_path + " gallery u_n 3 --out " + dir + " > " + dir + "/g1.json")) return false;
  if (!sh(g_cli_path + " gallery u_n 3 --out " + dir + " > " + dir + "/g2.json")) return false;
  if (slurp(dir + "/g1.json") != slurp(dir + "/g2.json")) return false;
  if (slurp(dir + "/g1.json").empty()) return false;

  std::string fuzz_base = g_cli_path + " fuzz --n 3 --count 8 --seed 321";
  if (!sh(fuzz_base + " --jobs 1 > " + dir + "/f1.json")) return false;
  if (!sh(fuzz_base + " --jobs 4 > " + dir + "/f4.json")) return false;
  if (!sh(fuzz_base + " --jobs 1 > " + dir + "/f1b.json")) return false;
  if (slurp(dir + "/f1.json") != slurp(dir + "/f4.json")) return false;
  if (slurp(dir + "/f1.json") != slurp(dir + "/f1b.json")) return false;
  if (slurp(dir + "/f1.json").empty()) return false;
  return true;
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  auto suite_start = std::chrono::steady_clock::now();

  run(1, "nilpotency class of U(n,Z) is n-1 for n=2..6, Lie closure and commutator oracle agree",
      5.0, criterion_1);
  run(2, "derived length of U(n,Z) is ceil(log2 n) for n=2..8 and stays within floor(log2 c)+1",
      10.0, criterion_2);
  run(3, "affine Z^k x| U(k,Z) has class k = class(U(k+1,Z)) for k=1..5, block embedding verified",
      5.0, criterion_3);
  run(4, "growth exponents saturate 2(n-1) on H^{1,1} and respect all (p,q) bounds on the corpus",
      60.0, criterion_4);
  run(5, "H^{1,1} growth exponents are even on the whole corpus", 0, criterion_5);
  run(6, "annihilation products vanish at m = n (200 tuples per n) with m = n-1 witnesses", 0,
      criterion_6);
  run(7, "s-sequences are strictly decreasing, omega-independent, with unit jumps and sign certificates",
      0, criterion_7);
  run(8, "Q is negative semidefinite on P and on F_{i+1} at every level (20 random tuples each)",
      0, criterion_8);
  run(9, "fuzzed H^1 actions have class <= n-1; weight-n affine commutators vanish on stable subtori",
      0, criterion_9);
  run(10, "intersection polarization vs wedge expansion; tensor vs exterior-power actions agree",
      0, criterion_10);
  run(11, "CLI gallery and fuzz runs are byte-identical across reruns and --jobs 1 vs 4", 0,
      criterion_11);

  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  if (total > 300.0) {
    std::printf("FAIL suite total runtime %.1fs exceeds the 300s budget\n", total);
    ++g_failures;
  }
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed (%.1fs)\n", total);
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
