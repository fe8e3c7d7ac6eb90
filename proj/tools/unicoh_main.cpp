#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "unicoh/analysis.hpp"

#ifdef UNICOH_HAVE_OPENMP
#include <omp.h>
#endif

using namespace unicoh;
using analysis::Json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot write '" + path + "'");
  out << contents;
}

/// Runs one report per input file (in parallel under --jobs) and prints a
/// deterministic document: bare report for a single file, a case array
/// otherwise. Returns the process exit code.
int run_batch(const std::vector<std::string>& files, int jobs,
              const std::function<Json(const GroupFileData&)>& make_report) {
  std::vector<Json> reports(files.size());
  std::vector<std::string> errors(files.size());
#ifdef UNICOH_HAVE_OPENMP
  if (jobs > 1) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic) if (jobs > 1)
  for (long i = 0; i < long(files.size()); ++i) {
    try {
      reports[size_t(i)] = make_report(parse_group_file(read_file(files[size_t(i)])));
    } catch (const Error& e) {
      errors[size_t(i)] = e.what();
    }
  }
#else
  (void)jobs;
  for (size_t i = 0; i < files.size(); ++i) {
    try {
      reports[i] = make_report(parse_group_file(read_file(files[i])));
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  }
#endif
  for (size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << files[i] << ": " << errors[i] << "\n";
      return 2;
    }
  }
  int code = 0;
  if (files.size() == 1) {
    std::cout << reports[0].dump(2) << "\n";
    code = analysis::exit_code_for(reports[0]);
  } else {
    Json doc;
    Json cases = Json::array();
    for (size_t i = 0; i < files.size(); ++i) {
      Json c;
      c["file"] = files[i];
      c["report"] = reports[i];
      cases.push_back(c);
      code = std::max(code, analysis::exit_code_for(reports[i]));
    }
    doc["cases"] = cases;
    std::cout << doc.dump(2) << "\n";
  }
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus for unipotent automorphism groups of complex tori"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  int jobs = 1;
  int max_word_len = 1;
  int generator = -1;
  std::string pq = "all";
  bool samples = false;
  std::string csv_path;
  std::string out_dir = ".";
  unsigned long long seed = 20240901ULL;
  int fuzz_n = 2, fuzz_count = 10;

  auto* cmd_analyze = app.add_subcommand("analyze-group", "unipotence, orders, class, length");
  cmd_analyze->add_option("files", files)->required()->expected(-1);
  cmd_analyze->add_option("--jobs", jobs, "process files in parallel");

  auto* cmd_growth = app.add_subcommand("growth", "polynomial growth bounds on Hodge pieces");
  cmd_growth->add_option("files", files)->required()->expected(-1);
  cmd_growth->add_option("--jobs", jobs);
  cmd_growth->add_option("--pq", pq, "all or p,q");
  cmd_growth->add_option("--max-word-len", max_word_len, "also check generator products");
  cmd_growth->add_flag("--samples", samples, "add norm-sample slope cross-checks");
  cmd_growth->add_option("--csv", csv_path, "write the exponent table as CSV");

  auto* cmd_decompose = app.add_subcommand("decompose", "invariant chains, filtration, s-sequences");
  cmd_decompose->add_option("files", files)->required()->expected(-1);
  cmd_decompose->add_option("--jobs", jobs);
  cmd_decompose->add_option("--generator", generator, "restrict to one generator index");

  auto* cmd_gallery = app.add_subcommand("gallery", "build a named example and run the full suite");
  std::string gallery_name;
  std::vector<long> gallery_params;
  cmd_gallery->add_option("name", gallery_name, "u_n | affine | eisenstein")->required();
  cmd_gallery->add_option("params", gallery_params, "case parameters")->expected(-1);
  cmd_gallery->add_option("--out", out_dir, "directory for the emitted group file");

  auto* cmd_fuzz = app.add_subcommand("fuzz", "seeded invariant sweep over random groups");
  cmd_fuzz->add_option("--n", fuzz_n, "complex dimension")->required();
  cmd_fuzz->add_option("--count", fuzz_count, "number of cases")->required();
  cmd_fuzz->add_option("--seed", seed);
  cmd_fuzz->add_option("--jobs", jobs);

  auto* cmd_verify = app.add_subcommand("verify-all", "gallery expectations plus fuzz suites");
  cmd_verify->add_option("--seed", seed);
  cmd_verify->add_option("--jobs", jobs);

  CLI11_PARSE(app, argc, argv);

  analysis::Options opt;
  opt.max_word_len = max_word_len;
  opt.slopes = samples;
  opt.generator = generator;
  opt.seed = seed;
  opt.jobs = jobs;
  if (pq != "all") {
    auto comma = pq.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(pq);
      opt.pq = std::make_pair(std::stoi(pq.substr(0, comma)), std::stoi(pq.substr(comma + 1)));
    } catch (const std::exception&) {
      std::cerr << "--pq wants 'all' or 'p,q'\n";
      return 2;
    }
  }

  try {
    if (cmd_analyze->parsed())
      return run_batch(files, jobs, [&](const GroupFileData& d) {
        return analysis::analyze_group(d, opt);
      });
    if (cmd_growth->parsed()) {
      int code = run_batch(files, jobs, [&](const GroupFileData& d) {
        return analysis::growth(d, opt);
      });
      if (!csv_path.empty()) {
        // regenerate serially for the CSV (cheap relative to the analysis)
        std::string table = "element,p,q,exponent,bound,pass\n";
        for (const auto& f : files) {
          Json rep = analysis::growth(parse_group_file(read_file(f)), opt);
          std::string t = analysis::growth_csv(rep);
          table += t.substr(t.find('\n') + 1);
        }
        write_file(csv_path, table);
      }
      return code;
    }
    if (cmd_decompose->parsed())
      return run_batch(files, jobs, [&](const GroupFileData& d) {
        return analysis::decompose(d, opt);
      });
    if (cmd_gallery->parsed()) {
      analysis::GalleryRun run = analysis::run_gallery(gallery_name, gallery_params, opt);
      write_file(out_dir + "/" + run.file_name, run.file_contents);
      std::cout << run.report.dump(2) << "\n";
      return analysis::exit_code_for(run.report);
    }
    if (cmd_fuzz->parsed()) {
      Json rep = analysis::fuzz(fuzz_n, fuzz_count, seed, jobs);
      std::cout << rep.dump(2) << "\n";
      return analysis::exit_code_for(rep);
    }
    if (cmd_verify->parsed()) {
      Json rep = analysis::verify_all(opt);
      std::cout << rep.dump(2) << "\n";
      return analysis::exit_code_for(rep);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == Errc::ParseError || e.code() == Errc::BadParameters) return 2;
    if (e.code() == Errc::LChainNotFound) return 4;
    return 3;
  }
  return 0;
}
