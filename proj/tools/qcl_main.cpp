#include "CLI11.hpp"

#include "qcl/padic.hpp"
#include "qcl/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace qcl;

bool odd_n_list(const std::vector<long>& ns) {
  for (long n : ns)
    if (n % 2 == 0 || n <= 1) return false;
  return true;
}

// 0 when clean, 2 on a usage problem, 3 on a bad task file. An empty name
// list (e.g. --spec without --target) selects no catalog targets.
int collect_units(const std::vector<std::string>& names,
                  const std::vector<std::string>& spec_files,
                  std::vector<RunUnit>& units) {
  bool all = false;
  for (const auto& name : names)
    if (name == "all") all = true;
  if (all) {
    for (const TargetDef& t : catalog()) units.push_back(unit_from_target(t));
  } else {
    for (const auto& name : names) {
      const TargetDef* t = find_target(name);
      if (!t) {
        std::cerr << "unknown target: " << name << "\n";
        return 2;
      }
      units.push_back(unit_from_target(*t));
    }
  }
  for (const auto& path : spec_files) {
    std::ifstream in(path);
    if (!in.good()) {
      std::cerr << "cannot read " << path << "\n";
      return 2;
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::string stem = std::filesystem::path(path).stem().string();
    try {
      units.push_back(unit_from_task(lower(parse_task(text), stem)));
    } catch (const ParseError& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return 3;
    } catch (const SemanticError& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return 3;
    }
  }
  return 0;
}

int run_and_report(const std::vector<RunUnit>& units,
                   const std::vector<long>& n_list, const std::string& m_mode,
                   int samples, uint64_t seed, int threads,
                   const std::string& out_path, const std::string& format) {
  auto jobs = plan_jobs(units, n_list, m_mode != "nm1", m_mode != "half",
                        samples, seed);
  RunResult r = run_jobs(jobs, threads);
  std::string report =
      format == "md" ? report_markdown(r, seed) : report_json(r, seed);
  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << report;
  }
  std::cerr << r.pass << " pass, " << r.fail << " fail, " << r.skipped
            << " skipped (" << r.wall_ms << " ms)\n";
  return r.fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for truncated q-hypergeometric congruences"};
  app.require_subcommand(1);

  std::vector<std::string> target_names;
  std::vector<long> n_list;
  std::string m_mode = "both";
  int samples = 3;
  uint64_t seed = 0;
  std::vector<std::string> spec_files;
  int threads = 0;
  std::string out_path;
  std::string format = "json";

  CLI::App* verify = app.add_subcommand(
      "verify", "run seeded checks for catalog targets and task files");
  verify->add_option("--target", target_names,
                     "target names, or 'all' (default: all unless --spec "
                     "is given)")
      ->delimiter(',');
  verify->add_option("--n", n_list, "odd n values")->delimiter(',');
  verify->add_option("--m-mode", m_mode, "LHS truncation: half, nm1 or both")
      ->check(CLI::IsMember({"half", "nm1", "both"}));
  verify->add_option("--samples", samples, "samples per (target, n, mode)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--spec", spec_files, "task files (.qhs)")->delimiter(',');
  verify->add_option("--threads", threads, "worker threads (0 = auto)")
      ->envname("QCL_THREADS");
  verify->add_option("--out", out_path, "write the report here");
  verify->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "md"}));

  CLI::App* list = app.add_subcommand("list-targets", "print the catalog");

  CLI::App* steps = app.add_subcommand(
      "check-proof-steps", "verify the reduction-chain displays");
  steps->add_option("--n", n_list, "odd n values")->delimiter(',');
  steps->add_option("--samples", samples, "samples per (step, n)")
      ->check(CLI::PositiveNumber);
  steps->add_option("--seed", seed, "sampling seed");
  steps->add_option("--threads", threads, "worker threads (0 = auto)")
      ->envname("QCL_THREADS");
  steps->add_option("--out", out_path, "write the report here");
  steps->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "md"}));

  CLI::App* padic =
      app.add_subcommand("padic", "classical prime-power congruence checks");
  std::string padic_name;
  long p = 0;
  long r_exp = 1;
  padic->add_option("--target", padic_name, "pad13 .. pad17")->required();
  padic->add_option("--p", p, "odd prime")->required();
  padic->add_option("--r", r_exp, "prime-power exponent")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list->parsed()) {
    for (const TargetDef& t : catalog()) {
      std::cout << t.name << "\t"
                << (t.params[0] ? t.params : "-") << "\tn>=" << t.min_n << "\t"
                << t.title << "\n";
    }
    for (const PadicDef& d : padic_catalog())
      std::cout << d.name << "\tp,r\tp>" << (d.needs_p_gt_3 ? 3 : 2)
                << "\tclassical prime-power companion\n";
    return 0;
  }

  if (padic->parsed()) {
    const PadicDef* d = find_padic_target(padic_name);
    if (!d) {
      std::cerr << "unknown target: " << padic_name << "\n";
      return 2;
    }
    try {
      Verdict v = classical_check(d->id, p, r_exp);
      std::cout << d->name << " p=" << p << " r=" << r_exp << ": "
                << status_name(v.status)
                << (v.diagnostics.empty() ? "" : " (" + v.diagnostics + ")")
                << "\n";
      return v.status == Status::FAIL ? 1 : 0;
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }

  if (n_list.empty()) {
    std::cerr << "--n is required\n";
    return 2;
  }
  if (!odd_n_list(n_list)) {
    std::cerr << "--n entries must be odd and > 1\n";
    return 2;
  }

  if (steps->parsed()) {
    std::vector<RunUnit> units;
    for (const char* name :
         {"wei-e", "wei-f", "wei-g", "wei-h", "gs54", "guo-l1", "guo-l2"})
      units.push_back(unit_from_target(*find_target(name), true));
    return run_and_report(units, n_list, "both", samples, seed, threads,
                          out_path, format);
  }

  if (target_names.empty() && spec_files.empty()) target_names = {"all"};
  std::vector<RunUnit> units;
  if (int rc = collect_units(target_names, spec_files, units); rc != 0)
    return rc;
  return run_and_report(units, n_list, m_mode, samples, seed, threads,
                        out_path, format);
}
