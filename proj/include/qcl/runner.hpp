#pragma once

#include "qcl/congruence.hpp"
#include "qcl/dsl.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

namespace qcl {

// ----- deterministic parameter sampling -----

namespace detail {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Small rationals avoiding 0 and +-1, so every catalog denominator
// (including the quadratic ones) stays nonzero.
inline const std::vector<BigRat>& sample_pool() {
  static const std::vector<BigRat> pool = {
      BigRat(2),     BigRat(3),     BigRat(5),     BigRat(7),
      BigRat(11),    BigRat(13),    BigRat(3, 2),  BigRat(5, 3),
      BigRat(7, 2),  BigRat(-2),    BigRat(-3)};
  return pool;
}

// Deterministic sample for the given key: values are distinct pool members,
// and when both a and b are drawn we also reject a*b = 1.
inline ParamMap draw_sample(std::string_view params, uint64_t seed,
                            std::string_view target_name, long n,
                            int mode_idx, int sample_idx) {
  if (params.empty()) return {};
  uint64_t state = seed;
  state ^= detail::fnv1a64(target_name);
  detail::splitmix64(state);
  state ^= static_cast<uint64_t>(n) * 0x100000001b3ULL;
  detail::splitmix64(state);
  state ^= static_cast<uint64_t>(mode_idx + 2) << 32;
  state ^= static_cast<uint64_t>(sample_idx);
  const auto& pool = sample_pool();
  for (;;) {
    std::vector<size_t> left(pool.size());
    for (size_t i = 0; i < left.size(); ++i) left[i] = i;
    ParamMap m;
    for (char p : params) {
      size_t j = detail::splitmix64(state) % left.size();
      m[p] = pool[left[j]];
      left.erase(left.begin() + static_cast<long>(j));
    }
    if (m.count('a') && m.count('b') && m.at('a') * m.at('b') == 1) continue;
    return m;
  }
}

// ----- planning -----

// One verification subject: a catalog entry or a lowered user task.
struct RunUnit {
  std::string name;
  std::string params;                 // sampled letters, in order
  const TargetDef* builtin{nullptr};  // null for user tasks
  std::optional<CongruenceTask> task;
  bool as_proof_step{false};  // force the dedicated proof-step check
};

inline RunUnit unit_from_target(const TargetDef& t, bool as_proof_step = false) {
  return RunUnit{t.name, t.params, &t, std::nullopt,
                 as_proof_step || t.special};
}

inline RunUnit unit_from_task(CongruenceTask task) {
  RunUnit u;
  u.name = task.name;
  u.params = task.params;
  u.task = std::move(task);
  return u;
}

// A unit reacts to the truncation choice only if some side selects M.
inline bool mode_sensitive(const RunUnit& u) {
  if (u.as_proof_step) return false;
  const SumSpec* lhs = nullptr;
  const SumSpec* rhs = nullptr;
  if (u.builtin) {
    if (u.builtin->special) return false;
    lhs = &u.builtin->lhs;
    rhs = &u.builtin->rhs;
  } else {
    lhs = &u.task->lhs;
    rhs = &u.task->rhs;
  }
  return lhs->bound == BoundKind::M_SELECT || rhs->bound == BoundKind::M_SELECT;
}

struct Job {
  const RunUnit* unit;
  long n;
  int mode_idx;  // 0 = (n+1)/2, 1 = n-1, -1 = not applicable
  int sample_idx;
  ParamMap sample;
};

inline const char* mode_label(int mode_idx) {
  switch (mode_idx) {
    case 0:
      return "half";
    case 1:
      return "nm1";
    default:
      return "na";
  }
}

inline std::vector<Job> plan_jobs(const std::vector<RunUnit>& units,
                                  const std::vector<long>& n_list,
                                  bool want_half, bool want_nm1, int samples,
                                  uint64_t seed) {
  std::vector<Job> jobs;
  for (const RunUnit& u : units) {
    std::vector<int> modes;
    if (mode_sensitive(u)) {
      if (want_half) modes.push_back(0);
      if (want_nm1) modes.push_back(1);
    } else {
      modes.push_back(-1);
    }
    int count = u.params.empty() ? 1 : samples;
    for (long n : n_list)
      for (int mode : modes)
        for (int s = 0; s < count; ++s)
          jobs.push_back(
              {&u, n, mode, s, draw_sample(u.params, seed, u.name, n, mode, s)});
  }
  return jobs;
}

// ----- execution -----

struct ReportEntry {
  std::string target;
  long n;
  std::string m_mode;
  std::vector<std::pair<char, std::string>> sample;
  std::string modulus;
  Status status{Status::SKIPPED};
  long elapsed_ms{0};
  uint64_t witness_digest{0};
  std::string diagnostics;
};

struct RunResult {
  std::vector<ReportEntry> entries;
  long pass{0};
  long fail{0};
  long skipped{0};
  long wall_ms{0};
};

inline ReportEntry run_job(const Job& j) {
  ReportEntry e;
  const RunUnit& u = *j.unit;
  e.target = u.name;
  e.n = j.n;
  e.m_mode = mode_label(j.mode_idx);
  for (char p : u.params)
    e.sample.emplace_back(p, rat_str(j.sample.at(p)));
  const ModulusRecipe& recipe =
      u.builtin ? u.builtin->modulus : u.task->modulus;
  if (j.n % 2 != 0 && j.n >= 3) e.modulus = modulus_render(recipe, j.n);
  auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    MMode mode = j.mode_idx == 1 ? MMode::NM1 : MMode::HALF;
    if (u.builtin) {
      if (u.as_proof_step)
        v = proof_step_check(u.builtin->id, j.n, j.sample);
      else
        v = verify_target(u.builtin->id, j.n, mode, j.sample);
    } else {
      v = verify_task(*u.task, j.n, mode, j.sample);
    }
  } catch (const std::exception& ex) {
    v.status = Status::FAIL;
    v.diagnostics = ex.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  e.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  e.status = v.status;
  e.witness_digest = v.witness_digest;
  e.diagnostics = v.diagnostics;
  return e;
}

// Workers pull jobs off a shared counter and write results by index, so the
// merged report is independent of scheduling.
inline RunResult run_jobs(const std::vector<Job>& jobs, int threads = 0) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  r.entries.resize(jobs.size());
  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = hw ? static_cast<int>(hw) : 1;
  }
  if (static_cast<size_t>(threads) > jobs.size() && !jobs.empty())
    threads = static_cast<int>(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      r.entries[i] = run_job(jobs[i]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> ts;
    ts.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }
  for (const ReportEntry& e : r.entries) {
    if (e.status == Status::PASS)
      ++r.pass;
    else if (e.status == Status::FAIL)
      ++r.fail;
    else
      ++r.skipped;
  }
  auto t1 = std::chrono::steady_clock::now();
  r.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return r;
}

// ----- reports -----

// Reports must be byte-stable across runs and thread counts, so the
// timestamp honors SOURCE_DATE_EPOCH (epoch otherwise) and per-entry
// timings are normalized to 0; wall time is reported out of band.
inline std::string report_timestamp() {
  long long epoch = 0;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
    epoch = std::atoll(sde);
  std::time_t t = static_cast<std::time_t>(epoch);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string digest_hex(uint64_t d) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

inline std::string report_json(const RunResult& r, uint64_t seed) {
  nlohmann::ordered_json j;
  j["schemaVersion"] = 1;
  j["run"]["seed"] = seed;
  j["run"]["timestamp"] = report_timestamp();
  j["entries"] = nlohmann::ordered_json::array();
  for (const ReportEntry& e : r.entries) {
    nlohmann::ordered_json je;
    je["target"] = e.target;
    je["n"] = e.n;
    je["mMode"] = e.m_mode;
    je["sample"] = nlohmann::ordered_json::object();
    for (const auto& [p, val] : e.sample) je["sample"][std::string(1, p)] = val;
    je["modulus"] = e.modulus;
    je["status"] = status_name(e.status);
    je["elapsedMillis"] = 0;
    je["witnessDigest"] = digest_hex(e.witness_digest);
    if (!e.diagnostics.empty()) je["diagnostics"] = e.diagnostics;
    j["entries"].push_back(std::move(je));
  }
  j["summary"]["pass"] = r.pass;
  j["summary"]["fail"] = r.fail;
  j["summary"]["skipped"] = r.skipped;
  return j.dump(2) + "\n";
}

inline std::string render_sample(const ReportEntry& e) {
  std::string s;
  for (const auto& [p, val] : e.sample) {
    if (!s.empty()) s += ", ";
    s += p;
    s += "=";
    s += val;
  }
  return s.empty() ? "-" : s;
}

inline std::string report_markdown(const RunResult& r, uint64_t seed) {
  std::ostringstream os;
  os << "# congruence verification report\n\n";
  os << "seed " << seed << ", generated " << report_timestamp() << "\n\n";
  os << "| pass | fail | skipped |\n|---|---|---|\n| " << r.pass << " | "
     << r.fail << " | " << r.skipped << " |\n";
  std::string current;
  for (const ReportEntry& e : r.entries) {
    if (e.target != current) {
      current = e.target;
      os << "\n## " << current << "\n\n";
      os << "| n | mMode | sample | modulus | status | witness |\n";
      os << "|---|---|---|---|---|---|\n";
    }
    os << "| " << e.n << " | " << e.m_mode << " | " << render_sample(e)
       << " | " << (e.modulus.empty() ? "-" : e.modulus) << " | "
       << status_name(e.status)
       << (e.diagnostics.empty() ? "" : " (" + e.diagnostics + ")") << " | "
       << digest_hex(e.witness_digest) << " |\n";
  }
  return os.str();
}

}  // namespace qcl
