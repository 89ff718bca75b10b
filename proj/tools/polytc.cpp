// polytc: exact mod-2 cohomology of planar polygon spaces and certified
// topological-complexity bounds.
//
// Subcommands: report, sweep, verify, zdcl, certificate.  All runs are
// deterministic for fixed flags and seed; JSON output is byte-stable.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polytc/certify.hpp"
#include "polytc/io.hpp"
#include "polytc/oracle.hpp"
#include "polytc/parity.hpp"
#include "polytc/ring.hpp"
#include "polytc/version.hpp"

using namespace polytc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

constexpr int kDimsBudgetN = 16;      // graded dimensions in reports
constexpr int kOracleBudgetN = 9;     // brute-force oracle
constexpr int kExhaustiveBudgetN = 8; // exhaustive vanishing
constexpr int kRandomBudgetN = 12;    // random vanishing sweep default

long long binomial_count(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long acc = 1;
  for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

struct PairRow {
  ParamDecomp p;
  Certificate cert;
};

PairRow make_row(int n, int k) {
  PairRow row;
  row.cert = certify_lower(n, k);
  row.p = row.cert.params;
  return row;
}

Json row_to_json(const PairRow& row) {
  Json j = to_json(row.p);
  j["zdcl"] = row.cert.passed() ? 2 * row.p.n - 7 : 0;
  j["tc_lower"] = row.cert.tc_lower;
  j["tc_upper"] = row.cert.tc_upper;
  j["evaluation"] = row.cert.evaluation;
  return j;
}

void print_csv_header(std::ostream& os) {
  os << "n,k,t,k0,B,D,C,case,zdcl,tc_lower,tc_upper,evaluation\n";
}

void print_csv_row(std::ostream& os, const PairRow& row) {
  os << row.p.n << ',' << row.p.k << ',' << row.p.t << ',' << row.p.k0 << ','
     << row.p.B << ',' << row.p.D << ',' << row.p.C << ',' << to_string(row.p.wcase)
     << ',' << (row.cert.passed() ? 2 * row.p.n - 7 : 0) << ',' << row.cert.tc_lower
     << ',' << row.cert.tc_upper << ',' << row.cert.evaluation << '\n';
}

int run_report(int n, std::optional<int> k_opt, std::optional<std::string> r_opt,
               const std::string& format, bool alt_pairing) {
  int k = 0;
  if (k_opt) {
    k = *k_opt;
  } else if (r_opt) {
    const LengthResult res = normalize_length_decimal(n, *r_opt);
    if (res.status != LengthStatus::Ok) {
      std::cerr << to_string(res.status) << ": side length r=" << *r_opt
                << " with n=" << n;
      if (res.status == LengthStatus::NonGeneric)
        std::cerr << " (n - r is an odd integer; the space need not be a manifold)";
      if (res.status == LengthStatus::KOneUnsupported)
        std::cerr << " (the k=1 projective-space regime is out of scope)";
      std::cerr << "\n";
      return kExitUsage;
    }
    k = res.k;
  } else {
    std::cerr << "report: supply --k or --r\n";
    return kExitUsage;
  }

  PolygonRing ring(n, k);
  const PairRow row = make_row(n, k);

  std::optional<std::vector<int>> dims;
  std::optional<Json> graded;
  if (n <= kDimsBudgetN) {
    dims.emplace();
    graded = Json::array();
    for (int d = 0; d <= ring.top_degree(); ++d) {
      dims->push_back(ring.dim(d));
      long long rels = 0;
      for (int l = n - k; l <= std::min(d + 1, n - 1); ++l)
        rels += binomial_count(n - 1, l);
      Json g;
      g["degree"] = d;
      g["basis"] = ring.basis(d).size();
      g["relations"] = rels;
      g["dim"] = dims->back();
      graded->push_back(std::move(g));
    }
  }

  std::optional<int> alt;
  if (alt_pairing && row.p.wcase == WitnessCase::BEvenDZero) {
    const auto prod = expand(ring, row.cert.witness.factors);
    alt = pair_evaluate(ring, Functional::Phi1, Functional::Phi2, prod);
  }

  if (format == "json") {
    Json j;
    j["n"] = n;
    j["k"] = k;
    j["decomposition"] = to_json(row.p);
    if (dims) j["dims"] = *dims;
    if (graded) j["graded"] = *graded;
    j["certificate"] = to_json(row.cert);
    j["evaluation"] = row.cert.evaluation;
    j["zdcl"] = row.cert.passed() ? 2 * n - 7 : 0;
    j["tc_lower"] = row.cert.tc_lower;
    j["tc_upper"] = row.cert.tc_upper;
    if (alt) j["alt_pairing_phi1_phi2"] = *alt;
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv_header(std::cout);
    print_csv_row(std::cout, row);
  } else {
    std::cout << "polygon space: n=" << n << ", side length r=" << n - 2 * k
              << " (k=" << k << ")\n";
    std::cout << "decomposition: t=" << row.p.t << " k0=" << row.p.k0 << " B=" << row.p.B
              << " D=" << row.p.D << " C=" << row.p.C << " case=" << to_string(row.p.wcase);
    if (row.p.m) std::cout << " ell=" << *row.p.ell << " A=" << *row.p.A
                           << " gamma=" << *row.p.gamma << " m=" << *row.p.m;
    std::cout << "\n";
    if (dims) {
      std::cout << "graded dimensions:";
      for (int d : *dims) std::cout << ' ' << d;
      std::cout << "\n";
    }
    std::cout << "witness factors:";
    for (const auto& [y, e] : row.cert.witness.factors) {
      if (y.r)
        std::cout << " R^" << e;
      else
        std::cout << " V" << __builtin_ctzll(y.v) + 1 << "^" << e;
    }
    std::cout << "  pairing (" << to_string(row.cert.witness.left) << ","
              << to_string(row.cert.witness.right) << ")\n";
    std::cout << "evaluation: " << row.cert.evaluation
              << (row.cert.passed() ? " (PASS)" : " (FAILED)") << "\n";
    if (alt) std::cout << "unmodified (PHI1,PHI2) pairing: " << *alt << "\n";
    std::cout << "zero-divisors-cup-length: " << (row.cert.passed() ? 2 * n - 7 : 0) << "\n";
    std::cout << "TC bounds: [" << row.cert.tc_lower << ", " << row.cert.tc_upper << "]\n";
    std::cout << "verified at " << row.cert.verified_at << " by engine "
              << row.cert.engine_version << "\n";
  }
  return row.cert.passed() ? kExitOk : kExitVerifyFailed;
}

int run_sweep(int n_max, const std::string& format) {
  std::vector<PairRow> rows;
  for_each_valid_pair(n_max, [&](int n, int k) { rows.push_back(make_row(n, k)); });
  bool all_pass = true;
  for (const auto& r : rows) all_pass = all_pass && r.cert.passed();

  if (format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(row_to_json(r));
    std::cout << arr.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv_header(std::cout);
    for (const auto& r : rows) print_csv_row(std::cout, r);
  } else {
    std::printf("%4s %4s %3s %3s %3s %3s %3s  %-16s %5s %9s %9s %5s\n", "n", "k", "t",
                "k0", "B", "D", "C", "case", "zdcl", "tc_lower", "tc_upper", "eval");
    for (const auto& r : rows)
      std::printf("%4d %4d %3d %3d %3d %3d %3d  %-16s %5d %9d %9d %5d\n", r.p.n, r.p.k,
                  r.p.t, r.p.k0, r.p.B, r.p.D, r.p.C, to_string(r.p.wcase),
                  r.cert.passed() ? 2 * r.p.n - 7 : 0, r.cert.tc_lower, r.cert.tc_upper,
                  r.cert.evaluation);
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int run_verify(const std::string& suite, int n_max, long long samples,
               std::uint64_t seed, bool force) {
  if (force)
    std::cerr << "warning: --force overrides budget guards; large n may take "
                 "very long or exhaust memory\n";
  bool ok = true;
  auto line = [&](const std::string& name, bool pass, const std::string& extra = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
    if (!extra.empty()) std::cout << "  (" << extra << ")";
    std::cout << "\n";
    ok = ok && pass;
  };

  if (suite == "lemmas" || suite == "all") {
    const auto t = verify_techlem(n_max > 0 ? n_max : 64);
    line("techlem sweep", t.passed,
         std::to_string(t.cases_checked) + " cases" +
             (t.passed ? "" : "; " + t.first_failure));
    const auto b = verify_bclem(4, 16);
    line("bclem sweep", b.passed,
         std::to_string(b.cases_checked) + " cases" +
             (b.passed ? "" : "; " + b.first_failure));
  }
  if (suite == "functionals" || suite == "all") {
    const int cap = n_max > 0 ? std::min(n_max, 20) : 20;
    long long pairs = 0;
    bool pass = true;
    for_each_valid_pair(cap, [&](int n, int k) {
      PolygonRing ring(n, k);
      ++pairs;
      pass = pass && ring.check_functional(Functional::Phi1);
      pass = pass && ring.check_functional(Functional::Phi2);
      if (ring.params().wcase == WitnessCase::BEvenDZero)
        pass = pass && ring.check_functional(Functional::Phi3);
    });
    line("functional well-definedness", pass, std::to_string(pairs) + " pairs, n <= " +
                                                  std::to_string(cap));
  }
  if (suite == "oracle" || suite == "all") {
    const int cap = n_max > 0 ? std::min(n_max, kOracleBudgetN) : kOracleBudgetN;
    bool pass = true;
    std::string detail;
    for_each_valid_pair(cap, [&](int n, int k) {
      PolygonRing ring(n, k);
      OracleModel oracle(n, k);
      const auto rep = oracle.cross_check(ring, samples > 0 ? int(samples) : 100, seed);
      if (!rep.ok && detail.empty()) detail = rep.detail;
      pass = pass && rep.ok;
    });
    line("oracle cross-check", pass, pass ? "n <= " + std::to_string(cap) : detail);
  }
  if (suite == "vanishing" || suite == "all") {
    const int cap = n_max > 0 ? std::min(n_max, kRandomBudgetN) : kRandomBudgetN;
    bool pass = true;
    long long runs = 0;
    for_each_valid_pair(cap, [&](int n, int k) {
      PolygonRing ring(n, k);
      const auto strat = n <= kExhaustiveBudgetN ? VanishStrategy::ExhaustiveMonomial
                                                 : VanishStrategy::Random;
      const auto rep = check_vanishing(ring, strat, samples > 0 ? samples : 500, seed, force);
      runs += rep.sample_count;
      pass = pass && rep.all_vanished;
    });
    line("vanishing of (2n-6)-fold products", pass,
         std::to_string(runs) + " products, n <= " + std::to_string(cap));
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int run_zdcl(int n, int k, long long samples, std::uint64_t seed,
             const std::string& strategy, bool force, const std::string& out_dir) {
  if (force)
    std::cerr << "warning: --force overrides budget guards; large n may take "
                 "very long or exhaust memory\n";
  ZdclOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.force = force;
  if (strategy == "exhaustive") opts.strategy = VanishStrategy::ExhaustiveMonomial;
  if (strategy == "random") opts.strategy = VanishStrategy::Random;

  const ZdclResult res = zdcl(n, k, opts);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::string stem =
      out_dir + "/" + "n" + std::to_string(n) + "-k" + std::to_string(k);
  const std::string cert_path = stem + "-certificate.json";
  {
    std::ofstream out(cert_path);
    out << to_json(res.certificate).dump(2) << "\n";
    if (!out) {
      std::cerr << "cannot write " << cert_path << "\n";
      return kExitUsage;
    }
  }
  std::cout << "zdcl(" << n << "," << k << ") = " << res.value << "\n";
  std::cout << "certificate: " << cert_path << "\n";
  if (res.vanishing) {
    const std::string vr_path = stem + "-vanishing.json";
    std::ofstream out(vr_path);
    out << to_json(*res.vanishing).dump(2) << "\n";
    if (!out) {
      std::cerr << "cannot write " << vr_path << "\n";
      return kExitUsage;
    }
    std::cout << "vanishing report: " << vr_path << " ("
              << res.vanishing->sample_count << " products checked)\n";
  } else {
    std::cout << "vanishing sweep skipped (n beyond dense-model budget; "
                 "the vanishing statement holds for every n)\n";
  }
  if (res.defect) {
    std::cout << "DEFECT: verification failed; see certificate/report\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int run_certificate_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return kExitUsage;
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return kExitUsage;
  }
  const ReplayResult res = replay_certificate(j);
  std::cout << (res.ok ? "PASS" : "FAIL") << "  " << res.message << "\n";
  return res.ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mod-2 cohomology of planar polygon spaces and certified "
               "topological-complexity bounds"};
  app.set_version_flag("--version", std::string("polytc ") + kEngineVersion);
  app.require_subcommand(1);

  // report
  auto* report = app.add_subcommand("report", "full report for one (n, k) or (n, r)");
  int rep_n = 0;
  std::optional<int> rep_k;
  std::optional<std::string> rep_r;
  std::string rep_format = "table";
  bool rep_alt = false;
  report->add_option("--n", rep_n, "number of sides")->required();
  report->add_option("--k", rep_k, "integer parameter k (r = n - 2k)");
  report->add_option("--r", rep_r, "long-side length as a decimal numeral");
  report->add_option("--format", rep_format, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  report->add_flag("--alt-pairing", rep_alt,
                   "also evaluate the unmodified (PHI1,PHI2) pairing in the "
                   "B_EVEN_D_ZERO case");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "one row per valid (n, k) up to --n-max");
  int sweep_max = 12;
  std::string sweep_format = "table";
  sweep->add_option("--n-max", sweep_max, "largest n")->required();
  sweep->add_option("--format", sweep_format, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  int ver_nmax = 0;
  long long ver_samples = 0;
  std::uint64_t ver_seed = kDefaultSeed;
  bool ver_force = false;
  verify->add_option("--suite", suite, "functionals|lemmas|oracle|vanishing|all")
      ->required()
      ->check(CLI::IsMember({"functionals", "lemmas", "oracle", "vanishing", "all"}));
  verify->add_option("--n-max", ver_nmax, "cap the sweep range");
  verify->add_option("--samples", ver_samples, "random samples / oracle trials");
  verify->add_option("--seed", ver_seed, "PRNG seed (default 0xC0FFEE)");
  verify->add_flag("--force", ver_force, "override budget guards");

  // zdcl
  auto* zd = app.add_subcommand("zdcl", "zero-divisors-cup-length with certificates");
  int zd_n = 0, zd_k = 0;
  long long zd_samples = 500;
  std::uint64_t zd_seed = kDefaultSeed;
  std::string zd_strategy = "auto";
  std::string zd_out = ".";
  bool zd_force = false;
  zd->add_option("--n", zd_n)->required();
  zd->add_option("--k", zd_k)->required();
  zd->add_option("--samples", zd_samples, "random samples (default 500)");
  zd->add_option("--seed", zd_seed, "PRNG seed (default 0xC0FFEE)");
  zd->add_option("--strategy", zd_strategy, "auto|exhaustive|random")
      ->check(CLI::IsMember({"auto", "exhaustive", "random"}));
  zd->add_option("--out", zd_out, "output directory for certificate files");
  zd->add_flag("--force", zd_force, "override budget guards");

  // certificate verify
  auto* cert = app.add_subcommand("certificate", "certificate file operations");
  auto* cert_verify = cert->add_subcommand("verify", "replay a certificate file");
  std::string cert_path;
  cert_verify->add_option("file", cert_path, "certificate JSON file")->required();
  cert->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*report) return run_report(rep_n, rep_k, rep_r, rep_format, rep_alt);
    if (*sweep) return run_sweep(sweep_max, sweep_format);
    if (*verify) return run_verify(suite, ver_nmax, ver_samples, ver_seed, ver_force);
    if (*zd) return run_zdcl(zd_n, zd_k, zd_samples, zd_seed, zd_strategy, zd_force, zd_out);
    if (*cert_verify) return run_certificate_verify(cert_path);
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
