// polycert command-line driver: check approximation certificates, or
// generate test certificates by Chebyshev interpolation.

#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "polycert/polycert.hpp"

namespace {

constexpr int kExitAllCertified = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitInputError = 2;

std::optional<std::string> readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string humanLine(const std::string& path,
                      const polycert::CheckReport& rep) {
  using polycert::Verdict;
  std::string line = path + ": ";
  switch (rep.verdict) {
    case Verdict::Certified:
      line += "CERTIFIED (bound " + rep.extremal.bound.decimalStr(6) +
              " <= gamma " + rep.gamma.decimalStr(6) + ")";
      break;
    case Verdict::NotCertified:
      line += "NOT CERTIFIED (" + rep.reason + "; " + rep.detail + ")";
      break;
    case Verdict::Error:
      line += "ERROR (" + rep.reason + "; " + rep.detail + ")";
      break;
  }
  line += " [phase1 " + std::to_string(rep.timings.phase1Ms) + "ms, phase2 " +
          std::to_string(rep.timings.phase2Ms) + "ms]";
  return line;
}

int cmdCheck(const std::vector<std::string>& certPaths,
             const std::string& zerosPath, bool jsonOutput,
             const std::string& reportPath, unsigned jobs, unsigned maxDepth,
             unsigned piTerms) {
  bool inputError = false;

  std::optional<std::vector<polycert::ConfInterval>> hints;
  if (!zerosPath.empty()) {
    auto text = readFile(zerosPath);
    if (!text) {
      std::cerr << zerosPath << ": cannot read zero-hints file\n";
      return kExitInputError;
    }
    try {
      hints = polycert::parseZeroHints(*text);
    } catch (const polycert::CheckError& e) {
      std::cerr << zerosPath << ": " << e.what() << "\n";
      return kExitInputError;
    }
  }

  struct Job {
    std::string path;
    std::optional<polycert::Certificate> cert;
    polycert::CheckReport report;
  };
  std::vector<Job> jobsVec;
  for (const std::string& path : certPaths) {
    Job job;
    job.path = path;
    auto text = readFile(path);
    if (!text) {
      std::cerr << path << ": cannot read certificate file\n";
      inputError = true;
    } else {
      try {
        job.cert = polycert::parseCertificate(*text);
      } catch (const polycert::CheckError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        inputError = true;
      }
    }
    jobsVec.push_back(std::move(job));
  }

  polycert::CheckConfig cfg;
  cfg.maxBisectDepth = maxDepth;
  cfg.piTerms = piTerms;

  std::atomic<size_t> nextIndex{0};
  auto worker = [&]() {
    while (true) {
      size_t i = nextIndex.fetch_add(1);
      if (i >= jobsVec.size()) return;
      if (!jobsVec[i].cert) continue;
      try {
        jobsVec[i].report =
            polycert::checkCertificate(*jobsVec[i].cert, hints, cfg);
      } catch (const std::exception& e) {
        jobsVec[i].report.verdict = polycert::Verdict::Error;
        jobsVec[i].report.reason = "internal_error";
        jobsVec[i].report.detail = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool allCertified = true;
  nlohmann::ordered_json jreports = nlohmann::ordered_json::array();
  for (const Job& job : jobsVec) {
    if (!job.cert) {
      allCertified = false;
      continue;
    }
    if (job.report.verdict != polycert::Verdict::Certified)
      allCertified = false;
    nlohmann::ordered_json entry;
    entry["file"] = job.path;
    entry["report"] = polycert::reportToJson(job.report);
    jreports.push_back(std::move(entry));
    if (!jsonOutput) std::cout << humanLine(job.path, job.report) << "\n";
  }
  if (jsonOutput) std::cout << jreports.dump(2) << "\n";
  if (!reportPath.empty()) {
    std::ofstream out(reportPath, std::ios::binary);
    if (!out) {
      std::cerr << reportPath << ": cannot write report file\n";
      return kExitInputError;
    }
    out << jreports.dump(2) << "\n";
  }

  if (inputError) return kExitInputError;
  return allCertified ? kExitAllCertified : kExitNotCertified;
}

int cmdGen(const std::string& fnText, const std::string& loText,
           const std::string& hiText, unsigned deg, const std::string& outPath) {
  try {
    auto [expr, varName] = polycert::parseExprText(fnText);
    polycert::Rat lo = polycert::parseRational(loText);
    polycert::Rat hi = polycert::parseRational(hiText);
    if (!(lo < hi)) {
      std::cerr << "gen: requires --lo < --hi\n";
      return kExitInputError;
    }
    polycert::Interval I(lo, hi);
    polycert::ChebResult cheb = polycert::chebyApprox(*expr, I, deg, 1000);

    polycert::Certificate cert;
    cert.f = expr;
    cert.varName = varName;
    cert.p = cheb.p;
    // Double the sampled estimate to leave headroom for the phase-1 error;
    // exact fits still need a positive eps.
    cert.eps = cheb.estError.isZero() ? polycert::Rat(1, 1000000)
                                      : polycert::Rat(2) * cheb.estError;
    cert.I = I;
    cert.n = std::max(32u, 6 * deg);
    std::string text = polycert::printCertificate(cert);
    if (outPath.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(outPath, std::ios::binary);
      if (!out) {
        std::cerr << outPath << ": cannot write certificate file\n";
        return kExitInputError;
      }
      out << text;
    }
    return kExitAllCertified;
  } catch (const polycert::CheckError& e) {
    std::cerr << "gen: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "gen: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-rational certificate checker for polynomial "
               "approximations of elementary functions"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand(
      "check", "Validate certificates; exit 0 only if all are certified");
  std::vector<std::string> certPaths;
  std::string zerosPath, reportPath;
  bool jsonOutput = false;
  unsigned jobs = 1, maxDepth = 128, piTerms = 4;
  check->add_option("certs", certPaths, "certificate files")
      ->required()
      ->expected(-1);
  check->add_option("--zeros", zerosPath,
                    "zero-hints file (external root oracle)");
  check->add_flag("--json", jsonOutput, "emit JSON reports on stdout");
  check->add_option("--report", reportPath, "write JSON reports to a file");
  check->add_option("--jobs", jobs, "parallel certificate checks")
      ->check(CLI::PositiveNumber);
  check->add_option("--max-depth", maxDepth,
                    "bisection depth limit of the root oracle");
  check->add_option("--pi-terms", piTerms,
                    "Leibniz terms for the sin/cos error guard")
      ->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand(
      "gen", "Generate a test certificate by Chebyshev interpolation");
  std::string fnText, loText, hiText, outPath;
  unsigned deg = 3;
  gen->add_option("--fn", fnText, "expression, e.g. \"exp(x * 1/2)\"")
      ->required();
  gen->add_option("--lo", loText, "interval lower bound (rational)")
      ->required();
  gen->add_option("--hi", hiText, "interval upper bound (rational)")
      ->required();
  gen->add_option("--deg", deg, "approximation degree")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", outPath, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  if (check->parsed())
    return cmdCheck(certPaths, zerosPath, jsonOutput, reportPath, jobs,
                    maxDepth, piTerms);
  return cmdGen(fnText, loText, hiText, deg, outPath);
}
