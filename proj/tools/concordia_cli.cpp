// concordia: command-line front end for the concordance obstruction pipeline.
//
//   concordia report <expr> [--prime P]... [--json PATH]
//   concordia dbar   <expr> [--prime P] [--json PATH]
//   concordia oracle <suite> [--seed N] [--max-order B] [--verbose]
//
// Exit codes: 0 success, 1 parse/semantic error, 2 hypothesis not met,
// 3 resource limit, 4 oracle failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "concordia/concordia.hpp"
#include "concordia/oracle_suites.hpp"

namespace {

using namespace concordia;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitResource = 3;
constexpr int kExitOracleFailure = 4;

int exit_code_for(errc code) {
  switch (code) {
    case errc::hypothesis_not_met: return kExitHypothesis;
    case errc::resource_limit: return kExitResource;
    default: return kExitParse;
  }
}

std::string piece_text(const SurgeryPiece& p) {
  std::string out = (p.sign > 0 ? "+S3_" : "-S3_") + std::to_string(p.n);
  if (p.vseq.is_zero()) return out + "(U)";
  out += "(V=";
  for (std::size_t i = 0; i < p.vseq.values().size(); ++i) {
    out += (i ? "," : "") + std::to_string(p.vseq.values()[i]);
  }
  return out + ")";
}

std::string invariants_text(const std::vector<std::int64_t>& inv) {
  if (inv.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < inv.size(); ++i) out += (i ? " + Z/" : "Z/") + std::to_string(inv[i]);
  return out;
}

void write_json(const nlohmann::ordered_json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

void print_dbar_rows(const std::vector<DbarEntry>& table) {
  for (const auto& e : table) {
    std::cout << "  " << e.element << "  " << to_fraction_string(e.value) << "\n";
  }
}

int run_report(const std::string& expr, const std::vector<std::int64_t>& primes, const std::string& json_path) {
  const auto report = build_report(expr, primes);
  if (!json_path.empty()) write_json(to_json(report), json_path);
  if (json_path == "-") return kExitOk;

  std::cout << "knot:     " << report.knot << "\n";
  std::cout << "cover:    ";
  if (report.cover.empty()) std::cout << "S3";
  for (std::size_t i = 0; i < report.cover.pieces().size(); ++i) {
    std::cout << (i ? " # " : "") << piece_text(report.cover.pieces()[i]);
  }
  std::cout << "\nH_1:      " << invariants_text(report.homology_invariants) << "\n";
  std::cout << "g_Z   >= " << report.gz_lower << "\n";
  if (report.gzc) {
    std::cout << "g_Z^c >= " << report.gzc->bound << "  (p=" << report.gzc->prime << ", p-part (Z/"
              << report.gzc->prime * report.gzc->prime << ")^" << 2 * report.gzc->half_rank
              << ", d-bar-null rank " << report.gzc->null_rank << ")\n";
  } else {
    std::cout << "g_Z^c >= 0  (no prime with a (Z/p^2)^{2n} primary part)\n";
  }
  for (const auto& b : report.gzc_by_prime) {
    if (report.gzc && b == *report.gzc) continue;
    std::cout << "         " << b.bound << " at p=" << b.prime << "\n";
  }
  for (const auto& a : report.annotations) std::cout << "note:     " << a.fact << "  [" << a.source << "]\n";
  return kExitOk;
}

int run_dbar(const std::string& expr_text, std::optional<std::int64_t> prime, const std::string& json_path) {
  const auto expr = parse(expr_text);
  const auto cover = branched_double_cover(expr);
  std::vector<std::int64_t> primes;
  if (prime) {
    primes.push_back(*prime);
  } else {
    primes = eligible_primes(cover);
  }
  nlohmann::ordered_json doc;
  doc["knot"] = print(expr);
  doc["cyclic_orders"] = cover.group().cyclic_orders();
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (auto p : primes) {
    const auto table = dbar_entries(cover, p);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& e : table) rows.push_back({{"element", e.element.coords}, {"value", to_fraction_string(e.value)}});
    tables.push_back({{"p", p}, {"dbar_table", std::move(rows)}});
    if (json_path != "-") {
      std::cout << "d-bar over elements of order " << p << " in " << cover.group() << ":\n";
      print_dbar_rows(table);
    }
  }
  doc["tables"] = std::move(tables);
  if (!json_path.empty()) write_json(doc, json_path);
  if (primes.empty() && json_path != "-") std::cout << "(empty table)\n";
  return kExitOk;
}

int run_oracle(const std::string& suite, std::uint64_t seed, std::uint64_t max_order, bool verbose) {
  const auto result = oracle::run_suite(suite, seed, max_order);
  if (verbose) {
    for (const auto& line : result.log) std::cout << "  " << line << "\n";
  }
  std::cout << result.suite << " (seed " << seed << "): " << result.trials << " trials, " << result.failures
            << " failures -> " << (result.passed() ? "pass" : "FAIL") << "\n";
  if (result.counterexample) std::cout << "counterexample: " << *result.counterexample << "\n";
  return result.passed() ? kExitOk : kExitOracleFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concordance Z-genus obstructions from 2-fold branched covers"};
  app.require_subcommand(1);

  std::string expr;
  std::vector<std::int64_t> primes;
  std::string json_path;
  auto* report = app.add_subcommand("report", "Run the full obstruction pipeline on a knot expression");
  report->add_option("expr", expr, "Knot expression, e.g. \"Kstar # Kstar\"")->required();
  report->add_option("--prime", primes, "Prime(s) to test (default: every prime meeting the hypothesis)");
  report->add_option("--json", json_path, "Write the JSON report to PATH ('-' for stdout)");

  std::optional<std::int64_t> dbar_prime;
  auto* dbar = app.add_subcommand("dbar", "Tabulate d-bar over the order-p elements of H_1");
  dbar->add_option("expr", expr, "Knot expression")->required();
  dbar->add_option("--prime", dbar_prime, "Prime p (default: every prime meeting the hypothesis)");
  dbar->add_option("--json", json_path, "Write the JSON table to PATH ('-' for stdout)");

  std::string suite;
  std::uint64_t seed = 1;
  std::uint64_t max_order = oracle_bound();
  bool verbose = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run a randomized oracle suite");
  oracle_cmd->add_option("suite", suite, "lemma-key | metabolizers | selfconc")
      ->required()
      ->check(CLI::IsMember(oracle::suite_names()));
  oracle_cmd->add_option("--seed", seed, "Random seed");
  oracle_cmd->add_option("--max-order", max_order, "Oracle bound on group orders");
  oracle_cmd->add_flag("--verbose,-v", verbose, "Print every trial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*report) return run_report(expr, primes, json_path);
    if (*dbar) return run_dbar(expr, dbar_prime, json_path);
    if (*oracle_cmd) return run_oracle(suite, seed, max_order, verbose);
  } catch (const concordia::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
