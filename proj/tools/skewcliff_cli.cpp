// skewcliff: run a JSON job document and print its report.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skewcliff/job.hpp"

namespace {

using skewcliff::job::Json;

struct Overrides {
  std::string input;
  std::string field;
  std::optional<std::size_t> degree;
  std::vector<std::uint32_t> primes;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<int> tries;
  std::optional<int> threads;
  std::string strategy;
  bool emit_json = false;
};

std::optional<std::string> read_input(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_field_flag(const std::string& s) {
  if (s == "rationals" || s == "Q") return "rationals";
  try {
    std::size_t used = 0;
    const unsigned long p = std::stoul(s, &used);
    if (used == s.size()) return Json{{"prime", p}};
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--field", "expected 'rationals' or a prime, got '" + s + "'");
}

void apply(Json& doc, const std::string& task, const Overrides& o) {
  if (!doc.is_object()) throw skewcliff::Error(skewcliff::ErrorKind::ParseError, "document: expected a JSON object");
  if (doc.contains("task") && doc["task"] != task)
    throw CLI::ValidationError("document task '" + doc["task"].dump() + "' does not match subcommand '" + task + "'");
  doc["task"] = task;
  if (!o.field.empty()) doc["field"] = parse_field_flag(o.field);
  Json& opts = doc["options"];
  if (opts.is_null()) opts = Json::object();
  if (o.degree) opts["degree"] = *o.degree;
  if (!o.primes.empty()) opts["primes"] = o.primes;
  if (o.budget) opts["budget"] = *o.budget;
  if (o.seed) opts["seed"] = *o.seed;
  if (o.tries) opts["tries"] = *o.tries;
  if (o.threads) opts["threads"] = *o.threads;
  if (!o.strategy.empty()) opts["strategy"] = o.strategy;
}

int run_task(const std::string& task, const Overrides& o) {
  namespace job = skewcliff::job;
  Json doc = Json::object();
  if (task != "search" || !o.input.empty()) {
    auto text = read_input(o.input);
    if (!text) {
      std::cerr << "skewcliff: cannot read '" << o.input << "'\n";
      return job::kExitNoInput;
    }
    try {
      doc = Json::parse(*text);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << "skewcliff: ParseError: " << e.what() << "\n";
      return job::kExitDataError;
    }
  }
  try {
    apply(doc, task, o);
    const auto report = job::run(job::parse_job(doc));
    if (o.emit_json) {
      std::cerr << report.prose;
      std::cout << report.data.dump(2) << "\n";
    } else {
      std::cout << report.prose;
    }
    return report.exit_code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "skewcliff: " << e.what() << "\n";
    return job::kExitUsage;
  } catch (const skewcliff::Error& e) {
    std::cerr << "skewcliff: " << e.what() << "\n";
    return job::exit_code_for(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded skew Clifford algebras: regularity, geometry and complete intersections"};
  app.require_subcommand(1);
  Overrides o;
  std::string chosen;

  const std::vector<std::pair<std::string, std::string>> tasks = {
      {"certify", "certify regularity of GSCA data up to a degree"},
      {"hilbert", "Hilbert function of a presented algebra"},
      {"points", "rational pairs of the truncated point scheme over F_p"},
      {"lines", "rank counts of the relation span and a line-scheme dimension estimate"},
      {"curve", "point-scheme cubic, singular points and curve type"},
      {"ci", "complete-intersection criteria for a sequence of elements"},
      {"family", "build a named family member and show its relations"},
      {"search", "seeded random search for regular GSCAs"},
  };
  for (const auto& [name, help] : tasks) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "job document (JSON); '-' or absent reads standard input");
    sub->add_option("--field", o.field, "'rationals' or a prime p");
    sub->add_option("--degree", o.degree, "truncation degree D");
    sub->add_option("--prime,--primes", o.primes, "enumeration prime(s)")->delimiter(',');
    sub->add_option("--budget", o.budget, "point budget for enumeration");
    sub->add_option("--threads", o.threads, "worker cap")->check(CLI::PositiveNumber);
    sub->add_flag("--emit-json", o.emit_json, "write the JSON report to stdout and the prose report to stderr");
    auto* seed = sub->add_option("--seed", o.seed, "random seed");
    auto* tries = sub->add_option("--tries", o.tries, "number of random instances")->check(CLI::NonNegativeNumber);
    if (name == "search") {
      seed->required();
      tries->required();
      sub->add_option("--strategy", o.strategy, "split-gca or central-skew");
    }
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : skewcliff::job::kExitUsage;
  }
  return run_task(chosen, o);
}
