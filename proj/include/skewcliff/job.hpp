#pragma once

// JSON job documents and their reports. A job names a task, a field, one
// algebra source and task options; running it yields a prose report, a
// deterministic JSON report and an exit status.

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "skewcliff/cicheck.hpp"
#include "skewcliff/families.hpp"
#include "skewcliff/geometry.hpp"
#include "skewcliff/gsca.hpp"
#include "skewcliff/parse.hpp"
#include "skewcliff/search.hpp"

namespace skewcliff::job {

using Json = nlohmann::ordered_json;

inline constexpr int kExitPositive = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataError = 65;
inline constexpr int kExitNoInput = 66;

enum class Task { Certify, Hilbert, Points, Lines, Curve, Ci, Family, Search };

inline std::string_view to_string(Task t) {
  switch (t) {
    case Task::Certify: return "certify";
    case Task::Hilbert: return "hilbert";
    case Task::Points: return "points";
    case Task::Lines: return "lines";
    case Task::Curve: return "curve";
    case Task::Ci: return "ci";
    case Task::Family: return "family";
    case Task::Search: return "search";
  }
  return "?";
}

inline Task parse_task(std::string_view s) {
  for (auto t : {Task::Certify, Task::Hilbert, Task::Points, Task::Lines, Task::Curve, Task::Ci, Task::Family,
                 Task::Search})
    if (to_string(t) == s) return t;
  throw Error(ErrorKind::ParseError, "task: unknown task '" + std::string(s) + "'");
}

struct AlgebraSource {
  enum class Kind { Family, Gsca, Relations, Skew };
  Kind kind = Kind::Family;
  FamilySpec family;
  GscaData gsca;
  int generators = 0;
  std::vector<std::string> relations;
  std::vector<Rational> skew_mu_upper;  // S(mu) on `generators` letters
};

struct JobOptions {
  std::optional<std::size_t> degree;
  std::vector<std::uint32_t> primes;
  std::uint64_t budget = 10'000'000;
  int threads = 1;
  std::optional<std::uint64_t> seed;
  std::optional<int> tries;
  SearchStrategy strategy = SearchStrategy::SplitGca;
  int rank = 2;
  std::vector<std::string> elements;
};

struct JobDocument {
  Task task = Task::Certify;
  FieldSpec field = FieldSpec::rationals();
  std::optional<AlgebraSource> algebra;
  JobOptions options;
};

struct Report {
  Json data;
  std::string prose;
  int exit_code = kExitPositive;
};

// ---------------------------------------------------------------- parsing

namespace detail {

[[noreturn]] inline void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::ParseError, path + ": " + msg);
}

inline Rational parse_scalar(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      mpz_class num(s.substr(0, slash));
      mpz_class den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
      if (den == 0) bad(path, "zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      bad(path, "'" + s + "' is not an integer or a/b rational");
    }
  }
  bad(path, "expected an exact scalar (integer or \"a/b\" string), got " + j.dump());
}

inline std::vector<Rational> parse_scalar_list(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_scalar(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<Rational> parse_square(const Json& j, const std::string& path, int& n) {
  if (!j.is_array()) bad(path, "expected a square matrix (array of rows)");
  if (n == 0) n = static_cast<int>(j.size());
  if (j.size() != static_cast<std::size_t>(n)) bad(path, "expected " + std::to_string(n) + " rows");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto row = parse_scalar_list(j[i], path + "[" + std::to_string(i) + "]");
    if (row.size() != static_cast<std::size_t>(n)) bad(path + "[" + std::to_string(i) + "]", "expected " + std::to_string(n) + " entries");
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

template <class T>
T get_uint(const Json& j, const std::string& path, std::uint64_t max = UINT64_MAX) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    bad(path, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v > max) bad(path, "value " + std::to_string(v) + " too large");
  return static_cast<T>(v);
}

inline void check_keys(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) bad(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok |= a == key;
    if (!ok) bad(path, "unknown key '" + key + "'");
  }
}

inline FieldSpec parse_field(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "rationals" || s == "Q") return FieldSpec::rationals();
    bad("field", "expected \"rationals\" or {\"prime\": p}, got \"" + s + "\"");
  }
  if (j.is_object()) {
    check_keys(j, "field", {"prime"});
    if (!j.contains("prime")) bad("field", "missing 'prime'");
    const auto p = get_uint<std::uint32_t>(j["prime"], "field.prime", UINT32_MAX);
    if (!is_prime(p)) throw Error(ErrorKind::CompositeModulus, "field.prime: " + std::to_string(p) + " is not prime");
    return FieldSpec::prime(p);
  }
  bad("field", "expected \"rationals\" or {\"prime\": p}");
}

inline AlgebraSource parse_algebra(const Json& j) {
  check_keys(j, "algebra", {"family", "params", "n", "gsca", "relations", "generators", "skew"});
  const int sources = j.contains("family") + j.contains("gsca") + j.contains("relations") + j.contains("skew");
  if (sources != 1)
    throw Error(ErrorKind::ValidationError, "algebra: exactly one of family, gsca, relations, skew is required");
  AlgebraSource a;
  if (j.contains("family")) {
    a.kind = AlgebraSource::Kind::Family;
    if (!j["family"].is_string()) bad("algebra.family", "expected a family name");
    try {
      a.family.name = parse_family_name(j["family"].get<std::string>());
    } catch (const Error& e) {
      bad("algebra.family", e.what());
    }
    if (j.contains("params")) a.family.params = parse_scalar_list(j["params"], "algebra.params");
    if (j.contains("n")) a.family.n = get_uint<int>(j["n"], "algebra.n", 16);
  } else if (j.contains("gsca")) {
    a.kind = AlgebraSource::Kind::Gsca;
    const Json& g = j["gsca"];
    check_keys(g, "algebra.gsca", {"mu", "mu_upper", "matrices"});
    if (!g.contains("matrices") || !g["matrices"].is_array()) bad("algebra.gsca.matrices", "expected a list of matrices");
    int n = 0;
    if (g.contains("mu") == g.contains("mu_upper")) bad("algebra.gsca", "give exactly one of mu and mu_upper");
    if (g.contains("mu")) a.gsca.mu_full = parse_square(g["mu"], "algebra.gsca.mu", n);
    for (std::size_t i = 0; i < g["matrices"].size(); ++i)
      a.gsca.mats.push_back(parse_square(g["matrices"][i], "algebra.gsca.matrices[" + std::to_string(i) + "]", n));
    if (g.contains("mu_upper")) {
      a.gsca.mu_upper = parse_scalar_list(g["mu_upper"], "algebra.gsca.mu_upper");
      if (n == 0) bad("algebra.gsca", "cannot infer n");
      if (a.gsca.mu_upper.size() != static_cast<std::size_t>(n * (n - 1) / 2))
        bad("algebra.gsca.mu_upper", "expected " + std::to_string(n * (n - 1) / 2) + " entries");
    }
    if (n == 0) bad("algebra.gsca", "empty data");
    a.gsca.n = n;
  } else if (j.contains("relations")) {
    a.kind = AlgebraSource::Kind::Relations;
    if (!j.contains("generators")) bad("algebra.generators", "required with relations");
    a.generators = get_uint<int>(j["generators"], "algebra.generators", 255);
    if (!j["relations"].is_array()) bad("algebra.relations", "expected a list of strings");
    for (std::size_t i = 0; i < j["relations"].size(); ++i) {
      if (!j["relations"][i].is_string()) bad("algebra.relations[" + std::to_string(i) + "]", "expected a string");
      a.relations.push_back(j["relations"][i].get<std::string>());
    }
  } else {
    a.kind = AlgebraSource::Kind::Skew;
    const Json& s = j["skew"];
    check_keys(s, "algebra.skew", {"mu_upper", "generators"});
    if (!s.contains("generators")) bad("algebra.skew.generators", "required");
    a.generators = get_uint<int>(s["generators"], "algebra.skew.generators", 16);
    a.skew_mu_upper = s.contains("mu_upper") ? parse_scalar_list(s["mu_upper"], "algebra.skew.mu_upper")
                                             : std::vector<Rational>(a.generators * (a.generators - 1) / 2, Rational(1));
  }
  return a;
}

inline JobOptions parse_options(const Json& j) {
  check_keys(j, "options", {"degree", "primes", "budget", "threads", "seed", "tries", "strategy", "rank", "elements"});
  JobOptions o;
  if (j.contains("degree")) o.degree = get_uint<std::size_t>(j["degree"], "options.degree", 64);
  if (j.contains("primes")) {
    if (!j["primes"].is_array()) bad("options.primes", "expected a list of primes");
    for (std::size_t i = 0; i < j["primes"].size(); ++i) {
      const auto path = "options.primes[" + std::to_string(i) + "]";
      const auto p = get_uint<std::uint32_t>(j["primes"][i], path, UINT32_MAX);
      if (!is_prime(p)) throw Error(ErrorKind::CompositeModulus, path + ": " + std::to_string(p) + " is not prime");
      o.primes.push_back(p);
    }
  }
  if (j.contains("budget")) o.budget = get_uint<std::uint64_t>(j["budget"], "options.budget");
  if (j.contains("threads")) o.threads = std::max(1, get_uint<int>(j["threads"], "options.threads", 256));
  if (j.contains("seed")) o.seed = get_uint<std::uint64_t>(j["seed"], "options.seed");
  if (j.contains("tries")) o.tries = get_uint<int>(j["tries"], "options.tries", 10'000'000);
  if (j.contains("strategy")) {
    if (!j["strategy"].is_string()) bad("options.strategy", "expected a string");
    try {
      o.strategy = parse_search_strategy(j["strategy"].get<std::string>());
    } catch (const Error& e) {
      bad("options.strategy", e.what());
    }
  }
  if (j.contains("rank")) o.rank = get_uint<int>(j["rank"], "options.rank", 4);
  if (j.contains("elements")) {
    if (!j["elements"].is_array()) bad("options.elements", "expected a list of strings");
    for (std::size_t i = 0; i < j["elements"].size(); ++i) {
      if (!j["elements"][i].is_string()) bad("options.elements[" + std::to_string(i) + "]", "expected a string");
      o.elements.push_back(j["elements"][i].get<std::string>());
    }
  }
  return o;
}

}  // namespace detail

/// Structural parse and validation of a job document.
inline JobDocument parse_job(const Json& j) {
  detail::check_keys(j, "document", {"task", "field", "algebra", "options"});
  JobDocument doc;
  if (!j.contains("task") || !j["task"].is_string()) detail::bad("task", "required string");
  doc.task = parse_task(j["task"].get<std::string>());
  if (j.contains("field")) doc.field = detail::parse_field(j["field"]);
  if (j.contains("algebra")) doc.algebra = detail::parse_algebra(j["algebra"]);
  if (j.contains("options")) doc.options = detail::parse_options(j["options"]);
  if (doc.task != Task::Search && !doc.algebra)
    throw Error(ErrorKind::ValidationError, "algebra: required for task " + std::string(to_string(doc.task)));
  if (doc.task == Task::Search && (!doc.options.seed || !doc.options.tries))
    throw Error(ErrorKind::ValidationError, "options: search needs both seed and tries");
  if (doc.field.kind == FieldSpec::Kind::PrimeField && doc.field.p == 2)
    throw Error(ErrorKind::CharTwo, "field: characteristic 2 is not supported");
  return doc;
}

inline JobDocument parse_job(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("document: ") + e.what());
  }
  return parse_job(j);
}

// ---------------------------------------------------------------- running

namespace detail {

template <class F>
MuMatrix<F> skew_mu(const AlgebraSource& a, const F& k);

template <class F>
Presentation<F> presentation_of(const AlgebraSource& a, const F& k) {
  switch (a.kind) {
    case AlgebraSource::Kind::Family: {
      FamilySpec s = a.family;
      s.field = k.spec();
      return build_family(s, k).presentation;
    }
    case AlgebraSource::Kind::Gsca: {
      auto inp = a.gsca.lift(k);
      validate(inp);
      return eliminate_y(inp);
    }
    case AlgebraSource::Kind::Relations: {
      std::vector<NcPoly<F>> rels;
      for (const auto& r : a.relations) rels.push_back(relation_parse(k, r, a.generators));
      return Presentation<F>(k, a.generators, std::move(rels));
    }
    case AlgebraSource::Kind::Skew: {
      auto mu = skew_mu(a, k);
      std::vector<NcPoly<F>> rels;
      for (int i = 0; i < a.generators; ++i)
        for (int j = i + 1; j < a.generators; ++j) {
          NcPoly<F> f(a.generators);
          f.add_term(k, Word{j, i}, k.one());
          f.add_term(k, Word{i, j}, k.neg(mu(i, j)));
          rels.push_back(std::move(f));
        }
      return Presentation<F>(k, a.generators, std::move(rels));
    }
  }
  throw Error(ErrorKind::ValidationError, "unknown algebra source");
}

template <class F>
MuMatrix<F> skew_mu(const AlgebraSource& a, const F& k) {
  std::vector<Value<F>> up;
  for (const auto& v : a.skew_mu_upper) up.push_back(k.from_rational(v));
  return MuMatrix<F>::from_upper(k, a.generators, up);
}

template <class F>
std::optional<GscaInput<F>> gsca_of(const AlgebraSource& a, const F& k) {
  if (a.kind == AlgebraSource::Kind::Gsca) return a.gsca.lift(k);
  if (a.kind == AlgebraSource::Kind::Family) {
    FamilySpec s = a.family;
    s.field = k.spec();
    return build_family(s, k).gsca;
  }
  return std::nullopt;
}

inline std::vector<std::uint32_t> primes_for(const JobDocument& doc, std::string_view what) {
  if (!doc.options.primes.empty()) return doc.options.primes;
  if (doc.field.kind == FieldSpec::Kind::PrimeField) return {doc.field.p};
  throw Error(ErrorKind::ValidationError,
              "options.primes: " + std::string(what) + " needs a prime field or a list of primes");
}

inline std::size_t degree_or(const JobDocument& doc, std::size_t fallback) { return doc.options.degree.value_or(fallback); }

template <class F>
Json point_json(const F& k, const ProjPoint<F>& p) {
  return p.to_string(k);
}

inline Json hilbert_json(const std::vector<std::size_t>& h) { return Json(h); }

inline std::string join(const std::vector<std::size_t>& h) {
  std::string s;
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? ", " : "") + std::to_string(h[i]);
  return "[" + s + "]";
}

class Prose {
 public:
  template <class T>
  Prose& operator<<(const T& v) {
    out_ << v;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

template <class F>
Report run_certify(const JobDocument& doc, const F& k) {
  auto inp = gsca_of(*doc.algebra, k);
  if (!inp) throw Error(ErrorKind::ValidationError, "algebra: certify needs GSCA data (a gsca source or a GSCA family)");
  const std::size_t D = degree_or(doc, 8);
  CertifyOptions opt;
  opt.bpf.point_budget = doc.options.budget;
  auto cert = certify_regular(*inp, D, opt);
  Report r;
  Json& j = r.data;
  j["checks"] = {{"mu", cert.mu_ok},
                 {"mu_symmetric", cert.musym_ok},
                 {"normalizing", cert.normalizing},
                 {"base_point_free", std::string(to_string(cert.bpf.kind))},
                 {"eliminated", cert.eliminated},
                 {"hilbert_match", cert.hilbert_match}};
  j["conclusion"] = std::string(to_string(cert.conclusion));
  Json quads = Json::array();
  for (const auto& q : cert.quadrics) quads.push_back(q.to_string(k));
  j["quadrics"] = quads;
  if (cert.normalizing_order) {
    Json ord = Json::array();
    for (int i : *cert.normalizing_order) ord.push_back(i + 1);
    j["normalizing_order"] = ord;
  } else {
    j["normalizing_order"] = nullptr;
  }
  Json seq = Json::array();
  for (const auto& q : cert.normalizing_sequence) seq.push_back(q.to_string(k));
  j["normalizing_sequence"] = seq;
  Json bp;
  bp["verdict"] = std::string(to_string(cert.bpf.kind));
  bp["witness"] = cert.bpf.witness ? Json(cert.bpf.witness->to_string(k)) : Json(nullptr);
  bp["free_degree"] = cert.bpf.kind == BpfKind::Free ? Json(cert.bpf.free_degree) : Json(nullptr);
  bp["quotient_hilbert"] = hilbert_json(cert.bpf.hilbert);
  j["base_points"] = bp;
  j["hilbert"] = hilbert_json(cert.hilbert);
  j["notes"] = cert.notes;

  Prose p;
  p << "Regularity certificate (degree <= " << D << ")\n";
  p << "  mu valid: " << (cert.mu_ok ? "yes" : "no") << ", matrices mu-symmetric: " << (cert.musym_ok ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < cert.quadrics.size(); ++i) p << "  q" << i + 1 << " = " << cert.quadrics[i].to_string(k) << "\n";
  p << "  normalizing: " << (cert.normalizing ? "yes" : "no");
  if (cert.normalizing_order) {
    p << " (order";
    for (int i : *cert.normalizing_order) p << " q" << i + 1;
    p << ")";
  }
  p << "\n  base-point free: " << to_string(cert.bpf.kind);
  if (cert.bpf.witness) p << ", common zero " << cert.bpf.witness->to_string(k);
  if (cert.bpf.kind == BpfKind::Free) p << ", quotient vanishes from degree " << cert.bpf.free_degree;
  p << "\n";
  if (cert.eliminated) p << "  Hilbert function " << join(cert.hilbert) << (cert.hilbert_match ? " matches" : " differs from") << " 1/(1-t)^" << inp->n() << "\n";
  for (const auto& n : cert.notes) p << "  note: " << n << "\n";
  p << "Conclusion: " << to_string(cert.conclusion) << "\n";
  r.prose = p.str();
  r.exit_code = cert.conclusion == Conclusion::RegularUpToD ? kExitPositive
                : cert.conclusion == Conclusion::NotRegular ? kExitNegative
                                                            : kExitInconclusive;
  return r;
}

template <class F>
Report run_hilbert(const JobDocument& doc, const F& k) {
  auto pres = presentation_of(*doc.algebra, k);
  const std::size_t D = degree_or(doc, 8);
  auto h = hilbert_function(pres, D);
  auto poly = polynomial_ring_hilbert(pres.num_generators(), D);
  Report r;
  r.data["generators"] = pres.num_generators();
  r.data["relations"] = pres.relations().size();
  r.data["hilbert"] = hilbert_json(h);
  r.data["matches_polynomial_ring"] = h == poly;
  std::optional<std::size_t> first_diff;
  for (std::size_t d = 0; d <= D && !first_diff; ++d)
    if (h[d] != poly[d]) first_diff = d;
  r.data["first_deviation_degree"] = first_diff ? Json(*first_diff) : Json(nullptr);
  Prose p;
  p << "Hilbert function through degree " << D << ": " << join(h) << "\n";
  p << "  polynomial ring in " << pres.num_generators() << " variables: " << join(poly) << "\n";
  if (first_diff) p << "  first deviation in degree " << *first_diff << "\n";
  r.prose = p.str();
  return r;
}

inline Report run_points(const JobDocument& doc) {
  Report r;
  Prose p;
  Json runs = Json::array();
  for (std::uint32_t q : primes_for(doc, "points")) {
    PrimeField k(q);
    auto bs = bilinearize(presentation_of(*doc.algebra, k));
    EnumerationOptions opt{doc.options.budget, doc.options.threads};
    Json run;
    run["prime"] = q;
    run["point_budget"] = doc.options.budget;
    try {
      auto z = enumerate_Z(bs, opt);
      std::set<ProjPoint<PrimeField>> firsts;
      Json pairs = Json::array();
      for (const auto& [a, b] : z.pairs) {
        pairs.push_back({a.to_string(k), b.to_string(k)});
        firsts.insert(a);
      }
      auto lines = rational_lines_in(k, firsts);
      run["points_visited"] = z.points_visited;
      run["pair_count"] = z.pairs.size();
      run["is_graph"] = graph_structure(z).is_graph;
      run["rational_lines"] = lines.size();
      run["pairs"] = pairs;
      p << "Z over F_" << q << ": " << z.pairs.size() << " rational pairs (" << z.points_visited
        << " points of P^" << bs.n - 1 << " scanned)";
      if (graph_structure(z).is_graph) p << ", graph of a bijection";
      if (!lines.empty()) p << ", first projection contains " << lines.size() << " rational line(s), so Z is infinite";
      p << "\n";
      for (const auto& [a, b] : z.pairs) p << "  " << a.to_string(k) << "  " << b.to_string(k) << "\n";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      run["inconclusive"] = e.what();
      r.exit_code = kExitInconclusive;
      p << "Z over F_" << q << ": inconclusive, " << e.what() << "\n";
    }
    runs.push_back(run);
  }
  r.data["runs"] = runs;
  r.prose = p.str();
  return r;
}

inline Report run_lines(const JobDocument& doc) {
  auto primes = primes_for(doc, "lines");
  if (primes.size() > 2) throw Error(ErrorKind::ValidationError, "options.primes: lines takes one or two primes");
  Report r;
  Prose p;
  Json runs = Json::array();
  std::vector<std::uint64_t> counts;
  for (std::uint32_t q : primes) {
    PrimeField k(q);
    auto delta = relation_span_matrices(presentation_of(*doc.algebra, k));
    EnumerationOptions opt{doc.options.budget, doc.options.threads};
    Json run;
    run["prime"] = q;
    run["point_budget"] = doc.options.budget;
    try {
      auto rc = rank_leq_count(delta, doc.options.rank, k, opt);
      run["rank_at_most"] = doc.options.rank;
      run["count"] = rc.count;
      run["points_visited"] = rc.points_visited;
      counts.push_back(rc.count);
      p << "F_" << q << ": " << rc.count << " points of P^5 with rank <= " << doc.options.rank << " (" << rc.points_visited
        << " scanned)\n";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      run["inconclusive"] = e.what();
      r.exit_code = kExitInconclusive;
      p << "F_" << q << ": inconclusive, " << e.what() << "\n";
    }
    runs.push_back(run);
  }
  r.data["runs"] = runs;
  if (counts.size() == 2) {
    if (primes[0] >= primes[1]) throw Error(ErrorKind::BadParams, "options.primes: give the smaller prime first");
    const long est = dimension_estimate(counts[0], primes[0], counts[1], primes[1]);
    r.data["dimension_estimate"] = est;
    p << "Dimension estimate: " << est << "\n";
  } else {
    r.data["dimension_estimate"] = nullptr;
  }
  r.prose = p.str();
  return r;
}

inline Report run_curve(const JobDocument& doc) {
  Report r;
  Prose p;
  std::optional<FamilyExpectation> expect;
  if (doc.algebra->kind == AlgebraSource::Kind::Family) {
    FamilySpec s = doc.algebra->family;
    expect = with_field(doc.field, [&](const auto& k) {
      s.field = k.spec();
      return build_family(s, k).expect;
    });
  }
  with_field(doc.field, [&](const auto& k) {
    auto det = point_scheme_det(bilinearize(presentation_of(*doc.algebra, k)));
    r.data["cubic"] = det.to_string(k);
    p << "det M(p) over " << doc.field.name() << ": " << det.to_string(k) << "\n";
  });
  Json runs = Json::array();
  bool mismatch = false;
  for (std::uint32_t q : primes_for(doc, "curve")) {
    PrimeField k(q);
    FamilyExpectation e;
    if (doc.algebra->kind == AlgebraSource::Kind::Family) {
      FamilySpec s = doc.algebra->family;
      s.field = k.spec();
      e = build_family(s, k).expect;
    }
    auto rep = classify_curve(point_scheme_det(bilinearize(presentation_of(*doc.algebra, k))), k);
    Json run;
    run["prime"] = q;
    run["cubic"] = rep.cubic.to_string(k);
    Json sing = Json::array();
    for (std::size_t i = 0; i < rep.singular.size(); ++i)
      sing.push_back({{"point", rep.singular[i].to_string(k)}, {"kind", std::string(to_string(rep.kinds[i]))}});
    run["singular_points"] = sing;
    run["linear_component"] = rep.linear_component ? Json(*rep.linear_component) : Json(nullptr);
    run["type"] = std::string(to_string(rep.type));
    if (e.curve) {
      run["expected_type"] = std::string(to_string(*e.curve));
      mismatch |= *e.curve != rep.type;
    }
    p << "F_" << q << ": " << rep.cubic.to_string(k) << "\n";
    p << "  " << rep.singular.size() << " singular rational point(s)";
    for (std::size_t i = 0; i < rep.singular.size(); ++i) p << (i ? ", " : ": ") << rep.singular[i].to_string(k) << " " << to_string(rep.kinds[i]);
    p << "\n  type: " << to_string(rep.type);
    if (e.curve) p << " (expected " << to_string(*e.curve) << ")";
    p << "\n";
    runs.push_back(run);
  }
  r.data["runs"] = runs;
  if (expect && !expect->note.empty()) p << "family note: " << expect->note << "\n";
  r.exit_code = mismatch ? kExitNegative : kExitPositive;
  r.prose = p.str();
  return r;
}

template <class F>
Report run_ci(const JobDocument& doc, const F& k) {
  const auto& a = *doc.algebra;
  const std::size_t D = degree_or(doc, 10);
  CiOptions opt;
  CiReport rep;
  std::vector<std::string> shown;
  std::optional<std::string> undefined;
  auto gsca = gsca_of(a, k);
  if (a.kind == AlgebraSource::Kind::Skew || gsca) {
    MuMatrix<F> mu = a.kind == AlgebraSource::Kind::Skew ? skew_mu(a, k) : gsca->mu;
    std::vector<SPoly<F>> fs;
    if (!doc.options.elements.empty()) {
      for (const auto& s : doc.options.elements) fs.push_back(nf(mu, relation_parse(k, s, mu.size(), 'z')));
    } else if (gsca) {
      auto cert = certify_regular(*gsca, std::max<std::size_t>(3, std::min<std::size_t>(D, 6)));
      if (!cert.normalizing) {
        undefined = "no normalizing basis of the quadric system was found";
      } else {
        fs = cert.normalizing_sequence;
      }
    } else {
      throw Error(ErrorKind::ValidationError, "options.elements: required for a skew polynomial ring");
    }
    for (const auto& f : fs) shown.push_back(f.to_string(k));
    if (!undefined) {
      try {
        rep = ci_report(mu, fs, D, opt);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotNormalizing) throw;
        undefined = "the sequence is not normalizing";
      }
    }
  } else {
    if (doc.options.elements.empty()) throw Error(ErrorKind::ValidationError, "options.elements: required");
    auto pres = presentation_of(a, k);
    std::vector<NcPoly<F>> fs;
    for (const auto& s : doc.options.elements) {
      fs.push_back(relation_parse(k, s, pres.num_generators()));
      shown.push_back(fs.back().to_string(k));
    }
    try {
      rep = ci_report(pres, fs, D, opt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotNormalizing) throw;
      undefined = "the sequence is not normalizing";
    }
  }
  Report r;
  r.data["truncation_degree"] = D;
  r.data["elements"] = shown;
  Prose p;
  p << "Complete-intersection report (degree <= " << D << ")\n";
  for (std::size_t i = 0; i < shown.size(); ++i) p << "  f" << i + 1 << " = " << shown[i] << "\n";
  if (undefined) {
    r.data["inconclusive"] = *undefined;
    p << "Inconclusive: " << *undefined << "\n";
    r.prose = p.str();
    r.exit_code = kExitInconclusive;
    return r;
  }
  r.data["regular_sequence"] = std::string(to_string(rep.regular_sequence));
  r.data["finite_dimensional"] = std::string(to_string(rep.finite_dim));
  r.data["gk_drops"] = std::string(to_string(rep.gk_drops_ok));
  Json stages = Json::array();
  for (const auto& st : rep.gk_drops)
    stages.push_back({{"k", st.k},
                      {"estimate", st.estimate ? Json(*st.estimate) : Json(nullptr)},
                      {"expected", st.expected},
                      {"hilbert", hilbert_json(st.hilbert)}});
  r.data["stages"] = stages;
  r.data["consistent"] = rep.consistent;
  r.data["notes"] = rep.notes;
  p << "  (a) regular sequence: " << to_string(rep.regular_sequence) << "\n";
  p << "  (b) finite-dimensional quotient: " << to_string(rep.finite_dim) << ", Hilbert function " << join(rep.quotient_hilbert) << "\n";
  p << "  (c) GK-dimension drops by one per element: " << to_string(rep.gk_drops_ok) << "\n";
  for (const auto& st : rep.gk_drops)
    p << "      k=" << st.k << ": estimate " << (st.estimate ? std::to_string(*st.estimate) : std::string("none")) << ", expected " << st.expected << "\n";
  p << "  consistent: " << (rep.consistent ? "yes" : "NO") << "\n";
  for (const auto& n : rep.notes) p << "  note: " << n << "\n";
  r.prose = p.str();
  const bool all_yes = rep.regular_sequence == Tri::Yes && rep.finite_dim == Tri::Yes && rep.gk_drops_ok == Tri::Yes;
  const bool all_no = rep.regular_sequence == Tri::No && rep.finite_dim == Tri::No && rep.gk_drops_ok == Tri::No;
  r.exit_code = !rep.consistent ? kExitInconclusive : all_yes ? kExitPositive : all_no ? kExitNegative : kExitInconclusive;
  return r;
}

template <class F>
Report run_family(const JobDocument& doc, const F& k) {
  const auto& a = *doc.algebra;
  if (a.kind != AlgebraSource::Kind::Family) throw Error(ErrorKind::ValidationError, "algebra: family task needs a family source");
  FamilySpec s = a.family;
  s.field = k.spec();
  auto b = build_family(s, k);
  Report r;
  Prose p;
  r.data["family"] = std::string(to_string(s.name));
  Json params = Json::array();
  for (const auto& v : s.params) params.push_back(rational_to_string(v));
  r.data["params"] = params;
  Json rels = Json::array();
  for (const auto& f : b.presentation.relations()) rels.push_back(f.to_string(k));
  r.data["generators"] = b.presentation.num_generators();
  r.data["relations"] = rels;
  p << to_string(s.name) << " over " << k.spec().name() << " on " << b.presentation.num_generators() << " generators\n";
  for (const auto& f : b.presentation.relations()) p << "  " << f.to_string(k) << " = 0\n";
  if (b.gsca) {
    Json mats = Json::array();
    for (const auto& m : b.gsca->mats) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t jj = 0; jj < m.cols(); ++jj) row.push_back(k.to_string(m(i, jj)));
        rows.push_back(row);
      }
      mats.push_back(rows);
    }
    r.data["gsca_matrices"] = mats;
    p << "  GSCA data with " << b.gsca->mats.size() << " matrices\n";
  }
  Json ex;
  ex["certify"] = b.expect.certify ? Json(std::string(to_string(*b.expect.certify))) : Json(nullptr);
  ex["base_point"] = b.expect.base_point ? Json(*b.expect.base_point) : Json(nullptr);
  ex["curve"] = b.expect.curve ? Json(std::string(to_string(*b.expect.curve))) : Json(nullptr);
  ex["singularity"] = b.expect.singularity ? Json(std::string(to_string(*b.expect.singularity))) : Json(nullptr);
  ex["note"] = b.expect.note;
  r.data["expect"] = ex;
  p << "  note: " << b.expect.note << "\n";
  r.prose = p.str();
  return r;
}

inline Report run_search(const JobDocument& doc) {
  SearchOptions opt;
  opt.seed = *doc.options.seed;
  opt.tries = *doc.options.tries;
  opt.strategy = doc.options.strategy;
  opt.prime = primes_for(doc, "search").front();
  opt.degree = degree_or(doc, 5);
  opt.enumeration = {doc.options.budget, doc.options.threads};
  auto res = search_gsca(opt);
  PrimeField k(opt.prime);
  Report r;
  Prose p;
  r.data["seed"] = opt.seed;
  r.data["tries"] = opt.tries;
  r.data["strategy"] = std::string(to_string(opt.strategy));
  r.data["prime"] = opt.prime;
  r.data["truncation_degree"] = opt.degree;
  r.data["point_budget"] = doc.options.budget;
  r.data["points_visited"] = res.points_visited;
  r.data["outcomes"] = res.outcomes;
  Json hits = Json::array();
  p << "Search (" << to_string(opt.strategy) << ", seed " << opt.seed << ", " << opt.tries << " tries over F_" << opt.prime << ")\n";
  for (const auto& [name, c] : res.outcomes) p << "  " << name << ": " << c << "\n";
  for (const auto& h : res.hits) {
    std::set<ProjPoint<PrimeField>> firsts;
    auto inp = h.data.lift(k);
    auto z = enumerate_Z(bilinearize(eliminate_y(inp)), opt.enumeration);
    for (const auto& pr : z.pairs) firsts.insert(pr.first);
    const auto lines = rational_lines_in(k, firsts).size();
    Json mats = Json::array();
    for (const auto& m : h.data.mats) {
      Json rows = Json::array();
      for (int i = 0; i < h.data.n; ++i) {
        Json row = Json::array();
        for (int jj = 0; jj < h.data.n; ++jj) row.push_back(rational_to_string(m[i * h.data.n + jj]));
        rows.push_back(row);
      }
      mats.push_back(rows);
    }
    Json mu = Json::array();
    for (const auto& v : h.data.mu_upper) mu.push_back(rational_to_string(v));
    hits.push_back({{"trial", h.trial},
                    {"z_pairs", h.z_pairs ? Json(*h.z_pairs) : Json(nullptr)},
                    {"rational_lines", lines},
                    {"gsca", {{"mu_upper", mu}, {"matrices", mats}}}});
    p << "  trial " << h.trial << ": RegularUpToD, " << (h.z_pairs ? std::to_string(*h.z_pairs) : std::string("?"))
      << " rational pairs in Z" << (lines ? " (contains a rational line)" : "") << "\n";
  }
  r.data["hits"] = hits;
  r.prose = p.str();
  r.exit_code = res.hits.empty() ? kExitNegative : kExitPositive;
  return r;
}

}  // namespace detail

/// Runs a validated job. Library errors propagate; the caller maps them to
/// exit statuses with exit_code_for.
inline Report run(const JobDocument& doc) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  switch (doc.task) {
    case Task::Certify: r = with_field(doc.field, [&](const auto& k) { return detail::run_certify(doc, k); }); break;
    case Task::Hilbert: r = with_field(doc.field, [&](const auto& k) { return detail::run_hilbert(doc, k); }); break;
    case Task::Points: r = detail::run_points(doc); break;
    case Task::Lines: r = detail::run_lines(doc); break;
    case Task::Curve: r = detail::run_curve(doc); break;
    case Task::Ci: r = with_field(doc.field, [&](const auto& k) { return detail::run_ci(doc, k); }); break;
    case Task::Family: r = with_field(doc.field, [&](const auto& k) { return detail::run_family(doc, k); }); break;
    case Task::Search: r = detail::run_search(doc); break;
  }
  Json head;
  head["task"] = std::string(to_string(doc.task));
  head["field"] = doc.field.name();
  if (doc.options.degree || doc.task == Task::Certify || doc.task == Task::Hilbert)
    head["truncation_degree"] = detail::degree_or(doc, 8);
  head["exit_code"] = r.exit_code;
  for (auto& [key, value] : r.data.items()) head[key] = value;
  r.data = std::move(head);
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream t;
  t.precision(3);
  t << std::fixed << secs;
  r.prose = "[" + std::string(to_string(doc.task)) + " over " + doc.field.name() + "]\n" + r.prose + "elapsed " + t.str() + " s\n";
  return r;
}

inline int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::BudgetExceeded ? kExitInconclusive : kExitDataError;
}

}  // namespace skewcliff::job
