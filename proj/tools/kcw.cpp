#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "experiment.hpp"
#include "kcw/compile.hpp"
#include "kcw/dimacs.hpp"
#include "kcw/errors.hpp"
#include "kcw/families.hpp"
#include "kcw/hardness.hpp"
#include "kcw/mpsdope.hpp"
#include "kcw/primes.hpp"
#include "kcw/serialize.hpp"
#include "kcw/trees.hpp"
#include "kcw/trigger.hpp"

using namespace kcw;
using Json = nlohmann::json;
namespace ser = kcw::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kCap = 3, kIntegrity = 4 };

struct Options {
  std::string family = "file";
  std::string input = "-";
  unsigned k = 1;
  unsigned h = 2;
  unsigned n = 3;
  std::string k_range = "0..2";
  std::string h_range = "1..3";
  std::size_t cap_vars = Limits{}.sat_vars;
  std::size_t cap_primes = Limits{}.primes;
  std::size_t cap_phd_vars = Limits{}.phd_vars;
  std::uint64_t cap_nodes = Limits{}.search_nodes;
  std::uint64_t cap_subsets = Limits{}.equiv_subsets;
  std::string format = "json";
  unsigned seed = 1;
  std::string out;
  std::vector<std::string> measures{"hd", "whd", "phd", "wid"};
  std::string query = "CO";
  std::string clause;
  std::string assignment;
  std::string other;
  bool verify = false;
  bool exhaustive = false;
  bool k_given = false;
  bool cap_primes_given = false;
  bool cap_subsets_given = false;

  Limits limits() const {
    Limits l;
    l.sat_vars = cap_vars;
    l.primes = cap_primes;
    l.phd_vars = cap_phd_vars;
    l.search_nodes = cap_nodes;
    l.equiv_subsets = cap_subsets;
    return l;
  }
};

struct Instance {
  ClauseSet clauses;
  Json meta = Json::object();
};

Instance load(const Options& o) {
  Instance inst;
  inst.meta["family"] = o.family;
  if (o.family == "file") {
    DimacsDocument doc;
    if (o.input == "-") {
      doc = read_dimacs(std::cin);
    } else {
      std::ifstream in(o.input);
      if (!in) throw std::runtime_error("cannot open " + o.input);
      doc = read_dimacs(in);
    }
    inst.clauses = std::move(doc.clauses);
    inst.meta["input"] = o.input;
  } else if (o.family == "extremal_doped" || o.family == "horn_chain") {
    const unsigned k = o.family == "horn_chain" ? 0 : o.k;
    TreeInstance t = extremal_doped(k, o.h);
    inst.clauses = t.doped.doped;
    if (o.family == "extremal_doped") inst.meta["k"] = k;
    inst.meta["h"] = o.h;
    inst.meta["tree"] = to_term(t.tree);
    inst.meta["doping"] = ser::encode(t.doped)["doping"];
  } else if (o.family == "g_n") {
    inst.clauses = g_n(o.n);
    inst.meta["n"] = o.n;
  }
  return inst;
}

ClauseSet load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs(in).clauses;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Indented JSON with arrays of scalars (clauses, index lists) kept on one
// line.
void pretty(std::ostream& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      out << (first ? "" : ",\n") << pad << Json(it.key()).dump() << ": ";
      pretty(out, it.value(), depth + 1);
      first = false;
    }
    out << "\n" << close << "}";
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << (i ? ",\n" : "") << pad;
      pretty(out, j[i], depth + 1);
    }
    out << "\n" << close << "]";
  } else {
    out << j.dump();
  }
}

std::string dump(const Json& j) {
  std::ostringstream out;
  pretty(out, j, 0);
  out << "\n";
  return out.str();
}

// A clause-set result: DIMACS in the main output and metadata in a ".json"
// sidecar, or one JSON document under --format Json.
void emit_clauses(const Options& o, const ClauseSet& f, Json meta, const std::vector<std::string>& comments = {}) {
  if (o.format == "json") {
    meta["clauses"] = ser::encode(f);
    write_text(o.out, dump(meta));
    return;
  }
  write_text(o.out, to_dimacs(f, comments));
  if (!o.out.empty()) write_text(o.out + ".json", dump(meta));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// Rows of cells as CSV, an aligned table, or a JSON array of objects.
std::string render(const Options& o, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
      arr.push_back(obj);
    }
    return dump(arr);
  }
  if (o.format == "csv") {
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
      out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

int cmd_generate(const Options& o) {
  if (o.family == "file") throw DomainError("generate needs --family extremal_doped, horn_chain or g_n");
  Instance inst = load(o);
  emit_clauses(o, inst.clauses, Json{{"instance", inst.meta}}, {"family " + o.family});
  return kOk;
}

int cmd_measure(const Options& o) {
  const Limits limits = o.limits();
  Instance inst = load(o);
  const ClauseSet& f = inst.clauses;
  auto wants = [&](const std::string& m) { return std::find(o.measures.begin(), o.measures.end(), m) != o.measures.end(); };
  HardnessReport r;
  auto attempt = [&](const std::string& name, auto&& compute, std::optional<Measured>& slot) {
    if (!wants(name)) return;
    try {
      slot = compute();
    } catch (const CapExceeded&) {
      r.capped.push_back(name);
    }
  };
  attempt("hd", [&] { return hd_measured(f, limits); }, r.hd);
  attempt("whd", [&] { return whd_measured(f, limits); }, r.whd);
  attempt("phd", [&] { return phd_measured(f, limits); }, r.phd);
  attempt("wid", [&] { return wid_measured(f, limits); }, r.wid);
  std::optional<std::size_t> primes, essential;
  try {
    PrimeSet p = prime_implicates(f, limits);
    primes = p.primes.size();
    essential = essential_among(p.primes, limits).size();
  } catch (const CapExceeded&) {
    r.capped.push_back("primes");
  }
  const Measures m = measures(f);

  if (o.format == "json") {
    Json j{{"instance", inst.meta}};
    j["measures"] = ser::encode(m);
    j["hardness"] = ser::encode(r);
    j["primes"] = primes ? Json(*primes) : Json(nullptr);
    j["essential"] = essential ? Json(*essential) : Json(nullptr);
    write_text(o.out, dump(j));
  } else {
    auto cell = [](const std::optional<Measured>& v) { return v ? std::to_string(v->value) : std::string("-"); };
    auto count = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
    std::string capped;
    for (const auto& c : r.capped) capped += (capped.empty() ? "" : " ") + c;
    write_text(o.out, render(o, {"n", "c", "ell", "delta", "primes", "essential", "hd", "whd", "phd", "wid", "capped"},
                             {{std::to_string(m.n), std::to_string(m.c), std::to_string(m.ell), std::to_string(m.delta),
                               count(primes), count(essential), cell(r.hd), cell(r.whd), cell(r.phd), cell(r.wid),
                               capped}}));
  }
  return r.capped.empty() ? kOk : kCap;
}

int cmd_primes(const Options& o) {
  const Limits limits = o.limits();
  Instance inst = load(o);
  PrimeSet p = prime_implicates(inst.clauses, limits);
  const ClauseSet ess = essential_among(p.primes, limits);
  Json meta{{"instance", inst.meta}};
  meta["primes"] = ser::encode_primes(p.primes, ess);
  if (o.format == "json") {
    write_text(o.out, dump(meta));
    return kOk;
  }
  emit_clauses(o, p.primes, meta, {"prime implicates: " + std::to_string(p.primes.size())});
  return kOk;
}

int cmd_mps(const Options& o) {
  Instance inst = load(o);
  MpsFamily fam = mps_enumerate(inst.clauses, o.limits());
  if (o.format == "json") {
    Json j{{"instance", inst.meta}};
    j["mps"] = ser::encode(fam);
    j["count"] = fam.members.size();
    write_text(o.out, dump(j));
    return kOk;
  }
  std::vector<std::vector<std::string>> rows;
  for (const MpsMember& m : fam.members) {
    std::string idx;
    for (std::size_t i : m.indices) idx += (idx.empty() ? "" : " ") + std::to_string(i);
    rows.push_back({idx, m.pure.to_string()});
  }
  write_text(o.out, render(o, {"indices", "pure"}, rows));
  return kOk;
}

int cmd_dope(const Options& o) {
  Instance inst = load(o);
  DopedClauseSet d = dope(inst.clauses);
  Json meta{{"instance", inst.meta}};
  meta["doping"] = ser::encode(d)["doping"];
  emit_clauses(o, d.doped, meta, {"doped"});
  return kOk;
}

int cmd_trigger(const Options& o) {
  const Limits limits = o.limits();
  Instance inst = load(o);
  TriggerHypergraph g = trigger_hypergraph(inst.clauses, o.k, limits);
  SearchResult tau = transversal_number(g, limits);
  SearchResult nu = matching_number(g, limits);
  if (o.format == "json") {
    Json j{{"instance", inst.meta}};
    j["hypergraph"] = ser::encode(g);
    j["tau"] = ser::encode(tau);
    j["nu"] = ser::encode(nu);
    write_text(o.out, dump(j));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      std::string e;
      for (std::size_t v : g.edges[i]) e += (e.empty() ? "" : " ") + std::to_string(v);
      rows.push_back({std::to_string(i), g.vertices[i].to_string(), e});
    }
    std::string text = render(o, {"vertex", "prime", "edge"}, rows);
    if (o.format == "table") {
      text += "tau " + std::string(tau.exact ? "" : "~") + std::to_string(tau.value) + "\n";
      text += "nu " + std::string(nu.exact ? "" : "~") + std::to_string(nu.value) + "\n";
    }
    write_text(o.out, text);
  }
  return tau.exact && nu.exact ? kOk : kCap;
}

int cmd_kbase(const Options& o) {
  const Limits limits = o.limits();
  Instance inst = load(o);
  PrimeSet p = prime_implicates(inst.clauses, limits);
  KBase b = o.exhaustive ? k_base_exhaustive(p, o.k, limits) : k_base(p, o.k, limits);
  if (!equivalent(b.clauses, inst.clauses, limits) || !hd_at_most(b.clauses, p.primes, o.k, limits)) {
    throw IntegrityError("k-base failed its equivalence or hardness check");
  }
  Json meta{{"instance", inst.meta}};
  meta["kbase"] = ser::encode(b);
  emit_clauses(o, b.clauses, meta, {std::to_string(o.k) + "-base"});
  return kOk;
}

int cmd_query(const Options& o) {
  const Limits limits = o.limits();
  Instance inst = load(o);
  auto kind = parse_query_kind(o.query);
  if (!kind) throw DomainError("unknown query kind '" + o.query + "'");
  Query q;
  q.kind = *kind;
  q.k = o.k_given ? o.k : whd(inst.clauses, limits);
  q.verify = o.verify;
  if (!o.clause.empty()) {
    std::vector<Literal> lits;
    for (int v : cli::parse_literals(o.clause)) lits.emplace_back(v);
    q.clause = Clause(std::move(lits));
  }
  if (!o.assignment.empty()) {
    std::vector<Literal> lits;
    for (int v : cli::parse_literals(o.assignment)) lits.emplace_back(v);
    q.assignment = PartialAssignment(lits);
  }
  if (!o.other.empty()) q.other = load_file(o.other);
  QueryAnswer a = answer_query(inst.clauses, q, limits);
  Json j = ser::encode(a);
  j["instance"] = inst.meta;
  j["query"] = to_string(q.kind);
  j["k"] = q.k;
  write_text(o.out, dump(j));
  return kOk;
}

int cmd_separation(const Options& o) {
  Limits limits = o.limits();
  // Trigger hypergraphs grow quadratically in the prime count, so the
  // default prime cap is lower here; the subset cap is higher so that the
  // default rows come out exact.
  if (!o.cap_primes_given) limits.primes = 1024;
  if (!o.cap_subsets_given) limits.equiv_subsets = std::uint64_t{1} << 26;
  const auto pairs = cli::separation_pairs(cli::parse_range(o.k_range), cli::parse_range(o.h_range));
  std::vector<cli::SeparationRow> rows;
  for (auto [k, h] : pairs) rows.push_back(cli::separation_row(k, h, limits));

  const std::vector<std::string> header{"k", "h", "n", "c", "ell", "primes", "hd", "whd", "tau", "nu",
                                        "sperner_bound", "min_equiv", "notes"};
  std::vector<std::vector<std::string>> cells;
  bool capped = false;
  for (const auto& r : rows) {
    std::string notes;
    for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
    capped = capped || !r.notes.empty();
    cells.push_back({std::to_string(r.k), std::to_string(r.h), std::to_string(r.size.n), std::to_string(r.size.c),
                     std::to_string(r.size.ell), r.primes.to_string(), r.hd.to_string(), r.whd.to_string(),
                     r.tau.to_string(), r.nu.to_string(), std::to_string(r.sperner_bound), r.min_equiv.to_string(),
                     notes});
  }
  write_text(o.out, render(o, header, cells));
  for (const auto& r : rows) cli::check_row(r);
  return capped ? kCap : kOk;
}

struct Check {
  std::string name;
  bool ok;
};

int cmd_selftest(const Options& o) {
  std::vector<Check> checks;
  auto check = [&](const std::string& name, auto&& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception&) {
      ok = false;
    }
    checks.push_back({name, ok});
  };
  check("pure clause", [] { return pure_clause(ClauseSet{{1, 2}, {-1, -3}}) == Clause{2, -3}; });
  check("hd/whd split", [] {
    ClauseSet f{{2, 3, 4}, {-4, 2}, {-2, 1, 5}, {-5, -2}, {-3, 1, 6}, {-6, -3},
                {7, 8, 9}, {-9, 7}, {-7, -1, 10}, {-10, -7}, {-8, -1, 11}, {-11, -8}};
    return whd(f) == 2 && hd(f) == 3;
  });
  check("tree statistics", [] {
    TreeStats s = tree_stats(parse_term("(1 (2 (3 . .) (4 . .)) (5 . .))"));
    return s.hts == 2 && s.height == 3;
  });
  check("doped chain primes", [] {
    for (unsigned h = 1; h <= 4; ++h)
      if (prime_implicates(horn_chain(h).doped.doped).primes.size() != (1u << (h + 1)) - 1) return false;
    return true;
  });
  check("trigger edges", [] {
    ClauseSet f{{1, -3, -4}, {2, 3, -4}, {2, -3, 4}, {-2, 3, 4}, {1, 3, 4}, {1, 2}};
    TriggerHypergraph t2 = trigger_hypergraph(f, 2);
    return t2.edges[*f.index_of(Clause{1, 2})].size() == 5 && trigger_hypergraph(f, 3).edges == t2.edges;
  });
  check("hardness of extremal trees", [] {
    for (unsigned k = 0; k <= 2; ++k)
      if (hd(extremal_doped(k, k + 1).doped.doped) != k + 1) return false;
    return true;
  });
  check("random k-bases", [&] {
    std::mt19937 rng(o.seed);
    for (int round = 0; round < 20; ++round) {
      std::vector<Clause> cs;
      for (int i = 0; i < 6; ++i) {
        std::vector<Literal> lits;
        for (int v = 1; v <= 6; ++v) {
          const int r = std::uniform_int_distribution<int>(0, 3)(rng);
          if (r == 0) lits.emplace_back(v);
          if (r == 1) lits.emplace_back(-v);
        }
        cs.emplace_back(std::move(lits));
      }
      ClauseSet f(std::move(cs));
      PrimeSet p = prime_implicates(f);
      if (canon_primes(f, f.size()).clauses != p.primes) return false;
      for (unsigned k = 0; k <= 2; ++k) {
        KBase b = k_base(p, k);
        if (!equivalent(b.clauses, f) || hd(b.clauses) > k) return false;
      }
    }
    return true;
  });
  bool all = true;
  std::ostringstream out;
  for (const Check& c : checks) {
    out << (c.ok ? "PASS " : "FAIL ") << c.name << "\n";
    all = all && c.ok;
  }
  write_text(o.out, out.str());
  return all ? kOk : kIntegrity;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardness measures, prime implicates and trigger hypergraphs for clause-sets"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--family", o.family, "Instance family")
      ->check(CLI::IsMember({"file", "extremal_doped", "horn_chain", "g_n"}));
  app.add_option("--input,-i", o.input, "DIMACS input for --family file ('-' for stdin)");
  auto* k_opt = app.add_option("--k", o.k, "Hardness level k");
  app.add_option("--h", o.h, "Tree height h");
  app.add_option("--n", o.n, "Size parameter for g_n");
  app.add_option("--k-range", o.k_range, "separation: k values, e.g. 0..2");
  app.add_option("--h-range", o.h_range, "separation: h values, e.g. 1..3");
  app.add_option("--cap-vars", o.cap_vars, "Variables allowed in a satisfiability check");
  auto* primes_opt = app.add_option("--cap-primes", o.cap_primes, "Prime implicates computed before giving up");
  app.add_option("--cap-phd-vars", o.cap_phd_vars, "Variables for the exhaustive phd computation");
  app.add_option("--cap-nodes", o.cap_nodes, "Branch-and-bound nodes for tau and nu");
  auto* subsets_opt = app.add_option("--cap-subsets", o.cap_subsets, "Candidate subsets for exhaustive minimum search");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_option("--out,-o", o.out, "Output path (default stdout)");
  app.add_option("--measures", o.measures, "measure: subset of hd whd phd wid")
      ->check(CLI::IsMember({"hd", "whd", "phd", "wid"}))
      ->delimiter(',');
  app.add_option("--query", o.query, "query: CO CE VA IM SE EQ ME MC");
  app.add_option("--clause", o.clause, "query CE: literals, e.g. \"1 -2\"");
  app.add_option("--assignment", o.assignment, "query IM: true literals");
  app.add_option("--other", o.other, "query SE/EQ: DIMACS file of the second clause-set");
  app.add_flag("--verify", o.verify, "query: cross-check k-resolution with the SAT oracle");
  app.add_flag("--exhaustive", o.exhaustive, "kbase: smallest k-base instead of the greedy one");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Sub subs[] = {
      {"generate", "Write a family instance as DIMACS plus JSON metadata", cmd_generate},
      {"measure", "Hardness report (hd, whd, phd, wid) and prime counts", cmd_measure},
      {"primes", "Prime implicates with essential flags", cmd_primes},
      {"mps", "Minimal premise sets and their pure clauses", cmd_mps},
      {"dope", "Doped clause-set D(F)", cmd_dope},
      {"trigger", "Trigger hypergraph T_k with tau and nu", cmd_trigger},
      {"kbase", "k-base of the prime implicates", cmd_kbase},
      {"query", "Answer a knowledge-compilation query with k-resolution", cmd_query},
      {"separation", "Separation experiment over the doped extremal trees", cmd_separation},
      {"selftest", "Quick invariant checks", cmd_selftest},
  };
  for (const Sub& s : subs) app.add_subcommand(s.name, s.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }
  o.k_given = k_opt->count() > 0;
  o.cap_primes_given = primes_opt->count() > 0;
  o.cap_subsets_given = subsets_opt->count() > 0;

  const std::string chosen = app.get_subcommands().front()->get_name();
  try {
    for (const Sub& s : subs)
      if (chosen == s.name) return s.run(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity violation: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
