#include "kcw/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "kcw/errors.hpp"

namespace kcw {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view tok, int& value) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

DimacsDocument read_dimacs(std::istream& in) {
  DimacsDocument doc;
  bool have_header = false;
  std::vector<Clause> clauses;
  std::vector<int> current;
  std::size_t current_start = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    auto toks = split_ws(view);
    if (toks.empty()) continue;
    if (toks[0] == "c") {
      std::size_t pos = view.find('c');
      std::string_view rest = view.substr(pos + 1);
      if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      doc.comments.emplace_back(rest);
      continue;
    }
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError(lineno, "expected 'p cnf <vars> <clauses>'");
      if (!parse_int(toks[2], doc.declared_vars) || !parse_int(toks[3], doc.declared_clauses) ||
          doc.declared_vars < 0 || doc.declared_clauses < 0) {
        throw ParseError(lineno, "malformed header counts");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before 'p cnf' header");
    for (std::string_view tok : toks) {
      int lit = 0;
      if (!parse_int(tok, lit)) throw ParseError(lineno, "invalid literal '" + std::string(tok) + "'");
      if (lit == 0) {
        if (tok.front() == '-' || tok.front() == '+') {
          throw ParseError(lineno, "signed zero inside clause body");
        }
        try {
          clauses.push_back(Clause::from_ints(current));
        } catch (const DomainError& e) {
          throw ParseError(current_start ? current_start : lineno, std::string("tautological clause: ") + e.what());
        }
        current.clear();
        current_start = 0;
        continue;
      }
      if (lit > doc.declared_vars || -lit > doc.declared_vars) {
        throw ParseError(lineno, "literal " + std::to_string(lit) + " exceeds declared variable count");
      }
      if (current.empty()) current_start = lineno;
      current.push_back(lit);
    }
  }
  if (!have_header) throw ParseError(lineno, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(current_start, "clause not terminated by 0");
  if (clauses.size() != static_cast<std::size_t>(doc.declared_clauses)) {
    throw ParseError(lineno, "header declares " + std::to_string(doc.declared_clauses) + " clauses, found " +
                                 std::to_string(clauses.size()));
  }
  doc.clauses = ClauseSet(std::move(clauses));
  return doc;
}

ClauseSet parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dimacs(in).clauses;
}

void write_dimacs(std::ostream& out, const ClauseSet& f, const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out << "c " << c << '\n';
  out << "p cnf " << f.max_var() << ' ' << f.size() << '\n';
  for (const Clause& c : f) {
    for (Literal x : c) out << x.value() << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const ClauseSet& f, const std::vector<std::string>& comments) {
  std::ostringstream os;
  write_dimacs(os, f, comments);
  return os.str();
}

}  // namespace kcw
