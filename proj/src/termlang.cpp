#include "termlang.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pmw {

std::string render_term(const Term& t) {
  if (t.kind == Term::Kind::Var || t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += render_term(t.args[i]);
  }
  return out + ")";
}

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& msg) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + " col " + std::to_string(col) + ": " + msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Recursive-descent term parser over one line, tracking columns (1-based).
struct TermParser {
  std::string_view text;
  int line;
  std::size_t pos;
  int col_offset;
  const std::vector<OpSymbol>& ops;

  int col() const { return col_offset + static_cast<int>(pos) + 1; }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() { return pos < text.size() ? text[pos] : '\0'; }

  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos]))
      parse_fail(line, col(), "expected identifier");
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  const OpSymbol* find_op(const std::string& name) const {
    for (const OpSymbol& op : ops)
      if (op.name == name) return &op;
    return nullptr;
  }

  Term term() {
    skip_ws();
    int start_col = col();
    std::string name = ident();
    skip_ws();
    if (peek() == '(') {
      ++pos;
      std::vector<Term> args;
      skip_ws();
      if (peek() == ')') parse_fail(line, col(), "empty argument list");
      args.push_back(term());
      skip_ws();
      while (peek() == ',') {
        ++pos;
        args.push_back(term());
        skip_ws();
      }
      if (peek() != ')') parse_fail(line, col(), "expected ')' or ','");
      ++pos;
      const OpSymbol* op = find_op(name);
      if (!op) parse_fail(line, start_col, "unknown operation '" + name + "'");
      if (op->arity != static_cast<int>(args.size()))
        parse_fail(line, start_col,
                   "operation '" + name + "' expects " + std::to_string(op->arity) +
                       " arguments, got " + std::to_string(args.size()));
      return Term::app(name, std::move(args));
    }
    if (const OpSymbol* op = find_op(name)) {
      if (op->arity != 0)
        parse_fail(line, start_col,
                   "operation '" + name + "' expects " + std::to_string(op->arity) +
                       " arguments, got 0");
      return Term::app(name);
    }
    return Term::var(std::move(name));
  }
};

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const Term& a : t.args) collect_vars(a, out);
}

}  // namespace

Theory parse_theory(std::string_view text) {
  Theory th;
  bool have_name = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    std::string_view lineview = raw.substr(0, std::min(raw.find('#'), raw.size()));
    std::size_t b = lineview.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    std::size_t e = lineview.find_last_not_of(" \t\r");
    lineview = lineview.substr(b, e - b + 1);

    std::size_t sp = lineview.find_first_of(" \t");
    std::string keyword(lineview.substr(0, sp));
    std::string_view rest = sp == std::string_view::npos ? std::string_view() : lineview.substr(sp + 1);

    if (keyword == "theory") {
      if (have_name) parse_fail(line_no, 1, "duplicate 'theory' line");
      TermParser p{rest, line_no, 0, th.ops};
      th.name = p.ident();
      if (!p.at_end()) parse_fail(line_no, static_cast<int>(b) + 1, "trailing content after theory name");
      have_name = true;
    } else if (keyword == "op" || keyword == "const") {
      if (!have_name) parse_fail(line_no, 1, "'theory <name>' must come first");
      TermParser p{rest, line_no, 0, th.ops};
      std::string name = p.ident();
      int arity = 0;
      if (keyword == "op") {
        p.skip_ws();
        std::size_t numstart = p.pos;
        while (p.pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[p.pos]))) ++p.pos;
        if (numstart == p.pos) parse_fail(line_no, p.col(), "expected arity");
        arity = std::stoi(std::string(rest.substr(numstart, p.pos - numstart)));
      }
      if (!p.at_end()) parse_fail(line_no, p.col(), "trailing content after declaration");
      for (const OpSymbol& op : th.ops)
        if (op.name == name) parse_fail(line_no, 1, "duplicate operation name '" + name + "'");
      th.ops.push_back({std::move(name), arity});
    } else if (keyword == "axiom") {
      if (!have_name) parse_fail(line_no, 1, "'theory <name>' must come first");
      TermParser p{rest, line_no, 0, th.ops};
      Identity id;
      id.lhs = p.term();
      p.skip_ws();
      if (p.peek() != '=') parse_fail(line_no, p.col(), "expected '='");
      ++p.pos;
      id.rhs = p.term();
      if (!p.at_end()) parse_fail(line_no, p.col(), "trailing content after axiom");
      collect_vars(id.lhs, id.vars);
      collect_vars(id.rhs, id.vars);
      th.axioms.push_back(std::move(id));
    } else {
      parse_fail(line_no, static_cast<int>(b) + 1, "unknown directive '" + keyword + "'");
    }
  }
  if (!have_name) fail(ErrorKind::Parse, "missing 'theory <name>' line");
  return th;
}

Theory load_theory_file(const std::string& path) { return parse_theory(read_text_file(path)); }

namespace {

/// Term with symbols resolved against a model and variables indexed,
/// so exhaustive evaluation avoids name lookups.
struct BoundTerm {
  int sym = -1;  // -1: variable
  int var = -1;
  std::vector<BoundTerm> args;
};

BoundTerm bind(const FiniteModel& m, const Term& t, const std::vector<std::string>& vars) {
  BoundTerm b;
  if (t.kind == Term::Kind::Var) {
    auto it = std::find(vars.begin(), vars.end(), t.name);
    if (it == vars.end()) fail(ErrorKind::Invalid, "unbound variable: " + t.name);
    b.var = static_cast<int>(it - vars.begin());
    return b;
  }
  b.sym = m.resolve(t.name);
  if (b.sym < 0) fail(ErrorKind::Invalid, "unknown operation: " + t.name);
  if (m.signature().symbol(b.sym).arity != static_cast<int>(t.args.size()))
    fail(ErrorKind::Invalid, "arity mismatch for operation: " + t.name);
  for (const Term& a : t.args) b.args.push_back(bind(m, a, vars));
  return b;
}

Element eval_bound(const FiniteModel& m, const BoundTerm& t, std::span<const Element> assignment) {
  if (t.sym < 0) return assignment[static_cast<std::size_t>(t.var)];
  std::vector<Element> args(t.args.size());
  for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_bound(m, t.args[i], assignment);
  return m.table(t.sym)[arg_index(args, m.size())];
}

}  // namespace

Element eval_term(const FiniteModel& m, const Term& t,
                  const std::map<std::string, Element>& assignment) {
  if (t.kind == Term::Kind::Var) {
    auto it = assignment.find(t.name);
    if (it == assignment.end()) fail(ErrorKind::Invalid, "unbound variable: " + t.name);
    Element v = it->second;
    if (v < 0 || v >= m.size()) fail(ErrorKind::Invalid, "assignment value out of range");
    return v;
  }
  std::vector<Element> args(t.args.size());
  for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term(m, t.args[i], assignment);
  return m.eval(t.name, args);
}

std::string Verdict::render() const {
  std::string out;
  for (std::size_t i = 0; i < counterexample.size(); ++i) {
    if (i) out += ' ';
    out += counterexample[i].first + "=" + std::to_string(counterexample[i].second);
  }
  return out;
}

Verdict check_identity(const FiniteModel& m, const Identity& id) {
  BoundTerm lhs = bind(m, id.lhs, id.vars);
  BoundTerm rhs = bind(m, id.rhs, id.vars);
  const int k = m.size();
  const std::size_t nvars = id.vars.size();
  checked_pow(k, static_cast<int>(nvars), std::size_t{1} << 26);  // guard assignment count

  std::vector<Element> assignment(nvars, 0);
  while (true) {
    if (eval_bound(m, lhs, assignment) != eval_bound(m, rhs, assignment)) {
      Verdict v;
      v.holds = false;
      for (std::size_t i = 0; i < nvars; ++i) v.counterexample.emplace_back(id.vars[i], assignment[i]);
      return v;
    }
    // odometer: last variable fastest, so failures surface in lexicographic order
    std::size_t i = nvars;
    while (i > 0) {
      --i;
      if (++assignment[i] < k) break;
      assignment[i] = 0;
      if (i == 0) return {};
    }
    if (nvars == 0) return {};
  }
}

std::vector<Verdict> check_theory(const FiniteModel& m, const Theory& th) {
  std::vector<Verdict> out;
  out.reserve(th.axioms.size());
  for (const Identity& id : th.axioms) out.push_back(check_identity(m, id));
  return out;
}

}  // namespace pmw
