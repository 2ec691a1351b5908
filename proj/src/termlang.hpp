#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

namespace pmw {

struct Term {
  enum class Kind { Var, App };
  Kind kind = Kind::Var;
  std::string name;
  std::vector<Term> args;  // empty for variables and constants

  static Term var(std::string n) { return {Kind::Var, std::move(n), {}}; }
  static Term app(std::string n, std::vector<Term> a = {}) { return {Kind::App, std::move(n), std::move(a)}; }
};

std::string render_term(const Term& t);

/// Variables are implicitly universally quantified; `vars` lists them in
/// first-occurrence order (left side first), which fixes counterexample order.
struct Identity {
  Term lhs;
  Term rhs;
  std::vector<std::string> vars;
};

struct Theory {
  std::string name;
  std::vector<OpSymbol> ops;
  std::vector<Identity> axioms;
};

Theory parse_theory(std::string_view text);
Theory load_theory_file(const std::string& path);

Element eval_term(const FiniteModel& m, const Term& t,
                  const std::map<std::string, Element>& assignment);

struct Verdict {
  bool holds = true;
  std::vector<std::pair<std::string, Element>> counterexample;  // in Identity::vars order
  std::string render() const;                                   // "x=0 y=1"
};

/// Exhaustive check over all assignments; on failure reports the
/// lexicographically least counterexample in variable declaration order.
Verdict check_identity(const FiniteModel& m, const Identity& id);

std::vector<Verdict> check_theory(const FiniteModel& m, const Theory& th);

}  // namespace pmw
