#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pmw {

using Element = int;

enum class ErrorKind {
  Io,           // file system problems
  Parse,        // malformed input text
  Invalid,      // bad arguments or violated structural invariants
  Unsupported,  // request outside configured feasibility bounds
  Property,     // a required algebraic property does not hold on the input
  Internal,     // a theorem-guaranteed condition failed; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

std::string read_text_file(const std::string& path);

/// Lexicographic index of an argument tuple, first argument most significant.
inline std::size_t arg_index(std::span<const Element> args, int k) {
  std::size_t idx = 0;
  for (Element a : args) idx = idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(a);
  return idx;
}

/// Inverse of arg_index for n-tuples.
void decode_tuple(std::size_t idx, int n, int k, std::span<Element> out);
std::vector<Element> decode_tuple(std::size_t idx, int n, int k);

/// k^e with overflow guard; throws Unsupported past `limit`.
std::size_t checked_pow(int k, int e, std::size_t limit);

struct OpSymbol {
  std::string name;
  int arity = 0;
  bool operator==(const OpSymbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> symbols);

  int index_of(std::string_view name) const;  // -1 if absent
  const OpSymbol& symbol(int idx) const { return symbols_[static_cast<std::size_t>(idx)]; }
  int count() const { return static_cast<int>(symbols_.size()); }
  const std::vector<OpSymbol>& symbols() const { return symbols_; }

  bool operator==(const Signature& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<OpSymbol> symbols_;
};

/// A finite algebra on the carrier {0..k-1}: one flat value table per symbol,
/// lexicographic argument order with the first argument most significant.
class FiniteModel {
 public:
  FiniteModel() = default;
  FiniteModel(int size, Signature sig, std::vector<std::vector<Element>> tables);

  int size() const { return size_; }
  const Signature& signature() const { return sig_; }

  /// Symbol lookup honoring aliases (e.g. alpha -> alpha1 on n=1 frames).
  int resolve(std::string_view name) const;

  Element eval(int sym, std::span<const Element> args) const;
  Element eval(std::string_view name, std::span<const Element> args) const;

  const std::vector<Element>& table(int sym) const { return tables_[static_cast<std::size_t>(sym)]; }

  void add_alias(const std::string& alias, const std::string& target);

  bool same_tables(const FiniteModel& o) const {
    return size_ == o.size_ && sig_ == o.sig_ && tables_ == o.tables_;
  }

 private:
  int size_ = 1;
  Signature sig_;
  std::vector<std::vector<Element>> tables_;
  std::unordered_map<std::string, int> aliases_;
};

/// A finite model with designated protomodular operations
/// theta (arity n+1), alpha1..alphan (binary), e1..en (constants).
struct Frame {
  FiniteModel model;
  int n = 1;
  int theta_sym = -1;
  std::vector<int> alpha_syms;
  std::vector<int> e_syms;

  int size() const { return model.size(); }

  Element theta(std::span<const Element> tuple, Element b) const {
    return model.table(theta_sym)[arg_index(tuple, size()) * static_cast<std::size_t>(size()) +
                                  static_cast<std::size_t>(b)];
  }
  Element theta_at(std::size_t tuple_idx, Element b) const {
    return model.table(theta_sym)[tuple_idx * static_cast<std::size_t>(size()) + static_cast<std::size_t>(b)];
  }
  Element alpha(int i, Element a, Element b) const {
    return model.table(alpha_syms[static_cast<std::size_t>(i)])
        [static_cast<std::size_t>(a) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(b)];
  }
  Element unit(int i) const { return model.table(e_syms[static_cast<std::size_t>(i)])[0]; }
  std::vector<Element> units() const;

  /// Evaluates alpha1..alphan at (a, b).
  std::vector<Element> alpha_tuple(Element a, Element b) const;

  bool same_tables(const Frame& o) const;
};

/// Builds a validated frame from raw tables. Symbol names are
/// theta, alpha1..alphan, e1..en; n=1 frames alias alpha/e.
Frame make_frame(int n, int k, std::vector<Element> theta_table,
                 std::vector<std::vector<Element>> alpha_tables, std::vector<Element> e_values);

Frame parse_algebra(std::string_view text);
Frame load_algebra_file(const std::string& path);
std::string serialize_algebra(const Frame& f);

}  // namespace pmw
