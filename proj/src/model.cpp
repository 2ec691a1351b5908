#include "model.hpp"

#include <fstream>
#include <sstream>

namespace pmw {

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void decode_tuple(std::size_t idx, int n, int k, std::span<Element> out) {
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<Element>(idx % static_cast<std::size_t>(k));
    idx /= static_cast<std::size_t>(k);
  }
}

std::vector<Element> decode_tuple(std::size_t idx, int n, int k) {
  std::vector<Element> out(static_cast<std::size_t>(n));
  decode_tuple(idx, n, k, out);
  return out;
}

std::size_t checked_pow(int k, int e, std::size_t limit) {
  std::size_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > limit / static_cast<std::size_t>(k)) fail(ErrorKind::Unsupported, "model too large");
    v *= static_cast<std::size_t>(k);
  }
  return v;
}

Signature::Signature(std::vector<OpSymbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].arity < 0) fail(ErrorKind::Invalid, "negative arity for symbol " + symbols_[i].name);
    for (std::size_t j = 0; j < i; ++j)
      if (symbols_[j].name == symbols_[i].name)
        fail(ErrorKind::Invalid, "duplicate symbol name: " + symbols_[i].name);
  }
}

int Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return static_cast<int>(i);
  return -1;
}

FiniteModel::FiniteModel(int size, Signature sig, std::vector<std::vector<Element>> tables)
    : size_(size), sig_(std::move(sig)), tables_(std::move(tables)) {
  if (size_ < 1) fail(ErrorKind::Invalid, "carrier size must be positive");
  if (tables_.size() != static_cast<std::size_t>(sig_.count()))
    fail(ErrorKind::Invalid, "one table per symbol required");
  for (int s = 0; s < sig_.count(); ++s) {
    std::size_t want = checked_pow(size_, sig_.symbol(s).arity, std::size_t{1} << 24);
    if (tables_[static_cast<std::size_t>(s)].size() != want)
      fail(ErrorKind::Invalid, "table for " + sig_.symbol(s).name + " must have " +
                                   std::to_string(want) + " entries");
    for (Element v : tables_[static_cast<std::size_t>(s)])
      if (v < 0 || v >= size_)
        fail(ErrorKind::Invalid, "table entry out of range for " + sig_.symbol(s).name);
  }
}

int FiniteModel::resolve(std::string_view name) const {
  int idx = sig_.index_of(name);
  if (idx >= 0) return idx;
  auto it = aliases_.find(std::string(name));
  if (it != aliases_.end()) return sig_.index_of(it->second);
  return -1;
}

Element FiniteModel::eval(int sym, std::span<const Element> args) const {
  if (sym < 0 || sym >= sig_.count()) fail(ErrorKind::Invalid, "unknown symbol index");
  const OpSymbol& op = sig_.symbol(sym);
  if (static_cast<int>(args.size()) != op.arity)
    fail(ErrorKind::Invalid, "operation " + op.name + " expects " + std::to_string(op.arity) +
                                 " arguments, got " + std::to_string(args.size()));
  for (Element a : args)
    if (a < 0 || a >= size_)
      fail(ErrorKind::Invalid, "element " + std::to_string(a) + " out of range for size " +
                                   std::to_string(size_));
  return tables_[static_cast<std::size_t>(sym)][arg_index(args, size_)];
}

Element FiniteModel::eval(std::string_view name, std::span<const Element> args) const {
  int sym = resolve(name);
  if (sym < 0) fail(ErrorKind::Invalid, "unknown operation: " + std::string(name));
  return eval(sym, args);
}

void FiniteModel::add_alias(const std::string& alias, const std::string& target) {
  aliases_[alias] = target;
}

std::vector<Element> Frame::units() const {
  std::vector<Element> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = unit(i);
  return out;
}

std::vector<Element> Frame::alpha_tuple(Element a, Element b) const {
  std::vector<Element> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = alpha(i, a, b);
  return out;
}

bool Frame::same_tables(const Frame& o) const {
  if (n != o.n || size() != o.size()) return false;
  if (model.table(theta_sym) != o.model.table(o.theta_sym)) return false;
  for (int i = 0; i < n; ++i) {
    if (model.table(alpha_syms[static_cast<std::size_t>(i)]) !=
        o.model.table(o.alpha_syms[static_cast<std::size_t>(i)]))
      return false;
    if (unit(i) != o.unit(i)) return false;
  }
  return true;
}

Frame make_frame(int n, int k, std::vector<Element> theta_table,
                 std::vector<std::vector<Element>> alpha_tables, std::vector<Element> e_values) {
  if (n < 1) fail(ErrorKind::Invalid, "n must be positive");
  if (k < 1) fail(ErrorKind::Invalid, "size must be positive");
  if (alpha_tables.size() != static_cast<std::size_t>(n) ||
      e_values.size() != static_cast<std::size_t>(n))
    fail(ErrorKind::Invalid, "need exactly n alpha tables and n unit values");

  std::vector<OpSymbol> syms;
  std::vector<std::vector<Element>> tables;
  syms.push_back({"theta", n + 1});
  tables.push_back(std::move(theta_table));
  for (int i = 0; i < n; ++i) {
    syms.push_back({"alpha" + std::to_string(i + 1), 2});
    tables.push_back(std::move(alpha_tables[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < n; ++i) {
    syms.push_back({"e" + std::to_string(i + 1), 0});
    tables.push_back({e_values[static_cast<std::size_t>(i)]});
  }

  Frame f;
  f.model = FiniteModel(k, Signature(std::move(syms)), std::move(tables));
  f.n = n;
  f.theta_sym = 0;
  for (int i = 0; i < n; ++i) {
    f.alpha_syms.push_back(1 + i);
    f.e_syms.push_back(1 + n + i);
  }
  if (n == 1) {
    f.model.add_alias("alpha", "alpha1");
    f.model.add_alias("e", "e1");
  }
  return f;
}

namespace {

struct Token {
  std::string text;
  int line = 0;
};

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) {
    int line = 1;
    std::string cur;
    int cur_line = 1;
    bool comment = false;
    auto flush = [&] {
      if (!cur.empty()) {
        toks_.push_back({cur, cur_line});
        cur.clear();
      }
    };
    for (char c : text) {
      if (c == '\n') {
        flush();
        ++line;
        comment = false;
        continue;
      }
      if (comment) continue;
      if (c == '#') {
        flush();
        comment = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        flush();
        continue;
      }
      if (cur.empty()) cur_line = line;
      cur += c;
    }
    flush();
    last_line_ = line;
  }

  bool eof() const { return pos_ >= toks_.size(); }
  int here() const { return eof() ? last_line_ : toks_[pos_].line; }

  Token next(const std::string& what) {
    if (eof())
      fail(ErrorKind::Parse, "line " + std::to_string(here()) + ": unexpected end of input, expected " + what);
    return toks_[pos_++];
  }

  void expect_word(const std::string& word) {
    Token t = next("'" + word + "'");
    if (t.text != word)
      fail(ErrorKind::Parse, "line " + std::to_string(t.line) + ": expected '" + word + "', found '" +
                                 t.text + "'");
  }

  long expect_int(const std::string& what) {
    Token t = next(what);
    try {
      std::size_t used = 0;
      long v = std::stol(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(ErrorKind::Parse,
           "line " + std::to_string(t.line) + ": expected " + what + ", found '" + t.text + "'");
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int last_line_ = 1;
};

const char* kSectionNote = " (sections must appear once, in order: theta, alpha 1..n, e 1..n)";

void expect_section(TokenStream& ts, const std::string& word, int index) {
  Token t = ts.next("section '" + word + "'");
  if (t.text != word)
    fail(ErrorKind::Parse, "line " + std::to_string(t.line) + ": expected section '" + word +
                               (index > 0 ? " " + std::to_string(index) : "") + "', found '" + t.text +
                               "'" + kSectionNote);
  if (index > 0) {
    long i = ts.expect_int("section index");
    if (i != index)
      fail(ErrorKind::Parse, "line " + std::to_string(t.line) + ": expected section '" + word + " " +
                                 std::to_string(index) + "', found '" + word + " " + std::to_string(i) +
                                 "'" + kSectionNote);
  }
}

std::vector<Element> read_table(TokenStream& ts, const std::string& name, std::size_t count, int k) {
  std::vector<Element> table;
  table.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    int line = ts.here();
    long v = ts.expect_int("entry " + std::to_string(i + 1) + " of " + std::to_string(count) + " for " +
                           name);
    if (v < 0 || v >= k)
      fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + name + " entry " + std::to_string(v) +
                                 " out of range (size " + std::to_string(k) + ")");
    table.push_back(static_cast<Element>(v));
  }
  return table;
}

}  // namespace

Frame parse_algebra(std::string_view text) {
  TokenStream ts(text);
  ts.expect_word("pmalg");
  long version = ts.expect_int("format version");
  if (version != 1)
    fail(ErrorKind::Parse, "unsupported pmalg version " + std::to_string(version));
  ts.expect_word("n");
  long n = ts.expect_int("n");
  if (n < 1 || n > 16) fail(ErrorKind::Parse, "n must be in 1..16, got " + std::to_string(n));
  ts.expect_word("size");
  long k = ts.expect_int("size");
  if (k < 1) fail(ErrorKind::Parse, "size must be positive, got " + std::to_string(k));
  std::size_t theta_len =
      checked_pow(static_cast<int>(k), static_cast<int>(n) + 1, std::size_t{1} << 24);

  expect_section(ts, "theta", 0);
  std::vector<Element> theta = read_table(ts, "theta", theta_len, static_cast<int>(k));

  std::vector<std::vector<Element>> alphas;
  for (int i = 1; i <= n; ++i) {
    expect_section(ts, "alpha", i);
    alphas.push_back(read_table(ts, "alpha " + std::to_string(i),
                                static_cast<std::size_t>(k) * static_cast<std::size_t>(k),
                                static_cast<int>(k)));
  }

  std::vector<Element> es;
  for (int i = 1; i <= n; ++i) {
    expect_section(ts, "e", i);
    int line = ts.here();
    long v = ts.expect_int("value of e " + std::to_string(i));
    if (v < 0 || v >= k)
      fail(ErrorKind::Parse, "line " + std::to_string(line) + ": e " + std::to_string(i) + " value " +
                                 std::to_string(v) + " out of range (size " + std::to_string(k) + ")");
    es.push_back(static_cast<Element>(v));
  }

  if (!ts.eof()) {
    Token t = ts.next("");
    fail(ErrorKind::Parse,
         "line " + std::to_string(t.line) + ": trailing content '" + t.text + "'" + kSectionNote);
  }

  return make_frame(static_cast<int>(n), static_cast<int>(k), std::move(theta), std::move(alphas),
                    std::move(es));
}

Frame load_algebra_file(const std::string& path) { return parse_algebra(read_text_file(path)); }

std::string serialize_algebra(const Frame& f) {
  const int k = f.size();
  std::ostringstream out;
  out << "pmalg 1\n";
  out << "n " << f.n << "\n";
  out << "size " << k << "\n";
  out << "theta\n";
  std::size_t rows = checked_pow(k, f.n, std::size_t{1} << 24);
  for (std::size_t t = 0; t < rows; ++t) {
    for (int b = 0; b < k; ++b) {
      if (b) out << ' ';
      out << f.theta_at(t, b);
    }
    out << '\n';
  }
  for (int i = 0; i < f.n; ++i) {
    out << "alpha " << (i + 1) << "\n";
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (b) out << ' ';
        out << f.alpha(i, a, b);
      }
      out << '\n';
    }
  }
  for (int i = 0; i < f.n; ++i) out << "e " << (i + 1) << ' ' << f.unit(i) << '\n';
  return out.str();
}

}  // namespace pmw
