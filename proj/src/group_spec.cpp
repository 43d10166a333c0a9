#include "group_spec.hpp"

#include <cctype>
#include <sstream>

#include "error.hpp"

namespace ifp::spec {

namespace {

struct KeywordInfo {
  Family family;
  const char* name;
  const char* positional;  // name of the positional integer parameter, or ""
  std::vector<const char*> keys;
  int children;  // -1 for fibered (4), exact otherwise
};

const std::vector<KeywordInfo>& table() {
  static const std::vector<KeywordInfo> t = {
      {Family::Cyclic, "cyclic", "n", {"n", "w"}, 0},
      {Family::Dihedral, "dihedral", "order", {"order"}, 0},
      {Family::Dicyclic, "dicyclic", "order", {"order"}, 0},
      {Family::BinaryTetrahedral, "binary-tetrahedral", "", {}, 0},
      {Family::BinaryOctahedral, "binary-octahedral", "", {}, 0},
      {Family::BinaryIcosahedral, "binary-icosahedral", "", {}, 0},
      {Family::Tetrahedral, "tetrahedral", "", {}, 0},
      {Family::Octahedral, "octahedral", "", {}, 0},
      {Family::Icosahedral, "icosahedral", "", {}, 0},
      {Family::ImprimitiveC3, "imprimitive-c3", "", {"n", "s"}, 0},
      {Family::ImprimitiveZn2C3, "imprimitive-zn2-c3", "", {"n"}, 0},
      {Family::Gnks, "gnks", "", {"n", "k", "s"}, 0},
      {Family::ImprimitiveZn2S3, "imprimitive-zn2-s3", "", {"n"}, 0},
      {Family::HessianKernel, "hessian-kernel", "", {}, 0},
      {Family::HessianC4, "hessian-c4", "", {}, 0},
      {Family::HessianQ8, "hessian-q8", "", {}, 0},
      {Family::HessianFull, "hessian-full", "", {}, 0},
      {Family::Sym2Lift, "sym2", "", {}, 1},
      {Family::ProductF0, "product-f0", "", {}, 2},
      {Family::DiagonalF0, "diagonal-f0", "", {}, 1},
      {Family::FiberedProduct, "fibered", "", {}, 4},
      {Family::F4n, "f4n", "n", {"n"}, 0},
      {Family::G4n, "g4n", "n", {"n"}, 0},
      {Family::H4n, "h4n", "", {"n", "p"}, 0},
      {Family::I4n, "i4n", "", {"n", "p"}, 0},
      {Family::J4n, "j4n", "", {"n", "p"}, 0},
      {Family::TwistedDihedralF0, "twisted-dihedral-f0", "n", {"n"}, 0},
      {Family::Explicit, "explicit", "", {}, 0},
  };
  return t;
}

const KeywordInfo& info(Family f) {
  for (const auto& k : table())
    if (k.family == f) return k;
  throw InvariantViolation("unknown family");
}

struct Token {
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '(' || ch == ')' || ch == '[' || ch == ']' || ch == ';') {
      out.push_back({std::string(1, ch), i});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' &&
           s[i] != '[' && s[i] != ']' && s[i] != ';')
      ++i;
    out.push_back({s.substr(start, i - start), start});
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text), toks_(tokenize(text)) {}

  GroupSpec parse_top() {
    if (toks_.empty()) throw InvalidInput("empty group spec");
    GroupSpec g = parse_spec();
    if (pos_ != toks_.size()) fail(toks_[pos_], "unexpected trailing token");
    return g;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& why) const {
    throw InvalidInput("spec parse error at offset " + std::to_string(t.offset) + " near '" + t.text + "': " + why);
  }
  [[noreturn]] void fail_end(const std::string& why) const {
    throw InvalidInput("spec parse error at end of input: " + why);
  }
  bool at(const char* s) const { return pos_ < toks_.size() && toks_[pos_].text == s; }

  static long to_long(const Token& t, const std::string& v, const Parser& p) {
    if (v.empty()) p.fail(t, "missing integer");
    std::size_t k = 0;
    if (v[0] == '-' || v[0] == '+') k = 1;
    if (k == v.size()) p.fail(t, "missing integer");
    for (std::size_t i = k; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) p.fail(t, "expected an integer");
    if (v.size() > 12) p.fail(t, "integer out of range");
    return std::stol(v);
  }

  GroupSpec parse_spec() {
    if (at("(")) {
      ++pos_;
      GroupSpec g = parse_spec();
      if (!at(")")) pos_ < toks_.size() ? fail(toks_[pos_], "expected ')'") : fail_end("expected ')'");
      ++pos_;
      return g;
    }
    if (pos_ >= toks_.size()) fail_end("expected a group keyword");
    const Token& kw = toks_[pos_++];
    const KeywordInfo* ki = nullptr;
    for (const auto& k : table())
      if (kw.text == k.name) ki = &k;
    if (!ki) fail(kw, "unknown group keyword");
    GroupSpec g;
    g.family = ki->family;
    while (pos_ < toks_.size()) {
      const Token& t = toks_[pos_];
      if (t.text == ")") break;
      if (t.text == "(") {
        ++pos_;
        g.children.push_back(parse_spec());
        if (!at(")")) pos_ < toks_.size() ? fail(toks_[pos_], "expected ')'") : fail_end("expected ')'");
        ++pos_;
        continue;
      }
      if (t.text == "[") {
        if (g.family != Family::Explicit) fail(t, "matrices are only allowed after 'explicit'");
        g.matrices.push_back(parse_matrix());
        continue;
      }
      auto eq = t.text.find('=');
      if (eq == std::string::npos) {
        if (!*ki->positional) fail(t, std::string("'") + ki->name + "' takes no positional argument");
        if (g.params.count(ki->positional)) fail(t, "parameter given twice");
        g.params[ki->positional] = to_long(t, t.text, *this);
        ++pos_;
        continue;
      }
      std::string key = t.text.substr(0, eq), val = t.text.substr(eq + 1);
      if (key == "alpha" && g.family == Family::FiberedProduct) {
        parse_alpha(t, val, g);
        ++pos_;
        continue;
      }
      bool known = false;
      for (const char* k : ki->keys) known = known || key == k;
      if (!known) fail(t, "unknown parameter '" + key + "' for '" + ki->name + "'");
      if (g.params.count(key)) fail(t, "parameter given twice");
      g.params[key] = to_long(t, val, *this);
      ++pos_;
    }
    if (static_cast<int>(g.children.size()) != ki->children)
      fail(kw, std::string("'") + ki->name + "' expects " + std::to_string(ki->children) + " parenthesized sub-spec(s)");
    for (const char* k : ki->keys)
      if (!g.params.count(k) && std::string(k) != "w") fail(kw, std::string("missing parameter '") + k + "'");
    if (g.family == Family::Explicit && g.matrices.empty()) fail(kw, "'explicit' needs at least one matrix");
    return g;
  }

  void parse_alpha(const Token& t, const std::string& val, GroupSpec& g) {
    std::stringstream ss(val);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto c = item.find(':');
      if (c == std::string::npos) fail(t, "alpha entries look like i:j");
      long a = to_long(t, item.substr(0, c), *this), b = to_long(t, item.substr(c + 1), *this);
      if (a < 1 || b < 0) fail(t, "alpha indices are 1-based (0 = identity on the right)");
      g.alpha.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    if (g.alpha.empty()) fail(t, "empty alpha");
  }

  cyclo::Matrix parse_matrix() {
    const Token& open = toks_[pos_++];
    std::vector<std::vector<cyclo::CycloNum>> rows(1);
    while (true) {
      if (pos_ >= toks_.size()) fail_end("unterminated matrix");
      const Token& t = toks_[pos_++];
      if (t.text == "]") break;
      if (t.text == ";") {
        rows.emplace_back();
        continue;
      }
      if (t.text == "(" || t.text == ")" || t.text == "[") fail(t, "unexpected token inside matrix");
      try {
        rows.back().push_back(cyclo::parse_literal(t.text));
      } catch (const InvalidInput& e) {
        fail(t, e.what());
      }
    }
    std::size_t n = rows.size();
    if (n != 2 && n != 3) fail(open, "matrix must be 2x2 or 3x3");
    std::vector<cyclo::CycloNum> flat;
    for (const auto& r : rows) {
      if (r.size() != n) fail(open, "matrix must be square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return cyclo::Matrix(n, n, flat);
  }

  const std::string& text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

long GroupSpec::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw InvalidInput(std::string("missing parameter '") + key + "' for " + keyword(family));
  return it->second;
}

long GroupSpec::param_or(const std::string& key, long fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

const char* keyword(Family f) { return info(f).name; }

GroupSpec parse(const std::string& text) { return Parser(text).parse_top(); }

std::string to_string(const GroupSpec& s) {
  const KeywordInfo& ki = info(s.family);
  std::string out = ki.name;
  if (*ki.positional && s.params.count(ki.positional)) out += " " + std::to_string(s.params.at(ki.positional));
  for (const auto& [k, v] : s.params) {
    if (k == ki.positional) continue;
    out += " " + k + "=" + std::to_string(v);
  }
  for (const auto& c : s.children) out += " (" + to_string(c) + ")";
  if (!s.alpha.empty()) {
    out += " alpha=";
    for (std::size_t i = 0; i < s.alpha.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s.alpha[i].first) + ":" + std::to_string(s.alpha[i].second);
    }
  }
  for (const auto& m : s.matrices) out += " " + m.to_string();
  return out;
}

GroupSpec make(Family f, std::map<std::string, long> params, std::vector<GroupSpec> children) {
  GroupSpec g;
  g.family = f;
  g.params = std::move(params);
  g.children = std::move(children);
  return g;
}

GroupSpec cyclic(long n) { return make(Family::Cyclic, {{"n", n}}); }
GroupSpec dihedral(long order) { return make(Family::Dihedral, {{"order", order}}); }

std::optional<unsigned long> declared_pgl2_order(const GroupSpec& s) {
  switch (s.family) {
    case Family::Cyclic:
      return static_cast<unsigned long>(s.param("n"));
    case Family::Dihedral:
      return static_cast<unsigned long>(s.param("order"));
    case Family::Tetrahedral:
      return 12;
    case Family::Octahedral:
      return 24;
    case Family::Icosahedral:
      return 60;
    default:
      return std::nullopt;
  }
}

std::optional<unsigned long> declared_order(const GroupSpec& s) {
  auto P = [&](const char* k) { return static_cast<unsigned long>(s.param(k)); };
  switch (s.family) {
    case Family::Cyclic:
      return P("n");
    case Family::Dihedral:
    case Family::Dicyclic:
      return P("order");
    case Family::BinaryTetrahedral:
      return 24;
    case Family::BinaryOctahedral:
      return 48;
    case Family::BinaryIcosahedral:
      return 120;
    case Family::ImprimitiveC3:
      return 3 * P("n");
    case Family::ImprimitiveZn2C3:
      return 3 * P("n") * P("n");
    case Family::Gnks:
      return 3 * P("n") * P("n") / P("k");
    case Family::ImprimitiveZn2S3:
      return 6 * P("n") * P("n");
    case Family::HessianKernel:
      return 18;
    case Family::HessianC4:
      return 36;
    case Family::HessianQ8:
      return 72;
    case Family::HessianFull:
      return 216;
    case Family::Sym2Lift:
    case Family::DiagonalF0:
      return declared_pgl2_order(s.children[0]);
    case Family::ProductF0: {
      auto a = declared_pgl2_order(s.children[0]), b = declared_pgl2_order(s.children[1]);
      if (a && b) return *a * *b;
      return std::nullopt;
    }
    case Family::FiberedProduct: {
      auto a = declared_pgl2_order(s.children[0]), b = declared_pgl2_order(s.children[3]);
      if (a && b) return *a * *b;
      return std::nullopt;
    }
    case Family::F4n:
    case Family::G4n:
    case Family::H4n:
    case Family::I4n:
    case Family::J4n:
      return 4 * P("n");
    case Family::TwistedDihedralF0:
      return 2 * P("n");
    default:
      return std::nullopt;
  }
}

}  // namespace ifp::spec
