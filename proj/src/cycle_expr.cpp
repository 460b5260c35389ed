#include "chernvan/cycle_expr.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

#include "chernvan/error.hpp"

namespace chernvan {

IndexSet CycleMonomial::support() const {
  IndexSet s = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] > 0) s |= singleton(static_cast<int>(i));
  return s;
}

int CycleMonomial::y_degree() const { return std::accumulate(y.begin(), y.end(), 0); }

int CycleMonomial::excess() const { return y_degree() - set_size(support()); }

CycleMonomial operator*(const CycleMonomial& a, const CycleMonomial& b) {
  if (a.y.size() != b.y.size() || a.t.size() != b.t.size())
    throw std::invalid_argument("cycle monomials of different shapes");
  if (a.marker != Marker::none && b.marker != Marker::none)
    throw std::invalid_argument("product of two marked classes (cg, W, xi) is not modeled");
  CycleMonomial out = a;
  if (b.marker != Marker::none) out.marker = b.marker;
  for (std::size_t i = 0; i < out.y.size(); ++i) out.y[i] += b.y[i];
  for (std::size_t j = 0; j < out.t.size(); ++j) out.t[j] += b.t[j];
  return out;
}

CycleExpr CycleExpr::monomial(const CycleMonomial& m, const Rat& c) {
  CycleExpr e(static_cast<int>(m.y.size()), static_cast<int>(m.t.size()));
  e.add_term(m, c);
  return e;
}

CycleMonomial CycleExpr::unit() const {
  CycleMonomial m;
  m.y.assign(num_y_, 0);
  m.t.assign(num_t_, 0);
  return m;
}

void CycleExpr::add_term(const CycleMonomial& m, const Rat& c) {
  if (static_cast<int>(m.y.size()) != num_y_ || static_cast<int>(m.t.size()) != num_t_)
    throw std::invalid_argument("CycleExpr::add_term: shape mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CycleExpr& CycleExpr::operator+=(const CycleExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CycleExpr& CycleExpr::operator-=(const CycleExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CycleExpr operator*(const CycleExpr& a, const CycleExpr& b) {
  CycleExpr out(a.num_y_, a.num_t_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

CycleExpr operator*(CycleExpr a, const Rat& c) {
  if (c.is_zero()) return CycleExpr(a.num_y_, a.num_t_);
  for (auto& [m, v] : a.terms_) v *= c;
  return a;
}

CycleExpr CycleExpr::pruned(const BoundaryConfig& cfg) const {
  CycleExpr out(num_y_, num_t_);
  for (const auto& [m, c] : terms_) {
    const IndexSet s = m.support();
    if (s != 0 && !cfg.is_stratum(s)) continue;
    if (m.marker == Marker::w && (s & cfg.z_support) != 0) continue;
    out.add_term(m, c);
  }
  return out;
}

std::string render_monomial(const CycleMonomial& m, const BoundaryConfig& cfg) {
  std::string out;
  auto append = [&out](const std::string& f) { out += (out.empty() ? "" : "*") + f; };
  switch (m.marker) {
    case Marker::cg: append("cg"); break;
    case Marker::w: append("W"); break;
    case Marker::xi: append("xi"); break;
    case Marker::none: break;
  }
  for (std::size_t j = 0; j < m.t.size(); ++j)
    if (m.t[j] > 0)
      append("f*(" + cfg.t_names.at(j) + ")" + (m.t[j] > 1 ? "^" + std::to_string(m.t[j]) : ""));
  for (std::size_t i = 0; i < m.y.size(); ++i)
    if (m.y[i] > 0)
      append(cfg.y_names.at(i) + (m.y[i] > 1 ? "^" + std::to_string(m.y[i]) : ""));
  return out.empty() ? "1" : out;
}

std::string CycleExpr::str(const BoundaryConfig& cfg) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first)
      out += (c.sign() < 0 ? "-" : "");
    else
      out += c.sign() < 0 ? " - " : " + ";
    first = false;
    out += c.abs().str() + "*" + render_monomial(m, cfg);
  }
  return out;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const BoundaryConfig& cfg) : text_(text), cfg_(cfg) {}

  CycleExpr parse() {
    CycleExpr e = expr(false);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(ErrorKind::parse,
                     "expression: " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_pullback() {
    skip_ws();
    return text_.substr(pos_, 3) == "f*(";
  }

  CycleExpr one() const {
    CycleExpr e(cfg_);
    e.add_term(e.unit(), Rat(1));
    return e;
  }

  CycleExpr expr(bool in_pullback) {
    CycleExpr out(cfg_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    while (true) {
      CycleExpr t = term(in_pullback);
      out += negate ? t * Rat(-1) : t;
      if (accept('+'))
        negate = false;
      else if (accept('-'))
        negate = true;
      else
        break;
    }
    return out;
  }

  CycleExpr term(bool in_pullback) {
    CycleExpr out = factor(in_pullback);
    while (true) {
      skip_ws();
      // "f*(" begins a factor, it is not a multiplication sign after 'f'.
      if (!accept('*')) break;
      out = out * factor(in_pullback);
    }
    return out;
  }

  int exponent() {
    if (!accept('^')) return 1;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (e < 1) fail("exponent must be positive");
    return e;
  }

  CycleExpr power(const CycleExpr& base, int e) const {
    CycleExpr out = one();
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }

  CycleExpr factor(bool in_pullback) {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
        ++pos_;
      Rat value;
      try {
        value = Rat::parse(text_.substr(start, pos_ - start));
      } catch (const std::exception& e) {
        fail(e.what());
      }
      return one() * value;
    }
    if (c == '(') {
      ++pos_;
      CycleExpr inner = expr(in_pullback);
      if (!accept(')')) fail("expected ')'");
      return power(inner, exponent());
    }
    if (peek_pullback()) {
      if (in_pullback) fail("nested f*(...)");
      pos_ += 3;
      CycleExpr inner = expr(true);
      if (!accept(')')) fail("expected ')' closing f*(");
      return power(inner, exponent());
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("unexpected character");
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    CycleExpr e(cfg_);
    CycleMonomial m = e.unit();
    if (in_pullback) {
      int j = -1;
      for (int k = 0; k < cfg_.num_t(); ++k)
        if (cfg_.t_names[k] == name) j = k;
      if (j < 0) fail("only T components may appear inside f*(...), got '" + name + "'");
      m.t[j] = 1;
    } else if (name == "cg") {
      m.marker = Marker::cg;
    } else if (name == "W") {
      m.marker = Marker::w;
    } else if (name == "xi") {
      m.marker = Marker::xi;
    } else {
      int i = -1;
      for (int k = 0; k < cfg_.num_y(); ++k)
        if (cfg_.y_names[k] == name) i = k;
      if (i < 0) {
        for (const std::string& t : cfg_.t_names)
          if (t == name) fail("base component '" + name + "' must be wrapped as f*(" + name + ")");
        fail("unknown symbol '" + name + "'");
      }
      m.y[i] = 1;
    }
    e.add_term(m, Rat(1));
    try {
      return power(e, exponent());
    } catch (const std::invalid_argument& err) {
      fail(err.what());
    }
  }

  std::string_view text_;
  const BoundaryConfig& cfg_;
  std::size_t pos_ = 0;
};

}  // namespace

CycleExpr parse_cycle_expr(std::string_view text, const BoundaryConfig& cfg) {
  ExprParser parser(text, cfg);
  try {
    return parser.parse();
  } catch (const std::invalid_argument& e) {
    throw InputError(ErrorKind::parse, std::string("expression: ") + e.what());
  }
}

}  // namespace chernvan
