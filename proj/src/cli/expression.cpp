#include "dqw/cli/expression.hpp"

#include <cctype>
#include <map>

#include <json.hpp>

namespace dqw::cli {

namespace {

// Operator-valued series: derivative multi-index -> coefficient series.
using Value = std::map<MultiIndex, FormalSeries>;

FormalSeries series_product(const FormalSeries& a, const FormalSeries& b) {
  FormalSeries out(a.model(), a.order());
  for (int p = 0; p <= a.order(); ++p) {
    if (a[p].is_zero()) continue;
    for (int q = 0; p + q <= a.order(); ++q)
      if (!b[q].is_zero()) out[p + q] += a[p] * b[q];
  }
  return out;
}

bool is_scalar_series(const FormalSeries& s) {
  for (int r = 0; r <= s.order(); ++r)
    if (!s[r].is_zero() && !s[r].is_constant()) return false;
  return true;
}

class Parser {
 public:
  Parser(const std::string& src, const Model& model, int order, bool allow_l, bool allow_d)
      : src_(src), model_(model), order_(order), allow_l_(allow_l), allow_d_(allow_d) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, at);
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Value scalar(const Gaussian& c) const {
    if (c.is_zero()) return {};
    return {{MultiIndex(model_.dim, 0), FormalSeries::constant(Element::constant(model_, c), order_)}};
  }

  static void add_into(Value& a, const Value& b, const Gaussian& sign) {
    for (const auto& [k, s] : b) {
      auto it = a.find(k);
      if (it == a.end())
        a.emplace(k, s * sign);
      else
        it->second += s * sign;
    }
    for (auto it = a.begin(); it != a.end();)
      it = it->second.is_zero() ? a.erase(it) : std::next(it);
  }

  Value multiply(const Value& a, const Value& b, std::size_t at) const {
    Value out;
    const MultiIndex none(model_.dim, 0);
    for (const auto& [ka, sa] : a)
      for (const auto& [kb, sb] : b) {
        if (ka != none && !is_scalar_series(sb))
          fail_at("derivatives must stand right of every non-constant factor", at);
        MultiIndex k = ka;
        for (int j = 0; j < model_.dim; ++j) k[j] += kb[j];
        add_into(out, {{k, series_product(sa, sb)}}, 1);
      }
    return out;
  }

  std::optional<Gaussian> as_scalar(const Value& v) const {
    if (v.empty()) return Gaussian(0);
    if (v.size() != 1 || v.begin()->first != MultiIndex(model_.dim, 0)) return std::nullopt;
    const FormalSeries& s = v.begin()->second;
    for (int r = 1; r <= s.order(); ++r)
      if (!s[r].is_zero()) return std::nullopt;
    if (!s[0].is_constant()) return std::nullopt;
    return s[0].constant_part();
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        add_into(v, term(), 1);
      } else if (peek('-')) {
        ++pos_;
        add_into(v, term(), -1);
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (peek('*')) {
        const std::size_t at = pos_++;
        v = multiply(v, unary(), at);
      } else if (peek('/')) {
        const std::size_t at = ++pos_;
        const auto d = as_scalar(unary());
        if (!d) fail_at("division by a non-scalar", at);
        if (d->is_zero()) fail_at("division by zero", at);
        const Gaussian inv = Gaussian(1) / *d;
        for (auto& [k, s] : v) s *= inv;
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (peek('-')) {
      ++pos_;
      Value v = unary();
      for (auto& [k, s] : v) s *= Gaussian(-1);
      return v;
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (!peek('^')) return base;
    const std::size_t at = pos_++;
    skip();
    const long n = integer("exponent");
    if (n < 0) fail_at("negative exponent", at);
    Value out = scalar(1);
    for (long k = 0; k < n; ++k) out = multiply(out, base, at);
    return out;
  }

  long integer(const std::string& what) {
    skip();
    bool neg = false;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected " + what);
    if (pos_ - start > 9) fail_at(what + " too large", start);
    const long n = std::stol(src_.substr(start, pos_ - start));
    return neg ? -n : n;
  }

  Value atom() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const std::size_t at = pos_;
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return scalar(Gaussian(Rational(Integer(src_.substr(at, pos_ - at)))));
    }
    if (c == 'i') {
      ++pos_;
      return scalar(Gaussian::i());
    }
    if (c == 'L') {
      ++pos_;
      if (!allow_l_) fail_at("the formal parameter L is not allowed here", at);
      if (order_ < 1) return {};
      return {{MultiIndex(model_.dim, 0),
               FormalSeries::monomial(Element::constant(model_, 1), 1, order_)}};
    }
    if (c == 'E') {
      ++pos_;
      if (!model_.is_torus()) fail_at("E[..] needs a torus model", at);
      expect('[');
      Exponent k;
      for (;;) {
        k.push_back(static_cast<int>(integer("an integer")));
        if (peek(',')) {
          ++pos_;
          continue;
        }
        break;
      }
      expect(']');
      if (static_cast<int>(k.size()) != model_.dim)
        fail_at("E[..] needs " + std::to_string(model_.dim) + " entries", at);
      return {{MultiIndex(model_.dim, 0),
               FormalSeries::constant(Element::monomial(model_, k), order_)}};
    }
    if (c == 'x' || c == 'd') {
      ++pos_;
      const long j = integer("an index");
      if (j < 1 || j > model_.dim) fail_at("index out of range 1.." + std::to_string(model_.dim), at);
      if (c == 'x') {
        if (!model_.is_plane()) fail_at("x variables need a plane model", at);
        return {{MultiIndex(model_.dim, 0),
                 FormalSeries::constant(Element::variable(model_, static_cast<int>(j - 1)), order_)}};
      }
      if (!allow_d_) fail_at("derivatives are not allowed here", at);
      return {{unit_index(model_.dim, static_cast<int>(j - 1)),
               FormalSeries::constant(Element::constant(model_, 1), order_)}};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Model model_;
  int order_;
  bool allow_l_;
  bool allow_d_;
};

}  // namespace

FormalSeries parse_series(const std::string& src, const Model& model, int order) {
  const Value v = Parser(src, model, order, true, false).parse();
  if (v.empty()) return FormalSeries(model, order);
  return v.begin()->second;
}

Element parse_element(const std::string& src, const Model& model) {
  const Value v = Parser(src, model, 0, false, false).parse();
  if (v.empty()) return Element(model);
  return v.begin()->second[0];
}

DiffOperator parse_operator(const std::string& src, const Model& model) {
  const Value v = Parser(src, model, 0, false, true).parse();
  DiffOperator out(model);
  for (const auto& [k, s] : v) out.add_term(k, s[0]);
  return out;
}

Gaussian parse_scalar(const std::string& src) {
  const Model model = Model::torus(0);
  const Element e = parse_element(src, model);
  return e.constant_part();
}

RatMatrix parse_matrix(const std::string& src) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(src);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("matrix is not a JSON array", e.byte);
  }
  if (!j.is_array()) throw ParseError("matrix must be an array of rows", 0);
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays", 0);
    std::vector<Rational> r;
    for (const auto& x : row) {
      if (x.is_number_integer()) {
        r.emplace_back(static_cast<long>(x.get<long long>()));
      } else if (x.is_string()) {
        const Gaussian g = parse_scalar(x.get<std::string>());
        if (!g.is_real()) throw ParseError("matrix entries must be rational", 0);
        r.push_back(g.re());
      } else {
        throw ParseError("matrix entries must be integers or rational strings", 0);
      }
    }
    rows.push_back(std::move(r));
  }
  return RatMatrix::from_rows(rows);
}

Model parse_model(const std::string& src) {
  auto dim_of = [&](std::size_t prefix) {
    const std::string rest = src.substr(prefix);
    if (rest.empty() || rest.size() > 2 ||
        !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("model dimension must be a small positive integer", prefix);
    const int n = std::stoi(rest);
    if (n < 1) throw ParseError("model dimension must be positive", prefix);
    return n;
  };
  if (src.rfind("torus", 0) == 0) return Model::torus(dim_of(5));
  if (src.rfind("plane", 0) == 0) return Model::plane(dim_of(5));
  throw ParseError("model must be torusN or planeN", 0);
}

}  // namespace dqw::cli
