#include "kpo/relations.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

namespace kpo {

namespace {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  RelationSpec relation() {
    const std::string name = ident();
    expect('(');
    if (name == "componentwise") return componentwise();
    if (name == "cone") {
      auto args = keyed({"a"});
      expect(')');
      return RelationSpec::cone(number_arg(args, "a"));
    }
    if (name == "interval" || name == "band") {
      auto args = keyed({"axis", "lo", "hi"});
      expect(')');
      const auto axis = index_arg(args, "axis");
      return name == "interval"
                 ? RelationSpec::interval(axis, number_arg(args, "lo"), number_arg(args, "hi"))
                 : RelationSpec::tolerance_band(axis, number_arg(args, "lo"), number_arg(args, "hi"));
    }
    if (name == "equals") {
      auto args = keyed({"axis", "value"});
      expect(')');
      return RelationSpec::equality(index_arg(args, "axis"), number_arg(args, "value"));
    }
    if (name == "and") {
      std::vector<RelationSpec> members;
      members.push_back(relation());
      while (accept(',')) members.push_back(relation());
      expect(')');
      return RelationSpec::conjunction(std::move(members));
    }
    if (name == "inverse") {
      auto inner = relation();
      expect(')');
      return RelationSpec::inverse(std::move(inner));
    }
    if (name == "lex") {
      auto c = relation();
      expect(',');
      auto f = relation();
      expect(')');
      return RelationSpec::lexicographic(std::move(c), std::move(f));
    }
    if (name == "cmop") return cmop();
    fail("unknown relation '" + name + "'");
  }

  void finish() {
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
  }

private:
  using Args = std::map<std::string, double>;

  RelationSpec componentwise() {
    std::vector<Orientation> orientations;
    std::size_t offset = 0;
    skip_ws();
    if (!accept(')')) {
      do {
        const std::string word = ident();
        if (word == "min") {
          orientations.push_back(Orientation::Min);
        } else if (word == "max") {
          orientations.push_back(Orientation::Max);
        } else if (word == "offset") {
          expect('=');
          offset = to_index(number(), "offset");
        } else {
          fail("componentwise expects min, max or offset=, got '" + word + "'");
        }
      } while (accept(','));
      expect(')');
    }
    return RelationSpec::componentwise(std::move(orientations), offset);
  }

  RelationSpec cmop() {
    std::optional<std::size_t> ng, nh;
    std::size_t m = 0;
    std::vector<std::pair<double, double>> bounds;
    do {
      const std::string key = ident();
      expect('=');
      if (key == "ng") {
        ng = to_index(number(), key);
      } else if (key == "nh") {
        nh = to_index(number(), key);
      } else if (key == "m") {
        m = to_index(number(), key);
        if (m == 0) fail("cmop: empty objective block");
      } else if (key == "hbounds") {
        expect('[');
        skip_ws();
        if (!accept(']')) {
          do {
            expect('[');
            const double a = number();
            expect(',');
            const double b = number();
            expect(']');
            bounds.emplace_back(a, b);
          } while (accept(','));
          expect(']');
        }
      } else {
        fail("cmop: unknown key '" + key + "'");
      }
    } while (accept(','));
    expect(')');
    if (!ng) fail("cmop: missing ng");
    if (!nh) nh = bounds.size();
    try {
      return cmop_relation(*ng, *nh, bounds, m);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  Args keyed(std::initializer_list<const char*> allowed) {
    Args args;
    do {
      const std::string key = ident();
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) fail("unexpected key '" + key + "'");
      expect('=');
      args[key] = number();
    } while (accept(','));
    return args;
  }

  double number_arg(const Args& args, const std::string& key) {
    auto it = args.find(key);
    if (it == args.end()) fail("missing '" + key + "'");
    return it->second;
  }

  std::size_t index_arg(const Args& args, const std::string& key) {
    return to_index(number_arg(args, key), key);
  }

  std::size_t to_index(double v, const std::string& key) {
    if (!(v >= 0) || v != std::floor(v) || v > 1e9) fail("'" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "relation text, column " << pos_ + 1 << ": " << what;
    throw std::invalid_argument(os.str());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

RelationSpec parse_relation(std::string_view text) {
  Parser p(text);
  auto rel = p.relation();
  p.finish();
  return rel;
}

std::string to_string(const RelationSpec& rel) {
  return std::visit(
      overloaded{
          [](const Componentwise& c) {
            std::string out = "componentwise(";
            bool first = true;
            for (auto o : c.orientations) {
              out += first ? "" : ",";
              out += o == Orientation::Min ? "min" : "max";
              first = false;
            }
            if (c.offset != 0 || c.orientations.empty()) {
              out += first ? "" : ",";
              out += "offset=" + std::to_string(c.offset);
            }
            return out + ")";
          },
          [](const Cone& c) { return "cone(a=" + format_number(c.a) + ")"; },
          [](const IntervalQuery& q) {
            return "interval(axis=" + std::to_string(q.axis) + ",lo=" + format_number(q.lo) +
                   ",hi=" + format_number(q.hi) + ")";
          },
          [](const EqualityQuery& q) {
            return "equals(axis=" + std::to_string(q.axis) + ",value=" + format_number(q.value) + ")";
          },
          [](const ToleranceBand& b) {
            return "band(axis=" + std::to_string(b.axis) + ",lo=" + format_number(b.lo) +
                   ",hi=" + format_number(b.hi) + ")";
          },
          [](const Conjunction& c) {
            std::string out = "and(";
            for (std::size_t i = 0; i < c.members.size(); ++i)
              out += (i ? "," : "") + to_string(c.members[i]);
            return out + ")";
          },
          [](const Inverse& inv) { return "inverse(" + to_string(*inv.inner) + ")"; },
          [](const LexicographicCmop& lex) {
            return "lex(" + to_string(*lex.constraint_part) + "," + to_string(*lex.objective_part) + ")";
          },
      },
      rel.kind());
}

}  // namespace kpo
