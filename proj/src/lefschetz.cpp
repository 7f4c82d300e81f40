#include "singval/lefschetz.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "singval/errors.hpp"

namespace singval {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::EmptyResultWindow: return "EmptyResultWindow";
    case ErrorKind::WindowNotCovered: return "WindowNotCovered";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::BoundSearchExceeded: return "BoundSearchExceeded";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::ClipRuleViolation: return "ClipRuleViolation";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::Overflow, "exponent addition overflows");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::Overflow, "exponent multiplication overflows");
  }
  return out;
}

GrothendieckClass::GrothendieckClass(long constant) {
  if (constant != 0) terms_.emplace(0, mpz_class(constant));
}

GrothendieckClass GrothendieckClass::monomial(const mpz_class& coeff, Exponent exponent) {
  GrothendieckClass out;
  out.add_term(exponent, coeff);
  return out;
}

GrothendieckClass GrothendieckClass::lefschetz(Exponent exponent) {
  return monomial(1, exponent);
}

GrothendieckClass GrothendieckClass::from_terms(Terms terms) {
  GrothendieckClass out;
  for (auto& [e, c] : terms) out.add_term(e, c);
  return out;
}

GrothendieckClass::Exponent GrothendieckClass::min_exponent() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "zero class has no exponent");
  return terms_.begin()->first;
}

GrothendieckClass::Exponent GrothendieckClass::max_exponent() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "zero class has no exponent");
  return terms_.rbegin()->first;
}

mpz_class GrothendieckClass::coefficient(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void GrothendieckClass::add_term(Exponent e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GrothendieckClass& GrothendieckClass::operator+=(const GrothendieckClass& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

GrothendieckClass& GrothendieckClass::operator-=(const GrothendieckClass& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

GrothendieckClass& GrothendieckClass::operator*=(const GrothendieckClass& rhs) {
  GrothendieckClass out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) out.add_term(checked_add(ea, eb), ca * cb);
  }
  *this = std::move(out);
  return *this;
}

GrothendieckClass GrothendieckClass::operator-() const {
  GrothendieckClass out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

GrothendieckClass GrothendieckClass::shifted(Exponent shift) const {
  GrothendieckClass out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(checked_add(e, shift), c);
  return out;
}

GrothendieckClass GrothendieckClass::invert_lefschetz() const {
  GrothendieckClass out;
  for (const auto& [e, c] : terms_) {
    if (e == std::numeric_limits<Exponent>::min()) {
      throw Error(ErrorKind::Overflow, "exponent negation overflows");
    }
    out.terms_.emplace(-e, c);
  }
  return out;
}

mpq_class GrothendieckClass::evaluate(const mpz_class& q) const {
  if (q < 2) throw Error(ErrorKind::InvalidInput, "evaluation requires q >= 2");
  mpq_class sum = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class power;
    const unsigned long magnitude = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), magnitude);
    mpq_class term = e >= 0 ? mpq_class(c * power) : mpq_class(c, power);
    term.canonicalize();
    sum += term;
  }
  return sum;
}

mpz_class GrothendieckClass::euler_characteristic() const {
  mpz_class total = 0;
  for (const auto& [e, c] : terms_) total += c;
  return total;
}

std::string GrothendieckClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    const mpz_class magnitude = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << magnitude.get_str();
      continue;
    }
    if (magnitude != 1) os << magnitude.get_str() << '*';
    os << 'L';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

namespace {

class ClassParser {
 public:
  explicit ClassParser(std::string_view text) : text_(text) {}

  GrothendieckClass parse() {
    GrothendieckClass out;
    skip_space();
    if (at_end()) fail("empty input");
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      auto [e, c] = parse_term();
      out += GrothendieckClass::monomial(negative ? mpz_class(-c) : c, e);
      skip_space();
      if (at_end()) break;
      if (peek() == '+') {
        negative = false;
      } else if (peek() == '-') {
        negative = true;
      } else {
        fail("expected '+' or '-'");
      }
      ++pos_;
    }
    return out;
  }

 private:
  std::pair<std::int64_t, mpz_class> parse_term() {
    skip_space();
    mpz_class coeff = 1;
    bool have_coeff = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = mpz_class(read_digits());
      have_coeff = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (at_end() || peek() != 'L') fail("expected 'L' after '*'");
      } else {
        return {0, coeff};
      }
    }
    if (at_end() || peek() != 'L') {
      fail(have_coeff ? "expected 'L'" : "expected a coefficient or 'L'");
    }
    ++pos_;
    skip_space();
    std::int64_t exponent = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      bool neg = false;
      if (!at_end() && peek() == '-') {
        neg = true;
        ++pos_;
      }
      const std::string digits = read_digits();
      try {
        exponent = std::stoll(digits);
      } catch (const std::out_of_range&) {
        fail("exponent out of range");
      }
      if (neg) exponent = -exponent;
    }
    return {exponent, coeff};
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::InvalidInput,
                "cannot parse class '" + std::string(text_) + "' at offset " +
                    std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GrothendieckClass GrothendieckClass::parse(std::string_view text) {
  return ClassParser(text).parse();
}

nlohmann::json GrothendieckClass::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    out.push_back(nlohmann::json::array({it->first, it->second.get_str()}));
  }
  return out;
}

GrothendieckClass GrothendieckClass::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "class must be a JSON array");
  GrothendieckClass out;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
        !term[1].is_string()) {
      throw Error(ErrorKind::InvalidInput, "class term must be [exponent, \"coefficient\"]");
    }
    mpz_class c;
    if (c.set_str(term[1].get<std::string>(), 10) != 0) {
      throw Error(ErrorKind::InvalidInput, "bad coefficient " + term[1].get<std::string>());
    }
    out.add_term(term[0].get<std::int64_t>(), c);
  }
  return out;
}

GrothendieckClass div_exact(const GrothendieckClass& a, const GrothendieckClass& b) {
  if (b.is_zero()) throw Error(ErrorKind::NotDivisible, "division by zero class");
  if (a.is_zero()) return {};
  const auto b_lead_exp = b.max_exponent();
  const mpz_class b_lead = b.coefficient(b_lead_exp);
  // Any exact quotient has exponents in [a.min - b.min, a.max - b.max].
  const auto q_floor = checked_add(a.min_exponent(), -b.min_exponent());
  GrothendieckClass rest = a;
  GrothendieckClass quotient;
  while (!rest.is_zero()) {
    const auto e = rest.max_exponent();
    const auto qe = checked_add(e, -b_lead_exp);
    const mpz_class c = rest.coefficient(e);
    if (qe < q_floor || !mpz_divisible_p(c.get_mpz_t(), b_lead.get_mpz_t())) {
      throw Error(ErrorKind::NotDivisible, a.to_string() + " is not a multiple of " + b.to_string());
    }
    const auto term = GrothendieckClass::monomial(c / b_lead, qe);
    quotient += term;
    rest -= term * b;
  }
  return quotient;
}

GrothendieckClass projective_space_class(std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "projective space of negative dimension");
  GrothendieckClass out;
  for (std::int64_t e = 0; e < n; ++e) out += GrothendieckClass::lefschetz(e);
  return out;
}

std::ostream& operator<<(std::ostream& os, const GrothendieckClass& a) {
  return os << a.to_string();
}

}  // namespace singval
