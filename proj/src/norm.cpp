#include "lpbdd/norm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace lpbdd {

namespace mp = boost::multiprecision;

NormOrder NormOrder::finite(const Rat& p) {
  if (p < 1) throw std::invalid_argument("norm order p must satisfy p >= 1, got " + format_rational(p));
  NormOrder out;
  out.infinite_ = false;
  out.exponent_ = p;
  return out;
}

NormOrder NormOrder::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "INF" || text == "Infinity") return infinity();
  return finite(parse_rational(text));
}

unsigned NormOrder::integral_exponent() const {
  if (!is_integral()) throw std::logic_error("norm order is not an integer");
  return numerator(exponent_).convert_to<unsigned>();
}

double NormOrder::value() const { return infinite_ ? HUGE_VAL : to_double(exponent_); }

std::string NormOrder::to_string() const { return infinite_ ? "inf" : format_decimal_or_rational(exponent_); }

std::optional<Rat> exact_root(const Rat& value, unsigned k) {
  if (value < 0) return std::nullopt;
  if (k == 1) return value;
  Int num = numerator(value), den = denominator(value);
  Int rn, rd;
  if (mpz_root(rn.backend().data(), num.backend().data(), k) == 0) return std::nullopt;
  if (mpz_root(rd.backend().data(), den.backend().data(), k) == 0) return std::nullopt;
  return Rat(rn, rd);
}

namespace {

// base^p for a rational p = a/b, when it is rational.
std::optional<Rat> exact_rational_power(const Rat& base, const Rat& p) {
  unsigned a = numerator(p).convert_to<unsigned>();
  unsigned b = denominator(p).convert_to<unsigned>();
  auto root = exact_root(base, b);
  if (!root) return std::nullopt;
  return rat_pow(*root, a);
}

std::vector<Magnitude::Term> normalize(std::vector<Magnitude::Term> terms) {
  std::map<Rat, Rat> merged;
  for (auto& t : terms) {
    if (t.weight < 0 || t.base < 0) throw std::invalid_argument("magnitude terms must be non-negative");
    if (t.weight == 0 || t.base == 0) continue;
    merged[t.base] += t.weight;
  }
  std::vector<Magnitude::Term> out;
  out.reserve(merged.size());
  for (auto& [base, weight] : merged) out.push_back({weight, base});
  return out;
}

template <class Float>
int interval_sign(const std::vector<std::pair<Rat, Rat>>& diff, const Float& p, bool& resolved) {
  Float sum = 0, abs_sum = 0;
  for (const auto& [weight, base] : diff) {
    Float term = Float(weight) * mp::pow(Float(base), p);
    sum += term;
    abs_sum += mp::abs(term);
  }
  // each term carries a few ulps of error; be generous
  Float eps = std::numeric_limits<Float>::epsilon();
  Float err = Float(16 * (diff.size() + 1)) * eps * abs_sum;
  resolved = mp::abs(sum) > err;
  return sum > 0 ? 1 : -1;
}

// Sign of sum weight_k * base_k^p with weights of either sign.
int signed_power_sum(const std::vector<std::pair<Rat, Rat>>& diff, const Rat& p) {
  if (diff.empty()) return 0;
  double sum = 0, abs_sum = 0;
  const double pd = to_double(p);
  for (const auto& [weight, base] : diff) {
    double term = to_double(weight) * std::pow(to_double(base), pd);
    sum += term;
    abs_sum += std::fabs(term);
  }
  if (std::isfinite(abs_sum) && abs_sum > 0 && std::fabs(sum) > 1e-9 * abs_sum) return sum > 0 ? 1 : -1;

  bool resolved = false;
  using F100 = mp::number<mp::cpp_bin_float<100>>;
  int s = interval_sign(diff, F100(numerator(p).str()) / F100(denominator(p).str()), resolved);
  if (resolved) return s;
  using F400 = mp::number<mp::cpp_bin_float<400>>;
  s = interval_sign(diff, F400(numerator(p).str()) / F400(denominator(p).str()), resolved);
  if (resolved) return s;

  Rat exact = 0;
  for (const auto& [weight, base] : diff) {
    auto power = exact_rational_power(base, p);
    if (!power) throw UndecidedComparison("cannot order l_p magnitudes with p = " + format_rational(p));
    exact += weight * *power;
  }
  return exact > 0 ? 1 : (exact < 0 ? -1 : 0);
}

std::strong_ordering from_sign(int s) {
  return s > 0 ? std::strong_ordering::greater : (s < 0 ? std::strong_ordering::less : std::strong_ordering::equal);
}

}  // namespace

Magnitude::Magnitude(NormOrder p, std::vector<Term> terms) : order_(std::move(p)), terms_(std::move(terms)) {
  if (order_.is_integral()) {
    unsigned k = order_.integral_exponent();
    Rat acc = 0;
    for (const auto& t : terms_) acc += t.weight * rat_pow(t.base, k);
    exact_power_ = acc;
  }
}

Magnitude Magnitude::zero(NormOrder p) { return Magnitude(std::move(p), {}); }

Magnitude Magnitude::from_value(NormOrder p, const Rat& value) {
  if (value < 0) throw std::invalid_argument("magnitude must be non-negative");
  if (value == 0) return zero(std::move(p));
  return Magnitude(std::move(p), {{Rat(1), value}});
}

Magnitude Magnitude::from_pth_power(NormOrder p, const Rat& pth_power) {
  if (p.is_infinite()) throw std::invalid_argument("p-th power form is undefined for p = inf");
  if (pth_power < 0) throw std::invalid_argument("magnitude must be non-negative");
  if (pth_power == 0) return zero(std::move(p));
  return Magnitude(std::move(p), {{pth_power, Rat(1)}});
}

Magnitude Magnitude::from_terms(NormOrder p, std::vector<Term> terms) {
  terms = normalize(std::move(terms));
  if (p.is_infinite()) {
    if (terms.size() > 1 || (terms.size() == 1 && terms.front().weight != 1))
      throw std::invalid_argument("an infinity-norm magnitude is a single value");
  }
  return Magnitude(std::move(p), std::move(terms));
}

Magnitude Magnitude::scaled(const Rat& factor) const {
  if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<Term> out = terms_;
  for (auto& t : out) t.base *= factor;
  return Magnitude(order_, normalize(std::move(out)));
}

double Magnitude::pth_power_double() const {
  if (order_.is_infinite()) return to_double();
  if (exact_power_) return lpbdd::to_double(*exact_power_);
  const double p = order_.value();
  double acc = 0;
  for (const auto& t : terms_) acc += lpbdd::to_double(t.weight) * std::pow(lpbdd::to_double(t.base), p);
  return acc;
}

double Magnitude::to_double() const {
  if (terms_.empty()) return 0.0;
  if (order_.is_infinite()) return lpbdd::to_double(terms_.front().base);
  if (terms_.size() == 1) {
    return lpbdd::to_double(terms_.front().base) * std::pow(lpbdd::to_double(terms_.front().weight), 1.0 / order_.value());
  }
  return std::pow(pth_power_double(), 1.0 / order_.value());
}

std::optional<Rat> Magnitude::exact_pth_power() const {
  if (order_.is_infinite()) return std::nullopt;
  if (exact_power_) return exact_power_;
  Rat acc = 0;
  for (const auto& t : terms_) {
    auto power = exact_rational_power(t.base, order_.exponent());
    if (!power) return std::nullopt;
    acc += t.weight * *power;
  }
  return acc;
}

std::optional<Rat> Magnitude::exact_value() const {
  if (terms_.empty()) return Rat(0);
  if (order_.is_infinite()) return terms_.front().base;
  if (terms_.size() == 1) {
    // base * weight^{1/p}
    const Rat& p = order_.exponent();
    unsigned a = numerator(p).convert_to<unsigned>();
    unsigned b = denominator(p).convert_to<unsigned>();
    auto w = exact_root(terms_.front().weight, a);
    if (!w) return std::nullopt;
    return terms_.front().base * rat_pow(*w, b);
  }
  auto power = exact_pth_power();
  if (!power) return std::nullopt;
  const Rat& p = order_.exponent();
  unsigned a = numerator(p).convert_to<unsigned>();
  unsigned b = denominator(p).convert_to<unsigned>();
  auto root = exact_root(*power, a);
  if (!root) return std::nullopt;
  return rat_pow(*root, b);
}

Rat Magnitude::rational_upper_bound(unsigned bits) const {
  if (auto v = exact_value()) return *v;
  Int scale = Int(1) << bits;
  double approx = to_double();
  Int k(std::ceil(std::ldexp(approx, static_cast<int>(bits))));
  Rat candidate(k, scale);
  while (compare(Magnitude::from_value(order_, candidate), *this) < 0) {
    k += 1;
    candidate = Rat(k, scale);
  }
  return candidate;
}

std::strong_ordering compare(const Magnitude& a, const Magnitude& b) {
  if (!(a.order_ == b.order_)) throw std::invalid_argument("comparing magnitudes of different norm orders");
  if (a.order_.is_infinite()) {
    Rat va = a.terms_.empty() ? Rat(0) : a.terms_.front().base;
    Rat vb = b.terms_.empty() ? Rat(0) : b.terms_.front().base;
    return three_way(va, vb);
  }
  if (a.exact_power_ && b.exact_power_) return three_way(*a.exact_power_, *b.exact_power_);

  std::map<Rat, Rat> merged;
  for (const auto& t : a.terms_) merged[t.base] += t.weight;
  for (const auto& t : b.terms_) merged[t.base] -= t.weight;
  std::vector<std::pair<Rat, Rat>> diff;
  for (auto& [base, weight] : merged)
    if (weight != 0) diff.emplace_back(weight, base);
  return from_sign(signed_power_sum(diff, a.order_.exponent()));
}

Magnitude norm_p(std::span<const Rat> v, NormOrder p) {
  if (p.is_infinite()) {
    Rat m = 0;
    for (const auto& x : v) m = std::max(m, Rat(abs(x)));
    return Magnitude::from_value(std::move(p), m);
  }
  std::vector<Magnitude::Term> terms;
  terms.reserve(v.size());
  for (const auto& x : v)
    if (x != 0) terms.push_back({Rat(1), Rat(abs(x))});
  return Magnitude::from_terms(std::move(p), std::move(terms));
}

std::strong_ordering compare_norm(std::span<const Rat> v, const Magnitude& r) {
  const NormOrder& p = r.order();
  if (p.is_infinite()) {
    Rat m = 0;
    for (const auto& x : v) m = std::max(m, Rat(abs(x)));
    Rat rv = r.terms().empty() ? Rat(0) : r.terms().front().base;
    return three_way(m, rv);
  }
  if (p.is_integral()) {
    unsigned k = p.integral_exponent();
    Rat acc = 0;
    for (const auto& x : v)
      if (x != 0) acc += rat_pow(abs(x), k);
    return three_way(acc, *r.exact_pth_power());
  }
  return compare(norm_p(v, p), r);
}

}  // namespace lpbdd
