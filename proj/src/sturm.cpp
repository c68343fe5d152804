#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "gamepoly/errors.hpp"
#include "gamepoly/polysolve.hpp"

namespace gamepoly {
namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

UnivariatePoly normalized(const UnivariatePoly& p) {
  const double m = p.max_abs_coefficient();
  return (1.0 / m) * p;
}

// Remainder of a / b. noise[j] accumulates the magnitudes that went into
// coefficient j, so cancellation can be told apart from a true zero.
std::vector<double> remainder(const UnivariatePoly& a, const UnivariatePoly& b, std::vector<double>& noise) {
  std::vector<double> r(a.coefficients().begin(), a.coefficients().end());
  noise.assign(r.size(), 0.0);
  for (std::size_t j = 0; j < r.size(); ++j) noise[j] = std::abs(r[j]);
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    const double q = r[i] / b[db];
    for (int j = 0; j <= db; ++j) {
      r[i - db + j] -= q * b[j];
      noise[i - db + j] += std::abs(q * b[j]);
    }
    r[i] = 0.0;
  }
  r.resize(db);
  noise.resize(db);
  return r;
}

std::optional<int> count_variations(std::span<const int> signs) {
  int variations = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

// Sign of p(y) as y -> 0 from the given side; nullopt when the constant term
// is nonzero but lost in rounding.
std::optional<int> sign_near_zero(const UnivariatePoly& p, bool from_below) {
  const double scale = p.max_abs_coefficient();
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    if (std::abs(p[j]) <= kSturmAmbiguity * scale) return std::nullopt;
    const int s = sign_of(p[j]);
    return (from_below && (j % 2 == 1)) ? -s : s;
  }
  return 0;
}

}  // namespace

SturmChain::SturmChain(const UnivariatePoly& p) {
  UnivariatePoly head = p.trimmed();
  if (head.is_zero()) throw DegenerateError("Sturm chain of the zero polynomial");
  members_.push_back(normalized(head));
  if (head.degree() == 0) return;
  members_.push_back(normalized(head.derivative()));

  std::vector<double> noise;
  while (members_.back().degree() > 0) {
    const UnivariatePoly& a = members_[members_.size() - 2];
    const UnivariatePoly& b = members_.back();
    std::vector<double> r = remainder(a, b, noise);

    bool all_zero = true;
    bool all_noise = true;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0.0) all_zero = false;
      if (std::abs(r[j]) > kSturmAmbiguity * noise[j]) all_noise = false;
    }
    if (all_zero) break;  // exact gcd reached
    if (all_noise) {
      ambiguous_ = true;
      break;
    }
    // Leading terms that are pure cancellation noise.
    while (r.size() > 1 && std::abs(r.back()) <= kSturmAmbiguity * noise.back()) {
      if (r.back() != 0.0) ambiguous_ = true;
      r.pop_back();
      noise.pop_back();
    }
    UnivariatePoly next(std::move(r));
    members_.push_back((-1.0 / next.max_abs_coefficient()) * next);
  }
}

std::optional<int> SturmChain::variations_at(double x) const {
  std::vector<int> signs;
  signs.reserve(members_.size());
  for (const UnivariatePoly& m : members_) {
    const double v = m.evaluate(x);
    double mag = 0.0;
    double power = 1.0;
    for (double c : m.coefficients()) {
      mag += std::abs(c) * power;
      power *= std::abs(x);
    }
    if (std::abs(v) <= kSturmAmbiguity * mag) return std::nullopt;
    signs.push_back(sign_of(v));
  }
  return count_variations(signs);
}

std::optional<int> SturmChain::variations_at_zero_plus() const {
  std::vector<int> signs;
  for (const UnivariatePoly& m : members_) {
    const auto s = sign_near_zero(m, false);
    if (!s) return std::nullopt;
    signs.push_back(*s);
  }
  return count_variations(signs);
}

std::optional<int> SturmChain::variations_at_zero_minus() const {
  std::vector<int> signs;
  for (const UnivariatePoly& m : members_) {
    const auto s = sign_near_zero(m, true);
    if (!s) return std::nullopt;
    signs.push_back(*s);
  }
  return count_variations(signs);
}

int SturmChain::variations_at_positive_infinity() const {
  std::vector<int> signs;
  for (const UnivariatePoly& m : members_) signs.push_back(sign_of(m.leading()));
  return *count_variations(signs);
}

int SturmChain::variations_at_negative_infinity() const {
  std::vector<int> signs;
  for (const UnivariatePoly& m : members_) {
    const int s = sign_of(m.leading());
    signs.push_back(m.degree() % 2 == 0 ? s : -s);
  }
  return *count_variations(signs);
}

RootCountReport sturm_count_positive(const UnivariatePoly& p) {
  const SturmChain chain(p);
  RootCountReport report;
  const auto at_zero = chain.variations_at_zero_plus();
  if (!at_zero || chain.ambiguous()) {
    report.degenerate = true;
    if (!at_zero) return report;
  }
  report.count = *at_zero - chain.variations_at_positive_infinity();
  if (report.count < 0) {
    report.count = 0;
    report.degenerate = true;
  }
  return report;
}

int exact_sturm_count_positive(std::span<const std::int64_t> coeffs) {
  using Rational = boost::multiprecision::cpp_rational;
  using Poly = std::vector<Rational>;

  auto trim = [](Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  auto make_unit_leading = [](Poly& p) {
    const Rational lead = abs(p.back());
    for (Rational& c : p) c /= lead;
  };

  Poly p(coeffs.begin(), coeffs.end());
  trim(p);
  if (p.empty()) throw DegenerateError("Sturm chain of the zero polynomial");
  std::vector<Poly> chain;
  make_unit_leading(p);
  chain.push_back(p);
  if (p.size() > 1) {
    Poly dp(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) dp[k - 1] = p[k] * static_cast<long>(k);
    make_unit_leading(dp);
    chain.push_back(dp);
  }
  while (chain.back().size() > 1) {
    Poly r = chain[chain.size() - 2];
    const Poly& b = chain.back();
    const long db = static_cast<long>(b.size()) - 1;
    for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
      const Rational q = r[i] / b[db];
      for (long j = 0; j <= db; ++j) r[i - db + j] -= q * b[j];
    }
    r.resize(db);
    trim(r);
    if (r.empty()) break;
    make_unit_leading(r);
    for (Rational& c : r) c = -c;
    chain.push_back(std::move(r));
  }

  auto variations = [&](bool at_infinity) {
    int v = 0;
    int last = 0;
    for (const Poly& m : chain) {
      int s = 0;
      if (at_infinity) {
        s = m.back() > 0 ? 1 : -1;
      } else {
        for (const Rational& c : m) {
          if (c != 0) {
            s = c > 0 ? 1 : -1;
            break;
          }
        }
      }
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  return variations(false) - variations(true);
}

}  // namespace gamepoly
